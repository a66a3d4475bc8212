from .expr import ElaborationError, ParseError, elaborate, parse_definitions, parse_series_expr, to_source
from .report import emit_report, render_csv, render_json
from .suites import SUITES, SuiteConfig, UnknownSuiteError, load_definitions, run_suite
