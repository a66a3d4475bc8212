"""Suite runner: maps each named suite onto the verifiers over a set of
elaborated definitions.  Definitions a suite does not apply to are skipped."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from ..errors import SeriesError
from ..series import ZERO_THRESHOLD, LaurentSeries, TruncatedSeries, radius_estimate
from ..structure import SeriesFamily
from ..unity import circle_extrema, default_extract_radius
from .. import verifiers as V
from .expr import elaborate, parse_definitions

SUITES = (
    "parseval", "cauchy", "mean-value", "discrete-cauchy", "extract", "liouville",
    "schwarz", "clunie-jack", "saddle", "anti-calculus", "boundary-max", "open-image",
    "local-rep", "injectivity", "double-series", "laurent",
)


class UnknownSuiteError(SeriesError):
    pass


@dataclass(frozen=True)
class SuiteConfig:
    suite: str = "all"
    order: int = 32
    tolerance: Optional[float] = None
    samples: int = 1024
    seed: int = 0
    radii: Optional[tuple] = None

    def __post_init__(self):
        if self.suite != "all" and self.suite not in SUITES:
            raise UnknownSuiteError(f"unknown suite {self.suite!r}")
        if self.order < 1:
            raise SeriesError("order must be at least 1")
        if self.samples < 8:
            raise SeriesError("samples must be at least 8")
        if self.tolerance is not None and not self.tolerance >= 0:
            raise SeriesError("tolerance must be non-negative")
        if self.seed < 0:
            raise SeriesError("seed must be non-negative")
        if self.radii is not None:
            radii = tuple(float(r) for r in self.radii)
            if not radii or any(not r > 0 for r in radii):
                raise SeriesError("radii must be positive")
            object.__setattr__(self, "radii", radii)

    def snapshot(self) -> dict:
        out = asdict(self)
        out["radii"] = None if self.radii is None else list(self.radii)
        return out

    def tol(self, default: float) -> float:
        return default if self.tolerance is None else self.tolerance


def load_definitions(text: str, order: int) -> list:
    """Parse and elaborate a definitions file -> ``[(name, value)]``."""
    out = []
    for name, node, line in parse_definitions(text):
        try:
            out.append((name, elaborate(node, order)))
        except SeriesError as exc:
            raise SeriesError(f"line {line}: cannot elaborate {name!r}: {exc}") from exc
    return out


# -- applicability helpers ------------------------------------------------------------

def _hint(f: TruncatedSeries) -> float:
    return f.radius_hint if f.radius_hint is not None else radius_estimate(f).value


def _working_radius(f: TruncatedSeries) -> float:
    """Radius 1 when the (hinted or estimated) disk is large, else half of it."""
    return min(1.0, _hint(f) / 2)


def _nonconstant(f) -> bool:
    return isinstance(f, TruncatedSeries) and any(abs(c) > ZERO_THRESHOLD for c in f.coeffs[1:])


def _shifted(f: TruncatedSeries):
    if f.center == 0:
        return f
    return lambda w: f(f.center + w)


def _radii_for(f, config: SuiteConfig) -> list:
    if isinstance(f, LaurentSeries):
        r1, r2 = f.annulus
        default = [1.0] if r1 < 1 < r2 else [math.sqrt(r1 * r2) if math.isfinite(r2) else 2 * r1]
        candidates = default if config.radii is None else list(config.radii)
        return [r for r in candidates if r1 < r < r2]
    hint = _hint(f)
    candidates = [_working_radius(f)] if config.radii is None else list(config.radii)
    return [r for r in candidates if r < hint]


# -- suites -------------------------------------------------------------------------------

def _parseval(defs, config, out, stream):
    for name, f in defs:
        for r in _radii_for(f, config):
            out.append(V.verify_parseval(f, r=r, samples=config.samples,
                                         tolerance=config.tol(V.SAMPLED_TOL),
                                         name=f"parseval:{name}@{r!r}"))


def _cauchy(defs, config, out, stream):
    for name, f in defs:
        for r in _radii_for(f, config):
            out.append(V.verify_cauchy_bounds(f, r=r, samples=config.samples,
                                              tolerance=config.tol(V.SAMPLED_TOL),
                                              name=f"cauchy:{name}@{r!r}"))


def _mean_value(defs, config, out, stream):
    for name, f in defs:
        if isinstance(f, TruncatedSeries):
            n = max(1, f.degree())
            out.append(V.check_mean_value(f, f.center, _working_radius(f), n,
                                          tolerance=config.tol(V.IDENTITY_TOL),
                                          name=f"mean-value:{name}"))


def _discrete_cauchy(defs, config, out, stream):
    for name, f in defs:
        if isinstance(f, TruncatedSeries):
            n = max(1, f.degree())
            out.append(V.check_discrete_cauchy(f, f.center, _working_radius(f), n,
                                               tolerance=config.tol(1e-9),
                                               name=f"discrete-cauchy:{name}"))


def _extract(defs, config, out, stream):
    for name, f in defs:
        if isinstance(f, TruncatedSeries):
            z = default_extract_radius(f)
            out.append(V.check_extraction(_centered(f), z, min(f.order, 8),
                                          tolerance=config.tol(1e-9),
                                          name=f"extract:{name}"))


def _centered(f: TruncatedSeries) -> TruncatedSeries:
    return TruncatedSeries(f.coeffs, 0j, f.radius_hint)


def _liouville(defs, config, out, stream):
    radii = (1.0, 2.0, 4.0) if config.radii is None else tuple(sorted(config.radii))
    for name, f in defs:
        if not isinstance(f, TruncatedSeries):
            continue
        g = _centered(f)
        N = g.degree()
        B = math.fsum(abs(c) for c in g.coeffs)
        # |g(z)| <= (sum |a_n|) |z|^N once |z| >= 1
        if radii[0] < 1:
            continue
        out.append(V.detect_polynomial_degree(g, 0.0, B, N, radii, N + 4,
                                              tolerance=config.tol(V.SAMPLED_TOL),
                                              name=f"liouville:{name}"))


def _unit_sup(f: TruncatedSeries, samples: int) -> float:
    return circle_extrema(f, 1.0, max(samples, 8)).max_value


def _schwarz(defs, config, out, stream):
    tol = config.tol(V.SAMPLED_TOL)
    for name, f in defs:
        if not (isinstance(f, TruncatedSeries) and f.center == 0 and _nonconstant(f)):
            continue
        if abs(f.coeffs[0]) > ZERO_THRESHOLD or _unit_sup(f, config.samples) > 1 + tol:
            continue
        out.append(V.verify_schwarz(f, samples=10 * config.samples, tolerance=tol,
                                    name=f"schwarz:{name}"))


def _clunie_jack(defs, config, out, stream):
    for name, f in defs:
        if not (isinstance(f, TruncatedSeries) and f.center == 0 and _nonconstant(f)):
            continue
        if f.radius_hint is not None and not f.radius_hint > 1:
            continue
        alpha = circle_extrema(f, 1.0, config.samples, polish=True).argmax
        if abs(complex(f(alpha))) <= ZERO_THRESHOLD:
            continue
        out.append(V.clunie_jack(f, alpha / abs(alpha), samples=config.samples,
                                 tolerance=config.tol(V.SAMPLED_TOL),
                                 name=f"clunie-jack:{name}"))


def _saddle(defs, config, out, stream):
    for name, f in defs:
        if not _nonconstant(f):
            continue
        points = [f.center]
        deg = f.degree()
        if 2 <= deg <= 8:
            dcoeffs = [n * f.coeffs[n] for n in range(deg, 0, -1)]
            hint = f.radius_hint
            for w in sorted(np.roots(dcoeffs), key=lambda w: (round(w.real, 9), round(w.imag, 9))):
                if hint is None or abs(w) < hint:
                    points.append(f.center + complex(w))
        for k, z0 in enumerate(points):
            out.append(V.classify_critical_point(f, z0, name=f"saddle:{name}#{k}"))


def _anti_calculus(defs, config, out, stream):
    for name, f in defs:
        if _nonconstant(f):
            out.append(V.verify_anti_calculus(f, _working_radius(f), 4 * config.samples,
                                              name=f"anti-calculus:{name}"))


def _boundary_max(defs, config, out, stream):
    for name, f in defs:
        if _nonconstant(f):
            out.append(V.verify_boundary_max(f, _working_radius(f), 4 * config.samples,
                                             config.samples,
                                             tolerance=config.tol(V.SAMPLED_TOL),
                                             name=f"boundary-max:{name}"))


def _open_image(defs, config, out, stream):
    # Half the working radius; halved again (up to twice) while f(0) recurs on
    # the circle, since the claimed disk is then degenerate.
    for k, (name, f) in enumerate(defs):
        if not _nonconstant(f):
            continue
        g = _shifted(f)
        r = _working_radius(f) / 2
        for _ in range(2):
            ring = r * np.exp(2j * np.pi * np.arange(config.samples) / config.samples)
            f0 = complex(g(0j))
            if float(np.abs(f0 - np.asarray(g(ring))).min()) > 1e-9 * max(1.0, abs(f0)):
                break
            r /= 2
        out.append(V.verify_open_image(g, r, seed=config.seed, stream=stream * 4096 + k,
                                       boundary_samples=config.samples,
                                       name=f"open-image:{name}"))


def _local_rep(defs, config, out, stream):
    for name, f in defs:
        if _nonconstant(f):
            out.append(V.check_local_representation(f, tolerance=config.tol(1e-9),
                                                    name=f"local-rep:{name}"))


def _injectivity(defs, config, out, stream):
    for name, f in defs:
        if isinstance(f, TruncatedSeries) and f.order >= 1 and abs(f.coeffs[1]) > ZERO_THRESHOLD:
            out.append(V.check_injectivity(f, tolerance=config.tol(1e-9),
                                           name=f"injectivity:{name}"))


def _double_series(defs, config, out, stream):
    for name, f in defs:
        if isinstance(f, TruncatedSeries):
            family = SeriesFamily.from_terms(f)
            k = min(1, f.order)
            out.append(V.verify_double_series(family, _working_radius(f), k,
                                              tolerance=config.tol(V.IDENTITY_TOL),
                                              name=f"double-series:{name}"))


def _laurent(defs, config, out, stream):
    for name, f in defs:
        if not isinstance(f, LaurentSeries):
            continue
        radii = _radii_for(f, config)
        if not radii:
            continue
        for r in radii:
            out.append(V.verify_parseval(f, r=r, samples=config.samples,
                                         tolerance=config.tol(V.SAMPLED_TOL),
                                         name=f"laurent-parseval:{name}@{r!r}"))
        out.append(V.verify_laurent_uniqueness(f, radii, samples=config.samples,
                                               name=f"laurent-uniqueness:{name}"))


_RUNNERS = {
    "parseval": _parseval, "cauchy": _cauchy, "mean-value": _mean_value,
    "discrete-cauchy": _discrete_cauchy, "extract": _extract, "liouville": _liouville,
    "schwarz": _schwarz, "clunie-jack": _clunie_jack, "saddle": _saddle,
    "anti-calculus": _anti_calculus, "boundary-max": _boundary_max,
    "open-image": _open_image, "local-rep": _local_rep, "injectivity": _injectivity,
    "double-series": _double_series, "laurent": _laurent,
}


def run_suite(config: SuiteConfig, definitions) -> V.Report:
    """Run one suite (or ``all``, in declared order) over ``[(name, value)]``.

    ``definitions`` may also be the raw text of a definitions file.
    """
    if isinstance(definitions, str):
        definitions = load_definitions(definitions, config.order)
    names = SUITES if config.suite == "all" else (config.suite,)
    report = V.Report(config.suite, config.seed, config.snapshot())
    for stream, suite in enumerate(SUITES):
        if suite in names:
            _RUNNERS[suite](definitions, config, report.results, stream)
    return report
