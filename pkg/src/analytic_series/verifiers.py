"""Sampled numerical checks of the inequalities and classification results.

Each verifier returns a :class:`CheckResult`.  For inequality checks the
``residual`` is a signed slack, normalized so that it is comparable across
scales: the check passes when ``residual >= -tolerance``.  Grids are
deterministic; the only randomness (open-image targets) is drawn from a
counter-based Philox generator keyed by the caller's seed.

``inconclusive`` is a real outcome: a sampled argmax that is not on the
boundary, or a hypothesis that sampling contradicts, yields it rather than a
guess.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DegenerateError, DomainError, PreconditionError, SeriesError
from .series import (
    ZERO_THRESHOLD,
    LaurentSeries,
    TruncatedSeries,
    derivative,
    indexed_coefficients,
    recenter,
)
from .structure import SeriesFamily, double_series_sum, injectivity_radius, local_representation
from .unity import (
    _sample,
    circle_extrema,
    coefficient_power_sum,
    discrete_cauchy_derivative,
    extract_coefficients,
    polygonal_mean_value,
)

SAMPLED_TOL = 1e-6
IDENTITY_TOL = 1e-10
DERIVATIVE_SIGNIFICANCE = 1e-6


class Verdict(str, enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Witness:
    point: complex
    value: complex
    note: str = ""


@dataclass
class CheckResult:
    name: str
    verdict: Verdict
    residual: float
    tolerance: float
    witnesses: tuple = ()
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS


@dataclass
class Report:
    suite: str
    seed: int
    config: dict
    results: list = field(default_factory=list)

    def summary(self) -> dict:
        counts = {v.value: 0 for v in Verdict}
        for r in self.results:
            counts[r.verdict.value] += 1
        return counts

    def exit_code(self, strict: bool = False) -> int:
        s = self.summary()
        bad = s["fail"] + (s["inconclusive"] if strict else 0)
        return 1 if bad else 0


def _result(name, residual, tolerance, witnesses, details, *, inconclusive=False) -> CheckResult:
    if inconclusive:
        verdict = Verdict.INCONCLUSIVE
    else:
        verdict = Verdict.PASS if residual >= -tolerance else Verdict.FAIL
    return CheckResult(name, verdict, float(residual) + 0.0, float(tolerance), tuple(witnesses), details)


# -- oracle plumbing ----------------------------------------------------------

def _laurent_derivative(L: LaurentSeries) -> LaurentSeries:
    terms = {j - 1: j * a for j, a in L.indexed().items() if j != 0}
    return LaurentSeries.from_terms(terms or {0: 0}, L.annulus)


def derivative_oracle(f, scale: float = 1.0):
    """``(f', source)``; symbolic for series, central differences otherwise."""
    if isinstance(f, TruncatedSeries):
        return derivative(f), "series"
    if isinstance(f, LaurentSeries):
        return _laurent_derivative(f), "series"
    h = 1e-6 * max(scale, 1e-3)

    def fprime(z):
        return (f(z + h) - f(z - h)) / (2 * h)

    return fprime, "central-difference"


def _center(f) -> complex:
    return f.center if isinstance(f, TruncatedSeries) else 0j


def _circle(r: float, samples: int, center: complex = 0j) -> np.ndarray:
    return center + r * np.exp(2j * np.pi * np.arange(samples) / samples)


def _disk_grid(R: float, samples: int, *, closed: bool = True, center: complex = 0j):
    """Polar grid; returns ``(points, ring_index)`` with the center first.

    ``ring_index`` is the ring number of each point (0 for the center).  When
    ``closed`` the outermost ring lies on ``|z - center| = R``; otherwise all
    rings are strictly inside.
    """
    n_ang = max(8, 8 * int(round(math.sqrt(2 * math.pi * samples) / 8)))
    n_rad = max(1, (samples - 1) // n_ang)
    denom = n_rad if closed else n_rad + 1
    angles = np.exp(2j * np.pi * np.arange(n_ang) / n_ang)
    rings = [np.array([0j])]
    index = [np.zeros(1, dtype=int)]
    for i in range(1, n_rad + 1):
        rings.append(R * i / denom * angles)
        index.append(np.full(n_ang, i))
    return center + np.concatenate(rings), np.concatenate(index), n_rad, n_ang


def _require_nonconstant(values: np.ndarray, tol: float) -> None:
    mods = np.abs(values)
    if float(np.ptp(mods)) <= tol * max(1.0, float(mods.max())) and \
            float(np.ptp(values.real) + np.ptp(values.imag)) <= tol * max(1.0, float(mods.max())):
        raise PreconditionError("f appears constant on the sample grid")


def _c(x) -> complex:
    return complex(x)


# -- Gutzmer-Parseval and Cauchy bounds ------------------------------------------

def _validity(coeffs, r: float) -> None:
    if isinstance(coeffs, LaurentSeries):
        r1, r2 = coeffs.annulus
        if not r1 < r < r2:
            raise DomainError(f"r = {r} is outside the annulus {coeffs.annulus}")
    elif isinstance(coeffs, TruncatedSeries):
        hint = coeffs.radius_hint
        if hint is not None and not r < hint:
            raise DomainError(f"r = {r} is outside the disk of radius {hint}")
    if not r > 0:
        raise DomainError("r must be positive")


def _as_oracle(coeffs, f):
    if f is not None:
        return f
    if isinstance(coeffs, (TruncatedSeries, LaurentSeries)):
        return coeffs
    return LaurentSeries.from_terms(indexed_coefficients(coeffs))


def verify_parseval(coeffs, f: Optional[Callable] = None, r: float = 0.5, samples: int = 1024,
                    *, tolerance: float = SAMPLED_TOL, polynomial: Optional[bool] = None,
                    name: str = "parseval") -> CheckResult:
    """Check ``m(r)**2 <= sum |a_j|**2 r**(2j) <= M(r)**2`` on a circle grid.

    The upper inequality uses the sampled ``M`` as is.  The lower one only
    applies when the coefficients are the whole function (``polynomial``,
    default: no separate oracle was given), and uses ``m`` deflated by a
    Lipschitz allowance ``2 * r * max|f'| * pi / samples``.  Slacks are
    normalized by ``M**2``.
    """
    _validity(coeffs, r)
    items = indexed_coefficients(coeffs)
    oracle = _as_oracle(coeffs, f)
    finite = (f is None) if polynomial is None else polynomial
    center = _center(coeffs)

    S = coefficient_power_sum(items, r)
    ext = circle_extrema(lambda z: oracle(center + z), r, samples)
    M2 = ext.max_value ** 2
    norm = M2 if M2 > 0 else 1.0
    upper = (M2 - S) / norm
    details = {"power_sum": S, "m": ext.min_value, "M": ext.max_value, "samples": samples}
    witnesses = [Witness(center + ext.argmax, _c(oracle(center + ext.argmax)), "argmax"),
                 Witness(center + ext.argmin, _c(oracle(center + ext.argmin)), "argmin")]
    residual = upper
    if finite:
        fprime, source = derivative_oracle(oracle, max(1.0, ext.max_value))
        slope = float(np.abs(_sample(fprime, _circle(r, samples, center))).max())
        guard = 2.0 * r * slope * math.pi / samples
        m_low = max(0.0, ext.min_value - guard)
        lower = (S - m_low ** 2) / norm
        residual = min(lower, upper)
        details.update(grid_guard=guard, derivative_source=source, lower_slack=lower)
    details["upper_slack"] = upper
    return _result(name, residual, tolerance, witnesses, details)


def verify_cauchy_bounds(coeffs, f: Optional[Callable] = None, r: float = 0.5,
                         samples: int = 1024, *, tolerance: float = SAMPLED_TOL,
                         name: str = "cauchy") -> CheckResult:
    """``|a_j| <= M(r) / r**j`` for every stored index, negative ones included.

    The slack for index ``j`` is ``1 - |a_j| r**j / M(r)``.
    """
    _validity(coeffs, r)
    items = indexed_coefficients(coeffs)
    oracle = _as_oracle(coeffs, f)
    center = _center(coeffs)
    ext = circle_extrema(lambda z: oracle(center + z), r, samples)
    M = ext.max_value
    worst_j, residual = None, math.inf
    for j, a in items.items():
        slack = (1 - abs(a) * r ** j / M) if M > 0 else -abs(a)
        if slack < residual:
            worst_j, residual = j, slack
    witnesses = [Witness(center + ext.argmax, _c(items[worst_j]), f"j={worst_j}")]
    details = {"M": M, "worst_index": worst_j, "samples": samples}
    return _result(name, residual, tolerance, witnesses, details)


def verify_derivative_bound(f: TruncatedSeries, M: float, R: float, r: float,
                            samples: int = 2048, *, tolerance: float = SAMPLED_TOL,
                            name: str = "derivative-bound") -> CheckResult:
    """``max |f'|`` on the closed disk of radius ``r`` against ``M / (R - r)``.

    The hypothesis ``sup |f| <= M`` on ``D(0, R)`` is only checked by
    sampling: on the circle of radius ``R``, or ``0.99 * radius_hint`` when the
    hinted disk is not larger than ``R``.  A contradicting sample makes the
    result inconclusive.
    """
    if not 0 < r < R:
        raise DomainError("need 0 < r < R")
    center = f.center
    hint = f.radius_hint
    hyp_r = R if hint is None or R < hint else 0.99 * hint
    sup = float(np.abs(f(_circle(hyp_r, samples, center))).max())
    points, _, _, _ = _disk_grid(r, samples, center=center)
    fprime = derivative(f)
    dvals = np.abs(fprime(points))
    k = int(np.argmax(dvals))
    bound = M / (R - r)
    residual = (bound - float(dvals[k])) / bound
    details = {"max_derivative": float(dvals[k]), "bound": bound, "sampled_sup": sup,
               "hypothesis_radius": hyp_r, "hypothesis_by_sampling": True}
    witnesses = [Witness(_c(points[k]), _c(fprime(_c(points[k]))), "argmax |f'|")]
    violated = sup > M * (1 + tolerance)
    if violated:
        details["hypothesis_violated"] = True
    return _result(name, residual, tolerance, witnesses, details, inconclusive=violated)


# -- Liouville-type degree detection ------------------------------------------------

def detect_polynomial_degree(f: Callable, A: float, B: float, N: int, radii: Sequence[float],
                             order: int, *, tolerance: float = SAMPLED_TOL,
                             zero_tol: float = 1e-8, name: str = "liouville") -> CheckResult:
    """Is ``f`` consistent with ``|f(z)| <= A + B |z|**N``, hence degree ``<= N``?

    Coefficients ``a_0 .. a_order`` are extracted by alternating sums at the
    smallest radius (with aliasing deflation).  For every radius and every
    ``n > N`` the consequences ``|a_n| <= (A + B r**N) / r**n`` and
    ``sum_{n>N} |a_n|**2 r**(2n) <= (A + B r**N)**2`` are asserted, and the
    bounds for ``n > N`` must shrink along the increasing radii.  The
    low-order bounds (``n <= N``) are reported in ``details`` only.
    """
    if len(radii) == 0:
        raise SeriesError("radii must be non-empty")
    if order <= N:
        raise SeriesError("order must exceed N")
    radii = sorted(float(r) for r in radii)
    coeffs = extract_coefficients(f, order, complex(radii[0]))
    mags = [abs(a) for a in coeffs]
    scale = max(1.0, max(mags))

    residual = math.inf
    witnesses = []
    low_order_violations = []
    growth_ok = True
    for n in range(order + 1):
        bounds = [(A + B * r ** N) / r ** n for r in radii]
        if n <= N:
            for r, b in zip(radii, bounds):
                if mags[n] > b * (1 + tolerance):
                    low_order_violations.append((n, r))
            continue
        if any(b2 > b1 * (1 + 1e-12) for b1, b2 in zip(bounds, bounds[1:])):
            growth_ok = False
        best = min(bounds)
        slack = (best - mags[n]) / best if best > 0 else -mags[n] / scale
        if slack < residual:
            residual = slack
        if slack < -tolerance:
            witnesses.append(Witness(complex(radii[bounds.index(best)]), coeffs[n], f"n={n}"))

    for r in radii:
        cap = (A + B * r ** N) ** 2
        partial = 0.0
        first = None
        for n in range(N + 1, order + 1):
            partial += mags[n] ** 2 * r ** (2 * n)
            if first is None and partial > cap * (1 + tolerance):
                first = n
        slack = (cap - partial) / cap if cap > 0 else -partial / scale ** 2
        residual = min(residual, slack)
        if first is not None:
            witnesses.append(Witness(complex(r), complex(math.sqrt(partial)), f"n={first}"))

    if not growth_ok:
        residual = min(residual, -1.0)
    if residual == math.inf:
        residual = 1.0
    estimated = max((n for n in range(order + 1) if mags[n] > zero_tol * scale), default=0)
    details = {"coefficients": coeffs, "estimated_degree": estimated,
               "low_order_violations": low_order_violations, "radii": radii,
               "growth_monotone": growth_ok}
    if not witnesses:
        witnesses = [Witness(complex(radii[-1]), coeffs[min(N + 1, order)], f"n={min(N + 1, order)}")]
    return _result(name, residual, tolerance, witnesses, details)


# -- Schwarz and Clunie-Jack ----------------------------------------------------------

def verify_schwarz(f: TruncatedSeries, samples: int = 10_000, *, tolerance: float = SAMPLED_TOL,
                   name: str = "schwarz") -> CheckResult:
    """``sum_{n>=1} |a_n|**2 <= 1`` and ``|f(z)| <= |z|`` on the open unit disk.

    Equality cases are classified in ``details['classification']``:
    ``rotation-monomial`` when some ``|a_n|`` reaches 1, ``rotation`` when
    ``|f(z)| = |z|`` at an interior sample.
    """
    if f.center != 0 or abs(f.coeffs[0]) > ZERO_THRESHOLD:
        raise PreconditionError("need a series about 0 with f(0) = 0")
    points, _, _, n_ang = _disk_grid(1.0, samples, closed=False)
    points = points[1:]
    boundary = _circle(1.0, max(n_ang, 1024))
    sup = float(np.abs(f(boundary)).max())

    energy = math.fsum(abs(a) ** 2 for a in f.coeffs[1:])
    mods = np.abs(f(points))
    radii = np.abs(points)
    gap = radii - mods
    k = int(np.argmin(gap))
    residual = min(1.0 - energy, float(gap[k]))

    classification = []
    n_top = max(range(1, f.order + 1), key=lambda n: abs(f.coeffs[n]), default=None)
    if n_top is not None and abs(f.coeffs[n_top]) >= 1 - tolerance:
        classification.append({"case": "rotation-monomial", "omega": f.coeffs[n_top], "n": n_top})
    if float((mods / radii).max()) >= 1 - tolerance:
        classification.append({"case": "rotation", "omega": f.coeffs[1], "n": 1})
    details = {"energy": energy, "sampled_sup": sup, "classification": classification,
               "samples": int(points.size)}
    witnesses = [Witness(_c(points[k]), _c(f(_c(points[k]))), "smallest |z| - |f(z)|")]
    inconclusive = sup > 1 + tolerance
    if inconclusive:
        details["hypothesis_violated"] = True
    return _result(name, residual, tolerance, witnesses, details, inconclusive=inconclusive)


def clunie_jack_quotient(f, alpha: complex) -> complex:
    fprime, _ = derivative_oracle(f)
    return alpha * complex(fprime(alpha)) / complex(f(alpha))


def clunie_jack(f, alpha: complex, *, samples: int = 4096, tolerance: float = SAMPLED_TOL,
                name: str = "clunie-jack") -> CheckResult:
    """``q = alpha f'(alpha) / f(alpha)`` is real and positive at a boundary max.

    When additionally ``f(0) = 0``, ``q >= 1``.  If the sampled maximum of
    ``|f|`` on the unit circle beats ``|f(alpha)|`` the result is inconclusive.
    """
    alpha = complex(alpha)
    if abs(abs(alpha) - 1) > 1e-12:
        raise PreconditionError("alpha must lie on the unit circle")
    fa = complex(f(alpha))
    if abs(fa) <= ZERO_THRESHOLD:
        raise DegenerateError("f(alpha) vanishes")
    fprime, source = derivative_oracle(f, abs(fa))
    q = alpha * complex(fprime(alpha)) / fa
    circle = _circle(1.0, samples)
    mods = np.abs(_sample(f, circle))
    k = int(np.argmax(mods))
    not_max = float(mods[k]) > abs(fa) * (1 + tolerance)

    parts = [-abs(q.imag) / max(1.0, abs(q)), q.real]
    vanishes_at_0 = abs(complex(f(0j))) <= ZERO_THRESHOLD
    if vanishes_at_0:
        parts.append(q.real - 1)
    residual = min(parts)
    details = {"q": q, "f_vanishes_at_0": vanishes_at_0, "derivative_source": source,
               "grid_max": float(mods[k])}
    witnesses = [Witness(alpha, q, "alpha f'(alpha)/f(alpha)")]
    if not_max:
        witnesses.append(Witness(_c(circle[k]), _c(f(_c(circle[k]))), "larger sampled |f|"))
    return _result(name, residual, tolerance, witnesses, details, inconclusive=not_max)


# -- critical points and extrema of |f| ------------------------------------------------

_CANONICAL_DIRECTIONS = (0.0, math.pi / 2, math.pi, 3 * math.pi / 2)


def classify_critical_point(f: TruncatedSeries, z0: complex, *, tol: float = 1e-9,
                            h: float = 1e-5, eps: float = 1e-3,
                            name: str = "saddle") -> CheckResult:
    """Classify ``z0`` for the landscape ``|f|`` and cross-check numerically.

    ``saddle`` when ``f'(z0) = 0 != f(z0)``, ``zero`` when ``f(z0) = 0``,
    otherwise ``regular``.  The cross-check is a central-difference gradient
    of ``|f|`` (step ``h``) and, for saddles, the signs of
    ``|f(z0 + eps e^{i theta})| - |f(z0)|`` over the four axis directions,
    extended to eight when the four do not separate.  The check passes when
    the numerical picture agrees with the classification.
    """
    z0 = complex(z0)
    hint = f.radius_hint
    if hint is not None and not abs(z0 - f.center) < hint:
        raise DomainError("z0 is outside the hinted disk")
    g = recenter(f, z0)
    v = g.coeffs[0]
    d = g.coeffs[1] if g.order >= 1 else 0j
    scale = max(1.0, max(abs(c) for c in g.coeffs))
    t = tol * scale
    if abs(v) <= t:
        kind = "zero"
    elif abs(d) <= t:
        kind = "saddle"
    else:
        kind = "regular"

    def F(z):
        return abs(complex(f(z)))

    gx = (F(z0 + h) - F(z0 - h)) / (2 * h)
    gy = (F(z0 + 1j * h) - F(z0 - 1j * h)) / (2 * h)
    grad = math.hypot(gx, gy)
    expected = abs(d) if kind == "regular" else 0.0
    fd_tol = (1e-4 if kind != "saddle" else 1e-6) * scale
    fd_margin = 1 - abs(grad - expected) / fd_tol
    residual = fd_margin
    details = {"classification": kind, "value": v, "derivative": d, "gradient": grad}
    witnesses = [Witness(z0, v, "f(z0)"), Witness(z0, d, "f'(z0)")]
    if kind == "saddle":
        base = abs(v)
        noise = 1e-12 * scale
        thetas = list(_CANONICAL_DIRECTIONS)
        diffs = [F(z0 + eps * complex(math.cos(th), math.sin(th))) - base for th in thetas]
        if not (max(diffs) > noise and min(diffs) < -noise):
            extra = [th + math.pi / 4 for th in _CANONICAL_DIRECTIONS]
            thetas += extra
            diffs += [F(z0 + eps * complex(math.cos(th), math.sin(th))) - base for th in extra]
        sign_margin = min(max(diffs), -min(diffs)) / noise - 1
        residual = min(residual, sign_margin)
        details["directional"] = list(zip(thetas, diffs))
        for th, df in zip(thetas, diffs):
            p = z0 + eps * complex(math.cos(th), math.sin(th))
            witnesses.append(Witness(p, complex(df), f"theta={th:.6g}"))
    return _result(name, residual, 0.0, witnesses, details)


def verify_anti_calculus(f, R: float = 1.0, samples: int = 4096, *,
                         significance: float = DERIVATIVE_SIGNIFICANCE,
                         name: str = "anti-calculus") -> CheckResult:
    """At the sampled maximum of ``|f|`` on the closed disk, ``f' != 0``; at the
    sampled minimum, ``f = 0`` or ``f' != 0``.

    Both extrema must fall on the boundary ring, except that an interior
    minimum is accepted where a zero of ``f`` lies within one grid cell
    (Newton step ``|f/f'|`` no longer than the grid spacing).
    """
    center = _center(f)
    points, ring, n_rad, n_ang = _disk_grid(R, samples, center=center)
    values = _sample(f, points)
    _require_nonconstant(values, SAMPLED_TOL)
    mods = np.abs(values)
    scale = float(mods.max())
    fprime, source = derivative_oracle(f, scale)
    spacing = max(R / n_rad, 2 * math.pi * R / n_ang)

    ip, im = int(np.argmax(mods)), int(np.argmin(mods))
    a_max, a_min = _c(points[ip]), _c(points[im])
    d_max = abs(complex(fprime(a_max)))
    d_min = abs(complex(fprime(a_min)))
    f_min = float(mods[im])
    near_zero = f_min <= ZERO_THRESHOLD * max(1.0, scale) or f_min <= d_min * spacing

    thr_max = significance * float(mods[ip])
    margin_max = d_max / thr_max - 1
    if near_zero:
        margin_min = 1.0
    else:
        thr_min = significance * max(f_min, ZERO_THRESHOLD * scale)
        margin_min = d_min / thr_min - 1
    residual = min(margin_max, margin_min)

    max_on_boundary = ring[ip] == n_rad
    min_ok = ring[im] == n_rad or near_zero
    details = {"argmax": a_max, "argmin": a_min, "max_on_boundary": bool(max_on_boundary),
               "min_branch": "zero" if near_zero else "derivative", "derivative_source": source,
               "derivative_at_max": d_max, "derivative_at_min": d_min}
    witnesses = [Witness(a_max, complex(fprime(a_max)), "f' at argmax"),
                 Witness(a_min, _c(values[im]), "f at argmin")]
    return _result(name, residual, 0.0, witnesses, details,
                   inconclusive=not (max_on_boundary and min_ok))


def verify_boundary_max(f, R: float = 1.0, interior_samples: int = 4096,
                        boundary_samples: int = 1024, *, tolerance: float = SAMPLED_TOL,
                        name: str = "boundary-max") -> CheckResult:
    """The sampled interior maximum of ``|f|`` does not exceed the boundary one."""
    center = _center(f)
    inner, _, _, _ = _disk_grid(R, interior_samples, closed=False, center=center)
    ring = _circle(R, boundary_samples, center)
    vi, vb = _sample(f, inner), _sample(f, ring)
    _require_nonconstant(np.concatenate([vi, vb]), SAMPLED_TOL)
    mi, mb = np.abs(vi), np.abs(vb)
    ki, kb = int(np.argmax(mi)), int(np.argmax(mb))
    top_b = float(mb[kb])
    residual = (top_b - float(mi[ki])) / top_b if top_b > 0 else -float(mi[ki])
    witnesses = [Witness(_c(ring[kb]), _c(vb[kb]), "boundary max"),
                 Witness(_c(inner[ki]), _c(vi[ki]), "interior max")]
    details = {"interior_max": float(mi[ki]), "boundary_max": top_b}
    return _result(name, residual, tolerance, witnesses, details)


# -- open mapping -----------------------------------------------------------------

def philox(seed: int, stream: int = 0) -> np.random.Generator:
    """Counter-based generator; each ``stream`` gets an independent key."""
    return np.random.Generator(np.random.Philox(key=(int(stream) << 64) | int(seed)))


def _refine(f, T: complex, start: complex, r: float, window: float, levels: int = 14):
    best = start
    best_dist = abs(T - complex(f(start)))
    offsets = np.linspace(-1.0, 1.0, 9)
    patch = (offsets[:, None] + 1j * offsets[None, :]).ravel()
    for _ in range(levels):
        pts = best + window * patch
        mod = np.abs(pts)
        pts = np.where(mod > r, pts * (r / np.maximum(mod, 1e-300)), pts)
        dist = np.abs(T - _sample(f, pts))
        k = int(np.argmin(dist))
        if dist[k] < best_dist:
            best, best_dist = complex(pts[k]), float(dist[k])
        window /= 4
    return best, best_dist


def verify_open_image(f, r: float, target_count: int = 16, solve_grid: int = 64, *,
                      seed: int = 0, stream: int = 0, attain_tol: float = 1e-3,
                      boundary_samples: int = 1024, name: str = "open-image") -> CheckResult:
    """Every target in ``D(f(0), delta/2)`` is attained on ``D(0, r)``.

    ``delta`` is the sampled distance from ``f(0)`` to ``f`` of the circle of
    radius ``r``.  Each target is solved by a polar grid search followed by a
    nested zoom around the best cell; a target counts as attained when the
    miss is at most ``attain_tol * delta``.
    """
    f0 = complex(f(0j))
    ring = _circle(r, boundary_samples)
    dist0 = np.abs(f0 - _sample(f, ring))
    kd = int(np.argmin(dist0))
    delta = float(dist0[kd])
    if delta <= 1e-9 * max(1.0, abs(f0)):
        return _result(name, 0.0, attain_tol,
                       [Witness(_c(ring[kd]), _c(f(_c(ring[kd]))), "f(0) attained on circle")],
                       {"delta": delta}, inconclusive=True)
    rng = philox(seed, stream)
    radius = (delta / 2) * np.sqrt(rng.random(target_count))
    targets = f0 + radius * np.exp(2j * np.pi * rng.random(target_count))

    n_ang = max(8, solve_grid)
    grid, _, _, _ = _disk_grid(r, solve_grid * n_ang)
    values = _sample(f, grid)
    window = max(r / solve_grid, 2 * math.pi * r / n_ang)
    worst, worst_w = -1.0, None
    for T in targets:
        k = int(np.argmin(np.abs(T - values)))
        z, miss = _refine(f, complex(T), complex(grid[k]), r, window)
        if miss > worst:
            worst, worst_w = miss, Witness(z, complex(T), "worst target")
    residual = -worst / delta
    details = {"delta": delta, "max_miss": worst, "targets": int(target_count)}
    return _result(name, residual, attain_tol, [worst_w], details)


# -- Laurent and double series -------------------------------------------------------

def verify_laurent_uniqueness(L: LaurentSeries, radii: Sequence[float], *, samples: int = 1024,
                              tolerance: float = 1e-9, claimed_sup: Optional[float] = None,
                              rel_tol: float = SAMPLED_TOL,
                              name: str = "laurent-uniqueness") -> CheckResult:
    """Coefficients are bounded by ``max(sup |L|, tolerance) / r**j`` (best radius).

    A function vanishing on the circles (sup below ``tolerance``) must have
    all coefficients below ``tolerance / r**j``.  ``claimed_sup`` replaces the
    sampled supremum.
    """
    for r in radii:
        if not L.contains(r):
            raise DomainError(f"radius {r} is outside the annulus {L.annulus}")
    if claimed_sup is None:
        sup = max(float(np.abs(L(_circle(r, samples))).max()) for r in radii)
    else:
        sup = float(claimed_sup)
    M = max(sup, tolerance)
    residual, witnesses = math.inf, []
    for j, a in L.indexed().items():
        bounds = [M / r ** j for r in radii]
        b = min(bounds)
        slack = (b - abs(a)) / b
        if slack < -rel_tol:
            witnesses.append(Witness(complex(radii[bounds.index(b)]), a, f"j={j}"))
        residual = min(residual, slack)
    if not witnesses:
        witnesses = [Witness(complex(radii[0]), complex(sup), "sup")]
    details = {"sup": sup, "vanishing": sup <= tolerance}
    return _result(name, residual, rel_tol, witnesses, details)


def verify_double_series(family: SeriesFamily, r: float, k: int = 0, samples: int = 256, *,
                         tolerance: float = IDENTITY_TOL, name: str = "double-series") -> CheckResult:
    """Termwise sum of k-th derivatives equals the k-th derivative of the sum."""
    if not isinstance(family, SeriesFamily):
        family = SeriesFamily(tuple(family))
    hint = family.radius_hint
    if hint is not None and not r < hint:
        raise DomainError("r is outside the common disk")
    summed = double_series_sum(family, k)
    points, _, _, _ = _disk_grid(r, samples, center=family.center)
    lhs = summed.series(points)
    terms = []
    for f in family.members:
        for _ in range(k):
            f = derivative(f)
        terms.append(f(points))
    terms = np.array(terms)
    rhs = terms.sum(axis=0)
    err = np.abs(lhs - rhs) / (1 + np.abs(terms).sum(axis=0))
    i = int(np.argmax(err))
    gap = max(float(err[i]), summed.discrepancy)
    details = {"sampled_error": float(err[i]), "coefficient_discrepancy": summed.discrepancy}
    return _result(name, -gap, tolerance, [Witness(_c(points[i]), _c(lhs[i]), "largest gap")],
                   details)


# -- checks wrapping the averaging identities -------------------------------------------

def check_mean_value(P: TruncatedSeries, z0: complex, z: complex, n: int, *,
                     tolerance: float = IDENTITY_TOL, name: str = "mean-value") -> CheckResult:
    res = polygonal_mean_value(P, z0, z, n)
    from .unity import unity_grid
    nodes = complex(z0) + complex(z) * unity_grid(n).as_array()
    scale = 1 + float(np.abs(P(nodes)).max())
    details = {"mean": res.mean, "residual_abs": res.residual,
               "contract_violation": res.contract_violation}
    return _result(name, -res.residual / scale, tolerance,
                   [Witness(complex(z0), res.mean, "polygon mean")], details)


def taylor_coefficient(P: TruncatedSeries, z0: complex, j: int) -> complex:
    """``P^(j)(z0) / j!`` from repeated symbolic differentiation."""
    d = P
    for _ in range(j):
        d = derivative(d)
    return complex(d(complex(z0))) / math.factorial(j)


def check_discrete_cauchy(P: TruncatedSeries, z0: complex, z: complex, n: int, *,
                          tolerance: float = 1e-9, name: str = "discrete-cauchy") -> CheckResult:
    """Discrete Cauchy formula against symbolic derivatives for ``j = 0..n``.

    Errors are relative to ``max|P(zeta_k)| / |z|**j``, the magnitude the
    averaged terms carry.
    """
    from .unity import unity_grid
    nodes = complex(z0) + complex(z) * unity_grid(n).as_array()
    sample_max = float(np.abs(P(nodes)).max())
    worst, worst_j = 0.0, 0
    for j in range(n + 1):
        got = discrete_cauchy_derivative(P, z0, z, j, n)
        want = taylor_coefficient(P, z0, j)
        denom = max(sample_max / abs(z) ** j, abs(want), 1e-300)
        err = abs(got - want) / denom
        if err > worst:
            worst, worst_j = err, j
    details = {"worst_index": worst_j}
    return _result(name, -worst, tolerance,
                   [Witness(complex(z0), taylor_coefficient(P, z0, worst_j), f"j={worst_j}")],
                   details)


def check_extraction(f: TruncatedSeries, z: complex, max_n: int, *,
                     tolerance: float = 1e-9, name: str = "extract") -> CheckResult:
    """Alternating-sum extraction (deflated through the full order) against the
    stored coefficients, errors relative to ``max|f(z omega^k)| / |z|**n``."""
    coeffs = extract_coefficients(f, f.order, complex(z))
    peak = float(np.abs(f(_circle(abs(z), 1024, f.center))).max())
    worst, worst_n = 0.0, 1
    for n in range(1, max_n + 1):
        err = abs(coeffs[n] - f.coeffs[n]) / max(peak / abs(z) ** n, abs(f.coeffs[n]))
        if err > worst:
            worst, worst_n = err, n
    return _result(name, -worst, tolerance,
                   [Witness(complex(z), coeffs[worst_n], f"n={worst_n}")],
                   {"worst_index": worst_n, "radius": abs(z)})


def check_local_representation(f: TruncatedSeries, *, tolerance: float = 1e-9,
                               name: str = "local-rep") -> CheckResult:
    rep = local_representation(f)
    back = rep.reconstruct()
    scale = max(1.0, max(abs(c) for c in f.coeffs))
    gaps = [abs(x - y) for x, y in zip(back.coeffs, f.coeffs)]
    n = int(np.argmax(gaps))
    details = {"multiplicity": rep.multiplicity_m, "a0": rep.a0,
               "phi_linear": rep.phi.coeffs[1] if rep.phi.order >= 1 else 0j}
    return _result(name, -gaps[n] / scale, tolerance,
                   [Witness(f.center, back.coeffs[n], f"n={n}")], details)


def check_injectivity(f: TruncatedSeries, grid_points: int = 1000, *,
                      tolerance: float = 1e-9, name: str = "injectivity") -> CheckResult:
    """Difference quotients inside the injectivity radius stay above ``|f'(z0)|/2``."""
    radius = injectivity_radius(f)
    r = radius if math.isfinite(radius) else 1.0
    a1 = abs(f.coeffs[1])
    points, _, _, _ = _disk_grid(r, grid_points, closed=False, center=f.center)
    values = f(points)
    dz = points[:, None] - points[None, :]
    dw = values[:, None] - values[None, :]
    np.fill_diagonal(dz, 1.0)
    np.fill_diagonal(dw, np.inf)
    q = np.abs(dw) / np.abs(dz)
    i, j = np.unravel_index(int(np.argmin(q)), q.shape)
    qmin = float(q[i, j])
    details = {"injectivity_radius": radius, "sampled_radius": r, "min_quotient": qmin,
               "bound": a1 / 2}
    return _result(name, qmin - a1 / 2, tolerance,
                   [Witness(_c(points[i]), _c(points[j]), "closest pair")], details)
