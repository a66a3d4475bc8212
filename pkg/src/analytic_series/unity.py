"""Averaging over the 2n-th roots of unity.

With ``omega = exp(i*pi/n)`` (so ``omega**n == -1``) the power sums
``sum_k omega**(k*j)`` vanish unless ``2n`` divides ``j``.  Every identity
here -- the polygonal mean value, the discrete Cauchy formula, the
alternating coefficient extractor and the Gutzmer sum -- falls out of that
cancellation, and every operator takes ``n`` explicitly because the
identities hold for any ``n >= degree``.

The sums are formed naively in index order; n stays small.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, NamedTuple, Optional

import mpmath
import numpy as np

from .errors import NonFiniteSampleError, SeriesError, SingularNodeError
from .series import (
    TruncatedSeries,
    evaluate,
    indexed_coefficients,
    radius_estimate,
)

Oracle = Callable[[complex], complex]


def _node(k: int, n: int) -> complex:
    # e^{i k pi / n}, exact on the axes.
    k %= 2 * n
    if (2 * k) % n == 0:
        return (1, 1j, -1, -1j)[(2 * k) // n]
    theta = k * math.pi / n
    return complex(math.cos(theta), math.sin(theta))


@dataclass(frozen=True)
class UnityGrid:
    n: int
    omega: complex
    nodes: tuple

    def as_array(self) -> np.ndarray:
        return np.array(self.nodes, dtype=complex)


def unity_grid(n: int) -> UnityGrid:
    """The 2n nodes ``omega**k``, each computed from its angle ``k*pi/n``."""
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise SeriesError(f"n must be a positive integer, got {n!r}")
    return _grid(int(n))


@lru_cache(maxsize=256)
def _grid(n: int) -> UnityGrid:
    nodes = tuple(complex(_node(k, n)) for k in range(2 * n))
    return UnityGrid(n, nodes[1], nodes)


def unity_power_sum(grid: UnityGrid, j: int) -> complex:
    """``sum_k nodes[k]**j``; the power is reduced to a node index."""
    size = 2 * grid.n
    return sum((grid.nodes[(k * j) % size] for k in range(size)), 0j)


def _sample(f: Oracle, points: np.ndarray) -> np.ndarray:
    """Evaluate an oracle on an array of points, vectorized when possible."""
    try:
        values = np.asarray(f(points), dtype=complex)
        if values.shape != points.shape:
            raise TypeError
    except (TypeError, ValueError):
        values = np.array([complex(f(complex(p))) for p in points.ravel()],
                          dtype=complex).reshape(points.shape)
    return values


def _check_finite(values: np.ndarray, points: np.ndarray) -> None:
    bad = ~np.isfinite(values)
    if bad.any():
        k = int(np.flatnonzero(bad.ravel())[0])
        p = complex(points.ravel()[k])
        raise NonFiniteSampleError(f"non-finite sample at z = {p}", point=p,
                                   angle=cmath.phase(p))


def _require_polynomial_n(P: TruncatedSeries, n: int) -> bool:
    if n < 1:
        raise SeriesError("n must be a positive integer")
    return n >= P.degree()


class MeanValue(NamedTuple):
    mean: complex
    residual: float
    contract_violation: bool


def polygonal_mean_value(P: TruncatedSeries, z0: complex, z: complex, n: int) -> MeanValue:
    """Average of ``P`` over the 2n vertices ``z0 + z*omega**k``.

    For ``n >= deg P`` the average equals ``P(z0)``.  A smaller ``n`` is still
    computed, but ``contract_violation`` is set.
    """
    ok = _require_polynomial_n(P, n)
    grid = unity_grid(n)
    points = z0 + z * grid.as_array()
    samples = evaluate(P, points)
    mean = complex(samples.sum() / (2 * n))
    residual = abs(mean - complex(evaluate(P, complex(z0))))
    return MeanValue(mean, residual, not ok)


def discrete_cauchy_derivative(P: TruncatedSeries, z0: complex, z: complex,
                               j: int, n: int) -> complex:
    """``(1/2n) sum_k P(zeta_k) / (zeta_k - z0)**j``, i.e. ``P^(j)(z0)/j!``.

    ``zeta_k - z0`` is formed as ``z*omega**k`` directly rather than by
    subtraction.
    """
    if z == 0:
        raise SingularNodeError("z must be nonzero")
    if not 0 <= j <= n:
        raise SeriesError(f"need 0 <= j <= n, got j={j}, n={n}")
    grid = unity_grid(n)
    offsets = z * grid.as_array()
    samples = evaluate(P, z0 + offsets)
    return complex((samples / offsets ** j).sum() / (2 * n))


def alternating_coefficient_extract(f: Oracle, target_n: int, z: complex, *,
                                    dps: Optional[int] = None) -> complex:
    """Estimate ``a_n`` from ``sum_k (-1)**k f(z*omega**k) / (2n z**n)``.

    The alternating sum kills every index except ``n, 3n, 5n, ...``, so the
    error is ``O(|z|**(2n))`` relative.  With ``dps`` set, nodes and the sum
    are carried in mpmath at that many digits and ``f`` receives ``mpc``
    arguments.
    """
    if target_n < 1:
        raise SeriesError("target_n must be a positive integer")
    if z == 0:
        raise SingularNodeError("z must be nonzero")
    n = target_n
    if dps is not None:
        with mpmath.workdps(dps):
            zz = mpmath.mpc(z)
            total = mpmath.mpc(0)
            for k in range(2 * n):
                value = mpmath.mpc(f(zz * mpmath.expjpi(mpmath.mpf(k) / n)))
                if not mpmath.isfinite(value):
                    raise NonFiniteSampleError("non-finite sample", angle=k * math.pi / n)
                total += value if k % 2 == 0 else -value
            return complex(total / (2 * n * zz ** n))
    grid = unity_grid(n)
    total = 0j
    for k, node in enumerate(grid.nodes):
        value = complex(f(z * node))
        if not cmath.isfinite(value):
            raise NonFiniteSampleError("non-finite sample", point=z * node,
                                       angle=k * math.pi / n)
        total += value if k % 2 == 0 else -value
    return total / (2 * n * z ** n)


def extract_coefficients(f: Oracle, order: int, z: complex, *, deflate: bool = True,
                         dps: Optional[int] = None) -> list:
    """``a_0 .. a_order`` from alternating sums at radius ``|z|``.

    ``a_0`` is ``f(0)``.  With ``deflate`` the aliased contributions
    ``a_{qn} z**((q-1)n)`` (odd ``q >= 3``, ``qn <= order``) are removed,
    working down from the top index, which makes the result exact for
    polynomials of degree ``<= order``.
    """
    raw = [0j] * (order + 1)
    raw[0] = complex(f(mpmath.mpc(0) if dps is not None else 0j))
    for n in range(1, order + 1):
        raw[n] = alternating_coefficient_extract(f, n, z, dps=dps)
    if not deflate:
        return raw
    out = list(raw)
    for n in range(order // 3, 0, -1):
        q = 3
        while q * n <= order:
            out[n] -= out[q * n] * z ** ((q - 1) * n)
            q += 2
    return out


class GutzmerSums(NamedTuple):
    lhs: float
    rhs: float


def gutzmer_identity_sum(P: TruncatedSeries, z: complex, n: int) -> GutzmerSums:
    """``sum_k |P(z omega**k)|**2`` against ``2n sum_j |a_j|**2 |z|**(2j)``."""
    if n < 1:
        raise SeriesError("n must be a positive integer")
    grid = unity_grid(n)
    samples = evaluate(P, complex(P.center) + z * grid.as_array())
    lhs = math.fsum(np.abs(samples) ** 2)
    r2 = abs(z) ** 2
    rhs = 2 * n * math.fsum(abs(a) ** 2 * r2 ** j for j, a in enumerate(P.coeffs))
    return GutzmerSums(lhs, rhs)


@dataclass(frozen=True)
class CircleExtrema:
    radius: float
    min_value: float
    max_value: float
    argmin: complex
    argmax: complex
    sample_count: int


def _golden_max(g: Callable[[float], float], a: float, b: float, iterations: int = 60) -> float:
    inv = (math.sqrt(5) - 1) / 2
    c, d = b - inv * (b - a), a + inv * (b - a)
    gc, gd = g(c), g(d)
    for _ in range(iterations):
        if gc >= gd:
            b, d, gd = d, c, gc
            c = b - inv * (b - a)
            gc = g(c)
        else:
            a, c, gc = c, d, gd
            d = a + inv * (b - a)
            gd = g(d)
    return (a + b) / 2


def circle_extrema(f: Oracle, r: float, samples: int, *, polish: bool = False) -> CircleExtrema:
    """Min and max of ``|f|`` on the grid ``r*exp(2 pi i s / samples)``.

    Ties go to the lowest index.  With ``polish`` a golden-section search
    refines each extremum inside its neighbouring grid cells; the polished
    point replaces the grid point only when it improves on it.
    """
    if samples < 8:
        raise SeriesError("need at least 8 samples")
    if not r > 0:
        raise SeriesError("radius must be positive")
    theta = 2 * np.pi * np.arange(samples) / samples
    points = r * np.exp(1j * theta)
    values = _sample(f, points)
    _check_finite(values, points)
    mods = np.abs(values)
    imin, imax = int(np.argmin(mods)), int(np.argmax(mods))
    mn, mx = float(mods[imin]), float(mods[imax])
    argmin, argmax = complex(points[imin]), complex(points[imax])
    if polish:
        step = 2 * math.pi / samples

        def modulus(t: float) -> float:
            return abs(complex(f(r * cmath.exp(1j * t))))

        t = _golden_max(modulus, theta[imax] - step, theta[imax] + step)
        if modulus(t) > mx:
            argmax = r * cmath.exp(1j * t)
            mx = modulus(t)
        t = _golden_max(lambda s: -modulus(s), theta[imin] - step, theta[imin] + step)
        if modulus(t) < mn:
            argmin = r * cmath.exp(1j * t)
            mn = modulus(t)
    return CircleExtrema(float(r), mn, mx, argmin, argmax, samples)


def coefficient_power_sum(coeffs, r: float) -> float:
    """``sum_j |a_j|**2 r**(2j)`` over all stored indices, negative ones included."""
    if not r > 0:
        raise SeriesError("radius must be positive")
    items = indexed_coefficients(coeffs)
    return math.fsum(abs(a) ** 2 * r ** (2 * j) for j, a in items.items())


def default_extract_radius(f: TruncatedSeries) -> float:
    """``0.1 * radius_hint``; 0.5 for an infinite hint; with no hint the
    coefficient-based radius estimate stands in for the hint."""
    hint = f.radius_hint
    if hint is None:
        hint = radius_estimate(f).value
    if math.isinf(hint):
        return 0.5
    return 0.1 * hint
