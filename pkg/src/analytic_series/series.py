"""Truncated power series and Laurent polynomials over complex scalars.

A :class:`TruncatedSeries` holds the Taylor coefficients ``a_0 .. a_N`` of
``f(z) = sum a_n (z - z0)**n`` about a center ``z0``.  Coefficients beyond
the truncation order ``N`` are *unknown*, not zero, so every binary
operation returns only the prefix both operands determine (the minimum of
the two orders).

All objects are immutable and every operation is a pure function.
Evaluation accepts Python scalars or numpy arrays, so the same series can
be sampled on a whole grid at once.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence, Union

import numpy as np

from .errors import (
    CenterMismatchError,
    DivisionAtCenterError,
    DomainError,
    NullFunctionError,
    PreconditionError,
    SeriesError,
)

ZERO_THRESHOLD = 1e-12

Number = Union[int, float, complex]


def _finite(c: complex) -> bool:
    return math.isfinite(c.real) and math.isfinite(c.imag)


@dataclass(frozen=True)
class TruncatedSeries:
    coeffs: tuple
    center: complex = 0j
    radius_hint: Optional[float] = None

    def __post_init__(self):
        coeffs = tuple(complex(c) for c in self.coeffs)
        if not coeffs:
            raise SeriesError("a series needs at least one coefficient")
        if not all(_finite(c) for c in coeffs):
            raise SeriesError("coefficients must be finite")
        center = complex(self.center)
        if not _finite(center):
            raise SeriesError("center must be finite")
        hint = self.radius_hint
        if hint is not None:
            hint = float(hint)
            if not hint > 0:
                raise SeriesError(f"radius_hint must be positive, got {hint}")
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "radius_hint", hint)

    # -- construction helpers -------------------------------------------

    @classmethod
    def constant(cls, value: Number, order: int = 0, center: Number = 0j) -> "TruncatedSeries":
        return cls((value,) + (0j,) * order, center, math.inf)

    @classmethod
    def polynomial(cls, coeffs: Sequence[Number], order: Optional[int] = None,
                   center: Number = 0j) -> "TruncatedSeries":
        """Polynomial with the given coefficients, zero-padded to ``order``."""
        coeffs = list(coeffs)
        if order is not None:
            if order + 1 < len(coeffs):
                raise SeriesError("order is below the polynomial degree")
            coeffs += [0j] * (order + 1 - len(coeffs))
        return cls(tuple(coeffs), center, math.inf)

    @classmethod
    def identity(cls, order: int = 1, center: Number = 0j) -> "TruncatedSeries":
        """The series of ``z`` itself, expanded about ``center``."""
        center = complex(center)
        coeffs = [center, 1.0] + [0j] * (order - 1)
        return cls(tuple(coeffs[: order + 1]), center, math.inf)

    @classmethod
    def monomial(cls, n: int, order: Optional[int] = None,
                 coefficient: Number = 1.0) -> "TruncatedSeries":
        order = n if order is None else order
        coeffs = [0j] * (order + 1)
        if n <= order:
            coeffs[n] = complex(coefficient)
        return cls(tuple(coeffs), 0j, math.inf)

    @classmethod
    def exp(cls, order: int) -> "TruncatedSeries":
        return cls(tuple(1.0 / math.factorial(n) for n in range(order + 1)), 0j, math.inf)

    @classmethod
    def sin(cls, order: int) -> "TruncatedSeries":
        coeffs = [0.0] * (order + 1)
        for n in range(1, order + 1, 2):
            coeffs[n] = (-1) ** (n // 2) / math.factorial(n)
        return cls(tuple(coeffs), 0j, math.inf)

    @classmethod
    def cos(cls, order: int) -> "TruncatedSeries":
        coeffs = [0.0] * (order + 1)
        for n in range(0, order + 1, 2):
            coeffs[n] = (-1) ** (n // 2) / math.factorial(n)
        return cls(tuple(coeffs), 0j, math.inf)

    @classmethod
    def geometric(cls, order: int) -> "TruncatedSeries":
        return cls((1.0,) * (order + 1), 0j, 1.0)

    # -- inspection --------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n):
        return self.coeffs[n]

    def degree(self, threshold: float = 0.0) -> int:
        """Highest index whose coefficient exceeds ``threshold`` (0 if none)."""
        for n in range(self.order, -1, -1):
            if abs(self.coeffs[n]) > threshold:
                return n
        return 0

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise SeriesError("cannot extend a truncated series")
        return TruncatedSeries(self.coeffs[: order + 1], self.center, self.radius_hint)

    def with_hint(self, radius_hint: Optional[float]) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs, self.center, radius_hint)

    def __call__(self, z):
        return evaluate(self, z)

    # -- arithmetic sugar over the module functions -------------------------

    def _coerce(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return other
        if isinstance(other, (int, float, complex)):
            return TruncatedSeries.constant(other, self.order, self.center)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return linear_combine(1, self, 1, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return linear_combine(1, self, -1, other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return linear_combine(1, other, -1, self)

    def __neg__(self):
        return scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return scale(self, other)
        if isinstance(other, TruncatedSeries):
            return cauchy_product(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, p: int):
        if not isinstance(p, int) or p < 0:
            return NotImplemented
        return power(self, p)


@dataclass(frozen=True)
class RadiusEstimate:
    """Windowed Cauchy-Hadamard estimate; ``value`` may be ``math.inf``."""

    value: float
    tail_window: int


@dataclass(frozen=True)
class ZeroFactorization:
    order_k: int
    cofactor: TruncatedSeries

    def reconstruct(self) -> TruncatedSeries:
        """``(z - z0)**k * cofactor`` as a series of the original order."""
        phi = self.cofactor
        coeffs = (0j,) * self.order_k + phi.coeffs
        return TruncatedSeries(coeffs, phi.center, phi.radius_hint)


def _check_centers(f: TruncatedSeries, g: TruncatedSeries) -> None:
    if f.center != g.center:
        raise CenterMismatchError(f"centers differ: {f.center} vs {g.center}")


def _min_hint(f: TruncatedSeries, g: TruncatedSeries) -> Optional[float]:
    if f.radius_hint is None or g.radius_hint is None:
        return None
    return min(f.radius_hint, g.radius_hint)


def scale(f: TruncatedSeries, lam: Number) -> TruncatedSeries:
    lam = complex(lam)
    return TruncatedSeries(tuple(lam * a for a in f.coeffs), f.center, f.radius_hint)


def linear_combine(lam: Number, f: TruncatedSeries, mu: Number,
                   g: TruncatedSeries) -> TruncatedSeries:
    """``lam*f + mu*g`` through the common truncation order."""
    _check_centers(f, g)
    lam, mu = complex(lam), complex(mu)
    n = min(f.order, g.order)
    coeffs = tuple(lam * f.coeffs[k] + mu * g.coeffs[k] for k in range(n + 1))
    return TruncatedSeries(coeffs, f.center, _min_hint(f, g))


def _convolve(a: Sequence[complex], b: Sequence[complex], n: int) -> list:
    return [sum(a[j] * b[k - j] for j in range(k + 1)) for k in range(n + 1)]


def cauchy_product(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    _check_centers(f, g)
    n = min(f.order, g.order)
    return TruncatedSeries(tuple(_convolve(f.coeffs, g.coeffs, n)), f.center, _min_hint(f, g))


def power(f: TruncatedSeries, p: int) -> TruncatedSeries:
    """``f**p`` by repeated Cauchy products (``p >= 0``)."""
    if p < 0:
        raise SeriesError("negative powers need reciprocal()")
    result = TruncatedSeries.constant(1.0, f.order, f.center).with_hint(f.radius_hint)
    for _ in range(p):
        result = cauchy_product(result, f)
    return result


def derivative(f: TruncatedSeries) -> TruncatedSeries:
    if f.order == 0:
        return TruncatedSeries((0j,), f.center, f.radius_hint)
    coeffs = tuple(n * f.coeffs[n] for n in range(1, f.order + 1))
    return TruncatedSeries(coeffs, f.center, f.radius_hint)


def evaluate(f: TruncatedSeries, z):
    """Partial sum at ``z`` by Horner's rule, highest coefficient first.

    ``z`` may be a scalar or a numpy array; arrays are evaluated elementwise.
    """
    coeffs = f.coeffs
    if isinstance(z, np.ndarray):
        w = z.astype(complex) - f.center
        acc = np.full(w.shape, coeffs[-1], dtype=complex)
    else:
        w = z - f.center
        acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * w + c
    return acc


def radius_estimate(f: TruncatedSeries, tail_window: Optional[int] = None,
                    threshold: float = ZERO_THRESHOLD) -> RadiusEstimate:
    """Radius of convergence from the largest ``|a_n|**(1/n)`` in the tail.

    The limsup is replaced by a maximum over the last ``tail_window``
    indices (default: the last half of the coefficients).  Index 0 and
    coefficients at or below ``threshold`` are skipped.
    """
    size = f.order + 1
    if tail_window is None:
        tail_window = max(1, size // 2)
    if not 1 <= tail_window <= size:
        raise SeriesError(f"tail_window must lie in [1, {size}]")
    roots = [abs(f.coeffs[n]) ** (1.0 / n)
             for n in range(size - tail_window, size)
             if n > 0 and abs(f.coeffs[n]) > threshold]
    if not roots or max(roots) == 0.0:
        return RadiusEstimate(math.inf, tail_window)
    return RadiusEstimate(1.0 / max(roots), tail_window)


def _taylor_shift(coeffs: Sequence[complex], d: complex) -> list:
    # Repeated synthetic division: coefficients of P(x + d).
    b = list(coeffs)
    n = len(b) - 1
    for k in range(n):
        for j in range(n - 1, k - 1, -1):
            b[j] += d * b[j + 1]
    return b


def recenter(f: TruncatedSeries, w: Number) -> TruncatedSeries:
    """Re-expand ``f`` about ``w``: ``b_m = sum_n a_n C(n, m) (w - z0)**(n-m)``."""
    w = complex(w)
    d = w - f.center
    if d == 0:
        return f
    hint = f.radius_hint
    if hint is not None and not abs(d) < hint:
        raise DomainError(f"|w - z0| = {abs(d)} is outside the disk of radius {hint}")
    new_hint = None if hint is None else (hint if math.isinf(hint) else hint - abs(d))
    return TruncatedSeries(tuple(_taylor_shift(f.coeffs, d)), w, new_hint)


def _is_constant(f: TruncatedSeries) -> bool:
    return all(c == 0 for c in f.coeffs[1:])


def reciprocal(f: TruncatedSeries, threshold: float = ZERO_THRESHOLD) -> TruncatedSeries:
    a = f.coeffs
    if abs(a[0]) <= threshold:
        raise DivisionAtCenterError("reciprocal needs a nonzero constant term")
    inv0 = 1.0 / a[0]
    b = [inv0]
    for n in range(1, f.order + 1):
        b.append(-inv0 * sum(a[k] * b[n - k] for k in range(1, n + 1)))
    # The disk where 1/f converges is not known from the coefficients.
    hint = f.radius_hint if _is_constant(f) else None
    return TruncatedSeries(tuple(b), f.center, hint)


def compose(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Taylor coefficients of ``f(g(z))`` about ``g.center``.

    When ``g(g.center)`` differs from ``f.center`` the outer series is first
    recentered at that value, which must lie inside ``f``'s hinted disk.
    """
    n = min(f.order, g.order)
    inner0 = g.coeffs[0]
    outer = f if inner0 == f.center else recenter(f, inner0)
    h = (0j,) + g.coeffs[1: n + 1]
    acc = [outer.coeffs[n]] + [0j] * n
    for k in range(n - 1, -1, -1):
        acc = _convolve(acc, h, n)
        acc[0] += outer.coeffs[k]
    entire = f.radius_hint == math.inf and g.radius_hint == math.inf
    return TruncatedSeries(tuple(acc), g.center, math.inf if entire else None)


def binomial_root_series(p: int, order: int) -> TruncatedSeries:
    """Coefficients ``C(1/p, n)`` of the principal p-th root of ``1 + z``."""
    if p < 1:
        raise SeriesError("p must be a positive integer")
    alpha = 1.0 / p
    coeffs = [1.0]
    for n in range(1, order + 1):
        coeffs.append(coeffs[-1] * (alpha - (n - 1)) / n)
    return TruncatedSeries(tuple(coeffs), 0j, math.inf if p == 1 else 1.0)


def zero_factorization(f: TruncatedSeries,
                       threshold: float = ZERO_THRESHOLD) -> ZeroFactorization:
    """Split ``f = (z - z0)**k * phi`` with ``phi(z0) != 0``.

    Coefficients with modulus at or below ``threshold`` count as zero, so
    ``k`` is the first index whose coefficient exceeds it.
    """
    if abs(f.coeffs[0]) > threshold:
        raise PreconditionError("f does not vanish at its center")
    for k, a in enumerate(f.coeffs):
        if abs(a) > threshold:
            cofactor = TruncatedSeries(f.coeffs[k:], f.center, f.radius_hint)
            return ZeroFactorization(k, cofactor)
    raise NullFunctionError("all coefficients are below the zero threshold")


@dataclass(frozen=True)
class LaurentSeries:
    """``sum_m a_{-m} z**-m + sum_k a_k z**k`` on ``r1 < |z| < r2``.

    ``neg_coeffs[m - 1]`` is ``a_{-m}``; ``pos_coeffs[k]`` is ``a_k``.
    """

    neg_coeffs: tuple = ()
    pos_coeffs: tuple = (0j,)
    annulus: tuple = (0.0, math.inf)

    def __post_init__(self):
        neg = tuple(complex(c) for c in self.neg_coeffs)
        pos = tuple(complex(c) for c in self.pos_coeffs) or (0j,)
        if not all(_finite(c) for c in neg + pos):
            raise SeriesError("coefficients must be finite")
        r1, r2 = (float(r) for r in self.annulus)
        if not (0.0 <= r1 < r2):
            raise SeriesError(f"need 0 <= r1 < r2, got ({r1}, {r2})")
        object.__setattr__(self, "neg_coeffs", neg)
        object.__setattr__(self, "pos_coeffs", pos)
        object.__setattr__(self, "annulus", (r1, r2))

    @classmethod
    def from_terms(cls, terms: Union[Mapping[int, Number], Iterable],
                   annulus=(0.0, math.inf)) -> "LaurentSeries":
        """Build from ``{j: a_j}`` or ``(j, a_j)`` pairs; repeated indices add up."""
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for j, a in items:
            acc[int(j)] = acc.get(int(j), 0j) + complex(a)
        low = min(acc, default=0)
        high = max(acc, default=0)
        neg = [acc.get(-m, 0j) for m in range(1, -low + 1)] if low < 0 else []
        pos = [acc.get(k, 0j) for k in range(0, max(high, 0) + 1)]
        return cls(tuple(neg), tuple(pos), annulus)

    def indexed(self) -> dict:
        out = {-(m + 1): a for m, a in enumerate(self.neg_coeffs)}
        out.update(enumerate(self.pos_coeffs))
        return dict(sorted(out.items()))

    def contains(self, z) -> bool:
        r1, r2 = self.annulus
        mod = np.abs(z)
        return bool(np.all((r1 < mod) & (mod < r2)))

    def __call__(self, z):
        return laurent_evaluate(self, z)


def laurent_evaluate(L: LaurentSeries, z):
    """Negative-power part (Horner in ``1/z``) plus the power-series part."""
    if not L.contains(z):
        raise DomainError(f"|z| outside the annulus {L.annulus}")
    if isinstance(z, np.ndarray):
        z = z.astype(complex)
    u = 1 / z
    neg = 0j
    for a in reversed(L.neg_coeffs):
        neg = (neg + a) * u
    pos = L.pos_coeffs[-1]
    for a in reversed(L.pos_coeffs[:-1]):
        pos = pos * z + a
    return neg + pos


def indexed_coefficients(obj) -> dict:
    """Normalize coefficient containers to ``{index: coefficient}``."""
    if isinstance(obj, TruncatedSeries):
        return dict(enumerate(obj.coeffs))
    if isinstance(obj, LaurentSeries):
        return obj.indexed()
    if isinstance(obj, Mapping):
        return {int(j): complex(a) for j, a in obj.items()}
    return {j: complex(a) for j, a in enumerate(obj)}


def principal_root(a: complex, m: int) -> complex:
    """m-th root with argument in ``(-pi/m, pi/m]``."""
    if a == 0:
        return 0j
    theta = cmath.phase(a)
    if theta <= -math.pi:
        theta = math.pi
    return abs(a) ** (1.0 / m) * cmath.exp(1j * theta / m)
