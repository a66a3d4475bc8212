"""Constructive structure results: injectivity radius, local normal form
``f = a0 + phi(z - z0)**m`` and termwise summation of series families."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import CriticalCenterError, DegenerateError, EmptyFamilyError, SeriesError
from .series import (
    ZERO_THRESHOLD,
    TruncatedSeries,
    binomial_root_series,
    compose,
    derivative,
    power,
    principal_root,
)


def _tail_slope(coeffs: Sequence[complex], r: float) -> float:
    return math.fsum(n * abs(coeffs[n]) * r ** (n - 1) for n in range(2, len(coeffs)))


def injectivity_radius(f: TruncatedSeries, *, rel_precision: float = 1e-6,
                       threshold: float = ZERO_THRESHOLD) -> float:
    """Largest ``r`` with ``sum_{n>=2} n |a_n| r**(n-1) < |a_1| / 2``.

    This is the sufficient condition from the difference-quotient bound, so
    the radius is conservative.  It is capped at ``radius_hint / 2`` when a
    hint exists; with no hint and a vanishing tail the result is ``inf``.
    """
    if f.order < 1 or abs(f.coeffs[1]) <= threshold:
        raise CriticalCenterError("f'(z0) vanishes; no injectivity radius")
    target = abs(f.coeffs[1]) / 2
    cap = math.inf if f.radius_hint is None else f.radius_hint / 2
    if all(c == 0 for c in f.coeffs[2:]):
        return cap

    hi = 1.0
    while _tail_slope(f.coeffs, hi) < target:
        if hi >= cap:
            return cap
        hi *= 2
    lo = 0.0
    while hi - lo > rel_precision * hi:
        mid = (lo + hi) / 2
        if _tail_slope(f.coeffs, mid) < target:
            lo = mid
        else:
            hi = mid
    return min(lo, cap)


@dataclass(frozen=True)
class LocalRepresentation:
    """``f(z) = a0 + phi(z - z0)**m`` with ``phi(w) = a w (1 + G(w))``."""

    a0: complex
    multiplicity_m: int
    phi: TruncatedSeries
    center: complex = 0j

    def reconstruct(self) -> TruncatedSeries:
        """``a0 + phi**m`` through the order of the original series.

        ``phi = w * psi``, so ``phi**m = w**m * psi**m`` keeps every
        coefficient up to ``order(phi) - 1 + m``.
        """
        m = self.multiplicity_m
        psi = TruncatedSeries(self.phi.coeffs[1:], 0j, self.phi.radius_hint)
        body = power(psi, m)
        coeffs = [0j] * m + list(body.coeffs)
        coeffs[0] += self.a0
        return TruncatedSeries(tuple(coeffs), self.center, self.phi.radius_hint)


def local_representation(f: TruncatedSeries, threshold: float = ZERO_THRESHOLD) -> LocalRepresentation:
    a = f.coeffs
    m = next((n for n in range(1, f.order + 1) if abs(a[n]) > threshold), None)
    if m is None:
        raise DegenerateError("f - f(z0) vanishes through the truncation order")
    am = a[m]
    rest = f.order - m
    # f - a0 = a_m w^m (1 + g(w)), g(0) = 0
    g = TruncatedSeries((0j,) + tuple(a[m + j] / am for j in range(1, rest + 1)), 0j)
    one_plus_G = compose(binomial_root_series(m, rest), g)
    root = principal_root(am, m)
    phi = TruncatedSeries((0j,) + tuple(root * c for c in one_plus_G.coeffs), 0j)
    return LocalRepresentation(a[0], m, phi, f.center)


@dataclass(frozen=True)
class SeriesFamily:
    """Finitely many series ``f_0 .. f_M`` with a common center and order."""

    members: tuple

    def __post_init__(self):
        members = tuple(self.members)
        if not members:
            raise EmptyFamilyError("a family needs at least one member")
        first = members[0]
        for f in members[1:]:
            if f.center != first.center or f.order != first.order:
                raise SeriesError("family members must share center and order")
        object.__setattr__(self, "members", members)

    @property
    def center(self) -> complex:
        return self.members[0].center

    @property
    def order(self) -> int:
        return self.members[0].order

    @property
    def radius_hint(self):
        hints = [f.radius_hint for f in self.members]
        return None if any(h is None for h in hints) else min(hints)

    @classmethod
    def from_terms(cls, f: TruncatedSeries) -> "SeriesFamily":
        """Split ``f`` into its monomials ``a_mu (z - z0)**mu``."""
        members = []
        for mu, a in enumerate(f.coeffs):
            coeffs = [0j] * (f.order + 1)
            coeffs[mu] = a
            members.append(TruncatedSeries(tuple(coeffs), f.center, f.radius_hint))
        return cls(tuple(members))


@dataclass(frozen=True)
class FamilySum:
    series: TruncatedSeries
    discrepancy: float


def _nth_derivative(f: TruncatedSeries, k: int) -> TruncatedSeries:
    for _ in range(k):
        f = derivative(f)
    return f


def _sum_coeffs(series: Sequence[TruncatedSeries]) -> tuple:
    size = len(series[0].coeffs)
    return tuple(sum((s.coeffs[n] for s in series), 0j) for n in range(size))


def double_series_sum(family: SeriesFamily, k: int = 0) -> FamilySum:
    """Coefficientwise sum of the family, differentiated ``k`` times.

    Computed twice -- differentiate the sum, and sum the derivatives -- and
    the largest coefficient discrepancy (relative to the largest coefficient)
    is reported.
    """
    if not isinstance(family, SeriesFamily):
        family = SeriesFamily(tuple(family))
    if k < 0 or k > family.order:
        raise SeriesError(f"need 0 <= k <= {family.order}")
    hint = family.radius_hint
    total = TruncatedSeries(_sum_coeffs(family.members), family.center, hint)
    route_a = _nth_derivative(total, k)
    route_b = TruncatedSeries(
        _sum_coeffs([_nth_derivative(f, k) for f in family.members]), family.center, hint)
    scale = max(1.0, max(abs(c) for c in route_a.coeffs))
    gap = max(abs(x - y) for x, y in zip(route_a.coeffs, route_b.coeffs)) / scale
    return FamilySum(route_a, gap)
