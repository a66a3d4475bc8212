import cmath
import math

import numpy as np
import pytest

import oracles
from analytic_series import (
    DegenerateError,
    DomainError,
    LaurentSeries,
    PreconditionError,
    SeriesError,
    SeriesFamily,
    TruncatedSeries,
    Verdict,
    classify_critical_point,
    clunie_jack,
    detect_polynomial_degree,
    verify_anti_calculus,
    verify_boundary_max,
    verify_cauchy_bounds,
    verify_derivative_bound,
    verify_double_series,
    verify_laurent_uniqueness,
    verify_open_image,
    verify_parseval,
    verify_schwarz,
)
from analytic_series.verifiers import (
    Report,
    check_discrete_cauchy,
    check_extraction,
    check_injectivity,
    check_local_representation,
    check_mean_value,
    philox,
)

T = TruncatedSeries
PASS, FAIL, INCONCLUSIVE = Verdict.PASS, Verdict.FAIL, Verdict.INCONCLUSIVE


def consistent(res):
    # verdict <-> residual contract, and witnesses on failure
    if res.verdict is not INCONCLUSIVE:
        assert (res.verdict is PASS) == (res.residual >= -res.tolerance)
    if res.verdict is FAIL:
        assert res.witnesses
    return res


# -- Gutzmer-Parseval / Cauchy ----------------------------------------------------------------

def test_parseval_examples():
    r = consistent(verify_parseval(T.polynomial([1, 1]), r=1))
    assert r.verdict is PASS
    assert r.details["power_sum"] == 2
    assert r.details["m"] < 1e-2 and r.details["M"] == pytest.approx(2)
    mono = T.polynomial([0, 0, 0, cmath.exp(0.4j)])
    r = consistent(verify_parseval(mono, r=0.7))
    assert r.verdict is PASS and abs(r.residual) < 1e-12
    L = LaurentSeries.from_terms({1: 1, -1: 1})
    r = consistent(verify_parseval(L, r=1))
    assert r.verdict is PASS and r.details["M"] == pytest.approx(2)


def test_parseval_domain():
    with pytest.raises(DomainError):
        verify_parseval(T.geometric(8), r=1.0)
    with pytest.raises(DomainError):
        verify_parseval(LaurentSeries.from_terms({-1: 1}, (1.0, 2.0)), r=0.5)


def test_parseval_detects_false_coefficients():
    # coefficients claimed for f = 1 + z but the oracle is 1 + 3z
    r = consistent(verify_parseval([1, 1], f=lambda z: 1 + 3 * z, r=1))
    assert r.verdict is PASS  # S = 2 <= M^2 = 16; only the upper bound applies
    r = consistent(verify_parseval([1, 5], f=lambda z: 1 + 3 * z, r=1))
    assert r.verdict is FAIL and r.witnesses


def test_cauchy_examples():
    r = consistent(verify_cauchy_bounds(T.geometric(40), r=0.5))
    assert r.verdict is PASS and r.details["M"] == pytest.approx(2, rel=1e-9)
    for n in (1, 4, 7):
        r = consistent(verify_cauchy_bounds(T.monomial(n), r=1.3))
        assert r.verdict is PASS and abs(r.residual) < 1e-12
    r = consistent(verify_cauchy_bounds(LaurentSeries.from_terms({-1: 1, 1: 1}), r=1))
    assert r.verdict is PASS


def test_cauchy_fail_has_index_witness():
    r = consistent(verify_cauchy_bounds({-2: 3.0}, f=lambda z: 0.1 / z ** 2, r=1))
    assert r.verdict is FAIL and r.witnesses[0].note == "j=-2"


def test_derivative_bound_examples():
    assert verify_derivative_bound(T.identity(3), 2.0, 2.0, 1.2).verdict is PASS
    g = T.geometric(40)
    M = float(oracles.circle_modulus([1] * 41, 0.99, 2048).max())
    assert consistent(verify_derivative_bound(g, M, 1.0, 0.5)).verdict is PASS
    r = consistent(verify_derivative_bound(T.exp(20), math.e, 1.0, 0.5))
    assert r.verdict is PASS
    assert r.details["max_derivative"] == pytest.approx(math.exp(0.5), rel=1e-9)
    with pytest.raises(DomainError):
        verify_derivative_bound(T.identity(2), 1, 1, 1)


def test_derivative_bound_false_hypothesis_is_inconclusive():
    r = verify_derivative_bound(T.exp(20), 1.0, 1.0, 0.5)
    assert r.verdict is INCONCLUSIVE and r.details["hypothesis_violated"]


# -- Liouville -----------------------------------------------------------------------------

def test_liouville_examples():
    r = consistent(detect_polynomial_degree(T.polynomial([0, 2, 0, 1]), 0, 1, 5, [1, 2, 4, 8], 12))
    assert r.verdict is PASS
    assert max(abs(a) for a in r.details["coefficients"][4:9]) < 1e-9
    r = consistent(detect_polynomial_degree(lambda z: 7 + 0 * z, 7, 0, 0, [1, 2, 4, 8], 6))
    assert r.verdict is PASS and r.details["estimated_degree"] == 0
    r = consistent(detect_polynomial_degree(cmath.exp, 0, 1, 3, [1, 2, 4, 8], 16))
    assert r.verdict is FAIL
    w = r.witnesses[0]
    assert w.point == 8 and int(w.note.split("=")[1]) > 3


def test_liouville_errors():
    with pytest.raises(SeriesError):
        detect_polynomial_degree(cmath.exp, 0, 1, 3, [], 8)
    with pytest.raises(SeriesError):
        detect_polynomial_degree(cmath.exp, 0, 1, 3, [1], 3)


@pytest.mark.parametrize("seed", range(25))
def test_liouville_recovers_degree(seed):
    rng = np.random.default_rng(seed)
    c = oracles.random_poly(rng, 12, min_top=0.1)
    deg = len(c) - 1
    r = detect_polynomial_degree(T(tuple(c)), 0, float(np.abs(c).sum()), deg, [1, 2, 4], deg + 4)
    assert r.verdict is PASS
    assert r.details["estimated_degree"] == deg
    assert max(abs(a) for a in r.details["coefficients"][deg + 1:]) < 1e-8


# -- Schwarz / Clunie-Jack ---------------------------------------------------------------------

def test_schwarz_examples():
    r = consistent(verify_schwarz(T.polynomial([0, 0, 1])))
    assert r.verdict is PASS
    assert r.details["classification"] == [{"case": "rotation-monomial", "omega": 1, "n": 2}]
    r = consistent(verify_schwarz(T.polynomial([0, 0.5, 0.5])))
    assert r.verdict is PASS and r.details["energy"] == 0.5 and r.residual > 0
    r = consistent(verify_schwarz(T.polynomial([0, 0.9])))
    assert r.verdict is PASS and r.details["classification"] == []


def test_schwarz_rotation_case():
    r = verify_schwarz(T.polynomial([0, 1j]))
    cases = {c["case"] for c in r.details["classification"]}
    assert cases == {"rotation", "rotation-monomial"}


def test_schwarz_preconditions():
    with pytest.raises(PreconditionError):
        verify_schwarz(T.polynomial([0.5, 0.1]))
    r = verify_schwarz(T.polynomial([0, 2]))
    assert r.verdict is INCONCLUSIVE


def test_clunie_jack_examples():
    r = consistent(clunie_jack(T.polynomial([0, 0, 0, 1]), 1))
    assert r.verdict is PASS and r.details["q"] == 3
    for n in (1, 2, 5):
        alpha = cmath.exp(0.37j)
        r = clunie_jack(T.monomial(n), alpha)
        assert r.verdict is PASS and abs(r.details["q"] - n) < 1e-12
    r = consistent(clunie_jack(T.polynomial([0.5, 0.5]), 1))
    assert r.verdict is PASS and r.details["q"] == 0.5
    assert not r.details["f_vanishes_at_0"]


def test_clunie_jack_non_maximum_and_errors():
    r = clunie_jack(T.polynomial([0.5, 0.5]), -1 + 0j + 1e-7j)
    assert r.verdict in (INCONCLUSIVE, FAIL)
    with pytest.raises(PreconditionError):
        clunie_jack(T.identity(2), 0.5)
    with pytest.raises(DegenerateError):
        clunie_jack(T.polynomial([1, 1]), -1)


def test_clunie_jack_plain_oracle_uses_differences():
    r = clunie_jack(cmath.exp, 1)
    assert r.details["derivative_source"] == "central-difference"
    assert r.verdict is PASS and abs(r.details["q"] - 1) < 1e-6


# -- landscape ----------------------------------------------------------------------------------

def test_classify_examples():
    r = consistent(classify_critical_point(T.polynomial([1, 0, 1]), 0))
    assert r.verdict is PASS and r.details["classification"] == "saddle"
    diffs = [d for _, d in r.details["directional"]]
    assert max(diffs) > 0 and min(diffs) < 0
    assert classify_critical_point(T.polynomial([0, 0, 1]), 0).details["classification"] == "zero"
    r = classify_critical_point(T.polynomial([5, 1]), 0)
    assert r.verdict is PASS and r.details["classification"] == "regular"


def test_classify_outside_hint():
    with pytest.raises(DomainError):
        classify_critical_point(T.geometric(6), 1.5)


def test_classify_needs_extra_directions():
    # |1 + i z^2| is flat to second order along the axes
    r = classify_critical_point(T.polynomial([1, 0, 1j, 0.1]), 0)
    assert r.details["classification"] == "saddle" and r.verdict is PASS
    assert len(r.details["directional"]) in (4, 8)


def test_anti_calculus_examples():
    r = consistent(verify_anti_calculus(T.exp(20), 1.0))
    assert r.verdict is PASS and abs(r.details["argmax"] - 1) < 1e-12
    r = consistent(verify_anti_calculus(T.identity(3), 1.0))
    assert r.verdict is PASS and r.details["min_branch"] == "zero" and r.details["argmin"] == 0
    r = consistent(verify_anti_calculus(T.polynomial([1, 0, 1]), 1.0))
    assert r.verdict is PASS and r.details["min_branch"] == "zero"
    assert min(abs(r.details["argmin"] - 1j), abs(r.details["argmin"] + 1j)) < 1e-12


def test_anti_calculus_constant_rejected():
    with pytest.raises(PreconditionError):
        verify_anti_calculus(T.polynomial([2, 0]), 1.0)


def test_boundary_max_examples():
    for f, R, top in ((T.polynomial([0, 0, 1]), 1, 1), (T.polynomial([1, 1]), 2, 3),
                      (T.exp(20), 1, math.e)):
        r = consistent(verify_boundary_max(f, R))
        assert r.verdict is PASS and r.details["boundary_max"] == pytest.approx(top)
    with pytest.raises(PreconditionError):
        verify_boundary_max(lambda z: 3 + 0 * z, 1)


def test_boundary_max_catches_non_analytic_bump():
    r = consistent(verify_boundary_max(lambda z: np.exp(-np.abs(z) ** 2), 1))
    assert r.verdict is FAIL


def test_open_image_examples():
    r = consistent(verify_open_image(T.polynomial([0, 0, 1]), 0.5))
    assert r.verdict is PASS and r.details["delta"] == pytest.approx(0.25)
    r = consistent(verify_open_image(T.polynomial([5, 1]), 1))
    assert r.verdict is PASS and r.details["delta"] == pytest.approx(1)
    assert consistent(verify_open_image(T.polynomial([0, 1, 0, 1]), 0.3)).verdict is PASS


def test_open_image_degenerate_delta():
    r = verify_open_image(T.polynomial([0, 0.5, 0.5]), 1)
    assert r.verdict is INCONCLUSIVE


def test_open_image_seeded():
    a = verify_open_image(T.polynomial([0, 1, 0, 1]), 0.3, seed=7)
    b = verify_open_image(T.polynomial([0, 1, 0, 1]), 0.3, seed=7)
    assert a == b
    assert philox(3).random() == philox(3).random() != philox(3, 1).random()


# -- Laurent / double series -------------------------------------------------------------------

def test_laurent_uniqueness_examples():
    assert verify_laurent_uniqueness(LaurentSeries.from_terms({0: 0}), [1, 2]).verdict is PASS
    cancel = LaurentSeries.from_terms([(1, 1), (1, -1)])
    assert verify_laurent_uniqueness(cancel, [0.5, 1]).verdict is PASS
    r = consistent(verify_laurent_uniqueness(LaurentSeries.from_terms({-1: 1e-3}), [1],
                                             claimed_sup=1e-9))
    assert r.verdict is FAIL and r.witnesses[0].note == "j=-1"
    with pytest.raises(DomainError):
        verify_laurent_uniqueness(LaurentSeries.from_terms({1: 1}, (1, 2)), [3])


def test_double_series_examples():
    fam = SeriesFamily(tuple(T.monomial(m, 12, 1 / math.factorial(m)) for m in range(13)))
    r = consistent(verify_double_series(fam, 0.5, 0))
    assert r.verdict is PASS
    single = SeriesFamily((T.polynomial([1, 2, 3, 4]),))
    for k in range(4):
        assert verify_double_series(single, 1.0, k).residual == 0
    fam = SeriesFamily(tuple(T.monomial(m, 20, 0.5 ** m) for m in range(21)))
    r = consistent(verify_double_series(fam, 0.9, 1))
    assert r.verdict is PASS
    with pytest.raises(SeriesError):
        verify_double_series(SeriesFamily(()), 0.5)


# -- averaging checks ---------------------------------------------------------------------------

def test_averaging_checks():
    r = check_mean_value(T.polynomial([1, 0, 1]), 0, 1, 2)
    assert r.verdict is PASS and r.details["residual_abs"] < 1e-14
    assert check_discrete_cauchy(T.polynomial([1, 2, 3, 4]), 0.3, 0.7, 5).verdict is PASS
    assert check_extraction(T.exp(32), 0.5, 8).verdict is PASS
    assert check_local_representation(T.polynomial([1, 0, 4, 3])).verdict is PASS
    assert check_injectivity(T.polynomial([0, 1, 1])).verdict is PASS


def test_report_summary_and_exit_code():
    rep = Report("x", 0, {})
    assert rep.summary() == {"pass": 0, "fail": 0, "inconclusive": 0}
    rep.results.append(verify_schwarz(T.polynomial([0, 2])))
    assert rep.exit_code() == 0 and rep.exit_code(strict=True) == 1


# -- invariants ----------------------------------------------------------------------------------

def _fuzz(n, max_degree, seed):
    rng = np.random.default_rng(seed)
    return [oracles.random_poly(rng, max_degree) for _ in range(n)], rng


def test_sandwich_fuzz():
    polys, rng = _fuzz(300, 16, 11)
    for c in polys:
        r = float(rng.uniform(0.1, 2.0))
        res = verify_parseval(T(tuple(c)), r=r, samples=1024)
        assert res.verdict is PASS, (c, r, res)
        S, m, M = res.details["power_sum"], res.details["m"], res.details["M"]
        g = res.details["grid_guard"]
        assert max(0.0, m - g) ** 2 <= S * (1 + 1e-12) and S <= M ** 2 * (1 + 1e-6)


@pytest.mark.parametrize("lam", [2, 1j, -3])
def test_scaling_covariance(lam):
    polys, rng = _fuzz(40, 10, 5)
    for c in polys:
        f = T(tuple(c))
        g = T(tuple(lam * np.asarray(c)))
        a, b = verify_parseval(f, r=0.8), verify_parseval(g, r=0.8)
        assert a.verdict == b.verdict
        assert b.details["power_sum"] == pytest.approx(abs(lam) ** 2 * a.details["power_sum"],
                                                       rel=1e-12, abs=1e-300)
        assert b.details["M"] == pytest.approx(abs(lam) * a.details["M"], rel=1e-12)


def _rotate(f: TruncatedSeries, theta: float) -> TruncatedSeries:
    return T(tuple(a * cmath.exp(1j * n * theta) for n, a in enumerate(f.coeffs)), f.center,
             f.radius_hint)


@pytest.mark.parametrize("theta", [math.pi / 7, 1.0])
def test_rotation_invariance(theta):
    polys, rng = _fuzz(12, 8, 3)
    rot = cmath.exp(1j * theta)
    for c in polys:
        f = T(tuple(c))
        if f.degree() == 0:
            continue
        g = _rotate(f, theta)
        pairs = [
            (verify_parseval(f, r=0.7), verify_parseval(g, r=0.7)),
            (verify_cauchy_bounds(f, r=0.7), verify_cauchy_bounds(g, r=0.7)),
            (verify_boundary_max(f, 1.0), verify_boundary_max(g, 1.0)),
            (verify_anti_calculus(f, 1.0), verify_anti_calculus(g, 1.0)),
            (verify_open_image(f, 0.5), verify_open_image(g, 0.5)),
            (classify_critical_point(f, 0.2), classify_critical_point(g, 0.2 / rot)),
        ]
        M = float(oracles.circle_modulus(c, 1.0, 4096).max()) * 1.01
        pairs.append((verify_derivative_bound(f, M, 1.0, 0.5),
                      verify_derivative_bound(g, M, 1.0, 0.5)))
        B = float(np.abs(c).sum())
        deg = f.degree()
        pairs.append((detect_polynomial_degree(f, 0, B, deg, [1, 2], deg + 3),
                      detect_polynomial_degree(g, 0, B, deg, [1, 2], deg + 3)))
        s = T((0j,) + f.coeffs[1:]).truncate(f.order)
        sup = float(oracles.circle_modulus(s.coeffs, 1.0, 4096).max())
        if sup > 0:
            s = T(tuple(a / (1.001 * sup) for a in s.coeffs))
            pairs.append((verify_schwarz(s, 2000), verify_schwarz(_rotate(s, theta), 2000)))
            alpha = cmath.exp(1j * 0.3)
            pairs.append((clunie_jack(s, alpha), clunie_jack(_rotate(s, theta), alpha / rot)))
        for a, b in pairs:
            assert a.verdict == b.verdict, (a.name, c)
