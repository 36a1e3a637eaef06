# test/test_bounds.py
import math

import pytest

from cohomology.degrees import gap_certificate
from mixing.bounds import DECAYED, TheoremBound, fit_and_check, theorem_bound
from mixing.correlation import EXACT, CorrelationEntry, CorrelationSeries, correlation_exact
from mixing.observables import cosine, make_holder_function
from util.errors import HypothesisError, SchemaError

LAMBDA_SQ = (7 + 3 * math.sqrt(5)) / 2


@pytest.fixture(scope="module")
def cat_cert(cat_map):
    return gap_certificate(cat_map.hodge)


def series(values, errors=None):
    errors = errors or [0.0] * len(values)
    return CorrelationSeries(
        tuple(CorrelationEntry(n, v, e, EXACT) for n, (v, e) in enumerate(zip(values, errors)))
    )


def bound(base=2.0, scale=1.0):
    return TheoremBound(base, scale, delta=1.5, beta=2.0, beta_prime=2.0, d_p=4.0)


def test_theorem_base(cat_cert):
    b = theorem_bound(cat_cert, 2.0, 2.0, 2.0, 1.0, 1.0)
    assert b.base == pytest.approx(math.sqrt(LAMBDA_SQ / 2))
    assert b.base == pytest.approx(1.8512, abs=1e-4)
    assert b.exponent == 0.5
    assert b.at(0, 3.0) == 3.0


def test_scale_is_product_of_norms(cat_cert):
    b = theorem_bound(cat_cert, 2.0, 1.0, 2.0, 3.0, 5.0)
    assert b.scale == 15.0
    assert b.base == pytest.approx((LAMBDA_SQ / 2) ** 0.25)


def test_delta_outside_interval(cat_cert):
    with pytest.raises(HypothesisError):
        theorem_bound(cat_cert, 7.0, 2.0, 2.0, 1.0, 1.0)
    with pytest.raises(HypothesisError):
        theorem_bound(cat_cert, 1.0, 2.0, 2.0, 1.0, 1.0)


def test_missing_delta_and_bad_regularity(cat_cert):
    with pytest.raises(SchemaError):
        theorem_bound(cat_cert, None, 2.0, 2.0, 1.0, 1.0)
    with pytest.raises(SchemaError):
        theorem_bound(cat_cert, 2.0, 2.5, 2.0, 1.0, 1.0)
    with pytest.raises(SchemaError):
        theorem_bound(cat_cert, 2.0, 2.0, -0.1, 1.0, 1.0)


def test_refined_needs_refined_interval(cat_cert):
    assert cat_cert.refined_interval is None
    with pytest.raises(HypothesisError):
        theorem_bound(cat_cert, 2.0, 2.0, 2.0, 1.0, 1.0, refined=True)


def test_geometric_decay_is_fitted():
    report = fit_and_check(series([0.5 * 2.0**-n for n in range(10)]), bound())
    assert report.fitted_A == pytest.approx(0.5)
    assert report.empirical_rate == pytest.approx(-math.log(2))
    assert report.theorem_rate == pytest.approx(-math.log(2))
    assert report.fitted_points == 10
    assert report.holds
    assert report.note == ""
    assert report.vanishes_from is None


def test_error_bars_enter_the_constant():
    report = fit_and_check(series([1.0, 0.5], [0.25, 0.25]), bound())
    assert report.fitted_A == pytest.approx(1.5)


def test_immediate_decorrelation(cat_map):
    f = cosine((1, 0, 0, 0))
    exact = correlation_exact(cat_map, f, f, 10)
    report = fit_and_check(exact, bound(scale=4.0))
    assert report.note == DECAYED
    assert report.empirical_rate == -math.inf
    assert report.vanishes_from == 1
    assert report.fitted_A == pytest.approx(0.125)
    assert report.holds
    assert report.to_json()["empirical_rate"] == "-inf"


def test_parity_split():
    values = [4.0**-n if n % 2 == 0 else 0.0 for n in range(12)]
    report = fit_and_check(series(values), bound(base=4.0))
    assert report.fitted_A_odd == 0.0
    assert report.fitted_A_even == pytest.approx(1.0)
    assert report.empirical_rate_odd == -math.inf
    assert report.empirical_rate_even == pytest.approx(-math.log(4))


def test_zero_scale_cannot_hold():
    report = fit_and_check(series([1.0, 0.5]), bound(scale=0.0))
    assert report.fitted_A == math.inf
    assert not report.holds


def test_floor_drops_tiny_values():
    values = [1.0, 0.1, 1e-20, 1e-30]
    report = fit_and_check(series(values), bound(), floor=1e-14)
    assert report.fitted_points == 2
    assert report.empirical_rate == pytest.approx(math.log(0.1))


def test_empty_series():
    with pytest.raises(SchemaError):
        fit_and_check(series([]), bound())


def test_power_law_pair_within_fitted_bound(cat_map, cat_cert):
    phi = make_holder_function(2.0, 3, seed=2024, name="phi")
    psi = make_holder_function(2.0, 3, seed=2025, name="psi")
    b = theorem_bound(cat_cert, 2.0, 2.0, 2.0, phi.holder_bound(2.0), psi.holder_bound(2.0))
    exact = correlation_exact(cat_map, phi, psi, 30)
    report = fit_and_check(exact, b)
    assert math.isfinite(report.fitted_A)
    assert math.isfinite(report.fitted_A_even)
    assert math.isfinite(report.fitted_A_odd)
    assert report.holds
    for e in exact.entries:
        assert abs(e.value) + e.abs_error <= b.at(e.n, report.fitted_A) * (1 + 1e-12)
    for parity, A in ((0, report.fitted_A_even), (1, report.fitted_A_odd)):
        for e in exact.entries:
            if e.n % 2 == parity:
                assert abs(e.value) + e.abs_error <= b.at(e.n, A) * (1 + 1e-12)


def test_power_law_autocorrelation_decays_at_least_at_bound_rate(cat_map, cat_cert):
    # C_0 is the full power sum of phi
    phi = make_holder_function(2.0, 3, seed=2024, name="phi")
    b = theorem_bound(cat_cert, 2.0, 2.0, 2.0, phi.holder_bound(2.0), phi.holder_bound(2.0))
    exact = correlation_exact(cat_map, phi, phi, 30)
    report = fit_and_check(exact, b)
    assert exact.entries[0].value > 0
    assert report.fitted_points >= 2
    assert report.empirical_rate <= b.rate
    assert report.empirical_rate_even <= b.rate
    assert report.holds
    assert math.isfinite(report.fitted_A_even) and math.isfinite(report.fitted_A_odd)
