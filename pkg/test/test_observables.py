# test/test_observables.py
import math

import numpy as np
import pytest

from mixing.observables import (
    TestFunction,
    constant,
    cosine,
    make_holder_function,
    trig_function,
)
from util.errors import SchemaError

E1 = (1, 0, 0, 0)


def test_cosine_coefficients():
    f = cosine(E1)
    assert f.coeffs == {E1: 0.5, (-1, 0, 0, 0): 0.5}
    assert f.norm_c0_bound == pytest.approx(1.0)
    assert f.norm_c2_bound == pytest.approx(1 + 4 * math.pi**2)


def test_holder_bound_interpolates():
    f = cosine((1, 1, 0, 0))
    assert f.holder_bound(0) == pytest.approx(f.norm_c0_bound)
    assert f.holder_bound(2) == pytest.approx(f.norm_c2_bound)
    assert f.norm_c0_bound < f.holder_bound(1) < f.norm_c2_bound
    with pytest.raises(ValueError):
        f.holder_bound(2.5)


def test_coefficients_must_be_conjugate_symmetric():
    with pytest.raises(SchemaError):
        TestFunction({E1: 1j, (-1, 0, 0, 0): 1j})
    with pytest.raises(SchemaError):
        TestFunction({E1: 1.0})


def test_zero_frequency_and_wrong_length_rejected():
    with pytest.raises(SchemaError):
        TestFunction({(0, 0, 0, 0): 1.0})
    with pytest.raises(SchemaError):
        TestFunction({(1, 0): 0.5, (-1, 0): 0.5})


def test_trig_function_merges_partners():
    f = trig_function([(E1, 0.25), ((-1, 0, 0, 0), 0.25)])
    assert f.coeffs[E1] == pytest.approx(0.5)


def test_evaluate_on_dyadic_points():
    f = cosine(E1)
    u = np.array(
        [[0, 0, 0, 0], [2**62, 0, 0, 0], [2**63, 5, 7, 9]],
        dtype=np.uint64,
    )
    values = f.evaluate_dyadic(u)
    assert values == pytest.approx([1.0, 0.0, -1.0], abs=1e-12)


def test_constant_function():
    f = constant(3.0)
    values = f.evaluate_dyadic(np.zeros((5, 4), dtype=np.uint64))
    assert values.tolist() == [3.0] * 5
    assert f.norm_c2_bound == 3.0


def test_holder_function_is_seeded():
    f = make_holder_function(1.0, 1, seed=3)
    g = make_holder_function(1.0, 1, seed=3)
    h = make_holder_function(1.0, 1, seed=4)
    assert f.coeffs == g.coeffs
    assert f.coeffs != h.coeffs
    assert len(f.coeffs) == 80
    assert f.holder_beta == 1.0


def test_holder_function_amplitudes():
    f = make_holder_function(2.0, 2, seed=0, dim=2)
    assert abs(f.coeffs[(1, 0)]) == pytest.approx(1.0)
    assert abs(f.coeffs[(2, -1)]) == pytest.approx(2.0**-4)


@pytest.mark.parametrize("beta, radius", [(0.0, 1), (2.5, 1), (1.0, 0)])
def test_holder_function_arguments(beta, radius):
    with pytest.raises(ValueError):
        make_holder_function(beta, radius, seed=0)
