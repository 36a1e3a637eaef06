# test/test_cartesian.py
import math

import pytest

from catalog.cartesian import cartesian_action
from cohomology.degrees import degree_profile
from util.errors import FragmentError

LAMBDA_SQ = (7 + 3 * math.sqrt(5)) / 2


def test_cat_map_times_elliptic_curve(catalog):
    H = catalog.get("cat-x-elliptic").action
    assert H.dim == 3
    assert H.hodge_number(1, 1) == 9
    assert H.hodge_number(3, 3) == 1
    profile = degree_profile(H)
    assert profile.degrees == pytest.approx((1.0, LAMBDA_SQ, LAMBDA_SQ, 1.0), rel=1e-12)
    assert (profile.p, profile.p_prime) == (1, 2)


def test_degrees_multiply_along_the_antidiagonal(catalog):
    Y = catalog.get("toy-diag21").action
    H = cartesian_action(Y, Y)
    assert H.label == "toy-diag21xtoy-diag21"
    assert H.dim == 4
    assert [H.hodge_number(q, q) for q in range(5)] == [1, 6, 11, 6, 1]
    profile = degree_profile(H)
    assert profile.degrees == pytest.approx((1.0, 2.0, 4.0, 2.0, 1.0))
    assert profile.p == 2


def test_off_diagonal_blocks_are_conjugate(catalog):
    H = catalog.get("cat-x-elliptic").action
    for r in range(4):
        for s in range(r):
            if (r, s) in H.blocks:
                assert (s, r) in H.blocks


def test_fragments_do_not_multiply(catalog):
    frag = catalog.get("e10-coxeter").action
    with pytest.raises(FragmentError):
        cartesian_action(frag, catalog.get("toy-43").action)
