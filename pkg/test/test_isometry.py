# test/test_isometry.py
import pytest

from catalog.isometry import (
    E10_EDGES,
    gram_from_edges,
    isometry_action,
    isometry_power,
    lattice_isometry,
    reflection,
    signature,
)
from catalog.torus import int_matmul
from cohomology.hodge import gaussian_matrix, same_matrix
from util.errors import HypothesisError, SchemaError

HYPERBOLIC_PLANE = [[1, 0], [0, -1]]


def test_signature_of_e10():
    G = gram_from_edges(10, E10_EDGES)
    assert signature(G) == (1, 9, 0)


def test_signature_counts_null_directions():
    assert signature([[1, 0, 0], [0, -1, 0], [0, 0, 0]]) == (1, 1, 1)


def test_minus_identity(catalog):
    L = catalog.get("minus-identity").isometry
    assert L.rank == 2
    assert isometry_power(L, 2) == ((1, 0), (0, 1))


def test_e10_coxeter_preserves_form(catalog):
    L = catalog.get("e10-coxeter").isometry
    MT = tuple(zip(*L.M))
    assert int_matmul(int_matmul(MT, L.G), L.M) == L.G


def test_reflections_are_involutions():
    G = gram_from_edges(10, E10_EDGES)
    for i in (0, 3, 9):
        s = reflection(G, i)
        assert int_matmul(s, s) == tuple(tuple(int(r == c) for c in range(10)) for r in range(10))


def test_non_isometry_is_a_hypothesis_failure():
    with pytest.raises(HypothesisError):
        lattice_isometry([[2, 0], [0, 1]], HYPERBOLIC_PLANE)


@pytest.mark.parametrize(
    "G",
    [
        [[1, 0], [0, 1]],  # definite
        [[1, 1], [0, -1]],  # not symmetric
    ],
)
def test_bad_forms_are_schema_errors(G):
    with pytest.raises(SchemaError):
        lattice_isometry([[1, 0], [0, 1]], G)


def test_shape_mismatch():
    with pytest.raises(SchemaError):
        lattice_isometry([[1, 0], [0, 1]], [[1, 0, 0], [0, -1, 0], [0, 0, -1]])


def test_bad_edges():
    with pytest.raises(SchemaError):
        gram_from_edges(3, [(0, 3)])
    with pytest.raises(SchemaError):
        gram_from_edges(3, [(1, 1)])


def test_null_node_has_no_reflection():
    with pytest.raises(SchemaError):
        reflection([[0, 1], [1, -2]], 0)


def test_action_is_a_fragment(catalog):
    L = catalog.get("e10-coxeter").isometry
    H = isometry_action(L)
    assert H.fragment
    assert H.dim == 2
    assert same_matrix(H.block(1, 1), gaussian_matrix(L.M))
