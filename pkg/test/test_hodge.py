# test/test_hodge.py
import pytest

from cohomology.hodge import (
    HodgeAction,
    compound,
    conj,
    diagonal_action,
    format_rational,
    gaussian_matrix,
    identity,
    invert_action,
    kron,
    parse_rational,
    same_matrix,
)
from util.errors import FragmentError, HypothesisError, SchemaError


@pytest.mark.parametrize("text", ["3/4", "-2/7", "5", "0"])
def test_rational_text_round_trip(text):
    q = parse_rational(text)
    assert parse_rational(format_rational(q)) == q


def test_parse_rational_rejects_garbage():
    with pytest.raises(SchemaError):
        parse_rational("1/0")
    with pytest.raises(SchemaError):
        parse_rational("x")
    with pytest.raises(SchemaError):
        parse_rational(0.5)


def test_kron_and_compound():
    X = gaussian_matrix([[1, 2], [3, 4]])
    Y = gaussian_matrix([[0, 1], [1, 0]])
    K = kron(X, Y)
    assert K.shape == (4, 4)
    assert same_matrix(K, gaussian_matrix([
        [0, 1, 0, 2],
        [1, 0, 2, 0],
        [0, 3, 0, 4],
        [3, 0, 4, 0],
    ]))
    assert same_matrix(compound(X, 2), gaussian_matrix([[-2]]))
    assert same_matrix(compound(X, 0), identity(1))


def test_json_round_trip_is_exact(cat_map):
    H = cat_map.hodge
    back = HodgeAction.from_json(H.to_json())
    assert back.same_as(H)
    assert back.to_json() == H.to_json()


def test_json_accepts_missing_imaginary_part():
    data = {"dim": 1, "label": "t", "blocks": [
        {"r": 0, "s": 0, "re": [["1"]]},
        {"r": 1, "s": 0, "re": [["-1"]]},
        {"r": 0, "s": 1, "re": [["-1"]]},
        {"r": 1, "s": 1, "re": [["1"]]},
    ]}
    H = HodgeAction.from_json(data)
    assert H.hodge_number(1, 0) == 1


def test_corner_blocks_must_be_identity():
    with pytest.raises(SchemaError):
        diagonal_action(2, {0: [[2]]})


def test_hodge_symmetry_enforced():
    blocks = {
        (0, 0): identity(1),
        (1, 0): gaussian_matrix([[(0, 1)]]),
        (0, 1): gaussian_matrix([[(0, 1)]]),
        (1, 1): identity(1),
    }
    with pytest.raises(SchemaError):
        HodgeAction(1, blocks)
    blocks[(0, 1)] = conj(blocks[(1, 0)])
    assert HodgeAction(1, blocks).dim == 1


def test_qq_blocks_must_be_real():
    with pytest.raises(SchemaError):
        diagonal_action(2, {1: [[(1, 1)]]})


def test_singular_block_is_a_hypothesis_failure():
    with pytest.raises(HypothesisError):
        diagonal_action(2, {1: [[1, 0], [0, 0]]})


def test_invert_action_twice_is_identity_map():
    H = diagonal_action(3, {1: [[2, 0], [0, "1/4"]], 2: [[4, 1], [0, "1/2"]]}, "toy")
    inv = invert_action(H)
    assert inv.label == "toy^-1"
    assert invert_action(inv).same_as(H)
    assert same_matrix(inv.block(1, 1), gaussian_matrix([["1/2", 0], [0, 4]]))


def test_identity_inverse_is_identity():
    H = diagonal_action(2, {1: [[1, 0], [0, 1]]})
    assert invert_action(H).same_as(H)


def test_fragment_access():
    H = HodgeAction(2, {(1, 1): gaussian_matrix([[2, 1], [1, 1]])}, "frag", fragment=True)
    with pytest.raises(FragmentError):
        H.block(1, 0)
    with pytest.raises(FragmentError):
        H.require_full("kunneth")
