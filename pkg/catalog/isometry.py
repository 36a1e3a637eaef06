# catalog/isometry.py

import logging
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from cohomology.hodge import HodgeAction, gaussian_matrix
from catalog.torus import IntMatrix, int_matmul
from util.errors import HypothesisError, SchemaError

logger = logging.getLogger(__name__)

# T_{2,3,7}: centre 0, arms {1}, {2,3}, {4..9}. Its Coxeter element has
# Lehmer's polynomial as characteristic polynomial.
E10_EDGES = ((0, 1), (0, 2), (2, 3), (0, 4), (4, 5), (5, 6), (6, 7), (7, 8), (8, 9))


@dataclass(frozen=True)
class LatticeIsometry:
    """M preserving the integral form G of signature (1, n): M^T G M = G."""

    M: IntMatrix
    G: IntMatrix
    label: str = ""

    @property
    def rank(self) -> int:
        return len(self.M)


def _int_matrix(rows, name: str) -> IntMatrix:
    if not isinstance(rows, (list, tuple)) or not rows:
        raise SchemaError(f"{name}: expected a non-empty list of rows")
    n = len(rows)
    out = []
    for row in rows:
        if not isinstance(row, (list, tuple)) or len(row) != n:
            raise SchemaError(f"{name} must be square")
        try:
            out.append(tuple(int(x) for x in row))
        except (TypeError, ValueError) as e:
            raise SchemaError(f"{name}: integer entries required ({e})") from e
    return tuple(out)


def _transpose(X: Sequence[Sequence[int]]) -> IntMatrix:
    return tuple(zip(*X))


def signature(G: Sequence[Sequence[int]]) -> Tuple[int, int, int]:
    """
    (positive, negative, zero) eigenvalue counts of a symmetric integer matrix.
    Its characteristic polynomial is real-rooted, so Descartes' rule is exact.
    """
    n = len(G)
    Q = DomainMatrix([[QQ(x) for x in row] for row in G], (n, n), QQ)
    coeffs = Q.charpoly()
    zero = 0
    while coeffs and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
        zero += 1

    def changes(cs):
        signs = [c > 0 for c in cs if c != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    degree = len(coeffs) - 1
    flipped = [c if (degree - i) % 2 == 0 else -c for i, c in enumerate(coeffs)]
    return changes(coeffs), changes(flipped), zero


def validate_isometry(L: LatticeIsometry):
    n = L.rank
    if len(L.G) != n:
        raise SchemaError(f"{L.label}: M is {n}x{n} but G is {len(L.G)}x{len(L.G)}")
    if _transpose(L.G) != L.G:
        raise SchemaError(f"{L.label}: G must be symmetric")
    pos, neg, zero = signature(L.G)
    if (pos, zero) != (1, 0):
        raise SchemaError(
            f"{L.label}: G has signature ({pos},{neg}) with {zero} null directions; "
            "expected (1, n)"
        )
    if int_matmul(int_matmul(_transpose(L.M), L.G), L.M) != L.G:
        raise HypothesisError(f"{L.label}: M^T G M != G, not an isometry")


def lattice_isometry(M, G, label: str = "") -> LatticeIsometry:
    L = LatticeIsometry(_int_matrix(M, "M"), _int_matrix(G, "G"), label)
    validate_isometry(L)
    return L


def isometry_action(L: LatticeIsometry) -> HodgeAction:
    """H^{1,1} fragment of a surface automorphism acting on its lattice."""
    validate_isometry(L)
    return HodgeAction(2, {(1, 1): gaussian_matrix(L.M)}, L.label, fragment=True)


def isometry_power(L: LatticeIsometry, n: int) -> IntMatrix:
    P: IntMatrix = tuple(tuple(int(i == j) for j in range(L.rank)) for i in range(L.rank))
    for _ in range(n):
        P = int_matmul(P, L.M)
    return P


def gram_from_edges(n: int, edges: Iterable[Sequence[int]], diagonal: int = -2) -> IntMatrix:
    """Gram matrix of a simply-laced diagram: `diagonal` on nodes, 1 on edges."""
    G = [[0] * n for _ in range(n)]
    for i in range(n):
        G[i][i] = diagonal
    for edge in edges:
        i, j = (int(x) for x in edge)
        if not (0 <= i < n and 0 <= j < n) or i == j:
            raise SchemaError(f"bad edge {edge!r} for {n} nodes")
        G[i][j] = G[j][i] = 1
    return tuple(tuple(r) for r in G)


def reflection(G: Sequence[Sequence[int]], i: int) -> IntMatrix:
    """s_i(x) = x - 2 (x, e_i) / (e_i, e_i) e_i in the basis of simple roots."""
    n = len(G)
    gii = G[i][i]
    if gii == 0:
        raise SchemaError(f"node {i} has (e_i, e_i) = 0; no reflection")
    rows: List[List[int]] = [[int(r == c) for c in range(n)] for r in range(n)]
    for j in range(n):
        num = 2 * G[i][j]
        if num % gii:
            raise SchemaError(f"reflection s_{i} is not integral")
        rows[i][j] -= num // gii
    return tuple(tuple(r) for r in rows)


def coxeter_isometry(G, order: Sequence[int] = (), label: str = "") -> LatticeIsometry:
    """Coxeter element s_{o_1} ... s_{o_n} of the simple reflections of G."""
    G = _int_matrix(G, "G")
    n = len(G)
    order = list(order) or list(range(n))
    if any(not 0 <= i < n for i in order):
        raise SchemaError(f"Coxeter order {order} refers to nodes outside 0..{n - 1}")
    M: IntMatrix = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    for i in order:
        M = int_matmul(M, reflection(G, i))
    logger.debug("Coxeter element of a rank %d lattice built from %d reflections", n, len(order))
    return lattice_isometry(M, G, label)


def e10_isometry(label: str = "e10-coxeter") -> LatticeIsometry:
    return coxeter_isometry(gram_from_edges(10, E10_EDGES), label=label)
