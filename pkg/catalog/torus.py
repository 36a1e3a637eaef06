# catalog/torus.py

"""
Complex tori C^n / Z[i]^n with a Gaussian-integer automorphism A.

Basis convention: holomorphic 1-forms (and Fourier frequencies) transform
by the transpose, so H^{1,0} carries A^T and H^{0,1} its conjugate. For
r > s the block on H^{r,s} = L^r(H^{1,0}) (x) L^s(H^{0,1}) is the Kronecker
product of compound matrices C_r(A^T) (x) C_s(conj A^T); the block on H^{s,r}
is its entrywise conjugate. H^{q,q} blocks are rewritten in a real basis.
"""

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from cohomology.hodge import (
    HodgeAction,
    compound,
    conj,
    identity,
    invert_action,
    kron,
    matrix_from_json,
    realify,
)
from cohomology.kunneth import KunnethAction, kunneth_action
from cohomology.spectrum import Numerics, certified_spectrum, is_unimodular
from util.errors import HypothesisError, SchemaError

logger = logging.getLogger(__name__)

IntMatrix = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True, eq=False)
class TorusAutomorphism:
    label: str
    A: DomainMatrix  # n x n over QQ_I with Gaussian-integer entries
    A_real: IntMatrix  # 2n x 2n on (Re z_1, Im z_1, ..., Re z_n, Im z_n)
    hodge: HodgeAction
    hyperbolic: bool

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def real_dim(self) -> int:
        return 2 * self.n

    @property
    def frequency_matrix(self) -> IntMatrix:
        """A_real^T: the action on Fourier frequencies."""
        return tuple(zip(*self.A_real))

    @property
    def inverse_real(self) -> IntMatrix:
        return integer_inverse(self.A_real)

    def determinant(self):
        return self.A.det()


# ---------------- Integer matrix helpers ----------------
def integer_inverse(M: Sequence[Sequence[int]]) -> IntMatrix:
    n = len(M)
    Q = DomainMatrix([[QQ(x) for x in row] for row in M], (n, n), QQ)
    inv = Q.inv().to_list()
    if any(int(e.denominator) != 1 for row in inv for e in row):
        raise HypothesisError("matrix is not unimodular over the integers")
    return tuple(tuple(int(e.numerator) for e in row) for row in inv)


def int_matmul(X: Sequence[Sequence[int]], Y: Sequence[Sequence[int]]) -> IntMatrix:
    return tuple(
        tuple(sum(a * b for a, b in zip(row, col)) for col in zip(*Y)) for row in X
    )


def realification(A: DomainMatrix) -> IntMatrix:
    n = A.shape[0]
    rows = [[0] * (2 * n) for _ in range(2 * n)]
    for i, row in enumerate(A.to_list()):
        for j, e in enumerate(row):
            a, b = int(e.x.numerator), int(e.y.numerator)
            rows[2 * i][2 * j], rows[2 * i][2 * j + 1] = a, -b
            rows[2 * i + 1][2 * j], rows[2 * i + 1][2 * j + 1] = b, a
    return tuple(tuple(r) for r in rows)


def _swap_pairing(m: int) -> List[Tuple[int, int]]:
    """Conjugation on L^q (x) conj L^q: e_I (x) e_J  <->  e_J (x) e_I."""
    return [(J * m + I, 1) for I in range(m) for J in range(m)]


def _torus_hodge(A: DomainMatrix, label: str) -> HodgeAction:
    n = A.shape[0]
    At = A.transpose()
    At_bar = conj(At)
    comp = [compound(At, r) for r in range(n + 1)]
    comp_bar = [compound(At_bar, r) for r in range(n + 1)]
    blocks = {}
    for r in range(n + 1):
        for s in range(r):
            K = kron(comp[r], comp_bar[s])
            blocks[(r, s)] = K
            blocks[(s, r)] = conj(K)
        K = kron(comp[r], comp_bar[r])
        blocks[(r, r)] = realify(K, _swap_pairing(comp[r].shape[0]))
    return HodgeAction(n, blocks, label)


# ---------------- Operations ----------------
def gaussian_integer_matrix(rows) -> DomainMatrix:
    """Parse rows of ints or [re, im] integer pairs."""
    A = matrix_from_json(rows, "A")
    for e in A.to_list_flat():
        if int(e.x.denominator) != 1 or int(e.y.denominator) != 1:
            raise SchemaError("torus matrix entries must be Gaussian integers")
    return A


def torus_from_matrix(A, label: str = "", numerics: Numerics = Numerics()) -> TorusAutomorphism:
    """Automorphism of C^n / Z[i]^n from a Gaussian-integer matrix with unit determinant."""
    if not isinstance(A, DomainMatrix):
        A = gaussian_integer_matrix(A)
    if not A.is_square or A.shape[0] == 0:
        raise SchemaError(f"torus matrix must be square and non-empty (shape {A.shape})")
    det = A.det()
    if det.x**2 + det.y**2 != QQ.one:
        raise HypothesisError(
            f"det(A) = {det} is not a Gaussian unit: not an automorphism"
        )
    hodge = _torus_hodge(A, label)
    top = certified_spectrum(A, **numerics.spectrum_kwargs()).top
    hyperbolic = not is_unimodular(top)
    logger.info("Torus %s: n=%d, det=%s, hyperbolic=%s", label, A.shape[0], det, hyperbolic)
    return TorusAutomorphism(label, A, realification(A), hodge, hyperbolic)


def torus_power(T: TorusAutomorphism, n: int, numerics: Numerics = Numerics()) -> TorusAutomorphism:
    """Torus automorphism of A^n (negative n uses the exact inverse)."""
    base = T.A if n >= 0 else T.A.inv()
    P = identity(T.n)
    for _ in range(abs(n)):
        P = P * base
    return torus_from_matrix(P, f"{T.label}^{n}", numerics)


def torus_inverse(T: TorusAutomorphism, numerics: Numerics = Numerics()) -> TorusAutomorphism:
    return torus_power(T, -1, numerics)


@dataclass(frozen=True, eq=False)
class ProductAutomorphism:
    """F(x, y) = (f^-1(x), f(y)) on X x X."""

    torus: TorusAutomorphism
    kunneth: KunnethAction
    real_map: IntMatrix  # A_real^-1 (+) A_real


def product_automorphism(
    T: TorusAutomorphism, numerics: Numerics = Numerics(), complete: bool = False
) -> ProductAutomorphism:
    if not T.hyperbolic:
        raise HypothesisError(f"{T.label or 'torus'} is not hyperbolic (d_1 = 1)")
    action = kunneth_action(invert_action(T.hodge), T.hodge, numerics, complete=complete)
    inv = T.inverse_real
    m = T.real_dim
    rows = [[0] * (2 * m) for _ in range(2 * m)]
    for i in range(m):
        for j in range(m):
            rows[i][j] = inv[i][j]
            rows[m + i][m + j] = T.A_real[i][j]
    return ProductAutomorphism(T, action, tuple(tuple(r) for r in rows))


def preserves_decomposition(P: ProductAutomorphism) -> bool:
    """Each Kunneth summand maps into itself: the real map is block diagonal."""
    m = P.torus.real_dim
    return all(
        P.real_map[i][j] == 0
        for i in range(2 * m)
        for j in range(2 * m)
        if (i < m) != (j < m)
    )
