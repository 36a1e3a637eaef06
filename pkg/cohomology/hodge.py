# cohomology/hodge.py

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from sympy.polys.domains import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from util.errors import FragmentError, HypothesisError, SchemaError

LOG = logging.getLogger("kahlermix.hodge")

Bidegree = Tuple[int, int]


# ------------------------------
# Exact scalars
# ------------------------------
def parse_rational(text) -> "QQ.dtype":
    """'p/q', 'p' or an int -> exact rational."""
    if isinstance(text, bool):
        raise SchemaError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return QQ(text)
    if not isinstance(text, str):
        raise SchemaError(f"rationals are 'p/q' strings, got {text!r}")
    num, _, den = text.strip().partition("/")
    try:
        p = int(num)
        q = int(den) if den else 1
    except ValueError as e:
        raise SchemaError(f"not a rational: {text!r}") from e
    if q == 0:
        raise SchemaError(f"zero denominator in {text!r}")
    return QQ(p, q)


def format_rational(q) -> str:
    return f"{int(q.numerator)}/{int(q.denominator)}"


def _rational(x):
    return parse_rational(x) if isinstance(x, str) else QQ.convert(x)


def gaussian(re, im=0):
    """Gaussian rational from two exact rationals (ints or 'p/q' strings)."""
    return QQ_I(_rational(re), _rational(im))


def conj_element(e):
    return e.new(e.x, -e.y)


# ------------------------------
# Exact matrices over Q(i)
# ------------------------------
def gaussian_matrix(rows: Sequence[Sequence]) -> DomainMatrix:
    """
    Build a QQ_I matrix. Entries may be ints, QQ elements, (re, im) pairs
    of those, or QQ_I elements.
    """
    out = []
    for row in rows:
        out_row = []
        for e in row:
            if isinstance(e, tuple):
                out_row.append(gaussian(*e))
            elif getattr(e, "parent", None) is not None and hasattr(e, "x"):
                out_row.append(e)
            else:
                out_row.append(gaussian(e))
        out.append(out_row)
    n_rows = len(out)
    n_cols = len(out[0]) if out else 0
    if any(len(r) != n_cols for r in out):
        raise SchemaError("ragged matrix rows")
    return DomainMatrix(out, (n_rows, n_cols), QQ_I)


def identity(n: int) -> DomainMatrix:
    return DomainMatrix.eye(n, QQ_I).to_dense()


def same_matrix(A: Optional[DomainMatrix], B: Optional[DomainMatrix]) -> bool:
    """Entrywise equality, independent of sparse/dense storage."""
    if A is None or B is None:
        return A is B
    return A.shape == B.shape and A.to_list() == B.to_list()


def conj(M: DomainMatrix) -> DomainMatrix:
    return M.applyfunc(conj_element)


def is_real(M: DomainMatrix) -> bool:
    return all(not e.y for e in M.to_list_flat())


def real_part(M: DomainMatrix) -> DomainMatrix:
    """The same matrix over QQ; only valid when is_real(M)."""
    rows = [[e.x for e in row] for row in M.to_list()]
    return DomainMatrix(rows, M.shape, QQ)


def kron(X: DomainMatrix, Y: DomainMatrix) -> DomainMatrix:
    xs, ys = X.to_list(), Y.to_list()
    (a, b), (c, d) = X.shape, Y.shape
    rows = [
        [xs[i][j] * ys[k][l] for j in range(b) for l in range(d)]
        for i in range(a)
        for k in range(c)
    ]
    return DomainMatrix(rows, (a * c, b * d), X.domain)


def block_diagonal(parts: Sequence[DomainMatrix]) -> DomainMatrix:
    n = sum(p.shape[0] for p in parts)
    rows = [[QQ_I.zero] * n for _ in range(n)]
    offset = 0
    for part in parts:
        for i, row in enumerate(part.to_list()):
            for j, e in enumerate(row):
                rows[offset + i][offset + j] = e
        offset += part.shape[0]
    return DomainMatrix(rows, (n, n), QQ_I)


def compound(M: DomainMatrix, r: int) -> DomainMatrix:
    """r-th compound matrix: minors indexed by sorted r-subsets (lexicographic)."""
    n = M.shape[0]
    subsets = list(itertools.combinations(range(n), r))
    if r == 0:
        return identity(1)
    rows = [[M.extract(list(I), list(J)).det() for J in subsets] for I in subsets]
    return DomainMatrix(rows, (len(subsets), len(subsets)), M.domain)


def realify(K: DomainMatrix, pairing: Sequence[Tuple[int, int]]) -> DomainMatrix:
    """
    Rewrite K in a real basis.

    pairing[i] = (j, sign) describes the conjugation on basis vectors:
    conj(e_i) = sign * e_j. K must commute with it. The result is real.
    """
    n = K.shape[0]
    columns: List[List] = []
    seen = set()
    for i, (j, sign) in enumerate(pairing):
        if i in seen:
            continue
        seen.update((i, j))
        if i == j:
            col = [QQ_I.zero] * n
            col[i] = QQ_I.one if sign == 1 else QQ_I(0, 1)
            columns.append(col)
            continue
        u = [QQ_I.zero] * n
        v = [QQ_I.zero] * n
        u[i], u[j] = QQ_I.one, QQ_I(sign)
        v[i], v[j] = QQ_I(0, 1), QQ_I(0, -sign)
        columns.extend([u, v])
    P = DomainMatrix([list(r) for r in zip(*columns)], (n, n), QQ_I)
    R = P.inv() * K * P
    if not is_real(R):
        raise SchemaError("conjugation pairing does not commute with the block")
    return R


# ------------------------------
# HodgeAction
# ------------------------------
def _is_rows(rows) -> bool:
    return isinstance(rows, list) and all(isinstance(row, list) for row in rows)


@dataclass(frozen=True, eq=False)
class HodgeAction:
    """
    Exact matrices of f* on every H^{r,s}(X, C), 0 <= r, s <= dim.

    Absent bidegrees mean H^{r,s} = 0. A fragment carries only the (1,1)
    block of a surface; d_0 = d_2 = 1 still hold for it.
    """

    dim: int
    blocks: Mapping[Bidegree, DomainMatrix]
    label: str = ""
    fragment: bool = False
    meta: Dict[str, str] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        self.validate()

    # ---- access ----
    def block(self, r: int, s: int) -> DomainMatrix:
        try:
            return self.blocks[(r, s)]
        except KeyError:
            raise FragmentError(
                f"{self.label or 'action'}: block H^{{{r},{s}}} is unavailable"
            ) from None

    def bidegrees(self) -> List[Bidegree]:
        return sorted(self.blocks)

    def hodge_number(self, r: int, s: int) -> int:
        m = self.blocks.get((r, s))
        return 0 if m is None else m.shape[0]

    def same_as(self, other: "HodgeAction") -> bool:
        if self.dim != other.dim or set(self.blocks) != set(other.blocks):
            return False
        return all(same_matrix(M, other.blocks[key]) for key, M in self.blocks.items())

    def require_full(self, operation: str):
        if self.fragment:
            raise FragmentError(
                f"{operation} needs the full Hodge action; "
                f"'{self.label}' only carries its H^{{1,1}} block"
            )

    # ---- invariants ----
    def validate(self):
        k = self.dim
        if k < 1:
            raise SchemaError("dim must be a positive integer")
        for (r, s), M in self.blocks.items():
            if not (0 <= r <= k and 0 <= s <= k):
                raise SchemaError(f"bidegree ({r},{s}) outside 0..{k}")
            if not M.is_square:
                raise SchemaError(f"block ({r},{s}) is not square")
            if M.domain != QQ_I:
                raise SchemaError(f"block ({r},{s}) must be over QQ_I")
        if self.fragment:
            if k != 2 or set(self.blocks) != {(1, 1)}:
                raise SchemaError("a fragment is the (1,1) block of a surface")
        else:
            one = identity(1)
            for q in (0, k):
                if not same_matrix(self.blocks.get((q, q)), one):
                    raise SchemaError(f"block ({q},{q}) must be the 1x1 identity")
            for q in range(k + 1):
                if (q, q) not in self.blocks:
                    raise SchemaError(f"block ({q},{q}) is missing")
        for (r, s), M in self.blocks.items():
            if r == s and not is_real(M):
                raise SchemaError(f"block ({r},{r}) must be real")
            if r != s:
                other = self.blocks.get((s, r))
                if not same_matrix(other, conj(M)):
                    raise SchemaError(
                        f"block ({s},{r}) must be the conjugate of block ({r},{s})"
                    )
            if M.shape[0] and M.det() == QQ_I.zero:
                raise HypothesisError(
                    f"block ({r},{s}) is singular: not an automorphism"
                )

    # ---- JSON ----
    def to_json(self) -> dict:
        blocks = []
        for (r, s) in self.bidegrees():
            M = self.blocks[(r, s)]
            entries = M.to_list()
            blocks.append(
                {
                    "r": r,
                    "s": s,
                    "re": [[format_rational(e.x) for e in row] for row in entries],
                    "im": [[format_rational(e.y) for e in row] for row in entries],
                }
            )
        data = {"dim": self.dim, "label": self.label, "blocks": blocks}
        if self.fragment:
            data["fragment"] = True
        return data

    @classmethod
    def from_json(cls, data: Mapping) -> "HodgeAction":
        try:
            dim = data["dim"]
            label = str(data.get("label", ""))
            raw_blocks = data["blocks"]
        except (KeyError, TypeError) as e:
            raise SchemaError(f"HodgeAction JSON missing field: {e}") from e
        if not isinstance(dim, int) or isinstance(dim, bool):
            raise SchemaError("'dim' must be an integer")
        if not isinstance(raw_blocks, list):
            raise SchemaError("'blocks' must be a list of block objects")
        blocks: Dict[Bidegree, DomainMatrix] = {}
        for b in raw_blocks:
            try:
                r, s, re_rows = int(b["r"]), int(b["s"]), b["re"]
            except (KeyError, TypeError, ValueError) as e:
                raise SchemaError(f"malformed block entry: {e}") from e
            if not _is_rows(re_rows):
                raise SchemaError(f"block ({r},{s}): 're' must be a list of rows")
            im_rows = b.get("im") or [["0"] * len(row) for row in re_rows]
            if not _is_rows(im_rows):
                raise SchemaError(f"block ({r},{s}): 'im' must be a list of rows")
            if len(im_rows) != len(re_rows) or any(
                len(a) != len(c) for a, c in zip(re_rows, im_rows)
            ):
                raise SchemaError(f"block ({r},{s}): re/im shapes differ")
            rows = [
                [(parse_rational(x), parse_rational(y)) for x, y in zip(ra, ia)]
                for ra, ia in zip(re_rows, im_rows)
            ]
            if (r, s) in blocks:
                raise SchemaError(f"duplicate block ({r},{s})")
            blocks[(r, s)] = gaussian_matrix(rows)
        return cls(dim, blocks, label, fragment=bool(data.get("fragment", False)))


def diagonal_action(dim: int, qq_blocks: Mapping[int, Sequence[Sequence]], label="") -> HodgeAction:
    """Action whose only non-zero groups are the H^{q,q}; unspecified q get [1]."""
    blocks = {(q, q): identity(1) for q in range(dim + 1)}
    for q, rows in qq_blocks.items():
        blocks[(q, q)] = gaussian_matrix(rows)
    return HodgeAction(dim, blocks, label)


def invert_action(H: HodgeAction) -> HodgeAction:
    """Blockwise exact inverse: the action of (f^{-1})*."""
    inverted = {}
    for key, M in H.blocks.items():
        try:
            inverted[key] = M.inv()
        except DMNonInvertibleMatrixError as e:
            raise HypothesisError(f"block {key} is singular: not an automorphism") from e
    label = f"{H.label}^-1" if H.label else ""
    LOG.debug("Inverted %d blocks of %s", len(inverted), H.label)
    return HodgeAction(H.dim, inverted, label, fragment=H.fragment)


def matrix_from_json(rows, name: str = "matrix") -> DomainMatrix:
    """Exact matrix from rows of 'p/q' strings, ints, or [re, im] pairs."""
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise SchemaError(f"{name}: expected a non-empty list of rows")
    parsed = []
    for row in rows:
        out = []
        for e in row:
            if isinstance(e, list):
                if len(e) != 2:
                    raise SchemaError(f"{name}: complex entries are [re, im] pairs")
                out.append((parse_rational(e[0]), parse_rational(e[1])))
            else:
                out.append(parse_rational(e))
        parsed.append(out)
    M = gaussian_matrix(parsed)
    return M

