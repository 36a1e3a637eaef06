# catalog/cartesian.py

import logging
from typing import Dict, List, Tuple

from cohomology.hodge import (
    Bidegree,
    HodgeAction,
    block_diagonal,
    conj,
    kron,
    realify,
)

logger = logging.getLogger(__name__)

Summand = Tuple[int, int, int, int]


def _summands(H_Y: HodgeAction, H_Z: HodgeAction, r: int, s: int) -> List[Summand]:
    """(a, b, c, d) with a + c = r, b + d = s and both factor blocks present."""
    out = []
    for (a, b) in H_Y.bidegrees():
        c, d = r - a, s - b
        if (c, d) in H_Z.blocks:
            out.append((a, b, c, d))
    return out


def cartesian_action(H_Y: HodgeAction, H_Z: HodgeAction, label: str = "") -> HodgeAction:
    """
    Action of g x h on Y x Z:
    H^{r,s}(Y x Z) = sum over a+c=r, b+d=s of H^{a,b}(Y) (x) H^{c,d}(Z).
    """
    H_Y.require_full("cartesian product")
    H_Z.require_full("cartesian product")
    k = H_Y.dim + H_Z.dim
    blocks: Dict[Bidegree, object] = {}
    for r in range(k + 1):
        for s in range(r + 1):
            parts = _summands(H_Y, H_Z, r, s)
            if not parts:
                continue
            mats = [kron(H_Y.blocks[(a, b)], H_Z.blocks[(c, d)]) for a, b, c, d in parts]
            K = block_diagonal(mats)
            if r != s:
                blocks[(r, s)] = K
                blocks[(s, r)] = conj(K)
                continue
            blocks[(r, r)] = realify(K, _pairing(H_Y, H_Z, parts))
    label = label or f"{H_Y.label}x{H_Z.label}"
    logger.debug("Cartesian action %s on %d bidegrees", label, len(blocks))
    return HodgeAction(k, blocks, label)


def _pairing(H_Y: HodgeAction, H_Z: HodgeAction, parts: List[Summand]):
    """Conjugation on a (q,q) summand list: (a,b,c,d) at (alpha, beta) <-> (b,a,d,c) at (alpha, beta)."""
    offsets = {}
    pos = 0
    for part in parts:
        offsets[part] = pos
        a, b, c, d = part
        pos += H_Y.hodge_number(a, b) * H_Z.hodge_number(c, d)
    pairing = []
    for part in parts:
        a, b, c, d = part
        mz = H_Z.hodge_number(c, d)
        partner = offsets[(b, a, d, c)]
        for alpha in range(H_Y.hodge_number(a, b)):
            for beta in range(mz):
                pairing.append((partner + alpha * mz + beta, 1))
    return pairing
