# cohomology/kunneth.py

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from sympy.polys.matrices import DomainMatrix

from cohomology.degrees import DegreeProfile, degree_profile
from cohomology.hodge import Bidegree, HodgeAction, kron
from cohomology.spectrum import Numerics, certified_spectrum, spectral_radius
from util.errors import HypothesisError, SchemaError

LOG = logging.getLogger("kahlermix.kunneth")


@dataclass(frozen=True)
class FactorSpectrum:
    radius: float
    error: float
    second: float  # largest modulus after removing one copy of the radius


@dataclass(frozen=True)
class KunnethBlock:
    """H^{a,b}(X) (f^-1)* block tensored with H^{c,d}(X) f* block, kept factored."""

    left: Bidegree
    right: Bidegree
    left_matrix: DomainMatrix
    right_matrix: DomainMatrix
    radius: float
    radius_error: float
    bound: float
    second: float

    @property
    def size(self) -> int:
        return self.left_matrix.shape[0] * self.right_matrix.shape[0]

    def dense(self) -> DomainMatrix:
        """The materialised tensor block; only for small checks."""
        return kron(self.left_matrix, self.right_matrix)

    def to_json(self) -> dict:
        return {
            "left": list(self.left),
            "right": list(self.right),
            "size": self.size,
            "radius": self.radius,
            "radius_error": self.radius_error,
            "bound": self.bound,
        }


@dataclass(frozen=True)
class KunnethAction:
    """Action of F = (f^-1, f) on H^{k,k}(X x X) as a list of tensor blocks."""

    dim: int
    blocks: Tuple[KunnethBlock, ...]
    complete: bool
    expected_dominant: float  # d_p(f^-1) * d_p(f)
    expected_error: float

    @property
    def dominant(self) -> KunnethBlock:
        return max(self.blocks, key=lambda b: b.radius)

    @property
    def dominant_radius(self) -> float:
        return self.dominant.radius

    def second_modulus(self) -> float:
        """Largest eigenvalue modulus of F* other than one copy of the dominant one."""
        top = self.dominant
        others = [b.radius for b in self.blocks if b is not top]
        return max([top.second, *others])

    def dominant_matches(self, rel: float = 1e-6) -> bool:
        slack = rel * self.expected_dominant + self.dominant.radius_error + self.expected_error
        return abs(self.dominant_radius - self.expected_dominant) <= slack

    def bound_violations(self, tolerance: float = 1e-6) -> List[KunnethBlock]:
        return [b for b in self.blocks if b.radius > b.bound + tolerance]

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "complete": self.complete,
            "blocks": [b.to_json() for b in self.blocks],
            "dominant_radius": self.dominant_radius,
            "expected_dominant": self.expected_dominant,
            "second_modulus": self.second_modulus(),
        }


def _factor_spectrum(M: DomainMatrix, numerics: Numerics) -> FactorSpectrum:
    rho, err = spectral_radius(M, **numerics.spectrum_kwargs())
    moduli = sorted(certified_spectrum(M, **numerics.spectrum_kwargs()).moduli(), reverse=True)
    return FactorSpectrum(rho, err, moduli[1] if len(moduli) > 1 else 0.0)


def _pairs(
    H_finv: HodgeAction, H_f: HodgeAction, complete: bool, peak: Tuple[int, int]
) -> List[Tuple[Bidegree, Bidegree]]:
    """
    Summands (a,b) (x) (k-a,k-b) of H^{k,k}(X x X). The default keeps those
    with a+b = k plus the peak summands (k-q,k-q) (x) (q,q) for p <= q <= p'.
    """
    k = H_f.dim
    if complete:
        return [
            ((a, b), (k - a, k - b))
            for (a, b) in H_finv.bidegrees()
            if (k - a, k - b) in H_f.blocks
        ]
    pairs = []
    for r in range(k + 1):
        s = k - r
        if (s, r) in H_finv.blocks and (r, s) in H_f.blocks:
            pairs.append(((s, r), (r, s)))
    for q in range(peak[0], peak[1] + 1):
        pair = ((k - q, k - q), (q, q))
        if pair not in pairs and pair[0] in H_finv.blocks and pair[1] in H_f.blocks:
            pairs.append(pair)
    return pairs


def kunneth_action(
    H_finv: HodgeAction,
    H_f: HodgeAction,
    numerics: Numerics = Numerics(),
    complete: bool = False,
) -> KunnethAction:
    """
    Tensor blocks of F* on H^{k,k}(X x X) with per-block spectral radii.

    H_finv is the action of (f^-1)*. Radii of X (x) Y are products of the
    factor radii, so no tensor matrix is ever formed.
    """
    if H_finv.dim != H_f.dim:
        raise SchemaError(
            f"dimension mismatch: {H_finv.dim} vs {H_f.dim}"
        )
    H_finv.require_full("kunneth")
    H_f.require_full("kunneth")
    prof_finv = degree_profile(H_finv, numerics)
    prof_f = degree_profile(H_f, numerics)
    pairs = _pairs(H_finv, H_f, complete, (prof_f.p, prof_f.p_prime))
    if not pairs:
        raise HypothesisError(f"{H_f.label or 'action'}: no Kunneth summand in H^{{k,k}}(X x X)")

    needed: Dict[Tuple[str, Bidegree], DomainMatrix] = {}
    for left, right in pairs:
        needed[("finv", left)] = H_finv.blocks[left]
        needed[("f", right)] = H_f.blocks[right]
    keys = sorted(needed)
    with ThreadPoolExecutor(max_workers=max(1, numerics.max_workers)) as pool:
        spectra = list(pool.map(lambda key: _factor_spectrum(needed[key], numerics), keys))
    factor = dict(zip(keys, spectra))

    blocks = []
    for left, right in pairs:
        x, y = factor[("finv", left)], factor[("f", right)]
        blocks.append(
            KunnethBlock(
                left=left,
                right=right,
                left_matrix=H_finv.blocks[left],
                right_matrix=H_f.blocks[right],
                radius=x.radius * y.radius,
                radius_error=x.radius * y.error + y.radius * x.error + x.error * y.error,
                bound=_sqrt_bound(prof_finv, left) * _sqrt_bound(prof_f, right),
                second=max(x.radius * y.second, x.second * y.radius),
            )
        )
        LOG.debug("Block %s (x) %s: radius %.12g", left, right, blocks[-1].radius)

    expected = prof_finv.d_p * prof_f.d_p
    expected_error = (
        prof_finv.d_p * prof_f.radii[prof_f.p]
        + prof_f.d_p * prof_finv.radii[prof_finv.p]
        + prof_f.radii[prof_f.p] * prof_finv.radii[prof_finv.p]
    )
    action = KunnethAction(
        dim=H_f.dim,
        blocks=tuple(blocks),
        complete=complete,
        expected_dominant=expected,
        expected_error=expected_error,
    )
    LOG.info(
        "Kunneth action of %s: %d blocks, dominant radius %.12g (expected %.12g)",
        H_f.label,
        len(blocks),
        action.dominant_radius,
        expected,
    )
    return action


def _sqrt_bound(profile: DegreeProfile, bidegree: Bidegree) -> float:
    r, s = bidegree
    return math.sqrt(profile.degrees[r] * profile.degrees[s])


def kunneth_second_modulus(action: KunnethAction) -> float:
    return action.second_modulus()


def kunneth_bound_check(
    action: KunnethAction, tolerance: float = 1e-6
) -> Optional[List[dict]]:
    """Blocks whose radius exceeds the product of the sqrt(d_r d_s) bounds."""
    bad = action.bound_violations(tolerance)
    return [b.to_json() for b in bad] or None
