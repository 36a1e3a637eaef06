# cohomology/degrees.py

import logging
import math
from dataclasses import asdict, dataclass
from typing import List, Optional, Tuple

from sympy.polys.matrices import DomainMatrix

from cohomology.hodge import HodgeAction, identity
from cohomology.refined import refined_delta_threshold
from cohomology.spectrum import (
    CertifiedRoot,
    Numerics,
    certified_spectrum,
    check_multiplicity_one,
    check_unique_dominant,
    moduli_equal,
    spectral_radius,
)
from util.errors import HypothesisError

LOG = logging.getLogger("kahlermix.degrees")


@dataclass(frozen=True)
class DegreeProfile:
    """Dynamical degrees d_0..d_k with certified radii and the data around the peak."""

    label: str
    degrees: Tuple[float, ...]
    radii: Tuple[float, ...]
    p: int
    p_prime: int
    is_unique_peak: bool
    second_modulus: float
    delta_minus_floor: float
    multiplicity_one: bool
    multiplicity_branch: str
    fragment: bool = False

    @property
    def dim(self) -> int:
        return len(self.degrees) - 1

    @property
    def d_p(self) -> float:
        return self.degrees[self.p]

    def log_concavity_defects(self, tolerance: float = 1e-9) -> List[int]:
        d = self.degrees
        return [
            q
            for q in range(1, self.dim)
            if d[q] ** 2 < d[q - 1] * d[q + 1] - tolerance
        ]

    def to_json(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class GapCertificate:
    label: str
    d_p: float
    p: int
    delta_admissible_interval: Optional[Tuple[float, float]]
    hypothesis_unique_max: bool
    hypothesis_multiplicity_one: bool
    delta_plus: float
    delta_minus: float
    split_delta_plus: float
    split_delta_minus: float
    refined_interval: Optional[Tuple[float, float]]

    @property
    def holds(self) -> bool:
        return self.delta_admissible_interval is not None

    def admits(self, delta: float, refined: bool = False) -> bool:
        interval = self.refined_interval if refined else self.delta_admissible_interval
        if interval is None:
            return False
        lo, hi = interval
        return lo < delta < hi

    def delta0(self, margin: float) -> float:
        """Rate constant just above the second modulus of the dominant block."""
        return self.delta_plus * (1 + margin)

    def to_json(self) -> dict:
        data = asdict(self)
        for key in ("delta_admissible_interval", "refined_interval"):
            if data[key] is not None:
                data[key] = list(data[key])
        return data


# ---------------- Helpers ----------------
def _qq_block(H: HodgeAction, q: int) -> DomainMatrix:
    if H.fragment and q in (0, H.dim):
        return identity(1)
    return H.block(q, q)


def _top_root(H: HodgeAction, q: int, numerics: Numerics) -> CertifiedRoot:
    return certified_spectrum(_qq_block(H, q), **numerics.spectrum_kwargs()).top


# ---------------- Operations ----------------
def degree_profile(H: HodgeAction, numerics: Numerics = Numerics()) -> DegreeProfile:
    k = H.dim
    degrees, radii = [], []
    for q in range(k + 1):
        rho, err = spectral_radius(_qq_block(H, q), **numerics.spectrum_kwargs())
        degrees.append(rho)
        radii.append(err)

    m = max(range(k + 1), key=lambda q: degrees[q])
    top = _top_root(H, m, numerics)
    plateau = [q for q in range(k + 1) if moduli_equal(top, _top_root(H, q, numerics))]
    p, p_prime = min(plateau), max(plateau)

    block = _qq_block(H, p)
    _, second = check_unique_dominant(block, **numerics.spectrum_kwargs())
    neighbours = [degrees[q] for q in (p - 1, p_prime + 1) if 0 <= q <= k]
    mult = check_multiplicity_one(
        block, **numerics.growth_kwargs(), **numerics.spectrum_kwargs()
    )

    profile = DegreeProfile(
        label=H.label,
        degrees=tuple(degrees),
        radii=tuple(radii),
        p=p,
        p_prime=p_prime,
        is_unique_peak=p == p_prime,
        second_modulus=second,
        delta_minus_floor=max(neighbours, default=0.0),
        multiplicity_one=mult.ok,
        multiplicity_branch=mult.branch,
        fragment=H.fragment,
    )
    LOG.info(
        "Degrees of %s: %s (p=%d, p'=%d)",
        H.label or "action",
        ", ".join(f"{d:.10g}" for d in degrees),
        p,
        p_prime,
    )
    defects = profile.log_concavity_defects(numerics.tolerance)
    if defects:
        LOG.warning("Log-concavity fails at q=%s for %s", defects, H.label)
    return profile


def gap_certificate(
    H: HodgeAction,
    numerics: Numerics = Numerics(),
    profile: Optional[DegreeProfile] = None,
) -> GapCertificate:
    profile = profile or degree_profile(H, numerics)
    if not profile.is_unique_peak:
        raise HypothesisError(
            f"no unique peak: d_{profile.p} = ... = d_{profile.p_prime} "
            f"= {profile.d_p:.10g}"
        )
    block = _qq_block(H, profile.p)
    unique, second = check_unique_dominant(block, **numerics.spectrum_kwargs())
    d_p, p, k = profile.d_p, profile.p, profile.dim
    delta_plus = second
    delta_minus = profile.delta_minus_floor
    lo = max(delta_plus, delta_minus)
    interval = None
    if unique and profile.multiplicity_one and lo < d_p:
        interval = (lo, d_p)

    below = profile.degrees[p - 1] if p >= 1 else 0.0
    above = profile.degrees[p + 1] if p + 1 <= k else 0.0
    split_plus = max(below, second)
    split_minus = max(above, second)
    refined = None
    if interval is not None and split_plus > 1 and split_minus > 1:
        threshold = refined_delta_threshold(split_plus, split_minus)
        if threshold < d_p:
            refined = (threshold, d_p)

    cert = GapCertificate(
        label=H.label,
        d_p=d_p,
        p=p,
        delta_admissible_interval=interval,
        hypothesis_unique_max=unique,
        hypothesis_multiplicity_one=profile.multiplicity_one,
        delta_plus=delta_plus,
        delta_minus=delta_minus,
        split_delta_plus=split_plus,
        split_delta_minus=split_minus,
        refined_interval=refined,
    )
    if interval is None:
        LOG.warning("No admissible delta for %s", H.label)
    return cert


def entropy(H: HodgeAction, numerics: Numerics = Numerics()) -> float:
    """Topological entropy log d_1 of a surface automorphism."""
    if H.dim != 2:
        raise HypothesisError(
            f"entropy = log d_1 is only available for surfaces (dim={H.dim})"
        )
    rho, _ = spectral_radius(_qq_block(H, 1), **numerics.spectrum_kwargs())
    return math.log(rho)
