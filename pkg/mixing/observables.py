# mixing/observables.py

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Sequence, Tuple

import numpy as np

from util.errors import SchemaError

logger = logging.getLogger(__name__)

Frequency = Tuple[int, ...]
TWO_PI_SQ = 4 * math.pi**2


@dataclass(frozen=True)
class TestFunction:
    """
    Real trigonometric polynomial on the real torus R^d / Z^d:
    mean + sum over the support of coeffs[xi] * exp(2 pi i xi.x).
    """

    __test__ = False  # not a pytest class

    coeffs: Dict[Frequency, complex]
    mean: float = 0.0
    holder_beta: float = 2.0
    name: str = ""
    dim: int = 4

    def __post_init__(self):
        for xi, c in self.coeffs.items():
            if len(xi) != self.dim:
                raise SchemaError(f"{self.name}: frequency {xi} is not in Z^{self.dim}")
            if not any(xi):
                raise SchemaError(f"{self.name}: the zero frequency is the mean, not a coefficient")
            partner = self.coeffs.get(tuple(-x for x in xi))
            if partner is None or partner != c.conjugate():
                raise SchemaError(f"{self.name}: coeff(-xi) must equal conj(coeff(xi)) at {xi}")
        if not 0 <= self.holder_beta <= 2:
            raise ValueError("holder_beta must lie in [0, 2]")

    @property
    def support(self) -> Sequence[Frequency]:
        return sorted(self.coeffs)

    @property
    def norm_c0_bound(self) -> float:
        return abs(self.mean) + math.fsum(abs(c) for c in self.coeffs.values())

    @property
    def norm_c2_bound(self) -> float:
        return abs(self.mean) + math.fsum(
            (1 + TWO_PI_SQ * sum(x * x for x in xi)) * abs(c) for xi, c in self.coeffs.items()
        )

    def holder_bound(self, beta: Optional[float] = None) -> float:
        """C^beta norm proxy by interpolation between the C^0 and C^2 bounds (c = 1)."""
        beta = self.holder_beta if beta is None else beta
        if not 0 <= beta <= 2:
            raise ValueError("beta must lie in [0, 2]")
        c0, c2 = self.norm_c0_bound, self.norm_c2_bound
        if c0 == 0:
            return 0.0
        return c0 ** (1 - beta / 2) * c2 ** (beta / 2)

    @property
    def norm_holder_bound(self) -> float:
        return self.holder_bound()

    def frequency_array(self) -> np.ndarray:
        return np.array(self.support, dtype=np.int64).reshape(-1, self.dim)

    def coefficient_array(self) -> np.ndarray:
        return np.array([self.coeffs[xi] for xi in self.support], dtype=np.complex128)

    def evaluate_dyadic(self, u: np.ndarray) -> np.ndarray:
        """Values at x = u / 2^64 for an (m, dim) uint64 array of points."""
        if not self.coeffs:
            return np.full(u.shape[0], self.mean)
        xi = self.frequency_array().astype(np.uint64)  # two's complement = mod 2^64
        with np.errstate(over="ignore"):
            dots = u @ xi.T  # exact mod 2^64
        phase = (dots >> np.uint64(11)).astype(np.float64) * 2.0**-53
        c = self.coefficient_array()
        angle = 2 * np.pi * phase
        return self.mean + np.cos(angle) @ c.real - np.sin(angle) @ c.imag


def trig_function(
    terms: Iterable[Tuple[Sequence[int], complex]],
    name: str = "",
    mean: float = 0.0,
    holder_beta: float = 2.0,
    dim: int = 4,
) -> TestFunction:
    """Real function from (frequency, amplitude) pairs; conjugate partners are added."""
    coeffs: Dict[Frequency, complex] = {}
    for xi, a in terms:
        xi = tuple(int(x) for x in xi)
        neg = tuple(-x for x in xi)
        coeffs[xi] = coeffs.get(xi, 0) + complex(a)
        coeffs[neg] = coeffs.get(neg, 0) + complex(a).conjugate()
    return TestFunction(coeffs, mean, holder_beta, name, dim)


def cosine(xi: Sequence[int], name: str = "", dim: int = 4) -> TestFunction:
    """cos(2 pi xi.x)."""
    return trig_function([(xi, 0.5)], name or f"cos{tuple(xi)}", dim=dim)


def constant(value: float, name: str = "const", dim: int = 4) -> TestFunction:
    return TestFunction({}, float(value), 2.0, name, dim)


def _half_space(xi: Frequency) -> bool:
    """First non-zero coordinate is positive."""
    for x in xi:
        if x:
            return x > 0
    return False


def make_holder_function(
    beta: float, radius: int, seed: int, dim: int = 4, name: str = ""
) -> TestFunction:
    """
    Random-phase function with amplitudes |xi|_inf^-(2+beta) on 0 < |xi|_inf <= radius.
    Phases come from numpy's generator seeded with `seed`, so the same
    arguments give the same function bit for bit.
    """
    if not 0 < beta <= 2:
        raise ValueError(f"beta must lie in (0, 2], got {beta}")
    if radius < 1:
        raise ValueError("radius must be >= 1")
    rng = np.random.default_rng(seed)
    grid = itertools.product(range(-radius, radius + 1), repeat=dim)
    half = [xi for xi in grid if _half_space(xi)]
    phases = rng.uniform(0.0, 2 * math.pi, size=len(half))
    terms = []
    for xi, theta in zip(half, phases):
        amp = max(abs(x) for x in xi) ** -(2 + beta)
        terms.append((xi, amp * complex(math.cos(theta), math.sin(theta))))
    f = trig_function(terms, name or f"holder(beta={beta:g},R={radius})", holder_beta=beta, dim=dim)
    logger.debug("%s: %d frequencies, C0 <= %.6g, C2 <= %.6g", f.name, len(f.coeffs), f.norm_c0_bound, f.norm_c2_bound)
    return f
