# cohomology/convergence.py

import logging
import math
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np
from mpmath import mp
from sympy.polys.matrices import DomainMatrix

from cohomology.spectrum import (
    MP_LOCK,
    Numerics,
    certified_spectrum,
    check_multiplicity_one,
    check_unique_dominant,
    to_mp_matrix,
)
from util.errors import HypothesisError
from util.reports import finite_or_marker

logger = logging.getLogger(__name__)

FIT_CEILING = 1e-2


@dataclass(frozen=True)
class RateResult:
    d_p: float
    second_modulus: float
    slope: float
    expected_slope: float
    delta0: float
    samples: List[Tuple[int, float]] = field(default_factory=list)
    precision_bits: int = 128
    fitted_points: int = 0

    @property
    def delta0_slope(self) -> float:
        """-log(d_p / delta_0): the rate the projector bound promises."""
        return -math.log(self.d_p / self.delta0) if self.delta0 > 0 else -math.inf

    def within(self, rel: float = 0.05) -> bool:
        if math.isinf(self.expected_slope):
            return math.isinf(self.slope) or self.slope < -1 / rel
        return abs(self.slope - self.expected_slope) <= rel * abs(self.expected_slope)

    def to_json(self) -> dict:
        return {
            "d_p": self.d_p,
            "second_modulus": self.second_modulus,
            "slope": finite_or_marker(self.slope),
            "expected_slope": finite_or_marker(self.expected_slope),
            "delta0": self.delta0,
            "delta0_slope": finite_or_marker(self.delta0_slope),
            "within_5_percent": self.within(),
            "precision_bits": self.precision_bits,
            "fitted_points": self.fitted_points,
        }


def _max_norm(X) -> "mp.mpf":
    return max(abs(X[i, j]) for i in range(X.rows) for j in range(X.cols))


def projector_convergence_rate(
    M: DomainMatrix, n_max: int, numerics: Numerics = Numerics()
) -> RateResult:
    """
    e_n = ||d_p^-n M^n - L||_max for n = 1..n_max, L the dominant spectral
    projector, and the least-squares slope of log e_n.
    """
    kw = numerics.spectrum_kwargs()
    unique, second = check_unique_dominant(M, **kw)
    if not unique:
        raise HypothesisError("dominant eigenvalue is not unique")
    if not check_multiplicity_one(M, **numerics.growth_kwargs(), **kw):
        raise HypothesisError("multiplicity-one condition fails at the maximal modulus")
    top = certified_spectrum(M, **kw).top
    if abs(top.value.imag) > top.radius or top.value.real <= 0:
        raise HypothesisError("dominant eigenvalue is not d_p > 0: d_p^-n M^n diverges")

    d_p = float(top.modulus)
    if second > 0:
        bits = math.ceil(n_max * math.log2(d_p / second)) + 64
    else:
        bits = 0
    bits = max(numerics.precision_bits, bits)
    noise = 2.0 ** (-bits + 40)

    with MP_LOCK, mp.workprec(bits):
        A = to_mp_matrix(M)
        n = A.rows
        E, EL, ER = mp.eig(A, left=True, right=True)
        i = min(range(n), key=lambda j: abs(E[j] - top.value))
        d = E[i]
        v = ER[:, i]
        w = EL[i, :]
        L = (v * w) / (w * v)[0, 0]
        step = A / d
        X = mp.eye(n)
        samples = []
        for k in range(1, n_max + 1):
            X = X * step
            samples.append((k, float(_max_norm(X - L))))

    fit = [(k, e) for k, e in samples if noise < e < FIT_CEILING]
    if all(e <= noise for _, e in samples) or second == 0:
        slope = -math.inf
    elif len(fit) < 2:
        raise HypothesisError(
            f"fewer than two samples inside the fit window ({noise:.1e}, {FIT_CEILING}); "
            "raise n_max"
        )
    else:
        ks, logs = zip(*((k, math.log(e)) for k, e in fit))
        slope = float(np.polyfit(ks, logs, 1)[0])

    expected = -math.log(d_p / second) if second > 0 else -math.inf
    result = RateResult(
        d_p=d_p,
        second_modulus=second,
        slope=slope,
        expected_slope=expected,
        delta0=second * (1 + numerics.margin_delta0),
        samples=samples,
        precision_bits=bits,
        fitted_points=len(fit),
    )
    logger.info(
        "Projector rate: slope %.6g vs -log(d_p/second) = %.6g (%d bits, %d points)",
        slope,
        expected,
        bits,
        len(fit),
    )
    return result
