# cohomology/refined.py

import logging
import math
from typing import Optional, Tuple

from util.errors import HypothesisError

logger = logging.getLogger(__name__)


def refined_delta_threshold(delta_plus: float, delta_minus: float) -> float:
    """exp of the harmonic mean of log(delta_plus) and log(delta_minus)."""
    if not (delta_plus > 1 and delta_minus > 1):
        raise HypothesisError(
            f"refined threshold needs delta_plus, delta_minus > 1 "
            f"(got {delta_plus!r}, {delta_minus!r})"
        )
    a, b = math.log(delta_plus), math.log(delta_minus)
    return math.exp(2 * a * b / (a + b))


def find_parity_pair(
    delta_plus: float, delta_minus: float, delta: float, cap: int = 200
) -> Optional[Tuple[int, int]]:
    """
    Smallest positive (l, m), by l + m then l, with
    max(delta_plus**l, delta_minus**m) < delta**((l + m) / 2) and l + m <= cap.
    Compared in log scale, so large exponents never overflow.
    """
    if cap < 0:
        raise ValueError("cap must be non-negative")
    if min(delta_plus, delta_minus, delta) <= 1:
        raise ValueError("delta_plus, delta_minus and delta must exceed 1")
    a, b, c = math.log(delta_plus), math.log(delta_minus), math.log(delta)
    for t in range(2, cap + 1):
        half = t * c / 2
        for l in range(1, t):
            m = t - l
            if max(l * a, m * b) < half:
                logger.debug("Parity pair (%d, %d) for delta=%g", l, m, delta)
                return l, m
    return None
