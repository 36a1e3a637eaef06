# mixing/bounds.py

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from cohomology.degrees import GapCertificate
from mixing.correlation import CorrelationEntry, CorrelationSeries
from util.errors import HypothesisError, SchemaError
from util.reports import SCHEMA, finite_or_marker

logger = logging.getLogger(__name__)

CORRELATION_FLOOR = 1e-14
DECAYED = "decayed to zero before fit window"


@dataclass(frozen=True)
class TheoremBound:
    """bound_n = A * scale * base^-n with base = (d_p / delta)^(beta beta' / 8)."""

    base: float
    scale: float
    delta: float
    beta: float
    beta_prime: float
    d_p: float

    @property
    def exponent(self) -> float:
        return self.beta * self.beta_prime / 8

    @property
    def rate(self) -> float:
        """Per-step log decay promised by the bound."""
        return -math.log(self.base)

    def at(self, n: int, A: float) -> float:
        return A * self.scale * self.base ** (-n)


def _check_regularity(name: str, value: float):
    if not 0 <= value <= 2:
        raise SchemaError(f"{name} must lie in [0, 2], got {value}")


def theorem_bound(
    cert: GapCertificate,
    delta: float,
    beta: float,
    beta_prime: float,
    norm_phi: float,
    norm_psi: float,
    refined: bool = False,
) -> TheoremBound:
    _check_regularity("beta", beta)
    _check_regularity("beta_prime", beta_prime)
    if delta is None:
        raise SchemaError("a --delta is required for the mixing bound")
    if refined and cert.refined_interval is None:
        raise HypothesisError(f"{cert.label}: no refined interval (needs delta_+, delta_- > 1)")
    if not cert.admits(delta, refined):
        interval = cert.refined_interval if refined else cert.delta_admissible_interval
        raise HypothesisError(
            f"delta={delta:g} is outside the admissible interval {interval} of {cert.label}"
        )
    base = (cert.d_p / delta) ** (beta * beta_prime / 8)
    return TheoremBound(base, norm_phi * norm_psi, delta, beta, beta_prime, cert.d_p)


@dataclass(frozen=True)
class BoundReport:
    fitted_A: float
    fitted_A_even: float
    fitted_A_odd: float
    base: float
    empirical_rate: float
    empirical_rate_even: float
    empirical_rate_odd: float
    holds: bool
    note: str
    delta: float
    beta: float
    beta_prime: float
    scale: float = 1.0
    fitted_points: int = 0
    vanishes_from: Optional[int] = None

    @property
    def theorem_rate(self) -> float:
        return -math.log(self.base) if self.base > 0 else math.inf

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "fitted_A": finite_or_marker(self.fitted_A),
            "fitted_A_even": finite_or_marker(self.fitted_A_even),
            "fitted_A_odd": finite_or_marker(self.fitted_A_odd),
            "base": self.base,
            "theorem_rate": finite_or_marker(self.theorem_rate),
            "empirical_rate": finite_or_marker(self.empirical_rate),
            "empirical_rate_even": finite_or_marker(self.empirical_rate_even),
            "empirical_rate_odd": finite_or_marker(self.empirical_rate_odd),
            "holds": self.holds,
            "note": self.note,
            "delta": self.delta,
            "beta": self.beta,
            "beta_prime": self.beta_prime,
            "scale": self.scale,
            "fitted_points": self.fitted_points,
            "vanishes_from": self.vanishes_from,
        }


# ---------------- Fitting ----------------
def _fitted_constant(entries: Sequence[CorrelationEntry], bound: TheoremBound) -> float:
    """Smallest A with |C_n| + err <= A * scale * base^-n on every entry."""
    best = 0.0
    for e in entries:
        top = abs(e.value) + e.abs_error
        if top == 0:
            continue
        if bound.scale == 0:
            return math.inf
        try:
            best = max(best, top * bound.base ** e.n / bound.scale)
        except OverflowError:
            return math.inf
    return best


def _slope(entries: Sequence[CorrelationEntry], floor: float) -> Tuple[float, int]:
    points = [
        (e.n, math.log(abs(e.value)))
        for e in entries
        if abs(e.value) > max(3 * e.abs_error, floor)
    ]
    if len(points) < 2:
        return -math.inf, len(points)
    ns, logs = zip(*points)
    return float(np.polyfit(ns, logs, 1)[0]), len(points)


def _vanishes_from(entries: Sequence[CorrelationEntry]) -> Optional[int]:
    """First n after which every entry is exactly zero, when the series ends in zeros."""
    ordered = sorted(entries, key=lambda e: e.n)
    if not ordered or ordered[-1].value != 0 or ordered[-1].abs_error != 0:
        return None
    start = ordered[-1].n
    for e in reversed(ordered):
        if e.value != 0 or e.abs_error != 0:
            break
        start = e.n
    return start


def fit_and_check(
    series: CorrelationSeries, bound: TheoremBound, floor: float = CORRELATION_FLOOR
) -> BoundReport:
    """
    One-sided check of |C_n| <= A ||phi|| ||psi|| base^-n over the tested range.
    Even and odd n are fitted separately as well as together.
    """
    entries: List[CorrelationEntry] = list(series.entries)
    if not entries:
        raise SchemaError("cannot fit an empty correlation series")
    even = [e for e in entries if e.n % 2 == 0]
    odd = [e for e in entries if e.n % 2 == 1]

    fitted = _fitted_constant(entries, bound)
    rate, points = _slope(entries, floor)
    rate_even, _ = _slope(even, floor)
    rate_odd, _ = _slope(odd, floor)
    note = DECAYED if points < 2 else ""

    report = BoundReport(
        fitted_A=fitted,
        fitted_A_even=_fitted_constant(even, bound),
        fitted_A_odd=_fitted_constant(odd, bound),
        base=bound.base,
        empirical_rate=rate,
        empirical_rate_even=rate_even,
        empirical_rate_odd=rate_odd,
        holds=math.isfinite(fitted),
        note=note,
        delta=bound.delta,
        beta=bound.beta,
        beta_prime=bound.beta_prime,
        scale=bound.scale,
        fitted_points=points,
        vanishes_from=_vanishes_from(entries),
    )
    if note:
        logger.info("Correlations %s", note)
    elif rate > bound.rate:
        logger.warning(
            "Empirical decay %.4g per step is slower than the bound's %.4g", rate, bound.rate
        )
    logger.info("Bound check: fitted A = %.6g, holds = %s", fitted, report.holds)
    return report
