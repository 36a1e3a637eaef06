# mixing/correlation.py

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np

from catalog.torus import TorusAutomorphism
from cohomology.spectrum import Numerics, spectral_radius
from mixing.observables import TestFunction
from util.errors import HypothesisError, SchemaError

logger = logging.getLogger(__name__)

EXACT = "exact"
MONTECARLO = "montecarlo"
MIN_SAMPLES = 1000
# orbit points carry 64 fractional bits; keep this many of them as slack
DYADIC_GUARD_BITS = 20


@dataclass(frozen=True)
class CorrelationEntry:
    n: int
    value: float
    abs_error: float
    method: str


@dataclass(frozen=True)
class CorrelationSeries:
    entries: Tuple[CorrelationEntry, ...]
    meta: Dict[str, Any] = field(default_factory=dict)

    def by_method(self, method: str) -> "CorrelationSeries":
        return CorrelationSeries(
            tuple(e for e in self.entries if e.method == method), dict(self.meta)
        )

    def values(self) -> List[float]:
        return [e.value for e in self.entries]

    def __len__(self):
        return len(self.entries)

    def __add__(self, other: "CorrelationSeries") -> "CorrelationSeries":
        return CorrelationSeries(self.entries + other.entries, {**self.meta, **other.meta})


def _check_pair(T: TorusAutomorphism, phi: TestFunction, psi: TestFunction):
    if not T.hyperbolic:
        raise HypothesisError(f"{T.label or 'torus'} is not hyperbolic: excluded from mixing runs")
    for f in (phi, psi):
        if f.dim != T.real_dim:
            raise SchemaError(f"{f.name}: functions live on R^{f.dim}, torus on R^{T.real_dim}")


def _transport(B: Sequence[Sequence[int]], xi: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(sum(b * x for b, x in zip(row, xi)) for row in B)


def correlation_exact(
    T: TorusAutomorphism, phi: TestFunction, psi: TestFunction, n_max: int
) -> CorrelationSeries:
    """
    C_n = sum over xi != 0 of coeff_phi(xi) * coeff_psi(-(A_real^T)^n xi).

    Frequencies are transported as Python integers, so nothing overflows.
    Terms are summed with math.fsum, which makes the result independent of
    summation order.
    """
    _check_pair(T, phi, psi)
    B = T.frequency_matrix
    transported = {xi: xi for xi in phi.support}
    entries = []
    for n in range(n_max + 1):
        re_terms = []
        for origin, xi in transported.items():
            c = psi.coeffs.get(tuple(-x for x in xi))
            if c is not None:
                re_terms.append((phi.coeffs[origin] * c).real)
        entries.append(CorrelationEntry(n, math.fsum(re_terms), 0.0, EXACT))
        transported = {origin: _transport(B, xi) for origin, xi in transported.items()}
    meta = {"instance": T.label, "phi": phi.name, "psi": psi.name, "n_max": n_max}
    logger.info("Exact correlations for %s up to n=%d", T.label, n_max)
    return CorrelationSeries(tuple(entries), meta)


def precision_horizon(T: TorusAutomorphism, numerics: Numerics = Numerics()) -> int:
    """Largest n for which 64-bit dyadic orbits still resolve the observables."""
    rho, _ = spectral_radius(T.A, **numerics.spectrum_kwargs())
    if rho <= 1:
        return 10**9
    return int((64 - DYADIC_GUARD_BITS) / math.log2(rho))


def _block_sizes(samples: int, blocks: int) -> List[int]:
    return [samples // blocks + (1 if i < samples % blocks else 0) for i in range(blocks)]


def correlation_montecarlo(
    T: TorusAutomorphism,
    phi: TestFunction,
    psi: TestFunction,
    n_max: int,
    samples: int,
    seed: int,
    blocks: int = 16,
    chunk: int = 4096,
    max_workers: int = 4,
    numerics: Numerics = Numerics(),
) -> CorrelationSeries:
    """
    Monte Carlo estimate of C_n on uniform dyadic points x = u / 2^64.

    Orbits advance exactly: u <- A_real u mod 2^64 in uint64 arithmetic.
    Block i draws from SeedSequence(seed).spawn(blocks)[i]; results are
    gathered by block index, so the estimate depends on (seed, samples,
    blocks) only.
    """
    _check_pair(T, phi, psi)
    if seed is None:
        raise SchemaError("Monte Carlo needs an explicit seed")
    if samples < MIN_SAMPLES:
        raise SchemaError(f"sample count {samples} is below {MIN_SAMPLES}")
    blocks = max(1, min(blocks, samples))
    chunk = max(1, chunk)
    d = T.real_dim
    A_t = np.array(T.A_real, dtype=np.int64).astype(np.uint64).T
    children = np.random.SeedSequence(seed).spawn(blocks)
    sizes = _block_sizes(samples, blocks)

    def run_block(i: int):
        bits = np.random.PCG64(children[i])
        size = sizes[i]
        phi_vals = np.empty((n_max + 1, size))
        psi_vals = np.empty(size)
        for start in range(0, size, chunk):
            stop = min(start + chunk, size)
            u = bits.random_raw((stop - start) * d).reshape(stop - start, d)
            psi_vals[start:stop] = psi.evaluate_dyadic(u)
            for n in range(n_max + 1):
                phi_vals[n, start:stop] = phi.evaluate_dyadic(u)
                with np.errstate(over="ignore"):
                    u = u @ A_t
        return phi_vals, psi_vals

    with ThreadPoolExecutor(max_workers=max(1, max_workers)) as pool:
        results = list(pool.map(run_block, range(blocks)))

    phi_all = np.concatenate([r[0] for r in results], axis=1)
    psi_all = np.concatenate([r[1] for r in results])
    mean_psi = math.fsum(psi_all) / samples
    horizon = precision_horizon(T, numerics)
    entries = []
    for n in range(n_max + 1):
        row = phi_all[n]
        mean_phi = math.fsum(row) / samples
        value = math.fsum(row * psi_all) / samples - mean_phi * mean_psi
        centred = (row - mean_phi) * (psi_all - mean_psi)
        err = 4 * float(np.std(centred)) / math.sqrt(samples)
        entries.append(CorrelationEntry(n, value, err, MONTECARLO))
    if n_max > horizon:
        logger.warning(
            "Monte Carlo orbits lose resolution beyond n=%d (requested %d)", horizon, n_max
        )
    meta = {
        "instance": T.label,
        "phi": phi.name,
        "psi": psi.name,
        "seed": seed,
        "samples": samples,
        "blocks": blocks,
        "precision_horizon": horizon,
    }
    logger.info("Monte Carlo correlations for %s: N=%d in %d blocks", T.label, samples, blocks)
    return CorrelationSeries(tuple(entries), meta)
