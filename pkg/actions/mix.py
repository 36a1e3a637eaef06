# actions/mix.py

import logging
import math
from typing import Tuple

from actions.common import open_context
from catalog.torus import TorusAutomorphism
from cohomology.degrees import gap_certificate
from mixing.bounds import fit_and_check, theorem_bound
from mixing.correlation import (
    CorrelationSeries,
    correlation_exact,
    correlation_montecarlo,
)
from mixing.observables import TestFunction, cosine, make_holder_function
from mixing.plot import plot_correlations
from util.config import RunConfig
from util.errors import HypothesisError, SchemaError
from util.reports import print_summary, print_table, write_csv, write_json

logger = logging.getLogger(__name__)

PAIRS = ("cos-pair", "transported-pair", "power-law")
AGREEMENT_N = 12


def build_pair(T: TorusAutomorphism, cfg: RunConfig) -> Tuple[TestFunction, TestFunction]:
    d = T.real_dim
    e1 = tuple(int(i == 0) for i in range(d))
    if cfg.pair == "cos-pair":
        f = cosine(e1, dim=d)
        return f, f
    if cfg.pair == "transported-pair":
        B = T.frequency_matrix
        moved = tuple(sum(b * x for b, x in zip(row, e1)) for row in B)
        return cosine(e1, dim=d), cosine(moved, dim=d)
    if cfg.pair == "power-law":
        seed = cfg.require_seed()
        phi = make_holder_function(cfg.beta, cfg.radius, seed, dim=d, name="phi")
        psi = make_holder_function(cfg.beta_prime, cfg.radius, seed + 1, dim=d, name="psi")
        return phi, psi
    raise SchemaError(f"unknown observable pair '{cfg.pair}' (choose from {', '.join(PAIRS)})")


def _agreement(exact: CorrelationSeries, mc: CorrelationSeries, samples: int, horizon: int) -> dict:
    last = min(AGREEMENT_N, horizon)
    by_n = {e.n: e for e in exact.entries}
    gaps = [
        abs(e.value - by_n[e.n].value) - by_n[e.n].abs_error
        for e in mc.entries
        if e.n <= last and e.n in by_n
    ]
    worst = max(gaps, default=0.0)
    return {
        "max_deviation": worst,
        "threshold": 4 / math.sqrt(samples),
        "within": worst <= 4 / math.sqrt(samples),
        "up_to_n": last,
    }


def cmd_mix(cfg: RunConfig) -> dict:
    ctx = open_context(cfg)
    entry = ctx.entry()
    T = entry.torus
    if T is None:
        raise HypothesisError(
            f"{entry.label}: correlations need a torus instance (Haar measure oracle)"
        )
    if not T.hyperbolic:
        raise HypothesisError(f"{entry.label} is not hyperbolic: excluded from mixing runs")
    if cfg.delta is None:
        raise SchemaError("cmd mix needs --delta")

    cert = gap_certificate(T.hodge, ctx.numerics)
    phi, psi = build_pair(T, cfg)
    bound = theorem_bound(
        cert,
        cfg.delta,
        cfg.beta,
        cfg.beta_prime,
        phi.holder_bound(cfg.beta),
        psi.holder_bound(cfg.beta_prime),
        refined=cfg.refined,
    )

    exact = correlation_exact(T, phi, psi, cfg.n_max)
    series = exact
    mc = None
    if cfg.samples:
        mc = correlation_montecarlo(
            T,
            phi,
            psi,
            cfg.n_max,
            cfg.samples,
            cfg.require_seed(),
            blocks=cfg.mc_blocks,
            chunk=cfg.mc_chunk,
            max_workers=cfg.max_workers,
            numerics=ctx.numerics,
        )
        series = exact + mc

    check = fit_and_check(exact, bound, cfg.correlation_floor)
    report = {
        **check.to_json(),
        "instance": entry.label,
        "pair": cfg.pair,
        "phi": phi.name,
        "psi": psi.name,
        "norm_phi": phi.holder_bound(cfg.beta),
        "norm_psi": psi.holder_bound(cfg.beta_prime),
        "d_p": cert.d_p,
        "refined": cfg.refined,
        "n_max": cfg.n_max,
    }
    if mc is not None:
        mc_check = fit_and_check(mc, bound, cfg.correlation_floor)
        report["montecarlo"] = {
            "samples": cfg.samples,
            "seed": cfg.seed,
            "blocks": mc.meta["blocks"],
            "precision_horizon": mc.meta["precision_horizon"],
            "fitted_A": mc_check.to_json()["fitted_A"],
            "holds": mc_check.holds,
            "agreement": _agreement(exact, mc, cfg.samples, mc.meta["precision_horizon"]),
        }

    out = ctx.out
    write_json(out / "mix.json", report)
    write_csv(
        out / "mix.csv",
        ["n", "value", "abs_error", "method"],
        [(e.n, e.value, e.abs_error, e.method) for e in series.entries],
    )
    if cfg.svg:
        plot_correlations(series, bound, check, out / "mix.svg", title=f"{entry.label}: {cfg.pair}")

    print_table(
        f"Correlations of {entry.label} ({cfg.pair})",
        ["n", "C_n", "abs_error", "method"],
        [(e.n, e.value, e.abs_error, e.method) for e in series.entries if e.n <= 12],
    )
    print_summary(
        "Bound check",
        {
            "base": check.base,
            "fitted A": check.fitted_A,
            "fitted A (even)": check.fitted_A_even,
            "fitted A (odd)": check.fitted_A_odd,
            "empirical rate": check.empirical_rate,
            "holds": check.holds,
            "note": check.note or "-",
        },
    )
    return report
