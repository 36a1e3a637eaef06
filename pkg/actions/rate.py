# actions/rate.py

import logging

from actions.common import open_context
from cohomology.convergence import projector_convergence_rate
from cohomology.degrees import degree_profile
from util.config import RunConfig
from util.errors import HypothesisError
from util.reports import print_summary, write_csv, write_json

logger = logging.getLogger(__name__)


def cmd_rate(cfg: RunConfig) -> dict:
    """Convergence of d_p^-n (f^n)* to its limit projector on H^{p,p}."""
    ctx = open_context(cfg)
    entry = ctx.entry()
    H = entry.action
    profile = degree_profile(H, ctx.numerics)
    if not profile.is_unique_peak:
        raise HypothesisError(
            f"{entry.label}: degrees peak on a plateau p={profile.p}..{profile.p_prime}"
        )
    result = projector_convergence_rate(H.block(profile.p, profile.p), cfg.n_max, ctx.numerics)
    report = {"instance": entry.label, "p": profile.p, "n_max": cfg.n_max, **result.to_json()}

    write_json(ctx.out / "rate.json", report)
    write_csv(ctx.out / "rate.csv", ["n", "error"], result.samples)
    print_summary(
        f"Projector convergence on H^{profile.p},{profile.p} of {entry.label}",
        {
            "d_p": result.d_p,
            "second modulus": result.second_modulus,
            "slope": result.slope,
            "-log(d_p/second)": result.expected_slope,
            "-log(d_p/delta0)": result.delta0_slope,
            "within 5%": result.within(),
            "precision bits": result.precision_bits,
        },
    )
    return report
