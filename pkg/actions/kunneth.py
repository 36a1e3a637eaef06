# actions/kunneth.py

import logging

from actions.common import open_context
from catalog.torus import preserves_decomposition, product_automorphism
from cohomology.degrees import degree_profile, gap_certificate
from cohomology.hodge import invert_action
from cohomology.kunneth import kunneth_action, kunneth_bound_check
from util.config import RunConfig
from util.errors import HypothesisError
from util.reports import print_summary, print_table, write_json

logger = logging.getLogger(__name__)


def cmd_kunneth(cfg: RunConfig) -> dict:
    ctx = open_context(cfg)
    entry = ctx.entry()
    H = entry.action
    H.require_full("kunneth")

    report = {"instance": entry.label, "complete": cfg.complete}
    if entry.torus is not None:
        product = product_automorphism(entry.torus, ctx.numerics, complete=cfg.complete)
        action = product.kunneth
        report["real_map_dim"] = len(product.real_map)
        report["preserves_decomposition"] = preserves_decomposition(product)
    else:
        action = kunneth_action(invert_action(H), H, ctx.numerics, complete=cfg.complete)

    profile = degree_profile(H, ctx.numerics)
    report.update(action.to_json())
    report["d_p"] = profile.d_p
    report["d_p_squared"] = profile.d_p**2
    report["dominant_matches"] = action.dominant_matches()
    report["bound_violations"] = kunneth_bound_check(action, cfg.tolerance) or []

    try:
        delta0 = gap_certificate(H, ctx.numerics, profile).delta0(cfg.margin_delta0)
    except HypothesisError as e:
        logger.warning("No gap certificate for %s: %s", entry.label, e)
        delta0 = None
    report["delta0"] = delta0
    if delta0 is not None:
        report["others_below_d_p_delta0"] = (
            action.second_modulus() <= profile.d_p * delta0 + cfg.tolerance
        )

    write_json(ctx.out / "kunneth.json", report)
    print_table(
        f"Kunneth blocks of {entry.label}",
        ["(f^-1)* block", "f* block", "size", "radius", "bound"],
        [(b.left, b.right, b.size, b.radius, b.bound) for b in action.blocks],
    )
    print_summary(
        "Dominant block",
        {
            "radius": action.dominant_radius,
            "d_p^2": report["d_p_squared"],
            "matches": report["dominant_matches"],
            "second modulus": action.second_modulus(),
            "delta0": delta0,
        },
    )
    return report
