# actions/degrees.py

import logging

from actions.common import open_context
from cohomology.degrees import degree_profile, entropy, gap_certificate
from cohomology.spectrum import check_surface_spectrum
from util.config import RunConfig
from util.errors import HypothesisError, UndecidableError
from util.reports import print_summary, print_table, write_json

logger = logging.getLogger(__name__)


def _surface_checks(H, profile, numerics) -> dict:
    if H.dim != 2:
        return {}
    out = {"entropy": entropy(H, numerics)}
    if profile.degrees[1] > 1:
        try:
            out["surface_spectrum"] = check_surface_spectrum(
                H.block(1, 1), **numerics.spectrum_kwargs()
            )
        except UndecidableError as e:
            out["surface_spectrum"] = str(e)
    return out


def cmd_degrees(cfg: RunConfig) -> dict:
    """
    Dynamical degrees and the admissible delta interval of one instance.
    degrees.json is written before a failed hypothesis is re-raised.
    """
    ctx = open_context(cfg)
    entry = ctx.entry()
    H = entry.action
    profile = degree_profile(H, ctx.numerics)
    report = {
        "instance": entry.label,
        "type": entry.kind,
        "profile": profile.to_json(),
        "certificate": None,
        **_surface_checks(H, profile, ctx.numerics),
    }

    print_table(
        f"Dynamical degrees of {entry.label}",
        ["q", "d_q", "radius"],
        [(q, d, r) for q, (d, r) in enumerate(zip(profile.degrees, profile.radii))],
    )

    failure = None
    try:
        cert = gap_certificate(H, ctx.numerics, profile)
        report["certificate"] = cert.to_json()
        report["delta0"] = cert.delta0(cfg.margin_delta0)
        if not cert.holds:
            failure = HypothesisError(
                f"{entry.label}: empty admissible interval "
                f"(unique max: {cert.hypothesis_unique_max}, "
                f"multiplicity one: {cert.hypothesis_multiplicity_one})"
            )
    except HypothesisError as e:
        failure = e

    if failure is not None:
        report["hypothesis_failure"] = str(failure)
    write_json(ctx.out / "degrees.json", report)
    print_summary(
        "Gap certificate",
        {
            "p": profile.p,
            "p'": profile.p_prime,
            "second modulus": profile.second_modulus,
            "multiplicity one": f"{profile.multiplicity_one} ({profile.multiplicity_branch})",
            "interval": (report["certificate"] or {}).get("delta_admissible_interval"),
            "refined": (report["certificate"] or {}).get("refined_interval"),
            "entropy": report.get("entropy"),
        },
    )
    if failure is not None:
        raise failure
    return report
