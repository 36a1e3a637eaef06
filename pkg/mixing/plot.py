# mixing/plot.py

import logging
import math
from pathlib import Path
from typing import Optional

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from mixing.bounds import BoundReport, TheoremBound  # noqa: E402
from mixing.correlation import EXACT, CorrelationSeries  # noqa: E402

LOG = logging.getLogger("kahlermix.plot")

# fixed salt keeps generated SVG ids stable between runs
plt.rcParams["svg.hashsalt"] = "kahlermix"
plt.rcParams["svg.fonttype"] = "none"


def plot_correlations(
    series: CorrelationSeries,
    bound: TheoremBound,
    report: BoundReport,
    path,
    title: Optional[str] = None,
) -> Path:
    """log|C_n| per method with the line fitted_A * scale * base^-n overlaid."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    methods = sorted({e.method for e in series.entries})
    for method in methods:
        pts = [(e.n, abs(e.value)) for e in series.entries if e.method == method and e.value != 0]
        if not pts:
            continue
        ns, vals = zip(*pts)
        marker = "o" if method == EXACT else "x"
        ax.semilogy(ns, vals, marker, label=f"|C_n| ({method})")

    ns = sorted({e.n for e in series.entries})
    if ns and math.isfinite(report.fitted_A) and report.fitted_A > 0:
        line = [bound.at(n, report.fitted_A) for n in ns]
        ax.semilogy(ns, line, "-", label=f"A ||phi|| ||psi|| {bound.base:.4g}^-n")
    ax.set_xlabel("n")
    ax.set_ylabel("|C_n|")
    ax.set_title(title or f"delta={bound.delta:g}, beta={bound.beta:g}, beta'={bound.beta_prime:g}")
    if ax.get_legend_handles_labels()[0]:
        ax.legend()
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    LOG.info("Wrote %s", path)
    return path
