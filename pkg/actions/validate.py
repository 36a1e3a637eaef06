# actions/validate.py

import logging

from actions.common import open_context
from catalog.loader import describe
from util.config import RunConfig
from util.reports import print_table, write_json

logger = logging.getLogger(__name__)


def cmd_validate_catalog(cfg: RunConfig) -> dict:
    """Parse every entry (exact checks only) and echo its derived invariants."""
    ctx = open_context(cfg)
    entries = [describe(entry) for entry in ctx.catalog.entries.values()]
    report = {"catalog": str(cfg.catalog_path), "instances": entries}
    write_json(ctx.out / "catalog.json", report)
    print_table(
        "Catalog",
        ["label", "type", "dim", "fragment", "extra"],
        [
            (
                e["label"],
                e["type"],
                e["dim"],
                e["fragment"],
                "hyperbolic" if e.get("hyperbolic") else e.get("signature", ""),
            )
            for e in entries
        ],
    )
    logger.info("Catalog %s is valid: %d instances", cfg.catalog_path, len(entries))
    return report
