# actions/common.py

import logging
from dataclasses import dataclass
from pathlib import Path

from catalog.loader import Catalog, CatalogEntry, load_catalog
from cohomology.spectrum import Numerics
from util.config import RunConfig

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RunContext:
    cfg: RunConfig
    numerics: Numerics
    catalog: Catalog

    @property
    def out(self) -> Path:
        path = Path(self.cfg.output_dir)
        path.mkdir(parents=True, exist_ok=True)
        return path

    def entry(self) -> CatalogEntry:
        return self.catalog.get(self.cfg.instance)


def open_context(cfg: RunConfig) -> RunContext:
    numerics = Numerics.from_config(cfg)
    catalog = load_catalog(cfg.catalog_path, numerics)
    logger.info("Loaded catalog %s (%d instances)", cfg.catalog_path, len(catalog.entries))
    return RunContext(cfg, numerics, catalog)
