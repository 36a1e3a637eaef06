# test/conftest.py
import sys
from pathlib import Path

import pytest

# Add project root so all internal imports work
ROOT = Path(__file__).resolve().parent.parent
sys.path.append(str(ROOT))

CATALOG_PATH = ROOT / "data" / "catalog.json"


@pytest.fixture(scope="session")
def catalog():
    from catalog.loader import load_catalog

    return load_catalog(CATALOG_PATH)


@pytest.fixture(scope="session")
def cat_map(catalog):
    return catalog.get("cat-map").torus


@pytest.fixture
def catalog_path():
    return CATALOG_PATH
