import sys
from pathlib import Path

import pytest

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from app.forms import build_catalog
from app.settings import settings
from app.utils.cache import catalog_cache


@pytest.fixture
def mock_settings(monkeypatch, tmp_path):
    """Settings with the on-disk cache switched off"""
    monkeypatch.setattr(settings, "DEBUG", True)
    monkeypatch.setattr(settings, "CACHE_ENABLED", False)
    monkeypatch.setattr(settings, "CACHE_DIR", tmp_path / "catalogs")
    monkeypatch.setattr(catalog_cache, "enabled", False)
    return settings


@pytest.fixture(scope="session")
def small_catalog():
    """Catalog exact through q^3, matching the printed expansions"""
    return build_catalog(3)


@pytest.fixture(scope="session")
def catalog():
    """Catalog at the default truncation order"""
    return build_catalog(settings.TRUNCATION_ORDER)


@pytest.fixture(scope="session")
def certify_catalog():
    """Catalog one order above q^50, as the certify command builds it"""
    return build_catalog(51)
