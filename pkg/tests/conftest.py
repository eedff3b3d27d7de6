"""Shared fixtures: the packaged order catalog and the discriminant-6 order."""

import pytest

from igusa_locus.config import DEFAULT_CATALOG_PATH
from igusa_locus.quaternion import OrderCatalog


@pytest.fixture(scope="session")
def catalog():
    return OrderCatalog.load(DEFAULT_CATALOG_PATH)


@pytest.fixture(scope="session")
def order6(catalog):
    return catalog.get(6)


@pytest.fixture(scope="session")
def mu6(order6):
    # 3i + j, the first hit of the polarization search
    return order6.algebra.element(0, 3, 1, 0)
