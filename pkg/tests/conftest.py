"""Shared test fixtures for reptype.

Provides:
- Small posets and relations with known values
- The worked poset with equivalence (two dimension-2 classes)
- Dyadic sets on a 4-chain, finite and with a failing edge
- Catalog and critical set services over the repo config
- FastAPI test client
"""

from __future__ import annotations

import os
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

# ---------------------------------------------------------------------------
# Environment setup (before importing reptype modules)
# ---------------------------------------------------------------------------

os.environ["LOG_LEVEL"] = "WARNING"

CONFIG_DIR = Path(__file__).parent.parent / "config"


# ---------------------------------------------------------------------------
# Posets and relations
# ---------------------------------------------------------------------------

@pytest.fixture
def chain3():
    from reptype.theory.posets import chain
    return chain(3)


@pytest.fixture
def n_hat_poset():
    from reptype.theory.posets import n_hat
    return n_hat()


@pytest.fixture
def v_poset():
    """a < b and a < c."""
    from reptype.theory.posets import make_poset
    return make_poset(3, [(0, 1), (0, 2)], ["a", "b", "c"])


@pytest.fixture
def n_hat_relation(n_hat_poset):
    return n_hat_poset.to_relation()


# ---------------------------------------------------------------------------
# Posets with equivalence
# ---------------------------------------------------------------------------

@pytest.fixture
def worked_eqposet():
    """Six points a, b, x, x*, y, y* with classes {x, x*} and {y, y*}.

    x is 1-normal, y is 2-normal; x* and y* are not normal.
    """
    from reptype.theory.equiv_posets import EquivPoset
    from reptype.theory.posets import make_poset

    base = make_poset(
        6,
        [(2, 4), (4, 5), (4, 0), (1, 0), (2, 3), (1, 3)],
        ["a", "b", "x", "x*", "y", "y*"],
    )
    return EquivPoset.from_classes(base, [[2, 3], [4, 5]])


# ---------------------------------------------------------------------------
# Dyadic sets
# ---------------------------------------------------------------------------

@pytest.fixture
def chain_dyadic():
    """x1 < x2 < x3 < x4, classes {x1, x3} and {x2, x4}, edges (x1, x2) ~ (x3, x4)."""
    from reptype.theory.dyadic import DyadicSet
    from reptype.theory.posets import make_poset

    base = make_poset(4, [(0, 1), (1, 2), (2, 3)], ["x1", "x2", "x3", "x4"])
    return DyadicSet.build(base, [[(0, 1), (2, 3)]], [[0, 2], [1, 3]])


@pytest.fixture
def equipped_dyadic():
    """The chain dyadic set beside a two-point chain c1 < c2 of small points."""
    from reptype.theory.dyadic import DyadicSet
    from reptype.theory.posets import make_poset

    base = make_poset(
        6,
        [(0, 1), (1, 2), (2, 3), (4, 5)],
        ["x1", "x2", "x3", "x4", "c1", "c2"],
    )
    return DyadicSet.build(base, [[(0, 1), (2, 3)]], [[0, 2], [1, 3]])


# ---------------------------------------------------------------------------
# Services
# ---------------------------------------------------------------------------

@pytest.fixture
def catalog_service():
    """Catalog service with the real list YAMLs."""
    from reptype.services.catalog import CatalogService
    return CatalogService(config_dir=CONFIG_DIR / "graphs")


@pytest.fixture
def critical_service():
    """Critical set service with the real reference YAMLs."""
    from reptype.services.critical import CriticalSetService
    return CriticalSetService(config_dir=CONFIG_DIR / "critical")


@pytest.fixture
def classifier(catalog_service, critical_service):
    from reptype.services.classifier import ClassifierService
    return ClassifierService(catalog_service, critical_service)


# ---------------------------------------------------------------------------
# FastAPI test client
# ---------------------------------------------------------------------------

@pytest.fixture
def client():
    """Synchronous test client; the context manager runs the lifespan."""
    from reptype.main import app
    with TestClient(app) as c:
        yield c
