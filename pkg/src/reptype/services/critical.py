"""Critical set service.

Serves the reference lists that the rho-criteria are checked against: the
K and N posets, the dimension-2 patterns of antichain posets with
equivalence, and the numbered mu = 4 configurations of dyadic sets. It also
runs the exhaustive critical-set scan over small dyadic sets.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import yaml

from reptype.core.config import settings
from reptype.core.errors import check_cap
from reptype.theory.dyadic import (
    DyadicSet,
    enumerate_dyadic_sets,
    enumerate_mu4_groups,
    is_critical_dyadic,
    is_transitive_biequiv,
)
from reptype.theory.equiv_posets import EquivPoset
from reptype.theory.posets import Poset, chain, disjoint_union, make_poset, n_hat

logger = logging.getLogger(__name__)

Group = frozenset[tuple[int, ...]]


# ---------------------------------------------------------------------------
# Data classes
# ---------------------------------------------------------------------------

@dataclass
class Mu4Case:
    number: int
    rows: Group
    critical: bool = True


@dataclass
class Mu4Report:
    """Enumerated mu = 4 groups matched against the reference cases."""

    matched: dict[int, Group] = field(default_factory=dict)
    missing: list[int] = field(default_factory=list)
    unlisted: list[Group] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return not self.missing


@dataclass
class CriticalScan:
    max_points: int
    scanned: int = 0
    critical: list[DyadicSet] = field(default_factory=list)
    intransitive: list[DyadicSet] = field(default_factory=list)


def _poset_from_spec(spec: dict) -> Poset:
    parts = [chain(k) for k in spec.get("chains", [])]
    if spec.get("n_hat"):
        parts.append(n_hat())
    return disjoint_union(*parts)


def pattern_eqposet(big: int, chains: list[int]) -> EquivPoset:
    """Antichain poset with equivalence realising a pattern.

    The pattern points are ``big`` single points ``b<i>`` and incomparable
    chains of small points ``s<j>.<k>``. Each ``b<i>`` gets a partner
    ``b<i>*`` lying above every pattern point except ``b<i>``.
    """
    labels = [f"b{i}" for i in range(1, big + 1)]
    pairs: list[tuple[int, int]] = []
    for j, length in enumerate(chains, start=1):
        start = len(labels)
        labels.extend(f"s{j}.{k}" for k in range(1, length + 1))
        pairs.extend((start + k, start + k + 1) for k in range(length - 1))
    pattern = len(labels)
    classes = []
    for i in range(big):
        partner = len(labels)
        labels.append(f"b{i + 1}*")
        pairs.extend((p, partner) for p in range(pattern) if p != i)
        classes.append((i, partner))
    return EquivPoset.from_classes(make_poset(len(labels), pairs, labels), classes)


# ---------------------------------------------------------------------------
# Service
# ---------------------------------------------------------------------------

class CriticalSetService:
    """Reference lists of critical posets and mu = 4 configurations."""

    def __init__(self, config_dir: Path | None = None) -> None:
        self.config_dir = config_dir or settings.critical_config_dir
        self._configs: dict[str, dict] = {}

    # -- YAML config ------------------------------------------------------

    def load_config(self, name: str) -> dict:
        """Load and cache one of the reference YAML files."""
        if name in self._configs:
            return self._configs[name]

        config_path = self.config_dir / f"{name}.yaml"
        if not config_path.exists():
            raise FileNotFoundError(f"No configuration found for critical list: {name}")

        with open(config_path) as fh:
            data = yaml.safe_load(fh)

        self._configs[name] = data
        logger.info("Loaded critical list %s", name)
        return data

    # -- Posets -----------------------------------------------------------

    def finite_critical(self) -> dict[str, Poset]:
        """K1-K5."""
        data = self.load_config("posets")
        return {name: _poset_from_spec(spec) for name, spec in data["finite_critical"].items()}

    def tame_critical(self) -> dict[str, Poset]:
        """N0-N5."""
        data = self.load_config("posets")
        return {name: _poset_from_spec(spec) for name, spec in data["tame_critical"].items()}

    def equivalence_patterns(self) -> dict[str, EquivPoset]:
        """N6-N9 realised as antichain posets with equivalence."""
        data = self.load_config("posets")
        return {
            name: pattern_eqposet(spec["big"], list(spec.get("chains", [])))
            for name, spec in data["equivalence_patterns"].items()
        }

    # -- Dyadic sets ------------------------------------------------------

    def mu4_cases(self) -> list[Mu4Case]:
        data = self.load_config("dyadic_mu4")
        skip = set(data.get("not_critical", []))
        return [
            Mu4Case(int(number), frozenset(tuple(row) for row in rows), int(number) not in skip)
            for number, rows in sorted(data["cases"].items(), key=lambda kv: int(kv[0]))
        ]

    def mu4_report(self) -> Mu4Report:
        groups = enumerate_mu4_groups()
        by_rows = {case.rows: case.number for case in self.mu4_cases()}
        report = Mu4Report()
        for group in groups:
            number = by_rows.get(group)
            if number is None:
                report.unlisted.append(group)
            else:
                report.matched[number] = group
        report.missing = sorted(set(by_rows.values()) - set(report.matched))
        if report.unlisted:
            logger.info("%d mu = 4 groups are not in the reference list", len(report.unlisted))
        return report

    def case_of(self, params: tuple[int, ...]) -> Optional[int]:
        """Reference case number of a normalised (l, eq, eq*, eq-, eq+) tuple."""
        for case in self.mu4_cases():
            if params in case.rows:
                return case.number
        return None

    def critical_scan(self, max_points: int = 6) -> CriticalScan:
        """Every critical dyadic set up to ``max_points`` and its transitivity."""
        check_cap("critical scan", max_points, settings.max_enumeration_size)
        scan = CriticalScan(max_points)
        for D in enumerate_dyadic_sets(max_points):
            scan.scanned += 1
            if not is_critical_dyadic(D):
                continue
            scan.critical.append(D)
            if not is_transitive_biequiv(D):
                logger.warning("critical dyadic set with intransitive biequivalence: %s", D.base.labels)
                scan.intransitive.append(D)
        logger.debug("critical scan up to %d points: %d sets, %d critical",
                     max_points, scan.scanned, len(scan.critical))
        return scan
