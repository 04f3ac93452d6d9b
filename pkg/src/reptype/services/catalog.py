"""Catalog service for the four lists of named graphs.

Loads the list YAML files (Dynkin, extended Dynkin, finite and affine
Coxeter), builds every member up to a requested family bound and names an
arbitrary graph by isomorphism against them. The classifiers in
``reptype.theory.graphs`` take ``name_of`` as their namer.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional, Sequence

import networkx as nx
import yaml
from networkx.algorithms.isomorphism import categorical_multiedge_match, categorical_node_match

from reptype.core.config import settings
from reptype.core.errors import SchemaError, check_cap
from reptype.theory.exact import parse_extnat
from reptype.theory.graphs import (
    GraphClass,
    LabeledGraph,
    classify_coxeter,
    classify_integral_fgraph,
    cycle_graph,
    forked_path,
    path_graph,
    star_graph,
)

logger = logging.getLogger(__name__)

LIST_IDS = ("I", "II", "III", "IV")


# ---------------------------------------------------------------------------
# Data classes
# ---------------------------------------------------------------------------

@dataclass
class GraphListConfig:
    """Parsed list YAML."""

    list_id: str
    name: str
    mode: str
    default_f: Any
    families: list[dict] = field(default_factory=list)
    exceptional: list[dict] = field(default_factory=list)
    dihedral: Optional[dict] = None
    aliases: list[dict] = field(default_factory=list)
    raw: dict = field(default_factory=dict, repr=False)


@dataclass
class CatalogEntry:
    name: str
    list_id: str
    graph: LabeledGraph
    aliases: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "list": self.list_id,
            "aliases": self.aliases,
            "vertices": len(self.graph.vertices),
            "edges": [
                {"ends": list(e.ends), "f": str(e.f)} for e in self.graph.edges
            ],
        }


def _build(spec: dict, size: int, default_f: Any) -> LabeledGraph:
    builder = spec["builder"]
    labels = {int(k): parse_extnat(v) for k, v in (spec.get("labels") or {}).items()}
    if builder == "path":
        return path_graph(size, labels, default_f)
    if builder == "cycle":
        return cycle_graph(size, default_f)
    if builder == "star":
        return star_graph(spec["arms"], default_f)
    if builder == "forked_path":
        far = spec.get("far_label")
        return forked_path(
            size,
            far_label=None if far is None else parse_extnat(far),
            far_fork=bool(spec.get("far_fork", False)),
            default=default_f,
        )
    raise SchemaError(f"unknown graph builder {builder!r}")


def _same_graph(G: LabeledGraph, H: LabeledGraph) -> bool:
    if len(G.vertices) != len(H.vertices) or len(G.edges) != len(H.edges):
        return False
    return nx.is_isomorphic(
        G.multigraph(),
        H.multigraph(),
        node_match=categorical_node_match("v", 1),
        edge_match=categorical_multiedge_match("f", 1),
    )


# ---------------------------------------------------------------------------
# Service
# ---------------------------------------------------------------------------

class CatalogService:
    """Named members of lists I-IV."""

    def __init__(self, config_dir: Path | None = None) -> None:
        self.config_dir = config_dir or settings.graphs_config_dir
        self._configs: dict[str, GraphListConfig] = {}

    # -- YAML config ------------------------------------------------------

    def load_config(self, list_id: str) -> GraphListConfig:
        """Load and cache a list YAML config."""
        if list_id in self._configs:
            return self._configs[list_id]

        config_path = self.config_dir / f"list_{list_id.lower()}.yaml"
        if list_id not in LIST_IDS or not config_path.exists():
            raise FileNotFoundError(f"No configuration found for graph list: {list_id}")

        with open(config_path) as fh:
            data = yaml.safe_load(fh)

        cfg = GraphListConfig(
            list_id=data["list_id"],
            name=data["name"],
            mode=data["mode"],
            default_f=parse_extnat(data.get("default_f", 1)),
            families=data.get("families", []),
            exceptional=data.get("exceptional", []),
            dihedral=data.get("dihedral"),
            aliases=data.get("aliases", []),
            raw=data,
        )
        self._configs[list_id] = cfg
        logger.info("Loaded graph list %s (%s)", list_id, cfg.name)
        return cfg

    def get_supported_lists(self) -> list[dict]:
        lists: list[dict] = []
        for list_id in LIST_IDS:
            try:
                cfg = self.load_config(list_id)
                lists.append({"id": cfg.list_id, "name": cfg.name, "mode": cfg.mode})
            except Exception as exc:
                logger.warning("Failed to load list %s: %s", list_id, exc)
        return lists

    # -- Members ----------------------------------------------------------

    def aliases_of(self, list_id: str, name: str) -> list[str]:
        cfg = self.load_config(list_id)
        found: list[str] = []
        for alias in cfg.aliases:
            if "name" in alias:
                if alias["target"] == name:
                    found.append(alias["name"])
                continue
            target = alias["target"]
            if not name.startswith(target) or not name[len(target):].isdigit():
                continue
            l = int(name[len(target):])
            if l >= alias.get("min", 0):
                found.append(f"{alias['family']}{l + alias.get('shift', 0)}")
        return found

    def members(self, list_id: str, bound: int = 8) -> list[CatalogEntry]:
        """Every member with family parameter (or dihedral p) up to ``bound``."""
        cfg = self.load_config(list_id)
        check_cap("catalog bound", bound + 1, settings.max_graph_vertices)
        entries: list[CatalogEntry] = []
        for fam in cfg.families:
            for l in range(fam["min"], bound + 1):
                G = _build(fam, l + fam.get("offset", 0), cfg.default_f)
                entries.append(CatalogEntry(f"{fam['name']}{l}", list_id, G))
        for spec in cfg.exceptional:
            G = _build(spec, spec["size"] if "size" in spec else 0, cfg.default_f)
            entries.append(CatalogEntry(spec["name"], list_id, G))
        if cfg.dihedral:
            values = list(cfg.dihedral.get("values", [])) + list(range(cfg.dihedral["from"], bound + 1))
            for p in values:
                G = path_graph(2, {1: p})
                entries.append(CatalogEntry(f"{cfg.dihedral['name']}({p})", list_id, G))
        for entry in entries:
            entry.aliases = self.aliases_of(list_id, entry.name)
        logger.debug("List %s up to %d: %d members", list_id, bound, len(entries))
        return entries

    def _candidates(self, cfg: GraphListConfig, G: LabeledGraph) -> list[tuple[str, LabeledGraph]]:
        n = len(G.vertices)
        found: list[tuple[str, LabeledGraph]] = []
        for fam in cfg.families:
            l = n - fam.get("offset", 0)
            if l >= fam["min"]:
                found.append((f"{fam['name']}{l}", _build(fam, n, cfg.default_f)))
        for spec in cfg.exceptional:
            size = spec.get("size")
            if size is None or size == n:
                found.append((spec["name"], _build(spec, size or 0, cfg.default_f)))
        if cfg.dihedral and n == 2 and len(G.edges) == 1:
            p = G.edges[0].f
            if isinstance(p, int) and (p in cfg.dihedral.get("values", []) or p >= cfg.dihedral["from"]):
                found.append((f"{cfg.dihedral['name']}({p})", path_graph(2, {1: p})))
        return found

    def name_of(self, G: LabeledGraph, list_ids: Sequence[str] = LIST_IDS) -> Optional[str]:
        """Catalog name of ``G`` by labelled isomorphism, or None."""
        for list_id in list_ids:
            cfg = self.load_config(list_id)
            for name, H in self._candidates(cfg, G):
                if _same_graph(G, H):
                    return name
        return None

    # -- Classification ---------------------------------------------------

    def classify(self, G: LabeledGraph, mode: str = "integral") -> GraphClass:
        if mode == "coxeter":
            return classify_coxeter(G, namer=self.name_of)
        if mode == "integral":
            return classify_integral_fgraph(G, namer=self.name_of)
        raise SchemaError(f"unknown graph mode {mode!r}; use integral or coxeter")
