"""Command runner shared by the CLI and the HTTP layer.

``ClassifierService.run`` takes a command name, an optional validated
document and a ``RunFlags`` bundle, and returns a ``Report``: the text lines
printed by the CLI, the exit status for scripting and a JSON-ready ``data``
dict for the API. Reports never contain timings or other run-dependent
values, so identical input gives byte-identical output.

Exit status: 0 ok, 1 for a Wild / NotFinite / Neither verdict. Input errors
(2) and cap overruns (3) propagate as exceptions carrying ``exit_code``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

from reptype.core.config import Settings, settings
from reptype.core.errors import InputError, SchemaError
from reptype.services.catalog import LIST_IDS, CatalogService
from reptype.services.critical import CriticalSetService
from reptype.services.documents import (
    DyadicDoc,
    EqPosetDoc,
    GraphDoc,
    PosetDoc,
    QuiverDoc,
    RelationDoc,
    build,
)
from reptype.services.oracle import numeric_norm
from reptype.theory.dyadic import DyadicSet, DyadicVerdict, classify_dyadic
from reptype.theory.equiv_posets import EquivPoset, classify_eqposet
from reptype.theory.exact import format_value, parse_extnat
from reptype.theory.graphs import GraphClass, GraphKind, LabeledGraph
from reptype.theory.posets import (
    Poset,
    RepType,
    classify_by_value,
    primitive_value,
    quasiprimitive_value,
    rho_poset,
    verify_faithful_shapes,
    width,
)
from reptype.theory.quivers import MarkedQuiver, classify as classify_quiver
from reptype.theory.relations import Relation, is_p_faithful, norm, p_value
from reptype.theory.separating import mu3, rho_tuple, triangle_group_order

logger = logging.getLogger(__name__)

COMMANDS = (
    "norm",
    "p",
    "faithful",
    "rho",
    "mu",
    "triangle",
    "classify",
    "catalog",
    "verify-faithful",
    "critical-scan",
    "mu4-cases",
    "oracle",
)

_KIND_PHRASE = {
    GraphKind.DYNKIN: "Dynkin",
    GraphKind.EXTENDED_DYNKIN: "extended Dynkin",
    GraphKind.WILD: "wild",
    GraphKind.FINITE_TYPE: "finite type",
    GraphKind.AFFINE_TYPE: "affine type",
    GraphKind.NEITHER: "neither finite nor affine type",
}
_FAILING_KINDS = {GraphKind.WILD, GraphKind.NEITHER}
_FAILING_TYPES = {RepType.WILD, RepType.NOT_FINITE}


# ---------------------------------------------------------------------------
# Data classes
# ---------------------------------------------------------------------------

@dataclass
class RunFlags:
    """Switches shared by every command; ``None`` means the configured default."""

    cap: Optional[int] = None
    edge_order: Optional[str] = None
    cond_a_scope: Optional[str] = None
    motif: Optional[str] = None
    decimal: bool = False
    witness: bool = False
    mode: str = "integral"
    kind: Optional[str] = None
    bound: int = 8
    max_n: int = 6
    max_points: int = 5
    depth: Optional[int] = None
    args: list[str] = field(default_factory=list)


@dataclass
class Report:
    lines: list[str] = field(default_factory=list)
    exit_code: int = 0
    data: dict[str, Any] = field(default_factory=dict)

    def add(self, line: str) -> None:
        self.lines.append(line)

    @property
    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


def effective_settings(flags: RunFlags) -> Settings:
    """Settings with the semantic switches of ``flags`` applied."""
    update: dict[str, Any] = {}
    choices = {
        "edge_order": ("containment", "literal"),
        "condition_a_scope": ("all", "long"),
        "condition_c_motif": ("ordered", "strict"),
    }
    given = {
        "edge_order": flags.edge_order,
        "condition_a_scope": flags.cond_a_scope,
        "condition_c_motif": flags.motif,
    }
    for name, value in given.items():
        if value is None:
            continue
        if value not in choices[name]:
            raise SchemaError(f"{name}: expected one of {', '.join(choices[name])}, got {value!r}")
        update[name] = value
    if flags.cap is not None:
        if flags.cap < 0:
            raise SchemaError(f"cap: must be non-negative, got {flags.cap}")
        update.update(
            max_relation_size=flags.cap,
            max_poset_size=flags.cap,
            max_enumeration_size=flags.cap,
        )
    return settings.model_copy(update=update) if update else settings


def _tuple_text(values: Sequence[object]) -> str:
    return "(" + ", ".join(format_value(v) for v in values) + ")"


# ---------------------------------------------------------------------------
# Service
# ---------------------------------------------------------------------------

class ClassifierService:
    """Runs one command and renders its report."""

    def __init__(
        self,
        catalog: Optional[CatalogService] = None,
        critical: Optional[CriticalSetService] = None,
    ) -> None:
        self.catalog = catalog or CatalogService()
        self.critical = critical or CriticalSetService()

    def run(self, command: str, document: Any = None, flags: Optional[RunFlags] = None) -> Report:
        flags = flags or RunFlags()
        if command not in COMMANDS:
            raise SchemaError(f"unknown command {command!r}")
        cfg = effective_settings(flags)
        handler = getattr(self, "_cmd_" + command.replace("-", "_"))
        logger.debug("running %s", command)
        return handler(document, flags, cfg)

    # -- helpers ----------------------------------------------------------

    @staticmethod
    def _relation(document: Any) -> Relation:
        if isinstance(document, Relation):
            return document
        if not isinstance(document, RelationDoc):
            raise SchemaError("kind: expected a relation document")
        return build(document)  # type: ignore[return-value]

    @staticmethod
    def _numbers(flags: RunFlags, count: Optional[int] = None) -> list[Any]:
        if not flags.args:
            raise InputError("expected at least one argument")
        if count is not None and len(flags.args) != count:
            raise InputError(f"expected exactly {count} arguments, got {len(flags.args)}")
        return [parse_extnat(a) for a in flags.args]

    # -- relations --------------------------------------------------------

    def _cmd_norm(self, document: Any, flags: RunFlags, cfg: Settings) -> Report:
        R = self._relation(document)
        cert = norm(R, cfg.max_relation_size)
        report = Report(data={"value": format_value(cert.value), "p": format_value(cert.p)})
        report.add(f"norm = {format_value(cert.value, flags.decimal)}")
        report.add(f"P = {format_value(cert.p, flags.decimal)}")
        report.data["witness"] = [format_value(x) for x in cert.witness]
        report.data["support"] = list(cert.support)
        if flags.witness:
            report.add(f"witness = {_tuple_text(cert.witness)}")
            report.add("support = {" + ", ".join(str(i) for i in cert.support) + "}")
        return report

    def _cmd_p(self, document: Any, flags: RunFlags, cfg: Settings) -> Report:
        value = p_value(self._relation(document), cfg.max_relation_size)
        report = Report(data={"p": format_value(value)})
        report.add(f"P = {format_value(value, flags.decimal)}")
        return report

    def _cmd_faithful(self, document: Any, flags: RunFlags, cfg: Settings) -> Report:
        result = is_p_faithful(self._relation(document), cfg.max_relation_size)
        report = Report(
            data={
                "faithful": result.faithful,
                "p": format_value(result.p),
                "witness": result.witness,
            }
        )
        report.add(f"P-faithful: {'yes' if result.faithful else 'no'}")
        report.add(f"P = {format_value(result.p, flags.decimal)}")
        if result.witness is not None:
            report.add(f"removable element {result.witness} leaves P unchanged")
        if flags.witness:
            for s, value in sorted(result.reduced.items()):
                report.add(f"P without {s} = {format_value(value, flags.decimal)}")
        return report

    # -- separating functions ---------------------------------------------

    def _cmd_rho(self, document: Any, flags: RunFlags, cfg: Settings) -> Report:
        value = rho_tuple(self._numbers(flags))
        report = Report(data={"rho": format_value(value)})
        report.add(format_value(value, flags.decimal))
        return report

    def _cmd_mu(self, document: Any, flags: RunFlags, cfg: Settings) -> Report:
        value = mu3(*self._numbers(flags, 3))
        report = Report(data={"mu": format_value(value)})
        report.add(format_value(value, flags.decimal))
        return report

    def _cmd_triangle(self, document: Any, flags: RunFlags, cfg: Settings) -> Report:
        value = triangle_group_order(*self._numbers(flags, 3))
        report = Report(data={"order": format_value(value)})
        report.add(format_value(value))
        return report

    # -- classification ---------------------------------------------------

    def _cmd_classify(self, document: Any, flags: RunFlags, cfg: Settings) -> Report:
        kind = getattr(document, "kind", None)
        if kind is None:
            raise SchemaError("kind: classify needs a kind-tagged document")
        if flags.kind is not None and flags.kind != kind:
            raise SchemaError(f"kind: expected {flags.kind}, got {kind}")
        obj = build(document)
        if isinstance(document, DyadicDoc):
            return self.classify_dyadic(obj, flags, cfg)  # type: ignore[arg-type]
        if isinstance(document, EqPosetDoc):
            return self.classify_eqposet(obj, flags)  # type: ignore[arg-type]
        if isinstance(document, PosetDoc):
            return self.classify_poset(obj, flags, cfg)  # type: ignore[arg-type]
        if isinstance(document, GraphDoc):
            return self.classify_graph(obj, flags)  # type: ignore[arg-type]
        if isinstance(document, QuiverDoc):
            return self.classify_quiver(obj, flags)  # type: ignore[arg-type]
        raise SchemaError(f"kind: cannot classify a {kind} document")

    def classify_poset(self, S: Poset, flags: RunFlags, cfg: Settings = settings) -> Report:
        rho = rho_poset(S, cfg.max_poset_size)
        verdict = classify_by_value(rho)
        report = Report(data={"kind": "poset", "verdict": verdict.value, "rho": format_value(rho)})
        report.add(f"{verdict.value}; rho = {format_value(rho, flags.decimal)}")
        if flags.witness:
            report.add(f"width = {width(S)}")
            report.add(f"primitive value = {format_value(primitive_value(S, cfg.max_poset_size), flags.decimal)}")
            report.add(f"quasiprimitive value = {quasiprimitive_value(S, cfg.max_poset_size)}")
        report.exit_code = int(verdict in _FAILING_TYPES)
        return report

    def classify_eqposet(self, S: EquivPoset, flags: RunFlags) -> Report:
        rho, mu = S.rho(), S.mu()
        verdict = classify_eqposet(S)
        report = Report(
            data={
                "kind": "eqposet",
                "verdict": verdict.value,
                "rho": format_value(rho),
                "mu": format_value(mu),
            }
        )
        report.add(
            f"{verdict.value}; rho = {format_value(rho, flags.decimal)}, mu = {format_value(mu, flags.decimal)}"
        )
        if flags.witness:
            labels = S.base.labels
            weights = ", ".join(f"{labels[d]}={format_value(w)}" for d, w in sorted(S.weights.items()))
            report.add(f"weights: {weights}")
        report.exit_code = int(verdict in _FAILING_TYPES)
        return report

    def classify_dyadic(self, D: DyadicSet, flags: RunFlags, cfg: Settings = settings) -> Report:
        verdict = classify_dyadic(
            D,
            order=cfg.edge_order,
            scope=cfg.condition_a_scope,
            motif=cfg.condition_c_motif,
        )
        rep_type = RepType.FINITE if verdict.finite else RepType.NOT_FINITE
        report = Report(
            data={
                "kind": "dyadic",
                "verdict": rep_type.value,
                "rho_tilde": format_value(verdict.rho_tilde),
                "reason": verdict.reason,
            }
        )
        report.add(f"{rep_type.value}; rho~ = {format_value(verdict.rho_tilde, flags.decimal)}")
        if verdict.failure is not None:
            report.add(self._failure_line(D, verdict))
        if verdict.components:
            report.add(f"components: {len(verdict.components)}")
        if verdict.bounds is not None:
            b = verdict.bounds
            state = "hold" if b.holds else "fail"
            report.add(
                f"necessary bounds {state}: rho = {format_value(b.rho, flags.decimal)}, "
                f"mu = {format_value(b.mu, flags.decimal)}"
            )
            report.data["necessary_bounds"] = {"rho": format_value(b.rho), "mu": format_value(b.mu)}
        if not verdict.finite:
            report.add("tame versus wild is not decided for dyadic sets")
        report.exit_code = int(not verdict.finite)
        return report

    def _failure_line(self, D: DyadicSet, verdict: DyadicVerdict) -> str:
        failure = verdict.failure
        assert failure is not None
        labels = D.base.labels
        edge = "" if failure.edge is None else f" at edge ({labels[failure.edge[0]]}, {labels[failure.edge[1]]})"
        if failure.condition == "rho":
            return f"rho~ >= 4{edge}"
        if failure.condition == "A":
            params = failure.detail["parameters"]
            line = (
                f"condition A fails{edge}: (l, eq, eq*, eq-, eq+) = {_tuple_text(params.as_tuple())}, "
                f"mu = {format_value(failure.detail['mu'])}"
            )
            case = self.critical.case_of(params.as_tuple())
            return line if case is None else f"{line}, reference case {case}"
        if failure.condition == "B":
            return f"condition B fails{edge}: end {labels[failure.detail['end']]} has incomparable points"
        return f"condition C fails{edge}: eq = {_tuple_text(failure.detail['eq'])}"

    def classify_graph(self, G: LabeledGraph, flags: RunFlags) -> Report:
        result: GraphClass = self.catalog.classify(G, flags.mode)
        phrase = _KIND_PHRASE[result.kind]
        head = phrase if result.name is None else f"{phrase} {result.name}"
        report = Report(data={"kind": "graph", "verdict": result.kind.value, "name": result.name})
        if result.witness is not None:
            w = result.witness
            value = format_value(w.value, flags.decimal)
            report.add(f"{head}; max rho-degree {value} at {w.vertex}")
            report.data["witness"] = {"vertex": w.vertex, "value": format_value(w.value)}
        else:
            report.add(head)
        report.exit_code = int(result.kind in _FAILING_KINDS)
        return report

    def classify_quiver(self, MQ: MarkedQuiver, flags: RunFlags) -> Report:
        verdict = classify_quiver(MQ)
        report = Report(
            data={
                "kind": "quiver",
                "verdict": verdict.rep_type.value,
                "route": verdict.route,
                "t": verdict.t,
                "vertex": verdict.vertex,
                "notes": list(verdict.notes),
            }
        )
        line = f"{verdict.rep_type.value}; route {verdict.route}"
        if verdict.t is not None:
            line += f", t = {verdict.t}"
        if verdict.vertex is not None:
            line += f" at {verdict.vertex}"
        report.add(line)
        for note in verdict.notes:
            report.add(f"note: {note}")
        report.exit_code = int(verdict.rep_type in _FAILING_TYPES)
        return report

    # -- reference data ---------------------------------------------------

    def _cmd_catalog(self, document: Any, flags: RunFlags, cfg: Settings) -> Report:
        if len(flags.args) != 1 or flags.args[0] not in LIST_IDS:
            raise InputError(f"catalog needs one list id out of {', '.join(LIST_IDS)}")
        list_id = flags.args[0]
        entries = self.catalog.members(list_id, flags.bound)
        cfg_list = self.catalog.load_config(list_id)
        report = Report(data={"list": list_id, "name": cfg_list.name, "members": []})
        report.add(f"list {list_id}: {cfg_list.name} ({len(entries)} members up to {flags.bound})")
        for entry in entries:
            alias = f" = {', '.join(entry.aliases)}" if entry.aliases else ""
            report.add(f"{entry.name}{alias}: {len(entry.graph.vertices)} vertices")
            report.data["members"].append(entry.to_dict())
        return report

    def _cmd_verify_faithful(self, document: Any, flags: RunFlags, cfg: Settings) -> Report:
        scan = verify_faithful_shapes(flags.max_n, cfg.max_enumeration_size)
        report = Report(
            data={
                "checked": scan.checked,
                "faithful": len(scan.faithful),
                "counterexamples": [S.covers() for S in scan.counterexamples],
            }
        )
        for n, count in sorted(scan.checked.items()):
            report.add(f"n = {n}: {count} connected posets")
        report.add(f"P-faithful: {len(scan.faithful)}")
        report.add(f"outside chains and uniform wattles: {len(scan.counterexamples)}")
        for S in scan.counterexamples:
            report.add(f"  covers {S.covers()}")
        report.exit_code = int(bool(scan.counterexamples))
        return report

    def _cmd_critical_scan(self, document: Any, flags: RunFlags, cfg: Settings) -> Report:
        scan = self.critical.critical_scan(flags.max_points)
        report = Report(
            data={
                "max_points": scan.max_points,
                "scanned": scan.scanned,
                "critical": len(scan.critical),
                "intransitive": len(scan.intransitive),
            }
        )
        report.add(f"scanned {scan.scanned} dyadic sets up to {scan.max_points} points")
        report.add(f"critical: {len(scan.critical)}")
        report.add(f"critical with intransitive biequivalence: {len(scan.intransitive)}")
        return report

    def _cmd_mu4_cases(self, document: Any, flags: RunFlags, cfg: Settings) -> Report:
        result = self.critical.mu4_report()
        report = Report(
            data={
                "matched": sorted(result.matched),
                "missing": result.missing,
                "unlisted": [sorted(g) for g in result.unlisted],
            }
        )
        for case in self.critical.mu4_cases():
            state = "found" if case.number in result.matched else "missing"
            suffix = "" if case.critical else " (not critical)"
            report.add(f"case {case.number}: {state}{suffix}")
        for group in sorted(sorted(g) for g in result.unlisted):
            report.add("unlisted: " + " or ".join(_tuple_text(row) for row in group))
        report.exit_code = int(not result.complete)
        return report

    # -- oracles ----------------------------------------------------------

    def _cmd_oracle(self, document: Any, flags: RunFlags, cfg: Settings) -> Report:
        if flags.args[:1] != ["norm"]:
            raise InputError("oracle supports: norm")
        R = self._relation(document)
        exact = norm(R, cfg.max_relation_size).value
        result = numeric_norm(R, flags.depth)
        gap = result.value - float(exact)
        report = Report(
            data={
                "numeric": result.value,
                "exact": format_value(exact),
                "iterations": result.iterations,
                "gap": gap,
            }
        )
        report.add(f"numeric norm = {result.value:.12g} after {result.iterations} sweeps")
        report.add(f"exact norm = {format_value(exact, flags.decimal)}")
        report.add(f"gap = {gap:.3g}")
        if gap < -1e-12:
            logger.error("numeric probe %.12g undershoots exact norm %s", result.value, exact)
            report.exit_code = 1
        return report