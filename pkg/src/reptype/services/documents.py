"""Kind-tagged JSON documents.

Every object the classifiers accept travels as one JSON document with a
``kind`` field: relation, poset, eqposet, dyadic, graph or quiver. Indices
are 0-based and the string ``"inf"`` stands for infinity everywhere. Parsing
validates against the pydantic schemas below and then builds the kernel
object; rendering goes the other way.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Annotated, Any, Literal, Optional, Union

from pydantic import BaseModel, Field, TypeAdapter, ValidationError, model_validator

from reptype.core.errors import ParseError, SchemaError, Unsupported
from reptype.theory.dyadic import DyadicSet
from reptype.theory.equiv_posets import EquivPoset
from reptype.theory.exact import Infinity, format_rational, parse_extnat, parse_weight
from reptype.theory.graphs import GraphEdge, LabeledGraph, coxeter_matrix_to_graph
from reptype.theory.posets import Poset, make_poset
from reptype.theory.quivers import DyadicMark, LinearMark, MarkedQuiver, Marking, PosetMark, Quiver
from reptype.theory.relations import Relation

logger = logging.getLogger(__name__)

Label = Union[int, str]
KernelObject = Union[Relation, Poset, EquivPoset, DyadicSet, LabeledGraph, MarkedQuiver]


# ---------------------------------------------------------------------------
# Schemas
# ---------------------------------------------------------------------------

class RelationDoc(BaseModel):
    kind: Literal["relation"] = "relation"
    n: Optional[int] = Field(None, ge=0, description="Number of elements")
    pairs: list[tuple[int, int]] = Field(default_factory=list, description="Pairs (i, j) in R")
    matrix: Optional[list[str]] = Field(None, description="Rows of 0/1 characters")

    @model_validator(mode="after")
    def _one_form(self) -> "RelationDoc":
        if self.matrix is None and self.n is None:
            raise ValueError("give either 'matrix' or 'n' with 'pairs'")
        return self


class PosetDoc(BaseModel):
    kind: Literal["poset"] = "poset"
    n: int = Field(..., ge=0)
    covers: list[tuple[int, int]] = Field(default_factory=list, description="Pairs i < j")
    labels: Optional[list[str]] = None


class EqPosetDoc(PosetDoc):
    kind: Literal["eqposet"] = "eqposet"  # type: ignore[assignment]
    classes: list[list[int]] = Field(default_factory=list, description="Non-singleton classes")


class DyadicDoc(EqPosetDoc):
    kind: Literal["dyadic"] = "dyadic"  # type: ignore[assignment]
    pair_classes: list[list[tuple[int, int]]] = Field(
        default_factory=list, description="Classes of equivalent pairs (s, t), s <= t"
    )


class GraphEdgeDoc(BaseModel):
    ends: list[str] = Field(..., min_length=1, max_length=2)
    f: Label = 1


class GraphDoc(BaseModel):
    kind: Literal["graph"] = "graph"
    vertices: Optional[list[str]] = None
    edges: list[GraphEdgeDoc] = Field(default_factory=list)
    v: dict[str, Label] = Field(default_factory=dict)
    coxeter_matrix: Optional[list[list[Label]]] = Field(
        None, description="Alternative input: symmetric matrix of orders n_ij"
    )


class LinearMarkDoc(BaseModel):
    kind: Literal["linear"] = "linear"
    n: int = Field(1, ge=1)


class ArrowDoc(BaseModel):
    t: str
    h: str


MarkDoc = Annotated[Union[LinearMarkDoc, EqPosetDoc, DyadicDoc], Field(discriminator="kind")]


class QuiverDoc(BaseModel):
    kind: Literal["quiver"] = "quiver"
    vertices: Optional[list[str]] = None
    arrows: list[ArrowDoc] = Field(..., min_length=1)
    marks: dict[str, MarkDoc] = Field(default_factory=dict)


Document = Annotated[
    Union[RelationDoc, PosetDoc, EqPosetDoc, DyadicDoc, GraphDoc, QuiverDoc],
    Field(discriminator="kind"),
]
_adapter: TypeAdapter[Any] = TypeAdapter(Document)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

def _reject_triadic(data: Any) -> None:
    if not isinstance(data, dict):
        return
    marks = data.get("marks") if isinstance(data.get("marks"), dict) else {}
    kinds = [data.get("kind")] + [m.get("kind") for m in marks.values() if isinstance(m, dict)]
    if "triadic" in kinds:
        raise Unsupported("triadic markings are not supported")


def _schema_message(exc: ValidationError) -> str:
    first = exc.errors()[0]
    where = ".".join(str(p) for p in first["loc"]) or "document"
    return f"{where}: {first['msg']}"


def parse_data(data: Any) -> Any:
    """Validate an already decoded JSON value."""
    _reject_triadic(data)
    try:
        return _adapter.validate_python(data)
    except ValidationError as exc:
        raise SchemaError(_schema_message(exc)) from None


def parse(text: str) -> Any:
    """Decode and validate a document."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return parse_data(data)


def load(path: Union[str, Path]) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse(text)


# ---------------------------------------------------------------------------
# Documents to kernel objects
# ---------------------------------------------------------------------------

def _poset(doc: PosetDoc) -> Poset:
    return make_poset(doc.n, doc.covers, doc.labels)


def _marking(doc: Union[LinearMarkDoc, EqPosetDoc, DyadicDoc]) -> Marking:
    if isinstance(doc, LinearMarkDoc):
        return LinearMark(doc.n)
    obj = build(doc)
    return DyadicMark(obj) if isinstance(obj, DyadicSet) else PosetMark(obj)  # type: ignore[arg-type]


def build(doc: Any) -> KernelObject:
    """Kernel object described by a validated document."""
    if isinstance(doc, RelationDoc):
        if doc.matrix is not None:
            return Relation.from_matrix(doc.matrix)
        return Relation.from_pairs(doc.n or 0, doc.pairs)
    if isinstance(doc, DyadicDoc):
        return DyadicSet.build(_poset(doc), doc.pair_classes, doc.classes)
    if isinstance(doc, EqPosetDoc):
        return EquivPoset.from_classes(_poset(doc), doc.classes)
    if isinstance(doc, PosetDoc):
        return _poset(doc)
    if isinstance(doc, GraphDoc):
        if doc.coxeter_matrix is not None:
            return coxeter_matrix_to_graph(doc.coxeter_matrix)
        edges = []
        for e in doc.edges:
            ends = tuple(dict.fromkeys(e.ends))
            edges.append(GraphEdge(ends, parse_weight(e.f)))
        if doc.vertices is not None:
            vertices = list(doc.vertices)
        else:
            vertices = list(dict.fromkeys(end for e in edges for end in e.ends))
            vertices.extend(x for x in doc.v if x not in vertices)
        return LabeledGraph(vertices, edges, {x: parse_extnat(w) for x, w in doc.v.items()})
    if isinstance(doc, QuiverDoc):
        names = list(doc.vertices or [])
        for a in doc.arrows:
            names.extend(x for x in (a.t, a.h) if x not in names)
        for x in doc.marks:
            if x not in names:
                raise SchemaError(f"marks.{x}: not a vertex of the quiver")
        quiver = Quiver(names, [(a.t, a.h) for a in doc.arrows])
        return MarkedQuiver(quiver, {x: _marking(m) for x, m in doc.marks.items()})
    raise SchemaError(f"unknown document type {type(doc).__name__}")


def parse_object(text: str) -> KernelObject:
    return build(parse(text))


# ---------------------------------------------------------------------------
# Kernel objects to documents
# ---------------------------------------------------------------------------

def _label(value: object) -> Label:
    if isinstance(value, Infinity):
        return "inf"
    if isinstance(value, int):
        return value
    try:
        return format_rational(value)  # type: ignore[arg-type]
    except (TypeError, ValueError):
        return str(value)


def _poset_fields(S: Poset) -> dict:
    fields: dict = {"n": S.n, "covers": [list(c) for c in S.covers()]}
    if S.labels != tuple(str(i) for i in range(S.n)):
        fields["labels"] = list(S.labels)
    return fields


def render(obj: KernelObject) -> Any:
    """Document for a kernel object."""
    if isinstance(obj, Relation):
        return RelationDoc(matrix=obj.to_matrix())
    if isinstance(obj, Poset):
        return PosetDoc(**_poset_fields(obj))
    if isinstance(obj, DyadicSet):
        return DyadicDoc(
            **_poset_fields(obj.base),
            classes=[list(c) for c in obj.classes if len(c) > 1],
            pair_classes=[[tuple(p) for p in cls] for cls in obj.pair_classes],
        )
    if isinstance(obj, EquivPoset):
        return EqPosetDoc(**_poset_fields(obj.base), classes=[list(c) for c in obj.classes if len(c) > 1])
    if isinstance(obj, LabeledGraph):
        return GraphDoc(
            vertices=list(obj.vertices),
            edges=[GraphEdgeDoc(ends=list(e.ends), f=_label(e.f)) for e in obj.edges],
            v={x: _label(w) for x, w in obj.v.items() if w != 1},
        )
    if isinstance(obj, MarkedQuiver):
        marks: dict[str, Any] = {}
        for x, mark in obj.marks.items():
            if isinstance(mark, LinearMark):
                marks[x] = LinearMarkDoc(n=mark.n)
            else:
                marks[x] = render(mark.poset if isinstance(mark, PosetMark) else mark.dyadic)
        return QuiverDoc(
            vertices=list(obj.quiver.vertices),
            arrows=[ArrowDoc(t=t, h=h) for t, h in obj.quiver.arrows],
            marks=marks,
        )
    raise SchemaError(f"cannot render {type(obj).__name__}")


def dumps(doc: BaseModel) -> str:
    return doc.model_dump_json(exclude_none=True, indent=2)
