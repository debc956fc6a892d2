"""Meta paths, motif patterns and the query document.

A query names a motif pattern, one or more start instances of it, the meta
paths used to grow the candidate set, and the symmetric meta paths used to
score candidates against a reference set.
"""

from __future__ import annotations

import itertools
import json
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Any, NamedTuple

from .errors import QueryParseError
from .graph import HeteroGraph

CANDIDATES = "candidates"


class Metric(Enum):
    """Node-pair similarity aggregated into the motif outlier score.

    ``RAW_COUNT`` (alias ``MOS``) sums plain symmetric-path counts.
    """

    RAW_COUNT = "mos"
    PATHSIM = "pathsim"
    COSSIM = "cossim"
    NORMCON = "normcon"
    MOS = "mos"

    @classmethod
    def parse(cls, value: str | Metric) -> Metric:
        if isinstance(value, Metric):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            names = ", ".join(m.value for m in cls if m.name != "MOS")
            raise ValueError(f"unknown metric {value!r} (expected one of {names})") from None


class HalfPath(NamedTuple):
    types: tuple[str, ...]
    edge_types: tuple[str | None, ...]


@dataclass(frozen=True)
class MetaPath:
    types: tuple[str, ...]
    edge_types: tuple[str | None, ...] | None = None
    weight: float = 1.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "types", tuple(self.types))
        if len(self.types) < 2:
            raise ValueError("a meta path needs at least two node types")
        if self.edge_types is not None:
            ets = tuple(self.edge_types)
            if len(ets) != len(self.types) - 1:
                raise ValueError("edge_types must have one entry per hop")
            object.__setattr__(self, "edge_types", None if all(e is None for e in ets) else ets)
        if not self.weight > 0:
            raise ValueError(f"meta path weight must be positive, got {self.weight}")

    def __len__(self) -> int:
        return len(self.types)

    def __str__(self) -> str:
        return "-".join(self.types)

    @property
    def hops(self) -> tuple[str | None, ...]:
        return self.edge_types if self.edge_types is not None else (None,) * (len(self.types) - 1)

    def reversed(self) -> MetaPath:
        ets = None if self.edge_types is None else tuple(reversed(self.edge_types))
        return MetaPath(tuple(reversed(self.types)), ets, self.weight)

    @property
    def start_type(self) -> str:
        return self.types[0]

    @property
    def end_type(self) -> str:
        return self.types[-1]

    def half(self) -> HalfPath:
        """Prefix searched from each end of a symmetric path.

        Odd lengths keep the center type; even lengths stop left of the
        central hop, which is then crossed by :attr:`center_hop`.
        """
        h = (len(self.types) + 1) // 2
        return HalfPath(self.types[:h], self.hops[: h - 1])

    @property
    def center_hop(self) -> str | None:
        """Edge type of the middle hop of an even-length path (``None`` = any)."""
        if len(self.types) % 2:
            raise ValueError(f"{self} has a center node, not a center hop")
        return self.hops[len(self.types) // 2 - 1]


def is_symmetric(path: MetaPath) -> bool:
    return path.types == tuple(reversed(path.types)) and path.hops == tuple(reversed(path.hops))


def symmetrize(path: MetaPath) -> MetaPath:
    """Path followed by its own reverse, the pivot type appearing once."""
    types = path.types + tuple(reversed(path.types))[1:]
    ets = None
    if path.edge_types is not None:
        ets = path.edge_types + tuple(reversed(path.edge_types))
    return MetaPath(types, ets, path.weight)


def first_half(path: MetaPath) -> MetaPath:
    h = path.half()
    return MetaPath(h.types, h.edge_types, path.weight)


@dataclass(frozen=True)
class MotifPattern:
    """Typed template: slots ``(slot id, node type)`` and undirected slot edges.

    Pattern edges are ``(slot, slot, edge type or None)``.
    """

    slots: tuple[tuple[str, str], ...]
    edges: tuple[tuple[str, str, str | None], ...] = ()

    def __post_init__(self) -> None:
        slots = tuple((str(s), str(t)) for s, t in self.slots)
        edges = tuple(
            (e[0], e[1], e[2] if len(e) > 2 else None) for e in self.edges  # type: ignore[misc]
        )
        object.__setattr__(self, "slots", slots)
        object.__setattr__(self, "edges", edges)
        ids = [s for s, _ in slots]
        if not ids:
            raise ValueError("pattern needs at least one slot")
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate slot id")
        known = set(ids)
        seen = set()
        for a, b, _ in edges:
            if a not in known or b not in known:
                raise ValueError(f"pattern edge {a}-{b} names an unknown slot")
            if a == b:
                raise ValueError(f"pattern edge {a}-{b} is a self-loop")
            pair = frozenset((a, b))
            if pair in seen:
                raise ValueError(f"duplicate pattern edge {a}-{b}")
            seen.add(pair)
        if not self._connected():
            raise ValueError("pattern is not connected")

    def _connected(self) -> bool:
        adj = self.adjacency
        todo, seen = [0], {0}
        while todo:
            i = todo.pop()
            for j, _ in adj[i]:
                if j not in seen:
                    seen.add(j)
                    todo.append(j)
        return len(seen) == len(self.slots)

    @property
    def size(self) -> int:
        return len(self.slots)

    @cached_property
    def slot_ids(self) -> tuple[str, ...]:
        return tuple(s for s, _ in self.slots)

    @cached_property
    def slot_types(self) -> tuple[str, ...]:
        return tuple(t for _, t in self.slots)

    @cached_property
    def positions(self) -> dict[str, tuple[int, ...]]:
        """Slot indices grouped by node type."""
        out: dict[str, list[int]] = {}
        for i, t in enumerate(self.slot_types):
            out.setdefault(t, []).append(i)
        return {t: tuple(ix) for t, ix in out.items()}

    def index(self, slot: str) -> int:
        return self.slot_ids.index(slot)

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, str | None], ...], ...]:
        """Per slot index: ``(neighbor slot index, edge type)`` in pattern order."""
        pos = {s: i for i, (s, _) in enumerate(self.slots)}
        adj: list[list[tuple[int, str | None]]] = [[] for _ in self.slots]
        for a, b, et in self.edges:
            adj[pos[a]].append((pos[b], et))
            adj[pos[b]].append((pos[a], et))
        return tuple(tuple(sorted(x, key=lambda p: p[0])) for x in adj)

    @cached_property
    def index_edges(self) -> tuple[tuple[int, int, str | None], ...]:
        pos = {s: i for i, (s, _) in enumerate(self.slots)}
        return tuple((pos[a], pos[b], et) for a, b, et in self.edges)

    @cached_property
    def automorphisms(self) -> tuple[tuple[int, ...], ...]:
        """Slot permutations preserving slot types and typed pattern edges."""
        types = self.slot_types
        edge_set = {(frozenset((a, b)), et) for a, b, et in self.index_edges}
        n = len(types)
        perms = []
        for perm in itertools.permutations(range(n)):
            if any(types[perm[i]] != types[i] for i in range(n)):
                continue
            if all((frozenset((perm[a], perm[b])), et) in edge_set for a, b, et in self.index_edges):
                perms.append(perm)
        return tuple(perms)

    def as_dict(self) -> dict:
        return {
            "slots": [{"id": s, "type": t} for s, t in self.slots],
            "edges": [[a, b] if et is None else [a, b, et] for a, b, et in self.edges],
        }


@dataclass(frozen=True)
class QuerySpec:
    pattern: MotifPattern
    start: tuple[tuple[str, ...], ...]
    search_paths: tuple[MetaPath, ...]
    score_paths: tuple[MetaPath, ...]
    # CANDIDATES, or user-provided instances in slot order
    reference: str | tuple[tuple[str, ...], ...] = CANDIDATES
    expand_reference: bool = False
    metric: Metric = Metric.RAW_COUNT
    top_k: int = 10
    degree_thresholds: Mapping[str, int] = field(default_factory=dict)

    @property
    def reference_is_candidates(self) -> bool:
        return self.reference == CANDIDATES

    def with_overrides(self, **changes: Any) -> QuerySpec:
        from dataclasses import replace

        return replace(self, **changes)


# -- document parsing ------------------------------------------------------


def _fail(path: str, msg: str) -> QueryParseError:
    return QueryParseError(path, msg)


def _str_list(value: Any, path: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(v, str) and v for v in value):
        raise _fail(path, "expected a list of non-empty strings")
    return value


def _parse_path(value: Any, path: str, *, allow_weight: bool) -> MetaPath:
    if isinstance(value, list):
        types, ets, weight = _str_list(value, path), None, 1.0
    elif isinstance(value, Mapping):
        unknown = set(value) - {"types", "edge_types", "weight"}
        if unknown:
            raise _fail(path, f"unknown keys {sorted(unknown)}")
        if "types" not in value:
            raise _fail(f"{path}.types", "missing")
        types = _str_list(value["types"], f"{path}.types")
        ets = value.get("edge_types")
        if ets is not None:
            if not isinstance(ets, list) or not all(e is None or isinstance(e, str) for e in ets):
                raise _fail(f"{path}.edge_types", "expected a list of strings or nulls")
        weight = value.get("weight", 1.0)
        if not allow_weight and "weight" in value:
            raise _fail(f"{path}.weight", "weights apply to score paths only")
        if isinstance(weight, bool) or not isinstance(weight, (int, float)):
            raise _fail(f"{path}.weight", "expected a number")
    else:
        raise _fail(path, "expected a list of types or an object")
    try:
        return MetaPath(tuple(types), None if ets is None else tuple(ets), float(weight))
    except ValueError as exc:
        raise _fail(path, str(exc)) from None


def _parse_instance(value: Any, pattern: MotifPattern, path: str) -> tuple[str, ...]:
    if isinstance(value, Mapping):
        missing = [s for s in pattern.slot_ids if s not in value]
        extra = sorted(set(value) - set(pattern.slot_ids))
        if missing:
            raise _fail(path, f"unbound slots {missing}")
        if extra:
            raise _fail(path, f"unknown slots {extra}")
        nodes = [value[s] for s in pattern.slot_ids]
    elif isinstance(value, list):
        if len(value) != pattern.size:
            raise _fail(path, f"expected {pattern.size} node ids")
        nodes = value
    else:
        raise _fail(path, "expected an object mapping slot ids to node ids")
    if not all(isinstance(n, str) and n for n in nodes):
        raise _fail(path, "node ids must be non-empty strings")
    return tuple(nodes)


_KEYS = {
    "pattern", "start", "search_paths", "score_paths", "reference",
    "metric", "top_k", "degree_thresholds",
}


def parse_query(document: Mapping[str, Any] | str | bytes) -> QuerySpec:
    """Validate a query document (JSON text or decoded object) into a QuerySpec."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise _fail("", f"invalid JSON: {exc}") from None
    if not isinstance(document, Mapping):
        raise _fail("", "query document must be a JSON object")
    unknown = set(document) - _KEYS
    if unknown:
        raise _fail("", f"unknown keys {sorted(unknown)}")

    pat = document.get("pattern")
    if not isinstance(pat, Mapping):
        raise _fail("pattern", "missing or not an object")
    raw_slots = pat.get("slots")
    if not isinstance(raw_slots, list) or not raw_slots:
        raise _fail("pattern.slots", "expected a non-empty list")
    slots = []
    for i, s in enumerate(raw_slots):
        if not isinstance(s, Mapping) or not isinstance(s.get("id"), str) or not isinstance(s.get("type"), str):
            raise _fail(f"pattern.slots[{i}]", "expected {id, type} strings")
        slots.append((s["id"], s["type"]))
    edges = []
    for i, e in enumerate(pat.get("edges", [])):
        if not isinstance(e, list) or len(e) not in (2, 3) or not all(isinstance(x, str) for x in e):
            raise _fail(f"pattern.edges[{i}]", "expected [slot, slot] or [slot, slot, edge_type]")
        edges.append(tuple(e) if len(e) == 3 else (e[0], e[1], None))
    try:
        pattern = MotifPattern(tuple(slots), tuple(edges))
    except ValueError as exc:
        raise _fail("pattern", str(exc)) from None

    raw_start = document.get("start")
    if isinstance(raw_start, Mapping):
        raw_start = [raw_start]
    if not isinstance(raw_start, list) or not raw_start:
        raise _fail("start", "expected at least one start instance")
    start = tuple(_parse_instance(v, pattern, f"start[{i}]") for i, v in enumerate(raw_start))

    raw_search = document.get("search_paths", [])
    if not isinstance(raw_search, list):
        raise _fail("search_paths", "expected a list")
    search = tuple(
        _parse_path(v, f"search_paths[{i}]", allow_weight=False) for i, v in enumerate(raw_search)
    )

    raw_score = document.get("score_paths")
    if not isinstance(raw_score, list) or not raw_score:
        raise _fail("score_paths", "expected a non-empty list")
    score = []
    pattern_types = set(pattern.slot_types)
    for i, v in enumerate(raw_score):
        mp = _parse_path(v, f"score_paths[{i}]", allow_weight=True)
        if not is_symmetric(mp):
            raise _fail(f"score_paths[{i}]", f"score path not symmetric: {mp}")
        if mp.start_type not in pattern_types:
            raise _fail(f"score_paths[{i}]", f"score path end type {mp.start_type!r} is not a pattern slot type")
        score.append(mp)

    reference: str | tuple[tuple[str, ...], ...] = CANDIDATES
    expand_ref = False
    raw_ref = document.get("reference", CANDIDATES)
    if isinstance(raw_ref, Mapping):
        unknown = set(raw_ref) - {"instances", "expand"}
        if unknown:
            raise _fail("reference", f"unknown keys {sorted(unknown)}")
        expand_ref = raw_ref.get("expand", False)
        if not isinstance(expand_ref, bool):
            raise _fail("reference.expand", "expected a boolean")
        raw_ref = raw_ref.get("instances")
        ref_path = "reference.instances"
    else:
        ref_path = "reference"
    if raw_ref == CANDIDATES:
        if expand_ref:
            raise _fail("reference.expand", "only applies to user-provided instances")
    elif isinstance(raw_ref, list) and raw_ref:
        reference = tuple(
            _parse_instance(v, pattern, f"{ref_path}[{i}]") for i, v in enumerate(raw_ref)
        )
    else:
        raise _fail(ref_path, "expected \"candidates\" or a non-empty list of instances")

    try:
        metric = Metric.parse(document.get("metric", "mos"))
    except ValueError as exc:
        raise _fail("metric", str(exc)) from None

    top_k = document.get("top_k", 10)
    if isinstance(top_k, bool) or not isinstance(top_k, int) or top_k < 1:
        raise _fail("top_k", "expected a positive integer")

    raw_thr = document.get("degree_thresholds", {})
    if not isinstance(raw_thr, Mapping):
        raise _fail("degree_thresholds", "expected an object")
    thresholds = {}
    for t, v in raw_thr.items():
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            raise _fail(f"degree_thresholds.{t}", "expected a nonnegative integer")
        thresholds[t] = v

    return QuerySpec(
        pattern=pattern,
        start=start,
        search_paths=search,
        score_paths=tuple(score),
        reference=reference,
        expand_reference=expand_ref,
        metric=metric,
        top_k=top_k,
        degree_thresholds=thresholds,
    )


def _path_doc(mp: MetaPath, *, weighted: bool) -> Any:
    if not weighted and mp.edge_types is None:
        return list(mp.types)
    doc: dict[str, Any] = {"types": list(mp.types)}
    if mp.edge_types is not None:
        doc["edge_types"] = list(mp.edge_types)
    if weighted:
        doc["weight"] = mp.weight
    return doc


def serialize_query(spec: QuerySpec) -> dict[str, Any]:
    ids = spec.pattern.slot_ids

    def inst(nodes: Sequence[str]) -> dict[str, str]:
        return dict(zip(ids, nodes))

    if spec.reference_is_candidates:
        reference: Any = CANDIDATES
    else:
        reference = [inst(n) for n in spec.reference]  # type: ignore[union-attr]
        if spec.expand_reference:
            reference = {"instances": reference, "expand": True}
    return {
        "pattern": spec.pattern.as_dict(),
        "start": [inst(n) for n in spec.start],
        "search_paths": [_path_doc(p, weighted=False) for p in spec.search_paths],
        "score_paths": [_path_doc(p, weighted=True) for p in spec.score_paths],
        "reference": reference,
        "metric": spec.metric.value,
        "top_k": spec.top_k,
        "degree_thresholds": dict(spec.degree_thresholds),
    }


# -- validation against a graph --------------------------------------------


def _instance_violations(
    graph: HeteroGraph, pattern: MotifPattern, nodes: Sequence[str], where: str
) -> list[str]:
    out = []
    ok = True
    for (slot, stype), node in zip(pattern.slots, nodes):
        if node not in graph:
            out.append(f"{where}.{slot}: node {node!r} not in graph")
            ok = False
        elif graph.node_type(node) != stype:
            out.append(f"{where}.{slot}: node {node!r} has type {graph.node_type(node)!r}, expected {stype!r}")
            ok = False
    if len(set(nodes)) != len(nodes):
        out.append(f"{where}: the same node is bound to more than one slot")
        ok = False
    if ok:
        for a, b, et in pattern.index_edges:
            if not graph.has_edge(nodes[a], nodes[b], et):
                label = "" if et is None else f" of type {et!r}"
                out.append(f"{where}: pattern edge {nodes[a]}-{nodes[b]}{label} missing in graph")
    return out


def instance_violations(graph: HeteroGraph, pattern: MotifPattern, nodes: Sequence[str]) -> list[str]:
    return _instance_violations(graph, pattern, nodes, "instance")


def _path_violations(graph: HeteroGraph, mp: MetaPath, where: str) -> list[str]:
    out = []
    for t in dict.fromkeys(mp.types):
        if t not in graph.node_types or not graph.nodes(t):
            out.append(f"{where}: unknown node type {t!r}")
    if out:
        return out
    schema = graph.schema()
    for a, b, et in zip(mp.types, mp.types[1:], mp.hops):
        if not any(x == a and y == b and (et is None or z == et) for x, y, z in schema):
            label = "" if et is None else f" of type {et!r}"
            out.append(f"{where}: no edge{label} between types {a!r} and {b!r}")
    return out


def validate(spec: QuerySpec, graph: HeteroGraph) -> list[str]:
    """All problems that prevent running ``spec`` on ``graph``; empty means ok."""
    out: list[str] = []
    for t in dict.fromkeys(spec.pattern.slot_types):
        if t not in graph.node_types or not graph.nodes(t):
            out.append(f"pattern: unknown node type {t!r}")
    for i, nodes in enumerate(spec.start):
        out += _instance_violations(graph, spec.pattern, nodes, f"start[{i}]")
    if not spec.reference_is_candidates:
        for i, nodes in enumerate(spec.reference):  # type: ignore[arg-type]
            out += _instance_violations(graph, spec.pattern, nodes, f"reference[{i}]")
    for i, mp in enumerate(spec.search_paths):
        out += _path_violations(graph, mp, f"search_paths[{i}]")
    for i, mp in enumerate(spec.score_paths):
        out += _path_violations(graph, mp, f"score_paths[{i}]")
    return out
