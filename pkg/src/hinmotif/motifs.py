"""Candidate and reference motif sets.

Candidates are grown from start instances: every search meta path is walked
from each start-instance node whose type matches the path's first type, and
each node reached at the end of a walk is bound into the pattern and the
binding completed by depth-first matching.  Instances that are automorphic
re-bindings of each other are kept once.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property

from .errors import InvalidReference, MissingNode
from .graph import HeteroGraph
from .query import MetaPath, MotifPattern, QuerySpec, instance_violations

CanonicalKey = tuple[str, ...]


@dataclass(frozen=True)
class MotifInstance:
    pattern: MotifPattern
    nodes: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", tuple(self.nodes))
        if len(self.nodes) != self.pattern.size:
            raise ValueError("instance does not bind every slot")

    @classmethod
    def from_binding(cls, pattern: MotifPattern, binding: Mapping[str, str]) -> MotifInstance:
        return cls(pattern, tuple(binding[s] for s in pattern.slot_ids))

    @property
    def binding(self) -> dict[str, str]:
        return dict(zip(self.pattern.slot_ids, self.nodes))

    @cached_property
    def key(self) -> CanonicalKey:
        return canonical_form(self)

    def nodes_of_type(self, node_type: str) -> tuple[str, ...]:
        nodes = self.nodes
        return tuple(nodes[i] for i in self.pattern.positions.get(node_type, ()))

    def __str__(self) -> str:
        return "-".join(self.nodes)


def canonical_form(instance: MotifInstance) -> CanonicalKey:
    """Smallest slot-ordered node tuple over the pattern's automorphisms."""
    nodes = instance.nodes
    return min(tuple(nodes[p[i]] for i in range(len(p))) for p in instance.pattern.automorphisms)


class MotifSet:
    """Insertion-ordered set of instances, unique by canonical key."""

    def __init__(self, pattern: MotifPattern, instances: Iterable[MotifInstance] = ()):
        self.pattern = pattern
        self._by_key: dict[CanonicalKey, MotifInstance] = {}
        for m in instances:
            self.add(m)

    def add(self, instance: MotifInstance) -> bool:
        if instance.pattern != self.pattern:
            raise ValueError("instance belongs to a different pattern")
        if instance.key in self._by_key:
            return False
        self._by_key[instance.key] = instance
        return True

    def __contains__(self, instance: object) -> bool:
        return isinstance(instance, MotifInstance) and instance.key in self._by_key

    def __iter__(self) -> Iterator[MotifInstance]:
        return iter(self._by_key.values())

    def __len__(self) -> int:
        return len(self._by_key)

    def __getitem__(self, i: int) -> MotifInstance:
        return list(self._by_key.values())[i]

    def keys(self) -> list[CanonicalKey]:
        return list(self._by_key)

    def __repr__(self) -> str:
        return f"MotifSet({[str(m) for m in self]})"


CandidateSet = MotifSet
ReferenceSet = MotifSet


def _unique(nodes: Iterable[str]) -> list[str]:
    return list(dict.fromkeys(nodes))


def match_pattern(
    graph: HeteroGraph, pattern: MotifPattern, partial: Mapping[str, str] | None = None
) -> list[MotifInstance]:
    """All completions of ``partial`` whose pattern edges exist in ``graph``.

    Every distinct binding is reported, including automorphic re-bindings.
    """
    partial = dict(partial or {})
    types = pattern.slot_types
    pos = {s: i for i, s in enumerate(pattern.slot_ids)}
    bound: dict[int, str] = {}
    for slot, node in partial.items():
        if slot not in pos:
            raise ValueError(f"unknown slot {slot!r}")
        if node not in graph:
            raise MissingNode(node)
        if graph.node_type(node) != types[pos[slot]]:
            return []
        bound[pos[slot]] = node
    if len(set(bound.values())) != len(bound):
        return []
    for a, b, et in pattern.index_edges:
        if a in bound and b in bound and not graph.has_edge(bound[a], bound[b], et):
            return []

    # Visit order: breadth-first over pattern edges from the bound slots, so
    # each new slot has a bound anchor whose neighbors supply its candidates.
    adj = pattern.adjacency
    order: list[int] = []
    seen = set(bound)
    frontier = sorted(bound) if bound else [0]
    if not bound:
        seen.add(0)
        order.append(0)
    while frontier:
        nxt = []
        for i in frontier:
            for j, _ in adj[i]:
                if j not in seen:
                    seen.add(j)
                    order.append(j)
                    nxt.append(j)
        frontier = nxt

    plan = []
    for step, slot in enumerate(order):
        earlier = set(bound) | set(order[:step])
        checks = [(j, et) for j, et in adj[slot] if j in earlier]
        plan.append((slot, checks))

    results: list[MotifInstance] = []
    binding = dict(bound)
    used = set(bound.values())

    def extend(step: int) -> None:
        if step == len(plan):
            results.append(MotifInstance(pattern, tuple(binding[i] for i in range(len(types)))))
            return
        slot, checks = plan[step]
        if checks:
            anchor, anchor_et = checks[0]
            pool = _unique(graph.typed_neighbors(binding[anchor], types[slot], anchor_et))
            rest = checks[1:]
        else:
            pool = graph.nodes(types[slot])
            rest = []
        for node in pool:
            if node in used:
                continue
            if all(graph.has_edge(binding[j], node, et) for j, et in rest):
                binding[slot] = node
                used.add(node)
                extend(step + 1)
                used.discard(node)
                del binding[slot]

    extend(0)
    return results


def path_termini(graph: HeteroGraph, origin: str, path: MetaPath) -> list[str]:
    """Nodes at which some walk of ``path``'s type sequence from ``origin`` ends.

    Walks may revisit nodes.  The result is in node insertion order.
    """
    if origin not in graph or graph.node_type(origin) != path.start_type:
        return []
    layer = {origin}
    for t, et in zip(path.types[1:], path.hops):
        nxt: set[str] = set()
        for u in layer:
            nxt.update(graph.typed_neighbors(u, t, et))
        layer = nxt
        if not layer:
            break
    return sorted(layer, key=graph.order)


def expand_from(
    graph: HeteroGraph,
    starts: Sequence[MotifInstance | Sequence[str]],
    search_paths: Sequence[MetaPath],
    pattern: MotifPattern,
) -> MotifSet:
    """Candidate set grown from the start instances along the search paths."""
    out = MotifSet(pattern)
    types = pattern.slot_types
    for start in starts:
        inst = start if isinstance(start, MotifInstance) else MotifInstance(pattern, tuple(start))
        if not instance_violations(graph, pattern, inst.nodes):
            out.add(inst)
        for path in search_paths:
            for slot, origin in enumerate(inst.nodes):
                if types[slot] != path.start_type:
                    continue
                for end in path_termini(graph, origin, path):
                    if end == origin:
                        continue
                    end_type = graph.node_type(end)
                    for target, t in zip(pattern.slot_ids, types):
                        if t == end_type:
                            for m in match_pattern(graph, pattern, {target: end}):
                                out.add(m)
    return out


def build_reference_set(spec: QuerySpec, graph: HeteroGraph, candidates: MotifSet) -> MotifSet:
    """Reference set: the candidates, or the user's instances (optionally expanded)."""
    if spec.reference_is_candidates:
        return candidates
    instances = []
    for nodes in spec.reference:  # type: ignore[union-attr]
        problems = instance_violations(graph, spec.pattern, nodes)
        if problems:
            raise InvalidReference("; ".join(problems))
        instances.append(MotifInstance(spec.pattern, tuple(nodes)))
    if spec.expand_reference:
        return expand_from(graph, instances, spec.search_paths, spec.pattern)
    return MotifSet(spec.pattern, instances)
