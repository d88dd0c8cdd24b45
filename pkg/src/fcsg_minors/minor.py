"""Graph minors: branch-set search with witnesses, and a delete/contract oracle.

``find_minor_embedding`` is the production decision procedure. It assigns a
connected set of host vertices to every pattern vertex, one pattern vertex at
a time, and backtracks. ``minor_by_operations`` decides the same relation by
exploring vertex deletions and edge contractions followed by edge deletions;
it is exponential and only meant for cross-checking on small hosts.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum

from fcsg_minors.config import DEFAULT_SEARCH_BUDGET, MAX_ORACLE_VERTICES
from fcsg_minors.errors import InputError, ResourceLimitError, SearchBudgetExceeded
from fcsg_minors.graph import (
    SimpleGraph,
    are_isomorphic,
    connected_components,
    edge_endpoints,
    induced_subgraph,
    is_connected,
)
from fcsg_minors.helpers import json_label, label_key

logger = logging.getLogger(__name__)


class OperationKind(str, Enum):
    DELETE_EDGE = "delete_edge"
    DELETE_VERTEX = "delete_vertex"
    CONTRACT_EDGE = "contract_edge"


@dataclass(frozen=True)
class MinorOperation:
    kind: OperationKind
    target: object

    def to_json(self):
        if self.kind is OperationKind.DELETE_VERTEX:
            return {"op": self.kind.value, "vertex": json_label(self.target)}
        return {"op": self.kind.value, "edge": [json_label(v) for v in edge_endpoints(self.target)]}


@dataclass(frozen=True)
class MinorEmbedding:
    """Branch sets V_h for every vertex h of the pattern graph."""

    branch_sets: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "branch_sets": {
                str(h): [json_label(v) for v in sorted(self.branch_sets[h], key=label_key)]
                for h in sorted(self.branch_sets, key=label_key)
            }
        }

    @classmethod
    def from_json(cls, document, H):
        """Parse {"branch_sets": {"h": [...]}}; keys are matched to H's labels by text."""
        if not isinstance(document, dict) or not isinstance(document.get("branch_sets"), dict):
            raise InputError('embedding JSON must be an object with a "branch_sets" object')
        by_text = {str(h): h for h in H.vertices}
        branch_sets = {}
        for key, members in document["branch_sets"].items():
            if key not in by_text:
                raise InputError(f"branch set key {key!r} is not a vertex of the pattern graph")
            if not isinstance(members, list):
                raise InputError(f"branch set of {key!r} must be an array")
            branch_sets[by_text[key]] = frozenset(members)
        return cls(branch_sets)


@dataclass
class EmbeddingReport:
    """Outcome of checking the branch-set conditions one by one."""

    missing_keys: list = field(default_factory=list)
    extra_keys: list = field(default_factory=list)
    empty_sets: list = field(default_factory=list)
    foreign_vertices: list = field(default_factory=list)
    overlaps: list = field(default_factory=list)
    disconnected: list = field(default_factory=list)
    uncovered_edges: list = field(default_factory=list)

    @property
    def clauses(self):
        return {
            "keys": not (self.missing_keys or self.extra_keys),
            "nonempty": not self.empty_sets,
            "inside_host": not self.foreign_vertices,
            "disjoint": not self.overlaps,
            "connected": not self.disconnected,
            "coverage": not self.uncovered_edges,
        }

    @property
    def passed(self):
        return all(self.clauses.values())

    def to_json(self):
        document = {name: "pass" if ok else "fail" for name, ok in self.clauses.items()}
        failures = {
            "missing_keys": [str(h) for h in self.missing_keys],
            "extra_keys": [str(h) for h in self.extra_keys],
            "empty_sets": [str(h) for h in self.empty_sets],
            "foreign_vertices": [str(v) for v in self.foreign_vertices],
            "overlaps": [{"vertex": str(v), "keys": [str(h) for h in hs]} for v, hs in self.overlaps],
            "disconnected": [str(h) for h in self.disconnected],
            "uncovered_edges": [[str(h), str(h2)] for h, h2 in self.uncovered_edges],
        }
        document["failures"] = {name: items for name, items in failures.items() if items}
        return document


def verify_embedding(H, G, embedding):
    """Check every branch-set condition and report each failure by name."""
    report = EmbeddingReport()
    sets = embedding.branch_sets
    report.missing_keys = sorted(H.vertices - set(sets), key=label_key)
    report.extra_keys = sorted(set(sets) - H.vertices, key=label_key)
    owners = {}
    for h in sorted(sets, key=label_key):
        members = sets[h]
        if not members:
            report.empty_sets.append(h)
        for v in sorted(members, key=label_key):
            if v not in G.vertices:
                report.foreign_vertices.append(v)
                continue
            owners.setdefault(v, []).append(h)
        inside = frozenset(v for v in members if v in G.vertices)
        if inside and not is_connected(induced_subgraph(G, inside)):
            report.disconnected.append(h)
    report.overlaps = [(v, hs) for v, hs in sorted(owners.items(), key=lambda item: label_key(item[0])) if len(hs) > 1]
    for h, h2 in H.ordered_edges:
        left, right = sets.get(h, frozenset()), sets.get(h2, frozenset())
        if not any(G.has_edge(x, y) for x in left if x in G.vertices for y in right if y in G.vertices):
            report.uncovered_edges.append((h, h2))
    return report


def apply_operation(G, op):
    """Apply one delete/contract step; contraction keeps the smaller label."""
    if op.kind is OperationKind.DELETE_VERTEX:
        if op.target not in G.vertices:
            raise InputError(f"cannot delete vertex {op.target!r}: not in the graph")
        return SimpleGraph(G.vertices - {op.target}, frozenset(e for e in G.edges if op.target not in e))
    target = frozenset(op.target)
    if target not in G.edges:
        raise InputError(f"cannot apply {op.kind.value}: {sorted(target, key=label_key)} is not an edge")
    if op.kind is OperationKind.DELETE_EDGE:
        return SimpleGraph(G.vertices, G.edges - {target})
    keep, gone = edge_endpoints(target)
    edges = set()
    for e in G.edges:
        if e == target:
            continue
        renamed = frozenset(keep if v == gone else v for v in e)
        if len(renamed) == 2:
            edges.add(renamed)
    return SimpleGraph(G.vertices - {gone}, frozenset(edges))


def _connected_sets(G, allowed, anchors, max_size, charge=None):
    """Connected subsets of G[allowed] meeting ``anchors``, yielded smallest first.

    Exclusive-neighbourhood enumeration, one pass per size: every set is
    produced once, from its lowest-indexed vertex, and anchors are indexed
    first so only anchor roots are needed. ``charge`` is called once per
    enumeration step, before any set of that step is built.
    """
    ordered = sorted(allowed, key=lambda v: (v not in anchors, label_key(v)))
    index = {v: i for i, v in enumerate(ordered)}
    roots = [v for v in ordered if v in anchors]

    def near(v):
        return [u for u in G.neighbors(v) if u in index]

    def extend(current, extension, neighbourhood, root_index, size):
        if charge is not None:
            charge()
        if len(current) == size:
            yield current
            return
        extension = list(extension)
        while extension:
            w = extension.pop(0)
            around = near(w)
            exclusive = [u for u in around if index[u] > root_index and u not in neighbourhood]
            grown = sorted(set(extension) | set(exclusive), key=index.__getitem__)
            yield from extend(current | {w}, grown, neighbourhood | set(around), root_index, size)

    for size in range(1, max_size + 1):
        found = False
        for root in roots:
            root_index = index[root]
            around = near(root)
            start = sorted((u for u in around if index[u] > root_index), key=index.__getitem__)
            for candidate in extend(frozenset((root,)), start, frozenset(around) | {root}, root_index, size):
                found = True
                yield candidate
        # every connected set meeting an anchor contains a smaller one that still does
        if not found:
            return


class _BranchSetSearch:
    def __init__(self, H, G, budget):
        self.H = H
        self.G = G
        self.budget = budget
        self.expansions = 0
        self.order = self._pattern_order()
        self.assignment = {}

    def _pattern_order(self):
        # descending degree, preferring vertices attached to those already ordered
        order, placed = [], set()
        remaining = set(self.H.vertices)
        while remaining:
            best = min(
                remaining,
                key=lambda h: (-len(self.H.neighbors(h) & placed), -self.H.degree(h), label_key(h)),
            )
            order.append(best)
            placed.add(best)
            remaining.discard(best)
        return order

    def _host_neighbourhood(self, vertex_set):
        found = set()
        for v in vertex_set:
            found |= self.G.neighbors(v)
        return found - vertex_set

    def _feasible(self, free, position):
        unplaced = set(self.order[position:])
        if len(free) < len(unplaced):
            return False
        for p, members in self.assignment.items():
            waiting = len(self.H.neighbors(p) & unplaced)
            if waiting and len(self._host_neighbourhood(members) & free) < waiting:
                return False
        components = None
        for u in unplaced:
            placed_neighbours = self.H.neighbors(u) - unplaced
            if not placed_neighbours:
                continue
            if components is None:
                components = connected_components(induced_subgraph(self.G, free))
            touching = [self._host_neighbourhood(self.assignment[p]) for p in placed_neighbours]
            if not any(all(c & t for t in touching) for c in components):
                return False
        return True

    def _charge(self):
        self.expansions += 1
        if self.expansions > self.budget:
            raise SearchBudgetExceeded(self.budget)

    def run(self):
        return self._place(0, frozenset(self.G.vertices))

    def _place(self, position, free):
        if position == len(self.order):
            return True
        rest = self.order[position:]
        if all(self.H.degree(h) == 0 for h in rest):
            # isolated pattern vertices only need one host vertex each
            spare = sorted(free, key=label_key)
            for h, v in zip(rest, spare):
                self.assignment[h] = frozenset((v,))
            return True

        h = self.order[position]
        placed_neighbours = [p for p in self.order[:position] if p in self.H.neighbors(h)]
        waiting = len(self.H.neighbors(h)) - len(placed_neighbours)
        if placed_neighbours:
            anchors = self._host_neighbourhood(self.assignment[placed_neighbours[0]]) & free
        else:
            anchors = free
        max_size = len(free) - (len(self.order) - position - 1)
        for candidate in _connected_sets(self.G, free, anchors, max_size, self._charge):
            rest_free = free - candidate
            reach = self._host_neighbourhood(candidate)
            if len(reach & rest_free) < waiting:
                continue
            if any(not (reach & self.assignment[p]) for p in placed_neighbours):
                continue
            self.assignment[h] = candidate
            if self._feasible(rest_free, position + 1) and self._place(position + 1, rest_free):
                return True
            del self.assignment[h]
        return False


def find_minor_embedding(H, G, budget=DEFAULT_SEARCH_BUDGET):
    """Decide H ≼ G and return branch sets as the witness

    Args:
        H (SimpleGraph): Pattern graph
        G (SimpleGraph): Host graph
        budget (int): Maximum number of enumeration steps over candidate branch sets

    Returns:
        MinorEmbedding | None: Verified witness, or None when H is not a minor of G
    """
    if len(H.vertices) > len(G.vertices) or len(H.edges) > len(G.edges):
        return None
    search = _BranchSetSearch(H, G, budget)
    found = search.run()
    logger.debug(
        f"minor search |V(H)|={len(H.vertices)} |V(G)|={len(G.vertices)}: "
        f"{'found' if found else 'none'} after {search.expansions} expansions"
    )
    if not found:
        return None
    embedding = MinorEmbedding({h: search.assignment[h] for h in H.ordered_vertices})
    report = verify_embedding(H, G, embedding)
    if not report.passed:
        raise AssertionError(f"branch-set search returned an invalid witness: {report.to_json()}")
    return embedding


def is_minor(H, G, budget=DEFAULT_SEARCH_BUDGET):
    return find_minor_embedding(H, G, budget) is not None


def _spanning_match(H, S):
    """Bijection V(H) -> V(S) sending edges to edges, if any (|V(H)| == |V(S)|)."""
    order = sorted(H.vertices, key=lambda h: (-H.degree(h), label_key(h)))
    targets = S.ordered_vertices
    mapping, used = {}, set()

    def backtrack(position):
        if position == len(order):
            return True
        h = order[position]
        for s in targets:
            if s in used or S.degree(s) < H.degree(h):
                continue
            if any(not S.has_edge(s, mapping[h2]) for h2 in H.neighbors(h) if h2 in mapping):
                continue
            mapping[h] = s
            used.add(s)
            if backtrack(position + 1):
                return True
            del mapping[h]
            used.discard(s)
        return False

    return dict(mapping) if backtrack(0) else None


def minor_by_operations(H, G, max_vertices=MAX_ORACLE_VERTICES):
    """Find a delete/contract sequence turning G into a copy of H

    Vertex deletions and contractions come first, edge deletions last; any
    minor can be reached in that order.

    Args:
        H (SimpleGraph): Pattern graph
        G (SimpleGraph): Host graph, at most ``max_vertices`` vertices
        max_vertices (int): Size cap for this exponential oracle

    Returns:
        list[MinorOperation] | None: Operation sequence, or None when H is not a minor
    """
    if len(G.vertices) > max_vertices:
        raise ResourceLimitError(
            f"operation oracle is limited to {max_vertices} host vertices, got {len(G.vertices)}"
        )
    if len(H.vertices) > len(G.vertices) or len(H.edges) > len(G.edges):
        return None
    target_vertices, target_edges = len(H.vertices), len(H.edges)
    visited = set()

    def search(state, path):
        key = (state.vertices, state.edges)
        if key in visited or len(state.edges) < target_edges:
            return None
        visited.add(key)
        if len(state.vertices) == target_vertices:
            mapping = _spanning_match(H, state)
            if mapping is None:
                return None
            image = {frozenset((mapping[u], mapping[v])) for u, v in H.ordered_edges}
            leftover = [e for e in state.ordered_edges if frozenset(e) not in image]
            return path + [MinorOperation(OperationKind.DELETE_EDGE, frozenset(e)) for e in leftover]
        steps = [MinorOperation(OperationKind.CONTRACT_EDGE, frozenset(e)) for e in state.ordered_edges]
        steps += [MinorOperation(OperationKind.DELETE_VERTEX, v) for v in state.ordered_vertices]
        for op in steps:
            found = search(apply_operation(state, op), path + [op])
            if found is not None:
                return found
        return None

    sequence = search(G, [])
    if sequence is None:
        return None
    result = G
    for op in sequence:
        result = apply_operation(result, op)
    if are_isomorphic(result, H, max_vertices=max(max_vertices, len(H.vertices))) is None:
        raise AssertionError("operation oracle produced a sequence whose result is not isomorphic to H")
    return sequence
