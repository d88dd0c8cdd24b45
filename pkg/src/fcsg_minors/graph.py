"""Finite simple undirected graphs and the few algorithms the rest needs."""

import logging
from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from fcsg_minors.config import MAX_ISOMORPHISM_VERTICES
from fcsg_minors.errors import InputError, ResourceLimitError
from fcsg_minors.helpers import json_label, label_key

logger = logging.getLogger(__name__)


def edge(u, v):
    """The unordered edge {u, v}."""
    if u == v:
        raise InputError(f"loop at vertex {u!r} is not allowed in a simple graph")
    return frozenset((u, v))


def edge_endpoints(e):
    """Endpoints of an edge in label order."""
    return tuple(sorted(e, key=label_key))


@dataclass(frozen=True)
class SimpleGraph:
    vertices: frozenset = frozenset()
    edges: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        object.__setattr__(self, "edges", frozenset(frozenset(e) for e in self.edges))
        for label in self.vertices:
            label_key(label)
        texts = Counter(str(label) for label in self.vertices)
        clashes = sorted(text for text, count in texts.items() if count > 1)
        if clashes:
            raise InputError(f"vertex labels must stay distinct as text; {clashes[0]!r} is used twice")
        for e in self.edges:
            if len(e) != 2:
                raise InputError(f"edge {sorted(e, key=label_key)} is not a pair of distinct vertices")
            missing = [v for v in e if v not in self.vertices]
            if missing:
                raise InputError(f"edge endpoint {missing[0]!r} is not a vertex of the graph")

    @classmethod
    def from_edges(cls, vertices=(), edges=()):
        """Build a graph from a vertex iterable and (u, v) pairs; endpoints are added as vertices."""
        vertex_set = set(vertices)
        edge_set = set()
        for u, v in edges:
            edge_set.add(edge(u, v))
            vertex_set.update((u, v))
        return cls(frozenset(vertex_set), frozenset(edge_set))

    @classmethod
    def from_networkx(cls, nx_graph):
        """Convert a networkx graph (or anything with .nodes and .edges)."""
        return cls.from_edges(nx_graph.nodes, nx_graph.edges)

    @cached_property
    def adjacency(self):
        neighbours = {v: set() for v in self.vertices}
        for e in self.edges:
            u, v = tuple(e)
            neighbours[u].add(v)
            neighbours[v].add(u)
        return {v: frozenset(ns) for v, ns in neighbours.items()}

    @cached_property
    def ordered_vertices(self):
        return tuple(sorted(self.vertices, key=label_key))

    @cached_property
    def ordered_edges(self):
        return tuple(
            sorted(
                (edge_endpoints(e) for e in self.edges),
                key=lambda pair: (label_key(pair[0]), label_key(pair[1])),
            )
        )

    def neighbors(self, v):
        return self.adjacency[v]

    def degree(self, v):
        return len(self.adjacency[v])

    def has_edge(self, u, v):
        return u != v and frozenset((u, v)) in self.edges

    def __len__(self):
        return len(self.vertices)

    def to_json(self):
        return {
            "vertices": [json_label(v) for v in self.ordered_vertices],
            "edges": [[json_label(u), json_label(v)] for u, v in self.ordered_edges],
        }

    @classmethod
    def from_json(cls, document):
        """Parse {"vertices": [...], "edges": [[u, v], ...]}

        Edges are deduplicated; loops and unknown endpoints are rejected.
        """
        if not isinstance(document, dict) or "vertices" not in document:
            raise InputError('graph JSON must be an object with a "vertices" array')
        vertices = document["vertices"]
        edges = document.get("edges", [])
        if not isinstance(vertices, list) or not isinstance(edges, list):
            raise InputError('graph "vertices" and "edges" must be arrays')
        for label in vertices:
            if isinstance(label, bool) or not isinstance(label, (int, str)):
                raise InputError(f"vertex label must be a string or integer, got {label!r}")
        counts = Counter(vertices)
        duplicates = [label for label, count in counts.items() if count > 1]
        if duplicates:
            raise InputError(f"duplicate vertex label: {duplicates[0]!r}")
        edge_set = set()
        for pair in edges:
            if not isinstance(pair, list) or len(pair) != 2:
                raise InputError(f"edge must be a two-element array, got {pair!r}")
            u, v = pair
            if u not in counts or v not in counts:
                raise InputError(f"edge {pair!r} uses a vertex that is not listed")
            edge_set.add(edge(u, v))
        return cls(frozenset(vertices), frozenset(edge_set))


def induced_subgraph(G, W):
    """G[W]: vertex set W and every edge of G inside it."""
    W = frozenset(W)
    outside = W - G.vertices
    if outside:
        raise InputError(f"vertex {sorted(outside, key=label_key)[0]!r} is not in the graph")
    return SimpleGraph(W, frozenset(e for e in G.edges if e <= W))


def _reach(G, start, allowed=None):
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for u in G.neighbors(v):
            if u not in seen and (allowed is None or u in allowed):
                seen.add(u)
                queue.append(u)
    return seen


def is_connected(G):
    """Whether G is connected; the empty graph and a single vertex count as connected."""
    if len(G.vertices) <= 1:
        return True
    return len(_reach(G, G.ordered_vertices[0])) == len(G.vertices)


def connected_components(G):
    """Vertex sets of the components, ordered by their smallest label."""
    components = []
    seen = set()
    for v in G.ordered_vertices:
        if v in seen:
            continue
        block = _reach(G, v)
        seen |= block
        components.append(frozenset(block))
    return components


def _initial_colours(G):
    # degree and closed 3-walks (twice the triangle count) per vertex
    order = G.ordered_vertices
    if not order:
        return {}
    index = {v: i for i, v in enumerate(order)}
    A = np.zeros((len(order), len(order)), dtype=np.int64)
    for u, v in G.ordered_edges:
        A[index[u], index[v]] = A[index[v], index[u]] = 1
    degrees = A.sum(axis=1)
    triangles = np.diagonal(A @ A @ A)
    return {v: (int(degrees[index[v]]), int(triangles[index[v]])) for v in order}


def _refine(G, H):
    """Joint colour refinement; None once the colour histograms disagree."""
    colours_g, colours_h = _initial_colours(G), _initial_colours(H)
    classes = 0
    while True:
        if Counter(colours_g.values()) != Counter(colours_h.values()):
            return None
        if len(set(colours_g.values())) == classes:
            return colours_g, colours_h
        classes = len(set(colours_g.values()))
        sig_g = {v: (colours_g[v], tuple(sorted(colours_g[u] for u in G.neighbors(v)))) for v in G.vertices}
        sig_h = {v: (colours_h[v], tuple(sorted(colours_h[u] for u in H.neighbors(v)))) for v in H.vertices}
        palette = {sig: i for i, sig in enumerate(sorted(set(sig_g.values()) | set(sig_h.values())))}
        colours_g = {v: palette[sig] for v, sig in sig_g.items()}
        colours_h = {v: palette[sig] for v, sig in sig_h.items()}


def is_isomorphism(G, H, mapping):
    """Check a candidate bijection V(G) -> V(H) edge by edge."""
    if set(mapping) != set(G.vertices) or set(mapping.values()) != set(H.vertices):
        return False
    if len(set(mapping.values())) != len(mapping):
        return False
    image = {frozenset((mapping[u], mapping[v])) for u, v in (tuple(e) for e in G.edges)}
    return image == set(H.edges)


def are_isomorphic(G, H, max_vertices=MAX_ISOMORPHISM_VERTICES):
    """Find an edge-preserving bijection V(G) -> V(H)

    Args:
        G (SimpleGraph): First graph
        H (SimpleGraph): Second graph
        max_vertices (int): Size cap for the backtracking stage

    Returns:
        dict | None: Mapping in G's label order, or None if not isomorphic
    """
    if len(G.vertices) != len(H.vertices) or len(G.edges) != len(H.edges):
        return None
    if sorted(G.degree(v) for v in G.vertices) != sorted(H.degree(v) for v in H.vertices):
        return None
    if len(G.vertices) > max_vertices:
        raise ResourceLimitError(
            f"isomorphism test is limited to {max_vertices} vertices, got {len(G.vertices)}"
        )
    refined = _refine(G, H)
    if refined is None:
        return None
    colours_g, colours_h = refined

    pools = {}
    for v in H.ordered_vertices:
        pools.setdefault(colours_h[v], []).append(v)
    order = sorted(G.ordered_vertices, key=lambda v: len(pools[colours_g[v]]))
    mapping = {}
    used = set()

    def consistent(u, w):
        for u2, w2 in mapping.items():
            if G.has_edge(u, u2) != H.has_edge(w, w2):
                return False
        return True

    def backtrack(position):
        if position == len(order):
            return True
        u = order[position]
        for w in pools[colours_g[u]]:
            if w in used or not consistent(u, w):
                continue
            mapping[u] = w
            used.add(w)
            if backtrack(position + 1):
                return True
            del mapping[u]
            used.discard(w)
        return False

    if not backtrack(0):
        return None
    result = {v: mapping[v] for v in G.ordered_vertices}
    if not is_isomorphism(G, H, result):
        raise AssertionError("isomorphism search produced a mapping that fails the edge check")
    return result
