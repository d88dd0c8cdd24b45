"""From element sets to gcd graphs and back."""

import logging
from dataclasses import dataclass, field

from sympy import prime

from fcsg_minors.config import MAX_ISOMORPHISM_VERTICES, NATURALS_LIMIT
from fcsg_minors.errors import DuplicateElementError, InputError, ResourceLimitError
from fcsg_minors.graph import SimpleGraph, are_isomorphic, edge
from fcsg_minors.semigroup import (
    Backend,
    FactoredElement,
    PrimeSymbol,
    evaluate,
    gcd,
    is_unit,
    same_backend,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GcdGraphResult:
    graph: SimpleGraph
    element_of: dict = field(default_factory=dict)

    def to_json(self, context):
        return {
            "graph": self.graph.to_json(),
            "elements": {
                label: context.format_element(self.element_of[label])
                for label in self.graph.ordered_vertices
            },
        }


def build_gcd_graph(elements):
    """Gcd graph of a finite element set

    Vertices are the canonical texts of the elements; x and y are adjacent
    exactly when gcd(x, y) is not a unit. Units become isolated vertices.

    Args:
        elements (iterable): FactoredElements of one backend, pairwise distinct

    Returns:
        GcdGraphResult: Graph plus the label -> element table
    """
    elements = list(elements)
    same_backend(*elements)
    element_of = {}
    for element in elements:
        label = element.canonical_text()
        if label in element_of:
            raise DuplicateElementError(label)
        element_of[label] = element
    labels = sorted(element_of, key=lambda label: element_of[label].sort_key())
    edges = set()
    for i, x in enumerate(labels):
        for y in labels[i + 1:]:
            if not is_unit(gcd(element_of[x], element_of[y])):
                edges.add(edge(x, y))
    graph = SimpleGraph(frozenset(labels), frozenset(edges))
    logger.info(f"Built gcd graph with {len(graph.vertices)} vertices and {len(graph.edges)} edges")
    return GcdGraphResult(graph, element_of)


def realize_graph(G, backend=Backend.NATURALS):
    """Element set whose gcd graph is isomorphic to G

    Every edge and then every vertex gets a fresh prime, each group in label
    order; vertex v maps to its own prime times the primes of its edges.

    Args:
        G (SimpleGraph): Graph to realize
        backend (Backend): NATURALS (consecutive primes 2, 3, 5, ...) or FREE
            (symbols e1, e2, ... for edges and v1, v2, ... for vertices)

    Returns:
        dict: Vertex of G -> FactoredElement, in G's label order
    """
    backend = Backend(backend)
    vertices, edges = G.ordered_vertices, G.ordered_edges
    if backend is Backend.NATURALS:
        primes = [PrimeSymbol(int(prime(i))) for i in range(1, len(edges) + len(vertices) + 1)]
        edge_primes, vertex_primes = primes[: len(edges)], primes[len(edges):]
    else:
        edge_primes = [PrimeSymbol(f"e{i}") for i in range(1, len(edges) + 1)]
        vertex_primes = [PrimeSymbol(f"v{i}") for i in range(1, len(vertices) + 1)]

    factors = {v: {vertex_primes[i]: 1} for i, v in enumerate(vertices)}
    for symbol, (u, v) in zip(edge_primes, edges):
        factors[u][symbol] = 1
        factors[v][symbol] = 1
    realized = {v: FactoredElement.from_mapping(backend, factors[v]) for v in vertices}

    if backend is Backend.NATURALS:
        for v, element in realized.items():
            if evaluate(element) >= NATURALS_LIMIT:
                raise ResourceLimitError(
                    f"realizing vertex {v!r} needs {evaluate(element)}, beyond 64 bits; "
                    "use the free backend instead"
                )

    rebuilt = build_gcd_graph(realized.values())
    if len(G.vertices) <= MAX_ISOMORPHISM_VERTICES:
        witness = are_isomorphic(G, rebuilt.graph)
    else:
        witness = {v: realized[v].canonical_text() for v in vertices}
        rebuilt_edges = {edge(witness[u], witness[v]) for u, v in edges}
        if rebuilt_edges != set(rebuilt.graph.edges):
            witness = None
    if witness is None:
        raise AssertionError("realized element set does not reproduce the graph")
    return realized


def realization_table(G, realized, context):
    """JSON rows vertex -> element for the command line."""
    if set(realized) != set(G.vertices):
        raise InputError("realization does not cover the graph's vertices")
    return {str(v): context.format_element(realized[v]) for v in G.ordered_vertices}
