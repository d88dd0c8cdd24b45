"""Finite subsets of factorial commutative semigroups as graphs: gcd graphs,
graph minors with witnesses, realization, and the block-partition theorem."""

from fcsg_minors.correspondence import GcdGraphResult, build_gcd_graph, realize_graph
from fcsg_minors.graph import SimpleGraph, are_isomorphic, connected_components, induced_subgraph, is_connected
from fcsg_minors.minor import (
    MinorEmbedding,
    MinorOperation,
    OperationKind,
    apply_operation,
    find_minor_embedding,
    minor_by_operations,
    verify_embedding,
)
from fcsg_minors.semigroup import (
    Backend,
    FactoredElement,
    PrimeSymbol,
    SemigroupContext,
    divides,
    factorize,
    gcd,
    is_unit,
    multiply,
    set_product,
)
from fcsg_minors.theorem import (
    Color,
    PairColoring,
    PartitionResult,
    SubsetSequence,
    color_pairs,
    construct_partial_partition,
    extend_to_full_partition,
    longest_green_chain,
    scan_and_demonstrate,
    verify_partition,
)
