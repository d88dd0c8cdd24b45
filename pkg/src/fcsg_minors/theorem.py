"""Finite content of the partition theorem for sequences of element sets.

For a sequence M_1, ..., M_n the gcd graphs G_i are compared pairwise under
the minor relation (green: G_i ≼ G_j, red: G_j strictly below G_i, yellow:
incomparable). For every green pair the branch sets of a minor embedding are
turned into a family of blocks of M_j indexed by M_i, and the two conditions
of the theorem are checked by recomputing products and gcds:

    A. gcd(k, k') not a unit  =>  gcd(m(block_k), m(block_k')) not a unit
    B. every block is chained: its gcd graph is connected

The full variant merges the unused elements of M_j into one block k0, which
is then exempt from B.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from itertools import combinations

from fcsg_minors.config import DEFAULT_SEARCH_BUDGET
from fcsg_minors.correspondence import build_gcd_graph
from fcsg_minors.errors import InputError, SearchBudgetExceeded
from fcsg_minors.graph import is_connected
from fcsg_minors.minor import find_minor_embedding, verify_embedding
from fcsg_minors.semigroup import Backend, SemigroupContext, detect_backend, gcd, is_unit, same_backend, set_product

logger = logging.getLogger(__name__)


class Color(str, Enum):
    RED = "red"
    YELLOW = "yellow"
    GREEN = "green"


@dataclass(frozen=True)
class SubsetSequence:
    """Finite sequence of element sets; indices are 1-based in all I/O."""

    sets: tuple = ()
    context: SemigroupContext = field(default_factory=SemigroupContext)

    def __post_init__(self):
        sets = tuple(tuple(self.context.validate(x) for x in members) for members in self.sets)
        object.__setattr__(self, "sets", sets)

    @classmethod
    def from_json(cls, document, context=None):
        """Parse a JSON array of element arrays; the backend is detected when no context is given."""
        if not isinstance(document, list) or not all(isinstance(item, list) for item in document):
            raise InputError("a sequence must be a JSON array of element arrays")
        if context is None:
            flat = [x for members in document for x in members]
            context = SemigroupContext(detect_backend(flat))
        return cls(tuple(tuple(context.parse_set(members)) for members in document), context)

    def __len__(self):
        return len(self.sets)

    def members(self, index):
        if not 1 <= index <= len(self.sets):
            raise InputError(f"sequence index {index} is outside 1..{len(self.sets)}")
        return self.sets[index - 1]

    @cached_property
    def gcd_graphs(self):
        return [build_gcd_graph(members) for members in self.sets]


@dataclass
class PairColoring:
    size: int
    colors: dict = field(default_factory=dict)
    embeddings: dict = field(default_factory=dict, compare=False)

    def color(self, i, j):
        return self.colors[(i, j)]

    def pairs(self):
        return sorted(self.colors)

    def green_pairs(self):
        return [pair for pair in self.pairs() if self.colors[pair] is Color.GREEN]

    def to_json(self):
        return [{"pair": [i, j], "color": self.colors[(i, j)].value} for i, j in self.pairs()]


def color_pairs(seq, budget=DEFAULT_SEARCH_BUDGET):
    """Colour every index pair i < j of the sequence

    Green is tested first, so mutually minor (hence isomorphic) graphs are
    green and red never needs an isomorphism test.

    Args:
        seq (SubsetSequence): Sequence to colour
        budget (int): Search budget for each minor test

    Returns:
        PairColoring: Colours plus the embedding found for every green pair
    """
    graphs = [result.graph for result in seq.gcd_graphs]
    coloring = PairColoring(len(graphs))
    for i, j in combinations(range(1, len(graphs) + 1), 2):
        try:
            embedding = find_minor_embedding(graphs[i - 1], graphs[j - 1], budget)
            if embedding is not None:
                coloring.colors[(i, j)] = Color.GREEN
                coloring.embeddings[(i, j)] = embedding
            elif find_minor_embedding(graphs[j - 1], graphs[i - 1], budget) is not None:
                coloring.colors[(i, j)] = Color.RED
            else:
                coloring.colors[(i, j)] = Color.YELLOW
        except SearchBudgetExceeded as e:
            raise e.for_pair((i, j)) from e
        logger.info(f"Pair ({i}, {j}) coloured {coloring.colors[(i, j)].value}")
    return coloring


def longest_green_chain(coloring):
    """Longest i_1 < ... < i_m with consecutive pairs green

    Transitivity of ≼ makes every pair of such a chain green. Ties go to the
    chain with the smallest indices.
    """
    if coloring.size == 0:
        return []
    best = [1] * (coloring.size + 1)
    previous = [None] * (coloring.size + 1)
    for j in range(1, coloring.size + 1):
        for i in range(1, j):
            if coloring.color(i, j) is Color.GREEN and best[i] + 1 > best[j]:
                best[j] = best[i] + 1
                previous[j] = i
    length = max(best[1:])
    end = best.index(length, 1)
    chain = [end]
    while previous[chain[-1]] is not None:
        chain.append(previous[chain[-1]])
    return chain[::-1]


def is_increasing_chain(coloring, indices):
    """Whether the indices ascend and every pair among them is green."""
    if any(a >= b for a, b in zip(indices, indices[1:])):
        return False
    return all(coloring.color(i, j) is Color.GREEN for i, j in combinations(indices, 2))


def _ordered(elements):
    return sorted(elements, key=lambda x: x.sort_key())


@dataclass(frozen=True)
class PartitionResult:
    blocks: dict = field(default_factory=dict)
    covers_all: bool = False
    exceptional_k0: object = None
    index_pair: tuple = None

    def to_json(self, context):
        return {
            "index_pair": list(self.index_pair) if self.index_pair is not None else None,
            "covers_all": self.covers_all,
            "exceptional_k0": context.format_element(self.exceptional_k0) if self.exceptional_k0 is not None else None,
            "blocks": [
                {
                    "key": context.format_element(k),
                    "members": [context.format_element(x) for x in _ordered(self.blocks[k])],
                }
                for k in _ordered(self.blocks)
            ],
        }


@dataclass(frozen=True)
class ConditionACheck:
    k: object
    k_prime: object
    block_gcd: object
    passed: bool


@dataclass(frozen=True)
class ConditionBCheck:
    k: object
    connected: bool
    exempt: bool

    @property
    def passed(self):
        return self.connected or self.exempt


@dataclass
class PartitionReport:
    missing_keys: list = field(default_factory=list)
    extra_keys: list = field(default_factory=list)
    foreign_elements: list = field(default_factory=list)
    overlaps: list = field(default_factory=list)
    uncovered: list = field(default_factory=list)
    condition_a: list = field(default_factory=list)
    condition_b: list = field(default_factory=list)

    @property
    def clauses(self):
        return {
            "keys": not (self.missing_keys or self.extra_keys),
            "subset": not self.foreign_elements,
            "disjoint": not self.overlaps,
            "coverage": not self.uncovered,
            "condition_a": all(check.passed for check in self.condition_a),
            "condition_b": all(check.passed for check in self.condition_b),
        }

    @property
    def passed(self):
        return all(self.clauses.values())

    def to_json(self, context):
        fmt = context.format_element
        document = {name: "pass" if ok else "fail" for name, ok in self.clauses.items()}
        document["condition_a_checks"] = [
            {
                "k": fmt(check.k),
                "k_prime": fmt(check.k_prime),
                "block_gcd": fmt(check.block_gcd),
                "result": "pass" if check.passed else "fail",
            }
            for check in self.condition_a
        ]
        document["condition_b_checks"] = [
            {
                "k": fmt(check.k),
                "connected": check.connected,
                "exempt": check.exempt,
                "result": "pass" if check.passed else "fail",
            }
            for check in self.condition_b
        ]
        failures = {
            "missing_keys": [fmt(k) for k in self.missing_keys],
            "extra_keys": [fmt(k) for k in self.extra_keys],
            "foreign_elements": [fmt(x) for x in self.foreign_elements],
            "overlaps": [fmt(x) for x in self.overlaps],
            "uncovered": [fmt(x) for x in self.uncovered],
        }
        document["failures"] = {name: items for name, items in failures.items() if items}
        return document


def verify_partition(M_h, M_g, result):
    """Check a block family against both conditions of the theorem

    Only pairs k != k' with a non-unit gcd(k, k') are condition-A obligations.
    Condition B is reported for every block; the exceptional block is marked
    exempt. Coverage is checked only when the result claims to cover M_g.

    Args:
        M_h (iterable): Index set (elements of the smaller set)
        M_g (iterable): Set the blocks are drawn from
        result (PartitionResult): Blocks to check

    Returns:
        PartitionReport: Per-clause outcome, never raises on a failed clause
    """
    M_h, M_g = frozenset(M_h), frozenset(M_g)
    backend = same_backend(*M_h, *M_g, *result.blocks) or Backend.NATURALS
    report = PartitionReport()
    report.missing_keys = _ordered(M_h - set(result.blocks))
    report.extra_keys = _ordered(set(result.blocks) - M_h)

    seen, overlaps = set(), set()
    for k in _ordered(result.blocks):
        for x in result.blocks[k]:
            if x in seen:
                overlaps.add(x)
            seen.add(x)
    report.overlaps = _ordered(overlaps)
    report.foreign_elements = _ordered(seen - M_g)
    if result.covers_all:
        report.uncovered = _ordered(M_g - seen)

    products = {k: set_product(result.blocks[k], backend) for k in result.blocks}
    for k, k_prime in combinations(_ordered(set(result.blocks) & M_h), 2):
        if is_unit(gcd(k, k_prime)):
            continue
        block_gcd = gcd(products[k], products[k_prime])
        report.condition_a.append(ConditionACheck(k, k_prime, block_gcd, not is_unit(block_gcd)))

    for k in _ordered(result.blocks):
        block = result.blocks[k]
        connected = is_connected(build_gcd_graph(block).graph) if block else True
        report.condition_b.append(ConditionBCheck(k, connected, k == result.exceptional_k0))
    return report


def construct_partial_partition(M_h, M_g, embedding, index_pair=None):
    """Blocks of M_g read off the branch sets of a gcd-graph minor embedding

    Args:
        M_h (iterable): Elements whose gcd graph is the minor
        M_g (iterable): Elements whose gcd graph hosts it
        embedding (MinorEmbedding): Branch sets keyed by M_h's canonical texts
        index_pair (tuple): Optional (i, j) carried into the result

    Returns:
        PartitionResult: Blocks of a subset of M_g, covers_all False
    """
    H, G = build_gcd_graph(M_h), build_gcd_graph(M_g)
    check = verify_embedding(H.graph, G.graph, embedding)
    if not check.passed:
        raise InputError(f"embedding is not a valid minor embedding of the gcd graphs: {check.to_json()}")
    blocks = {
        H.element_of[h]: frozenset(G.element_of[v] for v in embedding.branch_sets[h])
        for h in H.graph.ordered_vertices
    }
    result = PartitionResult(blocks, index_pair=index_pair)
    report = verify_partition(H.element_of.values(), G.element_of.values(), result)
    if not report.passed:
        raise AssertionError(f"partial partition failed its own verification: {report.clauses}")
    return result


def extend_to_full_partition(partial, M_g, k0=None):
    """Merge every element of M_g outside the blocks into block k0

    Args:
        partial (PartitionResult): Result of construct_partial_partition
        M_g (iterable): The host set
        k0 (FactoredElement): Block to absorb the leftovers; defaults to the
            smallest key in canonical order

    Returns:
        PartitionResult: Partition of all of M_g with exceptional_k0 set
    """
    M_g = frozenset(M_g)
    if not partial.blocks:
        if k0 is not None:
            raise InputError(f"k0 {k0} is not an element of an empty index set")
        # no blocks to extend; the family covers M_g only when M_g is empty too
        return PartitionResult({}, covers_all=not M_g, index_pair=partial.index_pair)
    if k0 is None:
        k0 = _ordered(partial.blocks)[0]
    elif k0 not in partial.blocks:
        raise InputError(f"k0 {k0} is not an element of the index set")
    used = frozenset().union(*partial.blocks.values())
    leftover = M_g - used
    blocks = dict(partial.blocks)
    blocks[k0] = blocks[k0] | leftover
    result = PartitionResult(blocks, covers_all=True, exceptional_k0=k0, index_pair=partial.index_pair)
    report = verify_partition(blocks.keys(), M_g, result)
    if not report.passed:
        raise AssertionError(f"full partition failed its own verification: {report.clauses}")
    logger.info(f"Merged {len(leftover)} leftover elements into block {k0}")
    return result


def condition_b_chain(block, x, y):
    """Intermediates a_1, ..., a_l chaining x to y inside a block

    Args:
        block (iterable): Block elements
        x (FactoredElement): Start element
        y (FactoredElement): End element

    Returns:
        list | None: The a_i (empty when x == y or gcd(x, y) is not a unit),
            or None if no chain exists
    """
    block = list(block)
    if x not in block or y not in block:
        raise InputError("both chain ends must belong to the block")
    if x == y:
        return []
    result = build_gcd_graph(block)
    start, goal = x.canonical_text(), y.canonical_text()
    previous = {start: None}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        if v == goal:
            break
        for u in sorted(result.graph.neighbors(v), key=lambda label: result.element_of[label].sort_key()):
            if u not in previous:
                previous[u] = v
                queue.append(u)
    if goal not in previous:
        return None
    path = [goal]
    while previous[path[-1]] is not None:
        path.append(previous[path[-1]])
    return [result.element_of[label] for label in reversed(path[1:-1])]


@dataclass(frozen=True)
class Demonstration:
    pair: tuple
    embedding: object
    partial: PartitionResult
    full: PartitionResult
    partial_report: PartitionReport
    full_report: PartitionReport


def scan_and_demonstrate(seq, all_pairs=False, budget=DEFAULT_SEARCH_BUDGET, coloring=None):
    """Build and verify both partitions for green pairs of a sequence

    Args:
        seq (SubsetSequence): Sequence to scan
        all_pairs (bool): Every green pair instead of the first per left index
        budget (int): Minor-search budget
        coloring (PairColoring): Precomputed colouring of seq, if any

    Returns:
        list[Demonstration]: Ordered by index pair
    """
    if coloring is None:
        coloring = color_pairs(seq, budget)
    pairs = coloring.green_pairs()
    if not all_pairs:
        first = {}
        for i, j in pairs:
            first.setdefault(i, (i, j))
        pairs = sorted(first.values())

    demonstrations = []
    for i, j in pairs:
        M_h, M_g = seq.members(i), seq.members(j)
        embedding = coloring.embeddings[(i, j)]
        partial = construct_partial_partition(M_h, M_g, embedding, index_pair=(i, j))
        full = extend_to_full_partition(partial, M_g)
        partial_report = verify_partition(M_h, M_g, partial)
        full_report = verify_partition(M_h, M_g, full)
        if not (partial_report.passed and full_report.passed):
            raise AssertionError(f"verification failed for pair ({i}, {j})")
        demonstrations.append(Demonstration((i, j), embedding, partial, full, partial_report, full_report))
        logger.info(f"Demonstrated pair ({i}, {j}) with {len(partial.blocks)} blocks")
    return demonstrations
