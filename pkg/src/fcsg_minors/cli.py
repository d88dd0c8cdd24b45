"""Command line: every operation with JSON on standard output.

Exit codes: 0 success, 1 a negative mathematical answer (not a minor, not
isomorphic, no green pair), 2 input errors, 3 size or budget limits.
Argument errors are reported by argparse on standard error.
"""

import argparse
import json
import logging
import sys

from fcsg_minors.config import DEFAULT_SEARCH_BUDGET, LOG_FORMAT
from fcsg_minors.correspondence import build_gcd_graph, realization_table, realize_graph
from fcsg_minors.errors import InputError, ResourceLimitError, SearchBudgetExceeded
from fcsg_minors.export import write_scan_tables
from fcsg_minors.graph import SimpleGraph, are_isomorphic
from fcsg_minors.helpers import dump_json, json_label, json_number, load_json_file, parse_int
from fcsg_minors.minor import find_minor_embedding, minor_by_operations, verify_embedding
from fcsg_minors.semigroup import Backend, SemigroupContext, detect_backend, factorize, gcd
from fcsg_minors.theorem import (
    SubsetSequence,
    color_pairs,
    construct_partial_partition,
    extend_to_full_partition,
    longest_green_chain,
    scan_and_demonstrate,
    verify_partition,
)

EXIT_OK = 0
EXIT_NO = 1
EXIT_INPUT = 2
EXIT_RESOURCE = 3


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def build_parser():
    parser = argparse.ArgumentParser(
        prog="fcsg-minors",
        description="Gcd graphs of semigroup element sets, graph minors and the partition theorem.",
    )
    parser.add_argument("--verbose", action="store_true", help="log progress at INFO level")
    parser.add_argument("--log-file", help="write the log to this file instead of standard error")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("factor", help="factor a natural number")
    p.add_argument("n")

    p = sub.add_parser("gcd", help="gcd of two elements (integers or free-backend JSON)")
    p.add_argument("a")
    p.add_argument("b")

    p = sub.add_parser("gcdgraph", help="gcd graph of an element set file")
    p.add_argument("set_file")

    p = sub.add_parser("realize", help="element set realizing a graph file")
    p.add_argument("graph_file")
    p.add_argument("--backend", choices=[b.value for b in Backend], default=Backend.NATURALS.value)

    p = sub.add_parser("minor", help="decide whether H is a minor of G")
    p.add_argument("h_file")
    p.add_argument("g_file")
    p.add_argument("--oracle", action="store_true", help="use the delete/contract oracle")
    p.add_argument("--budget", type=_positive_int, default=DEFAULT_SEARCH_BUDGET)

    p = sub.add_parser("iso", help="decide whether two graphs are isomorphic")
    p.add_argument("g1_file")
    p.add_argument("g2_file")

    p = sub.add_parser("partition", help="build and verify the block partition for two element sets")
    p.add_argument("mh_file")
    p.add_argument("mg_file")
    p.add_argument("--full", action="store_true", help="also build the partition covering all of M_g")
    p.add_argument("--k0", help="block absorbing the leftovers (requires --full)")
    p.add_argument("--budget", type=_positive_int, default=DEFAULT_SEARCH_BUDGET)

    p = sub.add_parser("scan", help="colour a sequence file and demonstrate its green pairs")
    p.add_argument("sequence_file")
    p.add_argument("--all-pairs", action="store_true", help="demonstrate every green pair")
    p.add_argument("--budget", type=_positive_int, default=DEFAULT_SEARCH_BUDGET)
    p.add_argument("--tables", help="also write coloring.csv and partitions.csv into this directory")
    return parser


def _parse_element_argument(text):
    """An element given on the command line: a decimal integer or free-backend JSON."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            document = json.loads(stripped)
        except json.JSONDecodeError as e:
            raise InputError(f"malformed element JSON {text!r}: {e.msg}") from e
        context = SemigroupContext(Backend.FREE)
        return context, context.parse_element(document)
    context = SemigroupContext(Backend.NATURALS)
    return context, context.parse_element(parse_int(stripped, "element"))


def _load_graph(path):
    return SimpleGraph.from_json(load_json_file(path))


def _load_sets(*paths):
    documents = [load_json_file(path) for path in paths]
    for path, document in zip(paths, documents):
        if not isinstance(document, list):
            raise InputError(f"{path}: an element set must be a JSON array")
    context = SemigroupContext(detect_backend([x for document in documents for x in document]))
    return context, [context.parse_set(document) for document in documents]


def cmd_factor(args):
    element = factorize(args.n)
    return EXIT_OK, {
        "n": json_number(parse_int(args.n)),
        "factors": {str(p): e for p, e in element.exponents},
    }


def cmd_gcd(args):
    context_a, a = _parse_element_argument(args.a)
    context_b, b = _parse_element_argument(args.b)
    if context_a != context_b:
        raise InputError("both gcd arguments must use the same backend")
    return EXIT_OK, {"gcd": context_a.format_element(gcd(a, b))}


def cmd_gcdgraph(args):
    context, (elements,) = _load_sets(args.set_file)
    return EXIT_OK, build_gcd_graph(elements).to_json(context)


def cmd_realize(args):
    G = _load_graph(args.graph_file)
    context = SemigroupContext(Backend(args.backend))
    realized = realize_graph(G, context.backend)
    rebuilt = build_gcd_graph(realized.values())
    return EXIT_OK, {
        "backend": context.backend.value,
        "elements": realization_table(G, realized, context),
        "gcd_graph": rebuilt.graph.to_json(),
    }


def cmd_minor(args):
    H, G = _load_graph(args.h_file), _load_graph(args.g_file)
    if args.oracle:
        sequence = minor_by_operations(H, G)
        if sequence is None:
            return EXIT_NO, {"minor": False}
        return EXIT_OK, {"minor": True, "operations": [op.to_json() for op in sequence]}
    embedding = find_minor_embedding(H, G, args.budget)
    if embedding is None:
        return EXIT_NO, {"minor": False}
    document = {"minor": True}
    document.update(embedding.to_json())
    document["report"] = verify_embedding(H, G, embedding).to_json()
    return EXIT_OK, document


def cmd_iso(args):
    G1, G2 = _load_graph(args.g1_file), _load_graph(args.g2_file)
    mapping = are_isomorphic(G1, G2)
    if mapping is None:
        return EXIT_NO, {"isomorphic": False}
    return EXIT_OK, {"isomorphic": True, "mapping": {str(v): json_label(w) for v, w in mapping.items()}}


def cmd_partition(args):
    context, (M_h, M_g) = _load_sets(args.mh_file, args.mg_file)
    k0 = None
    if args.k0 is not None:
        _, k0 = _parse_element_argument(args.k0)
        context.validate(k0)
    H, G = build_gcd_graph(M_h), build_gcd_graph(M_g)
    embedding = find_minor_embedding(H.graph, G.graph, args.budget)
    if embedding is None:
        return EXIT_NO, {"minor": False}
    partial = construct_partial_partition(M_h, M_g, embedding)
    document = {
        "minor": True,
        "embedding": embedding.to_json(),
        "partial_partition": partial.to_json(context),
        "report": {"partial": verify_partition(M_h, M_g, partial).to_json(context)},
    }
    if args.full:
        full = extend_to_full_partition(partial, M_g, k0)
        document["full_partition"] = full.to_json(context)
        document["report"]["full"] = verify_partition(M_h, M_g, full).to_json(context)
    return EXIT_OK, document


def cmd_scan(args):
    seq = SubsetSequence.from_json(load_json_file(args.sequence_file))
    coloring = color_pairs(seq, args.budget)
    demonstrations = scan_and_demonstrate(seq, all_pairs=args.all_pairs, budget=args.budget, coloring=coloring)
    context = seq.context
    records = [
        {
            "pair": list(demo.pair),
            "coloring": coloring.color(*demo.pair).value,
            "embedding": demo.embedding.to_json(),
            "partial_partition": demo.partial.to_json(context),
            "full_partition": demo.full.to_json(context),
            "report": {
                "partial": demo.partial_report.to_json(context),
                "full": demo.full_report.to_json(context),
            },
        }
        for demo in demonstrations
    ]
    if args.tables:
        write_scan_tables(coloring, demonstrations, args.tables)
    document = {
        "sequence_length": len(seq),
        "backend": context.backend.value,
        "coloring": coloring.to_json(),
        "chain": longest_green_chain(coloring),
        "demonstrations": records,
    }
    return (EXIT_OK if records else EXIT_NO), document


COMMANDS = {
    "factor": cmd_factor,
    "gcd": cmd_gcd,
    "gcdgraph": cmd_gcdgraph,
    "realize": cmd_realize,
    "minor": cmd_minor,
    "iso": cmd_iso,
    "partition": cmd_partition,
    "scan": cmd_scan,
}


def run(argv):
    """Parse, dispatch and serialize one invocation

    Args:
        argv (list[str]): Arguments without the program name

    Returns:
        tuple[int, str]: Exit status and the JSON text for standard output
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "partition" and args.k0 is not None and not args.full:
        parser.error("--k0 requires --full")

    logging.basicConfig(
        filename=args.log_file,
        level=logging.INFO if args.verbose else logging.WARNING,
        format=LOG_FORMAT,
    )

    try:
        status, document = COMMANDS[args.command](args)
    except SearchBudgetExceeded as e:
        logging.error(f"Error in {args.command}: {str(e)}")
        status = EXIT_RESOURCE
        document = {"error": "budget", "message": str(e)}
        if e.pair is not None:
            document["pair"] = list(e.pair)
    except ResourceLimitError as e:
        logging.error(f"Error in {args.command}: {str(e)}")
        status, document = EXIT_RESOURCE, {"error": "resource", "message": str(e)}
    except InputError as e:
        logging.error(f"Error in {args.command}: {str(e)}")
        status, document = EXIT_INPUT, {"error": "input", "message": str(e)}
    return status, dump_json(document)


def main(argv=None):
    status, text = run(sys.argv[1:] if argv is None else argv)
    print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
