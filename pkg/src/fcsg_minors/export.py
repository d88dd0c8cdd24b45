"""CSV tables of a scan: the pair colouring and every partition block."""

import logging
from pathlib import Path

import pandas as pd

from fcsg_minors.semigroup import set_product

logger = logging.getLogger(__name__)

COLORING_COLUMNS = ["i", "j", "color"]

PARTITION_COLUMNS = [
    "i",
    "j",
    "variant",
    "block_key",
    "block_members",
    "block_size",
    "block_product",
    "condition_b",
    "exempt",
]


def coloring_frame(coloring):
    """One row per index pair with its colour."""
    rows = [{"i": i, "j": j, "color": coloring.color(i, j).value} for i, j in coloring.pairs()]
    return pd.DataFrame(rows, columns=COLORING_COLUMNS)


def _block_rows(pair, variant, result, report):
    status = {check.k: check for check in report.condition_b}
    for k in sorted(result.blocks, key=lambda x: x.sort_key()):
        members = sorted(result.blocks[k], key=lambda x: x.sort_key())
        check = status[k]
        yield {
            "i": pair[0],
            "j": pair[1],
            "variant": variant,
            "block_key": k.canonical_text(),
            "block_members": " ".join(x.canonical_text() for x in members),
            "block_size": len(members),
            "block_product": set_product(members, k.backend).canonical_text(),
            "condition_b": "pass" if check.connected else "fail",
            "exempt": check.exempt,
        }


def demonstration_frame(demonstrations):
    """One row per (pair, variant, block) across all demonstrations."""
    rows = []
    for demo in demonstrations:
        rows.extend(_block_rows(demo.pair, "partial", demo.partial, demo.partial_report))
        rows.extend(_block_rows(demo.pair, "full", demo.full, demo.full_report))
    return pd.DataFrame(rows, columns=PARTITION_COLUMNS)


def write_scan_tables(coloring, demonstrations, out_dir):
    """Write coloring.csv and partitions.csv into out_dir

    Args:
        coloring (PairColoring): Colouring of the scanned sequence
        demonstrations (list): Output of scan_and_demonstrate
        out_dir (str | Path): Target directory, created if missing

    Returns:
        list[Path]: The files written
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for name, frame in (
        ("coloring.csv", coloring_frame(coloring)),
        ("partitions.csv", demonstration_frame(demonstrations)),
    ):
        output_file = out_dir / name
        frame.to_csv(output_file, index=False)
        logger.info(f"Saved {len(frame)} rows to {output_file}")
        written.append(output_file)
    return written
