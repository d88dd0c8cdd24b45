import pandas as pd

from fcsg_minors.export import coloring_frame, demonstration_frame, write_scan_tables
from fcsg_minors.helpers import load_json_file
from fcsg_minors.theorem import SubsetSequence, color_pairs, scan_and_demonstrate


def scanned(corpus):
    seq = SubsetSequence.from_json(load_json_file(corpus / "sequence_two_sets.json"))
    coloring = color_pairs(seq)
    return coloring, scan_and_demonstrate(seq, coloring=coloring)


def test_coloring_frame(corpus):
    coloring, _ = scanned(corpus)
    frame = coloring_frame(coloring)
    assert frame.to_dict("records") == [{"i": 1, "j": 2, "color": "green"}]


def test_demonstration_frame(corpus):
    _, demonstrations = scanned(corpus)
    frame = demonstration_frame(demonstrations)
    assert list(frame["variant"].unique()) == ["partial", "full"]
    full = frame[frame["variant"] == "full"]
    assert full["block_size"].sum() == 4
    assert full["exempt"].sum() == 1
    assert set(frame["condition_b"]) <= {"pass", "fail"}


def test_empty_frames_keep_columns():
    frame = demonstration_frame([])
    assert frame.empty
    assert "block_product" in frame.columns


def test_write_scan_tables(corpus, tmp_path):
    coloring, demonstrations = scanned(corpus)
    written = write_scan_tables(coloring, demonstrations, tmp_path / "tables")
    assert [path.name for path in written] == ["coloring.csv", "partitions.csv"]
    partitions = pd.read_csv(written[1])
    assert len(partitions) == len(demonstration_frame(demonstrations))
