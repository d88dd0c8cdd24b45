import hashlib
import os
import shutil
import subprocess
import sys
from pathlib import Path

import pandas as pd

# Number of full passes over the corpus; outputs must match byte for byte
repeat_runs = 2

# Set working directory to one level above this script (the repository root)
os.chdir(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

corpus_dir = os.path.join("tests", "corpus")
output_root = "corpus_output"

# (name, arguments after the program name); paths are relative to corpus_dir
corpus_commands = [
    ("factor_360", ["factor", "360"]),
    ("gcd_12_18", ["gcd", "12", "18"]),
    ("gcdgraph_triangle", ["gcdgraph", "{corpus}/set_triangle_plus_isolated.json"]),
    ("realize_p3", ["realize", "{corpus}/graph_p3.json"]),
    ("realize_p3_free", ["realize", "{corpus}/graph_p3.json", "--backend", "free"]),
    ("minor_k3_c4", ["minor", "{corpus}/graph_k3.json", "{corpus}/graph_c4.json"]),
    ("minor_k4_c4", ["minor", "{corpus}/graph_k4.json", "{corpus}/graph_c4.json"]),
    ("minor_k3_c4_oracle", ["minor", "{corpus}/graph_k3.json", "{corpus}/graph_c4.json", "--oracle"]),
    ("minor_k5_petersen", ["minor", "{corpus}/graph_k5.json", "{corpus}/graph_petersen.json"]),
    ("iso_c4_c4", ["iso", "{corpus}/graph_c4.json", "{corpus}/graph_c4_relabeled.json"]),
    ("partition_full", ["partition", "{corpus}/set_k2.json", "{corpus}/set_host.json", "--full"]),
    ("scan_two_sets", ["scan", "{corpus}/sequence_two_sets.json"]),
    ("scan_k3_k2_k4", ["scan", "{corpus}/sequence_k3_k2_k4.json", "--all-pairs"]),
]


def cleanup_folders():
    """Delete everything inside the output folder before a run."""
    print("Cleaning up folders before starting pipeline...")
    folder_path = Path(output_root)
    if not folder_path.exists():
        print(f"Warning: Folder '{output_root}' does not exist.")
        return
    deleted_count = 0
    for item in folder_path.iterdir():
        try:
            if item.is_file():
                item.unlink()
            elif item.is_dir():
                shutil.rmtree(item)
            deleted_count += 1
        except Exception as e:
            print(f"Error deleting {item}: {e}")
    print(f"Total items deleted from {output_root}: {deleted_count}")


def run_corpus(run_index):
    """Run every corpus command once, saving stdout per command

    Args:
        run_index (int): Pass number, used as the output subfolder name

    Returns:
        list[dict]: One row per command with exit code and output digest
    """
    run_dir = Path(output_root) / f"run_{run_index}"
    run_dir.mkdir(parents=True, exist_ok=True)
    env = dict(os.environ, PYTHONPATH="src")
    rows = []
    for name, arguments in corpus_commands:
        argv = [arg.format(corpus=corpus_dir) for arg in arguments]
        print(f"Running {name}...")
        completed = subprocess.run(
            [sys.executable, "-m", "fcsg_minors", *argv],
            capture_output=True,
            env=env,
        )
        output_file = run_dir / f"{name}.json"
        output_file.write_bytes(completed.stdout)
        rows.append(
            {
                "run": run_index,
                "command": name,
                "exit_code": completed.returncode,
                "sha256": hashlib.sha256(completed.stdout).hexdigest(),
            }
        )
    return rows


if __name__ == "__main__":
    cleanup_folders()
    os.makedirs(output_root, exist_ok=True)

    rows = []
    for run_index in range(1, repeat_runs + 1):
        print(f"Step {run_index}: running the corpus...")
        rows.extend(run_corpus(run_index))
        print()

    summary = pd.DataFrame(rows)
    summary_file = Path(output_root) / "digests.csv"
    summary.to_csv(summary_file, index=False)
    print(f"Saved digests to {summary_file}")

    distinct = summary.groupby("command")["sha256"].nunique()
    unstable = distinct[distinct > 1]
    if not unstable.empty:
        print(f"Non-deterministic output for: {', '.join(unstable.index)}")
        sys.exit(1)
    print("All outputs identical across runs.")
