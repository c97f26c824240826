"""Regenerate the golden CSV files under tests/golden/.

Run after an intentional change to numerical output, then review the diff.
"""

import shutil
from pathlib import Path

from qosm.cli import main

GOLDEN = Path(__file__).resolve().parents[1] / "tests" / "golden"

# (file name, argv) pairs shared with tests/test_cli.py
CASCADE_RUNS = {
    "cascade_bdc.csv": ["cascade", "--alpha", "-2.5", "--s", "0.6666666666666666", "--beta", "6",
                        "--a", "0.7", "--c-start", "0.6", "--c-stop", "0.001", "--c-count", "25",
                        "--c-log"],
    "cascade_udc.csv": ["cascade", "--alpha", "-2.5", "--s", "0.6666666666666666", "--beta", "2",
                        "--a", "1", "--c-start", "5", "--c-stop", "0.01", "--c-count", "10",
                        "--c-log", "--max-classes", "6"],
}


def regenerate(dest: Path = GOLDEN) -> None:
    figs = dest / "figures"
    if figs.exists():
        shutil.rmtree(figs)
    figs.mkdir(parents=True)
    assert main(["figures", "--out", str(figs)]) == 0
    for name, argv in CASCADE_RUNS.items():
        assert main(argv + ["--out", str(dest / name)]) == 0


if __name__ == "__main__":
    regenerate()
    print(f"golden files written to {GOLDEN}")
