"""Write every figure table as CSV and print a one-line summary of each.

Equivalent to ``qosm figures --out DIR`` plus a quick look at the data.
"""

import argparse
import csv
from pathlib import Path

from qosm.cli import main as cli_main


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="figures")
    args = parser.parse_args()

    code = cli_main(["figures", "--out", args.out])
    if code:
        raise SystemExit(code)
    for path in sorted(Path(args.out).glob("*.csv")):
        with path.open() as fh:
            rows = list(csv.DictReader(fh))
        filled = sum(1 for r in rows if all(v != "" for v in r.values()))
        print(f"{path.name:24} {len(rows):4d} rows, {filled:4d} complete, columns {list(rows[0])}")


if __name__ == "__main__":
    main()
