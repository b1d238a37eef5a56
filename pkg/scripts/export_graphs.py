"""Write DOT and JSON crystal graphs of B^(2,l) for a grid of small (n, l)."""

import argparse
from pathlib import Path

from tropcrystal.pcrystal import graph_export


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", type=Path, default=Path("results/graphs"))
    parser.add_argument("--max-n", type=int, default=4)
    parser.add_argument("--max-l", type=int, default=2)
    args = parser.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)
    for n in range(2, args.max_n + 1):
        for l in range(1, args.max_l + 1):
            for fmt in ("dot", "json"):
                path = args.out_dir / f"B2_{l}_n{n}.{fmt}"
                path.write_text(graph_export(n, l, fmt))
                print(path)


if __name__ == "__main__":
    main()
