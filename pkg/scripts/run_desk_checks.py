"""Run every verification suite at desk scale and write one JSON summary.

    python3 scripts/run_desk_checks.py --out results/desk_checks.json
"""

import argparse
import json
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from tropcrystal import geom, pcrystal, udiso


@dataclass
class DeskConfig:
    geom_ranks: tuple[int, ...] = (2, 3, 4, 5)
    geom_trials: int = 100
    seed: int = 0
    ud_ranks: tuple[int, ...] = (2, 3, 4, 5)
    crystal_cases: tuple[tuple[int, int], ...] = ((2, 1), (2, 2), (2, 3), (3, 1), (3, 2))


def run(cfg: DeskConfig) -> dict:
    rows = []

    def record(kind, report, started):
        rows.append({
            "kind": kind,
            "n": report.n,
            "checks": report.checks,
            "failures": len(report.failures),
            "seconds": round(time.perf_counter() - started, 3),
        })

    for n in cfg.geom_ranks:
        t = time.perf_counter()
        record("geom", geom.verify_axioms(n, cfg.geom_trials, cfg.seed + n), t)
    for n in cfg.ud_ranks:
        region = udiso.default_region(n)
        for kind, fn in (("ud-iso", udiso.verify_iso), ("ud-mechanical", udiso.verify_ud_mechanical)):
            t = time.perf_counter()
            record(kind, fn(n, region), t)
    for n, l in cfg.crystal_cases:
        t = time.perf_counter()
        record(f"crystal-axioms l={l}", pcrystal.check_crystal_axioms(n, l), t)
        t = time.perf_counter()
        record(f"perfect l={l}", pcrystal.perfectness_check(n, l), t)
    return {"config": asdict(cfg), "rows": rows, "all_passed": all(r["failures"] == 0 for r in rows)}


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", type=Path)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--trials", type=int, default=100)
    args = parser.parse_args()
    summary = run(DeskConfig(geom_trials=args.trials, seed=args.seed))
    for row in summary["rows"]:
        print(f"{row['kind']:<22} n={row['n']}  checks={row['checks']:>8}  failures={row['failures']}  {row['seconds']:.2f}s")
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(json.dumps(summary, indent=2) + "\n")
    raise SystemExit(0 if summary["all_passed"] else 1)


if __name__ == "__main__":
    main()
