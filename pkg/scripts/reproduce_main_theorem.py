"""Reproduce the fooling result at desk scale.

For each (c, d, k) the script checks three claims: the direct AIP solve
accepts K_{d+1} against K_c, the crystal witness certifies the same, and
brute force finds no homomorphism K_{d+1} -> K_d.  A JSON report is
written to --out.
"""

import argparse
import sys

from crystalaip.cli import main

GRID = [(3, 3, 2), (3, 3, 3), (3, 4, 2), (3, 4, 3), (4, 4, 2), (4, 5, 2)]


def run(out_dir: str, quiet: bool) -> int:
    worst = 0
    for c, d, k in GRID:
        argv = ["--seed", "1", "fool", "--c", str(c), "--d", str(d), "--level", str(k),
                "--report", f"{out_dir}/fool_c{c}_d{d}_k{k}.json"]
        if quiet:
            argv.insert(0, "--quiet")
        code = main(argv)
        print(f"c={c} d={d} k={k}: exit {code}")
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default="reports")
    parser.add_argument("--quiet", action="store_true")
    args = parser.parse_args()
    sys.exit(run(args.out, args.quiet))
