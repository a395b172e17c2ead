"""Compare the witness route with the direct AIP solve on every small digraph.

Runs verify_main_theorem_witness(G, n, k) and aip_level_k(G, K_n, k) over all
loopless digraphs with 2 to 4 vertices, n in {3, 4}, k in {2, 3}, and prints
a table of agreements.  Any disagreement is printed and makes the exit
status nonzero.
"""

import argparse
import sys
import time

from crystalaip.aip import aip_level_k, clique
from crystalaip.corpus import small_digraphs
from crystalaip.fooling import verify_main_theorem_witness


def main(max_vertices: int, sizes, levels) -> int:
    graphs = [G for G in small_digraphs(max_vertices) if G.vertex_count >= 2 and G.is_loopless]
    bad = 0
    for n in sizes:
        for k in levels:
            t0 = time.perf_counter()
            agree = 0
            for G in graphs:
                witness = verify_main_theorem_witness(G, n, k)
                direct = aip_level_k(G, clique(n), k).answer
                if witness and direct:
                    agree += 1
                else:
                    bad += 1
                    print(f"disagreement: n={n} k={k} witness={witness} direct={direct} G={G.to_json()}")
            print(f"n={n} k={k}: {agree}/{len(graphs)} agree ({time.perf_counter() - t0:.1f}s)")
    return 1 if bad else 0


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-vertices", type=int, default=4)
    parser.add_argument("--sizes", type=int, nargs="+", default=[3, 4])
    parser.add_argument("--levels", type=int, nargs="+", default=[2, 3])
    args = parser.parse_args()
    sys.exit(main(args.max_vertices, args.sizes, args.levels))
