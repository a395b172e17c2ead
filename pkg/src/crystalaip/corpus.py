"""Deterministic test corpus: small digraphs, albums and balanced matrices."""

from __future__ import annotations

import itertools
import random
from pathlib import Path

from .aip import Digraph, clique, cycle
from .album import Album, album_from_tensor
from .tensor_core import IntTensor


def _canonical(n: int, edges: frozenset) -> tuple:
    best = None
    for perm in itertools.permutations(range(1, n + 1)):
        relabelled = tuple(sorted((perm[u - 1], perm[v - 1]) for u, v in edges))
        if best is None or relabelled < best:
            best = relabelled
    return best


def nonisomorphic_digraphs(n: int) -> list[Digraph]:
    """All loopless digraphs on ``n`` vertices up to isomorphism, canonically labelled."""
    arcs = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v]
    forms = set()
    for mask in range(1 << len(arcs)):
        edges = frozenset(a for t, a in enumerate(arcs) if mask >> t & 1)
        forms.add(_canonical(n, edges))
    return [Digraph(n, form) for form in sorted(forms, key=lambda f: (len(f), f))]


def small_digraphs(max_vertices: int = 4) -> list[Digraph]:
    return [G for n in range(1, max_vertices + 1) for G in nonisomorphic_digraphs(n)]


def random_tensor(rng: random.Random, shape, low: int = -3, high: int = 3) -> IntTensor:
    cells = 1
    for s in shape:
        cells *= s
    return IntTensor(shape, [rng.randint(low, high) for _ in range(cells)])


def random_album(rng: random.Random, p_range=(1, 3), q_range=(2, 5), max_size: int = 4) -> Album:
    q = rng.randint(*q_range)
    p = rng.randint(p_range[0], min(p_range[1], q))
    shape = tuple(rng.randint(1, max_size) for _ in range(q))
    return album_from_tensor(random_tensor(rng, shape), p)


def random_balanced_matrix(rng: random.Random, n: int, low: int = -3, high: int = 3) -> IntTensor:
    """Random ``n x n`` matrix with equal row and column sums, entries in ``[low, high]``.

    Everything but the last column is drawn at random; the last column is
    then solved for so that row ``i`` and column ``i`` agree.  Draws whose
    solved entries leave the range are rejected.
    """
    while True:
        M = [[rng.randint(low, high) for _ in range(n)] for _ in range(n)]
        ok = True
        for i in range(n - 1):
            row_rest = sum(M[i][:n - 1])
            col = sum(M[r][i] for r in range(n))
            M[i][n - 1] = col - row_rest
            if not low <= M[i][n - 1] <= high:
                ok = False
                break
        if ok:
            return IntTensor.from_nested(M)


def generate(seed: int, out_dir, albums: int = 20, matrices: int = 20) -> list[Path]:
    """Write the corpus under ``out_dir``; identical seeds give identical bytes."""
    from .io import album_to_json, digraph_to_json, tensor_to_json, write_json

    out = Path(out_dir)
    rng = random.Random(seed)
    written: list[Path] = []

    def put(rel: str, doc) -> None:
        path = out / rel
        write_json(path, doc)
        written.append(path)

    for G in small_digraphs(4):
        idx = sum(1 for p in written if p.parent.name == f"digraphs{G.vertex_count}")
        put(f"digraphs{G.vertex_count}/g{idx:03d}.json", digraph_to_json(G))
    for n in range(3, 8):
        put(f"named/C{n}.json", digraph_to_json(cycle(n)))
    for n in range(2, 6):
        put(f"named/K{n}.json", digraph_to_json(clique(n)))
    for t in range(albums):
        put(f"albums/album{t:03d}.json", album_to_json(random_album(rng)))
    for t in range(matrices):
        M = random_balanced_matrix(rng, rng.randint(2, 4))
        put(f"matrices/matrix{t:03d}.json", tensor_to_json(M))
    manifest = {"seed": seed, "files": [str(p.relative_to(out)) for p in written]}
    write_json(out / "manifest.json", manifest)
    return written
