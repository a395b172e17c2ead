"""Constructive witnesses that AIP levels accept non-colourable cliques.

A crystal of the zero-diagonal, sum-one, balanced matrix from
:func:`fooling_matrix` is projected onto every ``k``-tuple of vertices of
``G``; the resulting map ``xi`` sends each tensorised edge of ``G`` to a
hyperedge of the free structure of ``Z_aff`` over ``K_n^{(k)}``.  Hyperedge
membership is decided exactly by solving for the edge distribution ``Q``.

Also here: the base-level polymorphism checks for ``K_2`` (alternating and
parity functions).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Mapping, Optional, Sequence

import numpy as np

from .aip import Digraph, Edge
from .album import mine_crystal
from .diophantine import solve_sparse
from .errors import ArgumentError, ShapeError, UnsupportedError
from .tensor_core import Index, IntTensor, all_tuples, apply_projection, project_tuple


@dataclass(frozen=True)
class AffineVector:
    """Integer vector over an explicit index list whose entries sum to one."""

    index: tuple
    entries: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "index", tuple(self.index))
        object.__setattr__(self, "entries", tuple(int(v) for v in self.entries))
        if len(self.index) != len(self.entries):
            raise ShapeError("index and entries differ in length")
        if sum(self.entries) != 1:
            raise ArgumentError(f"affine vector entries sum to {sum(self.entries)}, not 1")

    def as_dict(self) -> dict:
        return dict(zip(self.index, self.entries))

    def __getitem__(self, key) -> int:
        return self.as_dict().get(key, 0)

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class MinionMap:
    """``pi: [source] -> [target]``, stored as the 1-based tuple of images."""

    source: int
    target: int
    assignment: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple(int(x) for x in self.assignment))
        if len(self.assignment) != self.source:
            raise ShapeError(f"assignment has {len(self.assignment)} entries for source {self.source}")
        if any(not 1 <= x <= self.target for x in self.assignment):
            raise ShapeError(f"assignment {self.assignment} leaves [{self.target}]")

    def then(self, rho: "MinionMap") -> "MinionMap":
        """``rho o self``."""
        if rho.source != self.target:
            raise ShapeError("maps do not compose")
        return MinionMap(self.source, rho.target, tuple(rho.assignment[x - 1] for x in self.assignment))


def zaff_map(v: Sequence[int] | AffineVector, pi: MinionMap) -> list[int]:
    """Minor of ``v`` along ``pi``: entry ``j`` sums ``v_l`` over ``pi(l) = j``."""
    entries = v.entries if isinstance(v, AffineVector) else tuple(int(x) for x in v)
    if len(entries) != pi.source:
        raise ShapeError(f"vector of length {len(entries)} for a map from [{pi.source}]")
    out = [0] * pi.target
    for value, j in zip(entries, pi.assignment):
        out[j - 1] += value
    return out


def tensor_power_edge(h: Sequence[int], k: int) -> dict[Index, tuple[int, ...]]:
    """The tensorised edge: position ``i`` in ``[2]^k`` holds ``h_i``."""
    if k < 1:
        raise ArgumentError(f"power must be >= 1, got {k}")
    h = tuple(h)
    if len(h) != 2:
        raise ShapeError(f"edges are pairs, got {h}")
    return {i: project_tuple(h, i) for i in all_tuples(2, k)}


def tensor_power_hyperedges(H: Digraph, k: int) -> list[tuple[tuple[int, ...], ...]]:
    """Hyperedges of ``H^{(k)}``, each flattened in ``[2]^k`` order."""
    return [tuple(tensor_power_edge(h, k).values()) for h in H.edges]


def fooling_matrix(n: int) -> IntTensor:
    """``[[0,0,1],[1,0,-1],[0,0,0]]`` padded with zeros to ``n x n``.

    Zero diagonal, entries summing to one, equal row and column sums.  No
    such integer matrix exists for ``n <= 2``.
    """
    if n <= 2:
        raise UnsupportedError(
            f"no integer {n}x{n} matrix has zero diagonal, total 1 and equal row/column sums"
        )
    arr = np.zeros((n, n), dtype=np.int64)
    arr[:3, :3] = [[0, 0, 1], [1, 0, -1], [0, 0, 0]]
    return IntTensor.from_array(arr)


def _check_fooling_args(G: Digraph, n: int, k: int) -> None:
    if not G.is_loopless:
        raise ArgumentError("the fooling construction needs a loopless digraph")
    if G.vertex_count < 2:
        raise ArgumentError("the fooling construction needs at least two vertices")
    if n < 3:
        raise UnsupportedError(f"clique size must be >= 3, got {n}")
    if k < 2:
        raise ArgumentError(f"level must be >= 2, got {k}")


def build_xi(G: Digraph, n: int, k: int, crystal: Optional[IntTensor] = None) -> dict[Index, IntTensor]:
    """``g -> projection of the crystal onto g`` for every ``g`` in ``V(G)^k``."""
    _check_fooling_args(G, n, k)
    if crystal is None:
        crystal = mine_crystal(fooling_matrix(n), G.vertex_count)
    return {g: apply_projection(crystal, g) for g in all_tuples(G.vertex_count, k)}


@dataclass(frozen=True)
class BlockEdgeCandidate:
    """``2^k`` blocks, one ``n^k`` tensor per position in ``[2]^k``."""

    k: int
    blocks: Mapping[Index, IntTensor]

    def __post_init__(self):
        blocks = {tuple(i): b for i, b in self.blocks.items()}
        if set(blocks) != set(all_tuples(2, self.k)):
            raise ShapeError(f"need exactly the 2^{self.k} block positions")
        shapes = {b.shape for b in blocks.values()}
        if len(shapes) != 1 or len(next(iter(shapes))) != self.k:
            raise ShapeError(f"blocks must share one {self.k}-mode shape, got {shapes}")
        object.__setattr__(self, "blocks", blocks)


def candidate_from_xi(xi: Mapping[Index, IntTensor], g: Edge, k: int) -> BlockEdgeCandidate:
    return BlockEdgeCandidate(k, {i: xi[h] for i, h in tensor_power_edge(g, k).items()})


def verify_free_edge(cand: BlockEdgeCandidate, H: Digraph) -> Optional[AffineVector]:
    """Find ``Q`` in ``Z_aff`` over ``E(H)`` whose minor along ``h -> h_i`` is block ``i``.

    Returns None when no integer ``Q`` exists, i.e. the candidate is not a
    hyperedge of the free structure.
    """
    k = cand.k
    n = H.vertex_count
    shape = next(iter(cand.blocks.values())).shape
    if shape != (n,) * k:
        raise ShapeError(f"blocks have shape {shape}, expected {(n,) * k}")
    edges = list(H.edges)
    rows: list[dict[int, int]] = []
    rhs: list[int] = []
    for i, block in cand.blocks.items():
        groups: dict[Index, dict[int, int]] = {}
        for c, h in enumerate(edges):
            groups.setdefault(project_tuple(h, i), {})[c] = 1
        arr = block.array
        for a in itertools.product(range(1, n + 1), repeat=k):
            rows.append(groups.get(a, {}))
            rhs.append(int(arr[tuple(x - 1 for x in a)]))
    rows.append({c: 1 for c in range(len(edges))})
    rhs.append(1)
    result = solve_sparse(rows, rhs, len(edges), kernel=False)
    if not result.feasible:
        return None
    return AffineVector(tuple(edges), result.witness)


def edge_distribution(M: IntTensor, g: Edge) -> dict[Edge, int]:
    """The distribution over ordered pairs read off ``M`` for the edge ``g``.

    ``M`` is reoriented so that the smaller endpoint of ``g`` indexes rows.
    """
    alpha = (1, 2) if g[0] < g[1] else (2, 1)
    oriented = apply_projection(M, alpha)
    n = M.shape[0]
    return {(a, b): int(oriented.array[a - 1, b - 1]) for a in range(1, n + 1) for b in range(1, n + 1)}


@dataclass
class WitnessReport:
    sums_to_one: bool
    edges_ok: bool
    compatible: bool
    distributions: dict[Edge, AffineVector]
    diagonal_vanishes: bool

    def __bool__(self) -> bool:
        return self.sums_to_one and self.edges_ok and self.compatible and self.diagonal_vanishes


def certify_main_theorem_witness(G: Digraph, n: int, k: int) -> WitnessReport:
    from .aip import clique

    _check_fooling_args(G, n, k)
    M = fooling_matrix(n)
    xi = build_xi(G, n, k)
    H = clique(n)
    sums = all(T.total() == 1 for T in xi.values())
    dists: dict[Edge, AffineVector] = {}
    edges_ok = True
    diag_ok = True
    for g in G.edges:
        Q = verify_free_edge(candidate_from_xi(xi, g, k), H)
        if Q is None:
            edges_ok = False
            continue
        dists[g] = Q
        expected = edge_distribution(M, g)
        if any(expected[(a, a)] for a in H.vertices):
            diag_ok = False
        if Q.as_dict() != {e: v for e, v in expected.items() if e[0] != e[1]}:
            diag_ok = False
    compatible = all(
        xi[project_tuple(g, i)] == apply_projection(xi[g], i)
        for g in xi
        for i in all_tuples(k, k)
    )
    return WitnessReport(sums, edges_ok, compatible, dists, diag_ok)


def verify_main_theorem_witness(G: Digraph, n: int, k: int) -> bool:
    return bool(certify_main_theorem_witness(G, n, k))


# -- base level: alternating polymorphisms -----------------------------------

FunctionTable = Mapping[tuple[int, ...], int]


def table_from(func: Callable[[tuple[int, ...]], int], domain: Sequence[int], L: int) -> dict:
    return {h: func(h) for h in itertools.product(domain, repeat=L)}


def parity_table(L: int, labels: Sequence[int] = (0, 1)) -> dict:
    """``h -> sum (-1)^(i+1) h_i mod 2`` with the two values named by ``labels``."""
    lo, hi = labels
    pos = {lo: 0, hi: 1}
    return table_from(
        lambda h: labels[sum((-1) ** t * pos[x] for t, x in enumerate(h)) % 2], labels, L
    )


def constant_table(L: int, value: int = 0, labels: Sequence[int] = (0, 1)) -> dict:
    return table_from(lambda h: value, labels, L)


def first_coordinate_table(L: int, labels: Sequence[int] = (0, 1)) -> dict:
    return table_from(lambda h: h[0], labels, L)


def _parity_preserving_permutations(L: int):
    odd = list(range(1, L + 1, 2))
    even = list(range(2, L + 1, 2))
    for po in itertools.permutations(odd):
        for pe in itertools.permutations(even):
            perm = [0] * L
            perm[0::2] = po
            perm[1::2] = pe
            yield tuple(perm)


def is_alternating(table: FunctionTable, L: int) -> bool:
    if L < 3 or L % 2 == 0:
        raise ArgumentError(f"alternating functions have odd arity >= 3, got {L}")
    domain = sorted({x for key in table for x in key})
    for a in itertools.product(domain, repeat=L):
        if a not in table:
            raise ArgumentError(f"function table misses {a}")
    for perm in _parity_preserving_permutations(L):
        for a in itertools.product(domain, repeat=L):
            if table[a] != table[project_tuple(a, perm)]:
                return False
    for a in itertools.product(domain, repeat=L - 2):
        vals = {table[a + (b, b)] for b in domain}
        if len(vals) > 1:
            return False
    return True


def is_polymorphism(table: FunctionTable, L: int, H: Digraph) -> bool:
    """``table`` (keyed by ``V(H)^L``) maps every edge of ``H^L`` to an edge of ``H``."""
    edges = H.edge_set
    for tuple_of_edges in itertools.product(H.edges, repeat=L):
        h = tuple(e[0] for e in tuple_of_edges)
        l = tuple(e[1] for e in tuple_of_edges)
        if (table[h], table[l]) not in edges:
            return False
    return True
