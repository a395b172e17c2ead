"""The k-th level of the affine integer programming hierarchy on digraphs.

Variables are ``lambda_S(f)`` for every vertex set ``S`` of ``G`` with
``1 <= |S| <= k`` and every ``f: S -> V(H)``, plus ``lambda_g(f)`` for every
edge ``g`` of ``G`` and every ``f: {g1, g2} -> V(H)``.  Constraints:

* AIP1  ``sum_f lambda_S(f) = 1``
* AIP2  ``lambda_R(f) = sum_{f' | R = f} lambda_S(f')`` for nonempty ``R`` strictly inside ``S``
* AIP3  ``lambda_R(f) = sum_{f' | R = f} lambda_g(f')`` for nonempty ``R`` inside ``{g1, g2}``, ``|R| <= k``
* AIP4  ``lambda_g(f) = 0`` when ``f(g)`` is not an edge of ``H``

AIP4 variables are dropped at build time.  The level is YES when the system
has an integer solution.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .diophantine import BigMatrix, solve_sparse
from .errors import ArgumentError, CapacityError, StructureError

Edge = tuple[int, int]


@dataclass(frozen=True)
class Digraph:
    vertex_count: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.vertex_count < 1:
            raise StructureError(f"a digraph needs at least one vertex, got {self.vertex_count}")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        seen = set()
        for u, v in edges:
            if not (1 <= u <= self.vertex_count and 1 <= v <= self.vertex_count):
                raise StructureError(f"edge {(u, v)} outside vertices 1..{self.vertex_count}")
            if (u, v) in seen:
                raise StructureError(f"duplicate edge {(u, v)}")
            seen.add((u, v))
        object.__setattr__(self, "edges", edges)

    @property
    def vertices(self) -> range:
        return range(1, self.vertex_count + 1)

    @property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @property
    def is_loopless(self) -> bool:
        return all(u != v for u, v in self.edges)

    def to_json(self) -> dict:
        return {"vertices": self.vertex_count, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, doc: dict) -> "Digraph":
        try:
            return cls(int(doc["vertices"]), tuple(tuple(e) for e in doc["edges"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise StructureError(f"malformed digraph document: {exc}") from exc


def clique(n: int) -> Digraph:
    """``K_n`` as a symmetric loopless digraph."""
    return Digraph(n, tuple((u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v))


def cycle(n: int) -> Digraph:
    """``C_n`` as a symmetric digraph (both orientations of each cycle edge)."""
    if n < 3:
        raise ArgumentError(f"cycles need at least 3 vertices, got {n}")
    edges = []
    for u in range(1, n + 1):
        v = u % n + 1
        edges += [(u, v), (v, u)]
    return Digraph(n, tuple(edges))


def is_bipartite(G: Digraph) -> bool:
    """2-colourability of the underlying undirected graph (loops are odd cycles)."""
    adj: dict[int, set[int]] = {v: set() for v in G.vertices}
    for u, v in G.edges:
        if u == v:
            return False
        adj[u].add(v)
        adj[v].add(u)
    colour: dict[int, int] = {}
    for start in G.vertices:
        if start in colour:
            continue
        colour[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in colour:
                    colour[w] = 1 - colour[u]
                    queue.append(w)
                elif colour[w] == colour[u]:
                    return False
    return True


DEFAULT_SEARCH_CAP = 10**8


def brute_homomorphism(G: Digraph, H: Digraph, cap: int = DEFAULT_SEARCH_CAP) -> Optional[tuple[int, ...]]:
    """A homomorphism ``G -> H`` as the tuple of images of ``1..|V(G)|``, or None.

    Exhaustive backtracking over all ``|V(H)|^|V(G)|`` maps; refuses search
    spaces larger than ``cap``.
    """
    space = H.vertex_count ** G.vertex_count
    if space > cap:
        raise CapacityError(f"search space {space} exceeds cap {cap}")
    h_edges = H.edge_set
    # edges whose later endpoint is v, checked once v is assigned
    closing: dict[int, list[Edge]] = {v: [] for v in G.vertices}
    for u, v in G.edges:
        closing[max(u, v)].append((u, v))
    image = [0] * (G.vertex_count + 1)

    def extend(v: int) -> bool:
        if v > G.vertex_count:
            return True
        for a in H.vertices:
            image[v] = a
            if all((image[x], image[y]) in h_edges for x, y in closing[v]) and extend(v + 1):
                return True
        return False

    return tuple(image[1:]) if extend(1) else None


@dataclass(frozen=True)
class Variable:
    """``kind`` is "S" (vertex subset) or "E" (edge).  ``domain`` is the sorted
    vertex set the function ``f`` is defined on, ``images`` the values of
    ``f`` on ``domain`` in order; ``edge`` is set for "E" variables."""

    kind: str
    domain: tuple[int, ...]
    images: tuple[int, ...]
    edge: Optional[Edge] = None

    def restrict(self, R: Sequence[int]) -> tuple[int, ...]:
        pos = {v: t for t, v in enumerate(self.domain)}
        return tuple(self.images[pos[v]] for v in R)

    def label(self) -> str:
        f = ",".join(f"{v}->{a}" for v, a in zip(self.domain, self.images))
        if self.kind == "S":
            return f"S{list(self.domain)}:{{{f}}}"
        return f"g{list(self.edge)}:{{{f}}}"


@dataclass
class AipSystem:
    G: Digraph
    H: Digraph
    k: int
    variables: list[Variable]
    rows: list[dict[int, int]]
    rhs: list[int]
    families: list[str]
    subset_index: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = field(repr=False)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.variables)

    def matrix(self) -> BigMatrix:
        m, n = self.shape
        return BigMatrix(m, n, tuple(row.get(c, 0) for row in self.rows for c in range(n)))


def _subsets(vertices: Iterable[int], k: int) -> list[tuple[int, ...]]:
    vs = list(vertices)
    return [S for s in range(1, k + 1) for S in itertools.combinations(vs, s)]


def _nonempty_subsets(S: tuple[int, ...], proper: bool) -> list[tuple[int, ...]]:
    top = len(S) - 1 if proper else len(S)
    return [R for s in range(1, top + 1) for R in itertools.combinations(S, s)]


def variable_count(G: Digraph, H: Digraph, k: int) -> int:
    """Number of columns ``build_system`` would create, without building it."""
    n = H.vertex_count
    total = sum(math.comb(G.vertex_count, s) * n**s for s in range(1, k + 1))
    h_edges = H.edge_set
    loops = sum(1 for a in H.vertices if (a, a) in h_edges)
    for u, v in G.edges:
        total += loops if u == v else len(h_edges)
    return total


def build_system(G: Digraph, H: Digraph, k: int) -> AipSystem:
    if k < 1:
        raise ArgumentError(f"level must be >= 1, got {k}")
    h_vertices = list(H.vertices)
    h_edges = H.edge_set
    variables: list[Variable] = []
    subset_index: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = {}
    subsets = _subsets(G.vertices, k)
    for S in subsets:
        for f in itertools.product(h_vertices, repeat=len(S)):
            subset_index[(S, f)] = len(variables)
            variables.append(Variable("S", S, f))
    edge_vars: list[list[int]] = []
    for g in G.edges:
        dom = tuple(sorted(set(g)))
        cols = []
        for f in itertools.product(h_vertices, repeat=len(dom)):
            var = Variable("E", dom, f, g)
            if var.restrict(g) in h_edges:
                cols.append(len(variables))
                variables.append(var)
        edge_vars.append(cols)

    rows: list[dict[int, int]] = []
    rhs: list[int] = []
    families: list[str] = []

    def marginal_rows(R, sources: list[int], family: str):
        # lambda_R(f) - sum of source variables restricting to f = 0
        groups: dict[tuple[int, ...], list[int]] = {
            f: [] for f in itertools.product(h_vertices, repeat=len(R))
        }
        for c in sources:
            groups[variables[c].restrict(R)].append(c)
        for f, cols in groups.items():
            row = {subset_index[(R, f)]: 1}
            for c in cols:
                row[c] = row.get(c, 0) - 1
            rows.append({c: v for c, v in row.items() if v})
            rhs.append(0)
            families.append(family)

    by_subset: dict[tuple[int, ...], list[int]] = {S: [] for S in subsets}
    for (S, _), c in subset_index.items():
        by_subset[S].append(c)
    for S in subsets:
        rows.append({c: 1 for c in by_subset[S]})
        rhs.append(1)
        families.append("AIP1")
    for S in subsets:
        for R in _nonempty_subsets(S, proper=True):
            marginal_rows(R, by_subset[S], "AIP2")
    for g, cols in zip(G.edges, edge_vars):
        dom = tuple(sorted(set(g)))
        for R in _nonempty_subsets(dom, proper=False):
            if len(R) <= k:
                marginal_rows(R, cols, "AIP3")
    return AipSystem(G, H, k, variables, rows, rhs, families, subset_index)


def check_witness(system: AipSystem, x: Sequence[int]) -> bool:
    """Substitute ``x`` into AIP1-AIP4, recomputed from the variable catalogue."""
    if len(x) != len(system.variables):
        return False
    H = system.H
    h_vertices = list(H.vertices)
    value: dict[tuple, int] = {}
    edge_values: dict[Edge, list[tuple[Variable, int]]] = {g: [] for g in system.G.edges}
    for var, xv in zip(system.variables, x):
        if var.kind == "S":
            value[(var.domain, var.images)] = xv
        else:
            if var.restrict(var.edge) not in H.edge_set:
                return False  # AIP4 variable should never be carried
            edge_values[var.edge].append((var, xv))
    subsets = _subsets(system.G.vertices, system.k)
    for S in subsets:
        fs = list(itertools.product(h_vertices, repeat=len(S)))
        if sum(value[(S, f)] for f in fs) != 1:
            return False
        for R in _nonempty_subsets(S, proper=True):
            pos = [S.index(v) for v in R]
            marg: dict[tuple[int, ...], int] = {}
            for f in fs:
                key = tuple(f[t] for t in pos)
                marg[key] = marg.get(key, 0) + value[(S, f)]
            for f in itertools.product(h_vertices, repeat=len(R)):
                if value[(R, f)] != marg.get(f, 0):
                    return False
    for g in system.G.edges:
        dom = tuple(sorted(set(g)))
        for R in _nonempty_subsets(dom, proper=False):
            if len(R) > system.k:
                continue
            marg = {}
            for var, xv in edge_values[g]:
                key = var.restrict(R)
                marg[key] = marg.get(key, 0) + xv
            for f in itertools.product(h_vertices, repeat=len(R)):
                if value[(R, f)] != marg.get(f, 0):
                    return False
    return True


@dataclass
class AipVerdict:
    answer: bool
    witness: Optional[list[int]] = None
    system: Optional[AipSystem] = field(default=None, repr=False)

    @property
    def label(self) -> str:
        return "YES" if self.answer else "NO"

    def witness_json(self) -> dict:
        if self.witness is None or self.system is None:
            return {"answer": self.label}
        return {
            "answer": self.label,
            "level": self.system.k,
            "assignment": {
                var.label(): xv for var, xv in zip(self.system.variables, self.witness) if xv
            },
        }


class WitnessError(AssertionError):
    pass


def aip_level_k(G: Digraph, H: Digraph, k: int) -> AipVerdict:
    system = build_system(G, H, k)
    result = solve_sparse(system.rows, system.rhs, len(system.variables), kernel=False)
    if not result.feasible:
        return AipVerdict(False, None, system)
    if not check_witness(system, result.witness):
        raise WitnessError("solver witness failed direct substitution")
    return AipVerdict(True, result.witness, system)
