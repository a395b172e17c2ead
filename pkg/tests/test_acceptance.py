"""Acceptance suite: ten criteria, each compared exactly (tolerance 0).

Every test records one PASS/FAIL line; the lines are echoed in the pytest
terminal summary and also printed when this file is run as a script.
"""

import functools
import itertools
import random
import sys
import time

import numpy as np
import pytest

from crystalaip.aip import aip_level_k, brute_homomorphism, check_witness, clique, cycle
from crystalaip.album import (
    Album,
    album_from_tensor,
    is_realistic,
    mine_crystal,
    realize,
    verify_crystal,
)
from crystalaip.corpus import random_album, random_balanced_matrix, random_tensor, small_digraphs
from crystalaip.diophantine import solve_diophantine
from crystalaip.errors import UnsupportedError
from crystalaip.fooling import (
    build_xi,
    candidate_from_xi,
    constant_table,
    fooling_matrix,
    is_alternating,
    is_polymorphism,
    parity_table,
    verify_free_edge,
    verify_main_theorem_witness,
)
from crystalaip.tensor_core import (
    IntTensor,
    apply_projection,
    contract,
    identity_tuple,
    increasing_tuples,
    indices,
    project_tuple,
    projection_tensor,
    unit_tensor,
)

SEED = 20240601
RESULTS: dict[int, tuple[str, bool, str]] = {}

M_EQ5 = IntTensor.from_nested([[0, 0, 1], [1, 0, -1], [0, 0, 0]])


def criterion(number: int, title: str, budget: float):
    """Record PASS/FAIL for one criterion; the wall time must stay within ``budget`` seconds."""

    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            t0 = time.perf_counter()
            ok, detail = False, ""
            try:
                detail = fn(*args, **kwargs) or ""
                elapsed = time.perf_counter() - t0
                assert elapsed < budget, f"took {elapsed:.1f}s, budget {budget}s"
                ok = True
            except BaseException as exc:
                detail = f"{type(exc).__name__}: {exc}"
                raise
            finally:
                elapsed = time.perf_counter() - t0
                line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {title} ({elapsed:.2f}s) {detail}"
                RESULTS[number] = (title, ok, line)
                print(line)

        return wrapper

    return deco


def realizes(C, A):
    return C.shape == A.n and all(apply_projection(C, i) == pic for i, pic in A)


@criterion(1, "crystal of the fooling matrix for q = 4", budget=1.0)
def test_criterion_01_crystal_existence():
    C = mine_crystal(M_EQ5, 4)
    assert C.shape == (3, 3, 3, 3)
    pairs = list(increasing_tuples(4, 2))
    assert len(pairs) == 6
    for i in pairs:
        assert apply_projection(C, i) == M_EQ5, i
    return f"entries in [{min(C.entries())}, {max(C.entries())}], total {C.total()}"


@criterion(2, "crystals of 100 random balanced matrices", budget=30.0)
def test_criterion_02_crystal_generality():
    rng = random.Random(SEED + 2)
    for _ in range(100):
        n = rng.randint(2, 4)
        q = rng.randint(2, 7)
        M = random_balanced_matrix(rng, n)
        assert max(abs(v) for v in M.entries()) <= 3
        C = mine_crystal(M, q)
        assert verify_crystal(C, M), (M.tolist(), q)
    return "100/100 verified"


@criterion(3, "realization of 200 albums and 50 perturbations", budget=60.0)
def test_criterion_03_realization():
    rng = random.Random(SEED + 3)
    albums = [random_album(rng, p_range=(1, 3), q_range=(2, 5), max_size=4) for _ in range(200)]
    for A in albums:
        assert is_realistic(A)
        assert realizes(realize(A), A)
    rejected = 0
    for t in range(50):
        A = albums[t]
        pics = dict(A.pictures)
        i = rng.choice(sorted(pics))
        cell = rng.choice(list(indices(pics[i].shape)))
        pics[i] = pics[i] + unit_tensor(pics[i].shape, cell).scale(rng.choice((-1, 1)))
        B = Album(A.p, A.n, pics)
        if is_realistic(B):
            assert realizes(realize(B), B)
        else:
            rejected += 1
    return f"200 realized, perturbations rejected {rejected}/50, rest realized"


def _box_solutions(A, b, radius=20):
    """Every x in [-radius, radius]^n with A x = b, by vectorised enumeration."""
    n = len(A[0])
    axis = np.arange(-radius, radius + 1, dtype=np.int64)
    grid = np.stack(np.meshgrid(*([axis] * n), indexing="ij"), axis=-1).reshape(-1, n)
    hits = np.all(grid @ np.array(A, dtype=np.int64).T == np.array(b, dtype=np.int64), axis=1)
    return grid[hits]


@criterion(4, "Diophantine witnesses and boxed brute force", budget=30.0)
def test_criterion_04_diophantine():
    rng = random.Random(SEED + 4)
    for _ in range(200):
        m, n = rng.randint(1, 8), rng.randint(1, 10)
        A = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
        x0 = [rng.randint(-50, 50) for _ in range(n)]
        b = [sum(a * x for a, x in zip(row, x0)) for row in A]
        res = solve_diophantine(A, b)
        assert res.feasible
        assert [sum(a * x for a, x in zip(row, res.witness)) for row in A] == b
    agree = feasible_only = 0
    for t in range(40):
        m = rng.randint(1, 3)
        A = [[rng.randint(-3, 3) for _ in range(4)] for _ in range(m)]
        if t % 2:
            x0 = [rng.randint(-3, 3) for _ in range(4)]
            b = [sum(a * x for a, x in zip(row, x0)) for row in A]
        else:
            b = [rng.randint(-6, 6) for _ in range(m)]
        res = solve_diophantine(A, b)
        if res.feasible:
            assert [sum(a * x for a, x in zip(row, res.witness)) for row in A] == b
        if len(_box_solutions(A, b)):
            assert res.feasible
            agree += 1
        elif res.feasible:
            feasible_only += 1
    return f"200 witnesses exact; box agreement {agree}, solver-only feasible {feasible_only}"


@criterion(5, "AIP says YES whenever a homomorphism exists", budget=300.0)
def test_criterion_05_yes_side():
    checked = 0
    for G in small_digraphs(4):
        if not G.is_loopless:
            continue
        for H in (clique(2), clique(3)):
            if brute_homomorphism(G, H) is None:
                continue
            for k in (1, 2, 3):
                verdict = aip_level_k(G, H, k)
                assert verdict.answer, (G, H.vertex_count, k)
                assert check_witness(verdict.system, verdict.witness)
                checked += 1
    return f"{checked} YES instances re-verified"


@criterion(6, "direct AIP route for the main theorem", budget=120.0)
def test_criterion_06_direct_route():
    for G, H, k in ((clique(4), clique(3), 2), (clique(4), clique(3), 3), (clique(5), clique(3), 3)):
        verdict = aip_level_k(G, H, k)
        assert verdict.label == "YES"
        assert check_witness(verdict.system, verdict.witness)
    assert brute_homomorphism(clique(4), clique(3)) is None
    assert brute_homomorphism(clique(5), clique(4)) is None
    return "AIP YES on K4/K3 (k=2,3) and K5/K3 (k=3); no K4->K3, no K5->K4"


@criterion(7, "witness route and the example edge distribution", budget=60.0)
def test_criterion_07_witness_route():
    for G, n, k in ((clique(4), 3, 2), (clique(4), 3, 3), (clique(5), 3, 2)):
        assert verify_main_theorem_witness(G, n, k), (G.vertex_count, n, k)
    xi = build_xi(clique(4), 3, 3)
    Q = verify_free_edge(candidate_from_xi(xi, (1, 2), 3), clique(3))
    expected = {(1, 2): 0, (1, 3): 1, (2, 1): 1, (2, 3): -1, (3, 1): 0, (3, 2): 0}
    assert Q is not None and Q.as_dict() == expected
    return f"Q(1,2) = {expected}"


@criterion(8, "negative control against K2", budget=10.0)
def test_criterion_08_negative_control():
    for k in (1, 2):
        assert aip_level_k(cycle(5), clique(2), k).label == "NO"
        assert aip_level_k(cycle(6), clique(2), k).label == "YES"
    with pytest.raises(UnsupportedError):
        fooling_matrix(2)
    return "C5 NO, C6 YES at k = 1, 2; no 2x2 fooling matrix"


@criterion(9, "parity and constant polymorphisms of K2", budget=10.0)
def test_criterion_09_polymorphisms():
    for L in (3, 5, 7):
        assert is_alternating(parity_table(L), L)
        assert is_polymorphism(parity_table(L, (1, 2)), L, clique(2))
    assert is_alternating(constant_table(3), 3)
    assert not is_polymorphism(constant_table(3, 1, (1, 2)), 3, clique(2))
    return "parity alternating + polymorphism for L = 3, 5, 7; constant not a polymorphism"


def _random_shape(rng, q_max=3, size_max=3, q_min=0):
    return tuple(rng.randint(1, size_max) for _ in range(rng.randint(q_min, q_max)))


def _random_modes(rng, q, p_max=3):
    return tuple(rng.randint(1, q) for _ in range(rng.randint(0, p_max))) if q else ()


@criterion(10, "projection lemmas and associativity, 500 instances each", budget=30.0)
def test_criterion_10_lemma_suite():
    rng = random.Random(SEED + 10)
    for _ in range(500):  # all-one projection onto the empty tuple
        n = _random_shape(rng, 4, 4)
        assert projection_tensor(n, ()) == IntTensor.ones(n)
    assert unit_tensor((), ()) == IntTensor.scalar(1)
    for _ in range(500):  # entry description
        n = _random_shape(rng, q_min=1)
        i = _random_modes(rng, len(n))
        n_i = project_tuple(n, i)
        a = tuple(rng.randint(1, s) for s in n_i)
        lhs = contract(unit_tensor(n_i, a), projection_tensor(n, i), len(i))
        members = [b for b in indices(n) if project_tuple(b, i) == a]
        rhs = IntTensor(n, [int(b in members) for b in indices(n)])
        assert lhs == rhs
    for _ in range(500):  # projection composition
        n = _random_shape(rng, q_min=1)
        i = _random_modes(rng, len(n))
        j = _random_modes(rng, len(i))
        lhs = projection_tensor(n, project_tuple(i, j))
        rhs = contract(projection_tensor(project_tuple(n, i), j), projection_tensor(n, i), len(i))
        assert lhs == rhs
    for _ in range(500):  # identity
        T = random_tensor(rng, _random_shape(rng, 4, 3))
        assert apply_projection(T, identity_tuple(T.ndim)) == T
    for _ in range(500):  # associativity
        a, s1, b, s2, c = (_random_shape(rng, 2, 3) for _ in range(5))
        T = random_tensor(rng, a + s1)
        U = random_tensor(rng, s1 + b + s2)
        V = random_tensor(rng, s2 + c)
        l, m = len(s1), len(s2)
        assert contract(contract(T, U, l), V, m) == contract(T, contract(U, V, m), l)
    return "2500 instances"


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    failed = 0
    for t in tests:
        try:
            t()
        except BaseException:
            failed += 1
    sys.exit(1 if failed else 0)
