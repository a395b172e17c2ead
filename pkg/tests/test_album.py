import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import tensors
from crystalaip.album import (
    Album,
    album_from_tensor,
    crystal_album,
    is_realistic,
    mine_crystal,
    realism_violation,
    realize,
    realize_unit_shape,
    realize_vectors,
    realize_with_trace,
    rotate_album,
    transpositions,
    verify_crystal,
)
from crystalaip.corpus import random_album, random_balanced_matrix, random_tensor
from crystalaip.errors import ArgumentError, BalanceError, RealismError, ShapeError, StructureError
from crystalaip.tensor_core import IntTensor, apply_projection, increasing_tuples


def realizes(C, A):
    return C.shape == A.n and all(apply_projection(C, i) == pic for i, pic in A)


def vec(*xs):
    return IntTensor.from_nested(list(xs))


# -- structure ----------------------------------------------------------------

def test_album_requires_every_increasing_tuple():
    with pytest.raises(StructureError):
        Album(2, (2, 2, 2), {(1, 2): IntTensor.zeros((2, 2))})


def test_album_checks_picture_shapes():
    with pytest.raises(StructureError):
        Album(1, (2, 3), {(1,): vec(1, 2), (2,): vec(1, 2)})


# -- is_realistic ----------------------------------------------------------------

def test_all_m_album_is_realistic(M):
    assert is_realistic(crystal_album(M, 4))


def test_p1_total_mismatch_reports_quadruple():
    A = Album(1, (1, 1), {(1,): vec(1), (2,): vec(2)})
    assert not is_realistic(A)
    assert realism_violation(A) == ((2,), (1,), (), ())
    with pytest.raises(RealismError) as exc:
        realize(A)
    assert exc.value.quadruple == ((2,), (1,), (), ())


def test_projections_of_one_tensor_are_realistic(rng):
    T = random_tensor(rng, (2, 3, 2))
    assert is_realistic(album_from_tensor(T, 2))


# -- album_from_tensor --------------------------------------------------------

def test_album_from_matrix():
    A = album_from_tensor(IntTensor.from_nested([[1, 2], [3, 4]]), 1)
    assert A.pictures[(1,)].entries() == [3, 7]
    assert A.pictures[(2,)].entries() == [4, 6]


def test_album_from_scalar_is_empty():
    A = album_from_tensor(IntTensor.scalar(5), 1)
    assert A.pictures == {} and A.n == ()


# -- rotation -----------------------------------------------------------------

def test_identity_rotation_is_noop(rng):
    A = random_album(rng)
    assert rotate_album(A, tuple(range(1, A.q + 1))) == A


def test_rotation_swaps_vector_pictures():
    A = Album(1, (2, 3), {(1,): vec(1, 0), (2,): vec(0, 1, 0)})
    R = rotate_album(A, (2, 1))
    assert R.pictures[(1,)] == vec(0, 1, 0)
    assert R.pictures[(2,)] == vec(1, 0)


def test_rotation_rejects_non_permutation():
    A = Album(1, (2, 3), {(1,): vec(1, 0), (2,): vec(0, 1, 0)})
    with pytest.raises(ArgumentError):
        rotate_album(A, (1, 1))


@given(st.integers(0, 10**6))
def test_rotation_preserves_realism_and_realisability(seed):
    rng = random.Random(seed)
    A = random_album(rng)
    perm = list(range(1, A.q + 1))
    rng.shuffle(perm)
    R = rotate_album(A, perm)
    assert is_realistic(R)
    X = realize(R)
    inverse = [0] * A.q
    for t, x in enumerate(perm, start=1):
        inverse[x - 1] = t
    assert realizes(apply_projection(X, inverse), A)


@given(st.integers(0, 10**6))
def test_transpositions_compose_to_the_permutation(seed):
    rng = random.Random(seed)
    A = random_album(rng)
    perm = list(range(1, A.q + 1))
    rng.shuffle(perm)
    stepwise = A
    for t in transpositions(perm):
        assert sum(a != b for a, b in zip(t, range(1, A.q + 1))) == 2
        stepwise = rotate_album(stepwise, t)
    assert stepwise == rotate_album(A, perm)


# -- base cases -----------------------------------------------------------------

def test_unit_shape_album():
    A = Album(2, (1, 1, 1), {i: IntTensor((1, 1), [5]) for i in increasing_tuples(3, 2)})
    C = realize_unit_shape(A)
    assert C.shape == (1, 1, 1) and C.entries() == [5]
    assert realize_unit_shape(Album(1, (1,), {(1,): vec(-2)})).entries() == [-2]
    bad = Album(2, (1, 1, 1), {(1, 2): IntTensor((1, 1), [5]), (1, 3): IntTensor((1, 1), [5]),
                               (2, 3): IntTensor((1, 1), [4])})
    with pytest.raises(RealismError):
        realize_unit_shape(bad)


def test_vector_albums():
    A = Album(1, (2, 2), {(1,): vec(3, 7), (2,): vec(4, 6)})
    C = realize_vectors(A)
    assert realizes(C, A)
    assert realize_vectors(Album(1, (3,), {(1,): vec(1, 2, 3)})) == vec(1, 2, 3)
    ones = Album(1, (1, 1, 1), {(i,): vec(1) for i in (1, 2, 3)})
    assert realize_vectors(ones).entries() == [1]


def test_vector_album_placement_rule():
    # the peeled value sits in the far corner of the last slice
    A = Album(1, (2, 2), {(1,): vec(3, 7), (2,): vec(4, 6)})
    C = realize_vectors(A)
    assert C[(2, 2)] == 6 and C[(1, 2)] == 0


def test_empty_album_realizes_to_zeros():
    A = Album(3, (2, 3), {})
    assert realize(A) == IntTensor.zeros((2, 3))


# -- realize ----------------------------------------------------------------------

@given(st.integers(0, 10**6))
def test_realize_soundness(seed):
    A = random_album(random.Random(seed))
    C, trace = realize_with_trace(A)
    assert realizes(C, A)
    assert trace.replay() == C


@given(tensors(min_modes=1, max_modes=4, max_size=3), st.integers(1, 3))
def test_realize_reproduces_projections(T, p):
    A = album_from_tensor(T, p)
    assert realizes(realize(A), A)


def test_realize_rejects_perturbed_album(rng):
    T = random_tensor(rng, (2, 2, 2))
    A = album_from_tensor(T, 2)
    pics = dict(A.pictures)
    pics[(1, 2)] = pics[(1, 2)] + IntTensor.from_nested([[1, 0], [0, 0]])
    with pytest.raises(RealismError):
        realize(Album(2, A.n, pics))


# -- crystals -------------------------------------------------------------------

def test_example_crystal(M):
    C = mine_crystal(M, 4)
    assert C.shape == (3, 3, 3, 3)
    assert verify_crystal(C, M)
    assert C.total() == M.total() == 1


def test_identity_crystal():
    I2 = IntTensor.from_nested([[1, 0], [0, 1]])
    C = mine_crystal(I2, 3)
    assert verify_crystal(C, I2)
    diagonal = IntTensor((2, 2, 2), [1, 0, 0, 0, 0, 0, 0, 1])
    assert verify_crystal(diagonal, I2)


def test_unbalanced_matrix_is_rejected():
    with pytest.raises(BalanceError):
        mine_crystal(IntTensor.from_nested([[1, 1], [0, 0]]), 3)
    with pytest.raises(ArgumentError):
        mine_crystal(IntTensor.from_nested([[1, 0], [0, 1]]), 1)


@given(st.integers(0, 10**6), st.integers(2, 5))
def test_crystal_totals(seed, q):
    M = random_balanced_matrix(random.Random(seed), 3)
    C = mine_crystal(M, q)
    assert verify_crystal(C, M)
    assert C.total() == M.total()


def test_random_tensor_is_rarely_a_crystal(rng):
    hits = 0
    for _ in range(20):
        T = random_tensor(rng, (3, 3, 3))
        hits += verify_crystal(T, apply_projection(T, (1, 2)))
    assert hits == 0


def test_two_mode_crystal_is_the_matrix(M):
    assert verify_crystal(M, M)
    assert not verify_crystal(IntTensor.zeros((3, 3)), M)


def test_verify_crystal_shape_mismatch(M):
    with pytest.raises(ShapeError):
        verify_crystal(IntTensor.zeros((2, 2, 2)), M)


def test_trace_json_roundtrip(M):
    C, trace = realize_with_trace(crystal_album(M, 3))
    ops = {step["op"] for step in trace.to_json()}
    assert ops <= {"zeros", "unit", "vector", "peel", "glue", "rotate"}
    assert trace.replay() == C
