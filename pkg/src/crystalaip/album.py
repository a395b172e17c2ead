"""Albums of pictures, the compatibility check, and constructive realisation.

An album over ``n`` (``q`` modes) holds one ``p``-mode picture per strictly
increasing ``i`` in ``[q]^p``; it is realistic when any two pictures agree on
every shared ``(p-1)``-mode sub-projection.  :func:`realize` turns a
realistic album into a tensor whose projections are exactly the pictures by
the nested induction on ``p`` and on the total mode size, slicing along the
last mode and rotating modes whenever the last one has size 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Optional

import numpy as np

from .errors import (
    ArgumentError,
    BalanceError,
    RealismError,
    ShapeError,
    StructureError,
)
from .tensor_core import (
    Index,
    IntTensor,
    Shape,
    apply_projection,
    increasing_tuples,
    project_tuple,
    unit_tensor,
)

Quadruple = tuple[Index, Index, Index, Index]


@dataclass(frozen=True)
class Album:
    p: int
    n: Shape
    pictures: Mapping[Index, IntTensor]

    def __post_init__(self):
        n = tuple(int(x) for x in self.n)
        object.__setattr__(self, "n", n)
        if self.p < 1:
            raise StructureError(f"picture dimension must be >= 1, got {self.p}")
        if any(x < 1 for x in n):
            raise StructureError(f"album mode sizes must be positive, got {n}")
        pics = {tuple(k): v for k, v in self.pictures.items()}
        expected = set(increasing_tuples(len(n), self.p))
        if set(pics) != expected:
            missing = sorted(expected - set(pics))
            extra = sorted(set(pics) - expected)
            raise StructureError(
                f"album axes mismatch: missing {missing[:3]}, unexpected {extra[:3]}"
            )
        for i, pic in pics.items():
            if pic.shape != project_tuple(n, i):
                raise StructureError(
                    f"picture {i} has shape {pic.shape}, expected {project_tuple(n, i)}"
                )
        # canonical lexicographic order keeps iteration deterministic
        object.__setattr__(self, "pictures", {i: pics[i] for i in sorted(pics)})

    @property
    def q(self) -> int:
        return len(self.n)

    def __iter__(self):
        return iter(self.pictures.items())


@dataclass
class RealizationTrace:
    """Post-order record of the realisation recursion.

    Each step is a dict with an ``op`` key; :meth:`replay` runs them on a
    stack and returns the realised tensor.

    - ``zeros``/``unit``/``vector`` push a base-case tensor;
    - ``peel`` pops the reduced tensor and appends the last slice holding
      ``value`` at the far corner (the p = 1 step);
    - ``glue`` pops the sliced tensor, then the slice tensor, and stacks them
      along the last mode;
    - ``rotate`` pops a tensor realised in rotated coordinates and undoes the
      permutation ``perm``.
    """

    steps: list[dict] = field(default_factory=list)

    def replay(self) -> IntTensor:
        stack: list[IntTensor] = []
        for step in self.steps:
            op = step["op"]
            if op == "zeros":
                stack.append(IntTensor.zeros(step["shape"]))
            elif op == "unit":
                stack.append(IntTensor(step["shape"], [step["value"]]))
            elif op == "vector":
                stack.append(IntTensor(step["shape"], step["entries"]))
            elif op == "peel":
                stack.append(_peel_glue(stack.pop(), step["value"]))
            elif op == "glue":
                tilde = stack.pop()
                hat = stack.pop()
                stack.append(_slice_glue(hat, tilde))
            elif op == "rotate":
                stack.append(_unrotate(stack.pop(), tuple(step["perm"])))
            else:
                raise StructureError(f"unknown trace op {op!r}")
        if len(stack) != 1:
            raise StructureError(f"trace leaves {len(stack)} tensors on the stack")
        return stack[0]

    def to_json(self) -> list[dict]:
        return [dict(s) for s in self.steps]


def realism_violation(A: Album) -> Optional[Quadruple]:
    """First ``(i, j, r, s)`` with ``i_r == j_s`` but differing sub-projections.

    Pictures are scanned in lexicographic order; ``j`` is the earliest
    picture that shares the sub-tuple, so the returned quadruple is stable.
    """
    p = A.p
    seen: dict[Index, tuple[Index, Index, IntTensor]] = {}
    for i, pic in A.pictures.items():
        for r in increasing_tuples(p, p - 1):
            key = project_tuple(i, r)
            sub = apply_projection(pic, r)
            if key not in seen:
                seen[key] = (i, r, sub)
                continue
            j, s, ref = seen[key]
            if ref != sub:
                return (i, j, r, s)
    return None


def is_realistic(A: Album) -> bool:
    return realism_violation(A) is None


def _require_realistic(A: Album) -> None:
    bad = realism_violation(A)
    if bad is not None:
        i, j, r, s = bad
        raise RealismError(
            f"album is not realistic: picture {i} projected onto {r} differs from "
            f"picture {j} projected onto {s}",
            quadruple=bad,
        )


def album_from_tensor(T: IntTensor, p: int) -> Album:
    """All increasing ``p``-mode pictures of ``T``."""
    if p < 1:
        raise ArgumentError(f"picture dimension must be >= 1, got {p}")
    pics = {i: apply_projection(T, i) for i in increasing_tuples(T.ndim, p)}
    return Album(p, T.shape, pics)


def _check_permutation(perm, q: int) -> Index:
    perm = tuple(int(x) for x in perm)
    if sorted(perm) != list(range(1, q + 1)):
        raise ArgumentError(f"{perm} is not a permutation of (1..{q})")
    return perm


def inverse_permutation(perm: Index) -> Index:
    inv = [0] * len(perm)
    for t, x in enumerate(perm, start=1):
        inv[x - 1] = t
    return tuple(inv)


def rotate_album(A: Album, perm) -> Album:
    """Album seen in coordinates where new mode ``t`` is old mode ``perm[t]``.

    The picture at ``i`` of the result is the original picture at the sorted
    tuple ``sorted(perm_i)``, with its modes reordered to follow ``perm_i``.
    If ``X`` realises the rotated album then ``apply_projection(X,
    inverse_permutation(perm))`` realises ``A``.
    """
    perm = _check_permutation(perm, A.q)
    n_rot = project_tuple(A.n, perm)
    pics = {}
    for i in increasing_tuples(A.q, A.p):
        image = project_tuple(perm, i)
        src = tuple(sorted(image))
        # position of each rotated mode inside the source picture
        order = tuple(src.index(x) + 1 for x in image)
        pics[i] = apply_projection(A.pictures[src], order)
    return Album(A.p, n_rot, pics)


def _transposition(q: int, x: int, y: int) -> Index:
    perm = list(range(1, q + 1))
    perm[x - 1], perm[y - 1] = perm[y - 1], perm[x - 1]
    return tuple(perm)


def transpositions(perm) -> list[Index]:
    """Factor a permutation into transpositions ``t_1, ..., t_m``.

    Rotating by ``t_1``, then ``t_2``, ... equals rotating by ``perm``.
    """
    perm = list(perm)
    q = len(perm)
    current = list(range(1, q + 1))
    out = []
    for pos in range(q):
        if current[pos] != perm[pos]:
            other = current.index(perm[pos])
            t = _transposition(q, pos + 1, other + 1)
            out.append(t)
            current[pos], current[other] = current[other], current[pos]
    return out


def _unrotate(T: IntTensor, perm: Index) -> IntTensor:
    return apply_projection(T, inverse_permutation(perm))


def _peel_glue(reduced: IntTensor, value: int) -> IntTensor:
    shape = reduced.shape[:-1] + (reduced.shape[-1] + 1,)
    arr = np.zeros(shape, dtype=np.int64)
    arr[..., :-1] = reduced.array
    arr[(-1,) * len(shape)] = value
    return IntTensor.from_array(arr)


def _slice_glue(hat: IntTensor, tilde: IntTensor) -> IntTensor:
    arr = np.concatenate([tilde.array, hat.array[..., np.newaxis]], axis=-1)
    return IntTensor.from_array(arr)


def _last_slice(T: IntTensor) -> IntTensor:
    return IntTensor.from_array(np.ascontiguousarray(T.array[..., -1]))


def _drop_last_slice(T: IntTensor) -> IntTensor:
    return IntTensor.from_array(np.ascontiguousarray(T.array[..., :-1]))


def _rotation_for(n: Shape) -> Optional[Index]:
    """Transposition moving the highest-index mode of size >= 2 last."""
    if n[-1] >= 2:
        return None
    for x in range(len(n) - 1, 0, -1):
        if n[x - 1] >= 2:
            return _transposition(len(n), x, len(n))
    return None


def _realize(A: Album, trace: RealizationTrace) -> IntTensor:
    p, n, q = A.p, A.n, A.q
    if p > q:
        trace.steps.append({"op": "zeros", "shape": list(n)})
        return IntTensor.zeros(n)
    if all(x == 1 for x in n):
        return _unit_case(A, trace)
    if p == 1 and q == 1:
        pic = A.pictures[(1,)]
        trace.steps.append({"op": "vector", "shape": list(n), "entries": pic.entries()})
        return pic
    perm = _rotation_for(n)
    if perm is not None:
        rotated = _realize(rotate_album(A, perm), trace)
        trace.steps.append({"op": "rotate", "perm": list(perm)})
        return _unrotate(rotated, perm)
    if p == 1:
        return _peel_vectors(A, trace)
    return _slice_step(A, trace)


def _unit_case(A: Album, trace: RealizationTrace) -> IntTensor:
    values = {int(pic.array.reshape(-1)[0]) for pic in A.pictures.values()}
    if len(values) != 1:
        raise RealismError(f"unit-shape album with differing entries {sorted(values)}")
    value = values.pop()
    trace.steps.append({"op": "unit", "shape": list(A.n), "value": value})
    return IntTensor(A.n, [value])


def _peel_vectors(A: Album, trace: RealizationTrace) -> IntTensor:
    n, q = A.n, A.q
    last = A.pictures[(q,)]
    value = int(last.array[-1])
    pics = {}
    for (i,), pic in A.pictures.items():
        if i == q:
            pics[(i,)] = _drop_last_slice(pic)
        else:
            pics[(i,)] = pic - unit_tensor(pic.shape, pic.shape).scale(value)
    reduced_n = n[:-1] + (n[-1] - 1,)
    reduced = _realize(Album(1, reduced_n, pics), trace)
    trace.steps.append({"op": "peel", "value": value})
    return _peel_glue(reduced, value)


def _slice_step(A: Album, trace: RealizationTrace) -> IntTensor:
    p, n, q = A.p, A.n, A.q
    hat_n = n[:-1]
    hat_pics = {
        i: _last_slice(A.pictures[i + (q,)]) for i in increasing_tuples(q - 1, p - 1)
    }
    hat = _realize(Album(p - 1, hat_n, hat_pics), trace)
    tilde_pics = {}
    for i, pic in A.pictures.items():
        if i[-1] != q:
            tilde_pics[i] = pic - apply_projection(hat, i)
        else:
            tilde_pics[i] = _drop_last_slice(pic)
    tilde_n = n[:-1] + (n[-1] - 1,)
    tilde = _realize(Album(p, tilde_n, tilde_pics), trace)
    trace.steps.append({"op": "glue"})
    return _slice_glue(hat, tilde)


def realize_with_trace(A: Album) -> tuple[IntTensor, RealizationTrace]:
    _require_realistic(A)
    trace = RealizationTrace()
    return _realize(A, trace), trace


def realize(A: Album) -> IntTensor:
    """A tensor whose increasing ``p``-mode projections are the pictures of ``A``.

    Raises :class:`RealismError` (carrying the violating quadruple) if the
    album is not realistic.  For ``p > q`` the all-zero tensor is returned.
    """
    return realize_with_trace(A)[0]


def realize_unit_shape(A: Album) -> IntTensor:
    if any(x != 1 for x in A.n):
        raise ShapeError(f"unit-shape realisation needs n = 1_q, got {A.n}")
    _require_realistic(A)
    if A.p > A.q:
        return IntTensor.zeros(A.n)
    return _unit_case(A, RealizationTrace())


def realize_vectors(A: Album) -> IntTensor:
    if A.p != 1:
        raise ArgumentError(f"vector albums have p = 1, got p = {A.p}")
    return realize(A)


def is_balanced(M: IntTensor) -> bool:
    return apply_projection(M, (1,)) == apply_projection(M, (2,))


def _check_square(M: IntTensor) -> int:
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ShapeError(f"square matrix required, got shape {M.shape}")
    return M.shape[0]


def crystal_album(M: IntTensor, q: int) -> Album:
    n = _check_square(M)
    return Album(2, (n,) * q, {i: M for i in increasing_tuples(q, 2)})


def mine_crystal(M: IntTensor, q: int) -> IntTensor:
    """A ``q``-mode cubical tensor all of whose increasing pair projections are ``M``."""
    _check_square(M)
    if q < 2:
        raise ArgumentError(f"crystal dimension must be >= 2, got {q}")
    if not is_balanced(M):
        raise BalanceError(
            f"row sums {apply_projection(M, (1,)).entries()} differ from "
            f"column sums {apply_projection(M, (2,)).entries()}"
        )
    return realize(crystal_album(M, q))


def verify_crystal(C: IntTensor, M: IntTensor) -> bool:
    n = _check_square(M)
    if any(x != n for x in C.shape):
        raise ShapeError(f"crystal shape {C.shape} is not cubical of size {n}")
    return all(apply_projection(C, i) == M for i in itertools.combinations(range(1, C.ndim + 1), 2))
