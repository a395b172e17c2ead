"""Dense exact integer tensors, contraction, unit tensors and projections.

Index tuples exposed to callers are 1-based, matching the notation used for
albums and crystals; numpy offsets stay internal.  Entries live in int64
arrays; every operation that could leave the int64 range either proves it
cannot (cheap magnitude bound) or recomputes with Python integers and
raises :class:`IntegerOverflowError` if the exact result does not fit.
"""

from __future__ import annotations

import itertools
import math
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import BoundsError, IntegerOverflowError, ShapeError

INT64_MAX = int(np.iinfo(np.int64).max)
INT64_MIN = int(np.iinfo(np.int64).min)

Shape = tuple[int, ...]
Index = tuple[int, ...]

EPSILON: Index = ()


def _as_shape(sizes: Iterable[int]) -> Shape:
    shape = tuple(int(s) for s in sizes)
    for s in shape:
        if s < 1:
            raise ShapeError(f"mode sizes must be positive, got {shape}")
    return shape


def cell_count(shape: Sequence[int]) -> int:
    return math.prod(shape)


def _maxabs(arr: np.ndarray) -> int:
    if arr.size == 0:
        return 0
    return max(abs(int(arr.max())), abs(int(arr.min())))


def _to_int64(arr: np.ndarray) -> np.ndarray:
    """Convert an exact (object or int) array to int64, refusing overflow."""
    arr = np.asarray(arr, dtype=object) if not isinstance(arr, np.ndarray) else arr
    if arr.dtype == np.int64:
        return arr
    flat = [int(x) for x in arr.reshape(-1)]
    if flat and (max(flat) > INT64_MAX or min(flat) < INT64_MIN):
        raise IntegerOverflowError(
            f"tensor entry outside the int64 range: [{min(flat)}, {max(flat)}]"
        )
    return np.array(flat, dtype=np.int64).reshape(arr.shape)


class IntTensor:
    """Immutable dense integer tensor stored row-major (first mode slowest)."""

    __slots__ = ("_data",)

    def __init__(self, shape: Iterable[int], entries: Iterable[int]):
        shape = _as_shape(shape)
        values = [int(v) for v in entries]
        if len(values) != cell_count(shape):
            raise ShapeError(
                f"shape {shape} needs {cell_count(shape)} entries, got {len(values)}"
            )
        arr = _to_int64(np.array(values, dtype=object)).reshape(shape)
        self._data = _freeze(arr)

    @classmethod
    def from_array(cls, arr) -> "IntTensor":
        arr = np.asarray(arr)
        if arr.dtype == object:
            arr = _to_int64(arr)
        elif not np.issubdtype(arr.dtype, np.integer):
            raise ShapeError(f"integer array required, got dtype {arr.dtype}")
        _as_shape(arr.shape)
        obj = object.__new__(cls)
        obj._data = _freeze(arr.astype(np.int64, copy=True))
        return obj

    @classmethod
    def from_nested(cls, nested) -> "IntTensor":
        return cls.from_array(np.array(nested, dtype=object))

    @classmethod
    def zeros(cls, shape: Iterable[int]) -> "IntTensor":
        return cls.from_array(np.zeros(_as_shape(shape), dtype=np.int64))

    @classmethod
    def ones(cls, shape: Iterable[int]) -> "IntTensor":
        return cls.from_array(np.ones(_as_shape(shape), dtype=np.int64))

    @classmethod
    def scalar(cls, value: int) -> "IntTensor":
        return cls((), [value])

    @property
    def shape(self) -> Shape:
        return tuple(self._data.shape)

    @property
    def ndim(self) -> int:
        return self._data.ndim

    @property
    def array(self) -> np.ndarray:
        """Read-only int64 view of the entries."""
        return self._data

    def entries(self) -> list[int]:
        return [int(v) for v in self._data.reshape(-1)]

    def tolist(self):
        return self._data.tolist()

    def total(self) -> int:
        return int(sum(int(v) for v in self._data.reshape(-1)))

    def maxabs(self) -> int:
        return _maxabs(self._data)

    def __getitem__(self, b: Sequence[int]) -> int:
        return entry(self, b)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntTensor):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._data, other._data))

    def __hash__(self):
        return hash((self.shape, self._data.tobytes()))

    def __add__(self, other: "IntTensor") -> "IntTensor":
        return _elementwise(self, other, 1)

    def __sub__(self, other: "IntTensor") -> "IntTensor":
        return _elementwise(self, other, -1)

    def __neg__(self) -> "IntTensor":
        if self.maxabs() > INT64_MAX:
            raise IntegerOverflowError("negation overflows int64")
        return IntTensor.from_array(-self._data)

    def scale(self, c: int) -> "IntTensor":
        if self.maxabs() * abs(c) <= INT64_MAX:
            return IntTensor.from_array(self._data * c)
        return IntTensor.from_array(_to_int64(self._data.astype(object) * c))

    def __repr__(self) -> str:
        if self.ndim == 0:
            return f"IntTensor(scalar {int(self._data)})"
        return f"IntTensor(shape={self.shape}, {self._data.tolist()})"


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def _elementwise(a: IntTensor, b: IntTensor, sign: int) -> IntTensor:
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch {a.shape} vs {b.shape}")
    if a.maxabs() + b.maxabs() <= INT64_MAX:
        return IntTensor.from_array(a.array + sign * b.array)
    exact = a.array.astype(object) + sign * b.array.astype(object)
    return IntTensor.from_array(_to_int64(np.asarray(exact, dtype=object)))


def _check_index(shape: Shape, b: Sequence[int]) -> Index:
    b = tuple(int(x) for x in b)
    if len(b) != len(shape):
        raise BoundsError(f"index {b} has {len(b)} entries, shape {shape} has {len(shape)} modes")
    for x, n in zip(b, shape):
        if not 1 <= x <= n:
            raise BoundsError(f"index {b} out of range for shape {shape}")
    return b


def entry(T: IntTensor, b: Sequence[int]) -> int:
    """Entry of ``T`` at the 1-based index tuple ``b`` (``()`` for a scalar)."""
    b = _check_index(T.shape, b)
    return int(T.array[tuple(x - 1 for x in b)])


def unit_tensor(shape: Iterable[int], i: Sequence[int]) -> IntTensor:
    shape = _as_shape(shape)
    i = _check_index(shape, i)
    arr = np.zeros(shape, dtype=np.int64)
    arr[tuple(x - 1 for x in i)] = 1
    return IntTensor.from_array(arr)


def project_tuple(b: Sequence[int], i: Sequence[int]) -> Index:
    """``b_i = (b_{i_1}, ..., b_{i_p})``; positions in ``i`` are 1-based."""
    b = tuple(b)
    out = []
    for pos in i:
        if not 1 <= pos <= len(b):
            raise BoundsError(f"position {pos} outside a tuple of length {len(b)}")
        out.append(b[pos - 1])
    return tuple(out)


def identity_tuple(q: int) -> Index:
    return tuple(range(1, q + 1))


def increasing_tuples(q: int, p: int) -> Iterator[Index]:
    """All strictly increasing tuples in ``[q]^p``, lexicographically."""
    return itertools.combinations(range(1, q + 1), p)


def all_tuples(q: int, p: int) -> Iterator[Index]:
    return itertools.product(range(1, q + 1), repeat=p)


def indices(shape: Sequence[int]) -> Iterator[Index]:
    """All 1-based index tuples of ``shape`` in row-major order."""
    return itertools.product(*(range(1, n + 1) for n in shape))


def _check_modes(q: int, i: Sequence[int]) -> Index:
    i = tuple(int(x) for x in i)
    for x in i:
        if not 1 <= x <= q:
            raise BoundsError(f"mode selector {i} not in [{q}]^{len(i)}")
    return i


def contract(T: IntTensor, U: IntTensor, l: int) -> IntTensor:
    """Sum over the last ``l`` modes of ``T`` against the first ``l`` of ``U``."""
    if l < 0 or l > T.ndim or l > U.ndim:
        raise ShapeError(f"cannot contract {l} modes of shapes {T.shape} and {U.shape}")
    shared = T.shape[T.ndim - l:]
    if shared != U.shape[:l]:
        raise ShapeError(f"shared modes differ: {T.shape} *{l} {U.shape}")
    bound = T.maxabs() * U.maxabs() * cell_count(shared)
    if bound <= INT64_MAX:
        res = np.tensordot(T.array, U.array, axes=l)
        return IntTensor.from_array(np.asarray(res, dtype=np.int64))
    res = np.tensordot(T.array.astype(object), U.array.astype(object), axes=l)
    return IntTensor.from_array(_to_int64(np.asarray(res, dtype=object)))


def star(*tensors: IntTensor) -> IntTensor:
    """Left-associative ``T1 * T2 * ...`` contracting all modes of the smaller side."""
    if not tensors:
        raise ShapeError("star needs at least one tensor")
    acc = tensors[0]
    for U in tensors[1:]:
        acc = contract(acc, U, min(acc.ndim, U.ndim))
    return acc


def projection_tensor(n: Iterable[int], i: Sequence[int]) -> IntTensor:
    """Materialised projection operator of shape ``(n_i, n)``.

    Entry ``(a, b)`` is 1 exactly when ``b_i == a``.
    """
    n = _as_shape(n)
    i = _check_modes(len(n), i)
    n_i = project_tuple(n, i)
    arr = np.zeros(n_i + n, dtype=np.int64)
    if not n:
        arr[()] = 1
        return IntTensor.from_array(arr)
    grid = np.indices(n).reshape(len(n), -1)
    a_idx = tuple(grid[x - 1] for x in i)
    arr[a_idx + tuple(grid)] = 1
    return IntTensor.from_array(arr)


def apply_projection(T: IntTensor, i: Sequence[int]) -> IntTensor:
    """Fiber sums of ``T`` onto the modes selected by ``i``.

    Equal to ``contract(projection_tensor(T.shape, i), T, T.ndim)`` without
    building the operator; ``i`` may repeat modes and need not be sorted.
    """
    n = T.shape
    q = len(n)
    i = _check_modes(q, i)
    kept = sorted(set(i))
    dropped = tuple(m - 1 for m in range(1, q + 1) if m not in set(i))
    summed_cells = cell_count([n[d] for d in dropped])
    data = T.array
    if dropped:
        if T.maxabs() * summed_cells <= INT64_MAX:
            S = data.sum(axis=dropped, dtype=np.int64)
        else:
            S = _to_int64(np.asarray(data.astype(object).sum(axis=dropped), dtype=object))
    else:
        S = data
    S = np.asarray(S, dtype=np.int64)
    # S has one axis per kept mode, in increasing mode order.
    pos = {m: k for k, m in enumerate(kept)}
    if len(i) == len(kept):
        return IntTensor.from_array(np.transpose(S, [pos[m] for m in i]))
    out_shape = project_tuple(n, i)
    grid = np.indices(out_shape)
    first = {}
    for t, m in enumerate(i):
        first.setdefault(m, t)
    mask = np.ones(out_shape, dtype=bool)
    for t, m in enumerate(i):
        mask &= grid[t] == grid[first[m]]
    gathered = S[tuple(grid[first[m]] for m in kept)]
    return IntTensor.from_array(np.where(mask, gathered, 0).astype(np.int64))
