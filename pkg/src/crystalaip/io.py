"""JSON formats for tensors, albums and digraphs, plus atomic file writes."""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from .aip import Digraph, clique, cycle
from .album import Album
from .diophantine import BigMatrix
from .errors import StructureError
from .tensor_core import IntTensor


def _int(x, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise StructureError(f"{what} must be an integer, got {x!r}")
    return x


def tensor_to_json(T: IntTensor) -> dict:
    return {"modes": list(T.shape), "entries": T.entries()}


def tensor_from_json(doc) -> IntTensor:
    if not isinstance(doc, dict) or "modes" not in doc or "entries" not in doc:
        raise StructureError("tensor documents need 'modes' and 'entries'")
    modes = doc["modes"]
    entries = doc["entries"]
    if not isinstance(modes, list) or not isinstance(entries, list):
        raise StructureError("'modes' and 'entries' must be lists")
    modes = [_int(m, "mode size") for m in modes]
    entries = [_int(e, "tensor entry") for e in entries]
    try:
        return IntTensor(modes, entries)
    except ValueError as exc:
        raise StructureError(str(exc)) from exc


def matrix_to_json(A: BigMatrix) -> dict:
    return {"modes": [A.rows, A.cols], "entries": list(A.entries)}


def matrix_from_json(doc) -> BigMatrix:
    if not isinstance(doc, dict) or len(doc.get("modes", [])) != 2:
        raise StructureError("matrix documents have exactly two modes")
    rows, cols = (_int(m, "mode size") for m in doc["modes"])
    return BigMatrix(rows, cols, tuple(_int(e, "matrix entry") for e in doc["entries"]))


def album_to_json(A: Album) -> dict:
    return {
        "p": A.p,
        "modes": list(A.n),
        "pictures": [{"axes": list(i), "tensor": tensor_to_json(T)} for i, T in A.pictures.items()],
    }


def album_from_json(doc) -> Album:
    if not isinstance(doc, dict):
        raise StructureError("album document must be an object")
    try:
        p = _int(doc["p"], "p")
        modes = [_int(m, "mode size") for m in doc["modes"]]
        pictures = {}
        for pic in doc["pictures"]:
            axes = tuple(_int(a, "axis") for a in pic["axes"])
            if any(x >= y for x, y in zip(axes, axes[1:])):
                raise StructureError(f"picture axes {list(axes)} are not strictly increasing")
            if axes in pictures:
                raise StructureError(f"duplicate picture axes {list(axes)}")
            pictures[axes] = tensor_from_json(pic["tensor"])
    except (KeyError, TypeError) as exc:
        raise StructureError(f"malformed album document: {exc}") from exc
    return Album(p, tuple(modes), pictures)


def digraph_to_json(G: Digraph) -> dict:
    return G.to_json()


def digraph_from_json(doc) -> Digraph:
    if not isinstance(doc, dict):
        raise StructureError("digraph document must be an object")
    try:
        n = _int(doc["vertices"], "vertex count")
        edges = []
        for e in doc["edges"]:
            if not isinstance(e, list) or len(e) != 2:
                raise StructureError(f"edges are pairs, got {e!r}")
            edges.append((_int(e[0], "vertex"), _int(e[1], "vertex")))
    except (KeyError, TypeError, IndexError) as exc:
        raise StructureError(f"malformed digraph document: {exc}") from exc
    return Digraph(n, edges)


def parse_digraph_spec(spec: str) -> Digraph:
    """``K<n>`` and ``C<n>`` shorthands, otherwise a path to a digraph JSON file."""
    if len(spec) > 1 and spec[0] in "KC" and spec[1:].isdigit():
        n = int(spec[1:])
        return clique(n) if spec[0] == "K" else cycle(n)
    return digraph_from_json(read_json(spec))


def dumps(doc) -> str:
    return json.dumps(doc, separators=(",", ":")) + "\n"


def read_json(path) -> object:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise StructureError(f"{path}: invalid JSON ({exc})") from exc


def write_json(path, doc) -> None:
    """Write ``doc`` atomically (temporary file in the same directory, then rename)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(dumps(doc))
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
