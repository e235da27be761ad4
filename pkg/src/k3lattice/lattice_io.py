"""Reading and writing lattice files.

A lattice file is a JSON document with fields ``name`` (string), ``gram``
(array of arrays of integers), and optionally ``ambient`` (name of the
ambient lattice) and ``basis`` (array of arrays of integers, rows being the
basis vectors in ambient coordinates).  Integers that do not fit in 64 bits
are serialized as decimal strings; the loader accepts both forms.

The shipped lattice corpus lives in the package ``data`` directory and can
be overridden with the K3LATTICE_DATA environment variable.
"""

from __future__ import annotations

import json
import os
from importlib import resources
from pathlib import Path

from .lattice import Lattice, lattice

_I64_MAX = 2**63 - 1


class LatticeFileError(ValueError):
    """Malformed lattice file; carries position information when available."""


def _decode_int(x, path: str) -> int:
    if isinstance(x, bool):
        raise LatticeFileError(f"{path}: boolean is not a matrix entry")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x, 10)
        except ValueError as e:
            raise LatticeFileError(f"{path}: bad integer string {x!r}") from e
    raise LatticeFileError(f"{path}: matrix entries must be integers, got {type(x).__name__}")


def _decode_matrix(rows, path: str, what: str) -> list[list[int]]:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise LatticeFileError(f"{path}: {what} must be an array of arrays")
    return [[_decode_int(x, path) for x in row] for row in rows]


def _encode_int(x: int):
    return x if abs(x) <= _I64_MAX else str(x)


def loads(text: str, path: str = "<string>") -> Lattice:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise LatticeFileError(
            f"{path}: line {e.lineno}, column {e.colno}: {e.msg}"
        ) from e
    if not isinstance(doc, dict) or "gram" not in doc:
        raise LatticeFileError(f"{path}: document must be an object with a 'gram' field")
    gram = _decode_matrix(doc["gram"], path, "gram")
    n = len(gram)
    if any(len(row) != n for row in gram):
        raise LatticeFileError(f"{path}: gram matrix must be square (rank mismatch)")
    if any(gram[i][j] != gram[j][i] for i in range(n) for j in range(i)):
        raise LatticeFileError(f"{path}: gram matrix is not symmetric")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise LatticeFileError(f"{path}: 'name' must be a string")
    return lattice(gram, name)


def load_lattice(path: str | Path) -> Lattice:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as e:
        raise LatticeFileError(f"{p}: {e}") from e
    return loads(text, str(p))


def dumps(l: Lattice) -> str:
    doc: dict = {
        "name": l.name,
        "gram": [[_encode_int(x) for x in row] for row in l.gram],
    }
    if l.ambient is not None:
        name = l.ambient.ambient.name
        rows = l.ambient.basis
        if name and all(x.denominator == 1 for row in rows for x in row):
            doc["ambient"] = name
            doc["basis"] = [[_encode_int(int(x)) for x in row] for row in rows]
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def save_lattice(l: Lattice, path: str | Path) -> None:
    Path(path).write_text(dumps(l))


def data_dir() -> Path:
    override = os.environ.get("K3LATTICE_DATA")
    if override:
        return Path(override)
    return Path(str(resources.files(__package__) / "data"))


def load_shipped(name: str) -> Lattice:
    return load_lattice(data_dir() / f"{name}.lattice")
