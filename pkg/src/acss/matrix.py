"""Binary matrices: validation, text I/O and the 16 symmetry transforms.

Binary matrices are plain 2-D ``numpy.uint8`` arrays holding 0/1.  They
carry both bitmaps (polyominoes, machine outputs) and adjacency matrices.
"""
from __future__ import annotations

from pathlib import Path
from typing import Iterator, Union

import numpy as np

PathLike = Union[str, Path]


def as_matrix(data) -> np.ndarray:
    """Coerce ``data`` to a validated 2-D uint8 0/1 array (copy-free if possible)."""
    a = np.asarray(data)
    if a.ndim != 2:
        raise ValueError(f"binary matrix must be 2-D, got shape {a.shape}")
    if a.shape[0] < 1 or a.shape[1] < 1:
        raise ValueError("binary matrix needs at least one row and one column")
    if a.dtype != np.uint8:
        if not np.all((a == 0) | (a == 1)):
            raise ValueError("binary matrix entries must be 0 or 1")
        a = a.astype(np.uint8)
    elif a.max() > 1:
        raise ValueError("binary matrix entries must be 0 or 1")
    return a


def from_rows(*rows: str) -> np.ndarray:
    """``from_rows("110", "011")`` -> 2x3 matrix."""
    return as_matrix([[int(ch) for ch in r] for r in rows])


def to_rows(m: np.ndarray) -> list:
    return ["".join(str(int(v)) for v in row) for row in m]


def dumps(m: np.ndarray) -> str:
    m = as_matrix(m)
    return f"{m.shape[0]} {m.shape[1]}\n" + "\n".join(to_rows(m)) + "\n"


def loads(text: str) -> np.ndarray:
    """Parse the ``rows cols`` header + 0/1 rows text format."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty matrix file")
    try:
        rows, cols = (int(x) for x in lines[0].split())
    except ValueError:
        raise ValueError(f"line 1: expected 'rows cols', got {lines[0]!r}") from None
    body = lines[1:]
    if len(body) != rows:
        raise ValueError(f"expected {rows} matrix rows, found {len(body)}")
    for i, ln in enumerate(body, start=2):
        if len(ln) != cols or set(ln) - {"0", "1"}:
            raise ValueError(f"line {i}: expected {cols} characters of 0/1")
    return from_rows(*body)


def read_matrix(path: PathLike) -> np.ndarray:
    return loads(Path(path).read_text())


def write_matrix(m: np.ndarray, path: PathLike) -> None:
    Path(path).write_text(dumps(m))


def complement(m: np.ndarray) -> np.ndarray:
    return (1 - m).astype(np.uint8)


def dihedral(m: np.ndarray) -> Iterator[np.ndarray]:
    """The 8 rotations/reflections of ``m`` (shape may transpose)."""
    for a in (m, m.T):
        for _ in range(4):
            yield a
            a = np.rot90(a)


def symmetry_class(m: np.ndarray) -> Iterator[np.ndarray]:
    """Dihedral images of ``m`` and of its complement (16 members, with repeats)."""
    for a in dihedral(m):
        yield a
        yield complement(a)
