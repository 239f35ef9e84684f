"""Block Decomposition Method over binary matrices.

A matrix is cut into non-overlapping ``d x d`` squares, left to right and
top to bottom.  Each distinct block ``r`` occurring ``n`` times contributes
``CTM(r) + log2(n)`` bits.

Boundary policies for matrices whose sides are not multiples of ``d``:

``pad-zero``
    extend the matrix with zeros up to the next multiple of ``d``.
``keep-partial``
    the leftover strips are tiled into smaller rectangles priced at their
    own shape.
``discard``
    leftover strips are dropped.

Besides the per-matrix functions there is a batched evaluator,
:func:`bdm_batch`, that prices a whole stack of equally sized matrices at
once; the labelling searches in :mod:`acss.graphs` depend on it.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from .ctm import CtmTable, block_code, code_block
from .matrix import as_matrix

BOUNDARIES = ("pad-zero", "keep-partial", "discard")
DEFAULT_BLOCK = 4
DEFAULT_BOUNDARY = "keep-partial"


@dataclass(frozen=True)
class Decomposition:
    parts: Tuple[Tuple[np.ndarray, int], ...]
    boundary: str
    discarded_cells: int = 0

    @property
    def occurrences(self) -> int:
        return sum(n for _, n in self.parts)


def _check(d: int, boundary: str) -> None:
    if d < 1:
        raise ValueError("block size d must be >= 1")
    if boundary not in BOUNDARIES:
        raise ValueError(f"unknown boundary {boundary!r}; expected one of {BOUNDARIES}")


def _tiles(rows: int, cols: int, d: int, boundary: str):
    """Yield ``(r0, c0, h, w)`` tiles in reading order, plus discarded cell count."""
    if boundary == "pad-zero":
        rows = -(-rows // d) * d
        cols = -(-cols // d) * d
    tiles = []
    for r0 in range(0, rows, d):
        h = min(d, rows - r0)
        for c0 in range(0, cols, d):
            w = min(d, cols - c0)
            if boundary == "discard" and (h < d or w < d):
                continue
            tiles.append((r0, c0, h, w))
    kept = sum(h * w for _, _, h, w in tiles)
    return tiles, rows * cols - kept


def decompose(m, d: int = DEFAULT_BLOCK, boundary: str = DEFAULT_BOUNDARY) -> Decomposition:
    _check(d, boundary)
    m = as_matrix(m)
    if boundary == "pad-zero":
        rows = -(-m.shape[0] // d) * d
        cols = -(-m.shape[1] // d) * d
        padded = np.zeros((rows, cols), dtype=np.uint8)
        padded[: m.shape[0], : m.shape[1]] = m
        m = padded
    tiles, discarded = _tiles(m.shape[0], m.shape[1], d, boundary)
    counts: Counter = Counter()
    for r0, c0, h, w in tiles:
        counts[(h, w, block_code(m[r0:r0 + h, c0:c0 + w]))] += 1
    parts = tuple((code_block(code, h, w), n) for (h, w, code), n in counts.items())
    return Decomposition(parts, boundary, discarded)


def bdm(m, d: int = DEFAULT_BLOCK, table: CtmTable = None,
        boundary: str = DEFAULT_BOUNDARY) -> float:
    """Sum over distinct blocks of ``CTM(block) + log2(multiplicity)``."""
    if table is None:
        raise ValueError("a CTM table is required")
    parts = decompose(m, d, boundary).parts
    return sum(table.lookup(block) + math.log2(n) for block, n in parts)


# -- batched evaluation --------------------------------------------------------

def tile_codes(stack: np.ndarray, d: int, boundary: str) -> List[Tuple[Tuple[int, int], np.ndarray]]:
    """Block codes of every matrix in ``stack`` (shape ``(m, rows, cols)``).

    Returns one ``((h, w), codes)`` group per tile shape, ``codes`` being an
    ``(m, tiles)`` int64 array.  Codes match :func:`acss.ctm.block_code`.
    """
    _check(d, boundary)
    stack = np.asarray(stack, dtype=np.uint8)
    m, rows, cols = stack.shape
    if boundary == "pad-zero":
        prow = -(-rows // d) * d
        pcol = -(-cols // d) * d
        if (prow, pcol) != (rows, cols):
            padded = np.zeros((m, prow, pcol), dtype=np.uint8)
            padded[:, :rows, :cols] = stack
            stack, rows, cols = padded, prow, pcol
    qr, rr = divmod(rows, d)
    qc, rc = divmod(cols, d)
    regions = [(0, qr * d, d, 0, qc * d, d)]
    if boundary == "keep-partial":
        regions += [(0, qr * d, d, qc * d, cols, rc),
                    (qr * d, rows, rr, 0, qc * d, d),
                    (qr * d, rows, rr, qc * d, cols, rc)]
    groups = []
    for r0, r1, h, c0, c1, w in regions:
        if h == 0 or w == 0 or r1 <= r0 or c1 <= c0:
            continue
        if h * w > 62:
            raise ValueError("block too large for batched evaluation")
        nr, nc = (r1 - r0) // h, (c1 - c0) // w
        sub = stack[:, r0:r1, c0:c1].reshape(m, nr, h, nc, w)
        sub = sub.transpose(0, 1, 3, 2, 4).reshape(m, nr * nc, h * w)
        weights = (1 << np.arange(h * w - 1, -1, -1, dtype=np.int64))
        groups.append(((h, w), sub.astype(np.int64) @ weights))
    return groups


def _runs(codes: np.ndarray):
    """Sorted-run decomposition of each row: (row index, code, run length)."""
    m, t = codes.shape
    s = np.sort(codes, axis=1)
    start = np.ones_like(s, dtype=bool)
    start[:, 1:] = s[:, 1:] != s[:, :-1]
    flat = np.flatnonzero(start.ravel())
    lengths = np.diff(np.append(flat, s.size))
    return flat // t, s.ravel()[flat], lengths


class BlockPricer:
    """Caches table lookups by ``(shape, code)`` across batched calls."""

    def __init__(self, table: CtmTable):
        self.table = table
        self._cache: Dict[Tuple[int, int], Dict[int, float]] = {}

    def prices(self, shape, codes: np.ndarray) -> np.ndarray:
        cache = self._cache.setdefault(shape, {})
        uniq, inverse = np.unique(codes, return_inverse=True)
        vals = np.empty(len(uniq))
        for i, c in enumerate(uniq.tolist()):
            v = cache.get(c)
            if v is None:
                v = cache[c] = self.table.lookup_code(shape[0], shape[1], c)
            vals[i] = v
        return vals[inverse]


def bdm_batch(stack: np.ndarray, d: int, pricer: BlockPricer,
              boundary: str = DEFAULT_BOUNDARY) -> np.ndarray:
    """BDM of every matrix in ``stack``; agrees with :func:`bdm` to rounding."""
    m = len(stack)
    total = np.zeros(m)
    for shape, codes in tile_codes(stack, d, boundary):
        row, code, length = _runs(codes)
        vals = pricer.prices(shape, code) + np.log2(length)
        total += np.bincount(row, weights=vals, minlength=m)
    return total


def block_entropy_batch(stack: np.ndarray, d: int,
                        boundary: str = DEFAULT_BOUNDARY) -> np.ndarray:
    """Total block entropy ``N log2 N - sum c log2 c`` of every matrix in ``stack``."""
    m = len(stack)
    plogp = np.zeros(m)
    occurrences = np.zeros(m)
    for _, codes in tile_codes(stack, d, boundary):
        row, _, length = _runs(codes)
        plogp += np.bincount(row, weights=length * np.log2(length), minlength=m)
        occurrences += codes.shape[1]
    with np.errstate(divide="ignore", invalid="ignore"):
        nlogn = np.where(occurrences > 0, occurrences * np.log2(np.maximum(occurrences, 1)), 0.0)
    return np.maximum(nlogn - plogp, 0.0)
