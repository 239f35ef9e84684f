"""Free polyominoes: enumeration, bitmaps and corner graphs.

Cells are integer pairs ``(x, y)`` with ``x`` the column and ``y`` the row,
rows growing downwards in bitmaps.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import FrozenSet, Iterable, List, Tuple, Union

import numpy as np

from .graphs import Graph

Cell = Tuple[int, int]
MAX_CELLS = 10

_TRANSFORMS = (
    lambda x, y: (x, y), lambda x, y: (-y, x), lambda x, y: (-x, -y), lambda x, y: (y, -x),
    lambda x, y: (-x, y), lambda x, y: (y, x), lambda x, y: (x, -y), lambda x, y: (-y, -x),
)


class UnsupportedInputError(ValueError):
    pass


def normalize(cells: Iterable[Cell]) -> Tuple[Cell, ...]:
    """Translate so the minimum x and y are 0; sorted tuple."""
    cells = list(cells)
    mx = min(x for x, _ in cells)
    my = min(y for _, y in cells)
    return tuple(sorted((x - mx, y - my) for x, y in cells))


def transforms(cells: Iterable[Cell]) -> List[Tuple[Cell, ...]]:
    cells = list(cells)
    return [normalize(t(x, y) for x, y in cells) for t in _TRANSFORMS]


def canonical(cells: Iterable[Cell]) -> Tuple[Cell, ...]:
    return min(transforms(cells))


def is_connected(cells: Iterable[Cell]) -> bool:
    cells = set(cells)
    if not cells:
        return False
    start = next(iter(cells))
    seen, stack = {start}, [start]
    while stack:
        x, y = stack.pop()
        for nb in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if nb in cells and nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(cells)


@dataclass(frozen=True)
class Polyomino:
    cells: FrozenSet[Cell]

    def __post_init__(self):
        object.__setattr__(self, "cells", frozenset((int(x), int(y)) for x, y in self.cells))
        if not self.cells:
            raise ValueError("polyomino needs at least one cell")
        if not is_connected(self.cells):
            raise ValueError("polyomino cells must be edge-connected")

    @property
    def canonical(self) -> Tuple[Cell, ...]:
        return canonical(self.cells)

    def __len__(self):
        return len(self.cells)

    def __str__(self):
        return " ".join(f"{x},{y}" for x, y in sorted(self.cells))


@lru_cache(maxsize=None)
def _free(n: int) -> Tuple[Tuple[Cell, ...], ...]:
    if n == 1:
        return (((0, 0),),)
    found = set()
    for shape in _free(n - 1):
        occupied = set(shape)
        for x, y in shape:
            for nb in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
                if nb not in occupied:
                    found.add(canonical(occupied | {nb}))
    return tuple(sorted(found))


def enumerate_free(n: int) -> List[Polyomino]:
    """One canonical representative per free n-omino, sorted by canonical form."""
    if not 1 <= n <= MAX_CELLS:
        raise ValueError(f"n must lie in 1..{MAX_CELLS}")
    return [Polyomino(frozenset(c)) for c in _free(n)]


def bitmap(p: Polyomino) -> np.ndarray:
    cells = normalize(p.cells)
    rows = max(y for _, y in cells) + 1
    cols = max(x for x, _ in cells) + 1
    out = np.zeros((rows, cols), dtype=np.uint8)
    for x, y in cells:
        out[y, x] = 1
    return out


def from_bitmap(m) -> Polyomino:
    ys, xs = np.nonzero(np.asarray(m))
    return Polyomino(frozenset(zip(xs.tolist(), ys.tolist())))


def has_hole(p: Polyomino) -> bool:
    cells = normalize(p.cells)
    occupied = set(cells)
    w = max(x for x, _ in cells) + 1
    h = max(y for _, y in cells) + 1
    # flood the empty cells from outside the bounding box
    seen, stack = {(-1, -1)}, [(-1, -1)]
    while stack:
        x, y = stack.pop()
        for nb in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            nx, ny = nb
            if -1 <= nx <= w and -1 <= ny <= h and nb not in occupied and nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return (w + 2) * (h + 2) - len(seen) != len(occupied)


def corner_graph(p: Polyomino) -> Graph:
    """Lattice corners of the cells as nodes, unit cell sides as edges.

    Nodes are numbered row-major by lattice point ``(y, x)``.
    """
    if has_hole(p):
        raise UnsupportedInputError("corner graphs are only defined for polyominoes without holes")
    segments = set()
    for x, y in normalize(p.cells):
        a, b, c, d = (x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1)
        for s in ((a, b), (b, c), (d, c), (a, d)):
            segments.add(s)
    points = sorted({pt for s in segments for pt in s}, key=lambda q: (q[1], q[0]))
    index = {pt: i for i, pt in enumerate(points)}
    return Graph.from_edges(len(points), ((index[u], index[v]) for u, v in segments))


def dumps(polys: Iterable[Polyomino]) -> str:
    return "".join(str(p) + "\n" for p in polys)


def loads(text: str) -> List[Polyomino]:
    out = []
    for i, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            cells = [tuple(int(v) for v in tok.split(",")) for tok in line.split()]
            if any(len(c) != 2 for c in cells):
                raise ValueError
        except ValueError:
            raise ValueError(f"line {i}: expected 'x,y' cell pairs") from None
        out.append(Polyomino(frozenset(cells)))
    return out


def read_polyominoes(path: Union[str, Path]) -> List[Polyomino]:
    return loads(Path(path).read_text())
