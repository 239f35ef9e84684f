"""Coding-theorem complexity tables built from turmite output frequencies.

A table maps each observed output array to ``-log2(count / total_halting)``
bits.  All shapes share one denominator.  Lookups are total: arrays the
enumeration never produced get a fallback value (see :meth:`CtmTable.lookup`).

Blocks are addressed internally by ``(rows, cols)`` and an integer code,
the row-major bits read as a binary number with the top-left cell most
significant.
"""
from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, Iterator, Optional, Tuple, Union

import numpy as np

from .matrix import as_matrix, symmetry_class
from .turmite import DEFAULT_BUDGET, OutputCounts, enumerate_counts, machine_count, shards

Shape = Tuple[int, int]
PathLike = Union[str, Path]

_HEADER = re.compile(
    r"^ctm v1 k=(\d+) budget=(\d+) halting=(\d+) run=(\d+) sym=([01])$")


class EmptyDistributionError(ValueError):
    """No machine halted, so there is no distribution to take logs of."""


class CtmParseError(ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


def block_code(block: np.ndarray) -> int:
    code = 0
    for bit in block.reshape(-1):
        code = (code << 1) | int(bit)
    return code


def code_block(code: int, rows: int, cols: int) -> np.ndarray:
    n = rows * cols
    bits = [(code >> (n - 1 - i)) & 1 for i in range(n)]
    return np.array(bits, dtype=np.uint8).reshape(rows, cols)


def _hexbits(code: int, cells: int) -> str:
    nbytes = (cells + 7) // 8
    return (code << (8 * nbytes - cells)).to_bytes(nbytes, "big").hex()


def _from_hexbits(text: str, cells: int) -> int:
    nbytes = (cells + 7) // 8
    if len(text) != 2 * nbytes:
        raise ValueError(f"expected {2 * nbytes} hex digits for {cells} cells")
    raw = int(text, 16)
    pad = 8 * nbytes - cells
    if raw & ((1 << pad) - 1):
        raise ValueError("nonzero padding bits")
    return raw >> pad


def entropy_fallback(cells: int, ones: int) -> float:
    """``cells * H1 + log2(cells) + 1`` for a shape with no table coverage."""
    h = 0.0
    for c in (ones, cells - ones):
        if c:
            p = c / cells
            h -= p * math.log2(p)
    return cells * h + math.log2(cells) + 1.0


@dataclass(frozen=True)
class TableMeta:
    k: int
    budget: int
    total_halting: int
    total_run: int
    symmetrized: bool = False


@dataclass
class CtmTable:
    """Per-shape output counts plus the enumeration totals.

    Treat instances as immutable once built; :meth:`symmetrize` returns a
    new table.
    """
    counts: Dict[Shape, Dict[int, int]]
    meta: TableMeta
    _bits: Dict[Shape, Dict[int, float]] = field(init=False, repr=False, compare=False)
    _shape_max: Dict[Shape, float] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        total = self.meta.total_halting
        if total <= 0:
            raise EmptyDistributionError("total_halting must be positive")
        self._bits = {}
        self._shape_max = {}
        for shape, entries in self.counts.items():
            if not entries:
                continue
            bits = {code: -math.log2(n / total) for code, n in entries.items()}
            self._bits[shape] = bits
            self._shape_max[shape] = max(bits.values())

    def __len__(self):
        return sum(len(e) for e in self.counts.values())

    def __eq__(self, other):
        if not isinstance(other, CtmTable):
            return NotImplemented
        return self.meta == other.meta and self._nonempty() == other._nonempty()

    def _nonempty(self):
        return {s: e for s, e in self.counts.items() if e}

    def items(self) -> Iterator[Tuple[Shape, int, int]]:
        """``(shape, code, count)`` in a deterministic order."""
        for shape in sorted(self.counts):
            for code in sorted(self.counts[shape]):
                yield shape, code, self.counts[shape][code]

    def shapes(self):
        return sorted(self._bits)

    def count(self, block) -> int:
        block = as_matrix(block)
        return self.counts.get(block.shape, {}).get(block_code(block), 0)

    def lookup_code(self, rows: int, cols: int, code: int) -> float:
        bits = self._bits.get((rows, cols))
        if bits is not None:
            value = bits.get(code)
            if value is not None:
                return value
            return self._shape_max[(rows, cols)] + 1.0
        return entropy_fallback(rows * cols, bin(code).count("1"))

    def lookup(self, block) -> float:
        """Complexity in bits of ``block``.

        Stored arrays return their table value.  An unseen array of a shape
        the table covers costs one bit more than the dearest stored array
        of that shape.  An array whose shape is absent altogether falls
        back to ``cells * H1 + log2(cells) + 1``, with ``H1`` the per-bit
        entropy of the array.
        """
        block = as_matrix(block)
        return self.lookup_code(block.shape[0], block.shape[1], block_code(block))

    def symmetrize(self) -> "CtmTable":
        """Pool counts over rotations, reflections and bit complement.

        Every member of a class gets the summed count of the class, so all
        members share one complexity value.
        """
        pooled: Dict[Shape, Dict[int, int]] = {}
        seen = set()
        for shape, code, _ in list(self.items()):
            if (shape, code) in seen:
                continue
            members = set()
            for img in symmetry_class(code_block(code, *shape)):
                members.add((img.shape, block_code(img)))
            total = sum(self.counts.get(s, {}).get(c, 0) for s, c in members)
            for s, c in members:
                pooled.setdefault(s, {})[c] = total
                seen.add((s, c))
        meta = TableMeta(self.meta.k, self.meta.budget, self.meta.total_halting,
                         self.meta.total_run, True)
        return CtmTable(pooled, meta)

    # persistence -----------------------------------------------------------

    def dumps(self) -> str:
        m = self.meta
        lines = [f"ctm v1 k={m.k} budget={m.budget} halting={m.total_halting} "
                 f"run={m.total_run} sym={int(m.symmetrized)}"]
        for (rows, cols), code, n in self.items():
            lines.append(f"{rows} {cols} {_hexbits(code, rows * cols)} {n}")
        return "\n".join(lines) + "\n"

    def save(self, path: PathLike) -> None:
        Path(path).write_text(self.dumps())

    @classmethod
    def loads(cls, text: str) -> "CtmTable":
        lines = text.splitlines()
        if not lines:
            raise CtmParseError(1, "empty file")
        match = _HEADER.match(lines[0].strip())
        if not match:
            raise CtmParseError(1, f"bad header {lines[0]!r}")
        k, budget, halting, run, sym = (int(g) for g in match.groups())
        counts: Dict[Shape, Dict[int, int]] = {}
        for lineno, line in enumerate(lines[1:], start=2):
            if not line.strip():
                continue
            parts = line.split()
            if len(parts) != 4:
                raise CtmParseError(lineno, "expected 'rows cols hexbits count'")
            try:
                rows, cols, n = int(parts[0]), int(parts[1]), int(parts[3])
            except ValueError:
                raise CtmParseError(lineno, "non-integer field") from None
            if rows < 1 or cols < 1:
                raise CtmParseError(lineno, "rows and cols must be positive")
            if n < 0:
                raise CtmParseError(lineno, f"negative count {n}")
            if n == 0 or n > halting:
                raise CtmParseError(lineno, f"count {n} outside 1..{halting}")
            try:
                code = _from_hexbits(parts[2], rows * cols)
            except ValueError as exc:
                raise CtmParseError(lineno, str(exc)) from None
            entries = counts.setdefault((rows, cols), {})
            if code in entries:
                raise CtmParseError(lineno, "duplicate entry")
            entries[code] = n
        if halting == 0:
            raise CtmParseError(1, "halting=0: empty distribution")
        return cls(counts, TableMeta(k, budget, halting, run, bool(sym)))

    @classmethod
    def load(cls, path: PathLike) -> "CtmTable":
        return cls.loads(Path(path).read_text())


def build(counts: OutputCounts, k: int, budget: int) -> CtmTable:
    """Table from an enumeration's output frequencies."""
    if counts.total_halting <= 0:
        raise EmptyDistributionError("no machine halted")
    table: Dict[Shape, Dict[int, int]] = {}
    for (rows, cols, packed), n in counts.counts.items():
        code = _from_hexbits(packed.hex(), rows * cols)
        table.setdefault((rows, cols), {})[code] = n
    return CtmTable(table, TableMeta(k, budget, counts.total_halting, counts.total_run))


def _count_shard(args):
    k, budget, shard = args
    return enumerate_counts(k, budget, shard)


def build_table(k: int, budget: int = DEFAULT_BUDGET, workers: int = 1,
                progress: Optional[Callable[[int], None]] = None) -> CtmTable:
    """Enumerate the full ``k``-state space and build its table.

    With ``workers > 1`` the index space is split into contiguous shards
    run in separate processes; their counts are summed.
    """
    total = machine_count(k)
    if workers <= 1:
        counts = enumerate_counts(k, budget, progress=progress)
    else:
        from concurrent.futures import ProcessPoolExecutor

        parts = list(shards(total, workers * 4))
        counts = OutputCounts(Counter())
        done = 0
        with ProcessPoolExecutor(workers) as pool:
            for part, res in zip(parts, pool.map(_count_shard, [(k, budget, p) for p in parts])):
                counts = counts.merge(res)
                done += len(part)
                if progress is not None:
                    progress(done)
    return build(counts, k, budget)
