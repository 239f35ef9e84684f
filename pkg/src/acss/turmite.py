"""Two-dimensional, two-symbol Turing machines (turmites).

A machine with ``k`` states has one rule per ``(state, read_symbol)`` pair.
Each rule writes a symbol, moves the head one cell in a cardinal direction
and switches to a new state or halts.  Machines are enumerated through a
mixed-radix index so that the whole rule space can be sharded by index
ranges.

Two simulators live here.  :func:`run` is a plain Python reference that
keeps the tape in a dictionary; :func:`enumerate_counts` uses a compiled
kernel over a dense scratch grid, which is what makes a full ``k=2``
enumeration fast.  Both must agree on every machine.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import IntEnum
from typing import Callable, Iterable, Optional

import numpy as np
from numba import njit

HALT = 0
DEFAULT_BUDGET = 500


class Move(IntEnum):
    UP = 0
    DOWN = 1
    LEFT = 2
    RIGHT = 3


# (d_row, d_col) per move; rows grow downwards.
_DELTAS = ((-1, 0), (1, 0), (0, -1), (0, 1))
_DR = np.array([d[0] for d in _DELTAS], dtype=np.int64)
_DC = np.array([d[1] for d in _DELTAS], dtype=np.int64)


@dataclass(frozen=True)
class Rule:
    write: int
    move: Move
    next_state: int  # 0 means HALT

    def __str__(self):
        nxt = "H" if self.next_state == HALT else str(self.next_state)
        return f"{self.write}{self.move.name[0]}{nxt}"


@dataclass(frozen=True)
class Machine2D:
    """Rule table of a ``k``-state, 2-symbol machine.

    ``rules[2 * (state - 1) + symbol]`` is the rule applied in ``state``
    when reading ``symbol``.
    """
    state_count: int
    rules: tuple

    def __post_init__(self):
        k = self.state_count
        if k < 1:
            raise ValueError("state_count must be >= 1")
        if len(self.rules) != 2 * k:
            raise ValueError(f"expected {2 * k} rules, got {len(self.rules)}")
        for r in self.rules:
            if r.write not in (0, 1) or not 0 <= r.next_state <= k:
                raise ValueError(f"rule out of range: {r!r}")

    def rule(self, state: int, symbol: int) -> Rule:
        return self.rules[2 * (state - 1) + symbol]

    def __str__(self):
        return " ".join(str(r) for r in self.rules)


@dataclass(frozen=True)
class RunOutcome:
    halted: bool
    steps: int
    output: Optional[np.ndarray] = None


def _radix(k: int) -> int:
    return 2 * 4 * (k + 1)


def machine_count(k: int) -> int:
    """Number of distinct rule tables for ``k`` states: ``(8(k+1))**(2k)``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return _radix(k) ** (2 * k)


def decode(index: int, k: int) -> Machine2D:
    """Machine with the given enumeration index.

    The first ``(state, symbol)`` pair is the most significant digit group;
    inside a rule the significance order is write, move, next state.
    """
    total = machine_count(k)
    if not 0 <= index < total:
        raise ValueError(f"index {index} out of range [0, {total})")
    base = _radix(k)
    digits = []
    for _ in range(2 * k):
        index, d = divmod(index, base)
        digits.append(d)
    rules = []
    for d in reversed(digits):
        write, rest = divmod(d, 4 * (k + 1))
        move, nxt = divmod(rest, k + 1)
        rules.append(Rule(write, Move(move), nxt))
    return Machine2D(k, tuple(rules))


def encode(m: Machine2D) -> int:
    k = m.state_count
    base = _radix(k)
    index = 0
    for r in m.rules:
        index = index * base + (r.write * 4 + int(r.move)) * (k + 1) + r.next_state
    return index


def run(m: Machine2D, budget: int = DEFAULT_BUDGET) -> RunOutcome:
    """Run ``m`` from a blank tape, head at the origin, state 1.

    The output is the bounding rectangle of every cell the head read, taken
    from the tape at halt.  Cells the head only lands on after the halting
    move are not part of it.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    tape = {}
    r = c = 0
    state = 1
    rmin = rmax = cmin = cmax = 0
    for step in range(1, budget + 1):
        rmin, rmax = min(rmin, r), max(rmax, r)
        cmin, cmax = min(cmin, c), max(cmax, c)
        rule = m.rule(state, tape.get((r, c), 0))
        tape[(r, c)] = rule.write
        dr, dc = _DELTAS[rule.move]
        r, c = r + dr, c + dc
        state = rule.next_state
        if state == HALT:
            out = np.zeros((rmax - rmin + 1, cmax - cmin + 1), dtype=np.uint8)
            for (i, j), v in tape.items():
                out[i - rmin, j - cmin] = v
            return RunOutcome(True, step, out)
    return RunOutcome(False, budget, None)


@njit(cache=True)
def _run_range(lo, hi, k, budget, dr, dc):
    """Simulate machines ``lo..hi-1``; returns per-machine results.

    Output bits of halting machines are appended row-major to a flat
    buffer, located through ``offsets``.
    """
    n = hi - lo
    base = 8 * (k + 1)
    nrules = 2 * k
    halted = np.zeros(n, dtype=np.bool_)
    rows = np.zeros(n, dtype=np.int64)
    cols = np.zeros(n, dtype=np.int64)
    offsets = np.zeros(n + 1, dtype=np.int64)
    buf = np.zeros(1 << 20, dtype=np.uint8)
    used = 0

    side = 2 * budget + 3
    grid = np.zeros((side, side), dtype=np.uint8)
    touched_r = np.zeros(budget + 1, dtype=np.int64)
    touched_c = np.zeros(budget + 1, dtype=np.int64)
    w = np.zeros(nrules, dtype=np.int64)
    mv = np.zeros(nrules, dtype=np.int64)
    nx = np.zeros(nrules, dtype=np.int64)

    for t in range(n):
        idx = lo + t
        for j in range(nrules - 1, -1, -1):
            d = idx % base
            idx //= base
            w[j] = d // (4 * (k + 1))
            rest = d % (4 * (k + 1))
            mv[j] = rest // (k + 1)
            nx[j] = rest % (k + 1)

        r = budget + 1
        c = budget + 1
        state = 1
        rmin = rmax = r
        cmin = cmax = c
        ntouched = 0
        did_halt = False
        for step in range(budget):
            if r < rmin:
                rmin = r
            if r > rmax:
                rmax = r
            if c < cmin:
                cmin = c
            if c > cmax:
                cmax = c
            j = 2 * (state - 1) + grid[r, c]
            touched_r[ntouched] = r
            touched_c[ntouched] = c
            ntouched += 1
            grid[r, c] = w[j]
            r += dr[mv[j]]
            c += dc[mv[j]]
            state = nx[j]
            if state == 0:
                did_halt = True
                break

        if did_halt:
            h = rmax - rmin + 1
            wd = cmax - cmin + 1
            if used + h * wd > buf.shape[0]:
                grown = np.zeros(2 * buf.shape[0] + h * wd, dtype=np.uint8)
                grown[:used] = buf[:used]
                buf = grown
            for a in range(h):
                for b in range(wd):
                    buf[used + a * wd + b] = grid[rmin + a, cmin + b]
            halted[t] = True
            rows[t] = h
            cols[t] = wd
            used += h * wd
        offsets[t + 1] = used
        for q in range(ntouched):
            grid[touched_r[q], touched_c[q]] = 0

    return halted, rows, cols, offsets, buf[:used]


@dataclass
class OutputCounts:
    """Frequency table of halting outputs, keyed by ``(rows, cols, packed bits)``."""
    counts: Counter
    total_halting: int = 0
    total_run: int = 0

    def merge(self, other: "OutputCounts") -> "OutputCounts":
        return OutputCounts(self.counts + other.counts,
                            self.total_halting + other.total_halting,
                            self.total_run + other.total_run)

    __add__ = merge


def matrix_key(a: np.ndarray) -> tuple:
    """Hashable ``(rows, cols, bytes)`` key; bits packed MSB-first, row-major."""
    rows, cols = a.shape
    return rows, cols, np.packbits(a.reshape(-1), bitorder="big").tobytes()


def key_matrix(key: tuple) -> np.ndarray:
    rows, cols, packed = key
    bits = np.unpackbits(np.frombuffer(packed, dtype=np.uint8), bitorder="big")
    return bits[: rows * cols].reshape(rows, cols).copy()


def enumerate_counts(k: int, budget: int = DEFAULT_BUDGET,
                     shard: Optional[range] = None,
                     chunk: int = 1 << 16,
                     progress: Optional[Callable[[int], None]] = None) -> OutputCounts:
    """Run every machine in ``shard`` once and count halting outputs.

    ``shard`` defaults to the full machine space.  ``progress`` is called
    with the cumulative number of machines processed after every chunk.
    """
    total = machine_count(k)
    if shard is None:
        shard = range(total)
    if shard.step != 1:
        raise ValueError("shard must be a contiguous range")
    if len(shard) and (shard.start < 0 or shard.stop > total):
        raise ValueError(f"shard {shard} outside [0, {total})")
    if budget < 1:
        raise ValueError("budget must be >= 1")

    counts = Counter()
    halting = 0
    done = 0
    for lo in range(shard.start, shard.stop, chunk):
        hi = min(lo + chunk, shard.stop)
        halted, rows, cols, offsets, buf = _run_range(lo, hi, k, budget, _DR, _DC)
        for t in np.flatnonzero(halted):
            out = buf[offsets[t]:offsets[t + 1]]
            packed = np.packbits(out, bitorder="big").tobytes()
            counts[(int(rows[t]), int(cols[t]), packed)] += 1
        halting += int(halted.sum())
        done += hi - lo
        if progress is not None:
            progress(done)
    return OutputCounts(counts, halting, len(shard))


def shards(total: int, parts: int) -> Iterable[range]:
    """Split ``range(total)`` into ``parts`` contiguous, near-equal ranges."""
    step, extra = divmod(total, parts)
    lo = 0
    for p in range(parts):
        hi = lo + step + (1 if p < extra else 0)
        yield range(lo, hi)
        lo = hi
