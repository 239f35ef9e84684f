import random
from collections import Counter

import numpy as np
import pytest

from acss.turmite import (HALT, Machine2D, Move, OutputCounts, Rule, decode, encode,
                          enumerate_counts, key_matrix, machine_count, matrix_key, run, shards)


def test_machine_count():
    assert machine_count(1) == 256
    assert machine_count(2) == (2 * 4 * 3) ** 4 == 331776
    assert machine_count(3) == 32 ** 6 == 1073741824
    with pytest.raises(ValueError):
        machine_count(0)


def test_decode_first_and_last():
    m = decode(0, 1)
    assert m.rules == (Rule(0, Move.UP, HALT),) * 2
    last = decode(machine_count(2) - 1, 2)
    assert all(r == Rule(1, Move.RIGHT, 2) for r in last.rules)


def test_decode_digit_order():
    # rule for (state 1, symbol 0) is the most significant digit group
    m = decode(1, 1)
    assert m.rule(1, 0) == Rule(0, Move.UP, HALT)
    assert m.rule(1, 1) == Rule(0, Move.UP, 1)
    m = decode(16, 1)
    assert m.rule(1, 0) == Rule(0, Move.UP, 1)
    assert m.rule(1, 1) == Rule(0, Move.UP, HALT)


def test_encode_roundtrip():
    rng = random.Random(3)
    for _ in range(1000):
        i = rng.randrange(machine_count(2))
        assert encode(decode(i, 2)) == i


def test_decode_out_of_range():
    with pytest.raises(ValueError):
        decode(256, 1)
    with pytest.raises(ValueError):
        decode(-1, 1)


def test_rule_validation():
    with pytest.raises(ValueError):
        Machine2D(1, (Rule(0, Move.UP, 2), Rule(0, Move.UP, 0)))
    with pytest.raises(ValueError):
        Machine2D(2, (Rule(0, Move.UP, 0),) * 2)


def test_immediate_halt():
    m = Machine2D(1, (Rule(1, Move.UP, HALT), Rule(1, Move.UP, HALT)))
    out = run(m, 10)
    assert out.halted and out.steps == 1
    assert out.output.tolist() == [[1]]


def test_cycle_never_halts():
    # 1 -> 2 -> 1 ... moving right and left, never reaching HALT
    m = Machine2D(2, (Rule(0, Move.RIGHT, 2), Rule(0, Move.RIGHT, 2),
                      Rule(0, Move.LEFT, 1), Rule(0, Move.LEFT, 1)))
    out = run(m, 500)
    assert not out.halted and out.output is None and out.steps == 500


def test_budget_independence_after_halting():
    m = next(m for m in (decode(i, 2) for i in range(0, machine_count(2), 997))
             if run(m, 500).steps >= 4 and run(m, 500).halted)
    a, b = run(m, run(m, 500).steps), run(m, 500)
    assert a.halted and b.halted
    assert a.steps == b.steps
    assert np.array_equal(a.output, b.output)


def test_output_is_read_cells_rectangle():
    # write 1, go down; there write 1, go right and halt: two read cells stacked
    m = Machine2D(2, (Rule(1, Move.DOWN, 2), Rule(1, Move.DOWN, 2),
                      Rule(1, Move.RIGHT, HALT), Rule(1, Move.RIGHT, HALT)))
    out = run(m, 10)
    assert out.steps == 2
    assert out.output.tolist() == [[1], [1]]


def _oracle_counts(k, budget, indices):
    counts = Counter()
    halting = 0
    for i in indices:
        out = run(decode(i, k), budget)
        if out.halted:
            halting += 1
            counts[matrix_key(out.output)] += 1
    return counts, halting


def test_k1_enumeration_matches_simulator():
    got = enumerate_counts(1, 500)
    counts, halting = _oracle_counts(1, 500, range(256))
    assert got.counts == counts
    assert got.total_halting == halting == 128
    assert got.total_run == 256
    assert all(key[:2] == (1, 1) for key in got.counts)


def test_k2_sample_matches_simulator():
    rng = random.Random(11)
    for _ in range(300):
        i = rng.randrange(machine_count(2))
        got = enumerate_counts(2, 500, range(i, i + 1))
        counts, halting = _oracle_counts(2, 500, [i])
        assert got.counts == counts and got.total_halting == halting


def test_empty_shard():
    c = enumerate_counts(2, 500, range(0))
    assert not c.counts and c.total_halting == 0 and c.total_run == 0


def test_merge_is_additive():
    parts = list(shards(256, 3))
    assert sum(len(p) for p in parts) == 256
    merged = OutputCounts(Counter())
    for p in parts:
        merged = merged + enumerate_counts(1, 500, p)
    whole = enumerate_counts(1, 500)
    assert merged.counts == whole.counts
    assert (merged.total_halting, merged.total_run) == (whole.total_halting, whole.total_run)


def test_shard_validation():
    with pytest.raises(ValueError):
        enumerate_counts(1, 500, range(0, 300))
    with pytest.raises(ValueError):
        enumerate_counts(1, 500, range(0, 10, 2))


def test_matrix_key_roundtrip():
    rng = np.random.default_rng(0)
    for shape in [(1, 1), (3, 5), (4, 4), (2, 9)]:
        a = rng.integers(0, 2, shape, dtype=np.uint8)
        assert np.array_equal(key_matrix(matrix_key(a)), a)
