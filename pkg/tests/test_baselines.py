import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from acss.baselines import (block_entropy, compress_matrix, entropy, lzw_compress,
                            lzw_compressed_length, lzw_decompress, matrix_block_entropy,
                            matrix_bytes)

S1, S2 = "0000011111", "1101001011"


def test_entropy_examples():
    assert entropy(S1) == 1.0
    # six 1s and four 0s, so not a balanced string
    assert entropy(S2) == pytest.approx(-(0.6 * math.log2(0.6) + 0.4 * math.log2(0.4)))
    assert entropy("aaaa") == 0.0
    with pytest.raises(ValueError):
        entropy("")


def test_block_entropy_examples():
    h1, h2 = block_entropy(S1, 2), block_entropy(S2, 2)
    assert h1 == pytest.approx(1.52193, abs=1e-5)
    assert h2 == pytest.approx(1.92193, abs=1e-5)
    assert h1 < h2
    assert block_entropy(S2, 1) == entropy(S2)
    with pytest.raises(ValueError):
        block_entropy(S1, 0)


@settings(max_examples=50)
@given(st.text(alphabet="01ab", min_size=1, max_size=60), st.randoms())
def test_entropy_permutation_invariant(s, rnd):
    chars = list(s)
    rnd.shuffle(chars)
    assert entropy("".join(chars)) == pytest.approx(entropy(s))


def test_matrix_block_entropy_examples():
    assert matrix_block_entropy(np.zeros((8, 8), np.uint8)) == 0.0
    checker = np.indices((8, 8)).sum(axis=0) % 2
    assert matrix_block_entropy(checker.astype(np.uint8)) == 0.0
    two = np.zeros((8, 16), np.uint8)
    two[:, 8:] = 1
    # blocks 0000.. and 1111.. each four times
    assert matrix_block_entropy(two) == pytest.approx(8.0)


def test_lzw_separation():
    rep = bytes([7]) * 10000
    noise = np.random.default_rng(5).integers(0, 256, 10000, dtype=np.uint8).tobytes()
    assert lzw_compressed_length(rep) < 0.10 * 8 * len(rep)
    assert lzw_compressed_length(noise) > 0.95 * 8 * len(noise)
    for data in (rep, noise):
        assert lzw_decompress(lzw_compress(data)) == data


def test_lzw_known_stream():
    # classic example: codes for "ABABABA" are A, B, AB, ABA
    payload = lzw_compress(b"ABABABA")
    assert lzw_decompress(payload) == b"ABABABA"
    assert lzw_compressed_length(b"ABABABA") == 4 * 9
    assert lzw_compress(b"") == b"" and lzw_decompress(b"") == b""


def test_lzw_roundtrip_random_corpus():
    rnd = random.Random(2024)
    for _ in range(1000):
        n = rnd.randrange(0, 400)
        alphabet = rnd.choice([2, 4, 256])
        data = bytes(rnd.randrange(alphabet) for _ in range(n))
        assert lzw_decompress(lzw_compress(data)) == data


def test_lzw_past_dictionary_limit():
    data = np.random.default_rng(1).integers(0, 256, 200000, dtype=np.uint8).tobytes()
    assert lzw_decompress(lzw_compress(data)) == data


def test_lzw_rejects_garbage():
    with pytest.raises(ValueError):
        lzw_decompress(b"\xff\xff\xff")


@settings(max_examples=100)
@given(st.binary(max_size=300))
def test_lzw_roundtrip_property(data):
    payload = lzw_compress(data)
    assert lzw_decompress(payload) == data
    assert len(payload) == -(-lzw_compressed_length(data) // 8)


def test_compress_matrix():
    zeros = np.zeros((32, 32), np.uint8)
    noise = np.random.default_rng(9).integers(0, 2, (32, 32), dtype=np.uint8)
    assert compress_matrix(zeros) < compress_matrix(noise)
    assert compress_matrix(noise) == compress_matrix(noise.copy())
    assert compress_matrix(np.eye(4, dtype=np.uint8)) > 0
    assert matrix_bytes(np.ones((1, 9), np.uint8)) == bytes([0, 0, 0, 1, 0, 0, 0, 9, 255, 128])
