"""Statistical comparison measures: Shannon entropy, block entropy and LZW.

LZW here is the plain variable-width flavour: the dictionary starts with
the 256 single bytes, new strings get consecutive codes from 256, codes are
written MSB-first at a width that grows from 9 bits as the dictionary fills,
and the dictionary freezes at 2**16 entries.  There are no clear or
end-of-stream codes.
"""
from __future__ import annotations

import math
from collections import Counter
from typing import Hashable, Sequence

import numpy as np

from .bdm import DEFAULT_BLOCK, DEFAULT_BOUNDARY, decompose
from .matrix import as_matrix

MAX_DICT = 1 << 16


def _entropy_of_counts(counts) -> float:
    total = sum(counts)
    h = 0.0
    for c in counts:
        if c:
            p = c / total
            h -= p * math.log2(p)
    return h


def entropy(s: Sequence[Hashable]) -> float:
    """Shannon entropy in bits per symbol of the empirical symbol distribution."""
    if len(s) == 0:
        raise ValueError("entropy of an empty sequence is undefined")
    return _entropy_of_counts(Counter(s).values())


def block_entropy(s: Sequence[Hashable], b: int) -> float:
    """Entropy over non-overlapping length-``b`` blocks; a short tail is dropped."""
    if b < 1:
        raise ValueError("block length must be >= 1")
    if len(s) < b:
        raise ValueError(f"sequence of length {len(s)} shorter than block {b}")
    if b == 1:
        return entropy(s)
    blocks = [tuple(s[i:i + b]) for i in range(0, len(s) - b + 1, b)]
    return _entropy_of_counts(Counter(blocks).values())


def matrix_block_entropy(m, d: int = DEFAULT_BLOCK, boundary: str = DEFAULT_BOUNDARY) -> float:
    """Block entropy of ``m`` times the number of block occurrences (total bits)."""
    parts = decompose(m, d, boundary).parts
    counts = [n for _, n in parts]
    return sum(counts) * _entropy_of_counts(counts)


def _width(i: int) -> int:
    # Width of the i-th emitted code: enough for the encoder's largest code.
    size = min(256 + i, MAX_DICT)
    return max(9, (size - 1).bit_length())


def lzw_codes(data: bytes) -> list:
    table = {bytes([b]): b for b in range(256)}
    codes = []
    w = b""
    for byte in data:
        wc = w + bytes([byte])
        if wc in table:
            w = wc
            continue
        codes.append(table[w])
        if len(table) < MAX_DICT:
            table[wc] = len(table)
        w = bytes([byte])
    if w:
        codes.append(table[w])
    return codes


def lzw_compressed_length(data: bytes) -> int:
    """Length in bits of the LZW code stream for ``data``."""
    return sum(_width(i) for i in range(len(lzw_codes(bytes(data)))))


def lzw_compress(data: bytes) -> bytes:
    acc = 0
    nbits = 0
    for i, code in enumerate(lzw_codes(bytes(data))):
        width = _width(i)
        acc = (acc << width) | code
        nbits += width
    pad = (-nbits) % 8
    return (acc << pad).to_bytes((nbits + pad) // 8, "big") if nbits else b""


def lzw_decompress(payload: bytes) -> bytes:
    value = int.from_bytes(payload, "big")
    nbits = 8 * len(payload)
    table = [bytes([b]) for b in range(256)]
    out = bytearray()
    prev = None
    pos = 0
    i = 0
    while nbits - pos >= _width(i):
        width = _width(i)
        code = (value >> (nbits - pos - width)) & ((1 << width) - 1)
        pos += width
        i += 1
        if code < len(table):
            entry = table[code]
        elif code == len(table) and prev is not None:
            entry = prev + prev[:1]
        else:
            raise ValueError(f"invalid LZW code {code} at bit {pos - width}")
        if prev is not None and len(table) < MAX_DICT:
            table.append(prev + entry[:1])
        out += entry
        prev = entry
    if value & ((1 << (nbits - pos)) - 1):
        raise ValueError("trailing garbage after LZW stream")
    return bytes(out)


def matrix_bytes(m) -> bytes:
    """``rows``, ``cols`` as big-endian uint32, then row-major bits packed MSB-first."""
    m = as_matrix(m)
    head = int(m.shape[0]).to_bytes(4, "big") + int(m.shape[1]).to_bytes(4, "big")
    return head + np.packbits(m.reshape(-1), bitorder="big").tobytes()


def compress_matrix(m) -> int:
    return lzw_compressed_length(matrix_bytes(m))
