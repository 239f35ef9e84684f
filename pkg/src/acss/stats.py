"""Spearman rank correlation with tie-averaged ranks.

p-values are two-sided: the exact permutation distribution for up to
``EXACT_MAX_N`` items, the Student-t approximation above that.
"""
from __future__ import annotations

import itertools
import math
from typing import Mapping, Sequence, Tuple, Union

import numpy as np
from scipy import stats as _st

EXACT_MAX_N = 8

Ranked = Union[Mapping, Sequence[float]]


def _align(a: Ranked, b: Ranked):
    if isinstance(a, Mapping) or isinstance(b, Mapping):
        if not (isinstance(a, Mapping) and isinstance(b, Mapping)):
            raise ValueError("both lists need identifiers, or neither")
        if set(a) != set(b):
            raise ValueError("ranked lists have different identifiers")
        keys = sorted(a)
        return np.array([a[k] for k in keys], float), np.array([b[k] for k in keys], float)
    a, b = np.asarray(a, float), np.asarray(b, float)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError("ranked lists must have equal length")
    return a, b


def _pearson(x: np.ndarray, y: np.ndarray) -> float:
    x = x - x.mean()
    y = y - y.mean()
    den = math.sqrt(float(x @ x) * float(y @ y))
    if den == 0:
        return math.nan
    return max(-1.0, min(1.0, float(x @ y) / den))


def spearman(a: Ranked, b: Ranked) -> Tuple[float, float]:
    """``(rho, p)`` for two equally sized lists (or id -> value mappings).

    ``rho`` is NaN, with ``p`` NaN, when either list is constant.
    """
    x, y = _align(a, b)
    n = len(x)
    if n < 3:
        raise ValueError("spearman needs at least 3 items")
    rx, ry = _st.rankdata(x), _st.rankdata(y)
    rho = _pearson(rx, ry)
    if math.isnan(rho):
        return rho, math.nan
    if n <= EXACT_MAX_N:
        return rho, _exact_p(rx, ry, rho)
    if abs(rho) >= 1.0:
        return rho, 0.0
    t = rho * math.sqrt((n - 2) / (1.0 - rho * rho))
    return rho, float(min(1.0, 2.0 * _st.t.sf(abs(t), n - 2)))


def _exact_p(rx: np.ndarray, ry: np.ndarray, rho: float) -> float:
    perms = np.array(list(itertools.permutations(range(len(ry)))))
    x = rx - rx.mean()
    y = ry[perms] - ry.mean()
    r = (y @ x) / math.sqrt(float(x @ x) * float(ry.var() * len(ry)))
    return float(np.mean(np.abs(r) >= abs(rho) - 1e-12))
