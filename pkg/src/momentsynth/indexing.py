"""Graded-lexicographic multi-index enumeration and convolution tables.

Multi-indices are plain ``tuple[int, ...]``.  All code that walks the set
``{alpha : |alpha| <= d}`` goes through :func:`index_space`, which caches the
enumeration together with the pair tables used by sequence convolution, so the
combinatorics are paid once per ``(n, d)``.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb

import numpy as np

from .errors import ShapeMismatch


def multi_index_count(n: int, d: int) -> int:
    """Number of multi-indices with ``|alpha| <= d`` in dimension ``n``."""
    return comb(n + d, d)


def degree(alpha) -> int:
    return sum(alpha)


def graded_lex_key(alpha):
    """Sort key realizing the graded-lexicographic total order."""
    return (sum(alpha), alpha)


def _compositions(total: int, n: int):
    """All alpha in N_0^n with |alpha| = total, in lexicographic order."""
    if n == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, n - 1):
            yield (first,) + rest


def enumerate_indices(n: int, d: int) -> tuple:
    """All multi-indices with ``|alpha| <= d``, graded-lex ordered."""
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    if d < 0:
        raise ValueError(f"degree bound must be >= 0, got {d}")
    out = []
    for deg in range(d + 1):
        out.extend(_compositions(deg, n))
    return tuple(out)


def binomial(alpha, beta) -> int:
    """Product of componentwise binomial coefficients ``C(alpha_i, beta_i)``.

    Requires ``beta <= alpha`` componentwise; exact integer arithmetic.
    """
    if len(alpha) != len(beta):
        raise ShapeMismatch(f"dimension mismatch: {len(alpha)} vs {len(beta)}")
    result = 1
    for a_i, b_i in zip(alpha, beta):
        if b_i < 0 or b_i > a_i:
            raise ValueError(f"beta={beta} is not componentwise <= alpha={alpha}")
        result *= comb(a_i, b_i)
    return result


class IndexSpace:
    """Enumeration of ``{|alpha| <= d}`` plus precomputed convolution tables.

    ``conv_entries[i]`` lists ``(rank(beta), rank(alpha - beta), binom(alpha, beta))``
    for every ``beta <= alpha`` where ``alpha`` is the index of rank ``i``.
    ``inv_entries[i]`` is the same with the ``beta == alpha`` term removed, as
    needed by the triangular inversion recursion.
    """

    __slots__ = (
        "n",
        "d",
        "indices",
        "rank",
        "size",
        "conv_entries",
        "inv_entries",
        "_flat",
        "_inv_arrays",
    )

    def __init__(self, n: int, d: int):
        self.n = n
        self.d = d
        self.indices = enumerate_indices(n, d)
        self.size = len(self.indices)
        self.rank = {alpha: i for i, alpha in enumerate(self.indices)}
        conv = []
        inv = []
        for alpha in self.indices:
            entries = []
            for beta in itertools.product(*(range(a_i + 1) for a_i in alpha)):
                gamma = tuple(a_i - b_i for a_i, b_i in zip(alpha, beta))
                entries.append((self.rank[beta], self.rank[gamma], binomial(alpha, beta)))
            entries.sort()
            conv.append(tuple(entries))
            rank_alpha = self.rank[alpha]
            inv.append(tuple(e for e in entries if e[0] != rank_alpha))
        self.conv_entries = tuple(conv)
        self.inv_entries = tuple(inv)
        self._flat = None
        self._inv_arrays = None

    def flat_arrays(self):
        """Flattened ``(RB, RG, C, starts)`` arrays for the vectorized float path."""
        if self._flat is None:
            rb, rg, c, starts = [], [], [], []
            pos = 0
            for entries in self.conv_entries:
                starts.append(pos)
                for b, g, coeff in entries:
                    rb.append(b)
                    rg.append(g)
                    c.append(coeff)
                pos += len(entries)
            self._flat = (
                np.asarray(rb, dtype=np.intp),
                np.asarray(rg, dtype=np.intp),
                np.asarray(c, dtype=np.float64),
                np.asarray(starts, dtype=np.intp),
            )
        return self._flat

    def inverse_arrays(self):
        """Per-alpha ``(RB, RG, C)`` arrays with the diagonal term removed."""
        if self._inv_arrays is None:
            out = []
            for entries in self.inv_entries:
                rb = np.asarray([e[0] for e in entries], dtype=np.intp)
                rg = np.asarray([e[1] for e in entries], dtype=np.intp)
                c = np.asarray([e[2] for e in entries], dtype=np.float64)
                out.append((rb, rg, c))
            self._inv_arrays = out
        return self._inv_arrays


@lru_cache(maxsize=None)
def index_space(n: int, d: int) -> IndexSpace:
    return IndexSpace(n, d)
