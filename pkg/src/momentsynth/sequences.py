"""Degree-truncated multi-index sequences and their convolution algebra.

A :class:`TruncatedSequence` stores one complex value per multi-index
``|alpha| <= d``.  Convolution is

    ``u_alpha = sum_{beta <= alpha} binom(alpha, beta) * s_beta * t_{alpha-beta}``

and sequences with nonzero constant term have a convolution inverse, computed
by a triangular recursion in graded-lex order.  Two backends are supported:

* ``"rational"`` -- exact arithmetic on pairs of backend rationals,
* ``"float"`` -- complex128 numpy arrays with vectorized kernels.

Values are immutable after construction; all operations are pure.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

from .errors import ShapeMismatch, ZeroConstantTerm
from .indexing import index_space, multi_index_count
from .scalars import RAT, RONE, RZERO, RationalComplex

DEFAULT_ZERO_THRESHOLD = 1e-12

_BACKENDS = ("rational", "float")


def _coerce_rational_parts(value):
    qc = RationalComplex.from_value(value)
    return qc.re, qc.im


class TruncatedSequence:
    """All values ``s_alpha`` for ``|alpha| <= d`` over one numeric backend."""

    __slots__ = ("n", "d", "backend", "_re", "_im", "_vals", "_has_imag")

    def __init__(self, n, d, backend, _re=None, _im=None, _vals=None):
        space = index_space(n, d)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "backend", backend)
        if backend == "rational":
            if len(_re) != space.size or len(_im) != space.size:
                raise ShapeMismatch(
                    f"expected {space.size} entries for n={n}, d={d}, got {len(_re)}"
                )
            object.__setattr__(self, "_re", tuple(_re))
            object.__setattr__(self, "_im", tuple(_im))
            object.__setattr__(self, "_vals", None)
            object.__setattr__(self, "_has_imag", any(self._im))
        elif backend == "float":
            vals = np.asarray(_vals, dtype=np.complex128)
            if vals.shape != (space.size,):
                raise ShapeMismatch(
                    f"expected {space.size} entries for n={n}, d={d}, got {vals.shape}"
                )
            vals = vals.copy()
            vals.flags.writeable = False
            object.__setattr__(self, "_re", None)
            object.__setattr__(self, "_im", None)
            object.__setattr__(self, "_vals", vals)
            object.__setattr__(self, "_has_imag", bool(vals.imag.any()))
        else:
            raise ValueError(f"unknown backend {backend!r}; expected one of {_BACKENDS}")

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSequence is immutable")

    # ------------------------------------------------------------------
    # construction
    # ------------------------------------------------------------------

    @classmethod
    def from_iterable(cls, n, d, values: Iterable, backend="rational"):
        """Build from scalars listed in graded-lex order of their multi-index."""
        values = list(values)
        if backend == "rational":
            parts = [_coerce_rational_parts(v) for v in values]
            return cls(n, d, "rational", _re=[p[0] for p in parts], _im=[p[1] for p in parts])
        return cls(n, d, "float", _vals=values)

    @classmethod
    def zero(cls, n, d, backend="rational"):
        size = multi_index_count(n, d)
        if backend == "rational":
            return cls(n, d, "rational", _re=[RZERO] * size, _im=[RZERO] * size)
        return cls(n, d, "float", _vals=np.zeros(size, dtype=np.complex128))

    # ------------------------------------------------------------------
    # access
    # ------------------------------------------------------------------

    @property
    def space(self):
        return index_space(self.n, self.d)

    @property
    def indices(self):
        return self.space.indices

    @property
    def is_real(self) -> bool:
        return not self._has_imag

    def value_at(self, alpha):
        """Backend scalar at ``alpha``: RationalComplex or complex."""
        i = self.space.rank[tuple(alpha)]
        if self.backend == "rational":
            return RationalComplex(self._re[i], self._im[i])
        return complex(self._vals[i])

    def values(self):
        """All values in graded-lex order (tuple of scalars / read-only array)."""
        if self.backend == "rational":
            return tuple(RationalComplex(r, i) for r, i in zip(self._re, self._im))
        return self._vals

    def iter_entries(self):
        if self.backend == "rational":
            for alpha, r, i in zip(self.indices, self._re, self._im):
                yield alpha, RationalComplex(r, i)
        else:
            for alpha, v in zip(self.indices, self._vals):
                yield alpha, complex(v)

    def rational_parts(self):
        """Internal ``(re, im)`` tuples; rational backend only."""
        if self.backend != "rational":
            raise ShapeMismatch("rational_parts() requires the rational backend")
        return self._re, self._im

    def float_values(self) -> np.ndarray:
        if self.backend == "float":
            return self._vals
        return np.array(
            [complex(float(r), float(i)) for r, i in zip(self._re, self._im)],
            dtype=np.complex128,
        )

    # ------------------------------------------------------------------
    # conversions
    # ------------------------------------------------------------------

    def to_float(self) -> "TruncatedSequence":
        if self.backend == "float":
            return self
        return TruncatedSequence(self.n, self.d, "float", _vals=self.float_values())

    def restrict(self, d2: int) -> "TruncatedSequence":
        """Drop all entries of degree above ``d2`` (graded order = prefix slice)."""
        if d2 > self.d or d2 < 0:
            raise ValueError(f"cannot restrict degree {self.d} sequence to degree {d2}")
        size = multi_index_count(self.n, d2)
        if self.backend == "rational":
            return TruncatedSequence(
                self.n, d2, "rational", _re=self._re[:size], _im=self._im[:size]
            )
        return TruncatedSequence(self.n, d2, "float", _vals=self._vals[:size])

    # ------------------------------------------------------------------
    # comparison
    # ------------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, TruncatedSequence):
            return NotImplemented
        if (self.n, self.d, self.backend) != (other.n, other.d, other.backend):
            return False
        if self.backend == "rational":
            return self._re == other._re and self._im == other._im
        return bool(np.array_equal(self._vals, other._vals))

    def norm_inf(self) -> float:
        if self.backend == "rational":
            vals = self.float_values()
        else:
            vals = self._vals
        return float(np.max(np.abs(vals))) if len(vals) else 0.0

    def max_abs_diff(self, other: "TruncatedSequence") -> float:
        self._check_composable(other, same_backend=False)
        return float(np.max(np.abs(self.float_values() - other.float_values())))

    def allclose(self, other: "TruncatedSequence", tol: float, scale=None) -> bool:
        """Entrywise agreement: ``|self - other| <= tol * scale``.

        ``scale`` defaults to ``max(1, ||self||_inf, ||other||_inf)``.  With
        ``tol == 0`` and both operands rational the comparison is exact.
        """
        self._check_composable(other, same_backend=False)
        if tol == 0 and self.backend == "rational" and other.backend == "rational":
            return self._re == other._re and self._im == other._im
        if scale is None:
            scale = max(1.0, self.norm_inf(), other.norm_inf())
        return self.max_abs_diff(other) <= tol * scale

    def _check_composable(self, other, same_backend=True):
        if self.n != other.n or self.d != other.d:
            raise ShapeMismatch(
                f"sequences are not composable: (n={self.n}, d={self.d}) vs "
                f"(n={other.n}, d={other.d})"
            )
        if same_backend and self.backend != other.backend:
            raise ShapeMismatch(
                f"backend mismatch: {self.backend!r} vs {other.backend!r}"
            )

    def __repr__(self):
        return (
            f"TruncatedSequence(n={self.n}, d={self.d}, backend={self.backend!r}, "
            f"size={self.space.size})"
        )

    # ------------------------------------------------------------------
    # algebra
    # ------------------------------------------------------------------

    def convolve(self, other: "TruncatedSequence") -> "TruncatedSequence":
        return convolve(self, other)

    def inverse(self, zero_threshold: float = DEFAULT_ZERO_THRESHOLD) -> "TruncatedSequence":
        return inverse(self, zero_threshold)


def identity(n: int, d: int, backend: str = "rational") -> TruncatedSequence:
    """Neutral element: 1 at alpha = 0, zero elsewhere (Dirac mass at the origin)."""
    size = multi_index_count(n, d)
    if backend == "rational":
        re = [RONE] + [RZERO] * (size - 1)
        return TruncatedSequence(n, d, "rational", _re=re, _im=[RZERO] * size)
    vals = np.zeros(size, dtype=np.complex128)
    vals[0] = 1.0
    return TruncatedSequence(n, d, "float", _vals=vals)


def _conv_rat(conv_entries, a, b):
    """Real rational convolution over precomputed tables."""
    return [sum(c * a[rb] * b[rg] for rb, rg, c in entries) for entries in conv_entries]


def convolve(s: TruncatedSequence, t: TruncatedSequence) -> TruncatedSequence:
    """Binomial-weighted convolution of two sequences (same n, d, backend)."""
    s._check_composable(t)
    space = s.space
    if s.backend == "float":
        rb, rg, c, starts = space.flat_arrays()
        terms = c * s._vals[rb] * t._vals[rg]
        return TruncatedSequence(s.n, s.d, "float", _vals=np.add.reduceat(terms, starts))

    entries = space.conv_entries
    size = space.size
    u_re = _conv_rat(entries, s._re, t._re)
    if s._has_imag and t._has_imag:
        for i, v in enumerate(_conv_rat(entries, s._im, t._im)):
            u_re[i] = u_re[i] - v
        u_im = _conv_rat(entries, s._re, t._im)
        for i, v in enumerate(_conv_rat(entries, s._im, t._re)):
            u_im[i] = u_im[i] + v
    elif s._has_imag:
        u_im = _conv_rat(entries, s._im, t._re)
    elif t._has_imag:
        u_im = _conv_rat(entries, s._re, t._im)
    else:
        u_im = [RZERO] * size
    return TruncatedSequence(s.n, s.d, "rational", _re=u_re, _im=u_im)


def inverse(
    t: TruncatedSequence, zero_threshold: float = DEFAULT_ZERO_THRESHOLD
) -> TruncatedSequence:
    """Convolution inverse of ``t``; requires a nonzero constant term.

    Solves ``t * u = identity`` by the triangular recursion
    ``u_0 = 1/t_0`` and, for ``alpha > 0`` in graded-lex order,
    ``u_alpha = -(1/t_0) * sum_{beta < alpha} binom(alpha, beta) t_{alpha-beta} u_beta``.
    """
    space = t.space
    if t.backend == "float":
        vals = t._vals
        t0 = vals[0]
        if abs(t0) <= zero_threshold:
            raise ZeroConstantTerm(
                f"|t_0| = {abs(t0):.3e} is below the invertibility threshold {zero_threshold:.3e}"
            )
        u = np.zeros(space.size, dtype=np.complex128)
        u[0] = 1.0 / t0
        arrays = space.inverse_arrays()
        for i in range(1, space.size):
            rb, rg, c = arrays[i]
            u[i] = -np.sum(c * vals[rg] * u[rb]) / t0
        return TruncatedSequence(t.n, t.d, "float", _vals=u)

    t_re, t_im = t._re, t._im
    if not t_re[0] and not t_im[0]:
        raise ZeroConstantTerm("sequence has zero constant term, no convolution inverse")
    size = space.size
    entries = space.inv_entries
    if not t._has_imag:
        t0 = t_re[0]
        u = [RZERO] * size
        u[0] = RONE / t0
        for i in range(1, size):
            acc = sum(c * t_re[rg] * u[rb] for rb, rg, c in entries[i])
            u[i] = -acc / t0
        return TruncatedSequence(t.n, t.d, "rational", _re=u, _im=[RZERO] * size)

    norm2 = t_re[0] * t_re[0] + t_im[0] * t_im[0]
    i0_re = t_re[0] / norm2  # 1/t_0, componentwise
    i0_im = -t_im[0] / norm2
    u_re = [RZERO] * size
    u_im = [RZERO] * size
    u_re[0] = i0_re
    u_im[0] = i0_im
    for i in range(1, size):
        acc_re = sum(
            c * (t_re[rg] * u_re[rb] - t_im[rg] * u_im[rb]) for rb, rg, c in entries[i]
        )
        acc_im = sum(
            c * (t_re[rg] * u_im[rb] + t_im[rg] * u_re[rb]) for rb, rg, c in entries[i]
        )
        u_re[i] = -(acc_re * i0_re - acc_im * i0_im)
        u_im[i] = -(acc_re * i0_im + acc_im * i0_re)
    return TruncatedSequence(t.n, t.d, "rational", _re=u_re, _im=u_im)
