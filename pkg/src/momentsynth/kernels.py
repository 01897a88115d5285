"""Smoothing kernels and their truncated moment sequences.

Two kernel families are supported:

* :class:`BoxKernel` -- the indicator of the half-open unit box
  ``[a_1, a_1+1) x ... x [a_n, a_n+1)`` with non-negative rational offset
  ``a``.  Moments are closed-form rationals.
* :class:`BumpKernel` -- the smooth compactly supported product bump
  ``prod_i exp(-1 / (x_i (1 - x_i)))`` on ``(0, 1)^n``.  Moments come from
  composite Gauss-Legendre quadrature (the tensor rule factorizes over the
  product integrand, so only 1-D panels are evaluated).

Both have compact support inside ``[0, infinity)^n``, bounded values, and
strictly positive total mass, so every finite absolute moment exists.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ShapeMismatch
from .quadrature import DEFAULT_QUADRATURE, QuadratureConfig, converged_moments_1d
from .scalars import RAT, RONE, RZERO, rat
from .sequences import TruncatedSequence, convolve
from .indexing import index_space


@dataclass(frozen=True)
class BoxKernel:
    """Indicator of the unit box shifted by a non-negative rational offset."""

    offset: tuple

    def __post_init__(self):
        coerced = tuple(rat(a) for a in self.offset)
        if not coerced:
            raise ValueError("box kernel needs at least one coordinate")
        if any(a < 0 for a in coerced):
            raise ValueError(f"box offset must be non-negative, got {self.offset}")
        object.__setattr__(self, "offset", coerced)

    @property
    def n(self) -> int:
        return len(self.offset)

    @property
    def support(self):
        """Per-coordinate ``(lo, hi)`` with ``hi = lo + 1``; box is ``[lo, hi)``."""
        return tuple((a, a + 1) for a in self.offset)


def box_kernel(offset) -> BoxKernel:
    """Convenience constructor accepting ints, strings, Fractions, or a scalar."""
    if isinstance(offset, (int, str)) or not hasattr(offset, "__iter__"):
        offset = (offset,)
    return BoxKernel(tuple(offset))


@dataclass(frozen=True)
class BumpKernel:
    """Smooth product bump supported on ``[0, 1]^n``, positive on the interior."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"dimension must be >= 1, got {self.n}")

    @property
    def support(self):
        return tuple((RZERO, RONE) for _ in range(self.n))


Kernel = BoxKernel | BumpKernel


def bump_profile_1d(x: np.ndarray) -> np.ndarray:
    """``exp(-1/(x(1-x)))`` on (0, 1), zero elsewhere; vectorized."""
    x = np.asarray(x, dtype=np.float64)
    out = np.zeros_like(x)
    inside = (x > 0.0) & (x < 1.0)
    xi = x[inside]
    out[inside] = np.exp(-1.0 / (xi * (1.0 - xi)))
    return out


def bump_value(kernel: BumpKernel, x) -> float:
    """Pointwise bump evaluation at an n-tuple."""
    if len(x) != kernel.n:
        raise ShapeMismatch(f"point has {len(x)} coordinates, kernel has {kernel.n}")
    acc = 1.0
    for xi in x:
        xi = float(xi)
        if not 0.0 < xi < 1.0:
            return 0.0
        acc *= np.exp(-1.0 / (xi * (1.0 - xi)))
    return acc


def _box_axis_moments(a, d: int):
    """Exact ``integral_{a}^{a+1} x^k dx`` for k = 0..d (power-rule antiderivative)."""
    b = a + 1
    return [
        (b ** (k + 1) - a ** (k + 1)) / RAT(k + 1)
        for k in range(d + 1)
    ]


def _bump_axis_moments(d: int, cfg: QuadratureConfig) -> np.ndarray:
    """Quadrature ``integral_0^1 x^k exp(-1/(x(1-x))) dx`` for k = 0..d."""
    return converged_moments_1d(bump_profile_1d, [0.0, 1.0], d, cfg).real


def kernel_moments(
    kernel: Kernel, d: int, cfg: QuadratureConfig = DEFAULT_QUADRATURE
) -> TruncatedSequence:
    """Moment sequence ``t_alpha = integral x^alpha g(x) dx`` up to degree ``d``.

    Box kernels produce an exact rational sequence, the bump a float one.
    The multivariate integral factors into per-coordinate moments because both
    kernels are products over coordinates.
    """
    if d < 0:
        raise ValueError(f"degree bound must be >= 0, got {d}")
    space = index_space(kernel.n, d)
    if isinstance(kernel, BoxKernel):
        axis = [_box_axis_moments(a, d) for a in kernel.offset]
        re = []
        for alpha in space.indices:
            v = RONE
            for i, k in enumerate(alpha):
                v = v * axis[i][k]
            re.append(v)
        return TruncatedSequence(
            kernel.n, d, "rational", _re=re, _im=[RZERO] * space.size
        )
    axis_m = _bump_axis_moments(d, cfg)
    vals = np.array(
        [np.prod([axis_m[k] for k in alpha]) for alpha in space.indices],
        dtype=np.complex128,
    )
    return TruncatedSequence(kernel.n, d, "float", _vals=vals)


def point_moments(y, n: int, d: int) -> TruncatedSequence:
    """Moments of the Dirac mass at the lattice point ``y``: ``y^alpha`` (0^0 = 1)."""
    y = tuple(int(v) for v in y)
    if len(y) != n:
        raise ShapeMismatch(f"point has {len(y)} coordinates, expected {n}")
    if any(v < 0 for v in y):
        raise ValueError(f"lattice point must be componentwise >= 0, got {y}")
    space = index_space(n, d)
    re = []
    for alpha in space.indices:
        v = 1
        for yi, k in zip(y, alpha):
            v *= yi**k
        re.append(RAT(v))
    return TruncatedSequence(n, d, "rational", _re=re, _im=[RZERO] * space.size)


def shifted_kernel_moments(
    kernel: Kernel, y, d: int, cfg: QuadratureConfig = DEFAULT_QUADRATURE
) -> TruncatedSequence:
    """Moments of the translate ``g(. - y)`` for a lattice point ``y``.

    Translation convolves the kernel's moment sequence with the Dirac moments
    of ``y``, i.e. the binomial shift identity
    ``integral x^alpha g(x - y) dx = sum_beta binom(alpha, beta) y^(alpha-beta) t_beta``.
    """
    t = kernel_moments(kernel, d, cfg)
    p = point_moments(y, kernel.n, d)
    if t.backend == "float":
        p = p.to_float()
    return convolve(t, p)
