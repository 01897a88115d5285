"""Composite Gauss-Legendre rules on axis-aligned boxes.

Rules are built per coordinate from a list of breakpoints (so integrand kinks
can be placed on panel boundaries), with ``panels`` equal subpanels between
consecutive breakpoints and ``nodes`` Gauss-Legendre points per subpanel.
Moment integrals over a tensor grid contract the sampled integrand against
per-axis weighted power matrices, so the integrand is evaluated once for all
``alpha`` up to the requested degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import QuadratureNonConvergence
from .indexing import enumerate_indices


@dataclass(frozen=True)
class QuadratureConfig:
    """Gauss-Legendre tensor rule parameters and the panel-doubling tolerance."""

    nodes: int = 64
    panels: int = 4
    tol: float = 1e-10

    def __post_init__(self):
        if self.nodes < 2:
            raise ValueError(f"nodes must be >= 2, got {self.nodes}")
        if self.panels < 1:
            raise ValueError(f"panels must be >= 1, got {self.panels}")
        if self.tol <= 0:
            raise ValueError(f"tolerance must be > 0, got {self.tol}")


DEFAULT_QUADRATURE = QuadratureConfig()


@lru_cache(maxsize=32)
def gauss_legendre(nodes: int):
    x, w = np.polynomial.legendre.leggauss(nodes)
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


def axis_rule(breakpoints, panels: int, nodes: int):
    """Composite rule along one axis: ``(points, weights)`` flat arrays.

    Each interval between consecutive breakpoints is split into ``panels``
    equal subpanels carrying an ``nodes``-point Gauss-Legendre rule.
    """
    breakpoints = np.asarray(breakpoints, dtype=np.float64)
    if len(breakpoints) < 2:
        raise ValueError("need at least two breakpoints")
    x, w = gauss_legendre(nodes)
    pts, wts = [], []
    for a, b in zip(breakpoints[:-1], breakpoints[1:]):
        edges = np.linspace(a, b, panels + 1)
        for lo, hi in zip(edges[:-1], edges[1:]):
            half = (hi - lo) / 2.0
            pts.append(half * x + (lo + hi) / 2.0)
            wts.append(half * w)
    return np.concatenate(pts), np.concatenate(wts)


def integrate_1d(fn, breakpoints, cfg: QuadratureConfig = DEFAULT_QUADRATURE, panels=None):
    """Integral of a vectorized ``fn`` over ``[breakpoints[0], breakpoints[-1]]``."""
    p, w = axis_rule(breakpoints, panels if panels is not None else cfg.panels, cfg.nodes)
    return np.sum(w * fn(p))


def tensor_moments(grid_fn, axis_breakpoints, d: int, cfg: QuadratureConfig, panels=None):
    """Moments ``integral of x^alpha * f(x)`` for all ``|alpha| <= d``.

    ``grid_fn`` receives an ``(m, n)`` array of points and returns ``m`` complex
    values; ``axis_breakpoints`` is one breakpoint list per coordinate.  Returns
    a complex array in graded-lex order of ``alpha``.
    """
    panels = panels if panels is not None else cfg.panels
    n = len(axis_breakpoints)
    rules = [axis_rule(bp, panels, cfg.nodes) for bp in axis_breakpoints]
    axes = [r[0] for r in rules]
    grids = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=-1)
    f_grid = np.asarray(grid_fn(pts), dtype=np.complex128).reshape(
        [len(a) for a in axes]
    )
    # per-axis weighted power matrices: pw[i][k, j] = w_j * p_j^k
    pw = []
    for p, w in rules:
        powers = np.vander(p, N=d + 1, increasing=True).T  # (d+1, m)
        pw.append(powers * w)
    out = []
    for alpha in enumerate_indices(n, d):
        acc = f_grid
        for axis_i in range(n - 1, -1, -1):
            acc = np.tensordot(acc, pw[axis_i][alpha[axis_i]], axes=([axis_i], [0]))
        out.append(complex(acc))
    return np.asarray(out, dtype=np.complex128)


def converged_tensor_moments(grid_fn, axis_breakpoints, d, cfg: QuadratureConfig):
    """Panel-doubling check: accept the refined result, else raise."""
    coarse = tensor_moments(grid_fn, axis_breakpoints, d, cfg, panels=cfg.panels)
    fine = tensor_moments(grid_fn, axis_breakpoints, d, cfg, panels=2 * cfg.panels)
    disagreement = float(np.max(np.abs(fine - coarse)))
    if disagreement > cfg.tol:
        raise QuadratureNonConvergence(
            f"panel doubling moved the result by {disagreement:.3e} > tol {cfg.tol:.3e}"
        )
    return fine


def converged_moments_1d(fn, breakpoints, d, cfg: QuadratureConfig):
    """1-D specialization: array of ``integral x^k fn(x) dx`` for k = 0..d."""

    def rule(panels):
        p, w = axis_rule(breakpoints, panels, cfg.nodes)
        vals = fn(p)
        powers = np.vander(p, N=d + 1, increasing=True).T
        return (powers * w) @ vals

    coarse = rule(cfg.panels)
    fine = rule(2 * cfg.panels)
    disagreement = float(np.max(np.abs(fine - coarse)))
    if disagreement > cfg.tol:
        raise QuadratureNonConvergence(
            f"panel doubling moved the result by {disagreement:.3e} > tol {cfg.tol:.3e}"
        )
    return fine
