"""Finite-difference realisations of the differential operators.

Everything here consumes point evaluations only, never polynomial
structure, so it is an independent check on the exact calculus.  An
evaluator maps an array of points of shape (m, p+q+1) to values of shape
(m, 2^n); :func:`evaluator` builds one from a polynomial and
:func:`pointwise` wraps a plain one-point function.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .algebra import AlgebraContext, Multivector, mv_mul, split_point
from .poly import ArrayEvaluator, CliffordPolynomial

Evaluator = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class FDConfig:
    h: float = 1e-4

    def __post_init__(self):
        if not self.h > 0:
            raise ValueError("step h must be positive")


DEFAULT = FDConfig()


def evaluator(f: CliffordPolynomial, scale: float = 1.0) -> Evaluator:
    ev = ArrayEvaluator(f)
    if scale == 1.0:
        return ev
    return lambda pts: ev(pts) * scale


def pointwise(fn: Callable[[np.ndarray], Multivector]) -> Evaluator:
    def batched(pts):
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        return np.array([np.asarray(fn(pt).coeffs, dtype=float) for pt in pts])
    return batched


def _mv(ctx: AlgebraContext, arr) -> Multivector:
    return Multivector(ctx, (float(v) for v in arr))


def _central(f: Evaluator, x: np.ndarray, directions: np.ndarray, h: float) -> np.ndarray:
    """Central differences of f at x along each row of ``directions``."""
    pts = np.concatenate([x + h * directions, x - h * directions])
    vals = np.asarray(f(pts))
    m = len(directions)
    return (vals[:m] - vals[m:]) / (2 * h)


def fd_partial(f: Evaluator, x: Sequence[float], i: int, ctx: AlgebraContext,
               cfg: FDConfig = DEFAULT) -> Multivector:
    x = np.asarray(x, dtype=float)
    d = np.zeros((1, len(x)))
    d[0, i] = 1.0
    return _mv(ctx, _central(f, x, d, cfg.h)[0])


def _all_partials(f, x, ctx, cfg):
    x = np.asarray(x, dtype=float)
    return _central(f, x, np.eye(len(x)), cfg.h)


def _basis(ctx, i) -> Multivector:
    return Multivector.basis(ctx, i).to_float()


def fd_dirac_full(f: Evaluator, x: Sequence[float], ctx: AlgebraContext,
                  cfg: FDConfig = DEFAULT) -> Multivector:
    """sum_{i=0}^{p+q} e_i d_i f, left multiplication."""
    parts = _all_partials(f, x, ctx, cfg)
    out = Multivector.zero(ctx, exact=False)
    for i, row in enumerate(parts):
        out = out + mv_mul(_basis(ctx, i), _mv(ctx, row))
    return out


def fd_gamma(f: Evaluator, x: Sequence[float], ctx: AlgebraContext,
             cfg: FDConfig = DEFAULT) -> Multivector:
    """-sum_{p<i<j} e_i e_j (x_i d_j f - x_j d_i f)."""
    x = np.asarray(x, dtype=float)
    parts = _all_partials(f, x, ctx, cfg)
    out = Multivector.zero(ctx, exact=False)
    idx = list(ctx.sphere_indices)
    for a, i in enumerate(idx):
        for j in idx[a + 1:]:
            L = _mv(ctx, x[i] * parts[j] - x[j] * parts[i])
            out = out - mv_mul(mv_mul(_basis(ctx, i), _basis(ctx, j)), L)
    return out


def _omega_vector(ctx, x):
    _, r, omega = split_point(x, ctx)
    if omega is None:
        raise ValueError("the slice direction is undefined on R^{p+1}; pick r > 0")
    direction = np.zeros(len(x))
    direction[ctx.p + 1:] = omega
    om = Multivector.zero(ctx, exact=False)
    for i, c in zip(ctx.sphere_indices, omega):
        om = om + _basis(ctx, i) * c
    return direction, om


def fd_slice_dirac(f: Evaluator, x: Sequence[float], ctx: AlgebraContext,
                   cfg: FDConfig = DEFAULT) -> Multivector:
    """(D_{x_p} + omega d_r) f at x = x_p + r omega, r > 0."""
    x = np.asarray(x, dtype=float)
    direction, om = _omega_vector(ctx, x)
    rows = np.vstack([np.eye(len(x))[: ctx.p + 1], direction])
    parts = _central(f, x, rows, cfg.h)
    out = Multivector.zero(ctx, exact=False)
    for i in range(ctx.p + 1):
        out = out + mv_mul(_basis(ctx, i), _mv(ctx, parts[i]))
    return out + mv_mul(om, _mv(ctx, parts[-1]))


def fd_slice_dirac_right(f: Evaluator, x: Sequence[float], ctx: AlgebraContext,
                         cfg: FDConfig = DEFAULT) -> Multivector:
    """f (conj(D_{x_p}) + omega d_r) with the operator acting from the right."""
    x = np.asarray(x, dtype=float)
    direction, om = _omega_vector(ctx, x)
    rows = np.vstack([np.eye(len(x))[: ctx.p + 1], direction])
    parts = _central(f, x, rows, cfg.h)
    out = _mv(ctx, parts[0])
    for i in range(1, ctx.p + 1):
        out = out - mv_mul(_mv(ctx, parts[i]), _basis(ctx, i))
    return out + mv_mul(_mv(ctx, parts[-1]), om)


def fd_partial_eta(f: Evaluator, x: Sequence[float], eta: Sequence[float],
                   ctx: AlgebraContext, cfg: FDConfig = DEFAULT) -> Multivector:
    """D_{x_p} f + eta <eta, D_{x_q}> f."""
    x = np.asarray(x, dtype=float)
    direction = np.zeros(len(x))
    direction[ctx.p + 1:] = np.asarray(eta, dtype=float)
    rows = np.vstack([np.eye(len(x))[: ctx.p + 1], direction])
    parts = _central(f, x, rows, cfg.h)
    out = Multivector.zero(ctx, exact=False)
    for i in range(ctx.p + 1):
        out = out + mv_mul(_basis(ctx, i), _mv(ctx, parts[i]))
    eta_v = Multivector.zero(ctx, exact=False)
    for i, c in zip(ctx.sphere_indices, eta):
        eta_v = eta_v + _basis(ctx, i) * float(c)
    return out + mv_mul(eta_v, _mv(ctx, parts[-1]))


@dataclass
class Comparison:
    passed: bool
    max_error: float

    def __bool__(self):
        return self.passed


def compare(exact, approx, tol_abs: float, tol_rel: float) -> Comparison:
    """Component-wise |approx - exact| <= tol_abs + tol_rel * |exact|."""
    a = np.atleast_1d(np.asarray(exact.coeffs if isinstance(exact, Multivector) else exact,
                                 dtype=float))
    b = np.atleast_1d(np.asarray(approx.coeffs if isinstance(approx, Multivector) else approx,
                                 dtype=float))
    if a.shape != b.shape:
        raise ValueError("cannot compare values of different shapes")
    err = np.abs(b - a)
    ok = bool(np.all(err <= tol_abs + tol_rel * np.abs(a)))
    return Comparison(ok, float(err.max(initial=0.0)))


def unit_box_points(ctx: AlgebraContext, count: int, rng: np.random.Generator,
                    min_r: float = 0.05) -> np.ndarray:
    """Points of [-1, 1]^{p+q+1}, kept off R^{p+1} so omega is defined."""
    pts = []
    while len(pts) < count:
        x = rng.uniform(-1.0, 1.0, ctx.n + 1)
        if np.linalg.norm(x[ctx.p + 1:]) >= min_r:
            pts.append(x)
    return np.array(pts)
