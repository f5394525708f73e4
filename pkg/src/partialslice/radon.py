"""Dual Radon transform of slice functions via normalised sphere moments.

The dual transform averages f(x_p, <x_q, eta> eta) over the unit sphere of
R^q.  Only the normalised moments

    mu_k(q) = (1/A_q) * integral_S <eta, u>^k dS(eta),  |u| = 1,

enter the exact path, so the sphere area A_q = 2 pi^{q/2} / Gamma(q/2)
cancels and never has to be evaluated.  On a slice pair with
F1 = sum r^{2k} a_k and F2 = sum r^{2k+1} b_k the transform rescales
a_k by mu_{2k} and b_k by mu_{2k+2}; the second factor comes from the vector
moment  (1/A_q) integral_S eta <u, eta>^{2k+1} dS = mu_{2k+2} |u|^{2k} u.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence, Tuple

import numpy as np

from .algebra import AlgebraContext, Multivector
from .poly import CliffordPolynomial, VarKind
from .slices import SlicePair, dw_slice, require_valid

# number of sphere samples drawn per generator call; part of the seed protocol
CHUNK = 65536


def sphere_moment(k: int, q: int) -> Fraction:
    """mu_k(q): zero for odd k, (2m-1)!! / (q (q+2) ... (q+2m-2)) for k = 2m."""
    if k < 0 or q < 1:
        raise ValueError("need k >= 0 and q >= 1")
    if k % 2:
        return Fraction(0)
    value = Fraction(1)
    for j in range(k // 2):
        value *= Fraction(2 * j + 1, q + 2 * j)
    return value


def _rescale(F: CliffordPolynomial, q: int, shift: int) -> CliffordPolynomial:
    out = {}
    for e, c in F.terms.items():
        out[e] = c.scale(sphere_moment(e[-1] + shift, q))
    return CliffordPolynomial(F.ctx, VarKind.SLICE, out)


def dual_radon(F: SlicePair) -> SlicePair:
    require_valid(F)
    q = F.ctx.q
    return SlicePair(_rescale(F.F1, q, 0), _rescale(F.F2, q, 1))


def dw_slice_apply(F: SlicePair) -> SlicePair:
    """Slice form of D_omega f; the input side of the intertwining identity."""
    return dw_slice(F)


# ---------------------------------------------------------------------------
# Monte-Carlo side

def sample_sphere(q: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform points on the unit sphere of R^q (normalised Gaussians)."""
    if q == 1:
        return rng.choice(np.array([-1.0, 1.0]), size=(count, 1))
    g = rng.standard_normal((count, q))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def _chunks(samples: int):
    done = 0
    while done < samples:
        n = min(CHUNK, samples - done)
        yield n
        done += n


@dataclass
class MonteCarloEstimate:
    estimate: np.ndarray
    stderr: np.ndarray
    samples: int
    seed: int

    def within(self, exact, sigmas: float = 3.0, floor: float = 1e-10) -> bool:
        # the floor absorbs rounding in components with zero sample variance
        exact = np.asarray(exact, dtype=float)
        slack = sigmas * self.stderr + floor * (1.0 + np.abs(exact))
        return bool(np.all(np.abs(self.estimate - exact) <= slack))

    def as_dict(self):
        return {"samples": self.samples, "seed": self.seed,
                "estimate": np.atleast_1d(self.estimate).tolist(),
                "stderr": np.atleast_1d(self.stderr).tolist()}


def _mean_and_stderr(total, total_sq, n) -> Tuple[np.ndarray, np.ndarray]:
    mean = total / n
    if n < 2:
        return mean, np.zeros_like(mean)
    var = np.maximum(total_sq / n - mean * mean, 0.0) * n / (n - 1)
    return mean, np.sqrt(var / n)


def sphere_moment_mc(k: int, q: int, samples: int = 10 ** 6, seed: int = 0,
                     direction: Sequence[float] = None) -> MonteCarloEstimate:
    """Monte-Carlo estimate of mu_k(q) along a unit ``direction`` (default e_1)."""
    u = np.zeros(q) if direction is None else np.asarray(direction, dtype=float)
    if direction is None:
        u[0] = 1.0
    rng = np.random.default_rng(seed)
    total = 0.0
    total_sq = 0.0
    for n in _chunks(samples):
        v = (sample_sphere(q, n, rng) @ u) ** k
        total += v.sum()
        total_sq += (v * v).sum()
    mean, se = _mean_and_stderr(np.float64(total), np.float64(total_sq), samples)
    return MonteCarloEstimate(mean, se, samples, seed)


def dual_radon_numeric(f: Callable[[np.ndarray], np.ndarray], x: Sequence[float],
                       ctx: AlgebraContext, samples: int = 10 ** 5,
                       seed: int = 0) -> MonteCarloEstimate:
    """Sphere average of f(x_p, <x_q, eta> eta) for a batched evaluator ``f``.

    ``f`` maps points of shape (m, p+q+1) to values of shape (m, 2^n).  For
    q = 1 the sphere is {+1, -1} and the average is f(x) exactly.
    """
    x = np.asarray(x, dtype=float)
    p1 = ctx.p + 1
    xq = x[p1:]
    if ctx.q == 1:
        val = np.asarray(f(x[None, :]))[0]
        return MonteCarloEstimate(val, np.zeros_like(val), 2, seed)
    rng = np.random.default_rng(seed)
    total = np.zeros(ctx.dim)
    total_sq = np.zeros(ctx.dim)
    for n in _chunks(samples):
        eta = sample_sphere(ctx.q, n, rng)
        proj = (eta @ xq)[:, None] * eta
        pts = np.concatenate([np.broadcast_to(x[:p1], (n, p1)), proj], axis=1)
        vals = np.asarray(f(pts))
        total += vals.sum(axis=0)
        total_sq += (vals * vals).sum(axis=0)
    mean, se = _mean_and_stderr(total, total_sq, samples)
    return MonteCarloEstimate(mean, se, samples, seed)


def estimate_multivector(ctx: AlgebraContext, est: MonteCarloEstimate) -> Multivector:
    return Multivector(ctx, (float(v) for v in est.estimate))
