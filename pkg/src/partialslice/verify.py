"""Randomised verification suite over a grid of (p, q) splittings.

Each identity is checked as an exact polynomial equality on seeded random
inputs; a few are re-checked with finite differences.  The report is
deterministic for a fixed seed except for the ``timings`` block.
"""
from __future__ import annotations

import random
import re
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .algebra import AlgebraContext, Multivector
from .extensions import (ck, ck_fixed_direction, ck_right_residual, fueter_sce_source,
                         gck)
from .extensions import partial_eta_apply
from .oracle import (FDConfig, evaluator, fd_dirac_full, fd_slice_dirac,
                     unit_box_points)
from .parsing import format_polynomial
from .poly import CliffordPolynomial, VarKind, mul_by_r
from .radon import dual_radon, dw_slice_apply
from .slices import (SlicePair, axis_direction, cr_residual, dirac_full, dirac_slice,
                     dirac_xp, dirac_xp_conj, dr, gamma_apply, laplacian,
                     laplacian_power_slice, radial_iterates, representation_from_slice,
                     restrict_to_real, tau_q, to_full, vekua_residual)

DEFAULT_GRID = ((0, 1), (0, 3), (1, 3), (2, 3), (1, 5))


# ---------------------------------------------------------------------------
# random inputs

def random_rational(rng: random.Random) -> Fraction:
    num = 0
    while num == 0:
        num = rng.randint(-9, 9)
    return Fraction(num, rng.choice((1, 2, 3)))


def random_coefficient(ctx: AlgebraContext, rng: random.Random, real: bool = False) -> Multivector:
    if real or rng.random() < 0.4:
        return Multivector.scalar(ctx, random_rational(rng))
    items = {}
    for _ in range(rng.randint(1, 2)):
        items[rng.randrange(ctx.dim)] = random_rational(rng)
    return Multivector.from_dict(ctx, items)


def _random_exps(rng: random.Random, nvars: int, degree: int) -> List[int]:
    e = [0] * nvars
    for _ in range(degree):
        e[rng.randrange(nvars)] += 1
    return e


def random_base_poly(ctx: AlgebraContext, rng: random.Random, degree: int = 6,
                     real: bool = False, max_terms: int = 5) -> CliffordPolynomial:
    """Random polynomial in x0..x_p of total degree <= ``degree``.

    The first term has the full degree so the top of the range is exercised.
    """
    nvars = ctx.p + 1
    out = CliffordPolynomial.zero(ctx, VarKind.BASE)
    for t in range(rng.randint(1, max_terms)):
        d = degree if t == 0 else rng.randint(0, degree)
        exps = _random_exps(rng, nvars, d)
        out = out + CliffordPolynomial.monomial(ctx, VarKind.BASE, exps,
                                                random_coefficient(ctx, rng, real))
    return out


def random_slice_pair(ctx: AlgebraContext, rng: random.Random, degree: int = 6,
                      max_terms: int = 4) -> SlicePair:
    """Random (F1, F2) with F1 even and F2 odd in r; generally not GSR."""
    parts = []
    for parity in (0, 1):
        F = CliffordPolynomial.zero(ctx, VarKind.SLICE)
        for _ in range(rng.randint(1, max_terms)):
            d = rng.randint(parity, max(parity, degree))
            r_pow = rng.randrange(parity, d + 1, 2)
            exps = _random_exps(rng, ctx.p + 1, d - r_pow) + [r_pow]
            F = F + CliffordPolynomial.monomial(ctx, VarKind.SLICE, exps,
                                                random_coefficient(ctx, rng))
        parts.append(F)
    return SlicePair(*parts)


def direction_set(ctx: AlgebraContext) -> List[Tuple[Fraction, ...]]:
    """Signed axis vectors plus (3/5, 4/5, 0, ...) when q >= 2."""
    out = []
    for k in range(ctx.q):
        out.append(axis_direction(ctx, k, +1))
        out.append(axis_direction(ctx, k, -1))
    if ctx.q >= 2:
        out.append((Fraction(3, 5), Fraction(4, 5)) + (Fraction(0),) * (ctx.q - 2))
    return out


# ---------------------------------------------------------------------------
# residual helpers

def _is_zero(obj) -> bool:
    if obj is None:
        return True
    if isinstance(obj, (CliffordPolynomial, SlicePair)):
        return obj.is_zero()
    if isinstance(obj, (tuple, list)):
        return all(_is_zero(x) for x in obj)
    if isinstance(obj, str):
        return False
    raise TypeError(f"cannot judge residual of type {type(obj).__name__}")


def describe(obj) -> str:
    if isinstance(obj, CliffordPolynomial):
        return format_polynomial(obj)
    if isinstance(obj, SlicePair):
        return f"({format_polynomial(obj.F1)}, {format_polynomial(obj.F2)})"
    if isinstance(obj, (tuple, list)):
        return "[" + "; ".join(describe(x) for x in obj) + "]"
    return str(obj)


def pair_diff(a: SlicePair, b: SlicePair) -> SlicePair:
    return SlicePair(a.F1 - b.F1, a.F2 - b.F2)


# ---------------------------------------------------------------------------
# identities

@dataclass
class TrialInputs:
    ctx: AlgebraContext
    f0: CliffordPolynomial
    f0_real: CliffordPolynomial
    pair: SlicePair
    rng: random.Random


@dataclass(frozen=True)
class Identity:
    id: str
    anchor: str
    check: Callable[[TrialInputs], object]
    applies: Callable[[AlgebraContext], bool] = lambda ctx: True


def _ck_gsr(t):
    return cr_residual(ck(t.f0))


def _gck_monogenic(t):
    return dirac_full(to_full(gck(t.f0)))


def _tau_monogenic(t):
    return dirac_full(to_full(tau_q(ck(t.f0))))


def _laplacian_powers(t):
    F = ck(t.f0)
    full = to_full(F)
    res = []
    for k in (1, 2, 3):
        full = laplacian(full)
        res.append(to_full(laplacian_power_slice(F, k)) - full)
    return res


def _inter_relation(t):
    F = ck(t.f0)
    res = []
    for k, Ak in enumerate(radial_iterates(F, (t.ctx.q - 1) // 2)):
        A, B = Ak.F1, Ak.F2
        res.append(mul_by_r(dirac_xp(A) - dr(B)) - B.scale(2 * k))
        res.append(dirac_xp_conj(B) + dr(A))
    return res


def _vekua_equivalence(t):
    out = []
    for F in (t.pair, gck(t.f0), ck(t.f0)):
        vek = _is_zero(vekua_residual(F))
        mono = dirac_full(to_full(F)).is_zero()
        if vek != mono:
            out.append(f"vekua zero={vek} but monogenic={mono} for {describe(F)}")
    return out or None


def _dirac_relation(t):
    return dirac_full(to_full(t.pair)) - to_full(dirac_slice(t.pair))


def _gamma_relation(t):
    F = t.pair
    zero = CliffordPolynomial.zero(t.ctx, VarKind.SLICE)
    return gamma_apply(to_full(F)) - to_full(SlicePair(zero, F.F2.scale(t.ctx.q - 1)))


def _commutative_diagram(t):
    return pair_diff(tau_q(ck(t.f0)), gck(fueter_sce_source(t.f0, t.ctx.q)))


def _radon_factorization(t):
    return pair_diff(dual_radon(ck(t.f0)), gck(t.f0))


def _intertwining(t):
    F = t.pair
    return (to_full(dual_radon(dw_slice_apply(F)))
            - dirac_full(to_full(dual_radon(F))))


def _representation(t):
    full = to_full(t.pair)
    return [pair_diff(representation_from_slice(full, eta), t.pair)
            for eta in direction_set(t.ctx)]


def _fixed_direction(t):
    res = []
    for eta in direction_set(t.ctx):
        g = ck_fixed_direction(t.f0, eta)
        res.append(dirac_full(g))
        res.append(partial_eta_apply(g, eta))
    return res


def _right_monogenic(t):
    return [ck_right_residual(t.f0_real, eta) for eta in direction_set(t.ctx)]


def _uniqueness(t):
    F = ck(t.f0)
    G = gck(t.f0)
    return [pair_diff(ck(restrict_to_real(F)), F), pair_diff(gck(restrict_to_real(G)), G)]


def _q1_degeneracy(t):
    F = ck(t.f0)
    return [pair_diff(tau_q(F), F), pair_diff(F, gck(t.f0)),
            pair_diff(dual_radon(t.pair), t.pair)]


def _odd_q(ctx):
    return ctx.q % 2 == 1


IDENTITIES: Tuple[Identity, ...] = (
    Identity("ck_is_gsr", "slice CK-extension exp(x_q D_{x_p}) f0 solves the CR system", _ck_gsr),
    Identity("gck_is_monogenic", "generalized CK-extension (Bessel series) is monogenic",
             _gck_monogenic),
    Identity("fueter_sce_monogenic", "Fueter-Sce map tau_q sends GSR to monogenic",
             _tau_monogenic, _odd_q),
    Identity("laplacian_power", "Delta^k f = C_q(k) ((1/r)d_r)^k F1 + omega (d_r(1/r))^k F2",
             _laplacian_powers),
    Identity("inter_relation", "iterates A_k, B_k satisfy the shifted CR system",
             _inter_relation, _odd_q),
    Identity("vekua_equivalence", "monogenic iff the Vekua-type system holds",
             _vekua_equivalence),
    Identity("dirac_relation", "(D_x - D_omega) f = (1-q) F2 / r", _dirac_relation),
    Identity("gamma_relation", "Gamma f = (q-1) omega F2 (spherical Dirac operator)",
             _gamma_relation),
    Identity("commutative_diagram", "tau_q CK = GCK (1/(q-2)!!) (-Delta_{x_p})^{(q-1)/2}",
             _commutative_diagram, _odd_q),
    Identity("radon_factorization", "GCK = dual Radon o CK", _radon_factorization),
    Identity("radon_intertwining", "dual Radon [D_omega f] = D_x dual Radon [f]",
             _intertwining),
    Identity("representation_formula", "F1, F2 do not depend on the direction eta",
             _representation),
    Identity("fixed_direction_ck", "D_x and d_eta annihilate CK[f0, eta]", _fixed_direction),
    Identity("right_monogenic", "CK[f0] (conj(D_{x_p}) + omega d_r) = 0 for real f0",
             _right_monogenic),
    Identity("uniqueness_round_trip", "CK and GCK are determined by their restriction",
             _uniqueness),
    Identity("q1_degeneracy", "q = 1: tau_1 = id, CK = GCK, dual Radon = id",
             _q1_degeneracy, lambda ctx: ctx.q == 1),
)


# ---------------------------------------------------------------------------
# numeric re-verification

def numeric_checks(t: TrialInputs, points: int, cfg: FDConfig, tol: float = 1e-6):
    """Finite-difference versions of the exact zeros; yields (id, max_error)."""
    ctx = t.ctx
    np_rng = np.random.default_rng(t.rng.randrange(2 ** 32))
    pts = unit_box_points(ctx, points, np_rng)
    cases = [("fd_ck_slice_monogenic", to_full(ck(t.f0)), fd_slice_dirac),
             ("fd_gck_monogenic", to_full(gck(t.f0)), fd_dirac_full)]
    if ctx.q % 2:
        cases.append(("fd_fueter_sce_monogenic", to_full(tau_q(ck(t.f0))), fd_dirac_full))
    for name, f, op in cases:
        scale = f.l1_norm()
        ev = evaluator(f, 1.0 / scale if scale else 1.0)
        err = max(op(ev, x, ctx, cfg).max_abs() for x in pts)
        yield name, err, err <= tol


# ---------------------------------------------------------------------------
# the suite

@dataclass
class Record:
    cell: Tuple[int, int]
    trial: int
    identity: str
    anchor: str
    status: str
    residual: Optional[str] = None
    error: Optional[float] = None

    def as_dict(self):
        d = {"cell": list(self.cell), "trial": self.trial, "identity": self.identity,
             "anchor": self.anchor, "status": self.status}
        if self.residual is not None:
            d["residual"] = self.residual
        if self.error is not None:
            d["error"] = self.error
        return d


@dataclass
class VerificationReport:
    suite: str
    seed: int
    trials: int
    degree: int
    grid: List[Tuple[int, int]]
    records: List[Record] = field(default_factory=list)
    timings: Dict[str, float] = field(default_factory=dict)

    @property
    def failures(self) -> List[Record]:
        return [r for r in self.records if r.status == "fail"]

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> Dict[str, Dict[str, int]]:
        out: Dict[str, Dict[str, int]] = {}
        for r in self.records:
            s = out.setdefault(r.identity, {"pass": 0, "fail": 0})
            s["fail" if r.status == "fail" else "pass"] += 1
        return out

    def as_dict(self, with_timings: bool = True):
        d = {
            "suite": self.suite,
            "seed": self.seed,
            "trials": self.trials,
            "degree": self.degree,
            "grid": [list(c) for c in self.grid],
            "passed": self.passed,
            "summary": self.summary(),
            "records": [r.as_dict() for r in self.records],
        }
        if with_timings:
            d["timings"] = self.timings
        return d


def trial_inputs(ctx: AlgebraContext, seed: int, trial: int, degree: int) -> TrialInputs:
    rng = random.Random(f"{seed}:{ctx.p}:{ctx.q}:{trial}")
    f0 = random_base_poly(ctx, rng, degree)
    f0_real = random_base_poly(ctx, rng, degree, real=True)
    pair = random_slice_pair(ctx, rng, degree)
    return TrialInputs(ctx, f0, f0_real, pair, rng)


def run_suite(grid: Sequence[Tuple[int, int]] = DEFAULT_GRID, trials: int = 25,
              degree: int = 6, seed: int = 42, fd_points: int = 3,
              identities: Iterable[Identity] = IDENTITIES,
              progress: Optional[Callable[[str], None]] = None) -> VerificationReport:
    identities = tuple(identities)
    report = VerificationReport("partial-slice identities", seed, trials, degree,
                                [tuple(c) for c in grid])
    cfg = FDConfig()
    for cell in report.grid:
        ctx = AlgebraContext(*cell)
        start = time.perf_counter()
        for trial in range(trials):
            t = trial_inputs(ctx, seed, trial, degree)
            for ident in identities:
                if not ident.applies(ctx):
                    continue
                res = ident.check(t)
                ok = _is_zero(res)
                report.records.append(Record(cell, trial, ident.id, ident.anchor,
                                             "exact-pass" if ok else "fail",
                                             None if ok else describe(res)))
            if fd_points:
                for name, err, ok in numeric_checks(t, fd_points, cfg):
                    report.records.append(Record(cell, trial, name, "finite-difference oracle",
                                                 "numeric-pass" if ok else "fail",
                                                 error=float(f"{err:.3e}")))
        report.timings[f"({cell[0]},{cell[1]})"] = round(time.perf_counter() - start, 3)
        if progress:
            bad = sum(1 for r in report.records if r.cell == cell and r.status == "fail")
            progress(f"cell (p,q)={cell}: {trials} trials, {bad} failures, "
                     f"{report.timings[f'({cell[0]},{cell[1]})']:.1f}s")
    return report


_CELL_RE = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)")


def parse_grid(text: str) -> List[Tuple[int, int]]:
    """``"(0,1);(0,3)"`` -> [(0, 1), (0, 3)]."""
    cells = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        m = _CELL_RE.fullmatch(chunk)
        if not m:
            raise ValueError(f"bad grid cell {chunk!r}; expected (p,q)")
        cells.append((int(m.group(1)), int(m.group(2))))
    if not cells:
        raise ValueError("empty grid")
    return cells
