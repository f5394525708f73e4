"""Cauchy-Kovalevskaya type extensions of polynomial data on R^{p+1}.

* :func:`ck`  -- slice CK-extension exp(x_q D_{x_p}) f0, a GSR slice pair;
* :func:`gck` -- generalized CK-extension, the monogenic extension;
* :func:`ck_fixed_direction` -- exp(<eta, x_q> eta D_{x_p}) f0 for one eta.

Inputs are polynomials, so every series terminates.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import List, Sequence

from .errors import EvenQ, NotReal, VariableMismatch
from .poly import CliffordPolynomial, VarKind, as_base, base_to, poly_diff
from .slices import (SlicePair, direction_vector, dirac_xp, dirac_xp_conj,
                     double_factorial, laplacian_xp, unit_direction)


def _base(f0: CliffordPolynomial) -> CliffordPolynomial:
    try:
        return as_base(f0)
    except VariableMismatch:
        raise VariableMismatch("extension data must be a polynomial in x0..x_p only") from None


def _r_times(g: CliffordPolynomial, power: int) -> CliffordPolynomial:
    """g(x_p) * r^power as a slice polynomial."""
    return CliffordPolynomial(g.ctx, VarKind.SLICE,
                              {e + (power,): c for e, c in g.terms.items()})


def laplacian_powers(f0: CliffordPolynomial) -> List[CliffordPolynomial]:
    """[f0, Delta f0, Delta^2 f0, ...] up to the last nonzero power."""
    out = []
    g = f0
    while not g.is_zero():
        out.append(g)
        g = laplacian_xp(g)
    return out


def ck(f0: CliffordPolynomial) -> SlicePair:
    """Slice CK-extension split into its even and odd parts in r."""
    f0 = _base(f0)
    ctx = f0.ctx
    F1 = CliffordPolynomial.zero(ctx, VarKind.SLICE)
    F2 = CliffordPolynomial.zero(ctx, VarKind.SLICE)
    for k, g in enumerate(laplacian_powers(f0)):
        sign = -1 if k % 2 else 1
        F1 = F1 + _r_times(g, 2 * k).scale(Fraction(sign, factorial(2 * k)))
        F2 = F2 + _r_times(dirac_xp(g), 2 * k + 1).scale(Fraction(sign, factorial(2 * k + 1)))
    return SlicePair(F1, F2)


def ck_right_residual(f0: CliffordPolynomial, eta: Sequence) -> CliffordPolynomial:
    """g conj(D_{x_p}) + (d_r g) eta for g = F1 + eta F2, with right action.

    Vanishes identically when f0 is real valued.
    """
    f0 = _base(f0)
    if not f0.is_scalar_valued():
        raise NotReal("right monogenicity holds for real-valued data only")
    ctx = f0.ctx
    eta_v = direction_vector(ctx, eta)
    F = ck(f0)
    g = F.F1 + F.F2.left_mul(eta_v)
    out = poly_diff(g, 0)
    for i in range(1, ctx.p + 1):
        out = out - poly_diff(g, i).right_blade(1 << (i - 1))
    return out + poly_diff(g, "r").right_mul(eta_v)


# ---------------------------------------------------------------------------
# generalized CK-extension

def gck_sequence(f0: CliffordPolynomial) -> List[CliffordPolynomial]:
    """The coefficients f_0, f_1, ... of sum_k x_q^k f_k, by the two-term recursion."""
    f0 = _base(f0)
    q = f0.ctx.q
    seq = [f0]
    k = 0
    while True:
        odd = dirac_xp(seq[-1]).scale(Fraction(1, 2 * k + q))
        if odd.is_zero():
            break
        seq.append(odd)
        even = dirac_xp_conj(odd).scale(Fraction(1, 2 * k + 2))
        if even.is_zero():
            break
        seq.append(even)
        k += 1
    return seq


def gck_even_coefficient(k: int, q: int) -> Fraction:
    """1 / (2^k k! q (q+2) ... (q+2k-2)), the factor in front of Delta^k f0."""
    den = 2 ** k * factorial(k)
    for j in range(k):
        den *= q + 2 * j
    return Fraction(1, den)


def gck_odd_coefficient(k: int, q: int) -> Fraction:
    """1 / (2^k k! q (q+2) ... (q+2k)), the factor in front of D Delta^k f0."""
    return gck_even_coefficient(k, q) / (q + 2 * k)


def gck_closed_form(f0: CliffordPolynomial) -> SlicePair:
    f0 = _base(f0)
    ctx = f0.ctx
    F1 = CliffordPolynomial.zero(ctx, VarKind.SLICE)
    F2 = CliffordPolynomial.zero(ctx, VarKind.SLICE)
    for k, g in enumerate(laplacian_powers(f0)):
        sign = -1 if k % 2 else 1
        F1 = F1 + _r_times(g, 2 * k).scale(sign * gck_even_coefficient(k, ctx.q))
        F2 = F2 + _r_times(dirac_xp(g), 2 * k + 1).scale(sign * gck_odd_coefficient(k, ctx.q))
    return SlicePair(F1, F2)


def gck(f0: CliffordPolynomial, cross_check: bool = True) -> SlicePair:
    """Generalized CK-extension as a slice pair.

    x_q^{2k} = (-r^2)^k, so f_{2k} feeds F1 and f_{2k+1} feeds F2 with the
    alternating sign.  With ``cross_check`` the recursion is compared to the
    telescoped closed form and a disagreement raises ``ArithmeticError``.
    """
    f0 = _base(f0)
    ctx = f0.ctx
    F1 = CliffordPolynomial.zero(ctx, VarKind.SLICE)
    F2 = CliffordPolynomial.zero(ctx, VarKind.SLICE)
    for j, fj in enumerate(gck_sequence(f0)):
        k = j // 2
        sign = -1 if k % 2 else 1
        if j % 2 == 0:
            F1 = F1 + _r_times(fj, j).scale(sign)
        else:
            F2 = F2 + _r_times(fj, j).scale(sign)
    out = SlicePair(F1, F2)
    if cross_check and out != gck_closed_form(f0):
        raise ArithmeticError("GCK recursion disagrees with its closed form")
    return out


# ---------------------------------------------------------------------------
# fixed direction

def inner_with_direction(ctx, eta: Sequence) -> CliffordPolynomial:
    """<eta, x_q> = sum_i eta_i x_{p+i}, a real linear polynomial."""
    eta = unit_direction(ctx, eta)
    out = CliffordPolynomial.zero(ctx, VarKind.FULL)
    for i, c in zip(ctx.sphere_indices, eta):
        if c:
            out = out + CliffordPolynomial.variable(ctx, VarKind.FULL, f"x{i}", c)
    return out


def ck_fixed_direction(f0: CliffordPolynomial, eta: Sequence) -> CliffordPolynomial:
    f0 = _base(f0)
    ctx = f0.ctx
    eta_v = direction_vector(ctx, eta)
    t = inner_with_direction(ctx, eta)
    out = CliffordPolynomial.zero(ctx, VarKind.FULL)
    term = f0
    t_pow = CliffordPolynomial.constant(ctx, VarKind.FULL, 1)
    k = 0
    while not term.is_zero():
        out = out + (t_pow * base_to(term, VarKind.FULL)).scale(Fraction(1, factorial(k)))
        term = dirac_xp(term).left_mul(eta_v)
        t_pow = t_pow * t
        k += 1
    return out


def partial_eta_apply(f: CliffordPolynomial, eta: Sequence) -> CliffordPolynomial:
    """D_{x_p} f + eta <eta, D_{x_q}> f."""
    if f.kind is not VarKind.FULL:
        raise VariableMismatch("partial_eta_apply needs full variables")
    ctx = f.ctx
    eta_u = unit_direction(ctx, eta)
    directional = CliffordPolynomial.zero(ctx, VarKind.FULL)
    for i, c in zip(ctx.sphere_indices, eta_u):
        if c:
            directional = directional + poly_diff(f, i).scale(c)
    return dirac_xp(f) + directional.left_mul(direction_vector(ctx, eta_u))


def fueter_sce_source(f0: CliffordPolynomial, q: int = None) -> CliffordPolynomial:
    """(-Delta_{x_p})^{(q-1)/2} f0 / (q-2)!!, the data whose GCK equals tau_q(CK[f0])."""
    f0 = _base(f0)
    if q is None:
        q = f0.ctx.q
    if q != f0.ctx.q:
        raise ValueError(f"q={q} does not match the algebra (q={f0.ctx.q})")
    if q % 2 == 0:
        raise EvenQ(q)
    g = f0
    for _ in range((q - 1) // 2):
        g = -laplacian_xp(g)
    return g.scale(Fraction(1, double_factorial(q - 2)))

