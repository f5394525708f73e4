from fractions import Fraction

import pytest
from hypothesis import given

from partialslice.algebra import AlgebraContext
from partialslice.errors import EvenQ, NotGSR, NotUnit, ParityViolation
from partialslice.extensions import ck
from partialslice.poly import VarKind, mul_by_r
from partialslice.slices import (SlicePair, c_q, cr_residual, dirac_full, dirac_slice,
                                 dirac_xp, dirac_xp_conj, double_factorial, dr, dr_rinv,
                                 gamma_apply, is_gsr, laplacian, laplacian_power_slice,
                                 radial_iterates, representation_from_slice,
                                 restrict_to_real, r_inv_dr, tau_q, to_full,
                                 validate_slice_pair, vekua_residual)

from conftest import B, Fl, GRID, S, base_polys, pair, polynomials, slice_pairs

C03 = AlgebraContext(0, 3)
C13 = AlgebraContext(1, 3)
C05 = AlgebraContext(0, 5)


def zero_pair(res):
    return all(p.is_zero() for p in res)


def test_validate_examples():
    assert validate_slice_pair(pair("x0", "r", C03))
    report = validate_slice_pair(pair("r", "0", C03))
    assert not report and "F1" in report.violations[0]
    assert validate_slice_pair(pair("x0^2 - r^2", "2 x0 r", C03))
    with pytest.raises(ParityViolation):
        to_full(SlicePair(S("r", C03), S("0", C03)))


def test_dirac_examples():
    assert dirac_xp(S("x0", C13)) == S("1", C13)
    assert dirac_xp(S("x1", C13)) == S("[e1]", C13)
    for p, q in GRID:
        ctx = AlgebraContext(p, q)
        vec = " + ".join(f"1/{q} x{i} [e{i}]" for i in range(p + 1, p + q + 1))
        assert dirac_full(Fl(f"x0 + {vec}", ctx)).is_zero()


def test_cr_residual_examples():
    assert zero_pair(cr_residual(pair("x0", "r", C03)))
    assert zero_pair(cr_residual(pair("1", "0", C03)))
    P1, P2 = cr_residual(pair("r^2", "x0 r", C03))
    assert P1 == S("-x0", C03) and P2 == S("3 r", C03)


@pytest.mark.parametrize("q", [1, 3, 5])
def test_vekua_examples(q):
    ctx = AlgebraContext(0, q)
    assert zero_pair(vekua_residual(pair("x0", f"1/{q} r", ctx)))
    assert zero_pair(vekua_residual(pair("1", "0", ctx)))


def test_vekua_nonzero_example():
    P1, P2 = vekua_residual(pair("x0", "r", C03))
    assert P1 == S("-2 r", C03) and P2.is_zero()


def test_radial_operators():
    assert r_inv_dr(S("x0^2 - r^2", C03)) == S("-2", C03)
    assert dr_rinv(S("r^3", C03)) == S("2 r", C03)
    assert dr_rinv(S("r", C03)).is_zero()
    with pytest.raises(ParityViolation):
        r_inv_dr(S("r", C03))
    with pytest.raises(ParityViolation):
        dr_rinv(S("r^2", C03))


def test_double_factorial_and_cq():
    assert [double_factorial(m) for m in (-1, 0, 1, 2, 3, 4, 5, 7)] == [1, 1, 1, 2, 3, 8, 15, 105]
    assert c_q(3, 0) == 1 and c_q(3, 1) == 2 and c_q(5, 2) == 8 and c_q(3, 2) == 0
    for q in (1, 3, 5, 7):
        assert c_q(q, (q - 1) // 2) == double_factorial(q - 1)


def test_laplacian_power_examples():
    F = pair("x0^2 - r^2", "2 x0 r", C03)
    assert laplacian_power_slice(F, 0) == F
    assert laplacian_power_slice(F, 1) == pair("-4", "0", C03)
    G = ck(B("x0^2", C05))
    assert laplacian_power_slice(G, 2).F1.is_zero()
    with pytest.raises(NotGSR):
        laplacian_power_slice(pair("x0", "r^3", C03), 1)


def test_tau_examples():
    c1 = AlgebraContext(0, 1)
    F1 = pair("x0^2 - r^2", "2 x0 r", c1)
    assert tau_q(F1) == F1
    assert tau_q(pair("x0^2 - r^2", "2 x0 r", C03)) == pair("-2", "0", C03)
    # not GSR, so only the unchecked radial computation accepts it
    with pytest.raises(NotGSR):
        tau_q(pair("x0", "1/3 r", C03))
    assert tau_q(pair("x0", "1/3 r", C03), check=False).is_zero()
    with pytest.raises(EvenQ, match="q must be odd"):
        tau_q(pair("x0", "r", AlgebraContext(0, 2)))


def test_to_full_examples():
    vec = Fl("x1 [e1] + x2 [e2] + x3 [e3]", C03)
    assert to_full(pair("x0", "r", C03)) == Fl("x0", C03) + vec
    assert to_full(pair("1", "0", C03)) == Fl("1", C03)
    c02 = AlgebraContext(0, 2)
    assert to_full(pair("r^2", "0", c02)) == Fl("x1^2 + x2^2", c02)


def test_restrict_examples():
    assert restrict_to_real(pair("x0^2 - r^2", "2 x0 r", C03)) == B("x0^2", C03)
    assert restrict_to_real(pair("1", "0", C03)) == B("1", C03)
    assert restrict_to_real(pair("x1 + r^2", "r [e2]", C13)) == B("x1", C13)


def test_gamma_examples():
    assert gamma_apply(Fl("x0^3 x1 [e2]", C13)).is_zero()
    for p, q in GRID:
        ctx = AlgebraContext(p, q)
        idx = range(p + 1, p + q + 1)
        vec = Fl(" + ".join(f"x{i} [e{i}]" for i in idx), ctx)
        assert gamma_apply(vec) == vec.scale(q - 1)
        assert gamma_apply(Fl(" + ".join(f"x{i}^2" for i in idx), ctx)).is_zero()


def test_representation_examples():
    rep = representation_from_slice(Fl("x0 + 1/3 x1 [e1] + 1/3 x2 [e2] + 1/3 x3 [e3]", C03),
                                    (1, 0, 0))
    assert rep == pair("x0", "1/3 r", C03)
    assert representation_from_slice(Fl("5 [e1]", C03), (0, 1, 0)) == pair("5 [e1]", "0", C03)
    F = pair("x0^2 - r^2", "2 x0 r", C03)
    assert representation_from_slice(to_full(F), (0, 1, 0)) == F
    with pytest.raises(NotUnit):
        representation_from_slice(to_full(F), (1, 1, 0))


def test_gsm_not_monogenic():
    # (x0, r) solves the CR system but its full form is not monogenic for q > 1
    F = pair("x0", "r", C03)
    assert is_gsr(F)
    assert dirac_full(to_full(F)) == Fl("-2", C03)


# -- properties on random slice pairs ---------------------------------------

def _cells():
    return [AlgebraContext(p, q) for p, q in GRID]


@pytest.mark.parametrize("ctx", _cells(), ids=str)
def test_vekua_iff_monogenic(ctx):
    @given(slice_pairs(ctx, max_deg=3))
    def check(F):
        mono = dirac_full(to_full(F)).is_zero()
        assert zero_pair(vekua_residual(F)) == mono
    check()


@pytest.mark.parametrize("ctx", _cells(), ids=str)
def test_gamma_relation(ctx):
    @given(slice_pairs(ctx, max_deg=3))
    def check(F):
        expect = to_full(SlicePair(S("0", ctx), F.F2.scale(ctx.q - 1)))
        assert gamma_apply(to_full(F)) == expect
    check()


@pytest.mark.parametrize("ctx", _cells(), ids=str)
def test_dirac_slice_is_full_dirac(ctx):
    @given(slice_pairs(ctx, max_deg=3))
    def check(F):
        assert to_full(dirac_slice(F)) == dirac_full(to_full(F))
    check()


@pytest.mark.parametrize("ctx", _cells(), ids=str)
def test_representation_round_trip(ctx):
    etas = [(1,), (-1,)] + ([(Fraction(3, 5), Fraction(4, 5))] if ctx.q >= 2 else [])

    @given(slice_pairs(ctx, max_deg=3))
    def check(F):
        for eta in etas:
            assert representation_from_slice(to_full(F), eta) == F
    check()


@pytest.mark.parametrize("ctx", _cells(), ids=str)
def test_laplacian_power_matches_full(ctx):
    @given(base_polys(ctx, max_deg=5, max_terms=3))
    def check(f0):
        F = ck(f0)
        full = to_full(F)
        for k in (1, 2, 3):
            full = laplacian(full)
            assert to_full(laplacian_power_slice(F, k)) == full
    check()


def _dirac_by_hand(f, sign):
    out = f.diff(0)
    for i in range(1, f.ctx.n + 1):
        out = out + f.diff(i).left_blade(1 << (i - 1), sign)
    return out


@given(polynomials(C13, VarKind.FULL, max_deg=3))
def test_dbar_d_is_laplacian(f):
    assert _dirac_by_hand(dirac_full(f), -1) == laplacian(f)
    assert dirac_full(f) == _dirac_by_hand(f, 1)


@pytest.mark.parametrize("ctx", _cells(), ids=str)
def test_inter_relation(ctx):
    if ctx.q % 2 == 0:
        return

    @given(base_polys(ctx, max_deg=5, max_terms=3))
    def check(f0):
        its = radial_iterates(ck(f0), (ctx.q - 1) // 2)
        for k, (A, Bk) in enumerate(its):
            assert mul_by_r(dirac_xp(A) - dr(Bk)) == Bk.scale(2 * k)
            assert (dirac_xp_conj(Bk) + dr(A)).is_zero()
    check()


@pytest.mark.parametrize("ctx", [c for c in _cells() if c.q % 2], ids=str)
def test_tau_output_satisfies_vekua(ctx):
    @given(base_polys(ctx, max_deg=5, max_terms=3))
    def check(f0):
        assert zero_pair(vekua_residual(tau_q(ck(f0))))
    check()
