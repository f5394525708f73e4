from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from partialslice.algebra import AlgebraContext, Multivector
from partialslice.parsing import parse_expression
from partialslice.poly import CliffordPolynomial, VarKind
from partialslice.slices import SlicePair

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

GRID = [(0, 1), (0, 3), (1, 3), (2, 3), (1, 5)]


def ctx_of(p, q):
    return AlgebraContext(p, q)


def S(text, ctx):
    return parse_expression(text, ctx, VarKind.SLICE)


def B(text, ctx):
    return parse_expression(text, ctx, VarKind.BASE)


def Fl(text, ctx):
    return parse_expression(text, ctx, VarKind.FULL)


def pair(f1, f2, ctx):
    return SlicePair(S(f1, ctx), S(f2, ctx))


# -- hypothesis strategies -------------------------------------------------

rationals = st.builds(Fraction, st.integers(-9, 9), st.sampled_from([1, 2, 3]))


def multivectors(ctx, max_terms=4):
    return st.dictionaries(st.integers(0, ctx.dim - 1), rationals, max_size=max_terms) \
        .map(lambda d: Multivector.from_dict(ctx, d))


def paravectors(ctx):
    return st.lists(rationals, min_size=ctx.n + 1, max_size=ctx.n + 1) \
        .filter(lambda c: any(c)).map(lambda c: Multivector.paravector(ctx, c))


def polynomials(ctx, kind, max_deg=3, max_terms=4, scalar=False):
    arity = len(CliffordPolynomial.zero(ctx, kind).names)
    exps = st.lists(st.integers(0, max_deg), min_size=arity, max_size=arity).map(tuple)
    coeff = rationals.map(lambda c: Multivector.scalar(ctx, c)) if scalar else \
        multivectors(ctx, 2)
    return st.lists(st.tuples(exps, coeff), max_size=max_terms).map(
        lambda items: sum((CliffordPolynomial.monomial(ctx, kind, e, c) for e, c in items),
                          CliffordPolynomial.zero(ctx, kind)))


@pytest.fixture(params=GRID, ids=lambda c: f"p{c[0]}q{c[1]}")
def ctx(request):
    return AlgebraContext(*request.param)


def slice_pairs(ctx, max_deg=4, max_terms=4):
    """Valid slice pairs: even part of one random polynomial, odd part of another."""
    from partialslice.poly import parity_split_in_r
    polys = polynomials(ctx, VarKind.SLICE, max_deg, max_terms)
    return st.tuples(polys, polys).map(
        lambda ab: SlicePair(parity_split_in_r(ab[0])[0], parity_split_in_r(ab[1])[1]))


def base_polys(ctx, max_deg=4, max_terms=4, scalar=False):
    return polynomials(ctx, VarKind.BASE, max_deg, max_terms, scalar=scalar)


# -- acceptance summary ------------------------------------------------------

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
