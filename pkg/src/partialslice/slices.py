"""Slice pairs and the operator calculus on generalized partial-slice functions.

A :class:`SlicePair` ``(F1, F2)`` of slice-variable polynomials represents
``f(x_p + r*omega) = F1(x_p, r) + omega * F2(x_p, r)`` with F1 even and F2
odd in r.  Operators that carry a 1/r (the Vekua term, (1/r) d/dr and
d/dr (1/r)) are realised by exact division by r; parity guarantees the
division succeeds, so no limits are ever taken.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence, Tuple

from .algebra import AlgebraContext, Multivector, vector_from_components
from .errors import (EvenQ, NotGSR, NotUnit, ParityViolation, VariableMismatch)
from .poly import (CliffordPolynomial, VarKind, divide_by_r, is_even_in_r,
                   is_odd_in_r, mul_by_r, poly_diff, r_square_substitute,
                   slice_at_r0, vector_part)


@dataclass(frozen=True)
class SlicePair:
    F1: CliffordPolynomial
    F2: CliffordPolynomial

    def __post_init__(self):
        for F in (self.F1, self.F2):
            if F.kind is not VarKind.SLICE:
                raise VariableMismatch("slice pair components must use slice variables (x_p, r)")
        if self.F1.ctx != self.F2.ctx:
            raise VariableMismatch("slice pair components live in different algebras")

    @classmethod
    def zero(cls, ctx: AlgebraContext) -> "SlicePair":
        z = CliffordPolynomial.zero(ctx, VarKind.SLICE)
        return cls(z, z)

    @property
    def ctx(self) -> AlgebraContext:
        return self.F1.ctx

    def is_zero(self) -> bool:
        return self.F1.is_zero() and self.F2.is_zero()

    def __add__(self, other: "SlicePair") -> "SlicePair":
        return SlicePair(self.F1 + other.F1, self.F2 + other.F2)

    def __sub__(self, other: "SlicePair") -> "SlicePair":
        return SlicePair(self.F1 - other.F1, self.F2 - other.F2)

    def scale(self, s) -> "SlicePair":
        return SlicePair(self.F1.scale(s), self.F2.scale(s))

    def __iter__(self):
        yield self.F1
        yield self.F2


@dataclass
class ParityReport:
    ok: bool
    violations: List[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def validate_slice_pair(F: SlicePair) -> ParityReport:
    bad = []
    for e in F.F1.terms:
        if e[-1] % 2:
            bad.append(f"F1 has odd r-power term {e}")
    for e in F.F2.terms:
        if e[-1] % 2 == 0:
            bad.append(f"F2 has even r-power term {e}")
    return ParityReport(not bad, bad)


def require_valid(F: SlicePair):
    report = validate_slice_pair(F)
    if not report.ok:
        raise ParityViolation("; ".join(report.violations))


# ---------------------------------------------------------------------------
# Dirac-type operators (left action on coefficients)

def _blade_of(i: int) -> int:
    return 0 if i == 0 else 1 << (i - 1)


def _dirac(f: CliffordPolynomial, indices, signs=None) -> CliffordPolynomial:
    out = CliffordPolynomial.zero(f.ctx, f.kind)
    for i in indices:
        d = poly_diff(f, i)
        if d.is_zero():
            continue
        s = 1 if signs is None else signs(i)
        out = out + (d.scale(s) if i == 0 else d.left_blade(_blade_of(i), s))
    return out


def dirac_xp(f: CliffordPolynomial) -> CliffordPolynomial:
    """sum_{i=0}^{p} e_i d/dx_i (any variable set)."""
    return _dirac(f, f.ctx.base_indices)


def dirac_xp_conj(f: CliffordPolynomial) -> CliffordPolynomial:
    """d/dx_0 - sum_{i=1}^{p} e_i d/dx_i."""
    return _dirac(f, f.ctx.base_indices, lambda i: 1 if i == 0 else -1)


def _require_full(f: CliffordPolynomial, what: str):
    if f.kind is not VarKind.FULL:
        raise VariableMismatch(f"{what} needs full variables x0..x_(p+q), got {f.kind.value}")


def dirac_xq(f: CliffordPolynomial) -> CliffordPolynomial:
    _require_full(f, "dirac_xq")
    return _dirac(f, f.ctx.sphere_indices)


def dirac_full(f: CliffordPolynomial) -> CliffordPolynomial:
    _require_full(f, "dirac_full")
    return _dirac(f, range(f.ctx.n + 1))


def laplacian(f: CliffordPolynomial, indices=None) -> CliffordPolynomial:
    """Sum of pure second derivatives; defaults to every variable of ``f``."""
    if indices is None:
        indices = range(f.arity)
    out = CliffordPolynomial.zero(f.ctx, f.kind)
    for i in indices:
        out = out + poly_diff(poly_diff(f, i), i)
    return out


def laplacian_xp(f: CliffordPolynomial) -> CliffordPolynomial:
    return laplacian(f, f.ctx.base_indices)


def dr(f: CliffordPolynomial) -> CliffordPolynomial:
    return poly_diff(f, "r")


# ---------------------------------------------------------------------------
# residual systems

def cr_residual(F: SlicePair) -> Tuple[CliffordPolynomial, CliffordPolynomial]:
    """Generalized Cauchy-Riemann residuals; both vanish iff F is GSR."""
    P1 = dirac_xp(F.F1) - dr(F.F2)
    P2 = dirac_xp_conj(F.F2) + dr(F.F1)
    return P1, P2


def is_gsr(F: SlicePair) -> bool:
    P1, P2 = cr_residual(F)
    return P1.is_zero() and P2.is_zero()


def vekua_residual(F: SlicePair) -> Tuple[CliffordPolynomial, CliffordPolynomial]:
    """Vekua-type residuals with the 1/r cleared; zero iff f is monogenic."""
    ctx = F.ctx
    P1 = mul_by_r(dirac_xp(F.F1) - dr(F.F2)) - F.F2.scale(ctx.q - 1)
    P2 = dirac_xp_conj(F.F2) + dr(F.F1)
    return P1, P2


def dirac_slice(F: SlicePair) -> SlicePair:
    """Slice form of D_x f: (D F1 - dF2/dr + (1-q) F2/r,  conj(D) F2 + dF1/dr)."""
    require_valid(F)
    q = F.ctx.q
    first = dirac_xp(F.F1) - dr(F.F2)
    if q != 1:
        first = first + divide_by_r(F.F2).scale(1 - q)
    return SlicePair(first, dirac_xp_conj(F.F2) + dr(F.F1))


def dw_slice(F: SlicePair) -> SlicePair:
    """Slice form of D_omega f = (D_{x_p} + omega d/dr) f."""
    require_valid(F)
    P1, P2 = cr_residual(F)
    out = SlicePair(P1, P2)
    require_valid(out)
    return out


# ---------------------------------------------------------------------------
# radial operators and the Laplacian powers

def r_inv_dr(g: CliffordPolynomial) -> CliffordPolynomial:
    """(1/r) d/dr on a polynomial even in r."""
    if not is_even_in_r(g):
        raise ParityViolation("(1/r) d/dr needs an input even in r")
    return divide_by_r(dr(g))


def dr_rinv(h: CliffordPolynomial) -> CliffordPolynomial:
    """d/dr (1/r) on a polynomial odd in r."""
    if not is_odd_in_r(h):
        raise ParityViolation("d/dr (1/r) needs an input odd in r")
    return dr(divide_by_r(h))


def double_factorial(m: int) -> int:
    """m!! with (-1)!! = 0!! = 1."""
    if m < -1:
        raise ValueError("double factorial defined here for m >= -1")
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


def c_q(q: int, k: int) -> int:
    """(q-1)(q-3)...(q-2k+1); the empty product (k = 0) is 1."""
    out = 1
    for j in range(1, k + 1):
        out *= q - 2 * j + 1
    return out


def radial_iterates(F: SlicePair, k: int) -> List[SlicePair]:
    """[(A_0, B_0), ..., (A_k, B_k)] with A_j = ((1/r)d_r)^j F1, B_j = (d_r (1/r))^j F2."""
    require_valid(F)
    out = [F]
    A, B = F.F1, F.F2
    for _ in range(k):
        A, B = r_inv_dr(A), dr_rinv(B)
        out.append(SlicePair(A, B))
    return out


def _require_gsr(F: SlicePair):
    require_valid(F)
    if not is_gsr(F):
        raise NotGSR("slice pair does not satisfy the generalized Cauchy-Riemann system")


def laplacian_power_slice(F: SlicePair, k: int) -> SlicePair:
    """Slice form of the k-th power of the full Laplacian of a GSR function."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    _require_gsr(F)
    Ak = radial_iterates(F, k)[-1]
    return Ak.scale(c_q(F.ctx.q, k))


def tau_q(F: SlicePair, check: bool = True) -> SlicePair:
    """Fueter-Sce map Delta^{(q-1)/2} / (q-1)!! in slice form (q odd).

    With ``check=False`` the GSR test is skipped and only the radial
    iterates are computed; the result is then not guaranteed monogenic.
    """
    q = F.ctx.q
    if q % 2 == 0:
        raise EvenQ(q)
    if check:
        _require_gsr(F)
    return radial_iterates(F, (q - 1) // 2)[-1]


# ---------------------------------------------------------------------------
# slice <-> full

def to_full(F: SlicePair) -> CliffordPolynomial:
    """G1(x_p, |x_q|^2) + x_q * G2(x_p, |x_q|^2) with F1 = G1, F2 = r G2."""
    require_valid(F)
    G1 = r_square_substitute(F.F1)
    G2 = r_square_substitute(divide_by_r(F.F2))
    return G1 + vector_part(F.ctx) * G2


def restrict_to_real(F: SlicePair) -> CliffordPolynomial:
    """Restriction to R^{p+1}: F1 at r = 0, as a polynomial in x0..x_p."""
    return slice_at_r0(F.F1)


def gamma_apply(f: CliffordPolynomial) -> CliffordPolynomial:
    """Spherical Dirac operator -sum_{p<i<j} e_i e_j (x_i d_j - x_j d_i)."""
    _require_full(f, "gamma_apply")
    ctx = f.ctx
    out = CliffordPolynomial.zero(ctx, VarKind.FULL)
    idx = list(ctx.sphere_indices)
    xs = {i: CliffordPolynomial.variable(ctx, VarKind.FULL, f"x{i}") for i in idx}
    for a, i in enumerate(idx):
        for j in idx[a + 1:]:
            L = xs[i] * poly_diff(f, j) - xs[j] * poly_diff(f, i)
            if L.is_zero():
                continue
            mask = _blade_of(i) | _blade_of(j)
            # e_i e_j = +e_{ij} for i < j
            out = out + L.left_blade(mask, -1)
    return out


# ---------------------------------------------------------------------------
# unit directions and the representation formula

def unit_direction(ctx: AlgebraContext, eta: Sequence) -> Tuple[Fraction, ...]:
    """Validate an exact unit vector of R^q; shorter inputs are zero-padded."""
    eta = tuple(Fraction(x) for x in eta)
    if len(eta) > ctx.q:
        raise NotUnit(f"direction has {len(eta)} components but q = {ctx.q}")
    eta = eta + (Fraction(0),) * (ctx.q - len(eta))
    if sum(x * x for x in eta) != 1:
        raise NotUnit(f"direction {tuple(map(str, eta))} is not a unit vector")
    return eta


def axis_direction(ctx: AlgebraContext, k: int, sign: int = 1) -> Tuple[Fraction, ...]:
    """The unit vector along e_{p+1+k} (k = 0..q-1)."""
    eta = [Fraction(0)] * ctx.q
    eta[k] = Fraction(sign)
    return tuple(eta)


def direction_vector(ctx: AlgebraContext, eta: Sequence) -> Multivector:
    """sum_i eta_i e_{p+i} as a Clifford vector."""
    return vector_from_components(ctx, unit_direction(ctx, eta), ctx.p + 1)


def substitute_direction(f: CliffordPolynomial, eta: Sequence[Fraction],
                         sign: int = 1) -> CliffordPolynomial:
    """f(x_p + sign * r * eta) as a slice-variable polynomial."""
    _require_full(f, "substitute_direction")
    ctx = f.ctx
    p1 = ctx.p + 1
    out = {}
    for e, c in f.terms.items():
        factor = Fraction(1)
        for x, k in zip(eta, e[p1:]):
            if k:
                factor *= x ** k
        deg = sum(e[p1:])
        if sign < 0 and deg % 2:
            factor = -factor
        if not factor:
            continue
        key = e[:p1] + (deg,)
        term = c.scale(factor)
        out[key] = out[key] + term if key in out else term
    return CliffordPolynomial(ctx, VarKind.SLICE, out)


def representation_from_slice(f: CliffordPolynomial, eta: Sequence) -> SlicePair:
    """Recover (F1, F2) from the restriction of f to the slice through eta."""
    ctx = f.ctx
    eta = unit_direction(ctx, eta)
    plus = substitute_direction(f, eta, +1)
    minus = substitute_direction(f, eta, -1)
    half = Fraction(1, 2)
    F1 = (plus + minus).scale(half)
    F2 = (minus - plus).left_mul(direction_vector(ctx, eta)).scale(half)
    return SlicePair(F1, F2)
