"""Polynomials in commuting real variables with Clifford coefficients.

Three variable sets are used:

* ``FULL``  -- x0..x_{p+q}, coordinates of R^{p+q+1};
* ``SLICE`` -- x0..x_p, r, the half-plane coordinates (x_p, r);
* ``BASE``  -- x0..x_p, functions on R^{p+1} (restriction data).

Coefficients sit to the left of the monomials.  Every operator in the
package acts on coefficients by left Clifford multiplication unless a
function says otherwise.
"""
from __future__ import annotations

import enum
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterable, Mapping, Sequence, Tuple, Union

import numpy as np

from .algebra import AlgebraContext, Multivector, blade_left_mul, blade_right_mul, mv_mul
from .errors import ContextMismatch, NotDivisible, OddPowerPresent, VariableMismatch

Exps = Tuple[int, ...]
Scalar = Union[int, Fraction]


class VarKind(enum.Enum):
    FULL = "full"
    SLICE = "slice"
    BASE = "base"


def var_names(kind: VarKind, ctx: AlgebraContext) -> Tuple[str, ...]:
    if kind is VarKind.FULL:
        return tuple(f"x{i}" for i in range(ctx.n + 1))
    base = tuple(f"x{i}" for i in range(ctx.p + 1))
    if kind is VarKind.SLICE:
        return base + ("r",)
    return base


class CliffordPolynomial:
    """Immutable polynomial ``sum_k c_k x^k`` with Multivector ``c_k``."""

    __slots__ = ("ctx", "kind", "terms", "_hash")

    def __init__(self, ctx: AlgebraContext, kind: VarKind,
                 terms: Mapping[Exps, Multivector] = ()):
        self.ctx = ctx
        self.kind = kind
        arity = len(var_names(kind, ctx))
        clean = {}
        for exps, c in dict(terms).items():
            exps = tuple(exps)
            if len(exps) != arity:
                raise VariableMismatch(f"exponent vector {exps} does not match {kind.value} arity {arity}")
            if c.ctx != ctx:
                raise ContextMismatch("coefficient from a different algebra")
            if c:
                clean[exps] = c
        self.terms: Dict[Exps, Multivector] = clean
        self._hash = None

    # -- construction -----------------------------------------------------
    @classmethod
    def zero(cls, ctx, kind):
        return cls(ctx, kind, {})

    @classmethod
    def constant(cls, ctx, kind, value=1):
        if not isinstance(value, Multivector):
            value = Multivector.scalar(ctx, value)
        return cls(ctx, kind, {(0,) * len(var_names(kind, ctx)): value})

    @classmethod
    def monomial(cls, ctx, kind, exps: Mapping[str, int] | Sequence[int], coeff=1):
        names = var_names(kind, ctx)
        if isinstance(exps, Mapping):
            vec = [0] * len(names)
            for name, e in exps.items():
                try:
                    vec[names.index(name)] += int(e)
                except ValueError:
                    raise VariableMismatch(f"unknown variable {name!r} for {kind.value} variables") from None
            exps = vec
        if not isinstance(coeff, Multivector):
            coeff = Multivector.scalar(ctx, coeff)
        return cls(ctx, kind, {tuple(exps): coeff})

    @classmethod
    def variable(cls, ctx, kind, name: str, coeff=1):
        return cls.monomial(ctx, kind, {name: 1}, coeff)

    # -- inspection -------------------------------------------------------
    @property
    def names(self) -> Tuple[str, ...]:
        return var_names(self.kind, self.ctx)

    @property
    def arity(self) -> int:
        return len(self.names)

    def index_of(self, var: Union[str, int]) -> int:
        if isinstance(var, int):
            if not 0 <= var < self.arity:
                raise VariableMismatch(f"variable index {var} out of range")
            return var
        try:
            return self.names.index(var)
        except ValueError:
            raise VariableMismatch(f"unknown variable {var!r} for {self.kind.value} variables") from None

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, var) -> int:
        i = self.index_of(var)
        return max((e[i] for e in self.terms), default=-1)

    def is_scalar_valued(self) -> bool:
        return all(c.is_scalar() for c in self.terms.values())

    def coefficient(self, exps: Exps) -> Multivector:
        return self.terms.get(tuple(exps), Multivector.zero(self.ctx))

    def l1_norm(self) -> float:
        """Sum of |coefficient components|; bounds |f| on the unit box."""
        return float(sum(abs(c) for m in self.terms.values() for _, c in m.nonzero()))

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "CliffordPolynomial"):
        if other.ctx != self.ctx:
            raise ContextMismatch(f"algebra contexts differ: {self.ctx} vs {other.ctx}")
        if other.kind is not self.kind:
            raise VariableMismatch(f"variable sets differ: {self.kind.value} vs {other.kind.value}")

    def _new(self, terms) -> "CliffordPolynomial":
        return CliffordPolynomial(self.ctx, self.kind, terms)

    def __add__(self, other):
        if not isinstance(other, CliffordPolynomial):
            if isinstance(other, (int, Fraction, Multivector)):
                other = CliffordPolynomial.constant(self.ctx, self.kind, other)
            else:
                return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Multivector)):
            other = CliffordPolynomial.constant(self.ctx, self.kind, other)
        if not isinstance(other, CliffordPolynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s) -> "CliffordPolynomial":
        if not s:
            return CliffordPolynomial.zero(self.ctx, self.kind)
        return self._new({e: c.scale(s) for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, CliffordPolynomial):
            return poly_mul(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, Multivector):
            return self.right_mul(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, Multivector):
            return self.left_mul(other)
        return NotImplemented

    def __truediv__(self, s):
        if isinstance(s, (int, Fraction)):
            return self.scale(Fraction(1) / s)
        return NotImplemented

    def left_mul(self, m: Multivector) -> "CliffordPolynomial":
        return self._new({e: mv_mul(m, c) for e, c in self.terms.items()})

    def right_mul(self, m: Multivector) -> "CliffordPolynomial":
        return self._new({e: mv_mul(c, m) for e, c in self.terms.items()})

    def left_blade(self, mask: int, value=1) -> "CliffordPolynomial":
        """``value * e_mask * self``, the hot path of every Dirac-type operator."""
        return self._new({e: blade_left_mul(mask, c, value) for e, c in self.terms.items()})

    def right_blade(self, mask: int, value=1) -> "CliffordPolynomial":
        return self._new({e: blade_right_mul(c, mask, value) for e, c in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        out = CliffordPolynomial.constant(self.ctx, self.kind, 1)
        for _ in range(k):
            out = out * self
        return out

    def diff(self, var) -> "CliffordPolynomial":
        return poly_diff(self, var)

    def map_terms(self, fn: Callable[[Exps, Multivector], Tuple[Exps, Multivector]]):
        out: Dict[Exps, Multivector] = {}
        for e, c in self.terms.items():
            e2, c2 = fn(e, c)
            out[e2] = out[e2] + c2 if e2 in out else c2
        return self._new(out)

    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (list, tuple, np.ndarray)):
            point = point[0]
        return poly_eval(self, point)

    # -- comparison / display --------------------------------------------
    def __eq__(self, other):
        if isinstance(other, CliffordPolynomial):
            return (self.ctx == other.ctx and self.kind is other.kind
                    and self.terms == other.terms)
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return self.is_zero()
            return self == CliffordPolynomial.constant(self.ctx, self.kind, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, self.kind, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        from .parsing import format_polynomial
        return f"CliffordPolynomial[{self.kind.value}]({format_polynomial(self)!r})"

    def __str__(self):
        from .parsing import format_polynomial
        return format_polynomial(self)


# ---------------------------------------------------------------------------
# module-level operations

def poly_add(a: CliffordPolynomial, b: CliffordPolynomial) -> CliffordPolynomial:
    return a + b


def poly_mul(a: CliffordPolynomial, b: CliffordPolynomial) -> CliffordPolynomial:
    a._check(b)
    out: Dict[Exps, Multivector] = {}
    for ea, ca in a.terms.items():
        for eb, cb in b.terms.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            c = mv_mul(ca, cb)
            out[e] = out[e] + c if e in out else c
    return a._new(out)


def poly_diff(f: CliffordPolynomial, var) -> CliffordPolynomial:
    i = f.index_of(var)
    out = {}
    for e, c in f.terms.items():
        k = e[i]
        if k:
            out[e[:i] + (k - 1,) + e[i + 1:]] = c.scale(k)
    return f._new(out)


def _require_slice(f: CliffordPolynomial, what: str):
    if f.kind is not VarKind.SLICE:
        raise VariableMismatch(f"{what} needs slice variables (x_p, r), got {f.kind.value}")


def mul_by_r(f: CliffordPolynomial, power: int = 1) -> CliffordPolynomial:
    _require_slice(f, "mul_by_r")
    return f._new({e[:-1] + (e[-1] + power,): c for e, c in f.terms.items()})


def divide_by_r(f: CliffordPolynomial) -> CliffordPolynomial:
    """Exact quotient f / r; raises :class:`NotDivisible` otherwise."""
    _require_slice(f, "divide_by_r")
    out = {}
    for e, c in f.terms.items():
        if e[-1] == 0:
            raise NotDivisible(f"term with exponents {e} has no factor r")
        out[e[:-1] + (e[-1] - 1,)] = c
    return f._new(out)


def parity_split_in_r(f: CliffordPolynomial):
    """Split ``f`` into its even and odd parts in r."""
    _require_slice(f, "parity_split_in_r")
    even = {e: c for e, c in f.terms.items() if e[-1] % 2 == 0}
    odd = {e: c for e, c in f.terms.items() if e[-1] % 2 == 1}
    return f._new(even), f._new(odd)


def is_even_in_r(f: CliffordPolynomial) -> bool:
    return all(e[-1] % 2 == 0 for e in f.terms)


def is_odd_in_r(f: CliffordPolynomial) -> bool:
    return all(e[-1] % 2 == 1 for e in f.terms)


@lru_cache(maxsize=None)
def radial_square(ctx: AlgebraContext, k: int = 1) -> CliffordPolynomial:
    """(x_{p+1}^2 + ... + x_{p+q}^2)^k in full variables."""
    if k == 0:
        return CliffordPolynomial.constant(ctx, VarKind.FULL, 1)
    if k == 1:
        terms = {}
        for i in ctx.sphere_indices:
            e = [0] * (ctx.n + 1)
            e[i] = 2
            terms[tuple(e)] = Multivector.scalar(ctx, 1)
        return CliffordPolynomial(ctx, VarKind.FULL, terms)
    return radial_square(ctx, k - 1) * radial_square(ctx, 1)


def vector_part(ctx: AlgebraContext) -> CliffordPolynomial:
    """x_q = sum_{i>p} x_i e_i as a full-variable polynomial."""
    terms = {}
    for i in ctx.sphere_indices:
        e = [0] * (ctx.n + 1)
        e[i] = 1
        terms[tuple(e)] = Multivector.basis(ctx, i)
    return CliffordPolynomial(ctx, VarKind.FULL, terms)


def r_square_substitute(g: CliffordPolynomial) -> CliffordPolynomial:
    """Slice polynomial even in r  ->  full polynomial with r^2 = |x_q|^2."""
    _require_slice(g, "r_square_substitute")
    ctx = g.ctx
    out = CliffordPolynomial.zero(ctx, VarKind.FULL)
    by_power: Dict[int, Dict[Exps, Multivector]] = {}
    for e, c in g.terms.items():
        if e[-1] % 2:
            raise OddPowerPresent(f"term with exponents {e} is odd in r")
        full = e[:-1] + (0,) * ctx.q
        by_power.setdefault(e[-1] // 2, {})[full] = c
    for k, terms in sorted(by_power.items()):
        out = out + CliffordPolynomial(ctx, VarKind.FULL, terms) * radial_square(ctx, k)
    return out


def base_to(f: CliffordPolynomial, kind: VarKind) -> CliffordPolynomial:
    """Embed a polynomial in x0..x_p into the slice or full variable set."""
    if f.kind is kind:
        return f
    if f.kind is not VarKind.BASE:
        raise VariableMismatch(f"cannot embed {f.kind.value} polynomial into {kind.value}")
    pad = 1 if kind is VarKind.SLICE else f.ctx.q
    return CliffordPolynomial(f.ctx, kind, {e + (0,) * pad: c for e, c in f.terms.items()})


def slice_at_r0(f: CliffordPolynomial) -> CliffordPolynomial:
    """Set r = 0 and drop r from the variable set."""
    _require_slice(f, "slice_at_r0")
    return CliffordPolynomial(f.ctx, VarKind.BASE,
                              {e[:-1]: c for e, c in f.terms.items() if e[-1] == 0})


def as_base(f: CliffordPolynomial) -> CliffordPolynomial:
    """Reinterpret a slice/full polynomial that only uses x0..x_p."""
    if f.kind is VarKind.BASE:
        return f
    p1 = f.ctx.p + 1
    out = {}
    for e, c in f.terms.items():
        if any(e[p1:]):
            raise VariableMismatch("polynomial depends on variables beyond x0..x_p")
        out[e[:p1]] = c
    return CliffordPolynomial(f.ctx, VarKind.BASE, out)


def poly_eval(f: CliffordPolynomial, point: Sequence[float]) -> Multivector:
    """Evaluate at a point; rational coefficients become floats."""
    if len(point) != f.arity:
        raise VariableMismatch(f"point has {len(point)} coordinates, expected {f.arity}")
    pt = [float(x) for x in point]
    acc = [0.0] * f.ctx.dim
    for e, c in f.terms.items():
        w = 1.0
        for x, k in zip(pt, e):
            if k:
                w *= x ** k
        for m, v in c.nonzero():
            acc[m] += w * float(v)
    return Multivector(f.ctx, acc)


class ArrayEvaluator:
    """Vectorised float evaluation: points of shape (..., arity) -> (..., 2^n)."""

    def __init__(self, f: CliffordPolynomial):
        self.ctx = f.ctx
        self.arity = f.arity
        items = list(f.terms.items())
        self.exps = np.array([e for e, _ in items], dtype=np.int64).reshape(len(items), f.arity)
        self.coeffs = np.array([[float(x) for x in c.coeffs] for _, c in items],
                               dtype=float).reshape(len(items), f.ctx.dim)

    def __call__(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        if pts.shape[-1] != self.arity:
            raise VariableMismatch(f"points have {pts.shape[-1]} coordinates, expected {self.arity}")
        if len(self.exps) == 0:
            return np.zeros(pts.shape[:-1] + (self.ctx.dim,))
        mono = np.prod(pts[..., None, :] ** self.exps, axis=-1)
        return mono @ self.coeffs


def sum_polys(polys: Iterable[CliffordPolynomial], ctx: AlgebraContext, kind: VarKind):
    out = CliffordPolynomial.zero(ctx, kind)
    for f in polys:
        out = out + f
    return out
