"""Dense arithmetic in the real Clifford algebra R_{p+q}.

Generators e_1..e_n anticommute and square to -1.  A basis blade is stored
as an n-bit mask (bit i set means e_{i+1} is a factor, mask 0 is the scalar
unit).  A :class:`Multivector` keeps all 2^n coefficients; the scalar kind is
``Fraction`` on exact paths and ``float`` on numeric ones.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Tuple

from .errors import ContextMismatch, NotParavector, ZeroDivision

MAX_GENERATORS = 12

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class AlgebraContext:
    """The fixed splitting R^{p+1} + R^q of R^{p+q+1}."""

    p: int
    q: int

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 0:
            raise ValueError(f"p must be a nonnegative integer, got {self.p!r}")
        if not isinstance(self.q, int) or self.q < 1:
            raise ValueError(f"q must be a positive integer, got {self.q!r}")
        if self.p + self.q > MAX_GENERATORS:
            raise ValueError(
                f"p+q = {self.p + self.q} exceeds the cap of {MAX_GENERATORS} generators")

    @property
    def n(self) -> int:
        return self.p + self.q

    @property
    def dim(self) -> int:
        return 1 << self.n

    @property
    def base_indices(self) -> range:
        """Coordinate indices 0..p of the x_p part."""
        return range(0, self.p + 1)

    @property
    def sphere_indices(self) -> range:
        """Coordinate indices p+1..p+q of the vector part x_q."""
        return range(self.p + 1, self.p + self.q + 1)


# ---------------------------------------------------------------------------
# blades

def blade_grade(mask: int) -> int:
    return bin(mask).count("1")


def reorder_sign(a: int, b: int) -> int:
    """Sign picked up when moving the generators of ``b`` past those of ``a``."""
    a >>= 1
    swaps = 0
    while a:
        swaps += bin(a & b).count("1")
        a >>= 1
    return -1 if swaps & 1 else 1


def blade_sign(a: int, b: int) -> int:
    s = reorder_sign(a, b)
    # every shared generator contracts as e_i e_i = -1
    if blade_grade(a & b) & 1:
        s = -s
    return s


def blade_product(a: int, b: int, ctx: AlgebraContext) -> Tuple[int, int]:
    """Return ``(sign, mask)`` with e_a e_b = sign * e_mask."""
    limit = ctx.dim
    if not (0 <= a < limit and 0 <= b < limit):
        raise ValueError(f"blade mask out of range for n={ctx.n}")
    return blade_sign(a, b), a ^ b


@lru_cache(maxsize=None)
def _sign_table(n: int) -> Optional[Tuple[Tuple[int, ...], ...]]:
    if n > 8:
        return None
    dim = 1 << n
    return tuple(tuple(blade_sign(a, b) for b in range(dim)) for a in range(dim))


def blade_name(mask: int) -> str:
    parts = []
    i = 0
    while mask:
        if mask & 1:
            parts.append(f"e{i + 1}")
        mask >>= 1
        i += 1
    return "".join(parts)


_BLADE_RE = re.compile(r"e(\d+)")


def parse_blade_name(name: str, ctx: AlgebraContext) -> Tuple[int, int]:
    """Parse ``"e1e3"`` style names into ``(sign, mask)``.

    Indices may appear in any order; repeated or unsorted generators are
    multiplied out so the returned sign accounts for them.
    """
    name = name.strip()
    if name in ("", "1", "e0"):
        return 1, 0
    pos = 0
    sign, mask = 1, 0
    for m in _BLADE_RE.finditer(name):
        if m.start() != pos:
            raise ValueError(f"malformed blade name {name!r}")
        pos = m.end()
        idx = int(m.group(1))
        if idx == 0:
            continue
        if idx > ctx.n:
            raise ValueError(f"unknown blade e{idx} for n={ctx.n}")
        s, mask = blade_product(mask, 1 << (idx - 1), ctx)
        sign *= s
    if pos != len(name):
        raise ValueError(f"malformed blade name {name!r}")
    return sign, mask


# ---------------------------------------------------------------------------
# multivectors

class Multivector:
    """An element of R_{p+q} with dense coefficient storage."""

    __slots__ = ("ctx", "coeffs", "_nz")

    def __init__(self, ctx: AlgebraContext, coeffs: Sequence):
        coeffs = tuple(coeffs)
        if len(coeffs) != ctx.dim:
            raise ValueError(f"expected {ctx.dim} coefficients, got {len(coeffs)}")
        self.ctx = ctx
        self.coeffs = coeffs
        self._nz = None

    # -- construction -----------------------------------------------------
    @classmethod
    def zero(cls, ctx: AlgebraContext, exact: bool = True) -> "Multivector":
        return cls(ctx, (ZERO if exact else 0.0,) * ctx.dim)

    @classmethod
    def from_dict(cls, ctx: AlgebraContext, items: Mapping[int, object],
                  exact: bool = True) -> "Multivector":
        conv = Fraction if exact else float
        out = [ZERO if exact else 0.0] * ctx.dim
        for mask, value in items.items():
            if not 0 <= mask < ctx.dim:
                raise ValueError(f"blade mask {mask} out of range for n={ctx.n}")
            out[mask] += conv(value)
        return cls(ctx, out)

    @classmethod
    def scalar(cls, ctx: AlgebraContext, value=1) -> "Multivector":
        exact = not isinstance(value, float)
        return cls.from_dict(ctx, {0: value}, exact=exact)

    @classmethod
    def blade(cls, ctx: AlgebraContext, mask: int, value=1) -> "Multivector":
        exact = not isinstance(value, float)
        return cls.from_dict(ctx, {mask: value}, exact=exact)

    @classmethod
    def basis(cls, ctx: AlgebraContext, i: int) -> "Multivector":
        """e_i with the convention e_0 = 1."""
        if not 0 <= i <= ctx.n:
            raise ValueError(f"generator index {i} out of range for n={ctx.n}")
        return cls.blade(ctx, 0 if i == 0 else 1 << (i - 1))

    @classmethod
    def paravector(cls, ctx: AlgebraContext, coords: Sequence) -> "Multivector":
        """x_0 + sum_i x_i e_i from the n+1 coordinates."""
        if len(coords) != ctx.n + 1:
            raise ValueError(f"expected {ctx.n + 1} coordinates")
        exact = not any(isinstance(c, float) for c in coords)
        items = {0: coords[0]}
        for i, c in enumerate(coords[1:], start=1):
            items[1 << (i - 1)] = c
        return cls.from_dict(ctx, items, exact=exact)

    # -- inspection -------------------------------------------------------
    def nonzero(self) -> Tuple[Tuple[int, object], ...]:
        if self._nz is None:
            self._nz = tuple((i, c) for i, c in enumerate(self.coeffs) if c)
        return self._nz

    def __getitem__(self, mask: int):
        return self.coeffs[mask]

    @property
    def exact(self) -> bool:
        # coefficient lists are homogeneous, so the scalar slot decides
        return not isinstance(self.coeffs[0], float)

    def is_zero(self) -> bool:
        return not self.nonzero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_scalar(self) -> bool:
        return all(m == 0 for m, _ in self.nonzero())

    @property
    def scalar_part(self):
        return self.coeffs[0]

    def grade(self, k: int) -> "Multivector":
        z = ZERO if self.exact else 0.0
        return Multivector(self.ctx, (c if blade_grade(m) == k else z
                                      for m, c in enumerate(self.coeffs)))

    def grades(self) -> set:
        return {blade_grade(m) for m, _ in self.nonzero()}

    def is_paravector(self) -> bool:
        return self.grades() <= {0, 1}

    def norm(self) -> float:
        return math.sqrt(sum(float(c) ** 2 for c in self.coeffs))

    def max_abs(self) -> float:
        return max((abs(float(c)) for c in self.coeffs), default=0.0)

    def to_float(self) -> "Multivector":
        return Multivector(self.ctx, (float(c) for c in self.coeffs))

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "Multivector"):
        if other.ctx != self.ctx:
            raise ContextMismatch(f"algebra contexts differ: {self.ctx} vs {other.ctx}")

    def __add__(self, other):
        if isinstance(other, Multivector):
            self._check(other)
            if not self.exact and other.exact:
                other = other.to_float()
            out = list(self.coeffs if other.exact or not self.exact else self.to_float().coeffs)
            for i, c in other.nonzero():
                out[i] += c
            return Multivector(self.ctx, out)
        if isinstance(other, (int, Fraction, float)):
            return self + Multivector.scalar(self.ctx, other)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if isinstance(other, Multivector):
            return self + (-other)
        if isinstance(other, (int, Fraction, float)):
            return self - Multivector.scalar(self.ctx, other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s) -> "Multivector":
        out = list(self.coeffs)
        for i, c in self.nonzero():
            out[i] = c * s
        if isinstance(s, float) and self.exact:
            out = [float(c) for c in out]
        return Multivector(self.ctx, out)

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return mv_mul(self, other)
        if isinstance(other, (int, Fraction, float)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, float)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1, other) if isinstance(other, int) else 1 / other)
        if isinstance(other, float):
            return self.scale(1.0 / other)
        return NotImplemented

    def conjugate(self) -> "Multivector":
        return clifford_conjugate(self)

    def inverse(self) -> "Multivector":
        return paravector_inverse(self)

    # -- comparison / display --------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Multivector):
            return self.ctx == other.ctx and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, float)):
            return self.is_scalar() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.coeffs))

    def __repr__(self):
        if self.is_zero():
            return "Multivector(0)"
        parts = []
        for m, c in self.nonzero():
            name = blade_name(m)
            parts.append(f"{c}" if not name else f"{c}*{name}")
        return "Multivector(" + " + ".join(parts) + ")"


def mv_mul(a: Multivector, b: Multivector) -> Multivector:
    """Geometric product, the bilinear extension of :func:`blade_product`."""
    a._check(b)
    ctx = a.ctx
    exact = a.exact and b.exact
    out = [ZERO if exact else 0.0] * ctx.dim
    table = _sign_table(ctx.n)
    bnz = b.nonzero()
    for i, x in a.nonzero():
        row = table[i] if table is not None else None
        for j, y in bnz:
            s = row[j] if row is not None else blade_sign(i, j)
            if s > 0:
                out[i ^ j] += x * y
            else:
                out[i ^ j] -= x * y
    return Multivector(ctx, out)


def blade_left_mul(mask: int, m: Multivector, value=1) -> Multivector:
    """``value * e_mask * m`` without building a full product."""
    ctx = m.ctx
    out = [ZERO if m.exact else 0.0] * ctx.dim
    for j, y in m.nonzero():
        out[mask ^ j] += blade_sign(mask, j) * value * y
    return Multivector(ctx, out)


def blade_right_mul(m: Multivector, mask: int, value=1) -> Multivector:
    """``m * e_mask * value``."""
    ctx = m.ctx
    out = [ZERO if m.exact else 0.0] * ctx.dim
    for j, y in m.nonzero():
        out[mask ^ j] += blade_sign(j, mask) * value * y
    return Multivector(ctx, out)


def conjugation_sign(mask: int) -> int:
    k = blade_grade(mask)
    return -1 if (k * (k + 1) // 2) & 1 else 1


def clifford_conjugate(a: Multivector) -> Multivector:
    return Multivector(a.ctx, (c * conjugation_sign(m) if c else c
                               for m, c in enumerate(a.coeffs)))


def paravector_inverse(x: Multivector) -> Multivector:
    if not x.is_paravector():
        raise NotParavector("inverse is only defined here for paravectors")
    norm2 = sum(c * c for _, c in x.nonzero())
    if not norm2:
        raise ZeroDivision("zero paravector has no inverse")
    return clifford_conjugate(x) / norm2


def vector_from_components(ctx: AlgebraContext, comps: Iterable, start: int) -> Multivector:
    """sum_k comps[k] e_{start+k}; used for the unit direction eta in R^q."""
    items = {}
    for k, c in enumerate(comps):
        items[1 << (start + k - 1)] = c
    exact = not any(isinstance(c, float) for c in items.values())
    return Multivector.from_dict(ctx, items, exact=exact)


def split_point(v: Sequence[float], ctx: AlgebraContext):
    """Split a point of R^{p+q+1} into ``(x_p, r, omega)``.

    ``omega`` is ``None`` on R^{p+1} (r = 0), where it is not determined.
    """
    if len(v) != ctx.n + 1:
        raise ValueError(f"expected {ctx.n + 1} coordinates, got {len(v)}")
    v = [float(c) for c in v]
    xp = tuple(v[: ctx.p + 1])
    xq = v[ctx.p + 1:]
    r = math.hypot(*xq)
    if r == 0.0:
        return xp, 0.0, None
    return xp, r, tuple(c / r for c in xq)


def iter_blades(ctx: AlgebraContext, grade: Optional[int] = None) -> Iterator[int]:
    for m in range(ctx.dim):
        if grade is None or blade_grade(m) == grade:
            yield m
