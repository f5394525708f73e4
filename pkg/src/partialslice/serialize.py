"""JSON encodings of multivectors, polynomials and slice pairs.

* multivector: ``{"": "1/1", "e1e3": "-3/2"}`` (blade name -> rational string)
* polynomial:  ``[{"coeff": <multivector>, "exps": {"x0": 2, "r": 1}}, ...]``
* slice pair:  ``{"p": 1, "q": 3, "F1": <poly>, "F2": <poly>}``

Slice pairs also carry a human-readable ``"text"`` field that readers ignore.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Dict, List

from .algebra import AlgebraContext, Multivector, blade_name, parse_blade_name
from .parsing import format_polynomial
from .poly import CliffordPolynomial, VarKind
from .slices import SlicePair


def rational_str(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def multivector_to_json(m: Multivector) -> Dict[str, Any]:
    if m.exact:
        return {blade_name(mask): rational_str(c) for mask, c in m.nonzero()}
    return {blade_name(mask): float(c) for mask, c in m.nonzero()}


def multivector_from_json(obj: Dict[str, Any], ctx: AlgebraContext) -> Multivector:
    items: Dict[int, Fraction] = {}
    for name, value in obj.items():
        sign, mask = parse_blade_name(name, ctx)
        items[mask] = items.get(mask, Fraction(0)) + sign * Fraction(str(value))
    return Multivector.from_dict(ctx, items)


def poly_to_json(f: CliffordPolynomial) -> List[Dict[str, Any]]:
    out = []
    for exps in sorted(f.terms, key=lambda e: (-sum(e), tuple(-k for k in e))):
        out.append({
            "coeff": multivector_to_json(f.terms[exps]),
            "exps": {name: k for name, k in zip(f.names, exps) if k},
        })
    return out


def poly_from_json(obj: List[Dict[str, Any]], ctx: AlgebraContext,
                   kind: VarKind) -> CliffordPolynomial:
    out = CliffordPolynomial.zero(ctx, kind)
    for term in obj:
        coeff = multivector_from_json(term.get("coeff", {}), ctx)
        out = out + CliffordPolynomial.monomial(ctx, kind, term.get("exps", {}), coeff)
    return out


def slice_pair_to_json(F: SlicePair) -> Dict[str, Any]:
    return {
        "p": F.ctx.p,
        "q": F.ctx.q,
        "F1": poly_to_json(F.F1),
        "F2": poly_to_json(F.F2),
        "text": {"F1": format_polynomial(F.F1), "F2": format_polynomial(F.F2)},
    }


def slice_pair_from_json(obj: Dict[str, Any]) -> SlicePair:
    try:
        ctx = AlgebraContext(int(obj["p"]), int(obj["q"]))
        F1 = poly_from_json(obj["F1"], ctx, VarKind.SLICE)
        F2 = poly_from_json(obj["F2"], ctx, VarKind.SLICE)
    except KeyError as exc:
        raise ValueError(f"slice pair JSON is missing field {exc}") from None
    return SlicePair(F1, F2)
