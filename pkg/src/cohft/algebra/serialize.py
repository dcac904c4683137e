"""JSON-ready trees for the exact types.

Formats:

* rational: ``{"n": "<int>", "d": "<positive int>"}``
* polynomial: ``{"vars": [...], "terms": [[[e_1, ..., e_k], rational], ...]}``
  with terms sorted by exponent vector
* rational function: ``{"num": polynomial, "den": polynomial}``
* algebraic element: ``{"gen": name, "modulus": [...], "coords": [...]}``
* series: ``{"var": name, "order": N, "coeffs": [...]}``
"""

from __future__ import annotations

from fractions import Fraction

from .algebraic import AlgebraicElement
from .laurent import LaurentPolynomial
from .poly import Polynomial, RationalFunction, field
from .rational import to_fraction
from .series import TruncatedSeries


def rational_to_json(x) -> dict:
    x = to_fraction(x)
    return {"n": str(x.numerator), "d": str(x.denominator)}


def rational_from_json(obj) -> Fraction:
    return Fraction(int(obj["n"]), int(obj["d"]))


def polynomial_to_json(p) -> dict:
    if isinstance(p, RationalFunction):
        if not p.is_polynomial():
            raise ValueError("not a polynomial")
        p = p.numerator
    terms = sorted(p.terms().items())
    return {"vars": list(p.variables), "terms": [[[int(k) for k in e], rational_to_json(c)] for e, c in terms]}


def polynomial_from_json(obj) -> Polynomial:
    fld = field(*obj["vars"])
    return Polynomial.from_terms(fld, {tuple(e): rational_from_json(c) for e, c in obj["terms"]})


def to_json(x):
    """Serialize any supported exact value."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, (int, Fraction)):
        return rational_to_json(x)
    if isinstance(x, RationalFunction):
        return {"num": polynomial_to_json(x.numerator), "den": polynomial_to_json(x.denominator)}
    if isinstance(x, Polynomial):
        return polynomial_to_json(x)
    if isinstance(x, AlgebraicElement):
        return {"gen": x.name, "modulus": [to_json(c) for c in x.modulus], "coords": [to_json(c) for c in x.coords]}
    if isinstance(x, TruncatedSeries):
        return {"var": x.var, "order": x.order, "coeffs": [to_json(c) for c in x.coeffs]}
    if isinstance(x, LaurentPolynomial):
        return {"laurent": [[list(e), to_json(c)] for e, c in sorted(x.terms.items())]}
    if isinstance(x, (list, tuple)):
        return [to_json(v) for v in x]
    if isinstance(x, dict):
        return {str(k): to_json(v) for k, v in x.items()}
    if hasattr(x, "p") and hasattr(x, "q"):
        return rational_to_json(x)
    raise TypeError(f"no JSON form for {type(x).__name__}")


def from_json(obj):
    """Inverse of to_json for rationals, polynomials, rational functions and series."""
    if isinstance(obj, dict):
        if set(obj) == {"n", "d"}:
            return rational_from_json(obj)
        if "vars" in obj and "terms" in obj:
            return polynomial_from_json(obj)
        if "num" in obj and "den" in obj:
            num = polynomial_from_json(obj["num"])
            den = polynomial_from_json(obj["den"])
            return RationalFunction(num.field, num.raw, den.raw, True)
        if "var" in obj and "order" in obj:
            return TruncatedSeries([from_json(c) for c in obj["coeffs"]], obj["order"], obj["var"])
    if isinstance(obj, list):
        return [from_json(v) for v in obj]
    raise ValueError(f"unrecognized JSON tree: {obj!r}")
