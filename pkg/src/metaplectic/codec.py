"""JSON encoding of places, rationals, matrices, class parameters and pairs.

Rationals are integers or strings "n/d".  A field K# is an
unramified-then-Eisenstein tower ``{"p": p, "f_poly": [c0, ..., 1],
"e_poly": [[...], ..., [1, 0, ...]]}`` with little-endian coefficients
(``e_poly`` entries are coordinate lists on 1, theta, ..., theta^{f-1}); it
is omitted or null for the base field.  ``e_poly`` defaults to x - p.
Elements are coordinate lists (or a single rational in the base field).  A parameter is

    {"factors": [{"field": ..., "d": elem or null}, ...],
     "a": [[x, y], ...], "c": [[x, y], ...]}

with one pair per factor, as in ``EtaleAlg.elem``.  A pair is

    {"place": 3 | "real", "gamma1": param or null, "gamma2": param or null,
     "c": [[x, y], ...] (optional, the Sp-side constant)}
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from . import linalg as la
from .base_field import ExtElem, ExtField, Place, PlaceError
from .etale import GROUP, ClassParam, EtaleAlg, EtaleElem, Factor, ParamError


class InputError(ValueError):
    """Malformed input; ``path`` names the offending field."""

    def __init__(self, path: str, msg: str):
        super().__init__(f"{path}: {msg}")
        self.path = path


class PreconditionError(ValueError):
    def __init__(self, path: str, msg: str):
        super().__init__(f"{path}: {msg}")
        self.path = path


def frac(x: Any, path: str) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise InputError(path, "expected an integer or a string 'n/d'")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError):
        raise InputError(path, f"not a rational: {x!r}") from None


def fmt(x: Fraction) -> int | str:
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def place(x: Any, path: str = "place") -> Place:
    if x in ("real", "R", "inf"):
        return Place.real()
    if isinstance(x, bool) or not isinstance(x, int):
        raise InputError(path, "expected an odd prime or 'real'")
    try:
        return Place.padic(x)
    except PlaceError as e:
        raise PreconditionError(path, str(e)) from None


def matrix(obj: Any, path: str = "matrix") -> la.Matrix:
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise InputError(path, "expected a nonempty list of rows")
    n = len(obj[0])
    rows = []
    for i, r in enumerate(obj):
        if len(r) != n:
            raise InputError(f"{path}[{i}]", "rows of different lengths")
        rows.append(tuple(frac(x, f"{path}[{i}][{j}]") for j, x in enumerate(r)))
    return tuple(rows)


def matrix_to_json(m: la.Matrix) -> list:
    return [[fmt(x) for x in r] for r in m]


def field(obj: Any, pl: Place, path: str) -> ExtField:
    if obj is None or obj == "base":
        return ExtField.base(pl)
    if not isinstance(obj, dict):
        raise InputError(path, "expected a field description")
    if obj.get("p", pl.p) != pl.p:
        raise PreconditionError(f"{path}.p", "does not match the place")
    fp = obj.get("f_poly", [0, 1])
    if not isinstance(fp, list) or not all(isinstance(c, int) and not isinstance(c, bool) for c in fp):
        raise InputError(f"{path}.f_poly", "expected integer coefficients")
    f = len(fp) - 1
    ep = obj.get("e_poly")
    if ep is None:
        ep = [[-(pl.p or 0)] + [0] * (f - 1), [1] + [0] * (f - 1)]
    if not isinstance(ep, list) or not all(isinstance(c, list) for c in ep):
        raise InputError(f"{path}.e_poly", "expected a list of coordinate lists")
    coeffs = [tuple(frac(x, f"{path}.e_poly[{i}][{j}]") for j, x in enumerate(c)) for i, c in enumerate(ep)]
    try:
        return ExtField(pl, tuple(fp), tuple(coeffs))
    except PlaceError as e:
        raise PreconditionError(path, str(e)) from None


def field_to_json(K: ExtField):
    if K.is_base:
        return None
    return {"p": K.p, "f_poly": list(K.f_poly), "e_poly": [[fmt(x) for x in c] for c in K.e_poly]}


def elem(obj: Any, K: ExtField, path: str) -> ExtElem:
    if isinstance(obj, list):
        if len(obj) != K.degree:
            raise InputError(path, f"expected {K.degree} coordinates")
        return ExtElem(K, tuple(frac(x, f"{path}[{i}]") for i, x in enumerate(obj)))
    x = frac(obj, path)
    return K.elem(x)


def elem_to_json(x: ExtElem):
    if x.field.degree == 1:
        return fmt(x.coords[0])
    return [fmt(c) for c in x.coords]


def _algebra(obj: Any, pl: Place, path: str) -> EtaleAlg:
    if not isinstance(obj, list) or not obj:
        raise InputError(path, "expected a nonempty list of factors")
    out = []
    for i, fobj in enumerate(obj):
        p = f"{path}[{i}]"
        if not isinstance(fobj, dict):
            raise InputError(p, "expected an object")
        K = field(fobj.get("field"), pl, f"{p}.field")
        d = fobj.get("d")
        try:
            out.append(Factor(K, None if d is None else elem(d, K, f"{p}.d")))
        except ParamError as e:
            raise PreconditionError(f"{p}.d", str(e)) from None
    return EtaleAlg(tuple(out))


def etale_elem(obj: Any, alg: EtaleAlg, path: str) -> EtaleElem:
    if not isinstance(obj, list) or len(obj) != len(alg.factors):
        raise InputError(path, f"expected {len(alg.factors)} components")
    comps = []
    for i, (fc, c) in enumerate(zip(alg.factors, obj)):
        if not isinstance(c, list) or len(c) != 2:
            raise InputError(f"{path}[{i}]", "expected a pair [x, y]")
        comps.append((elem(c[0], fc.ksharp, f"{path}[{i}][0]"), elem(c[1], fc.ksharp, f"{path}[{i}][1]")))
    return EtaleElem(alg, tuple(comps))


def etale_to_json(x: EtaleElem) -> list:
    return [[elem_to_json(a), elem_to_json(b)] for a, b in x.comps]


def param(obj: Any, pl: Place, path: str, epsilon: int, mode: str = GROUP) -> ClassParam:
    if not isinstance(obj, dict):
        raise InputError(path, "expected a parameter object")
    for key in ("factors", "a"):
        if key not in obj:
            raise InputError(f"{path}.{key}", "missing")
    alg = _algebra(obj["factors"], pl, f"{path}.factors")
    a = etale_elem(obj["a"], alg, f"{path}.a")
    if "c" in obj:
        c = etale_elem(obj["c"], alg, f"{path}.c")
    else:
        c = alg.one() if epsilon == 1 else alg.elem([(1, -1) if fc.split else (0, 1) for fc in alg.factors])
    try:
        return ClassParam(epsilon, mode, alg, a, c)
    except ParamError as e:
        raise PreconditionError(path, str(e)) from None


def param_to_json(prm: ClassParam) -> dict:
    return {
        "factors": [{"field": field_to_json(fc.ksharp), "d": None if fc.split else elem_to_json(fc.d)} for fc in prm.alg.factors],
        "a": etale_to_json(prm.a),
        "c": etale_to_json(prm.c),
    }


def pair(obj: Any, path: str = "pair"):
    """(HClassParam, optional Sp-side c)."""
    from .transfer import HClassParam, TransferError

    if not isinstance(obj, dict):
        raise InputError(path, "expected an object")
    pl = place(obj.get("place"), f"{path}.place")
    g1 = obj.get("gamma1")
    g2 = obj.get("gamma2")
    g1 = None if g1 is None else param(g1, pl, f"{path}.gamma1", 1)
    g2 = None if g2 is None else param(g2, pl, f"{path}.gamma2", 1)
    try:
        gamma = HClassParam(g1, g2)
    except TransferError as e:
        raise PreconditionError(path, str(e)) from None
    c = None
    if obj.get("c") is not None:
        from .transfer import correspond

        try:
            alg = correspond(gamma).alg
        except TransferError as e:
            raise PreconditionError(path, str(e)) from None
        c = etale_elem(obj["c"], alg, f"{path}.c")
    return gamma, c


def pair_to_json(gamma, c=None) -> dict:
    out = {
        "place": gamma.place.to_json(),
        "gamma1": param_to_json(gamma.g1) if gamma.g1 else None,
        "gamma2": param_to_json(gamma.g2) if gamma.g2 else None,
    }
    if c is not None:
        out["c"] = etale_to_json(c)
    return out
