"""JSON and CSV encodings of the domain objects.

Rationals travel as strings "a" or "a/b"; the bottom value is the string
"-inf".  All emitters sort keys and use a fixed separator style so that a
given object always serializes to the same bytes.
"""

import json
from fractions import Fraction

from .circle import CircleFunction, Divisor, circle_bottom, circle_function, divisor
from .piecewise import PiecewiseAffine, SlopeGroup, bottom_pa, hp_group, piecewise_affine
from .polygons import NewtonPolygon, newton_polygon
from .riemann_roch import FiltrationReport, RiemannRochReport

__all__ = [
    "dumps",
    "frac_to_str",
    "parse_frac",
    "parse_rmax",
    "rmax_to_str",
    "polygon_to_json", "polygon_from_json",
    "pa_to_json", "pa_from_json",
    "circle_to_json", "circle_from_json",
    "divisor_to_json", "divisor_from_json",
    "report_to_json", "report_to_csv",
    "rr_to_json",
]


def frac_to_str(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_frac(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise ValueError(f"expected a rational string, got {s!r}")
    try:
        return Fraction(s.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed rational {s!r}: {exc}") from None


def rmax_to_str(v: Fraction | None) -> str:
    return "-inf" if v is None else frac_to_str(v)


def parse_rmax(s) -> Fraction | None:
    if s == "-inf":
        return None
    return parse_frac(s)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ": "), indent=1) + "\n"


def _expect(d: dict, key: str):
    if key not in d:
        raise ValueError(f"missing key {key!r}")
    return d[key]


# ---------------------------------------------------------------- polygons

def polygon_to_json(n: NewtonPolygon) -> dict:
    return {
        "p": n.group.p,
        "scale": frac_to_str(n.group.scale),
        "vertices": [[frac_to_str(x), frac_to_str(y)] for x, y in n.vertices],
    }


def polygon_from_json(d: dict) -> NewtonPolygon:
    p = _expect(d, "p")
    scale = parse_frac(d.get("scale", "1"))
    group = SlopeGroup(None, scale) if p is None else hp_group(p, scale)
    verts = [(parse_frac(x), parse_frac(y)) for x, y in _expect(d, "vertices")]
    return newton_polygon(group, verts)


# --------------------------------------------------------------- functions

def pa_to_json(f: PiecewiseAffine) -> dict:
    return {
        "p": f.group.p,
        "scale": frac_to_str(f.group.scale),
        "domain": [frac_to_str(f.lo), None if f.hi is None else frac_to_str(f.hi)],
        "anchor": rmax_to_str(f.anchor),
        "kinks": [frac_to_str(k) for k in f.kinks],
        "slopes": [frac_to_str(s) for s in f.slopes],
        "convex": f.convex,
    }


def pa_from_json(d: dict) -> PiecewiseAffine:
    p = d.get("p")
    scale = parse_frac(d.get("scale", "1"))
    group = SlopeGroup(None, scale) if p is None else hp_group(p, scale)
    lo_s, hi_s = _expect(d, "domain")
    lo = parse_frac(lo_s)
    hi = None if hi_s is None else parse_frac(hi_s)
    anchor = parse_rmax(_expect(d, "anchor"))
    if anchor is None:
        return bottom_pa(group, lo, hi)
    return piecewise_affine(group, lo, hi, anchor,
                     [parse_frac(k) for k in d.get("kinks", [])],
                     [parse_frac(s) for s in _expect(d, "slopes")])


def circle_to_json(f: CircleFunction) -> dict:
    d = pa_to_json(f.pa)
    d["p"] = f.p
    del d["scale"]
    return d


def circle_from_json(d: dict) -> CircleFunction:
    p = _expect(d, "p")
    if p is None:
        raise ValueError("a circle function needs a prime p")
    lo_s, hi_s = _expect(d, "domain")
    if parse_frac(lo_s) != 1 or hi_s is None or parse_frac(hi_s) != p:
        raise ValueError(f"circle functions live on the domain [1, {p}]")
    anchor = parse_rmax(_expect(d, "anchor"))
    if anchor is None:
        return circle_bottom(p)
    return circle_function(p,
                           [parse_frac(k) for k in d.get("kinks", [])],
                           [parse_frac(s) for s in _expect(d, "slopes")],
                           anchor)


# ---------------------------------------------------------------- divisors

def divisor_to_json(d: Divisor) -> dict:
    return {
        "p": d.p,
        "support": [{"point": frac_to_str(rep), "coeff": frac_to_str(c.to_fraction())}
                    for rep, c in d.entries],
    }


def divisor_from_json(d: dict) -> Divisor:
    p = _expect(d, "p")
    table = {}
    for item in _expect(d, "support"):
        rep = parse_frac(_expect(item, "point"))
        coeff = parse_frac(_expect(item, "coeff"))
        table[rep] = table.get(rep, Fraction(0)) + coeff
    return divisor(p, table)


# ----------------------------------------------------------------- reports

def report_to_json(r: FiltrationReport) -> dict:
    return {
        "divisor": divisor_to_json(r.divisor),
        "levels": [{"n": n, "dim": dim, "normalized": frac_to_str(norm)}
                   for n, dim, norm in r.levels],
        "limitEstimate": frac_to_str(r.limit_estimate),
    }


def report_to_csv(r: FiltrationReport) -> str:
    lines = ["n,dim,normalized"]
    for n, dim, norm in r.levels:
        lines.append(f"{n},{dim},{frac_to_str(norm)}")
    return "\n".join(lines) + "\n"


def rr_to_json(r: RiemannRochReport) -> dict:
    return {
        "divisor": divisor_to_json(r.divisor),
        "report": report_to_json(r.report),
        "reportNegated": report_to_json(r.report_neg),
        "degree": frac_to_str(r.degree),
        "difference": frac_to_str(r.difference),
        "tolerance": frac_to_str(r.tolerance),
        "verdict": "PASS" if r.ok else "FAIL",
    }
