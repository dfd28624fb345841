"""Newton polygons and the Legendre transform.

A polygon is the finite set of extreme vertices (x, y) of a convex hull of
down-left quadrants, with x in a rank-one slope group H and y rational.  It
is determined by, and determines, its support function

    ell(lam) = max_j (lam * x_j + y_j)   for lam >= 0,

a convex piecewise-affine function with slopes in H.  The two semiring
operations are pointwise max and pointwise sum of support functions; on
vertices the sum is a Minkowski sum.  The empty polygon is the zero element
(support function constant -inf).
"""

from dataclasses import dataclass
from fractions import Fraction

from .piecewise import GroupMismatchError, PiecewiseAffine, SlopeGroup, bottom_pa, piecewise_affine

__all__ = [
    "NewtonPolygon",
    "ell",
    "from_function",
    "legendre",
    "newton_polygon",
    "poly_join",
    "poly_times",
    "zero_polygon",
]


@dataclass(frozen=True)
class NewtonPolygon:
    group: SlopeGroup
    vertices: tuple  # ((x, y) Fraction pairs), reduced form

    @property
    def is_zero(self) -> bool:
        return not self.vertices

    def __repr__(self) -> str:
        if self.is_zero:
            return "NewtonPolygon(zero)"
        return "NewtonPolygon(%s)" % ", ".join(f"({x}, {y})" for x, y in self.vertices)


def _reduce(pts):
    """Keep exactly the vertices that win max_j(lam x_j + y_j) on a nonempty
    open sub-interval of [0, inf).

    Steps: keep the best y per x, build the strictly concave upper hull
    (ties between chords drop the middle point), then drop leading vertices
    whose winning interval lies in lam <= 0.
    """
    best = {}
    for x, y in pts:
        if x not in best or y > best[x]:
            best[x] = y
    pts = sorted(best.items())
    hull = []
    for v in pts:
        while len(hull) >= 2:
            a, b = hull[-2], hull[-1]
            if (b[1] - a[1]) * (v[0] - b[0]) <= (v[1] - b[1]) * (b[0] - a[0]):
                hull.pop()
            else:
                break
        hull.append(v)
    # the crossing of hull[0] and hull[1] sits at lam = (y0 - y1)/(x1 - x0);
    # when it is <= 0 the first vertex never wins on the open half-line
    while len(hull) >= 2 and hull[0][1] <= hull[1][1]:
        hull.pop(0)
    return tuple(hull)


def newton_polygon(group: SlopeGroup, pts) -> NewtonPolygon:
    """Reduce an arbitrary finite vertex set; the support function over
    lam >= 0 is unchanged by the reduction."""
    cooked = [(group.require(x), Fraction(y)) for x, y in pts]
    return NewtonPolygon(group, _reduce(cooked))


def zero_polygon(group: SlopeGroup) -> NewtonPolygon:
    return NewtonPolygon(group, ())


def ell(n: NewtonPolygon, lam) -> Fraction | None:
    """Support function max_j(lam x_j + y_j); -inf for the zero polygon."""
    lam = Fraction(lam)
    if lam < 0:
        raise ValueError("the support function lives on [0, inf)")
    if n.is_zero:
        return None
    return max(lam * x + y for x, y in n.vertices)


def poly_join(n: NewtonPolygon, m: NewtonPolygon) -> NewtonPolygon:
    """Semiring addition: pointwise max of support functions."""
    if n.group != m.group:
        raise GroupMismatchError(f"slope groups differ: {n.group} vs {m.group}")
    return NewtonPolygon(n.group, _reduce([*n.vertices, *m.vertices]))


def poly_times(n: NewtonPolygon, m: NewtonPolygon) -> NewtonPolygon:
    """Semiring multiplication: pointwise sum of support functions, i.e. the
    Minkowski sum of the vertex sets followed by reduction."""
    if n.group != m.group:
        raise GroupMismatchError(f"slope groups differ: {n.group} vs {m.group}")
    if n.is_zero or m.is_zero:
        return zero_polygon(n.group)
    sums = [(x1 + x2, y1 + y2) for x1, y1 in n.vertices for x2, y2 in m.vertices]
    return NewtonPolygon(n.group, _reduce(sums))


def legendre(n: NewtonPolygon) -> PiecewiseAffine:
    """The support function as a convex piecewise-affine function on [0, inf).

    Slopes are exactly the vertex x-coordinates; kinks are the crossings of
    consecutive affine pieces.  The zero polygon maps to constant -inf.
    """
    if n.is_zero:
        return bottom_pa(n.group, 0, None)
    xs = [x for x, _ in n.vertices]
    ys = [y for _, y in n.vertices]
    kinks = [Fraction(ys[i] - ys[i + 1], xs[i + 1] - xs[i]) for i in range(len(xs) - 1)]
    return piecewise_affine(n.group, 0, None, ys[0], kinks, xs)


def from_function(f: PiecewiseAffine) -> NewtonPolygon:
    """Inverse of legendre: rebuild the polygon from a convex function on
    [0, inf) whose slopes lie in the group.  Exact round trip both ways."""
    if f.lo != 0 or f.hi is not None:
        raise ValueError("the transform inverts functions defined on all of [0, inf)")
    if f.is_bottom:
        return zero_polygon(f.group)
    if not f.convex:
        raise ValueError("function is not convex")
    xs = list(f.slopes)
    ys = [f.anchor]
    for k, x_prev, x_next in zip(f.kinks, xs, xs[1:]):
        ys.append(ys[-1] + k * (x_prev - x_next))
    return newton_polygon(f.group, zip(xs, ys))
