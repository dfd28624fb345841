"""Continuous piecewise-affine functions on sub-intervals of [0, inf).

A function is stored as its domain, its anchor value at the left endpoint,
a sorted tuple of interior kinks, and one slope per piece; the value
anywhere is recovered by integrating the slopes from the anchor, so
continuity is structural.  Slopes are constrained to a rank-one group:
either Z, or a fixed rational multiple of Z[1/p].

The bottom function (constant -inf) is encoded with anchor None and no
pieces.  Degenerate pieces with equal adjacent slopes are merged eagerly,
so structural equality is semantic equality.
"""

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .germs import GERM_BOTTOM, Germ
from .scalars import is_prime

__all__ = [
    "GroupMismatchError",
    "PiecewiseAffine",
    "SlopeGroup",
    "ZZ",
    "bottom_pa",
    "gamma",
    "germ_at",
    "hp_group",
    "order_at",
    "piecewise_affine",
    "pointwise_join",
    "pointwise_times",
]


class GroupMismatchError(ValueError):
    """Operands carry different slope groups."""


@dataclass(frozen=True)
class SlopeGroup:
    """Rank-one subgroup of (R, +): Z when p is None, else scale * Z[1/p]."""

    p: int | None = None
    scale: Fraction = Fraction(1)

    def __post_init__(self):
        if self.p is not None and not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        if self.scale <= 0:
            raise ValueError("scale must be positive")

    def contains(self, q) -> bool:
        q = Fraction(q) / self.scale
        if self.p is None:
            return q.denominator == 1
        den = q.denominator
        while den % self.p == 0:
            den //= self.p
        return den == 1

    def require(self, q) -> Fraction:
        q = Fraction(q)
        if not self.contains(q):
            raise ValueError(f"slope {q} is not in {self}")
        return q

    def __str__(self) -> str:
        base = "Z" if self.p is None else f"Z[1/{self.p}]"
        return base if self.scale == 1 else f"{self.scale}*{base}"


ZZ = SlopeGroup(None)


def hp_group(p: int, scale=Fraction(1)) -> SlopeGroup:
    return SlopeGroup(p, Fraction(scale))


@dataclass(frozen=True)
class PiecewiseAffine:
    group: SlopeGroup
    lo: Fraction
    hi: Fraction | None          # None means the domain extends to +inf
    anchor: Fraction | None      # value at lo; None means the bottom function
    kinks: tuple
    slopes: tuple

    @property
    def is_bottom(self) -> bool:
        return self.anchor is None

    @property
    def convex(self) -> bool:
        """True when the slopes strictly increase across the kinks."""
        return all(a < b for a, b in zip(self.slopes, self.slopes[1:]))

    def eval_at(self, lam) -> Fraction | None:
        lam = Fraction(lam)
        if lam < self.lo or (self.hi is not None and lam > self.hi):
            raise ValueError(f"{lam} outside domain [{self.lo}, {self.hi}]")
        if self.is_bottom:
            return None
        val = self.anchor
        prev = self.lo
        for k, s in zip(self.kinks, self.slopes):
            if lam <= k:
                return val + s * (lam - prev)
            val += s * (k - prev)
            prev = k
        return val + self.slopes[-1] * (lam - prev)

    def slope_right(self, lam) -> Fraction:
        """Slope on the piece immediately to the right of lam."""
        return self.slopes[bisect_right(self.kinks, lam)]

    def slope_left(self, lam) -> Fraction:
        """Slope on the piece immediately to the left of lam."""
        return self.slopes[bisect_left(self.kinks, lam)]

    def __repr__(self) -> str:
        if self.is_bottom:
            return f"PA(bottom on [{self.lo}, {self.hi}])"
        return (f"PA([{self.lo}, {self.hi}], anchor={self.anchor}, "
                f"kinks={list(self.kinks)}, slopes={list(self.slopes)})")


def piecewise_affine(group, lo, hi, anchor, kinks=(), slopes=None) -> PiecewiseAffine:
    """Validating, canonicalizing constructor.

    Merges pieces with equal adjacent slopes so that every stored kink is a
    genuine kink; a bottom function may not carry kinks.
    """
    lo = Fraction(lo)
    hi = None if hi is None else Fraction(hi)
    if lo < 0:
        raise ValueError("domain must sit inside [0, inf)")
    if hi is not None and hi <= lo:
        raise ValueError("empty domain")
    if anchor is None:
        if kinks:
            raise ValueError("the bottom function has no kinks")
        return PiecewiseAffine(group, lo, hi, None, (), ())
    anchor = Fraction(anchor)
    kinks = tuple(Fraction(k) for k in kinks)
    if slopes is None:
        slopes = (Fraction(0),)
    slopes = tuple(group.require(s) for s in slopes)
    if len(slopes) != len(kinks) + 1:
        raise ValueError("need exactly one slope per piece")
    for a, b in zip(kinks, kinks[1:]):
        if a >= b:
            raise ValueError("kinks must be strictly increasing")
    if kinks:
        if kinks[0] <= lo or (hi is not None and kinks[-1] >= hi):
            raise ValueError("kinks must be interior to the domain")
    mk, ms = [], [slopes[0]]
    for k, s in zip(kinks, slopes[1:]):
        if s == ms[-1]:
            continue
        mk.append(k)
        ms.append(s)
    return PiecewiseAffine(group, lo, hi, anchor, tuple(mk), tuple(ms))


def bottom_pa(group, lo, hi) -> PiecewiseAffine:
    return piecewise_affine(group, lo, hi, None)


def _require_compatible(f: PiecewiseAffine, g: PiecewiseAffine) -> None:
    if f.group != g.group:
        raise GroupMismatchError(f"slope groups differ: {f.group} vs {g.group}")
    if f.lo != g.lo or f.hi != g.hi:
        raise ValueError(f"domain mismatch: [{f.lo}, {f.hi}] vs [{g.lo}, {g.hi}]")


def _segment_starts(lo, cuts):
    return [lo, *cuts]


def pointwise_join(f: PiecewiseAffine, g: PiecewiseAffine) -> PiecewiseAffine:
    """Exact pointwise max.  Kinks of the result are kinks of the operands
    plus the crossing points of their graphs."""
    _require_compatible(f, g)
    if f.is_bottom:
        return g
    if g.is_bottom:
        return f
    cuts = sorted({*f.kinks, *g.kinks})
    crossings = []
    for a in _segment_starts(f.lo, cuts):
        fa, ga = f.eval_at(a), g.eval_at(a)
        fs, gs = f.slope_right(a), g.slope_right(a)
        if fs != gs and fa != ga:
            t = a + Fraction(ga - fa, fs - gs)
            i = bisect_right(cuts, a)
            b = cuts[i] if i < len(cuts) else f.hi
            if t > a and (b is None or t < b):
                crossings.append(t)
    cuts = sorted({*cuts, *crossings})
    slopes = []
    for a in _segment_starts(f.lo, cuts):
        fa, ga = f.eval_at(a), g.eval_at(a)
        if fa > ga:
            slopes.append(f.slope_right(a))
        elif ga > fa:
            slopes.append(g.slope_right(a))
        else:
            slopes.append(max(f.slope_right(a), g.slope_right(a)))
    return piecewise_affine(f.group, f.lo, f.hi, max(f.anchor, g.anchor), cuts, slopes)


def pointwise_times(f: PiecewiseAffine, g: PiecewiseAffine) -> PiecewiseAffine:
    """Exact pointwise sum; bottom is absorbing."""
    _require_compatible(f, g)
    if f.is_bottom or g.is_bottom:
        return bottom_pa(f.group, f.lo, f.hi)
    cuts = sorted({*f.kinks, *g.kinks})
    slopes = [f.slope_right(a) + g.slope_right(a) for a in _segment_starts(f.lo, cuts)]
    return piecewise_affine(f.group, f.lo, f.hi, f.anchor + g.anchor, cuts, slopes)


def gamma(n: int, f: PiecewiseAffine) -> PiecewiseAffine:
    """Precomposition with multiplication by n: (gamma_n f)(t) = f(n t).

    The domain shrinks by 1/n, kinks divide by n and slopes multiply by n,
    which stays inside the slope group.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError("n must be a positive integer")
    if f.is_bottom:
        return bottom_pa(f.group, f.lo / n, None if f.hi is None else f.hi / n)
    return piecewise_affine(
        f.group,
        f.lo / n,
        None if f.hi is None else f.hi / n,
        f.anchor,
        tuple(k / n for k in f.kinks),
        tuple(s * n for s in f.slopes),
    )


def germ_at(f: PiecewiseAffine, lam) -> Germ:
    """Germ (value, scaled right slope, scaled left slope) at an interior point.

    The one-sided slopes are scaled by the point itself, so they land in the
    group attached to the point rather than the ambient slope group.
    """
    lam = Fraction(lam)
    if lam <= f.lo or (f.hi is not None and lam >= f.hi):
        raise ValueError(f"{lam} is not interior to [{f.lo}, {f.hi}]")
    if f.is_bottom:
        return GERM_BOTTOM
    return Germ(f.eval_at(lam), lam * f.slope_right(lam), lam * f.slope_left(lam))


def order_at(f: PiecewiseAffine, lam) -> Fraction:
    """Jump of the scaled one-sided slopes at an interior point; nonnegative
    wherever the function is convex."""
    g = germ_at(f, lam)
    if g.is_bottom:
        raise ValueError("the bottom function has no order")
    return g.hplus - g.hminus
