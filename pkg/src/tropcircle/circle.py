"""The multiplicative circle R*+/p^Z and its divisor theory.

Points are classes of positive reals under scaling by p, represented here by
rational class representatives in [1, p).  Global piecewise-affine functions
on the circle are stored on the fundamental domain [1, p] with slopes in
Z[1/p]; periodicity f(p t) = f(t) forces the closure condition
value(p) = value(1) and, by the chain rule, makes the slope just left of the
wrap class equal to p times the stored last slope.

A divisor assigns to finitely many points a nonzero coefficient in Z[1/p];
its real value at a point with representative b is b times the coefficient.
The divisor of a function records the jump of its slopes at every kink, with
the wrap-class jump s_0 - p*s_m.  Degree and the residue invariant chi
classify divisors up to divisors of functions: the degree-zero classes form
a cyclic group of order p - 1.
"""

from dataclasses import dataclass
from fractions import Fraction

from .piecewise import PiecewiseAffine, bottom_pa, hp_group, piecewise_affine, pointwise_join, pointwise_times
from .scalars import HpScalar, is_prime

__all__ = [
    "CircleFunction",
    "ClosureError",
    "Divisor",
    "PrincipalityReport",
    "chi_divisor",
    "circle_bottom",
    "circle_function",
    "circle_join",
    "circle_times",
    "degree",
    "divisor",
    "divisor_of",
    "from_cut",
    "is_principal",
    "jacobian_class",
    "normalize_point",
]


class ClosureError(ValueError):
    """The slope data does not close up around the circle."""


def normalize_point(p: int, lam) -> Fraction:
    """Canonical representative lam * p**k in [1, p) of a positive rational."""
    lam = Fraction(lam)
    if lam <= 0:
        raise ValueError("points of the circle have positive representatives")
    while lam < 1:
        lam *= p
    while lam >= p:
        lam /= p
    return lam


@dataclass(frozen=True)
class Divisor:
    """Finitely supported map from circle points to nonzero Z[1/p] coefficients."""

    p: int
    entries: tuple  # sorted ((rep, HpScalar)) with rep in [1, p), coeff nonzero

    @property
    def support(self):
        return tuple(rep for rep, _ in self.entries)

    @property
    def is_empty(self) -> bool:
        return not self.entries

    def coeff(self, lam) -> HpScalar:
        rep = normalize_point(self.p, lam)
        for r, c in self.entries:
            if r == rep:
                return c
        return HpScalar.zero(self.p)

    def degree(self) -> Fraction:
        """Sum over the support of rep * coefficient (the real value)."""
        return sum((rep * c.to_fraction() for rep, c in self.entries), Fraction(0))

    def chi(self) -> int:
        """Sum of the coefficient residues in Z/(p-1)Z."""
        if self.p == 2:
            return 0
        return sum(c.chi() for _, c in self.entries) % (self.p - 1)

    def __add__(self, other: "Divisor") -> "Divisor":
        if self.p != other.p:
            raise ValueError("mixed primes")
        table = {rep: c for rep, c in self.entries}
        for rep, c in other.entries:
            table[rep] = table[rep] + c if rep in table else c
        return divisor(self.p, table)

    def __neg__(self) -> "Divisor":
        return Divisor(self.p, tuple((rep, -c) for rep, c in self.entries))

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-other)

    def __repr__(self) -> str:
        if self.is_empty:
            return f"Divisor(p={self.p}, 0)"
        body = ", ".join(f"{rep} -> {c}" for rep, c in self.entries)
        return f"Divisor(p={self.p}, {body})"


def divisor(p: int, table) -> Divisor:
    """Build a divisor from a mapping {representative: coefficient}; points
    are normalized, coefficients coerced into Z[1/p], zeros dropped."""
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    merged: dict = {}
    for lam, c in dict(table).items():
        rep = normalize_point(p, lam)
        if not isinstance(c, HpScalar):
            c = HpScalar.from_fraction(p, c)
        elif c.p != p:
            raise ValueError("coefficient prime mismatch")
        merged[rep] = merged[rep] + c if rep in merged else c
    entries = tuple(sorted((rep, c) for rep, c in merged.items() if c))
    return Divisor(p, entries)


@dataclass(frozen=True)
class CircleFunction:
    """Global piecewise-affine function on the circle, stored on [1, p]."""

    p: int
    pa: PiecewiseAffine

    @property
    def is_bottom(self) -> bool:
        return self.pa.is_bottom

    @property
    def kinks(self):
        return self.pa.kinks

    @property
    def slopes(self):
        return self.pa.slopes

    @property
    def anchor(self):
        return self.pa.anchor

    @property
    def is_constant(self) -> bool:
        return not self.is_bottom and not self.kinks and self.slopes[0] == 0

    def eval_at(self, lam) -> Fraction | None:
        """Value at any positive rational, via the canonical representative."""
        return self.pa.eval_at(normalize_point(self.p, lam))

    def wrap_jump(self) -> Fraction:
        """Slope jump at the wrap class: s_0 - p * s_m."""
        return self.slopes[0] - self.p * self.slopes[-1]

    def jumps(self):
        """All slope jumps as ((representative, jump)) pairs, zero jumps kept out."""
        out = []
        w = self.wrap_jump()
        if w != 0:
            out.append((Fraction(1), w))
        for k, s_left, s_right in zip(self.kinks, self.slopes, self.slopes[1:]):
            out.append((k, s_right - s_left))
        return out

    def order_at(self, lam) -> Fraction:
        """Real order rep * (right slope - left slope) at a point."""
        rep = normalize_point(self.p, lam)
        if self.is_bottom:
            raise ValueError("the bottom function has no order")
        if rep == 1:
            return self.wrap_jump()
        return rep * (self.pa.slope_right(rep) - self.pa.slope_left(rep))

    def __repr__(self) -> str:
        if self.is_bottom:
            return f"CircleFunction(p={self.p}, bottom)"
        return (f"CircleFunction(p={self.p}, anchor={self.anchor}, "
                f"kinks={list(self.kinks)}, slopes={list(self.slopes)})")


def circle_function(p: int, kinks, slopes, anchor) -> CircleFunction:
    """Validating constructor: kinks sorted in the open interval (1, p),
    slopes in Z[1/p], and the closure sum(s_i * arc_i) = 0.  An anchor of
    None gives the bottom function."""
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    group = hp_group(p)
    pa = piecewise_affine(group, 1, p, anchor, kinks, slopes)
    if pa.is_bottom:
        return CircleFunction(p, pa)
    closure = pa.eval_at(p) - pa.eval_at(1)
    if closure != 0:
        raise ClosureError(f"slopes do not close up: value(p) - value(1) = {closure}")
    return CircleFunction(p, pa)


def circle_bottom(p: int) -> CircleFunction:
    return CircleFunction(p, bottom_pa(hp_group(p), 1, p))


def from_cut(p: int, start, kinks, slopes, anchor) -> CircleFunction:
    """Build the same circle function from data laid out on the fundamental
    domain [start, p*start] with 1 <= start < p.

    Arc positions at or beyond p fold back by one p-power, which multiplies
    their slopes by p (chain rule for f(t) = g(p t)); the result is always
    anchored at the class of 1.  Feeding start = 1 reproduces
    circle_function.
    """
    start = Fraction(start)
    if not 1 <= start < p:
        raise ValueError("the cut point must lie in [1, p)")
    if anchor is None:
        raise ValueError("re-cutting the bottom function is pointless; build it directly")
    kinks = [Fraction(k) for k in kinks]
    slopes = [Fraction(s) for s in slopes]
    if len(slopes) != len(kinks) + 1:
        raise ValueError("need exactly one slope per arc")
    for a, b in zip(kinks, kinks[1:]):
        if a >= b:
            raise ValueError("kinks must be strictly increasing")
    if kinks and not (start < kinks[0] and kinks[-1] < p * start):
        raise ValueError("kinks must be interior to the cut domain")
    if start == 1:
        return circle_function(p, kinks, slopes, anchor)
    bounds = [start, *kinks, p * start]
    closure = sum(s * (b - a) for s, a, b in zip(slopes, bounds, bounds[1:]))
    if closure != 0:
        raise ClosureError(f"slopes do not close up around the cut: {closure}")
    # right-slope of the folded function at each of its arc starts in [1, p)
    breaks: dict = {}
    value_at_p = Fraction(anchor)
    for a, b, t in zip(bounds, bounds[1:], slopes):
        if b <= p:
            breaks[a] = t
            value_at_p += t * (b - a)
        elif a >= p:
            breaks[a / p] = p * t
        else:
            breaks[a] = t
            breaks[Fraction(1)] = p * t
            value_at_p += t * (p - a)
    reps = sorted(breaks)
    return circle_function(p, reps[1:], [breaks[r] for r in reps], value_at_p)


def circle_join(f: CircleFunction, g: CircleFunction) -> CircleFunction:
    if f.p != g.p:
        raise ValueError("mixed primes")
    return CircleFunction(f.p, pointwise_join(f.pa, g.pa))


def circle_times(f: CircleFunction, g: CircleFunction) -> CircleFunction:
    if f.p != g.p:
        raise ValueError("mixed primes")
    return CircleFunction(f.p, pointwise_times(f.pa, g.pa))


def divisor_of(f: CircleFunction) -> Divisor:
    """Divisor of slope jumps; its degree and chi invariant always vanish."""
    if f.is_bottom:
        raise ValueError("the bottom function has no divisor")
    return divisor(f.p, {rep: HpScalar.from_fraction(f.p, j) for rep, j in f.jumps()})


def degree(d: Divisor) -> Fraction:
    return d.degree()


def chi_divisor(d: Divisor) -> int:
    return d.chi()


@dataclass(frozen=True)
class PrincipalityReport:
    divisor: Divisor
    witness: CircleFunction | None
    obstructions: tuple  # subset of ("degree", "chi")

    @property
    def principal(self) -> bool:
        return self.witness is not None


def is_principal(d: Divisor) -> PrincipalityReport:
    """Decide whether d is the divisor of a function; if so return a witness
    anchored at 0, otherwise report which of (degree, chi) obstructs.

    The witness slopes are s_i = s_0 + partial jump sums with the base slope
    solved from the wrap equation s_0 * (1 - p) = d_wrap + p * sum(interior);
    the division by (p - 1) is exact precisely when chi(d) vanishes, and the
    closure condition then follows from degree zero.
    """
    obstructions = []
    if d.degree() != 0:
        obstructions.append("degree")
    if d.chi() != 0:
        obstructions.append("chi")
    if obstructions:
        return PrincipalityReport(d, None, tuple(obstructions))
    p = d.p
    wrap = d.coeff(1)
    interior = [(rep, c) for rep, c in d.entries if rep != 1]
    total = HpScalar.zero(p)
    for _, c in interior:
        total = total + c
    s0 = -(wrap + total.mul_p_power(1)).div_exact(p - 1)
    slopes = [s0.to_fraction()]
    acc = s0
    for _, c in interior:
        acc = acc + c
        slopes.append(acc.to_fraction())
    witness = circle_function(p, [rep for rep, _ in interior], slopes, 0)
    return PrincipalityReport(d, witness, ())


def jacobian_class(d: Divisor):
    """Class of a divisor modulo divisors of functions: the pair (degree, chi).

    Two divisors differ by the divisor of a function exactly when their
    classes agree; degree-zero classes form a cyclic group of order p - 1.
    """
    return (d.degree(), d.chi())
