"""Exact scalar arithmetic: the max-plus line and the ring Z[1/p].

Values of the functions handled by this package live on the max-plus line
R ∪ {-inf}, whose semiring addition is max and whose multiplication is
ordinary +.  Slopes and divisor coefficients live in Z[1/p], the subring of
rationals whose denominator is a power of a fixed prime p.
"""

from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "BOTTOM",
    "HpScalar",
    "chi_scalar",
    "is_prime",
    "padic_abs",
    "padic_valuation",
    "rmax_join",
    "rmax_times",
]

# An element of the max-plus line is a Fraction, or None for -inf.  None is
# neutral for rmax_join and absorbing for rmax_times.
BOTTOM = None


def rmax_join(a, b):
    """Tropical addition max(a, b); -inf is the neutral element."""
    if a is None:
        return b
    if b is None:
        return a
    return a if a >= b else b


def rmax_times(a, b):
    """Tropical multiplication a + b; -inf is absorbing."""
    if a is None or b is None:
        return None
    return a + b


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def padic_valuation(n: int, p: int) -> int:
    """Exponent of p in a nonzero integer n."""
    if n == 0:
        raise ValueError("zero has no finite valuation")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class HpScalar:
    """An element num / p**pexp of Z[1/p], kept in normalized form.

    Normalized means pexp == 0 or p does not divide num; zero is stored as
    num = 0, pexp = 0.  Instances are immutable and safe to share.
    """

    p: int
    num: int
    pexp: int

    @classmethod
    def make(cls, p: int, num: int, pexp: int = 0) -> "HpScalar":
        if not is_prime(p):
            raise ValueError(f"p must be prime, got {p}")
        if pexp < 0:
            num *= p ** (-pexp)
            pexp = 0
        if num == 0:
            return cls(p, 0, 0)
        while pexp > 0 and num % p == 0:
            num //= p
            pexp -= 1
        return cls(p, num, pexp)

    @classmethod
    def zero(cls, p: int) -> "HpScalar":
        return cls.make(p, 0)

    @classmethod
    def from_fraction(cls, p: int, q) -> "HpScalar":
        """Convert a rational to Z[1/p]; rejects denominators that are not p-powers."""
        q = Fraction(q)
        den = q.denominator
        pexp = 0
        while den % p == 0:
            den //= p
            pexp += 1
        if den != 1:
            raise ValueError(f"{q} is not in Z[1/{p}]: denominator has a factor {den}")
        return cls.make(p, q.numerator, pexp)

    def to_fraction(self) -> Fraction:
        return Fraction(self.num, self.p ** self.pexp)

    def __bool__(self) -> bool:
        return self.num != 0

    def _check(self, other: "HpScalar") -> None:
        if self.p != other.p:
            raise ValueError(f"mixed primes {self.p} and {other.p}")

    def __add__(self, other: "HpScalar") -> "HpScalar":
        self._check(other)
        k = max(self.pexp, other.pexp)
        num = self.num * self.p ** (k - self.pexp) + other.num * self.p ** (k - other.pexp)
        return HpScalar.make(self.p, num, k)

    def __neg__(self) -> "HpScalar":
        return HpScalar(self.p, -self.num, self.pexp)

    def __sub__(self, other: "HpScalar") -> "HpScalar":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return HpScalar.make(self.p, self.num * other, self.pexp)
        self._check(other)
        return HpScalar.make(self.p, self.num * other.num, self.pexp + other.pexp)

    __rmul__ = __mul__

    def mul_p_power(self, j: int) -> "HpScalar":
        """Multiply by p**j (j may be negative)."""
        return HpScalar.make(self.p, self.num, self.pexp - j)

    def div_exact(self, d: int) -> "HpScalar":
        """Divide by a nonzero integer when the quotient stays in Z[1/p]."""
        if d == 0:
            raise ZeroDivisionError("division by zero")
        sign = 1 if d > 0 else -1
        d = abs(d)
        # strip the p-part of d, then the remaining factor must divide num
        extra = 0
        while d % self.p == 0 and d > 1:
            d //= self.p
            extra += 1
        if self.num % d != 0:
            raise ValueError(f"{self} is not divisible by {d * self.p ** extra} in Z[1/{self.p}]")
        return HpScalar.make(self.p, sign * (self.num // d), self.pexp + extra)

    def padic_abs(self) -> Fraction:
        """p-adic absolute value: p**(pexp - v_p(num)); 0 maps to 0."""
        if self.num == 0:
            return Fraction(0)
        e = self.pexp - padic_valuation(self.num, self.p)
        return Fraction(self.p) ** e

    def chi(self) -> int:
        """Residue in Z/(p-1)Z.

        Because p = 1 mod (p-1), the denominator p**pexp acts trivially, so
        the residue of num alone represents the class of the scalar modulo
        (p-1)Z[1/p].  For p = 2 the group is trivial and the result is 0.
        """
        return self.num % (self.p - 1) if self.p > 2 else 0

    def __str__(self) -> str:
        if self.pexp == 0:
            return str(self.num)
        return f"{self.num}/{self.p ** self.pexp}"


def padic_abs(h: HpScalar) -> Fraction:
    return h.padic_abs()


def chi_scalar(h: HpScalar) -> int:
    return h.chi()
