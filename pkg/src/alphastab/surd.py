"""Exact real numbers of the form p + q*sqrt(D) and roots of rational quadratics."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from math import isqrt


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def sign2(a: Fraction, b: Fraction, A) -> int:
    """Sign of a + b*sqrt(A), A >= 0."""
    sa, sb = _sgn(a), _sgn(b) if A else 0
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb if sa == 0 else sa
    lhs, rhs = a * a, b * b * A
    return sa if lhs > rhs else sb if lhs < rhs else 0


def sign3(a: Fraction, b: Fraction, A, c: Fraction, B) -> int:
    """Sign of a + b*sqrt(A) + c*sqrt(B), A, B >= 0."""
    ss = _sgn(b * b * A - c * c * B)
    sb, sc = _sgn(b) if A else 0, _sgn(c) if B else 0
    # sign of S = b sqrt(A) + c sqrt(B)
    if sb == 0 or sb == sc:
        sS = sc if sb == 0 else sb
    elif sc == 0:
        sS = sb
    else:
        sS = sb if ss > 0 else sc if ss < 0 else 0
    sa = _sgn(a)
    if sS == 0:
        return sa
    if sa == 0 or sa == sS:
        return sS if sa == 0 else sa
    # opposite signs: compare a^2 with S^2 = b^2 A + c^2 B + 2 b c sqrt(AB)
    t = sign2(a * a - b * b * A - c * c * B, -2 * b * c, A * B)
    return sa if t > 0 else sS if t < 0 else 0


def _squarefree_split(n: int) -> tuple[int, int]:
    """n = k^2 * m with m as small as trial division finds cheaply; exact either way."""
    k, m = 1, n
    f = 2
    while f * f <= m and f < 10_000:
        while m % (f * f) == 0:
            m //= f * f
            k *= f
        f += 1
    return k, m


@total_ordering
@dataclass(frozen=True)
class Surd:
    p: Fraction
    q: Fraction = Fraction(0)
    D: int = 0

    @classmethod
    def of(cls, x) -> "Surd":
        return x if isinstance(x, Surd) else cls(Fraction(x))

    @property
    def is_rational(self) -> bool:
        return self.q == 0 or self.D == 0

    def sign(self) -> int:
        return sign2(self.p, self.q, self.D)

    def cmp(self, other) -> int:
        o = Surd.of(other)
        return sign3(self.p - o.p, self.q, self.D, -o.q, o.D)

    def __eq__(self, other):
        if not isinstance(other, (Surd, int, Fraction)):
            return NotImplemented
        return self.cmp(other) == 0

    def __lt__(self, other):
        return self.cmp(other) < 0

    def __hash__(self):
        return hash((self.p, self.q, self.D)) if not self.is_rational else hash(self.p)

    def __float__(self):
        return float(self.p) + float(self.q) * self.D ** 0.5

    def __str__(self):
        if self.is_rational:
            return f"{self.p.numerator}/{self.p.denominator}"
        return (f"{self.p.numerator}/{self.p.denominator} + "
                f"{self.q.numerator}/{self.q.denominator}*sqrt({self.D})")


def quadratic_roots(c0: Fraction, c1: Fraction, c2: Fraction) -> list[tuple[Surd, int]]:
    """Real roots of c0 + c1 t + c2 t^2 (not identically zero) with multiplicities, ascending."""
    c0, c1, c2 = Fraction(c0), Fraction(c1), Fraction(c2)
    if c2 == 0:
        if c1 == 0:
            return []
        return [(Surd(-c0 / c1), 1)]
    disc = c1 * c1 - 4 * c2 * c0
    if disc < 0:
        return []
    if disc == 0:
        return [(Surd(-c1 / (2 * c2)), 2)]
    # sqrt(num/den) = sqrt(num*den)/den
    N = disc.numerator * disc.denominator
    k, m = _squarefree_split(N)
    r = isqrt(m)
    base = -c1 / (2 * c2)
    if r * r == m:
        w = Fraction(k * r, disc.denominator) / (2 * c2)
        roots = [Surd(base - w), Surd(base + w)]
    else:
        w = Fraction(k, disc.denominator) / (2 * c2)
        roots = [Surd(base, -w, m), Surd(base, w, m)]
    roots.sort()
    return [(x, 1) for x in roots]


def rational_between(x, y, lo=Fraction(0), hi=Fraction(1)) -> Fraction:
    """A rational strictly between x < y, found by bisection of [lo, hi] (which must contain both)."""
    x, y = Surd.of(x), Surd.of(y)
    if not x < y:
        raise ValueError("need x < y")
    lo, hi = Fraction(lo), Fraction(hi)
    if x.is_rational and y.is_rational:
        return (x.p + y.p) / 2
    while True:
        mid = (lo + hi) / 2
        if x.cmp(mid) >= 0:
            lo = mid
        elif y.cmp(mid) <= 0:
            hi = mid
        else:
            return mid
