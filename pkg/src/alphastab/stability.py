"""Degree systems, alpha-Hilbert polynomials and semistability verdicts."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Mapping, Sequence

from .numring import GradedClass, SheafClass, cone_test, degree, same_model, to_fraction


class Order(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True)
class DegreeSystem:
    """alpha = (alpha_d, ..., alpha_r), alpha_i an ample class of codimension i."""

    d: int
    r: int
    alphas: tuple[GradedClass, ...]

    def __post_init__(self):
        if not 0 <= self.r < self.d:
            raise ValueError(f"need 0 <= r < d, got r={self.r}, d={self.d}")
        alphas = tuple(self.alphas)
        if len(alphas) != self.d - self.r + 1:
            raise ValueError("need one class per codimension d..r")
        model = alphas[0].model
        if self.d > model.n:
            raise ValueError(f"d={self.d} exceeds dimension {model.n}")
        for i, a in zip(range(self.d, self.r - 1, -1), alphas):
            if not same_model(a.model, model):
                raise ValueError("degree system mixes varieties")
            if a.is_zero() or a.pure_codim() != i:
                raise ValueError(f"alpha_{i} must be a pure class of codimension {i}")
            if not cone_test(a, strict=True):
                raise ValueError(f"alpha_{i} is not ample")
        object.__setattr__(self, "alphas", alphas)

    @classmethod
    def from_dict(cls, alphas: Mapping[int, GradedClass]) -> "DegreeSystem":
        d, r = max(alphas), min(alphas)
        return cls(d, r, tuple(alphas[i] for i in range(d, r - 1, -1)))

    @property
    def model(self):
        return self.alphas[0].model

    def alpha(self, i: int) -> GradedClass:
        if not self.r <= i <= self.d:
            raise IndexError(i)
        return self.alphas[self.d - i]

    def truncated(self, s: int) -> "DegreeSystem":
        if not self.r <= s < self.d:
            raise ValueError(f"truncation level {s} outside [{self.r}, {self.d})")
        return DegreeSystem(self.d, s, self.alphas[: self.d - s + 1])

    def levels(self) -> range:
        return range(self.r, self.d + 1)


def classical_system(model, d: int | None = None, r: int = 0) -> DegreeSystem:
    """(h^d, ..., h^r) for the model's polarization h."""
    h = model.h()
    d = model.n if d is None else d
    powers = {0: model.one()}
    for i in range(1, d + 1):
        powers[i] = powers[i - 1] * h
    return DegreeSystem(d, r, tuple(powers[i] for i in range(d, r - 1, -1)))


@dataclass(frozen=True)
class HilbertPoly:
    """Polynomial in m with rational coefficients for degrees lo..hi."""

    lo: int
    hi: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        cs = tuple(to_fraction(c) for c in self.coeffs)
        if len(cs) != self.hi - self.lo + 1:
            raise ValueError("coefficient count does not match degree range")
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def from_map(cls, lo: int, hi: int, cmap: Mapping[int, Fraction]) -> "HilbertPoly":
        return cls(lo, hi, tuple(cmap.get(i, Fraction(0)) for i in range(lo, hi + 1)))

    def coeff(self, i: int) -> Fraction:
        if self.lo <= i <= self.hi:
            return self.coeffs[i - self.lo]
        return Fraction(0)

    def as_map(self) -> dict[int, Fraction]:
        return {i: self.coeff(i) for i in range(self.lo, self.hi + 1)}

    @property
    def degree(self) -> int | None:
        """Highest degree with a nonzero coefficient, None for the zero polynomial."""
        for i in range(self.hi, self.lo - 1, -1):
            if self.coeff(i) != 0:
                return i
        return None

    def is_zero(self) -> bool:
        return self.degree is None

    def __call__(self, m) -> Fraction:
        m = to_fraction(m)
        return sum((c * m ** i for i, c in self.as_map().items()), Fraction(0))

    def _combine(self, other: "HilbertPoly", sign: int) -> "HilbertPoly":
        lo, hi = min(self.lo, other.lo), max(self.hi, other.hi)
        return HilbertPoly.from_map(lo, hi, {i: self.coeff(i) + sign * other.coeff(i) for i in range(lo, hi + 1)})

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def scale(self, k) -> "HilbertPoly":
        k = to_fraction(k)
        return HilbertPoly(self.lo, self.hi, tuple(k * c for c in self.coeffs))

    def __str__(self):
        terms = []
        for i in range(self.hi, self.lo - 1, -1):
            c = self.coeff(i)
            if c:
                terms.append(f"{c}" + ("" if i == 0 else "*m" if i == 1 else f"*m^{i}"))
        return " + ".join(terms) or "0"


def hilbert_polynomial(gamma: SheafClass, alpha: DegreeSystem) -> HilbertPoly:
    """P_alpha(gamma, m) = sum_i deg_{alpha_i}(gamma) m^i / i!."""
    if not same_model(gamma.model, alpha.model):
        raise ValueError("class and degree system live on different varieties")
    if gamma.dim > alpha.d:
        raise ValueError(f"class of dimension {gamma.dim} exceeds top degree d={alpha.d}")
    return HilbertPoly(alpha.r, alpha.d, tuple(
        degree(gamma, alpha.alpha(i)) / factorial(i) for i in range(alpha.r, alpha.d + 1)))


def reduced_hilbert(gamma: SheafClass, alpha: DegreeSystem) -> HilbertPoly:
    """p_alpha = P_alpha / deg_{alpha_e}(gamma) with e = dim gamma."""
    e = gamma.dim
    if not alpha.r <= e <= alpha.d:
        raise ValueError(f"dimension {e} outside [{alpha.r}, {alpha.d}]")
    de = degree(gamma, alpha.alpha(e))
    if de == 0:
        raise ValueError(f"deg_alpha_{e} vanishes: class is not effective of dimension {e}")
    return hilbert_polynomial(gamma, alpha).scale(1 / de)


def truncate(p: HilbertPoly, s: int) -> HilbertPoly:
    """Upper truncation: keep the coefficients of m^hi .. m^s."""
    if not p.lo <= s <= p.hi:
        raise ValueError(f"truncation degree {s} outside [{p.lo}, {p.hi}]")
    return HilbertPoly(s, p.hi, p.coeffs[s - p.lo:])


def compare_asymptotic(p: HilbertPoly, q: HilbertPoly) -> Order:
    """Sign of p(m) - q(m) for all sufficiently large m."""
    diff = p - q
    deg = diff.degree
    if deg is None:
        return Order.EQUAL
    return Order.GREATER if diff.coeff(deg) > 0 else Order.LESS


def asymptotic_threshold(p: HilbertPoly, q: HilbertPoly) -> Fraction | None:
    """A rational M such that sign(p(m) - q(m)) is constant for m > M (Cauchy bound)."""
    diff = p - q
    deg = diff.degree
    if deg is None:
        return None
    lead = abs(diff.coeff(deg))
    return 1 + sum((abs(diff.coeff(i)) for i in range(diff.lo, deg)), Fraction(0)) / lead


class Rudakov(enum.Enum):
    PRECEDES = "precedes"
    EQUIVALENT = "equivalent"
    SUCCEEDS = "succeeds"
    INCOMPARABLE_ZERO = "incomparable-zero"


def rudakov_compare(g1: SheafClass, g2: SheafClass, alpha: DegreeSystem) -> Rudakov:
    """The preorder E < F iff deg P(E) > deg P(F), or equal degree and p(E) < p(F)."""
    P1, P2 = hilbert_polynomial(g1, alpha), hilbert_polynomial(g2, alpha)
    if P1.is_zero() or P2.is_zero():
        return Rudakov.INCOMPARABLE_ZERO
    if P1.degree != P2.degree:
        return Rudakov.PRECEDES if P1.degree > P2.degree else Rudakov.SUCCEEDS
    e = P1.degree
    p1 = P1.scale(1 / degree(g1, alpha.alpha(e)))
    p2 = P2.scale(1 / degree(g2, alpha.alpha(e)))
    return {Order.LESS: Rudakov.PRECEDES, Order.EQUAL: Rudakov.EQUIVALENT,
            Order.GREATER: Rudakov.SUCCEEDS}[compare_asymptotic(p1, p2)]


# ---------------------------------------------------------------------------
# verdicts


class Status(str, enum.Enum):
    STABLE = "stable"
    STRICTLY_SEMISTABLE = "strictly-semistable"
    UNSTABLE = "unstable"
    IMPURE_EXCLUDED = "impure-excluded"


@dataclass(frozen=True)
class Verdict:
    """Semistability relative to a finite candidate set (purity is not visible numerically)."""

    status: Status
    level: int
    destabilizers: tuple[tuple[object, str], ...] = ()
    skipped: tuple[tuple[object, str], ...] = ()

    @property
    def is_semistable(self) -> bool:
        return self.status in (Status.STABLE, Status.STRICTLY_SEMISTABLE)

    def signature(self):
        return (self.status, self.destabilizers)


def _candidate_items(candidates) -> list[tuple[object, SheafClass]]:
    if isinstance(candidates, Mapping):
        return list(candidates.items())
    items = list(candidates)
    if items and isinstance(items[0], tuple):
        return items
    return list(enumerate(items))


def is_semistable(gamma: SheafClass, alpha: DegreeSystem, candidates, mode: str = "sub",
                  level: int | None = None) -> Verdict:
    """(alpha, s)-semistability of ``gamma`` tested against candidate classes.

    In ``sub`` mode the candidates are subobject classes; in ``quotient`` mode
    each candidate Q is replaced by the kernel class gamma - Q.
    """
    if mode not in ("sub", "quotient"):
        raise ValueError(f"mode must be 'sub' or 'quotient', not {mode!r}")
    s = alpha.r if level is None else level
    d = alpha.d
    if not alpha.r <= s < d:
        raise ValueError(f"level {s} outside [{alpha.r}, {d})")
    if not same_model(gamma.model, alpha.model):
        raise ValueError("class and degree system live on different varieties")
    if gamma.dim != d:
        return Verdict(Status.IMPURE_EXCLUDED, s)
    top = alpha.alpha(d)
    dg = degree(gamma, top)
    if dg <= 0:
        raise ValueError(f"deg_alpha_d(gamma) = {dg} must be positive")
    sys_s = alpha.truncated(s)
    pg = hilbert_polynomial(gamma, sys_s).scale(1 / dg)

    hits, skipped = [], []
    for cid, cand in _candidate_items(candidates):
        if not same_model(cand.model, gamma.model):
            raise ValueError(f"candidate {cid!r} lives on a different variety")
        F = SheafClass(gamma.ch - cand.ch, d) if mode == "quotient" else cand
        if F.dim < d:
            skipped.append((cid, "lower-dimensional"))
            continue
        dF = degree(F, top)
        if not 0 < dF < dg:
            skipped.append((cid, "degree-out-of-range"))
            continue
        pF = hilbert_polynomial(F, sys_s).scale(1 / dF)
        cmp = compare_asymptotic(pF, pg)
        if cmp is Order.GREATER:
            hits.append((cid, "greater"))
        elif cmp is Order.EQUAL:
            hits.append((cid, "equal"))
    hits.sort(key=lambda t: _sort_key(t[0]))
    skipped.sort(key=lambda t: _sort_key(t[0]))
    if any(o == "greater" for _, o in hits):
        status = Status.UNSTABLE
    elif hits:
        status = Status.STRICTLY_SEMISTABLE
    else:
        status = Status.STABLE
    return Verdict(status, s, tuple(hits), tuple(skipped))


def _sort_key(cid):
    return (0, cid, "") if isinstance(cid, int) else (1, 0, str(cid))


# ---------------------------------------------------------------------------
# polynomial stability functions


@dataclass(frozen=True)
class PhaseWeights:
    """rho_0..rho_n as rational direction vectors (x_i, y_i) in the upper half plane.

    Only directions matter for the phase order; phases must strictly
    decrease with i, i.e. each rho_{i+1} lies clockwise of rho_i.
    """

    rays: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        rays = tuple((to_fraction(x), to_fraction(y)) for x, y in self.rays)
        for x, y in rays:
            if y <= 0:
                raise ValueError("every rho_i needs positive imaginary part (phase in (0, 1))")
        for (x0, y0), (x1, y1) in zip(rays, rays[1:]):
            if x0 * y1 - y0 * x1 >= 0:
                raise ValueError("phases must strictly decrease along rho_0, ..., rho_n")
        object.__setattr__(self, "rays", rays)

    @classmethod
    def standard(cls, n: int) -> "PhaseWeights":
        """rho_i = (i - n/2, 1): a simple strictly decreasing choice."""
        return cls(tuple((Fraction(2 * i - n, 2), Fraction(1)) for i in range(n + 1)))


def central_charge(gamma: SheafClass, alpha: DegreeSystem, rho: PhaseWeights):
    """Real and imaginary coefficient lists of Z(m) = sum rho_i deg_{alpha_i} m^i."""
    re, im = [], []
    for i in range(alpha.r, alpha.d + 1):
        dg = degree(gamma, alpha.alpha(i))
        x, y = rho.rays[i]
        re.append(x * dg)
        im.append(y * dg)
    return re, im


def bayer_phase_compare(g1: SheafClass, g2: SheafClass, alpha: DegreeSystem, rho: PhaseWeights) -> Order:
    """Sign of phi_{g1}(m) - phi_{g2}(m) for m >> 0, by exact cross products.

    cross(Z2(m), Z1(m)) is a polynomial in m; its leading sign is positive
    exactly when Z1 lies counterclockwise of Z2, i.e. has the larger phase.
    """
    if alpha.r != 0 or alpha.d != alpha.model.n:
        raise ValueError("phase comparison needs a complete degree system (d = n, r = 0)")
    if len(rho.rays) != alpha.d + 1:
        raise ValueError("need one weight per degree 0..n")
    if g1.is_zero() or g2.is_zero():
        raise ValueError("phase of the zero class is undefined")
    re1, im1 = central_charge(g1, alpha, rho)
    re2, im2 = central_charge(g2, alpha, rho)
    cross = [Fraction(0)] * (2 * alpha.d + 1)
    for i in range(alpha.d + 1):
        for j in range(alpha.d + 1):
            cross[i + j] += re2[i] * im1[j] - im2[i] * re1[j]
    for c in reversed(cross):
        if c:
            return Order.GREATER if c > 0 else Order.LESS
    return Order.EQUAL


def moduli_pgamma(gamma: SheafClass, F: SheafClass, alpha: DegreeSystem) -> HilbertPoly:
    """deg_{alpha_d}(gamma) P_alpha(F) - P_alpha(gamma) deg_{alpha_d}(F)."""
    top = alpha.alpha(alpha.d)
    dg = degree(gamma, top)
    if dg <= 0:
        raise ValueError(f"deg_alpha_d(gamma) = {dg} must be positive")
    return hilbert_polynomial(F, alpha).scale(dg) - hilbert_polynomial(gamma, alpha).scale(degree(F, top))


def slope(gamma: SheafClass, alpha_top: GradedClass, alpha_next: GradedClass) -> Fraction:
    return degree(gamma, alpha_next) / degree(gamma, alpha_top)


def sheaf(model, parts: Mapping[int, Sequence], dim: int | None = None) -> SheafClass:
    """Convenience constructor: ``sheaf(X, {0: [1], 1: [1, 0]})``; dim defaults to the effective one."""
    ch = model.graded(parts)
    if dim is None:
        ps = ch.support_codims()
        dim = model.n - ps[0] if ps else model.n
    return SheafClass(ch, dim)
