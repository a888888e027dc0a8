"""Graded numerical Chow rings with exact rational coefficients.

A :class:`VarietyModel` is pure data: per-codimension bases, a table of
structure constants, an integration functional on the top codimension, a
Todd class and the facet functionals cutting out each nef cone.  Everything
is a :class:`fractions.Fraction`; nothing in this package rounds.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence


class ModelError(ValueError):
    """Raised when variety data fails load-time validation."""


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError(f"refusing float {x!r}; pass an int, Fraction or 'p/q' string")
    return Fraction(x)


def frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# small exact linear algebra


def rref(rows: Sequence[Sequence[Fraction]]):
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[list[Fraction]]:
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    m, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction] | None:
    """Exact solution of a consistent system (any solution), or None."""
    n = len(rows[0]) if rows else 0
    aug = [list(r) + [Fraction(b)] for r, b in zip(rows, rhs)]
    m, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for i, pc in enumerate(pivots):
        x[pc] = m[i][n]
    return x


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


# ---------------------------------------------------------------------------
# graded classes


@dataclass(frozen=True, eq=False)
class GradedClass:
    """An element of the graded group sum_p N^p(X)_Q over ``model``'s bases."""

    model: "VarietyModel"
    components: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        comps = tuple(tuple(to_fraction(x) for x in c) for c in self.components)
        if len(comps) != self.model.n + 1:
            raise ValueError(f"expected {self.model.n + 1} components, got {len(comps)}")
        for p, (c, rk) in enumerate(zip(comps, self.model.ranks)):
            if len(c) != rk:
                raise ValueError(f"codim {p}: expected length {rk}, got {len(c)}")
        object.__setattr__(self, "components", comps)

    def __eq__(self, other):
        if not isinstance(other, GradedClass):
            return NotImplemented
        return same_model(self.model, other.model) and self.components == other.components

    def __hash__(self):
        return hash((self.model.name, self.components))

    def __getitem__(self, p: int) -> tuple[Fraction, ...]:
        return self.components[p]

    def _check(self, other: "GradedClass"):
        if not same_model(self.model, other.model):
            raise ValueError(f"classes live on different varieties: {self.model.name} vs {other.model.name}")

    def __add__(self, other):
        if not isinstance(other, GradedClass):
            return NotImplemented
        self._check(other)
        return GradedClass(self.model, tuple(
            tuple(a + b for a, b in zip(x, y)) for x, y in zip(self.components, other.components)))

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if not isinstance(other, GradedClass):
            return NotImplemented
        return self + (-other)

    def scale(self, k) -> "GradedClass":
        k = to_fraction(k)
        return GradedClass(self.model, tuple(tuple(k * a for a in c) for c in self.components))

    def __mul__(self, other):
        if isinstance(other, GradedClass):
            return multiply(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def is_zero(self) -> bool:
        return all(x == 0 for c in self.components for x in c)

    def support_codims(self) -> list[int]:
        return [p for p, c in enumerate(self.components) if any(x != 0 for x in c)]

    def pure_codim(self) -> int:
        """The single codimension carrying nonzero data (0 for the zero class)."""
        ps = self.support_codims()
        if len(ps) > 1:
            raise ValueError(f"class is not pure: nonzero in codimensions {ps}")
        return ps[0] if ps else 0

    def part(self, p: int) -> "GradedClass":
        return GradedClass(self.model, tuple(
            c if q == p else (Fraction(0),) * len(c) for q, c in enumerate(self.components)))

    def __repr__(self):
        terms = []
        for p, c in enumerate(self.components):
            for i, x in enumerate(c):
                if x != 0:
                    terms.append(f"{x}*{self.model.basis[p][i]}")
        return f"GradedClass({self.model.name}: {' + '.join(terms) or '0'})"


def same_model(a: "VarietyModel", b: "VarietyModel") -> bool:
    return a is b or (a.name == b.name and a.key() == b.key())


# ---------------------------------------------------------------------------
# the model


class VarietyModel:
    """Numerical Chow ring data for a smooth projective variety.

    ``products`` maps ``(p, q, i, j)`` to the coefficient vector of
    ``e_{p,i} * e_{q,j}`` in N^{p+q}.  Entries with ``p == 0`` (the unit) and
    the transposed entry of each given product are filled in; entries not
    given are zero.  Validation runs at construction and raises ModelError.
    """

    def __init__(self, name: str, n: int, ranks: Sequence[int], basis: Sequence[Sequence[str]],
                 products: dict, integration: Sequence, todd: Sequence[Sequence], euler_char,
                 nef_facets: Sequence[Sequence[Sequence]], polarization: Sequence | None = None):
        if n < 1:
            raise ModelError("dimension must be >= 1")
        self.name = name
        self.n = n
        self.ranks = tuple(int(r) for r in ranks)
        if len(self.ranks) != n + 1 or any(r < 1 for r in self.ranks):
            raise ModelError(f"ranks must be {n + 1} positive integers")
        if self.ranks[0] != 1:
            raise ModelError("rank of N^0 must be 1")
        self.basis = tuple(tuple(b) for b in basis)
        if [len(b) for b in self.basis] != list(self.ranks):
            raise ModelError("basis label lists do not match ranks")
        self.integration = tuple(to_fraction(x) for x in integration)
        if len(self.integration) != self.ranks[n]:
            raise ModelError("integration vector has wrong length")
        self.euler_char = to_fraction(euler_char)
        self.nef_facets = tuple(tuple(tuple(to_fraction(x) for x in f) for f in fs) for fs in nef_facets)
        if len(self.nef_facets) != n + 1:
            raise ModelError("need a nef facet list for every codimension")
        self.products = self._complete_products(products)
        self.todd = GradedClass(self, todd)
        self.polarization = None if polarization is None else tuple(to_fraction(x) for x in polarization)
        self._validate()

    # -- construction helpers

    def _complete_products(self, given: dict) -> dict:
        table = {}

        def put(key, vec):
            p, q, i, j = key
            vec = tuple(to_fraction(x) for x in vec)
            if p + q > self.n:
                if any(vec):
                    raise ModelError(f"product {key} lands above codim {self.n}")
                return
            if len(vec) != self.ranks[p + q]:
                raise ModelError(f"product {key}: coefficient vector must have length {self.ranks[p + q]}")
            if key in table and table[key] != vec:
                raise ModelError(f"product {key} given inconsistently (commutativity fails)")
            table[key] = vec

        for (p, q, i, j), vec in given.items():
            if not (0 <= p <= self.n and 0 <= q <= self.n and i < self.ranks[p] and j < self.ranks[q]):
                raise ModelError(f"product index {(p, q, i, j)} out of range")
            put((p, q, i, j), vec)
            put((q, p, j, i), vec)
        for q in range(self.n + 1):
            for j in range(self.ranks[q]):
                unit = tuple(Fraction(int(k == j)) for k in range(self.ranks[q]))
                put((0, q, 0, j), unit)
                put((q, 0, j, 0), unit)
        return table

    def _validate(self):
        # associativity on every basis triple
        for (p, i), (q, j), (s, k) in itertools.product(self._basis_index(), repeat=3):
            if p + q + s > self.n:
                continue
            a = multiply(multiply(self.basis_class(p, i), self.basis_class(q, j)), self.basis_class(s, k))
            b = multiply(self.basis_class(p, i), multiply(self.basis_class(q, j), self.basis_class(s, k)))
            if a != b:
                raise ModelError(f"associativity fails on {self.basis[p][i]}, {self.basis[q][j]}, {self.basis[s][k]}")
        if integrate(self.todd) != self.euler_char:
            raise ModelError(f"integral of Todd class is {integrate(self.todd)}, declared euler_char {self.euler_char}")
        if self.todd[0] != (Fraction(1),):
            raise ModelError("Todd class must start with 1")
        for p in range(self.n + 1):
            facets = self.nef_facets[p]
            if not facets:
                raise ModelError(f"codim {p}: empty nef facet list")
            if any(len(f) != self.ranks[p] for f in facets):
                raise ModelError(f"codim {p}: facet functional of wrong length")
            if nef_interior_point(self, p) is None:
                raise ModelError(f"codim {p}: nef cone is not full-dimensional")
        if self.polarization is not None:
            h = GradedClass(self, [self.polarization if p == 1 else zero_vec(r) for p, r in enumerate(self.ranks)])
            if not cone_test(h, strict=True):
                raise ModelError("polarization is not ample")

    def _basis_index(self):
        return [(p, i) for p in range(self.n + 1) for i in range(self.ranks[p])]

    def key(self):
        if getattr(self, "_key", None) is None:
            self._key = self._compute_key()
        return self._key

    def _compute_key(self):
        return (self.n, self.ranks, self.basis, tuple(sorted(self.products.items())), self.integration,
                self.todd.components, self.euler_char, self.nef_facets, self.polarization)

    def __eq__(self, other):
        if not isinstance(other, VarietyModel):
            return NotImplemented
        return self.name == other.name and self.key() == other.key()

    def __hash__(self):
        return hash((self.name, self.n, self.ranks))

    def __repr__(self):
        return f"VarietyModel({self.name!r}, n={self.n}, ranks={list(self.ranks)})"

    # -- class constructors

    def zero(self) -> GradedClass:
        return GradedClass(self, [zero_vec(r) for r in self.ranks])

    def one(self) -> GradedClass:
        return self.basis_class(0, 0)

    def basis_class(self, p: int, i: int) -> GradedClass:
        comps = [zero_vec(r) for r in self.ranks]
        comps[p] = tuple(Fraction(int(k == i)) for k in range(self.ranks[p]))
        return GradedClass(self, comps)

    def pure(self, p: int, coeffs: Sequence) -> GradedClass:
        comps = [zero_vec(r) for r in self.ranks]
        comps[p] = tuple(to_fraction(x) for x in coeffs)
        return GradedClass(self, comps)

    def graded(self, parts: dict) -> GradedClass:
        """Build a class from ``{codim: coefficient list}``; missing codims are zero."""
        comps = [zero_vec(r) for r in self.ranks]
        for p, coeffs in parts.items():
            comps[int(p)] = tuple(to_fraction(x) for x in coeffs)
        return GradedClass(self, comps)

    def label(self, name: str) -> GradedClass:
        for p, labels in enumerate(self.basis):
            if name in labels:
                return self.basis_class(p, labels.index(name))
        raise KeyError(name)

    def point(self) -> GradedClass:
        """The class integrating to 1 when the top rank is 1."""
        if self.ranks[self.n] != 1:
            raise ValueError("point class is only canonical when rank N^n = 1")
        return self.pure(self.n, [1 / self.integration[0]])

    def h(self) -> GradedClass:
        if self.polarization is None:
            raise ValueError(f"{self.name} has no distinguished polarization")
        return self.pure(1, self.polarization)


def zero_vec(r: int) -> tuple[Fraction, ...]:
    return (Fraction(0),) * r


# ---------------------------------------------------------------------------
# operations


def multiply(a: GradedClass, b: GradedClass) -> GradedClass:
    a._check(b)
    model = a.model
    out = [[Fraction(0)] * r for r in model.ranks]
    table = model.products
    for p, ca in enumerate(a.components):
        for i, x in enumerate(ca):
            if x == 0:
                continue
            for q in range(model.n + 1 - p):
                for j, y in enumerate(b.components[q]):
                    if y == 0:
                        continue
                    vec = table.get((p, q, i, j))
                    if vec is None:
                        continue
                    xy = x * y
                    row = out[p + q]
                    for k, c in enumerate(vec):
                        if c:
                            row[k] += xy * c
    return GradedClass(model, out)


def integrate(a: GradedClass) -> Fraction:
    return dot(a.model.integration, a.components[a.model.n])


def degree(gamma, alpha: GradedClass) -> Fraction:
    """deg_alpha(gamma) = integral of ch(gamma) * alpha * Todd.

    ``gamma`` may be a SheafClass or a bare Chern character.
    """
    ch = gamma.ch if isinstance(gamma, SheafClass) else gamma
    alpha.pure_codim()
    return integrate(multiply(multiply(ch, alpha), alpha.model.todd))


def degree_functional(gamma, p: int) -> tuple[Fraction, ...]:
    """Coefficients of alpha -> deg_alpha(gamma) on the basis of N^p."""
    ch = gamma.ch if isinstance(gamma, SheafClass) else gamma
    model = ch.model
    chtd = multiply(ch, model.todd)
    return tuple(integrate(multiply(chtd, model.basis_class(p, i))) for i in range(model.ranks[p]))


def cone_test(alpha: GradedClass, strict: bool = True) -> bool:
    """Nef (strict=False) or ample (strict=True) membership of a pure class."""
    p = alpha.pure_codim()
    vec = alpha.components[p]
    vals = [dot(f, vec) for f in alpha.model.nef_facets[p]]
    return all(v > 0 for v in vals) if strict else all(v >= 0 for v in vals)


def nef_rays(model: VarietyModel, p: int) -> list[tuple[Fraction, ...]]:
    """Extreme rays of the facet-defined cone in N^p (pointed cones only)."""
    facets = model.nef_facets[p]
    k = model.ranks[p]
    rays = []
    for sub in itertools.combinations(range(len(facets)), k - 1):
        ns = nullspace([facets[t] for t in sub], k)
        if len(ns) != 1:
            continue
        for r in (ns[0], [-x for x in ns[0]]):
            if all(dot(f, r) >= 0 for f in facets):
                scale = max(abs(x) for x in r)
                r = tuple(x / scale for x in r)
                if r not in rays:
                    rays.append(r)
    return rays


def nef_interior_point(model: VarietyModel, p: int) -> tuple[Fraction, ...] | None:
    rays = nef_rays(model, p)
    if not rays:
        return None
    w = tuple(sum(c) for c in zip(*rays))
    if all(dot(f, w) > 0 for f in model.nef_facets[p]):
        return w
    return None


# ---------------------------------------------------------------------------
# numerical sheaf classes


@dataclass(frozen=True)
class SheafClass:
    """A numerical class given by its Chern character and a support dimension."""

    ch: GradedClass
    dim: int

    def __post_init__(self):
        n = self.ch.model.n
        if not 0 <= self.dim <= n:
            raise ValueError(f"dimension {self.dim} outside 0..{n}")
        for p in range(n - self.dim):
            if any(x != 0 for x in self.ch[p]):
                raise ValueError(
                    f"a {self.dim}-dimensional class must have zero Chern character in codim {p}")

    @property
    def model(self) -> VarietyModel:
        return self.ch.model

    def __add__(self, other: "SheafClass") -> "SheafClass":
        return SheafClass(self.ch + other.ch, max(self.dim, other.dim))

    def __sub__(self, other: "SheafClass") -> "SheafClass":
        return SheafClass(self.ch - other.ch, max(self.dim, other.dim))

    def scale(self, k) -> "SheafClass":
        return SheafClass(self.ch.scale(k), self.dim)

    def __rmul__(self, k):
        return self.scale(k)

    def is_zero(self) -> bool:
        return self.ch.is_zero()

    def effective_dim(self) -> int:
        """n minus the lowest codimension with nonzero Chern character (-1 for zero)."""
        ps = self.ch.support_codims()
        return self.model.n - ps[0] if ps else -1

    def with_effective_dim(self) -> "SheafClass":
        return SheafClass(self.ch, max(self.effective_dim(), 0))


# ---------------------------------------------------------------------------
# dual-polytope bounds


EMPTY = "empty"


@dataclass(frozen=True)
class DualPolytopeBounds:
    intervals: tuple[tuple[Fraction, Fraction], ...] | None = field(default=None)

    @property
    def empty(self) -> bool:
        return self.intervals is None

    def contains(self, b: Sequence[Fraction]) -> bool:
        if self.intervals is None:
            return False
        return all(lo <= x <= hi for (lo, hi), x in zip(self.intervals, b))


def bound_dual_polytope(a: Sequence, lower: Sequence, upper) -> DualPolytopeBounds:
    """Coordinate box for {f : f(e_j) >= c_j, f(v) <= c} with v = sum a_j e_j.

    In the dual basis f = sum b_j e_j^*, so the constraints read b_j >= c_j
    and sum a_j b_j <= c, giving c_j <= b_j <= (c - sum_{i != j} a_i c_i) / a_j.
    """
    a = [to_fraction(x) for x in a]
    cs = [to_fraction(x) for x in lower]
    c = to_fraction(upper)
    if len(a) != len(cs) or not a:
        raise ValueError("need matching nonempty coefficient lists")
    if any(x <= 0 for x in a):
        raise ValueError("all coefficients a_j of v must be positive")
    total = sum((ai * ci for ai, ci in zip(a, cs)), Fraction(0))
    out = []
    for aj, cj in zip(a, cs):
        hi = (c - (total - aj * cj)) / aj
        if hi < cj:
            return DualPolytopeBounds(None)
        out.append((cj, hi))
    return DualPolytopeBounds(tuple(out))

