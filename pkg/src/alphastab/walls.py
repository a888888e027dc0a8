"""Walls and chambers for the variation of alpha-semistability.

The parameter space is a product of affine sections Sigma_j = Amp^j(X) cut
by {ell_j = 1}, one per codimension j = d..r, each with an affine chart.
A point is a dict ``{codim: chart coordinates}``.  For a destabilizer F and
level s the wall is the zero set of

    deg_{alpha_s}(F) deg_{alpha_d}(gamma) - deg_{alpha_s}(gamma) deg_{alpha_d}(F),

which is bilinear in the affine chart coordinates of Sigma_d and Sigma_s and
is stored as a coefficient matrix over (1, x_d) x (1, y_s).
"""
from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .numring import (GradedClass, SheafClass, VarietyModel, cone_test, degree_functional, dot, nef_rays, rref,
                      solve, to_fraction)
from .stability import DegreeSystem, _candidate_items, is_semistable
from .surd import Surd, quadratic_roots, rational_between

log = logging.getLogger(__name__)

Point = Mapping[int, tuple]


# ---------------------------------------------------------------------------
# sections and regions


@dataclass(frozen=True)
class SectionFrame:
    """The affine hyperplane {ell = 1} in N^j with chart origin + sum t_k directions_k."""

    model: VarietyModel = field(repr=False)
    codim: int
    ell: tuple
    origin: tuple
    directions: tuple

    def __post_init__(self):
        ell = tuple(to_fraction(x) for x in self.ell)
        origin = tuple(to_fraction(x) for x in self.origin)
        dirs = tuple(tuple(to_fraction(x) for x in v) for v in self.directions)
        rk = self.model.ranks[self.codim]
        if len(ell) != rk or len(origin) != rk or any(len(v) != rk for v in dirs):
            raise ValueError(f"codim {self.codim}: section data must have length {rk}")
        if dot(ell, origin) != 1:
            raise ValueError(f"codim {self.codim}: chart origin is not on ell = 1")
        if any(dot(ell, v) != 0 for v in dirs):
            raise ValueError(f"codim {self.codim}: chart directions must be parallel to the section")
        if len(dirs) != rk - 1 or (dirs and len(rref(dirs)[1]) != rk - 1):
            raise ValueError(f"codim {self.codim}: need {rk - 1} independent chart directions")
        if not any(dot(ell, ray) > 0 for ray in nef_rays(self.model, self.codim)):
            raise ValueError(f"codim {self.codim}: section misses the ample cone")
        object.__setattr__(self, "ell", ell)
        object.__setattr__(self, "origin", origin)
        object.__setattr__(self, "directions", dirs)

    @classmethod
    def standard(cls, model: VarietyModel, codim: int, ell: Sequence) -> "SectionFrame":
        """Chart pivoting on the last nonzero entry k of ell: origin e_k / ell_k, directions e_i - (ell_i/ell_k) e_k."""
        ell = tuple(to_fraction(x) for x in ell)
        rk = len(ell)
        k = max(i for i, x in enumerate(ell) if x != 0)
        origin = tuple(Fraction(int(i == k)) / ell[k] for i in range(rk))
        dirs = []
        for i in range(rk):
            if i == k:
                continue
            v = [Fraction(0)] * rk
            v[i] = Fraction(1)
            v[k] = -ell[i] / ell[k]
            dirs.append(tuple(v))
        return cls(model, codim, ell, origin, tuple(dirs))

    @property
    def dim(self) -> int:
        return len(self.directions)

    def to_ambient(self, chart: Sequence) -> tuple:
        out = list(self.origin)
        for t, v in zip(chart, self.directions):
            for i, x in enumerate(v):
                out[i] += to_fraction(t) * x
        return tuple(out)

    def to_chart(self, ambient: Sequence) -> tuple:
        ambient = tuple(to_fraction(x) for x in ambient)
        if dot(self.ell, ambient) != 1:
            raise ValueError(f"codim {self.codim}: point {ambient} is not on the section ell = 1")
        if not self.directions:
            return ()
        rows = [list(col) for col in zip(*self.directions)]
        rhs = [a - o for a, o in zip(ambient, self.origin)]
        sol = solve(rows, rhs)
        if sol is None:
            raise ValueError("point not in the chart")
        return tuple(sol)

    def affine_functional(self, functional: Sequence) -> tuple:
        """Coefficients (c_0, c_1, ...) with functional(to_ambient(t)) = c_0 + sum c_k t_k."""
        return (dot(functional, self.origin),) + tuple(dot(functional, v) for v in self.directions)


class ParameterSpace:
    """Sigma = Sigma_d x ... x Sigma_r with one SectionFrame per codimension."""

    def __init__(self, model: VarietyModel, d: int, r: int, frames: Mapping[int, SectionFrame]):
        if not 0 <= r < d <= model.n:
            raise ValueError("need 0 <= r < d <= n")
        self.model, self.d, self.r = model, d, r
        missing = [j for j in range(r, d + 1) if j not in frames]
        if missing:
            raise ValueError(f"missing sections for codimensions {missing}")
        self.frames = {j: frames[j] for j in range(d, r - 1, -1)}

    @classmethod
    def standard(cls, model: VarietyModel, d: int, r: int, ells: Mapping[int, Sequence] | None = None):
        ells = ells or {}
        frames = {}
        for j in range(r, d + 1):
            ell = ells.get(j)
            if ell is None:
                ell = default_ell(model, j)
            frames[j] = SectionFrame.standard(model, j, ell)
        return cls(model, d, r, frames)

    @property
    def codims(self) -> list[int]:
        return list(self.frames)

    def coords(self) -> list[tuple[int, int]]:
        return [(j, k) for j, fr in self.frames.items() for k in range(fr.dim)]

    @property
    def total_dim(self) -> int:
        return len(self.coords())

    def flatten(self, point: Point) -> tuple:
        return tuple(point[j][k] for j, k in self.coords())

    def unflatten(self, flat: Sequence) -> dict:
        out = {j: [] for j in self.frames}
        for (j, _), x in zip(self.coords(), flat):
            out[j].append(to_fraction(x))
        return {j: tuple(v) for j, v in out.items()}

    def ambient(self, point: Point, j: int) -> GradedClass:
        return self.model.pure(j, self.frames[j].to_ambient(point[j]))

    def point_from_ambient(self, ambient: Mapping[int, Sequence]) -> dict:
        return {j: fr.to_chart(ambient[j]) for j, fr in self.frames.items()}

    def degree_system(self, point: Point) -> DegreeSystem:
        return DegreeSystem(self.d, self.r, tuple(self.ambient(point, j) for j in self.frames))


def default_ell(model: VarietyModel, p: int) -> tuple:
    """A default normalization functional: the sum of the facet functionals."""
    facets = model.nef_facets[p]
    return tuple(sum(c) for c in zip(*facets))


class CompactRegion:
    """K = product of polytopes K_j in Sigma_j given by chart vertex lists."""

    def __init__(self, space: ParameterSpace, vertices: Mapping[int, Sequence[Sequence]]):
        self.space = space
        self.vertices = {}
        for j in space.codims:
            verts = vertices.get(j)
            if verts is None:
                fr = space.frames[j]
                if fr.dim:
                    raise ValueError(f"codim {j}: need vertices for a {fr.dim}-dimensional section")
                verts = [()]
            verts = [tuple(to_fraction(x) for x in v) for v in verts]
            if not verts:
                raise ValueError(f"codim {j}: empty vertex list")
            for v in verts:
                if len(v) != space.frames[j].dim:
                    raise ValueError(f"codim {j}: vertex {v} has wrong chart dimension")
                if not cone_test(space.model.pure(j, space.frames[j].to_ambient(v)), strict=True):
                    raise ValueError(f"codim {j}: vertex {v} is not ample")
            self.vertices[j] = verts

    @classmethod
    def from_ambient(cls, space: ParameterSpace, vertices: Mapping[int, Sequence[Sequence]]):
        return cls(space, {j: [space.frames[j].to_chart(v) for v in vs] for j, vs in vertices.items()})

    def vertex_points(self, codims=None) -> list[dict]:
        codims = list(self.vertices) if codims is None else list(codims)
        return [dict(zip(codims, combo)) for combo in itertools.product(*(self.vertices[j] for j in codims))]

    def sample(self, rng: random.Random) -> dict:
        out = {}
        for j, verts in self.vertices.items():
            w = [rng.randint(0, 1000) for _ in verts]
            if not any(w):
                w[rng.randrange(len(w))] = 1
            tot = sum(w)
            dim = len(verts[0])
            out[j] = tuple(sum((Fraction(wi) * v[k] for wi, v in zip(w, verts)), Fraction(0)) / tot
                           for k in range(dim))
        return out

    def factor_grid(self, j: int, density: int) -> list[tuple]:
        verts = self.vertices[j]
        if len(verts) == 1:
            return [verts[0]]
        pts = set()
        for comp in _compositions(density, len(verts)):
            pts.add(tuple(sum((Fraction(c, density) * v[k] for c, v in zip(comp, verts)), Fraction(0))
                          for k in range(len(verts[0]))))
        return sorted(pts)

    def grid(self, density: int) -> list[dict]:
        codims = list(self.vertices)
        grids = [self.factor_grid(j, density) for j in codims]
        return [dict(zip(codims, combo)) for combo in itertools.product(*grids)]

    def bounds(self) -> list[tuple[Fraction, Fraction]]:
        """Per flattened coordinate (min, max) over the vertices."""
        out = []
        for j, k in self.space.coords():
            vals = [v[k] for v in self.vertices[j]]
            out.append((min(vals), max(vals)))
        return out


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _sample_rng(seed: int, index: int) -> random.Random:
    return random.Random(f"{seed}/{index}")


# ---------------------------------------------------------------------------
# extrema of f(x)/g(y) over products of polytopes


def ratio_vertex_extrema(f: Sequence, g: Sequence, xs: Sequence[Sequence], ys: Sequence[Sequence]):
    """(min, max) of f(x) / g(y) over vertex pairs; f, g affine as (c0, c1, ...), g > 0 on conv(ys).

    f(x)/g(y) is affine in x for fixed y and a monotone function of g(y) for
    fixed x, so both extrema over conv(xs) x conv(ys) sit at vertex pairs.
    """
    vals = []
    for x in xs:
        fx = f[0] + dot(f[1:], x)
        for y in ys:
            gy = g[0] + dot(g[1:], y)
            if gy <= 0:
                raise ValueError("denominator must be positive on the polytope")
            vals.append(fx / gy)
    return min(vals), max(vals)


# ---------------------------------------------------------------------------
# candidate enumeration


@dataclass(frozen=True)
class BoxCoord:
    codim: int
    index: int
    lo: Fraction
    hi: Fraction
    step: Fraction = Fraction(1)

    def values(self) -> list[Fraction]:
        lo, hi, st = to_fraction(self.lo), to_fraction(self.hi), to_fraction(self.step)
        if st <= 0:
            raise ValueError("box step must be positive")
        out, x = [], lo
        while x <= hi:
            out.append(x)
            x += st
        return out


def box_classes(model: VarietyModel, box: Sequence[BoxCoord], dim: int) -> list[SheafClass]:
    """All lattice classes in the box; coordinates not listed are zero."""
    if not box:
        raise ValueError("empty box")
    axes = [c.values() for c in box]
    if any(not a for a in axes):
        raise ValueError("empty box")
    out = []
    for combo in itertools.product(*axes):
        parts = {p: [Fraction(0)] * model.ranks[p] for p in range(model.n + 1)}
        for c, x in zip(box, combo):
            parts[c.codim][c.index] = x
        try:
            out.append(SheafClass(model.graded(parts), dim))
        except ValueError:
            continue
    return out


def _top_degrees(cls: SheafClass, region: CompactRegion, j: int) -> list[Fraction]:
    func = degree_functional(cls, j)
    fr = region.space.frames[j]
    return [dot(func, fr.to_ambient(v)) for v in region.vertices[j]]


def _uniformly_admissible(F: SheafClass, gamma: SheafClass, region: CompactRegion) -> bool:
    """0 < deg_{alpha_d}(F) < deg_{alpha_d}(gamma) on all of K_d (checked at its vertices)."""
    d = region.space.d
    return all(0 < f < g for f, g in zip(_top_degrees(F, region, d), _top_degrees(gamma, region, d)))


def enumerate_candidates(gamma: SheafClass, region: CompactRegion, box: Sequence[BoxCoord],
                         M: Fraction | None = None) -> list[SheafClass]:
    """Box classes that can weakly slope-destabilize gamma somewhere on K.

    Keeps F when 0 < deg_{alpha_d}(F) < deg_{alpha_d}(gamma) on K_d and the
    minimum over vertex pairs of mu(F) = deg_{alpha_{d-1}}(F) / deg_{alpha_d}(F)
    is at most M, by default the maximum of mu(gamma) over K.
    """
    space = region.space
    d = space.d
    fd, fn = space.frames[d], space.frames[d - 1]
    Kd, Kn = region.vertices[d], region.vertices.get(d - 1)
    if Kn is None:
        raise ValueError("region needs a factor in codimension d - 1")
    if any(x <= 0 for x in _top_degrees(gamma, region, d)):
        raise ValueError("gamma has nonpositive top degree at a vertex of K_d")
    if M is None:
        g_top = fd.affine_functional(degree_functional(gamma, d))
        g_next = fn.affine_functional(degree_functional(gamma, d - 1))
        M = ratio_vertex_extrema(g_next, g_top, Kn, Kd)[1]
    M = to_fraction(M)
    kept = []
    for F in box_classes(space.model, box, gamma.dim):
        if not _uniformly_admissible(F, gamma, region):
            continue
        f_top = fd.affine_functional(degree_functional(F, d))
        f_next = fn.affine_functional(degree_functional(F, d - 1))
        if ratio_vertex_extrema(f_next, f_top, Kn, Kd)[0] <= M:
            kept.append(F)
    return kept


# ---------------------------------------------------------------------------
# walls


@dataclass(frozen=True)
class Wall:
    level: int
    top: int
    matrix: tuple  # rows: (1, x_top...), columns: (1, y_level...)
    sources: tuple = ()

    @property
    def is_bilinear(self) -> bool:
        return any(self.matrix[a][b] != 0 for a in range(1, len(self.matrix))
                   for b in range(1, len(self.matrix[0])))

    def depends_on(self) -> set[int]:
        """Codimensions whose chart coordinates appear in the equation."""
        out = set()
        if any(x != 0 for row in self.matrix[1:] for x in row):
            out.add(self.top)
        if any(row[b] != 0 for row in self.matrix for b in range(1, len(row))):
            out.add(self.level)
        return out

    def evaluate(self, point: Point) -> Fraction:
        X = (Fraction(1),) + tuple(point[self.top])
        Y = (Fraction(1),) + tuple(point[self.level])
        return sum((X[a] * self.matrix[a][b] * Y[b] for a in range(len(X)) for b in range(len(Y))), Fraction(0))

    def normalized(self) -> tuple:
        first = next(x for row in self.matrix for x in row if x != 0)
        return tuple(tuple(x / first for x in row) for row in self.matrix)

    def key(self):
        return (self.top, self.level, self.normalized())

    def restrict(self, p0: Point, p1: Point) -> tuple[Fraction, Fraction, Fraction]:
        """Coefficients (c0, c1, c2) of t -> evaluate((1-t) p0 + t p1)."""
        X = [(Fraction(1), Fraction(0))] + [(a, b - a) for a, b in zip(p0[self.top], p1[self.top])]
        Y = [(Fraction(1), Fraction(0))] + [(a, b - a) for a, b in zip(p0[self.level], p1[self.level])]
        c = [Fraction(0)] * 3
        for a, (x0, x1) in enumerate(X):
            for b, (y0, y1) in enumerate(Y):
                m = self.matrix[a][b]
                if m:
                    c[0] += m * x0 * y0
                    c[1] += m * (x0 * y1 + x1 * y0)
                    c[2] += m * x1 * y1
        return tuple(c)


def build_wall(gamma: SheafClass, F: SheafClass, s: int, space: ParameterSpace, source=None) -> Wall | None:
    """The wall omega_{s,F}, or None when the form vanishes identically (null wall)."""
    d = space.d
    if not space.r <= s < d:
        raise ValueError(f"level {s} outside [{space.r}, {d})")
    fd, fs = space.frames[d], space.frames[s]
    A_g = fd.affine_functional(degree_functional(gamma, d))
    A_F = fd.affine_functional(degree_functional(F, d))
    B_g = fs.affine_functional(degree_functional(gamma, s))
    B_F = fs.affine_functional(degree_functional(F, s))
    matrix = tuple(tuple(A_g[a] * B_F[b] - A_F[a] * B_g[b] for b in range(len(B_g))) for a in range(len(A_g)))
    if all(x == 0 for row in matrix for x in row):
        return None
    return Wall(s, d, matrix, () if source is None else ((source, s),))


@dataclass
class WallSystem:
    walls: list[Wall] = field(default_factory=list)
    null: list = field(default_factory=list)
    excluded: list = field(default_factory=list)
    pruning: str = "all"

    def __len__(self):
        return len(self.walls)

    def __iter__(self):
        return iter(self.walls)

    @property
    def bilinear(self) -> bool:
        return any(w.is_bilinear for w in self.walls)

    def by_level(self) -> dict[int, list[Wall]]:
        out = {}
        for w in self.walls:
            out.setdefault(w.level, []).append(w)
        return out

    def add(self, wall: Wall):
        key = wall.key()
        for i, w in enumerate(self.walls):
            if w.key() == key:
                self.walls[i] = Wall(w.level, w.top, w.matrix, w.sources + wall.sources)
                return
        self.walls.append(Wall(wall.level, wall.top, wall.normalized(), wall.sources))


def _as_quotient(gamma: SheafClass, F: SheafClass, mode: str) -> SheafClass:
    return F if mode == "quotient" else SheafClass(gamma.ch - F.ch, gamma.dim)


def split_candidates(gamma: SheafClass, region: CompactRegion, candidates, mode: str = "sub"):
    """(usable, excluded): usable candidates are admissible on all of K_d."""
    usable, excluded = [], []
    for cid, F in _candidate_items(candidates):
        sub = F if mode == "sub" else SheafClass(gamma.ch - F.ch, gamma.dim)
        (usable if _uniformly_admissible(sub, gamma, region) else excluded).append((cid, F))
    return usable, excluded


def strata(gamma: SheafClass, F: SheafClass, region: CompactRegion, grid: int = 3, mode: str = "sub") -> set[int]:
    """Sampled D_s membership: levels s where the quotient strictly (alpha, s)-destabilizes somewhere."""
    space = region.space
    Q = _as_quotient(gamma, F, mode)
    pts = region.vertex_points() + region.grid(grid)
    found = set()
    for pt in pts:
        alpha = space.degree_system(pt)
        for s in range(space.d - 1, space.r - 1, -1):
            if s in found:
                continue
            v = is_semistable(gamma, alpha, [Q], mode="quotient", level=s)
            # quotient Q destabilizes iff the kernel gamma - Q compares greater
            if v.status.value == "unstable":
                found.add(s)
    return found


def wall_system(gamma: SheafClass, region: CompactRegion, candidates, pruning: str = "all",
                grid: int = 3, mode: str = "sub") -> WallSystem:
    """Walls for every usable candidate; ``stratified`` keeps only omega_{s,F} for the top stratum of F."""
    if pruning not in ("all", "stratified"):
        raise ValueError(f"unknown pruning {pruning!r}")
    space = region.space
    usable, excluded = split_candidates(gamma, region, candidates, mode)
    system = WallSystem(pruning=pruning, excluded=[cid for cid, _ in excluded])
    for cid, _ in excluded:
        log.warning("candidate %r is not admissible on all of K_d; excluded", cid)
    for cid, F in usable:
        if pruning == "all":
            levels = range(space.d - 1, space.r - 1, -1)
        else:
            st = strata(gamma, F, region, grid, mode)
            levels = [max(st)] if st else []
        for s in levels:
            w = build_wall(gamma, F, s, space, source=cid)
            if w is None:
                system.null.append((cid, s))
                log.info("null wall for candidate %r at level %d", cid, s)
            else:
                system.add(w)
    assert len(system) <= len(usable) * (space.d - space.r)
    return system


# ---------------------------------------------------------------------------
# chambers


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def sign_vector(point: Point, walls) -> tuple[int, ...]:
    return tuple(_sgn(w.evaluate(point)) for w in walls)


def sign_string(signs: Sequence[int]) -> str:
    return "".join("+" if s > 0 else "-" if s < 0 else "0" for s in signs)


@dataclass(frozen=True)
class Chamber:
    signs: tuple[int, ...]
    point: dict
    hits: int = 1


def sample_chambers(walls, region: CompactRegion, n_samples: int, seed: int = 0) -> list[Chamber]:
    """Distinct off-wall sign vectors among seeded samples of K, one representative each."""
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    walls = list(walls)
    found: dict[tuple, list] = {}
    for i in range(n_samples):
        pt = region.sample(_sample_rng(seed, i))
        sv = sign_vector(pt, walls)
        if 0 in sv:
            continue
        if sv in found:
            found[sv][1] += 1
        else:
            found[sv] = [pt, 1]
    return [Chamber(sv, pt, hits) for sv, (pt, hits) in sorted(found.items(), key=lambda t: sign_string(t[0]))]


def verdict_signature(gamma: SheafClass, space: ParameterSpace, point: Point, candidates, mode: str = "sub"):
    """Per level s = d-1 .. r: (status, destabilizers)."""
    alpha = space.degree_system(point)
    return tuple((s,) + is_semistable(gamma, alpha, candidates, mode=mode, level=s).signature()
                 for s in range(space.d - 1, space.r - 1, -1))


@dataclass
class ConstancyReport:
    samples: int
    on_wall: int
    chambers: int
    pairs_checked: int
    violations: list
    excluded: list
    bilinear: bool

    @property
    def ok(self) -> bool:
        return not self.violations


def verdict_constancy_check(gamma: SheafClass, walls, region: CompactRegion, candidates, samples: int = 500,
                            seed: int = 0, mode: str = "sub") -> ConstancyReport:
    """Seeded samples with equal sign vectors must share every level's verdict."""
    walls = list(walls)
    usable, excluded = split_candidates(gamma, region, candidates, mode)
    groups: dict[tuple, list] = {}
    on_wall = 0
    for i in range(samples):
        pt = region.sample(_sample_rng(seed, i))
        sv = sign_vector(pt, walls)
        if 0 in sv:
            on_wall += 1
            continue
        groups.setdefault(sv, []).append(pt)
    violations, pairs = [], 0
    for sv, pts in sorted(groups.items(), key=lambda t: sign_string(t[0])):
        ref = verdict_signature(gamma, region.space, pts[0], usable, mode)
        for pt in pts[1:]:
            pairs += 1
            sig = verdict_signature(gamma, region.space, pt, usable, mode)
            if sig != ref:
                violations.append((sign_string(sv), pts[0], pt, ref, sig))
    bilinear = any(w.is_bilinear for w in walls)
    return ConstancyReport(samples, on_wall, len(groups), pairs, violations,
                           [cid for cid, _ in excluded], bilinear)


# ---------------------------------------------------------------------------
# crossings along a segment


@dataclass(frozen=True)
class CrossingEvent:
    wall: int
    t: Surd
    multiplicity: int
    before: tuple
    after: tuple


def wall_crossing_report(gamma: SheafClass, segment: tuple[Point, Point], walls, space: ParameterSpace,
                         candidates, mode: str = "sub") -> list[CrossingEvent]:
    p0, p1 = segment
    walls = list(walls)
    space.degree_system(p0)
    space.degree_system(p1)
    roots = []
    for wi, w in enumerate(walls):
        c0, c1, c2 = w.restrict(p0, p1)
        if c0 == 0 or c0 + c1 + c2 == 0:
            raise ValueError(f"segment endpoint lies on wall {wi}")
        for t, mult in quadratic_roots(c0, c1, c2):
            if t.cmp(0) > 0 and t.cmp(1) < 0:
                roots.append((t, wi, mult))
    roots.sort(key=lambda e: (e[0], e[1]))
    distinct = []
    for t, _, _ in roots:
        if not distinct or distinct[-1] != t:
            distinct.append(t)
    bounds = [Surd(Fraction(0))] + distinct + [Surd(Fraction(1))]
    mids = [rational_between(a, b) for a, b in zip(bounds, bounds[1:])]

    def at(t: Fraction) -> dict:
        return {j: tuple(a + t * (b - a) for a, b in zip(p0[j], p1[j])) for j in p0}

    sigs = [verdict_signature(gamma, space, at(m), candidates, mode) for m in mids]
    events = []
    for t, wi, mult in roots:
        k = distinct.index(t)
        events.append(CrossingEvent(wi, t, mult, sigs[k], sigs[k + 1]))
    return events

