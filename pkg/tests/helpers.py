"""Shared constructors for tests."""
from __future__ import annotations

import math
import random
from fractions import Fraction as Fr
from pathlib import Path

from alphastab import SheafClass, example_threefold, projective_space
from alphastab.stability import DegreeSystem

ROOT = Path(__file__).resolve().parent.parent
INSTANCES = ROOT / "instances"


def exp_class(X, D):
    """ch(O(D)) = exp(D) for a divisor class D."""
    Dc, out, pw = X.pure(1, D), X.one(), X.one()
    for k in range(1, X.n + 1):
        pw = pw * Dc
        out = out + pw.scale(Fr(1, math.factorial(k)))
    return out


def rand_frac(rng: random.Random, lo=-6, hi=6, den=4) -> Fr:
    return Fr(rng.randint(lo * den, hi * den), rng.randint(1, den))


def rand_pos(rng: random.Random, hi=5, den=4) -> Fr:
    return Fr(rng.randint(1, hi * den), rng.randint(1, den))


def p2_system(rng: random.Random) -> DegreeSystem:
    X = projective_space(2)
    return DegreeSystem(2, 0, (X.pure(2, [rand_pos(rng)]), X.pure(1, [rand_pos(rng)]), X.pure(0, [rand_pos(rng)])))


def threefold_system(rng: random.Random) -> DegreeSystem:
    """A complete degree system of ample classes: a f + b xi with a > b > 0, u f xi + v xi^2 with u > v > 0."""
    X = example_threefold()
    b, v = rand_pos(rng), rand_pos(rng)
    a1 = X.pure(1, [b + rand_pos(rng), b])
    a2 = X.pure(2, [v + rand_pos(rng), v])
    return DegreeSystem(3, 0, (X.pure(3, [rand_pos(rng)]), a2, a1, X.pure(0, [rand_pos(rng)])))


def rand_class(rng: random.Random, X, dim: int) -> SheafClass:
    """Random class of dimension ``dim``: zero below codim n - dim, random above."""
    n = X.n
    parts = {}
    for p in range(n + 1):
        if p < n - dim:
            parts[p] = [0] * X.ranks[p]
        else:
            parts[p] = [rand_frac(rng) for _ in range(X.ranks[p])]
    return SheafClass(X.graded(parts), dim)


def rand_effective(rng: random.Random, alpha: DegreeSystem, dim: int) -> SheafClass:
    """Random class of dimension ``dim`` with deg_{alpha_dim} > 0."""
    from alphastab import degree
    X = alpha.model
    while True:
        F = rand_class(rng, X, dim)
        if degree(F, alpha.alpha(dim)) > 0:
            return F


# ---------------------------------------------------------------------------
# finite subobject lattices on P^2


def rand_factor(rng: random.Random, X) -> SheafClass:
    """Random rank-positive class on P^2; generic enough that reduced polynomials rarely tie."""
    r = rng.randint(1, 3)
    return SheafClass(X.graded({0: [r], 1: [rand_frac(rng, -8, 8, 3)], 2: [rand_frac(rng, -8, 8, 3)]}), 2)


def product_of_chains(rng: random.Random, X, max_nodes: int = 12):
    """Distributive lattice of a direct sum of filtered pieces: nodes are index tuples.

    Returns (nodes, edges, root, zero) with the class of (i_1, ..., i_k) the
    sum of the first i_t factors of chain t.
    """
    while True:
        k = rng.randint(1, 3)
        lens = [rng.randint(1, 3) for _ in range(k)]
        if math.prod(l + 1 for l in lens) <= max_nodes:
            break
    factors = [[rand_factor(rng, X) for _ in range(l)] for l in lens]
    import itertools

    def name(t):
        return "n" + "".join(map(str, t))

    nodes, edges = {}, []
    for t in itertools.product(*(range(l + 1) for l in lens)):
        ch = X.zero()
        for c, i in enumerate(t):
            for F in factors[c][:i]:
                ch = ch + F.ch
        nodes[name(t)] = SheafClass(ch, 2)
        for c in range(k):
            if t[c] < lens[c]:
                u = list(t)
                u[c] += 1
                edges.append((name(t), name(tuple(u))))
    return nodes, edges, name(tuple(lens)), name((0,) * k)
