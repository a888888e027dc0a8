"""Builtin variety models: projective spaces, P1 x P1 and the threefold P(O+O+O(-1)) over P1."""
from __future__ import annotations

from fractions import Fraction
from math import factorial

from .numring import VarietyModel


def _todd_series(n: int) -> list[Fraction]:
    """Coefficients of x / (1 - exp(-x)) up to x^n."""
    # (1 - exp(-x)) / x = sum_k (-1)^k x^k / (k+1)!
    g = [Fraction((-1) ** k, factorial(k + 1)) for k in range(n + 1)]
    inv = [Fraction(0)] * (n + 1)
    inv[0] = 1 / g[0]
    for k in range(1, n + 1):
        inv[k] = -sum(g[j] * inv[k - j] for j in range(1, k + 1)) / g[0]
    return inv


def _power_series_pow(a: list[Fraction], e: int) -> list[Fraction]:
    n = len(a) - 1
    out = [Fraction(1)] + [Fraction(0)] * n
    for _ in range(e):
        out = [sum(out[j] * a[k - j] for j in range(k + 1)) for k in range(n + 1)]
    return out


def projective_space(n: int) -> VarietyModel:
    if n < 1:
        raise ValueError("projective_space needs n >= 1")
    labels = [["1"], ["h"]] + [[f"h^{p}"] for p in range(2, n + 1)]
    products = {(p, q, 0, 0): [1] for p in range(1, n + 1) for q in range(1, n + 1 - p)}
    todd = [[c] for c in _power_series_pow(_todd_series(n), n + 1)]
    return VarietyModel(
        name=f"P{n}", n=n, ranks=[1] * (n + 1), basis=labels, products=products,
        integration=[1], todd=todd, euler_char=1,
        nef_facets=[[[1]] for _ in range(n + 1)], polarization=[1])


def product_p1_p1() -> VarietyModel:
    products = {
        (1, 1, 0, 0): [0],
        (1, 1, 1, 1): [0],
        (1, 1, 0, 1): [1],
    }
    return VarietyModel(
        name="P1xP1", n=2, ranks=[1, 2, 1],
        basis=[["1"], ["h1", "h2"], ["h1h2"]], products=products,
        integration=[1], todd=[[1], [1, 1], [1]], euler_char=1,
        nef_facets=[[[1]], [[1, 0], [0, 1]], [[1]]], polarization=[1, 1])


def example_threefold() -> VarietyModel:
    """X = P(O + O + O(-1)) over P1, with fibre class f and xi = O_{P(E)}(1).

    Relations: f^2 = 0 and xi^3 = -xi^2 f = -pt.  Nef^1 = <f, xi + f> and
    Nef^2 = <f xi, xi^2 + f xi>, stored as facet functionals.  The Todd class
    comes from c(T_X) = (1 + xi)^2 (1 + xi + f)(1 + 2f), i.e. c1 = 3 xi + 3 f,
    c2 = 3 xi^2 + 8 f xi, and td = 1 + c1/2 + (c1^2 + c2)/12 + c1 c2 / 24.
    """
    f, xi = 0, 1
    fxi, xi2 = 0, 1
    products = {
        (1, 1, f, f): [0, 0],
        (1, 1, f, xi): [1, 0],
        (1, 1, xi, xi): [0, 1],
        (1, 2, f, fxi): [0],
        (1, 2, f, xi2): [1],
        (1, 2, xi, fxi): [1],
        (1, 2, xi, xi2): [-1],
    }
    todd = [[1], [Fraction(3, 2), Fraction(3, 2)], [Fraction(13, 6), 1], [1]]
    return VarietyModel(
        name="example-threefold", n=3, ranks=[1, 2, 2, 1],
        basis=[["1"], ["f", "xi"], ["fxi", "xi^2"], ["pt"]], products=products,
        integration=[1], todd=todd, euler_char=1,
        nef_facets=[[[1]], [[0, 1], [1, -1]], [[0, 1], [1, -1]], [[1]]],
        polarization=[2, 1])


def builtin(name: str) -> VarietyModel:
    """Resolve a builtin name: p2, p1xp1, example-threefold, pN:k."""
    key = name.lower()
    if key == "p2":
        return projective_space(2)
    if key == "p1xp1":
        return product_p1_p1()
    if key in ("example-threefold", "threefold"):
        return example_threefold()
    if key.startswith("pn:"):
        return projective_space(int(key[3:]))
    raise ValueError(f"unknown builtin model {name!r}")
