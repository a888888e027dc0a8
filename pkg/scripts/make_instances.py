"""Regenerate the shipped example instances under instances/."""
from __future__ import annotations

import itertools
import math
from fractions import Fraction as Fr
from pathlib import Path

from alphastab import example_threefold, product_p1_p1, projective_space
from alphastab.io import dumps, graded_to_dict, variety_to_dict

OUT = Path(__file__).resolve().parent.parent / "instances"


def exp_class(X, D):
    """ch(O(D)) = exp(D)."""
    Dc, out, pw = X.pure(1, D), X.one(), X.one()
    for k in range(1, X.n + 1):
        pw = pw * Dc
        out = out + pw.scale(Fr(1, math.factorial(k)))
    return out


def structure_sheaf(X, D):
    """ch(O_D) = 1 - exp(-D)."""
    return X.one() - exp_class(X, [-x for x in D])


def s(x):
    x = Fr(x)
    return f"{x.numerator}/{x.denominator}"


def cls(ch, dim, cid=None):
    doc = {"ch": graded_to_dict(ch), "dim": dim}
    if cid is not None:
        doc["id"] = cid
    return doc


def write(name, doc):
    OUT.mkdir(exist_ok=True)
    (OUT / name).write_text(dumps(doc))
    print("wrote", OUT / name)


def p1xp1():
    X = product_p1_p1()
    A, B = exp_class(X, [1, 0]), exp_class(X, [0, 1])
    write("p1xp1_problem.json", {
        "gamma": cls(A + B, 2),
        "degree_system": {"d": 2, "r": 1, "alphas": {"2": ["1"], "1": [s("1/3"), s("2/3")]}},
        "candidates": [cls(A, 2, "O(1,0)"), cls(B, 2, "O(0,1)")],
    })
    write("p1xp1_enumerate_problem.json", {
        "gamma": cls(A + B, 2),
        "degree_system": {"d": 2, "r": 1},
    })
    write("p1xp1_region.json", {
        "sections": [{"codim": 1, "ell": ["1", "1"]}, {"codim": 2, "ell": ["1"]}],
        "K": [{"codim": 1, "vertices": [[s("1/3"), s("2/3")], [s("2/3"), s("1/3")]]},
              {"codim": 2, "vertices": [["1"]]}],
        "box": {"coords": [{"codim": 0, "index": 0, "min": "1", "max": "1", "step": "1"},
                           {"codim": 1, "index": 0, "min": "-2", "max": "2", "step": "1"},
                           {"codim": 1, "index": 1, "min": "-2", "max": "2", "step": "1"}]},
        "segment": [{"1": [s("1/3"), s("2/3")]}, {"1": [s("2/3"), s("1/3")]}],
    })


def line_bundle_sum():
    X = projective_space(2)
    L = exp_class(X, [1])
    N = 3
    write("p2_LN_problem.json", {
        "gamma": cls(L.scale(N), 2),
        "degree_system": {"d": 2, "r": 0, "alphas": {"2": ["1"], "1": ["1"], "0": ["1"]}},
        "candidates": [cls(L, 2, "L"), cls(L.scale(2), 2, "L^2"), cls(X.one(), 2, "O")],
    })


def hn_example():
    X = projective_space(2)
    parts = {"a": exp_class(X, [1]), "b": X.one(), "c": exp_class(X, [-1])}
    nodes, edges = [], []
    subsets = [frozenset(c) for k in range(4) for c in itertools.combinations("abc", k)]
    name = {S: "".join(sorted(S)) or "0" for S in subsets}
    for S in subsets:
        ch = X.zero()
        for k in S:
            ch = ch + parts[k]
        nodes.append({"id": name[S], **cls(ch, 2)})
    for S in subsets:
        for T in subsets:
            if S < T and len(T) == len(S) + 1:
                edges.append([name[S], name[T]])
    write("p2_hn_lattice.json", {"nodes": nodes, "edges": edges, "root": "abc", "zero": "0"})
    write("p2_hn_problem.json", {
        "degree_system": {"d": 2, "r": 0, "alphas": {"2": ["1"], "1": ["1"], "0": ["1"]}},
    })


def threefold():
    X = example_threefold()
    write("threefold_model.json", variety_to_dict(X))
    # prismatic: Sigma_3 is a point, walls live in one factor each
    A, B = X.one(), exp_class(X, [-1, 1])
    write("threefold_prismatic_problem.json", {
        "gamma": cls(A + B, 3),
        "degree_system": {"d": 3, "r": 1},
        "candidates": [cls(A, 3, "O"), cls(B, 3, "O(xi-f)")],
    })
    write("threefold_prismatic_region.json", {
        "sections": [{"codim": 1, "ell": ["1", "0"]}, {"codim": 2, "ell": ["1", "0"]}, {"codim": 3, "ell": ["1"]}],
        "K": [{"codim": 1, "vertices": [["1", s("1/4")], ["1", s("3/4")]]},
              {"codim": 2, "vertices": [["1", s("1/4")], ["1", s("3/4")]]},
              {"codim": 3, "vertices": [["1"]]}],
        "segment": [{"1": ["1", s("3/10")], "2": ["1", s("3/10")]}, {"1": ["1", s("7/10")], "2": ["1", s("7/10")]}],
    })
    # bilinear: two-dimensional classes, both factors move
    S1, S2 = structure_sheaf(X, [0, 1]), structure_sheaf(X, [1, 0])
    write("threefold_bilinear_problem.json", {
        "gamma": cls(S1 + S2, 2),
        "degree_system": {"d": 2, "r": 1},
        "candidates": [cls(S1, 2, "O_xi"), cls(S2, 2, "O_f")],
    })
    write("threefold_bilinear_region.json", {
        "sections": [{"codim": 1, "ell": ["1", "0"]}, {"codim": 2, "ell": ["1", "0"]}],
        "K": [{"codim": 1, "vertices": [["1", s("1/4")], ["1", s("3/4")]]},
              {"codim": 2, "vertices": [["1", s("1/4")], ["1", s("3/4")]]}],
        "segment": [{"1": ["1", s("3/10")], "2": ["1", s("1/4")]}, {"1": ["1", s("7/10")], "2": ["1", s("3/4")]}],
    })


if __name__ == "__main__":
    p1xp1()
    line_bundle_sum()
    hn_example()
    threefold()
