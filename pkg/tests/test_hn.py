import random
from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alphastab import (AmbiguousMDS, LatticeError, Order, SheafClass, SubobjectLattice, classical_system,
                       compare_asymptotic, hn_filtration, maximal_destabilizing, product_p1_p1, projective_space)
from alphastab.hn import factor_slopes, verify_hn, weakly_artinian_witness
from alphastab.stability import DegreeSystem
from helpers import exp_class, product_of_chains

P2 = projective_space(2)
A2 = classical_system(P2)


def p1p1_lattice():
    X = product_p1_p1()
    A, B = SheafClass(exp_class(X, [1, 0]), 2), SheafClass(exp_class(X, [0, 1]), 2)
    nodes = {"0": SheafClass(X.zero(), 2), "A": A, "B": B, "R": A + B}
    edges = [("0", "A"), ("0", "B"), ("A", "R"), ("B", "R")]
    return SubobjectLattice(nodes, edges, "R", "0")


def p1p1_alpha(x):
    X = product_p1_p1()
    return DegreeSystem(2, 1, (X.pure(2, [1]), X.pure(1, [x, 1 - x])))


def test_two_node_lattice():
    O = SheafClass(P2.one(), 2)
    lat = SubobjectLattice({"0": SheafClass(P2.zero(), 2), "E": O}, [("0", "E")], "E", "0")
    assert maximal_destabilizing(lat, A2) == "E"
    assert hn_filtration(lat, A2).nodes == ("0", "E")


def test_p1p1_mds_and_chain():
    lat = p1p1_lattice()
    a = p1p1_alpha(Fr(1, 3))
    assert maximal_destabilizing(lat, a) == "A"
    chain = hn_filtration(lat, a)
    assert chain.nodes == ("0", "A", "R")
    assert factor_slopes(chain, a) == [Fr(5, 3), Fr(4, 3)]
    ok, report = verify_hn(lat, a, chain)
    assert ok and not report


def test_p1p1_symmetric_point_root_wins_tie():
    # A, B and the root share one reduced polynomial; the larger top degree (the root) is chosen
    lat = p1p1_lattice()
    a = p1p1_alpha(Fr(1, 2))
    assert maximal_destabilizing(lat, a) == "R"
    assert hn_filtration(lat, a).nodes == ("0", "R")


def test_ambiguous_mds_without_join():
    X = product_p1_p1()
    A, B = SheafClass(exp_class(X, [1, 0]), 2), SheafClass(exp_class(X, [0, 1]), 2)
    C = SheafClass(exp_class(X, [-2, -2]), 2)
    nodes = {"0": SheafClass(X.zero(), 2), "A": A, "B": B, "R": A + B + C}
    lat = SubobjectLattice(nodes, [("0", "A"), ("0", "B"), ("A", "R"), ("B", "R")], "R", "0")
    with pytest.raises(AmbiguousMDS) as exc:
        hn_filtration(lat, p1p1_alpha(Fr(1, 2)))
    assert set(exc.value.nodes) == {"A", "B"}


def test_verify_rejects_bad_chains():
    lat = p1p1_lattice()
    a = p1p1_alpha(Fr(1, 3))
    ok, report = verify_hn(lat, a, ["0", "R"])
    assert not ok and "destabilized" in report[0]
    ok, _ = verify_hn(lat, a, ["0", "B", "R"])
    assert not ok
    ok, _ = verify_hn(lat, a, ["A", "R"])
    assert not ok


def test_lattice_validation():
    O = SheafClass(P2.one(), 2)
    Z = SheafClass(P2.zero(), 2)
    with pytest.raises(LatticeError):
        SubobjectLattice({"0": O, "E": O}, [("0", "E")], "E", "0")
    with pytest.raises(LatticeError):
        SubobjectLattice({"0": Z, "E": O, "F": O.scale(2)}, [("0", "E"), ("E", "F"), ("F", "E")], "F", "0")
    with pytest.raises(LatticeError):
        SubobjectLattice({"0": Z, "E": O, "F": O.scale(2)}, [("0", "E")], "E", "0")
    with pytest.raises(LatticeError):
        SubobjectLattice({"0": Z, "E": O, "F": O}, [("0", "E"), ("E", "F")], "F", "0")
    with pytest.raises(LatticeError):
        SubobjectLattice({"0": Z, "E": O}, [("0", "E"), ("0", "X")], "E", "0")


def test_dimension_drop_rejected():
    # F beats E, and E/F has vanishing top degree
    Z = SheafClass(P2.zero(), 2)
    F = SheafClass(P2.one(), 2)
    E = SheafClass(P2.one() - P2.point(), 2)
    lat = SubobjectLattice({"0": Z, "F": F, "E": E}, [("0", "F"), ("F", "E")], "E", "0")
    with pytest.raises(LatticeError):
        hn_filtration(lat, A2)


def test_three_step_general_position():
    L = [SheafClass(exp_class(P2, [k]), 2) for k in (2, 0, -1)]
    nodes = {"0": SheafClass(P2.zero(), 2)}
    edges = []
    names = ["0", "a", "ab", "abc"]
    acc = SheafClass(P2.zero(), 2)
    for name, prev, F in zip(names[1:], names, L):
        acc = acc + F
        nodes[name] = acc
        edges.append((prev, name))
    # add the other summands as side nodes
    nodes["b"], nodes["c"], nodes["bc"], nodes["ac"] = L[1], L[2], L[1] + L[2], L[0] + L[2]
    edges += [("0", "b"), ("0", "c"), ("b", "ab"), ("b", "bc"), ("c", "bc"), ("c", "ac"), ("a", "ac"),
              ("bc", "abc"), ("ac", "abc")]
    lat = SubobjectLattice(nodes, edges, "abc", "0")
    chain = hn_filtration(lat, A2)
    assert chain.nodes == ("0", "a", "ab", "abc")
    assert verify_hn(lat, A2, chain)[0]
    assert not verify_hn(lat, A2, ["0", "c", "bc", "abc"])[0]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_random_lattices_hn_properties(seed):
    rng = random.Random(seed)
    t, a, b = (Fr(rng.randint(1, 9), rng.randint(1, 3)) for _ in range(3))
    alpha = DegreeSystem(2, 0, (P2.pure(2, [t]), P2.pure(1, [a]), P2.pure(0, [b])))
    lat = SubobjectLattice(*product_of_chains(rng, P2))
    chain = hn_filtration(lat, alpha)
    for p, q in zip(chain.polys, chain.polys[1:]):
        assert compare_asymptotic(p, q) is Order.GREATER
    assert all(not F.is_zero() for F in chain.factors)
    ok, report = verify_hn(lat, alpha, chain)
    assert ok, report


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_weakly_artinian_witness(seed):
    rng = random.Random(seed)
    lat = SubobjectLattice(*product_of_chains(rng, P2))
    # a random chain through the lattice
    chain, cur = [], lat.zero
    while cur != lat.root:
        cur = rng.choice(lat.above(cur))
        chain.append(cur)
    assert weakly_artinian_witness(lat, A2, chain)
