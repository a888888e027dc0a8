"""Harder-Narasimhan filtrations over finite subobject lattices.

A finite lattice stands in for the subsheaves of the root object.  The HN
chain is built by Rudakov's recursion: take the maximal destabilizing
subobject, pass to the residual lattice above it, repeat.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Mapping, Sequence

from .numring import SheafClass, degree
from .stability import (DegreeSystem, HilbertPoly, Order, compare_asymptotic, hilbert_polynomial,
                        is_semistable)


class AmbiguousMDS(ValueError):
    """Two distinct nodes tie for maximal destabilizing subobject."""

    def __init__(self, nodes):
        self.nodes = tuple(nodes)
        super().__init__(f"ambiguous maximal destabilizing subobject: {list(self.nodes)}")


class LatticeError(ValueError):
    pass


class SubobjectLattice:
    """Nodes with Chern classes, inclusion edges (child, parent), a root and a zero node."""

    def __init__(self, nodes: Mapping[Hashable, SheafClass], edges: Sequence[tuple[Hashable, Hashable]],
                 root: Hashable, zero: Hashable):
        self.nodes = dict(nodes)
        self.edges = [tuple(e) for e in edges]
        self.root = root
        self.zero = zero
        if root not in self.nodes or zero not in self.nodes:
            raise LatticeError("root and zero must be nodes")
        if not self.nodes[zero].is_zero():
            raise LatticeError("zero node must carry the zero class")
        self._up = {k: set() for k in self.nodes}
        for a, b in self.edges:
            if a not in self.nodes or b not in self.nodes:
                raise LatticeError(f"edge {(a, b)} references an unknown node")
            self._up[a].add(b)
        self._above = {k: self._closure(k) for k in self.nodes}
        for k in self.nodes:
            if any(j != k and k in self._above[j] for j in self._above[k]):
                raise LatticeError("inclusion graph has a cycle")
            if k not in self._above[zero]:
                raise LatticeError(f"node {k!r} does not contain the zero node")
            if root not in self._above[k]:
                raise LatticeError(f"node {k!r} is not contained in the root")
        for a, b in self.edges:
            diff = self.nodes[b] - self.nodes[a]
            if diff.is_zero():
                raise LatticeError(f"edge {(a, b)} is not a strict inclusion")
            if diff.effective_dim() > self.nodes[b].dim:
                raise LatticeError(f"quotient along edge {(a, b)} has dimension above its parent")

    def _closure(self, k):
        seen, stack = {k}, [k]
        while stack:
            for b in self._up[stack.pop()]:
                if b not in seen:
                    seen.add(b)
                    stack.append(b)
        return seen

    def contains(self, big, small) -> bool:
        """small is included in big (reflexive)."""
        return big in self._above[small]

    def above(self, base) -> list:
        """Nodes strictly containing ``base``, in insertion order."""
        return [k for k in self.nodes if k != base and k in self._above[base]]

    def quotient_class(self, node, base) -> SheafClass:
        """Class of node/base; its dimension drops when leading components cancel."""
        diff = self.nodes[node] - self.nodes[base]
        return diff.with_effective_dim()


@dataclass(frozen=True)
class HNChain:
    nodes: tuple
    factors: tuple[SheafClass, ...]
    polys: tuple[HilbertPoly, ...]


def _reduced(F: SheafClass, alpha: DegreeSystem) -> HilbertPoly:
    top = degree(F, alpha.alpha(alpha.d))
    if top <= 0:
        raise LatticeError("a quotient in the lattice has nonpositive top degree (dimension drop)")
    return hilbert_polynomial(F, alpha).scale(1 / top)


def maximal_destabilizing(lattice: SubobjectLattice, alpha: DegreeSystem, base=None):
    """Node N above ``base`` maximizing p_alpha(N / base); ties go to the larger top degree."""
    base = lattice.zero if base is None else base
    cands = lattice.above(base)
    if not cands:
        raise LatticeError("no nonzero subobjects to choose from")
    top = alpha.alpha(alpha.d)
    scored = []
    for k in cands:
        F = lattice.quotient_class(k, base)
        scored.append((k, _reduced(F, alpha), degree(F, top)))
    best = [scored[0]]
    for item in scored[1:]:
        c = compare_asymptotic(item[1], best[0][1])
        if c is Order.GREATER:
            best = [item]
        elif c is Order.EQUAL:
            best.append(item)
    top_deg = max(t[2] for t in best)
    winners = [t[0] for t in best if t[2] == top_deg]
    if len(winners) > 1:
        raise AmbiguousMDS(winners)
    return winners[0]


def hn_filtration(lattice: SubobjectLattice, alpha: DegreeSystem) -> HNChain:
    chain = [lattice.zero]
    while chain[-1] != lattice.root:
        chain.append(maximal_destabilizing(lattice, alpha, chain[-1]))
    factors = tuple(lattice.quotient_class(b, a) for a, b in zip(chain, chain[1:]))
    polys = tuple(_reduced(F, alpha) for F in factors)
    for p, q in zip(polys, polys[1:]):
        if compare_asymptotic(p, q) is not Order.GREATER:
            raise LatticeError("HN factors fail to strictly decrease")
    return HNChain(tuple(chain), factors, polys)


def verify_hn(lattice: SubobjectLattice, alpha: DegreeSystem, chain) -> tuple[bool, list[str]]:
    """Check the HN axioms for a chain of node ids against the lattice."""
    ids = tuple(chain.nodes if isinstance(chain, HNChain) else chain)
    report = []
    if not ids or ids[0] != lattice.zero or ids[-1] != lattice.root:
        report.append("chain must run from the zero node to the root")
        return False, report
    for a, b in zip(ids, ids[1:]):
        if a == b or not lattice.contains(b, a):
            report.append(f"{a!r} is not strictly contained in {b!r}")
    if report:
        return False, report
    polys = []
    for a, b in zip(ids, ids[1:]):
        F = lattice.quotient_class(b, a)
        try:
            polys.append(_reduced(F, alpha))
        except LatticeError as exc:
            report.append(f"factor {b!r}/{a!r}: {exc}")
            return False, report
        inner = {k: lattice.quotient_class(k, a) for k in lattice.above(a) if k != b and lattice.contains(b, k)}
        v = is_semistable(SheafClass(F.ch, alpha.d), alpha, inner)
        if not v.is_semistable:
            report.append(f"factor {b!r}/{a!r} is destabilized by {[c for c, o in v.destabilizers if o == 'greater']}")
    for i, (p, q) in enumerate(zip(polys, polys[1:])):
        if compare_asymptotic(p, q) is not Order.GREATER:
            report.append(f"reduced polynomials do not strictly decrease at step {i + 1}")
    return not report, report


def weakly_artinian_witness(lattice: SubobjectLattice, alpha: DegreeSystem, chain: Sequence) -> bool:
    """Along E_1 <= E_2 <= ... with p(E_i) <= p(E_{i+1}), P_alpha is nondecreasing and bounded by the root's."""
    top = alpha.alpha(alpha.d)
    polys = [hilbert_polynomial(lattice.nodes[k], alpha) for k in chain]
    reduced = [P.scale(1 / degree(lattice.nodes[k], top)) for P, k in zip(polys, chain)]
    root_top = degree(lattice.nodes[lattice.root], top)
    for i in range(len(chain) - 1):
        if compare_asymptotic(reduced[i], reduced[i + 1]) is Order.GREATER:
            continue
        if compare_asymptotic(polys[i], polys[i + 1]) is Order.GREATER:
            return False
    return all(degree(lattice.nodes[k], top) <= root_top for k in chain)


def factor_slopes(chain: HNChain, alpha: DegreeSystem) -> list[Fraction]:
    """deg_{alpha_{d-1}} / deg_{alpha_d} of each factor."""
    top, nxt = alpha.alpha(alpha.d), alpha.alpha(alpha.d - 1)
    return [degree(F, nxt) / degree(F, top) for F in chain.factors]
