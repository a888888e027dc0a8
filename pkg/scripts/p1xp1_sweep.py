"""Sweep alpha_1 = x h1 + (1 - x) h2 on P1xP1 and print the verdict for O(1,0) + O(0,1).

    python scripts/p1xp1_sweep.py [steps]
"""
import sys
from fractions import Fraction

from alphastab import SheafClass, is_semistable, product_p1_p1
from alphastab.stability import DegreeSystem


def main(steps=12):
    X = product_p1_p1()
    L10 = X.graded({0: [1], 1: [1, 0]})
    L01 = X.graded({0: [1], 1: [0, 1]})
    gamma = SheafClass(L10 + L01, 2)
    cands = [("O(1,0)", SheafClass(L10, 2)), ("O(0,1)", SheafClass(L01, 2))]
    for k in range(1, steps):
        x = Fraction(k, steps)
        alpha = DegreeSystem(2, 1, (X.pure(2, [1]), X.pure(1, [x, 1 - x])))
        v = is_semistable(gamma, alpha, cands)
        who = ",".join(cid for cid, _ in v.signature()[1]) or "-"
        print(f"x={str(x):>6}  {v.status.value:<20} {who}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 12)
