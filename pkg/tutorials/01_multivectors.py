"""Tour of the algebra layer: blades, products, duality.

Run it directly:

    python3 tutorials/01_multivectors.py
"""

import numpy as np

from cgar import Multivector, blade_index, blade_name, grade
from cgar import blades as bl


def show(label, mv):
    print(f"{label:24s} {mv}")


def main():
    # The algebra has 32 basis blades. Each one is named after the basis
    # vectors it contains: e0 and ei (the two null directions), e1, e2, e3.
    print("all 32 blades, by grade:")
    by_grade = {}
    for idx in range(32):
        by_grade.setdefault(grade(idx), []).append(blade_name(idx))
    for g in sorted(by_grade):
        print(f"  grade {g}: {' '.join(by_grade[g])}")
    print()

    # Index and name are interchangeable.
    assert blade_index("e12") == 0b00110
    assert blade_name(blade_index("e0123i")) == "e0123i"

    # Build multivectors from blade names. Storage is sparse: only the
    # blades you name (or that a product can produce) are kept.
    a = Multivector.from_terms({"e1": 2.0, "e2": 1.0})
    b = Multivector.from_terms({"e1": 1.0, "e3": -1.0})
    show("a =", a)
    show("b =", b)
    show("a + b =", a + b)
    print()

    # The three products. The geometric product mixes grades, the outer
    # product raises, the inner product lowers.
    show("a * b  (geometric)", a * b)
    show("a ^ b  (outer)", a ^ b)
    show("a | b  (inner)", a | b)
    print()

    # e1 * e1 = 1, e1 ^ e1 = 0. The null vectors square to zero but their
    # mutual inner product is -1, which is what makes distance work later.
    e0 = Multivector.from_terms({"e0": 1.0})
    ei = Multivector.from_terms({"ei": 1.0})
    show("e0 * e0", e0 * e0)
    show("e0 * ei", e0 * ei)
    print()

    # Reverse flips the factor order of each blade; grades 2 and 3 pick up
    # a sign. The pseudoscalar squares to -1, so dualising twice negates.
    B = Multivector.from_terms({"e12": 3.0, "e123": 1.0})
    show("B", B)
    show("~B", ~B)
    show("B.dual()", B.dual())
    show("B.dual().dual()", B.dual().dual())
    print()

    # Subspace bookkeeping: every multivector carries a 32-bit mask saying
    # which blades it can hold. Products compute the result mask up front,
    # so a rotor times a rotor never touches odd-grade storage.
    r = Multivector.from_terms({"1": np.cos(0.3), "e12": np.sin(0.3)})
    print(f"rotor mask      {r.mask:#034b}")
    print(f"rotor * rotor   {(r * r).mask:#034b}")
    print(f"grade-1 mask    {bl.GRADE_MASKS[1]:#034b}")

    # Restricting and expanding move between subspaces explicitly.
    v = Multivector.from_terms({"e1": 1.0, "e2": 2.0, "e3": 3.0})
    fat = v.expanded(bl.GRADE_MASKS[1] | bl.GRADE_MASKS[3])
    thin = fat.restricted(bl.EUCLIDEAN_VECTOR_MASK)
    assert np.allclose(thin.dense(), v.dense())
    print("\nrestrict/expand roundtrip ok")


if __name__ == "__main__":
    main()
