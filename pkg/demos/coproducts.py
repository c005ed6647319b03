"""Coproducts of elliptic groups, built explicitly and checked against test objects."""
from ellgrp import PointedAbelian
from ellgrp.constructions import coproduct, universal_report

P = PointedAbelian.make

pairs = [
    (P([3]), P([3])),              # two flex groups
    (P([0], [1]), P([3], [1])),    # _1Z absorbs anything
    (P([9], [1]), P([3])),         # torsion with flex
    (P([9], [1]), P([3], [1])),    # torsion with torsion
]
tests = [P([3]), P([3], [1]), P([9], [1]), P([6], [1])]

for L, R in pairs:
    D = coproduct(L, R)
    print(f"{L.descriptor()} ⊔ {R.descriptor()}  ->  {D.object.descriptor()}  [{D.recipe}]")
    for E in tests:
        rep = universal_report(D, E)
        print(f"    into {E.descriptor():6s}: {rep.left_count:3d} x {rep.right_count:3d} = "
              f"{rep.object_count:4d} morphisms, copairing unique: {rep.ok}")

print("\nfor two flex groups Z/3 the coproduct is Z/3³, not Z/3²:")
D = coproduct(P([3]), P([3]))
print("  |Mor(coproduct, _0Z/3)| =", universal_report(D, P([3])).object_count, "= 9 * 9")
