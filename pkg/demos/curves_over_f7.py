"""Two cubics over F_7 with nine points each, and why their groups differ."""
from ellgrp import (
    PointedAbelian, PrimeFieldCtx, TernaryCubic, chord_tangent, classify_table, curve_group,
    enumerate_points, flex_points, is_isomorphic, to_pointed,
)
from ellgrp.curves import ProjectivePoint

F = PrimeFieldCtx(7)
fermat = TernaryCubic((1, 2, -3, 0, 0, 0, 0, 0, 0, 0))   # x³ + 2y³ = 3z³
weier = TernaryCubic.weierstrass(0, 2)                     # y² = x³ + 2

for name, C in (("x³ + 2y³ = 3z³", fermat), ("y² = x³ + 2", weier)):
    pts = enumerate_points(C, F)
    print(f"{name}: {len(pts)} points")
    print("  ", ", ".join(p.affine(F) and str(p.affine(F)) or p.label() for p in pts))

O = ProjectivePoint.make(F, (1, 1, 1))
print("\ntangent at (1,1) meets the first curve again at", chord_tangent(fermat, F, O, O).affine(F))

T1, T2 = curve_group(fermat, F), curve_group(weier, F)
print("\nflex points (x*x = x):", len(flex_points(T1)), "vs", len(flex_points(T2)))
print("the first curve has no flex, so it cannot be of the form _0A")
print("classification:", classify_table(T1), "and", classify_table(T2))

P1, _ = to_pointed(T1)
P2, _ = to_pointed(T2)
print("isomorphic?", is_isomorphic(P1, P2))
print("first curve matches _(1,0)(Z/3 + Z/3)?", is_isomorphic(P1, PointedAbelian.make([3, 3], [1, 0])))
