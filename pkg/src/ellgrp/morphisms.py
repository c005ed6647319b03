"""Morphisms of pointed abelian elliptic groups.

A map ``f: _aA -> _bB`` is a morphism exactly when it is affine,
``f(x) = f0 + f1(x)`` with ``f1`` a homomorphism, and ``3 f0 + f1(a) = b``.
Hom-sets carry an elliptic structure of their own under the pointwise
operation ``(f*g)(s) = f(s) * g(s)``.
"""
from __future__ import annotations

import json
from math import gcd
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .abelian import (
    GroupElement, GroupHom, GroupShape, ann3, direct_sum, enumerate_elements,
    enumerate_homs, enumerate_isos, hom_shape, member_of_3A, reduce,
)
from .core import CayleyTable, PointedAbelian
from .errors import EllError, InfiniteShapeError, ShapeMismatchError

__all__ = [
    "AffineMorphism", "MorStructure", "AutReport",
    "apply", "compose", "identity", "affine_map", "mor_star",
    "hom_exists", "enumerate_morphisms", "is_isomorphic", "mor_elliptic",
    "predicted_mor_structure", "automorphisms", "automorphism_report",
]


@dataclass(frozen=True)
class AffineMorphism:
    """``x -> constant + linear(x)`` from ``source = _aA`` to ``target = _bB``."""

    source: PointedAbelian
    target: PointedAbelian
    constant: GroupElement
    linear: GroupHom

    def __post_init__(self):
        if self.linear.source != self.source.shape or self.linear.target != self.target.shape:
            raise ShapeMismatchError("linear part does not match source/target shapes")
        if self.constant.shape != self.target.shape:
            raise ShapeMismatchError("constant part must lie in the target")
        if 3 * self.constant + self.linear(self.source.base) != self.target.base:
            raise EllError("compatibility 3*f0 + f1(a) = b fails")

    def __call__(self, x: GroupElement) -> GroupElement:
        return self.constant + self.linear(x)

    def __repr__(self) -> str:
        return f"AffineMorphism({self.constant}, {self.linear.matrix()})"

    def is_bijective(self) -> bool:
        return self.linear.is_bijective()

    def to_dict(self) -> dict:
        return {"constant": list(self.constant.coords), "linear": self.linear.matrix()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    def formula(self) -> str:
        """Human readable ``x -> ...`` using x1, x2, ... for source coordinates."""
        terms = [str(self.constant)]
        for j, img in enumerate(self.linear.images, start=1):
            if not img.is_zero():
                terms.append(f"x{j}*{img}")
        return " + ".join(terms)


def affine_map(source: PointedAbelian, target: PointedAbelian, constant, columns) -> AffineMorphism:
    """Convenience constructor from raw coordinate lists (reduced into the target)."""
    return AffineMorphism(
        source, target, reduce(target.shape, constant),
        GroupHom.from_matrix(source.shape, target.shape, columns),
    )


def apply(f: AffineMorphism, x: GroupElement) -> GroupElement:
    return f(x)


def compose(g: AffineMorphism, f: AffineMorphism) -> AffineMorphism:
    """``g o f``: constant ``g0 + g1(f0)``, linear ``g1 o f1``."""
    if f.target != g.source:
        raise ShapeMismatchError("f.target must equal g.source")
    return AffineMorphism(f.source, g.target, g(f.constant), g.linear.compose(f.linear))


def identity(P: PointedAbelian) -> AffineMorphism:
    return AffineMorphism(P, P, P.shape.zero, GroupHom.identity(P.shape))


def mor_star(f: AffineMorphism, g: AffineMorphism) -> AffineMorphism:
    """Pointwise ``(f*g)(s) = f(s) * g(s)``; constant ``b - f0 - g0``, linear ``-f1 - g1``."""
    if f.source != g.source or f.target != g.target:
        raise ShapeMismatchError("pointwise product needs a common source and target")
    b = f.target.base
    return AffineMorphism(f.source, f.target, b - f.constant - g.constant, -(f.linear + g.linear))


# -- existence and enumeration ---------------------------------------------


def _solutions_3x(t: GroupElement) -> list[GroupElement]:
    return [x for x in enumerate_elements(t.shape) if 3 * x == t]


def enumerate_morphisms(src: PointedAbelian, dst: PointedAbelian) -> list[AffineMorphism]:
    """All morphisms ``src -> dst`` for a finite target, sorted by (constant, linear)."""
    if not dst.is_finite:
        raise InfiniteShapeError("the target must be finite to enumerate morphisms")
    out = []
    cache: dict = {}
    for f1 in enumerate_homs(src.shape, dst.shape):
        t = dst.base - f1(src.base)
        if t not in cache:
            cache[t] = _solutions_3x(t)
        for f0 in cache[t]:
            out.append(AffineMorphism(src, dst, f0, f1))
    out.sort(key=lambda f: (f.constant.coords, tuple(b.coords for b in f.linear.images)))
    return out


def hom_exists(src: PointedAbelian, dst: PointedAbelian) -> bool:
    """Whether ``Mor(src, dst)`` is nonempty, i.e. ``b in 3B + H(a)``.

    Finite targets are decided by computing ``H(a)`` from all homomorphisms;
    targets with a free factor go through the canonical forms of both sides.
    """
    if dst.is_finite:
        b = dst.base
        seen = set()
        for f1 in enumerate_homs(src.shape, dst.shape):
            h = f1(src.base)
            if h in seen:
                continue
            seen.add(h)
            if member_of_3A(b - h):
                return True
        return False
    from .classify import canonical_form

    return _exists_by_form(canonical_form(src), canonical_form(dst))


def _exists_by_form(s, t) -> bool:
    if t.variant == "Flex":
        return True
    if s.variant == "OneZ":
        return True
    if t.variant == "OneZ":
        return False
    # t is OneTorsion(l): only OneTorsion(k) with k >= l (or OneZ) maps in
    return s.variant == "OneTorsion" and s.k >= t.k


def _isos_hit(P: PointedAbelian, Q: PointedAbelian) -> bool:
    b = Q.base
    images = {f(P.base) for f in enumerate_isos(P.shape, Q.shape)}
    return any(member_of_3A(b - h) for h in images)


def is_isomorphic(P: PointedAbelian, Q: PointedAbelian, method: str = "canonical") -> bool:
    """Isomorphism test.

    ``method="canonical"`` compares canonical forms (any finitely generated
    input); ``method="enumerate"`` searches ``b in 3B + I(a)`` over all group
    isomorphisms and needs finite shapes.
    """
    if method == "enumerate":
        if not (P.is_finite and Q.is_finite):
            raise InfiniteShapeError("enumeration needs finite shapes")
        return _isos_hit(P, Q)
    if method != "canonical":
        raise EllError(f"unknown method {method!r}")
    from .classify import canonical_form

    return canonical_form(P) == canonical_form(Q)


# -- Mor(S, T) as an elliptic group ------------------------------------------


@dataclass(frozen=True)
class MorStructure:
    source: PointedAbelian
    target: PointedAbelian
    carrier: tuple[AffineMorphism, ...]
    table: CayleyTable

    def __len__(self) -> int:
        return len(self.carrier)


def mor_elliptic(src: PointedAbelian, dst: PointedAbelian) -> MorStructure:
    """``Mor(src, dst)`` with its pointwise operation, as an explicit table."""
    carrier = enumerate_morphisms(src, dst)
    if not carrier:
        raise EllError("the hom-set is empty")
    index = {f: i for i, f in enumerate(carrier)}
    n = len(carrier)
    rows = np.empty((n, n), dtype=np.int64)
    for i, f in enumerate(carrier):
        for j in range(i, n):
            k = index[mor_star(f, carrier[j])]
            rows[i, j] = rows[j, i] = k
    labels = tuple(f.to_json() for f in carrier)
    return MorStructure(src, dst, tuple(carrier), CayleyTable(n, labels, rows))


def _shift_pointed(b: GroupElement, extra: GroupShape) -> PointedAbelian:
    shape = direct_sum(b.shape, extra)
    return PointedAbelian(shape, reduce(shape, b.coords + (0,) * len(extra)))


def _solve_scaled(n: int, c: int, m: int) -> int | None:
    """Some ``x`` with ``n x = c`` in ``Z/m`` (``m = 0`` meaning Z), or None."""
    if m == 0:
        return c // n if c % n == 0 else None
    g = gcd(n, m)
    if c % g:
        return None
    mg = m // g
    return (c // g) * pow(n // g, -1, mg) % mg if mg > 1 else 0


def _torsion_point(b: GroupElement, k: int) -> PointedAbelian | None:
    """``_t(B[3^(k+1)])`` with ``t = b - 3 x0`` for a solution of ``3^(k+1) x0 = 3^k b``."""
    n = 3 ** (k + 1)
    moduli, coords = [], []
    for m, c in zip(b.shape.moduli, b.coords):
        x0 = _solve_scaled(n, 3 ** k * c, m)
        if x0 is None:
            return None
        t = c - 3 * x0
        if m == 0:
            moduli.append(1)
            coords.append(0)
        else:
            # B[n] inside Z/m is generated by m/g, so t = (t/(m/g)) * (m/g)
            g = gcd(n, m)
            moduli.append(g)
            coords.append((t % m) // (m // g))
    shape = GroupShape(tuple(moduli))
    return PointedAbelian(shape, reduce(shape, coords))


def predicted_mor_structure(src: PointedAbelian, dst: PointedAbelian) -> PointedAbelian | None:
    """Closed form of ``Mor(src, dst)`` up to isomorphism; None means empty.

    * src with a flex (``~ _0A``): empty if ``b`` not in ``3B``, else ``_0 Hom(Z/3 + A, B)``;
    * ``_1Z x _0A'``: ``_bB x _0 Hom(A', B)``;
    * ``_1Z/3^k x _0A'``: empty unless ``3^k b in 3^(k+1) B``; otherwise the constant
      term ranges over a coset of ``B[3^(k+1)]`` and the result is
      ``_t(B[3^(k+1)]) x _0 Hom(A', B)`` with ``t = b - 3 f0`` for any admissible ``f0``.

    The factor ``_0 Hom(A', B)`` records the free choice of the linear part on ``A'``.
    """
    from .classify import canonical_form

    cf = canonical_form(src)
    B, b = dst.shape, dst.base
    rest = hom_shape(cf.shape, B)
    if cf.variant == "Flex":
        if not member_of_3A(b):
            return None
        H = hom_shape(direct_sum(GroupShape((3,)), cf.shape), B)
        return PointedAbelian(H, H.zero)
    if cf.variant == "OneZ":
        return _shift_pointed(b, rest)
    head = _torsion_point(b, cf.k)
    return None if head is None else _shift_pointed(head.base, rest)


# -- automorphisms -----------------------------------------------------------


class AutReport(NamedTuple):
    order: int
    ann3_order: int
    aut_A_order: int
    eta_image_size: int
    eta_kernel_size: int
    exact: bool


def automorphisms(P: PointedAbelian) -> list[AffineMorphism]:
    """Bijective self-morphisms of a finite ``_cA``."""
    return [f for f in enumerate_morphisms(P, P) if f.is_bijective()]


def _mod3_key(x: GroupElement) -> tuple[int, ...]:
    return tuple(c % 3 if (m == 0 or m % 3 == 0) else 0 for m, c in zip(x.shape.moduli, x.coords))


def automorphism_report(P: PointedAbelian) -> AutReport:
    """Orders along ``0 -> Ann3(A) -> Aut(_cA) -> Aut(A) -> A/3A`` plus an exactness check.

    ``beta(t) = t + id``, ``alpha(f0 + f1) = f1`` and ``eta(g) = c - g(c) mod 3A``.
    """
    if not P.is_finite:
        raise InfiniteShapeError("automorphism_report needs a finite group")
    A, c = P.shape, P.base
    aut = automorphisms(P)
    torsion3 = ann3(A)
    autA = enumerate_isos(A, A)
    eta = {g: _mod3_key(c - g(c)) for g in autA}
    eta_kernel = {g for g, v in eta.items() if not any(v)}
    ident = GroupHom.identity(A)

    kernel_alpha = {f.constant for f in aut if f.linear == ident}
    image_alpha = {f.linear for f in aut}
    exact = (
        kernel_alpha == torsion3
        and image_alpha == eta_kernel
        and len(aut) == len(torsion3) * len(eta_kernel)
    )
    return AutReport(
        order=len(aut),
        ann3_order=len(torsion3),
        aut_A_order=len(autA),
        eta_image_size=len(set(eta.values())),
        eta_kernel_size=len(eta_kernel),
        exact=exact,
    )
