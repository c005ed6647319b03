"""Products, coproducts, congruences and tensor closed forms.

Coproducts of finitely generated elliptic groups come from four explicit
recipes, chosen from the canonical forms of the two sides:

``flex-flex``
    ``_0A ⊔ _0B = _0(A + B + Z/3)``, ``i(x) = (x, 0, 0)``, ``j(y) = (0, y, 1)``
``onez``
    ``(_1Z x _0B) ⊔ _aA = _(0,0,a)(Z + B + A)``, ``i(n, b) = (1 - 3n, b, na)``,
    ``j(x) = (0, 0, x)``
``torsion-flex``
    ``(_1Z/3^k x _0B) ⊔ _0A = _0(Z/3^(k+1) + B + A)``, ``i(n, b) = (1 - 3n, b, 0)``
``torsion-torsion``
    ``(_1Z/3^k x _0A) ⊔ (_1Z/3^l x _0B) = _(0,1,0,0)(Z/3^(k+1) + Z/3^l + A + B)``
    for ``k >= l``, ``i(n, a) = (1 - 3n, n, a, 0)``, ``j(m, b) = (0, m, 0, b)``
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .abelian import (
    GroupElement, GroupHom, GroupShape, direct_sum, in_subgroup, mod3_quotient,
    reduce, tensor,
)
from .classify import CanonicalForm, canonical_form
from .core import CayleyTable, PointedAbelian, derived_group, to_table
from .errors import EllError, NoClosedFormError, PreconditionError, ShapeMismatchError
from .morphisms import AffineMorphism, compose, enumerate_morphisms

__all__ = [
    "product", "CoproductDiagram", "coproduct", "copair", "UniversalReport",
    "universal_report", "verify_universal",
    "Congruence", "is_congruence", "congruence_from_subgroup", "quotient",
    "canonical_surjection", "enumerate_congruences",
    "coset_is_subgroup", "tensor_closed_form", "bimorphism_count",
]


def product(P: PointedAbelian, Q: PointedAbelian) -> PointedAbelian:
    shape = direct_sum(P.shape, Q.shape)
    return PointedAbelian(shape, reduce(shape, P.base.coords + Q.base.coords))


# -- coproducts --------------------------------------------------------------


@dataclass(frozen=True)
class CoproductDiagram:
    """``left --inj_left--> object <--inj_right-- right``.

    ``swapped`` records that the recipe was applied with the arguments
    exchanged; the injections are already given in the caller's order.
    """

    object: PointedAbelian
    inj_left: AffineMorphism
    inj_right: AffineMorphism
    recipe: str
    swapped: bool = False

    @property
    def left(self) -> PointedAbelian:
        return self.inj_left.source

    @property
    def right(self) -> PointedAbelian:
        return self.inj_right.source


def _unit(n: int, i: int, value: int = 1) -> list[int]:
    v = [0] * n
    v[i] = value
    return v


def _build(recipe: str, L: CanonicalForm, R: CanonicalForm) -> CoproductDiagram:
    Lp, Rp = L.to_pointed(), R.to_pointed()
    if recipe == "flex-flex":
        A, B = L.shape.moduli, R.shape.moduli
        shape = GroupShape(A + B + (3,))
        n = len(shape)
        obj = PointedAbelian(shape, shape.zero)
        i_cols = [_unit(n, t) for t in range(len(A))]
        j_cols = [_unit(n, len(A) + t) for t in range(len(B))]
        i_const, j_const = [0] * n, _unit(n, n - 1)
    elif recipe == "onez":
        Bm, a = L.shape.moduli, Rp.base.coords
        Am = Rp.shape.moduli
        shape = GroupShape((0,) + Bm + Am)
        n = len(shape)
        obj = PointedAbelian(shape, reduce(shape, [0] * (1 + len(Bm)) + list(a)))
        i_cols = [[-3] + [0] * len(Bm) + list(a)]
        i_cols += [_unit(n, 1 + t) for t in range(len(Bm))]
        j_cols = [_unit(n, 1 + len(Bm) + t) for t in range(len(Am))]
        i_const, j_const = _unit(n, 0), [0] * n
    elif recipe == "torsion-flex":
        k, Bm, Am = L.k, L.shape.moduli, R.shape.moduli
        shape = GroupShape((3 ** (k + 1),) + Bm + Am)
        n = len(shape)
        obj = PointedAbelian(shape, shape.zero)
        i_cols = [_unit(n, 0, -3)] + [_unit(n, 1 + t) for t in range(len(Bm))]
        j_cols = [_unit(n, 1 + len(Bm) + t) for t in range(len(Am))]
        i_const, j_const = _unit(n, 0), [0] * n
    elif recipe == "torsion-torsion":
        k, l, Am, Bm = L.k, R.k, L.shape.moduli, R.shape.moduli
        if k < l:
            raise PreconditionError("torsion-torsion recipe needs k >= l")
        shape = GroupShape((3 ** (k + 1), 3 ** l) + Am + Bm)
        n = len(shape)
        obj = PointedAbelian(shape, reduce(shape, _unit(n, 1)))
        i_cols = [[-3, 1] + [0] * (n - 2)] + [_unit(n, 2 + t) for t in range(len(Am))]
        j_cols = [_unit(n, 1)] + [_unit(n, 2 + len(Am) + t) for t in range(len(Bm))]
        i_const, j_const = _unit(n, 0), [0] * n
    else:
        raise EllError(f"unknown recipe {recipe!r}")
    i = AffineMorphism(Lp, obj, reduce(shape, i_const), GroupHom.from_matrix(Lp.shape, shape, i_cols))
    j = AffineMorphism(Rp, obj, reduce(shape, j_const), GroupHom.from_matrix(Rp.shape, shape, j_cols))
    return CoproductDiagram(obj, i, j, recipe)


def _as_form(X) -> CanonicalForm:
    return X if isinstance(X, CanonicalForm) else canonical_form(X)


def coproduct(left, right) -> CoproductDiagram:
    """Coproduct of two finitely generated elliptic groups.

    Arguments may be canonical forms or pointed groups (which are replaced by
    the standard representative of their canonical form).
    """
    L, R = _as_form(left), _as_form(right)
    kinds = (L.variant, R.variant)
    if L.variant == "OneZ":
        return _build("onez", L, R)
    if R.variant == "OneZ":
        return _swap(_build("onez", R, L))
    if kinds == ("Flex", "Flex"):
        return _build("flex-flex", L, R)
    if kinds == ("OneTorsion", "Flex"):
        return _build("torsion-flex", L, R)
    if kinds == ("Flex", "OneTorsion"):
        return _swap(_build("torsion-flex", R, L))
    if L.k >= R.k:
        return _build("torsion-torsion", L, R)
    return _swap(_build("torsion-torsion", R, L))


def _swap(D: CoproductDiagram) -> CoproductDiagram:
    return CoproductDiagram(D.object, D.inj_right, D.inj_left, D.recipe, not D.swapped)


def copair(D: CoproductDiagram, f: AffineMorphism, g: AffineMorphism) -> AffineMorphism:
    """The unique ``h`` with ``h o inj_left = f`` and ``h o inj_right = g``."""
    if f.target != g.target:
        raise ShapeMismatchError("f and g need a common target")
    if f.source != D.left or g.source != D.right:
        raise ShapeMismatchError("f, g must start at the diagram's left/right factors")
    if D.swapped:
        f, g = g, f
    E = f.target
    f0, g0 = f.constant, g.constant
    fi, gi = list(f.linear.images), list(g.linear.images)
    if D.recipe == "flex-flex":
        const, images = f0, fi + gi + [g0 - f0]
    elif D.recipe in ("onez", "torsion-flex"):
        const, images = g0, [f0 - g0] + fi[1:] + gi
    elif D.recipe == "torsion-torsion":
        const, images = g0, [f0 - g0, gi[0]] + fi[1:] + gi[1:]
    else:
        raise EllError(f"unknown recipe {D.recipe!r}")
    return AffineMorphism(D.object, E, const, GroupHom(D.object.shape, E.shape, tuple(images)))


class UniversalReport(NamedTuple):
    left_count: int
    right_count: int
    object_count: int
    unique: bool
    copair_ok: bool

    @property
    def ok(self) -> bool:
        return self.unique and self.copair_ok and self.object_count == self.left_count * self.right_count


def universal_report(D: CoproductDiagram, E: PointedAbelian) -> UniversalReport:
    """Check the universal property against a finite test object ``E``."""
    ML = enumerate_morphisms(D.left, E)
    MR = enumerate_morphisms(D.right, E)
    MO = enumerate_morphisms(D.object, E)
    seen: dict = {}
    for h in MO:
        key = (compose(h, D.inj_left), compose(h, D.inj_right))
        seen.setdefault(key, []).append(h)
    unique = all(len(seen.get((f, g), ())) == 1 for f in ML for g in MR)
    copair_ok = all(seen.get((f, g), [None])[0] == copair(D, f, g) for f in ML for g in MR)
    return UniversalReport(len(ML), len(MR), len(MO), unique, copair_ok)


def verify_universal(D: CoproductDiagram, E: PointedAbelian) -> bool:
    return universal_report(D, E).ok


# -- congruences -------------------------------------------------------------


@dataclass(frozen=True)
class Congruence:
    carrier: CayleyTable
    classes: tuple[tuple[int, ...], ...]

    def class_of(self) -> list[int]:
        out = [0] * self.carrier.size
        for k, cls in enumerate(self.classes):
            for x in cls:
                out[x] = k
        return out


def _normalize(labels: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    groups: dict[int, list[int]] = {}
    for x, lab in enumerate(labels):
        groups.setdefault(lab, []).append(x)
    return tuple(sorted(tuple(g) for g in groups.values()))


def is_congruence(S: CayleyTable, classes: Sequence[Sequence[int]]) -> bool:
    """``x ~ y`` and ``u ~ v`` imply ``x*u ~ y*v``; exhaustive."""
    lab = [None] * S.size
    for k, cls in enumerate(classes):
        for x in cls:
            lab[x] = k
    if any(v is None for v in lab):
        return False
    T = S.table
    for cls in classes:
        rep = cls[0]
        for x in cls[1:]:
            for u in range(S.size):
                if lab[T[x, u]] != lab[T[rep, u]]:
                    return False
    return True


def _table_of(S) -> CayleyTable:
    return to_table(S) if isinstance(S, PointedAbelian) else S


def _index_of(S, x) -> int:
    if isinstance(S, PointedAbelian):
        return S.elements().index(x)
    return int(x)


def congruence_from_subgroup(S, c, K) -> Congruence:
    """Congruence ``x ~ y`` iff ``x +_c (-_c y)`` lies in the subgroup ``K`` of ``(S, +_c)``.

    ``S`` is a table (elements are indices) or a finite pointed group
    (elements are group elements).
    """
    T = _table_of(S)
    ci = _index_of(S, c)
    Ki = {_index_of(S, k) for k in K}
    A = derived_group(T, ci)
    if ci not in Ki or any(A.sub(x, y) not in Ki for x in Ki for y in Ki):
        raise PreconditionError("K is not a subgroup of (S, +_c)")
    lab = [-1] * T.size
    nxt = 0
    for x in range(T.size):
        if lab[x] < 0:
            for k in Ki:
                lab[A.add(x, k)] = nxt
            nxt += 1
    return Congruence(T, _normalize(lab))


def quotient(S, cong: Congruence) -> CayleyTable:
    """Elliptic group on the classes; classes ordered by smallest member."""
    T = _table_of(S)
    if not is_congruence(T, cong.classes):
        raise PreconditionError("not a congruence")
    lab = cong.class_of()
    m = len(cong.classes)
    rows = np.array(
        [[lab[T.star(ci[0], cj[0])] for cj in cong.classes] for ci in cong.classes], dtype=np.int64
    ).reshape(m, m)
    labels = tuple("{" + ",".join(T.labels[x] for x in cls) + "}" for cls in cong.classes)
    return CayleyTable(m, labels, rows)


def canonical_surjection(cong: Congruence) -> list[int]:
    """Index map ``S -> S/~``."""
    return cong.class_of()


def _close(T: np.ndarray, parent: list[int]) -> tuple[tuple[int, ...], ...]:
    n = len(parent)

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    changed = True
    while changed:
        changed = False
        for x in range(n):
            r = find(x)
            if r == x:
                continue
            for u in range(n):
                a, b = find(int(T[x, u])), find(int(T[r, u]))
                if a != b:
                    parent[max(a, b)] = min(a, b)
                    changed = True
    return _normalize([find(x) for x in range(n)])


def _merge(n: int, pairs) -> list[int]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    return parent


def enumerate_congruences(S) -> list[tuple[tuple[int, ...], ...]]:
    """All congruences of a finite elliptic group by brute force.

    Principal congruences are computed by closing a single pair under
    translations; every congruence is a join of principal ones.
    """
    T = _table_of(S)
    n = T.size
    M = T.table
    trivial = _normalize(range(n))
    principal = {_close(M, _merge(n, [(a, b)])) for a in range(n) for b in range(a + 1, n)}
    found = {trivial} | principal
    frontier = list(principal)
    while frontier:
        nxt = []
        for X in frontier:
            for Y in list(found):
                pairs = [(c[0], x) for c in X + Y for x in c[1:]]
                Z = _close(M, _merge(n, pairs))
                if Z not in found:
                    found.add(Z)
                    nxt.append(Z)
        frontier = nxt
    return sorted(found, key=lambda p: (-len(p), p))


def coset_is_subgroup(P: PointedAbelian, c: GroupElement, generators: Sequence[GroupElement]) -> bool:
    """Whether the coset ``c + H`` is closed under ``x*y = a - x - y``; true iff ``a - 3c in H``."""
    return in_subgroup(P.base - 3 * c, generators)


# -- tensor products ---------------------------------------------------------


def tensor_closed_form(R, S) -> PointedAbelian:
    """``_1Z (x) S = S`` and ``_0A (x) _0B = _0(A/3A + B/3B + A(x)B)``.

    The flex case is pinned by ``Mor(R (x) S, T) = Mor(R, Mor(S, T))``: both
    sides equal ``Hom(Z/3 + A/3A + B/3B + A(x)B, C)`` for ``T = _0C``, and the
    extra ``Z/3`` on the left comes from ``Mor(_0X, _0C) = Hom(Z/3 + X, C)``.
    """
    FR, FS = _as_form(R), _as_form(S)

    def realize(X):
        return X.to_pointed() if isinstance(X, CanonicalForm) else X

    free_one = lambda F: F.variant == "OneZ" and not F.shape.moduli  # noqa: E731
    if free_one(FR):
        return realize(S)
    if free_one(FS):
        return realize(R)
    if FR.variant == FS.variant == "Flex":
        A, B = FR.shape, FS.shape
        shape = direct_sum(mod3_quotient(A), mod3_quotient(B), tensor(A, B))
        return PointedAbelian(shape, shape.zero)
    raise NoClosedFormError(f"no closed form for {FR} (x) {FS}")


def bimorphism_count(R: PointedAbelian, S: PointedAbelian, T: PointedAbelian, limit: int = 81) -> int:
    """Number of maps ``R x S -> T`` that are morphisms in each argument separately.

    Columns (fixed ``s``) are drawn from ``Mor(R, T)``; a partial assignment is
    pruned as soon as some row stops being the prefix of a morphism ``S -> T``.
    """
    if not (R.is_finite and S.is_finite and T.is_finite):
        raise EllError("bimorphism_count needs finite groups")
    if R.order * S.order > limit:
        raise PreconditionError(f"|R|*|S| = {R.order * S.order} exceeds {limit}")
    R_el, S_el = R.elements(), S.elements()
    t_index = {x: i for i, x in enumerate(T.elements())}
    cols = [tuple(t_index[f(r)] for r in R_el) for f in enumerate_morphisms(R, T)]
    rows = {tuple(t_index[h(s)] for s in S_el) for h in enumerate_morphisms(S, T)}
    prefixes = [set() for _ in range(len(S_el) + 1)]
    for row in rows:
        for k in range(len(row) + 1):
            prefixes[k].add(row[:k])

    def extend(depth: int, partial: tuple) -> int:
        if depth == len(S_el):
            return 1
        total = 0
        allowed = prefixes[depth + 1]
        for col in cols:
            nxt = tuple(p + (v,) for p, v in zip(partial, col))
            if all(p in allowed for p in nxt):
                total += extend(depth + 1, nxt)
        return total

    return extend(0, tuple(() for _ in R_el))
