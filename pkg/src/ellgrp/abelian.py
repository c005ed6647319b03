"""Finitely generated abelian groups written as explicit direct sums of cyclic groups.

A group is a :class:`GroupShape`, i.e. a tuple of moduli where ``0`` stands for
an infinite cyclic factor.  Elements are coordinate vectors reduced into
``[0, m)`` on every finite factor.  Nothing here uses Smith normal form: the
moduli are kept exactly as given and isomorphism of shapes is decided from
prime-power invariants.

>>> A = GroupShape.parse("3,3")
>>> A(1, 2) + A(2, 2)
GroupElement((3, 3), (0, 1))
>>> len(enumerate_isos(A, A))
48
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, prod
from typing import Callable, Hashable, Iterable, Sequence

from ._numtheory import factorize
from .errors import EllError, InfiniteShapeError, ShapeMismatchError

__all__ = [
    "GroupShape", "GroupElement", "GroupHom",
    "reduce", "add", "neg", "smul",
    "enumerate_elements", "enumerate_homs", "enumerate_isos",
    "ann3", "triple_image", "member_of_3A", "member_of_nA", "divide_by_3",
    "tensor", "mod3_quotient", "hom_shape", "direct_sum",
    "invariants", "shapes_isomorphic", "element_order",
    "in_subgroup", "subgroup_closure", "enumerate_subgroups", "decompose",
]


@dataclass(frozen=True)
class GroupShape:
    """Direct sum of cyclic groups; modulus 0 means Z, modulus m >= 1 means Z/m."""

    moduli: tuple[int, ...] = ()

    def __post_init__(self):
        moduli = tuple(int(m) for m in self.moduli)
        if any(m < 0 for m in moduli):
            raise EllError(f"moduli must be non-negative, got {moduli}")
        object.__setattr__(self, "moduli", moduli)

    @classmethod
    def parse(cls, text: str) -> "GroupShape":
        """Parse a descriptor such as ``"0,9,3"``; the empty string is the trivial group."""
        text = text.strip()
        if not text:
            return cls(())
        try:
            return cls(tuple(int(t) for t in text.split(",")))
        except ValueError as exc:
            raise EllError(f"malformed group descriptor {text!r}") from exc

    @classmethod
    def cyclic(cls, m: int) -> "GroupShape":
        return cls((m,))

    def __len__(self) -> int:
        return len(self.moduli)

    def __call__(self, *coords: int) -> "GroupElement":
        if len(coords) == 1 and not isinstance(coords[0], int):
            coords = tuple(coords[0])
        return reduce(self, coords)

    @property
    def is_finite(self) -> bool:
        return all(m >= 1 for m in self.moduli)

    @property
    def free_rank(self) -> int:
        return sum(1 for m in self.moduli if m == 0)

    @property
    def order(self) -> int | None:
        """Number of elements, or None for an infinite group."""
        return prod(self.moduli) if self.is_finite else None

    @property
    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * len(self.moduli))

    def basis(self) -> list["GroupElement"]:
        n = len(self.moduli)
        return [reduce(self, tuple(int(i == j) for i in range(n))) for j in range(n)]

    def elements(self) -> list["GroupElement"]:
        return enumerate_elements(self)

    def __contains__(self, x) -> bool:
        return isinstance(x, GroupElement) and x.shape == self

    def descriptor(self) -> str:
        return ",".join(str(m) for m in self.moduli)

    def __str__(self) -> str:
        if not self.moduli:
            return "0"
        return " + ".join("Z" if m == 0 else f"Z/{m}" for m in self.moduli)


@dataclass(frozen=True)
class GroupElement:
    shape: GroupShape
    coords: tuple[int, ...]

    def __repr__(self) -> str:
        return f"GroupElement({self.shape.moduli}, {self.coords})"

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"

    def __add__(self, other: "GroupElement") -> "GroupElement":
        return add(self, other)

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return add(self, neg(other))

    def __neg__(self) -> "GroupElement":
        return neg(self)

    def __rmul__(self, k: int) -> "GroupElement":
        return smul(k, self)

    def __mul__(self, k: int) -> "GroupElement":
        return smul(k, self)

    def is_zero(self) -> bool:
        return not any(self.coords)


def _reduce_coords(moduli: Sequence[int], raw: Sequence[int]) -> tuple[int, ...]:
    return tuple(int(r) % m if m else int(r) for m, r in zip(moduli, raw))


def reduce(shape: GroupShape, raw: Sequence[int]) -> GroupElement:
    """Reduce an integer vector into ``shape``; free coordinates are left alone."""
    raw = tuple(raw)
    if len(raw) != len(shape.moduli):
        raise ShapeMismatchError(f"expected {len(shape.moduli)} coordinates, got {len(raw)}")
    return GroupElement(shape, _reduce_coords(shape.moduli, raw))


def _check_same(x: GroupElement, y: GroupElement) -> None:
    if x.shape != y.shape:
        raise ShapeMismatchError(f"{x.shape} vs {y.shape}")


def add(x: GroupElement, y: GroupElement) -> GroupElement:
    _check_same(x, y)
    return GroupElement(x.shape, _reduce_coords(x.shape.moduli, [a + b for a, b in zip(x.coords, y.coords)]))


def neg(x: GroupElement) -> GroupElement:
    return GroupElement(x.shape, _reduce_coords(x.shape.moduli, [-a for a in x.coords]))


def smul(k: int, x: GroupElement) -> GroupElement:
    return GroupElement(x.shape, _reduce_coords(x.shape.moduli, [k * a for a in x.coords]))


def _require_finite(*shapes: GroupShape) -> None:
    for s in shapes:
        if not s.is_finite:
            raise InfiniteShapeError(f"{s} has a free factor")


def enumerate_elements(shape: GroupShape) -> list[GroupElement]:
    """All elements in lexicographic order of their reduced coordinates."""
    _require_finite(shape)
    return [GroupElement(shape, c) for c in itertools.product(*(range(m) for m in shape.moduli))]


def direct_sum(*shapes: GroupShape) -> GroupShape:
    return GroupShape(tuple(m for s in shapes for m in s.moduli))


def element_order(x: GroupElement) -> int:
    """Order of ``x``; 0 when ``x`` has infinite order."""
    n = 1
    for m, c in zip(x.shape.moduli, x.coords):
        if m == 0:
            if c:
                return 0
            continue
        k = m // gcd(m, c)
        n = n * k // gcd(n, k)
    return n


# -- homomorphisms ---------------------------------------------------------


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism given by the images of the standard generators of ``source``."""

    source: GroupShape
    target: GroupShape
    images: tuple[GroupElement, ...]

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if len(images) != len(self.source.moduli):
            raise ShapeMismatchError("one image per source generator is required")
        for m, b in zip(self.source.moduli, images):
            if b.shape != self.target:
                raise ShapeMismatchError(f"image {b} does not lie in {self.target}")
            if m and not smul(m, b).is_zero():
                raise EllError(f"image {b} is not killed by {m}")

    @classmethod
    def identity(cls, shape: GroupShape) -> "GroupHom":
        return cls(shape, shape, tuple(shape.basis()))

    @classmethod
    def zero(cls, source: GroupShape, target: GroupShape) -> "GroupHom":
        return cls(source, target, (target.zero,) * len(source.moduli))

    @classmethod
    def from_matrix(cls, source: GroupShape, target: GroupShape, columns: Sequence[Sequence[int]]) -> "GroupHom":
        """Build from the coordinate vectors of the generator images."""
        return cls(source, target, tuple(reduce(target, c) for c in columns))

    def __call__(self, x: GroupElement) -> GroupElement:
        if x.shape != self.source:
            raise ShapeMismatchError(f"{x} is not in {self.source}")
        acc = [0] * len(self.target.moduli)
        for c, img in zip(x.coords, self.images):
            if c:
                for i, v in enumerate(img.coords):
                    acc[i] += c * v
        return GroupElement(self.target, _reduce_coords(self.target.moduli, acc))

    def __add__(self, other: "GroupHom") -> "GroupHom":
        return GroupHom(self.source, self.target, tuple(a + b for a, b in zip(self.images, other.images)))

    def __neg__(self) -> "GroupHom":
        return GroupHom(self.source, self.target, tuple(-a for a in self.images))

    def __sub__(self, other: "GroupHom") -> "GroupHom":
        return self + (-other)

    def compose(self, inner: "GroupHom") -> "GroupHom":
        """``self o inner``."""
        if inner.target != self.source:
            raise ShapeMismatchError("cannot compose: target/source differ")
        return GroupHom(inner.source, self.target, tuple(self(b) for b in inner.images))

    def matrix(self) -> list[list[int]]:
        """Coordinates of generator images, one row per generator."""
        return [list(b.coords) for b in self.images]

    def is_injective(self) -> bool:
        _require_finite(self.source)
        return all(not self(x).is_zero() for x in enumerate_elements(self.source)[1:])

    def is_bijective(self) -> bool:
        _require_finite(self.source, self.target)
        return self.source.order == self.target.order and self.is_injective()


def _generator_targets(m: int, B: GroupShape) -> list[GroupElement]:
    elems = enumerate_elements(B)
    if m == 0:
        return elems
    return [b for b in elems if smul(m, b).is_zero()]


def enumerate_homs(A: GroupShape, B: GroupShape) -> list[GroupHom]:
    """Every homomorphism ``A -> B`` (``B`` finite), lexicographic in the generator images."""
    _require_finite(B)
    choices = [_generator_targets(m, B) for m in A.moduli]
    return [GroupHom(A, B, imgs) for imgs in itertools.product(*choices)]


@lru_cache(maxsize=256)
def _isos_cached(A: GroupShape, B: GroupShape) -> tuple[GroupHom, ...]:
    if A.order != B.order:
        return ()
    nonzero = enumerate_elements(A)[1:]
    out = []
    for f in enumerate_homs(A, B):
        if all(not f(x).is_zero() for x in nonzero):
            out.append(f)
    return tuple(out)


def enumerate_isos(A: GroupShape, B: GroupShape) -> list[GroupHom]:
    """Every isomorphism ``A -> B`` of finite groups (bijectivity checked by brute force)."""
    _require_finite(A, B)
    return list(_isos_cached(A, B))


# -- multiplication by three ----------------------------------------------


def ann3(A: GroupShape) -> set[GroupElement]:
    return {x for x in enumerate_elements(A) if smul(3, x).is_zero()}


def triple_image(A: GroupShape) -> set[GroupElement]:
    return {smul(3, x) for x in enumerate_elements(A)}


def member_of_3A(x: GroupElement) -> bool:
    """Decide ``x in 3A`` coordinatewise; works for shapes with free factors."""
    for m, c in zip(x.shape.moduli, x.coords):
        if m == 0:
            if c % 3:
                return False
        elif c % gcd(3, m):
            return False
    return True


def member_of_nA(x: GroupElement, n: int) -> bool:
    """Decide ``x in nA`` for ``n >= 1``."""
    for m, c in zip(x.shape.moduli, x.coords):
        d = n if m == 0 else gcd(n, m)
        if c % d:
            return False
    return True


def divide_by_3(x: GroupElement) -> GroupElement | None:
    """Some ``y`` with ``3y = x``, or None when ``x`` is not in ``3A``."""
    if not member_of_3A(x):
        return None
    coords = []
    for m, c in zip(x.shape.moduli, x.coords):
        if m == 0 or m % 3 == 0:
            coords.append(c // 3)
        else:
            coords.append(c * pow(3, -1, m) if m > 1 else 0)
    return reduce(x.shape, coords)


# -- derived shapes ---------------------------------------------------------


def tensor(A: GroupShape, B: GroupShape) -> GroupShape:
    """``A (x) B`` factor by factor; trivial factors are dropped."""
    out = []
    for m in A.moduli:
        for n in B.moduli:
            if m and n:
                g = gcd(m, n)
            else:
                g = m or n
            if g != 1:
                out.append(g)
    return GroupShape(tuple(out))


def mod3_quotient(A: GroupShape) -> GroupShape:
    """``A / 3A``."""
    out = []
    for m in A.moduli:
        g = 3 if m == 0 else gcd(m, 3)
        if g != 1:
            out.append(g)
    return GroupShape(tuple(out))


def hom_shape(A: GroupShape, B: GroupShape) -> GroupShape:
    """``Hom(A, B)`` as a direct sum of cyclic groups."""
    out = []
    for m in A.moduli:
        for n in B.moduli:
            if m == 0:
                g = n
            elif n == 0:
                g = 1
            else:
                g = gcd(m, n)
            if g != 1:
                out.append(g)
    return GroupShape(tuple(out))


def invariants(A: GroupShape) -> tuple[int, tuple[tuple[int, int], ...]]:
    """``(free rank, sorted prime-power factors (p, k))``; a complete isomorphism invariant."""
    pp = []
    for m in A.moduli:
        if m == 0:
            continue
        pp.extend(sorted(factorize(m).items()))
    return A.free_rank, tuple(sorted(pp))


def shapes_isomorphic(A: GroupShape, B: GroupShape) -> bool:
    return invariants(A) == invariants(B)


# -- subgroups --------------------------------------------------------------


def _echelon(rows: list[list[int]], ncols: int) -> list[list[int]]:
    """Integer row echelon form (positive pivots) of the lattice spanned by ``rows``."""
    rows = [list(r) for r in rows if any(r)]
    out = []
    for col in range(ncols):
        active = [r for r in rows if r[col]]
        rest = [r for r in rows if not r[col]]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            piv = active[0]
            nxt = [piv]
            for r in active[1:]:
                q = r[col] // piv[col]
                r = [a - q * b for a, b in zip(r, piv)]
                if r[col]:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            active = nxt
        if active:
            piv = active[0]
            if piv[col] < 0:
                piv = [-a for a in piv]
            out.append(piv)
        rows = rest
    return out


def in_subgroup(x: GroupElement, generators: Iterable[GroupElement]) -> bool:
    """Membership of ``x`` in the subgroup spanned by ``generators``.

    Works for any shape: the relations ``m_i e_i`` are added to the generator
    lattice in Z^n and membership is read off an integer echelon form.
    """
    moduli = x.shape.moduli
    n = len(moduli)
    rows = []
    for g in generators:
        _check_same(x, g)
        rows.append(list(g.coords))
    rows += [[m if i == j else 0 for i in range(n)] for j, m in enumerate(moduli) if m]
    ech = _echelon(rows, n)
    v = list(x.coords)
    for r in ech:
        col = next(i for i, a in enumerate(r) if a)
        if v[col] % r[col]:
            return False
        q = v[col] // r[col]
        v = [a - q * b for a, b in zip(v, r)]
    return not any(v)


def subgroup_closure(generators: Iterable[GroupElement], shape: GroupShape) -> frozenset[GroupElement]:
    """Subgroup of a finite group generated by ``generators``, by saturation."""
    _require_finite(shape)
    H = {shape.zero}
    frontier = list(H)
    gens = list(generators)
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                y = h + g
                if y not in H:
                    H.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(H)


def enumerate_subgroups(
    elements: Sequence[Hashable],
    add_op: Callable[[Hashable, Hashable], Hashable],
    zero: Hashable,
) -> list[frozenset]:
    """All subgroups of a finite abelian group given extensionally; brute force."""

    def close(gens):
        H = {zero}
        frontier = [zero]
        while frontier:
            nxt = []
            for h in frontier:
                for g in gens:
                    y = add_op(h, g)
                    if y not in H:
                        H.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(H)

    found = {frozenset([zero])}
    queue = list(found)
    while queue:
        H = queue.pop()
        for g in elements:
            if g in H:
                continue
            K = close(list(H) + [g])
            if K not in found:
                found.add(K)
                queue.append(K)
    return sorted(found, key=lambda s: (len(s), sorted(map(repr, s))))


def decompose(
    elements: Sequence[Hashable],
    add_op: Callable[[Hashable, Hashable], Hashable],
    zero: Hashable,
) -> tuple[GroupShape, dict]:
    """Write a finite abelian group as a sum of cyclic prime-power groups.

    Returns the shape and a dict mapping every element to its coordinate
    vector.  Generators are picked greedily by maximal order in the quotient
    by what has been chosen so far, then corrected so that the sum is direct.
    """
    elements = list(elements)
    n = len(elements)

    def mult(k, x):
        acc = zero
        for _ in range(k):
            acc = add_op(acc, x)
        return acc

    def order(x):
        k, acc = 1, x
        while acc != zero:
            acc = add_op(acc, x)
            k += 1
        return k

    orders = {x: order(x) for x in elements}
    moduli: list[int] = []
    gens: list[Hashable] = []
    for p in sorted(factorize(n)):
        part = [x for x in elements if set(factorize(orders[x])) <= {p}]
        H = {zero}
        while len(H) < len(part):
            best, best_q = None, 0
            for x in part:
                if x in H:
                    continue
                q, acc = 1, x
                while acc not in H:
                    acc = add_op(acc, x)
                    q += 1
                if q > best_q:
                    best, best_q = x, q
            h = mult(best_q, best)
            fix = next((y for y in H if mult(best_q, y) == h), None)
            if fix is None:
                raise RuntimeError("greedy decomposition failed to split a cyclic summand")
            g = add_op(best, mult(orders[fix] - 1, fix) if fix != zero else zero)
            newH = set()
            acc = zero
            for _ in range(best_q):
                for y in H:
                    newH.add(add_op(y, acc))
                acc = add_op(acc, g)
            H = newH
            moduli.append(best_q)
            gens.append(g)
    shape = GroupShape(tuple(moduli))
    coords = {}
    for c in itertools.product(*(range(m) for m in moduli)):
        x = zero
        for k, g in zip(c, gens):
            x = add_op(x, mult(k, g))
        coords[x] = c
    if len(coords) != n:
        raise RuntimeError("decomposition is not bijective")
    return shape, coords
