"""Elliptic groups: pointed abelian groups, explicit Cayley tables, derived groups.

An elliptic group is a set with a commutative operation ``*`` satisfying

* EG1  ``x*y = y*x``
* EG2  ``x*(x*y) = y``
* EG3  ``x*(y*(z*w)) = w*(y*(z*x))``

Every nonempty one is isomorphic to some ``_aA``: an abelian group ``A`` with
``x*y = a - x - y``.  Finite elliptic groups that do not come with such a
presentation (for instance the points of a cubic curve) are carried around as
:class:`CayleyTable` objects.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import NamedTuple, Sequence, Union

import numpy as np

from .abelian import (
    GroupElement, GroupShape, ann3, decompose, divide_by_3, enumerate_elements,
    member_of_3A, reduce,
)
from .errors import AxiomError, EllError, InfiniteShapeError, ShapeMismatchError

__all__ = [
    "PointedAbelian", "CayleyTable", "AxiomReport", "DerivedGroup",
    "verify_axioms", "star", "to_table", "derived_group", "recover_pointed",
    "to_pointed", "flex_points", "has_flex", "some_flex", "totally_distinct_check",
    "tables_equal",
]


@dataclass(frozen=True)
class PointedAbelian:
    """The elliptic group ``_aA``: carrier ``shape`` with ``x*y = base - x - y``."""

    shape: GroupShape
    base: GroupElement

    def __post_init__(self):
        if self.base.shape != self.shape:
            raise ShapeMismatchError(f"base {self.base} does not lie in {self.shape}")

    @classmethod
    def make(cls, moduli: Sequence[int], base: Sequence[int] | None = None) -> "PointedAbelian":
        shape = GroupShape(tuple(moduli))
        return cls(shape, reduce(shape, base if base is not None else (0,) * len(shape)))

    @classmethod
    def parse(cls, text: str) -> "PointedAbelian":
        """Parse ``"m1,m2,...:a1,a2,..."``; omitting ``:...`` means base 0."""
        desc, _, pt = text.partition(":")
        shape = GroupShape.parse(desc)
        if not pt.strip():
            return cls(shape, shape.zero)
        try:
            coords = [int(t) for t in pt.split(",")]
        except ValueError as exc:
            raise EllError(f"malformed point in {text!r}") from exc
        return cls(shape, reduce(shape, coords))

    def descriptor(self) -> str:
        return f"{self.shape.descriptor()}:{','.join(map(str, self.base.coords))}"

    def __str__(self) -> str:
        return f"_{self.base}({self.shape})"

    @property
    def is_finite(self) -> bool:
        return self.shape.is_finite

    @property
    def order(self) -> int | None:
        return self.shape.order

    def elements(self) -> list[GroupElement]:
        return enumerate_elements(self.shape)

    def star(self, x: GroupElement, y: GroupElement) -> GroupElement:
        return star(self, x, y)

    def element(self, *coords: int) -> GroupElement:
        return self.shape(*coords)


@dataclass(frozen=True, eq=False)
class CayleyTable:
    """Finite magma on ``{0, ..., n-1}``; ``table[i, j]`` is the index of ``i * j``."""

    size: int
    labels: tuple[str, ...]
    table: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.table, dtype=np.int64).reshape(self.size, self.size)
        if t.size and (t.min() < 0 or t.max() >= self.size):
            raise EllError("table entry out of range")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)
        labels = tuple(self.labels) if self.labels else tuple(str(i) for i in range(self.size))
        if len(labels) != self.size:
            raise EllError("need exactly one label per element")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], labels: Sequence[str] = ()) -> "CayleyTable":
        return cls(len(rows), tuple(labels), np.array(rows, dtype=np.int64).reshape(len(rows), len(rows)))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CayleyTable)
            and self.size == other.size
            and self.labels == other.labels
            and np.array_equal(self.table, other.table)
        )

    def __hash__(self):
        return hash((self.size, self.labels, self.table.tobytes()))

    def __len__(self) -> int:
        return self.size

    def star(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    def to_json(self) -> str:
        payload = {"size": self.size, "labels": list(self.labels), "table": self.table.tolist()}
        return json.dumps(payload, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "CayleyTable":
        data = json.loads(text)
        try:
            size, labels, rows = data["size"], data["labels"], data["table"]
        except (KeyError, TypeError) as exc:
            raise EllError("CayleyTable JSON needs size, labels and table") from exc
        if len(rows) != size or any(len(r) != size for r in rows):
            raise EllError("table dimensions do not match size")
        return cls(size, tuple(labels), np.array(rows, dtype=np.int64).reshape(size, size))


def tables_equal(s: CayleyTable, t: CayleyTable) -> bool:
    """Equality of operations, ignoring labels."""
    return s.size == t.size and np.array_equal(s.table, t.table)


class AxiomReport(NamedTuple):
    eg1: bool
    eg2: bool
    eg3: bool
    first_violation: tuple | None

    @property
    def ok(self) -> bool:
        return self.eg1 and self.eg2 and self.eg3


def verify_axioms(t: CayleyTable) -> AxiomReport:
    """Exhaustive EG1-EG3 check.

    Each failing law reports its lexicographically smallest witness; the
    ``first_violation`` field is ``(law, witness)`` for the first law that
    fails, in the order EG1, EG2, EG3.
    """
    n = t.size
    T = t.table
    if n == 0:
        return AxiomReport(True, True, True, None)
    witness = None

    bad = np.argwhere(T != T.T)
    eg1 = bad.size == 0
    if not eg1:
        witness = ("EG1", tuple(int(v) for v in bad[0]))

    # EG2: T[i, T[i, j]] == j
    rows = np.arange(n)[:, None]
    bad = np.argwhere(T[rows, T] != np.arange(n)[None, :])
    eg2 = bad.size == 0
    if not eg2 and witness is None:
        witness = ("EG2", tuple(int(v) for v in bad[0]))

    # EG3: T[i, W[j,k,l]] == T[l, W[j,k,i]] with W[j,k,l] = T[j, T[k,l]]
    W = T[np.arange(n)[:, None, None], T[None, :, :]]
    cols = np.arange(n)[None, None, :]
    eg3 = True
    for i in range(n):
        lhs = T[i][W]
        rhs = T[cols, W[:, :, i][:, :, None]]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            eg3 = False
            if witness is None:
                j, k, l = (int(v) for v in bad[0])
                witness = ("EG3", (i, j, k, l))
            break
    return AxiomReport(eg1, eg2, eg3, witness)


def star(P: PointedAbelian, x: GroupElement, y: GroupElement) -> GroupElement:
    if x.shape != P.shape or y.shape != P.shape:
        raise ShapeMismatchError("operands must lie in the carrier of P")
    return reduce(P.shape, [a - b - c for a, b, c in zip(P.base.coords, x.coords, y.coords)])


def to_table(P: PointedAbelian) -> CayleyTable:
    """Cayley table of a finite ``_aA`` over the lexicographic element order."""
    if not P.is_finite:
        raise InfiniteShapeError(f"{P.shape} is infinite")
    elems = P.elements()
    index = {x.coords: i for i, x in enumerate(elems)}
    rows = [[index[star(P, x, y).coords] for y in elems] for x in elems]
    labels = tuple(str(x) for x in elems)
    return CayleyTable(len(elems), labels, np.array(rows, dtype=np.int64).reshape(len(elems), len(elems)))


Carrier = Union[CayleyTable, PointedAbelian]


@dataclass(frozen=True)
class DerivedGroup:
    """The abelian group ``(S, +_c)`` with ``x +_c y = c * (x * y)``.

    For a table the elements are indices; for ``_aA`` they are group elements
    and the sum has the closed form ``x + y - c``.
    """

    carrier: Carrier
    zero: object

    def add(self, x, y):
        S = self.carrier
        if isinstance(S, CayleyTable):
            return S.star(self.zero, S.star(x, y))
        return x + y - self.zero

    def neg(self, x):
        S = self.carrier
        if isinstance(S, CayleyTable):
            c = self.zero
            return S.star(x, S.star(c, c))
        return self.zero + self.zero - x

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, k: int, x):
        if k < 0:
            return self.mul(-k, self.neg(x))
        acc = self.zero
        for _ in range(k):
            acc = self.add(acc, x)
        return acc

    def elements(self) -> list:
        S = self.carrier
        if isinstance(S, CayleyTable):
            return list(range(S.size))
        return S.elements()


def derived_group(S: Carrier, c) -> DerivedGroup:
    if isinstance(S, CayleyTable):
        if S.size == 0:
            raise EllError("the empty elliptic group has no derived group")
        if not 0 <= int(c) < S.size:
            raise EllError(f"{c} is not an element index")
        return DerivedGroup(S, int(c))
    if c.shape != S.shape:
        raise ShapeMismatchError(f"{c} is not in {S.shape}")
    return DerivedGroup(S, c)


def recover_pointed(S: CayleyTable, o: int = 0) -> tuple[DerivedGroup, int]:
    """Return ``(A, c)`` with ``A = (S, +_o)`` and ``c = o*o``, after checking ``S = _cA``.

    Raises :class:`AxiomError` when the table is not an elliptic group.
    """
    report = verify_axioms(S)
    if not report.ok:
        raise AxiomError(f"not an elliptic group: {report.first_violation}")
    A = derived_group(S, o)
    c = S.star(o, o)
    n = S.size
    for x in range(n):
        for y in range(n):
            if S.star(x, y) != A.sub(A.sub(c, x), y):
                raise AxiomError(f"operation differs from c - x - y at {(x, y)}")
    return A, c


def to_pointed(S: CayleyTable, o: int = 0) -> tuple[PointedAbelian, list[GroupElement]]:
    """An explicit ``_cA`` isomorphic to ``S`` together with the index -> element map.

    ``(S, +_o)`` is decomposed into cyclic prime-power factors and ``c = o*o`` is
    written in the resulting coordinates.
    """
    A, c = recover_pointed(S, o)
    shape, coords = decompose(range(S.size), A.add, A.zero)
    phi = [reduce(shape, coords[i]) for i in range(S.size)]
    return PointedAbelian(shape, phi[c]), phi


def flex_points(S: Carrier) -> list:
    """All ``x`` with ``x*x = x`` (indices for a table, elements for ``_cA``)."""
    if isinstance(S, CayleyTable):
        return [i for i in range(S.size) if S.star(i, i) == i]
    if not S.is_finite:
        raise InfiniteShapeError("flex set of an infinite group; use some_flex/has_flex")
    o = some_flex(S)
    if o is None:
        return []
    return sorted((o + t for t in ann3(S.shape)), key=lambda x: x.coords)


def has_flex(P: PointedAbelian) -> bool:
    return member_of_3A(P.base)


def some_flex(P: PointedAbelian) -> GroupElement | None:
    """A solution of ``3o = c``; every flex differs from it by a 3-torsion element."""
    return divide_by_3(P.base)


def totally_distinct_check(S: CayleyTable) -> bool:
    """True iff distinct rows of the table disagree in every column."""
    T = S.table
    n = S.size
    for a in range(n):
        agree = (T[a][None, :] == T[a + 1:]).any(axis=1)
        if agree.any():
            return False
    return True
