"""Classification of finitely generated elliptic groups.

Every such group splits (coordinatewise) into pointed cyclic pieces, and each
piece is one of ``_0Z, _1Z, _0Z/p^k (p != 3), _0Z/3^k, _1Z/3^k``.  The pieces
with a "1" are not independent: ``_1Z`` absorbs every other "1" piece, and
among ``_1Z/3^k`` pieces only one with the largest ``k`` is needed.  What
survives is the canonical form: ``_0A``, ``_1Z x _0A`` or ``_1Z/3^k x _0A``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from ._numtheory import factorize, prime_power
from .abelian import GroupElement, GroupHom, GroupShape, reduce
from .core import CayleyTable, PointedAbelian, to_pointed
from .errors import EllError
from .morphisms import AffineMorphism

__all__ = [
    "IndecomposableTag", "CanonicalForm",
    "split_components", "classify_cyclic", "indecomposables", "canonical_form",
    "classify_table", "free_elliptic", "universal_map", "embed_into_flex",
    "merge_isomorphism",
]


class IndecomposableTag(NamedTuple):
    """One of Z0, Z1, Q0 (p != 3), T0, T1; ``p``/``k`` describe ``Z/p^k``."""

    kind: str
    p: int = 0
    k: int = 0

    @property
    def modulus(self) -> int:
        return self.p ** self.k if self.p else 0

    def __str__(self) -> str:
        point = "1" if self.kind in ("Z1", "T1") else "0"
        group = "Z" if not self.p else f"Z/{self.p}^{self.k}"
        return f"_{point}{group}"


def _factor_key(m: int) -> tuple[int, int]:
    return (0, 0) if m == 0 else prime_power(m)


@dataclass(frozen=True)
class CanonicalForm:
    """``Flex``: ``_0A``; ``OneZ``: ``_1Z x _0A``; ``OneTorsion``: ``_1Z/3^k x _0A``.

    ``shape`` holds ``A`` with factors sorted by ``(p, k)``, free factors first.
    """

    variant: str
    shape: GroupShape
    k: int = 0

    def __post_init__(self):
        if self.variant not in ("Flex", "OneZ", "OneTorsion"):
            raise EllError(f"unknown variant {self.variant!r}")
        if (self.variant == "OneTorsion") != (self.k > 0):
            raise EllError("k >= 1 exactly for OneTorsion")
        moduli = tuple(sorted((m for m in self.shape.moduli if m != 1), key=_factor_key))
        object.__setattr__(self, "shape", GroupShape(moduli))

    def to_pointed(self) -> PointedAbelian:
        """The standard representative as a pointed abelian group."""
        if self.variant == "Flex":
            return PointedAbelian(self.shape, self.shape.zero)
        lead = 0 if self.variant == "OneZ" else 3 ** self.k
        shape = GroupShape((lead,) + self.shape.moduli)
        return PointedAbelian(shape, reduce(shape, (1,) + (0,) * len(self.shape)))

    def to_dict(self) -> dict:
        out: dict = {"variant": self.variant}
        if self.variant == "OneTorsion":
            out["k"] = self.k
        out["shape"] = list(self.shape.moduli)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "CanonicalForm":
        return cls(data["variant"], GroupShape(tuple(data["shape"])), data.get("k", 0))

    def __str__(self) -> str:
        rest = f"_0({self.shape})"
        if self.variant == "Flex":
            return rest
        head = "_1Z" if self.variant == "OneZ" else f"_1Z/{3 ** self.k}"
        return f"{head} x {rest}" if self.shape.moduli else head


def split_components(P: PointedAbelian) -> list[tuple[GroupShape, int]]:
    """One pointed cyclic factor per modulus (coordinatewise splitting)."""
    return [(GroupShape((m,)), a) for m, a in zip(P.shape.moduli, P.base.coords)]


def classify_cyclic(modulus: int, base: int) -> IndecomposableTag:
    """Tag of ``_base(Z/modulus)`` for modulus 0 (meaning Z) or a prime power."""
    if modulus == 0:
        return IndecomposableTag("Z1" if base % 3 else "Z0")
    pk = prime_power(modulus)
    if pk is None:
        raise EllError(f"{modulus} is neither 0 nor a prime power")
    p, k = pk
    if p != 3:
        return IndecomposableTag("Q0", p, k)
    return IndecomposableTag("T1" if base % 3 else "T0", 3, k)


def indecomposables(P: PointedAbelian) -> list[IndecomposableTag]:
    """Split every factor into prime-power pieces (CRT) and tag each one."""
    tags = []
    for m, a in zip(P.shape.moduli, P.base.coords):
        if m == 0:
            tags.append(classify_cyclic(0, a))
            continue
        for p, k in sorted(factorize(m).items()):
            q = p ** k
            tags.append(classify_cyclic(q, a % q))
    return tags


def canonical_form(P: PointedAbelian) -> CanonicalForm:
    """Isomorphism invariant of a finitely generated ``_aA``."""
    tags = indecomposables(P)
    moduli = [t.modulus for t in tags]
    if any(t.kind == "Z1" for t in tags):
        moduli.remove(0)
        return CanonicalForm("OneZ", GroupShape(tuple(moduli)))
    ks = [t.k for t in tags if t.kind == "T1"]
    if ks:
        k = max(ks)
        moduli.remove(3 ** k)
        return CanonicalForm("OneTorsion", GroupShape(tuple(moduli)), k)
    return CanonicalForm("Flex", GroupShape(tuple(moduli)))


def classify_table(S: CayleyTable, o: int = 0) -> CanonicalForm:
    """Canonical form of a finite elliptic group given as a table."""
    P, _ = to_pointed(S, o)
    return canonical_form(P)


def merge_isomorphism(m1: int, m2: int) -> AffineMorphism:
    """``(x, y) -> (x, 2x + y - 1)`` from ``_(1,1)(Z/m1 + Z/m2)`` onto ``_(1,0)(Z/m1 + Z/m2)``.

    Modulus 0 stands for Z.  Well defined when ``m2`` divides ``2*m1`` (for
    instance ``m1 = 0``, or 3-powers with ``m1 >= m2``).
    """
    shape = GroupShape((m1, m2))
    src = PointedAbelian(shape, reduce(shape, (1, 1)))
    dst = PointedAbelian(shape, reduce(shape, (1, 0)))
    lin = GroupHom.from_matrix(shape, shape, [(1, 2), (0, 1)])
    return AffineMorphism(src, dst, reduce(shape, (0, -1)), lin)


# -- free objects ------------------------------------------------------------


def free_elliptic(n: int) -> PointedAbelian | CayleyTable:
    """``_{e1}Z^n``, free on ``0, e2, ..., en``; for ``n = 0`` the empty elliptic group."""
    if n < 0:
        raise EllError("n must be non-negative")
    if n == 0:
        return CayleyTable.from_rows([])
    shape = GroupShape((0,) * n)
    return PointedAbelian(shape, reduce(shape, (1,) + (0,) * (n - 1)))


def universal_map(n: int, target: PointedAbelian, values) -> AffineMorphism:
    """The morphism ``_{e1}Z^n -> _cA`` with ``0 -> s1`` and ``e_i -> s_i`` (i >= 2).

    ``f(x) = s1 + x1 (c - 3 s1) + sum_{i>=2} x_i (s_i - s1)``.
    """
    values = [v if isinstance(v, GroupElement) else target.shape(v) for v in values]
    if len(values) != n or n < 1:
        raise EllError("need exactly n >= 1 values")
    for v in values:
        if v.shape != target.shape:
            raise EllError(f"{v} is not in the target")
    src = free_elliptic(n)
    s1, c = values[0], target.base
    images = [c - 3 * s1] + [s - s1 for s in values[1:]]
    return AffineMorphism(src, target, s1, GroupHom(src.shape, target.shape, tuple(images)))


def embed_into_flex(P: PointedAbelian) -> tuple[AffineMorphism, PointedAbelian]:
    """Injective morphism into an elliptic group with a flex, built factor by factor.

    A factor ``_aZ/m`` whose base is not divisible by 3 goes to ``_0Z/3m``
    (``_0Z`` when ``m = 0``) via ``x -> a - 3x``; every other factor already has
    a flex and is mapped identically.
    """
    tgt_moduli, tgt_base, const, cols = [], [], [], []
    for m, a in zip(P.shape.moduli, P.base.coords):
        needs = (a % 3 != 0) if m == 0 else (m % 3 == 0 and a % 3 != 0)
        if needs:
            tgt_moduli.append(3 * m)
            tgt_base.append(0)
            const.append(a)
            cols.append(-3)
        else:
            tgt_moduli.append(m)
            tgt_base.append(a)
            const.append(0)
            cols.append(1)
    shape = GroupShape(tuple(tgt_moduli))
    target = PointedAbelian(shape, reduce(shape, tgt_base))
    n = len(tgt_moduli)
    columns = [[cols[j] if i == j else 0 for i in range(n)] for j in range(n)]
    kappa = AffineMorphism(
        P, target, reduce(shape, const), GroupHom.from_matrix(P.shape, shape, columns)
    )
    return kappa, target
