"""Elliptic rings and the ∘-arithmetic of ``Ell1(Z)``.

An elliptic ring is an elliptic group ``(R, *)`` with an associative ``∘``
that distributes over ``*`` on both sides and has a two-sided unit.  The
basic examples are ``Ell1(R)`` (``1 - r - s``, ``r + s - 3rs``, unit 0) and
``Ell0(R)`` (``-r - s``, ``rs``, unit 1) for a unital ring ``R``.

In ``Ell1(Z)`` the map ``Σ(a) = 1 - 3a`` turns ``∘`` into ordinary
multiplication, which is how factorization is transported.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce as _fold
from typing import Callable, NamedTuple, Sequence

import numpy as np

from ._numtheory import factorize, is_prime
from .core import CayleyTable, PointedAbelian, verify_axioms
from .errors import EllError, PreconditionError, ShapeMismatchError
from .morphisms import compose, enumerate_morphisms, identity, mor_star

__all__ = [
    "EllipticRingOps", "RingAxiomReport", "ell1", "ell0", "verify_ring_axioms",
    "endo_ring", "check_ring_isomorphism",
    "EllipticMatrix", "ellmat_mul", "ellmat_star", "affine_star",
    "sigma", "circ", "circ_product", "is_circ_prime", "CircFactorization",
    "circ_factor", "circ_divides", "euclid_witness",
]


@dataclass(frozen=True)
class EllipticRingOps:
    """``(carrier, *, ∘, unit)``; ``elements`` is None for an infinite carrier."""

    name: str
    star: Callable
    circ: Callable
    unit: object
    elements: tuple | None = None

    @property
    def is_finite(self) -> bool:
        return self.elements is not None


def ell1(n: int = 0) -> EllipticRingOps:
    """``Ell1(Z/n)``; ``n = 0`` gives ``Ell1(Z)``."""
    if n < 0:
        raise EllError("n must be non-negative")
    red = (lambda x: x % n) if n else (lambda x: x)
    return EllipticRingOps(
        f"Ell1(Z/{n})" if n else "Ell1(Z)",
        lambda r, s: red(1 - r - s),
        lambda r, s: red(r + s - 3 * r * s),
        red(0),
        tuple(range(n)) if n else None,
    )


def ell0(n: int = 0) -> EllipticRingOps:
    """``Ell0(Z/n)``; ``n = 0`` gives ``Ell0(Z)``."""
    if n < 0:
        raise EllError("n must be non-negative")
    red = (lambda x: x % n) if n else (lambda x: x)
    return EllipticRingOps(
        f"Ell0(Z/{n})" if n else "Ell0(Z)",
        lambda r, s: red(-r - s),
        lambda r, s: red(r * s),
        red(1),
        tuple(range(n)) if n else None,
    )


class RingAxiomReport(NamedTuple):
    right_distributive: bool
    left_distributive: bool
    associative: bool
    unit: bool
    commutative: bool
    elliptic: bool
    witnesses: dict

    @property
    def ok(self) -> bool:
        """All ring axioms; commutativity of ∘ is reported but not required."""
        return (
            self.right_distributive and self.left_distributive
            and self.associative and self.unit and self.elliptic
        )


def _star_table(ops: EllipticRingOps) -> CayleyTable:
    els = ops.elements
    index = {x: i for i, x in enumerate(els)}
    rows = [[index[ops.star(x, y)] for y in els] for x in els]
    return CayleyTable(len(els), tuple(str(i) for i in range(len(els))),
                       np.array(rows, dtype=np.int64).reshape(len(els), len(els)))


def verify_ring_axioms(ops: EllipticRingOps) -> RingAxiomReport:
    """Exhaustive check on a finite carrier; each failed law records one witness."""
    if not ops.is_finite:
        raise EllError("verify_ring_axioms needs a finite carrier")
    els, st, ci, e = ops.elements, ops.star, ops.circ, ops.unit
    wit: dict = {}

    def first(name, gen):
        for args in gen:
            wit[name] = args
            return False
        return True

    right = first("right_distributive", (
        (x, y, z) for x in els for y in els for z in els
        if ci(st(x, y), z) != st(ci(x, z), ci(y, z))))
    left = first("left_distributive", (
        (x, y, z) for x in els for y in els for z in els
        if ci(x, st(y, z)) != st(ci(x, y), ci(x, z))))
    assoc = first("associative", (
        (x, y, z) for x in els for y in els for z in els
        if ci(x, ci(y, z)) != ci(ci(x, y), z)))
    unit = first("unit", ((x,) for x in els if ci(x, e) != x or ci(e, x) != x))
    comm = first("commutative", ((x, y) for x in els for y in els if ci(x, y) != ci(y, x)))
    report = verify_axioms(_star_table(ops))
    if not report.ok:
        wit["elliptic"] = report.first_violation
    return RingAxiomReport(right, left, assoc, unit, comm, report.ok, wit)


def endo_ring(S: PointedAbelian) -> EllipticRingOps:
    """``(Mor(S, S), pointwise *, composition, identity)`` for a finite ``S``."""
    carrier = tuple(enumerate_morphisms(S, S))
    return EllipticRingOps(f"End({S})", mor_star, compose, identity(S), carrier)


def check_ring_isomorphism(src: EllipticRingOps, dst: EllipticRingOps, phi: Callable) -> bool:
    """Whether ``phi`` is a bijection carrying ``*``, ``∘`` and the unit across."""
    els = src.elements
    image = {x: phi(x) for x in els}
    if sorted(map(repr, image.values())) != sorted(map(repr, dst.elements)):
        return False
    if image[src.unit] != dst.unit:
        return False
    for x in els:
        for y in els:
            if phi(src.star(x, y)) != dst.star(image[x], image[y]):
                return False
            if phi(src.circ(x, y)) != dst.circ(image[x], image[y]):
                return False
    return True


# -- elliptic matrices -------------------------------------------------------


@dataclass(frozen=True)
class EllipticMatrix:
    """A pair ``(u, A)``, the affine map ``x -> u + A x`` on ``Z^n``.

    It is an endomorphism of ``_{e1}Z^n`` exactly when the first column of
    ``A`` is ``e1 - 3u`` (the column condition).
    """

    u: tuple[int, ...]
    A: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        u = tuple(int(v) for v in self.u)
        A = tuple(tuple(int(v) for v in row) for row in self.A)
        if len(A) != len(u) or any(len(row) != len(u) for row in A):
            raise ShapeMismatchError("u must have length n and A must be n x n")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "A", A)

    @property
    def n(self) -> int:
        return len(self.u)

    @classmethod
    def from_arrays(cls, u, A) -> "EllipticMatrix":
        return cls(tuple(np.asarray(u).tolist()), tuple(map(tuple, np.asarray(A).tolist())))

    @classmethod
    def identity(cls, n: int) -> "EllipticMatrix":
        return cls.from_arrays(np.zeros(n, dtype=np.int64), np.eye(n, dtype=np.int64))

    @classmethod
    def random(cls, n: int, rng: np.random.Generator, bound: int = 5) -> "EllipticMatrix":
        u = rng.integers(-bound, bound + 1, size=n)
        A = rng.integers(-bound, bound + 1, size=(n, n))
        A[:, 0] = -3 * u
        A[0, 0] += 1
        return cls.from_arrays(u, A)

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        return np.array(self.u, dtype=np.int64), np.array(self.A, dtype=np.int64).reshape(self.n, self.n)

    def is_elliptic(self) -> bool:
        u, A = self.arrays()
        e1 = np.zeros(self.n, dtype=np.int64)
        if self.n:
            e1[0] = 1
        return bool(np.array_equal(A[:, 0], e1 - 3 * u)) if self.n else True

    def __call__(self, x: Sequence[int]) -> tuple[int, ...]:
        u, A = self.arrays()
        return tuple((u + A @ np.asarray(x, dtype=np.int64)).tolist())


def _same_dim(M: EllipticMatrix, N: EllipticMatrix) -> None:
    if M.n != N.n:
        raise ShapeMismatchError(f"dimension mismatch {M.n} vs {N.n}")


def ellmat_mul(M: EllipticMatrix, N: EllipticMatrix) -> EllipticMatrix:
    """Composition ``M o N``: ``(u + A w, A B)``."""
    _same_dim(M, N)
    u, A = M.arrays()
    w, B = N.arrays()
    return EllipticMatrix.from_arrays(u + A @ w, A @ B)


def ellmat_star(M: EllipticMatrix, N: EllipticMatrix) -> EllipticMatrix:
    """Pointwise ``(M*N)(x) = e1 - M(x) - N(x)``: ``(e1 - u - v, -A - B)``.

    This is the structure under which elliptic matrices are ``Mor(_{e1}Z^n, _{e1}Z^n)``;
    it keeps the column condition.
    """
    _same_dim(M, N)
    u, A = M.arrays()
    v, B = N.arrays()
    e1 = np.zeros(M.n, dtype=np.int64)
    e1[0] = 1
    return EllipticMatrix.from_arrays(e1 - u - v, -A - B)


def affine_star(M: EllipticMatrix, N: EllipticMatrix) -> EllipticMatrix:
    """Product structure of ``n + 1`` copies of ``_{e1}Z^n`` on the columns of ``(u | A)``.

    Every entry of the first row becomes ``1 - x - y`` and every other entry
    ``-x - y``.  This is an elliptic group on all of ``Z^n x Mat_n``, but it
    does not preserve the column condition; use :func:`ellmat_star` for the
    ring of elliptic matrices.
    """
    _same_dim(M, N)
    u, A = M.arrays()
    v, B = N.arrays()
    ones = np.zeros((M.n, M.n + 1), dtype=np.int64)
    if M.n:
        ones[0, :] = 1
    full = ones - np.column_stack([u, A]) - np.column_stack([v, B])
    return EllipticMatrix.from_arrays(full[:, 0], full[:, 1:])


# -- ∘-arithmetic in Ell1(Z) -------------------------------------------------


def sigma(a: int) -> int:
    return 1 - 3 * a


def circ(a: int, b: int) -> int:
    return a + b - 3 * a * b


def circ_product(values: Sequence[int]) -> int:
    return _fold(circ, values, 0)


def is_circ_prime(a: int) -> bool:
    """``a`` is ∘-prime iff ``|3a - 1|`` is prime."""
    if a == 0:
        raise PreconditionError("0 is the unit of Ell1(Z)")
    return is_prime(abs(3 * a - 1))


class CircFactorization(NamedTuple):
    value: int
    factors: tuple[int, ...]


def _lift(p: int) -> int:
    # Σ(lift) = p for p = 1 mod 3 and -p for p = 2 mod 3
    return (1 - p) // 3 if p % 3 == 1 else (1 + p) // 3


def circ_factor(a: int) -> CircFactorization:
    """The unique multiset of ∘-primes with ∘-product ``a``, ascending."""
    if a == 0:
        raise PreconditionError("0 is the unit of Ell1(Z)")
    factors = []
    for p, e in factorize(abs(sigma(a))).items():
        factors.extend([_lift(p)] * e)
    factors.sort()
    if circ_product(factors) != a:
        raise EllError(f"factorization of {a} failed to round-trip")  # unreachable: Σ(a) = 1 mod 3
    return CircFactorization(a, tuple(factors))


def circ_divides(a: int, b: int) -> int | None:
    """``c`` with ``a ∘ c = b`` if it exists, else None."""
    if a == 0:
        raise PreconditionError("a must be nonzero")
    q, r = divmod(b - a, sigma(a))
    return q if r == 0 else None


def euclid_witness(primes: Sequence[int]) -> int:
    """A ∘-prime outside ``primes``: the smallest ∘-prime factor of ``prod * 0 = 1 - prod``."""
    ps = list(primes)
    if not ps:
        raise PreconditionError("need at least one ∘-prime")
    if len(set(ps)) != len(ps):
        raise PreconditionError("primes must be distinct")
    for p in ps:
        if p == 0 or not is_circ_prime(p):
            raise PreconditionError(f"{p} is not a ∘-prime")
    prod = circ_product(ps)
    if prod == 1:
        raise PreconditionError("∘-product is 1, so 1 - product is the unit")
    N = 1 - prod
    witness = circ_factor(N).factors[0]
    if witness in ps:
        raise EllError("witness repeats an input prime")  # impossible: no input prime divides the witness
    return witness
