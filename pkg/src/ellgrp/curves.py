"""Plane cubics over small prime fields and their chord-tangent elliptic groups.

For a smooth cubic ``C`` and points ``P, Q`` on it, ``P*Q`` is the third
intersection of the line through ``P`` and ``Q`` (the tangent when ``P = Q``).
The points of ``C`` over ``F_p`` with this operation form a finite elliptic
group; no base point is needed.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from ._numtheory import is_prime
from .core import CayleyTable
from .errors import EllError, PreconditionError, SingularCurveError

__all__ = [
    "MONOMIALS", "PrimeFieldCtx", "TernaryCubic", "ProjectivePoint",
    "enumerate_points", "chord_tangent", "curve_group", "is_smooth", "singular_points",
]

# exponents of x, y, z in the fixed coefficient order
MONOMIALS = (
    (3, 0, 0), (0, 3, 0), (0, 0, 3), (2, 1, 0), (2, 0, 1),
    (1, 2, 0), (0, 2, 1), (1, 0, 2), (0, 1, 2), (1, 1, 1),
)


@dataclass(frozen=True)
class PrimeFieldCtx:
    p: int

    def __post_init__(self):
        if not (5 <= self.p <= 97 and is_prime(self.p)):
            raise PreconditionError(f"p must be a prime with 5 <= p <= 97, got {self.p}")

    def inv(self, a: int) -> int:
        return pow(a % self.p, -1, self.p)


@dataclass(frozen=True)
class TernaryCubic:
    """Integer coefficients in the order ``x³, y³, z³, x²y, x²z, xy², y²z, xz², yz², xyz``."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = tuple(int(v) for v in self.coeffs)
        if len(c) != 10:
            raise EllError("a ternary cubic needs exactly 10 coefficients")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def parse(cls, text: str) -> "TernaryCubic":
        try:
            return cls(tuple(int(t) for t in text.split(",")))
        except ValueError as exc:
            raise EllError(f"malformed coefficient list {text!r}") from exc

    @classmethod
    def weierstrass(cls, a: int, b: int) -> "TernaryCubic":
        """``y²z = x³ + a xz² + b z³``."""
        c = [0] * 10
        c[0], c[6], c[7], c[2] = -1, 1, -a, -b
        return cls(tuple(c))

    def reduced(self, F: PrimeFieldCtx) -> tuple[int, ...]:
        return tuple(v % F.p for v in self.coeffs)

    def evaluate(self, F: PrimeFieldCtx, pt: Sequence[int]) -> int:
        x, y, z = pt
        return sum(c * x ** i * y ** j * z ** k for c, (i, j, k) in zip(self.coeffs, MONOMIALS)) % F.p

    def gradient(self, F: PrimeFieldCtx, pt: Sequence[int]) -> tuple[int, int, int]:
        out = [0, 0, 0]
        for c, e in zip(self.coeffs, MONOMIALS):
            for v in range(3):
                if e[v]:
                    d = list(e)
                    d[v] -= 1
                    term = c * e[v]
                    for w in range(3):
                        term *= pt[w] ** d[w]
                    out[v] += term
        return tuple(g % F.p for g in out)

    def is_zero(self, F: PrimeFieldCtx) -> bool:
        return not any(self.reduced(F))


@dataclass(frozen=True)
class ProjectivePoint:
    """A point of ``P²(F_p)`` with first nonzero coordinate 1."""

    coords: tuple[int, int, int]

    @classmethod
    def make(cls, F: PrimeFieldCtx, coords: Sequence[int]) -> "ProjectivePoint":
        c = [v % F.p for v in coords]
        lead = next((v for v in c if v), None)
        if lead is None:
            raise EllError("(0:0:0) is not a projective point")
        inv = F.inv(lead)
        return cls(tuple(v * inv % F.p for v in c))

    def affine(self, F: PrimeFieldCtx) -> tuple[int, int] | None:
        """``(x, y)`` with ``z = 1`` after rescaling, or None at infinity."""
        return _affine(F, self)

    def label(self) -> str:
        return "(" + ":".join(map(str, self.coords)) + ")"


def _affine(F: PrimeFieldCtx, P: ProjectivePoint) -> tuple[int, int] | None:
    x, y, z = P.coords
    if z == 0:
        return None
    iz = F.inv(z)
    return (x * iz % F.p, y * iz % F.p)


def _label(F: PrimeFieldCtx, P: ProjectivePoint) -> str:
    a = _affine(F, P)
    return f"({a[0]},{a[1]})" if a else P.label()


def _p2_order(F: PrimeFieldCtx):
    """All points of ``P²(F_p)``: affine ``(x, y, 1)`` lexicographic, then ``z = 0``."""
    p = F.p
    for x in range(p):
        for y in range(p):
            yield (x, y, 1)
    for x in range(p):
        yield (x, 1, 0)
    yield (1, 0, 0)


def enumerate_points(C: TernaryCubic, F: PrimeFieldCtx) -> list[ProjectivePoint]:
    """Points of ``C`` over ``F_p``: affine ones ordered by ``(x, y)``, then those at infinity."""
    p = F.p
    xs, ys = np.meshgrid(np.arange(p, dtype=np.int64), np.arange(p, dtype=np.int64), indexing="ij")
    total = np.zeros_like(xs)
    for c, (i, j, _) in zip(C.reduced(F), MONOMIALS):
        if c:
            total = (total + c * (xs ** i % p) * (ys ** j % p)) % p
    pts = [(int(a), int(b), 1) for a, b in np.argwhere(total == 0)]
    for q in [(x, 1, 0) for x in range(p)] + [(1, 0, 0)]:
        if C.evaluate(F, q) == 0:
            pts.append(q)
    return [ProjectivePoint.make(F, q) for q in pts]


def _on_curve(C: TernaryCubic, F: PrimeFieldCtx, P: ProjectivePoint) -> None:
    if C.evaluate(F, P.coords) != 0:
        raise EllError(f"{_label(F, P)} is not on the curve")


def _combine(F: PrimeFieldCtx, s: int, P, t: int, Q) -> tuple[int, int, int]:
    return tuple((s * a + t * b) % F.p for a, b in zip(P, Q))


def chord_tangent(C: TernaryCubic, F: PrimeFieldCtx, P: ProjectivePoint, Q: ProjectivePoint) -> ProjectivePoint:
    """Third intersection of the line ``PQ`` (the tangent at ``P`` if ``P = Q``)."""
    _on_curve(C, F, P)
    _on_curve(C, F, Q)
    p, half = F.p, F.inv(2)
    if P != Q:
        # C(sP + tQ) = st(a2 s + a1 t)
        f_plus = C.evaluate(F, _combine(F, 1, P.coords, 1, Q.coords))
        f_minus = C.evaluate(F, _combine(F, 1, P.coords, -1, Q.coords))
        a1 = (f_plus + f_minus) * half % p
        a2 = (f_plus - f_minus) * half % p
        if a1 == 0 and a2 == 0:
            raise SingularCurveError("the curve contains the line through these points")
        return ProjectivePoint.make(F, _combine(F, a1, P.coords, -a2, Q.coords))
    grad = C.gradient(F, P.coords)
    if not any(grad):
        raise SingularCurveError(f"{_label(F, P)} is a singular point")
    Qp = next(
        q for q in _p2_order(F)
        if sum(g * v for g, v in zip(grad, q)) % p == 0 and ProjectivePoint.make(F, q) != P
    )
    # C(sP + tQ') = t²(a1 s + a0 t): P is a double root on its tangent
    a0 = C.evaluate(F, Qp)
    a1 = (C.evaluate(F, _combine(F, 1, P.coords, 1, Qp)) - a0) % p
    if a1 == 0 and a0 == 0:
        raise SingularCurveError("the tangent line lies on the curve")
    return ProjectivePoint.make(F, _combine(F, a0, P.coords, -a1, Qp))


@lru_cache(maxsize=256)
def _smooth_cached(coeffs: tuple[int, ...], p: int) -> bool:
    from sympy import Poly, groebner, symbols

    x, y, z = symbols("x y z")
    cubic = sum(c * x ** i * y ** j * z ** k for c, (i, j, k) in zip(coeffs, MONOMIALS))
    partials = [Poly(cubic.diff(v), x, y, z, modulus=p) for v in (x, y, z)]
    partials = [q for q in partials if not q.is_zero]
    if not partials:
        return False
    G = groebner([q.as_expr() for q in partials], x, y, z, modulus=p, order="grevlex")
    # the partials have no common projective zero over the algebraic closure iff
    # the ideal contains a power of every variable, i.e. every variable has a
    # pure power among the leading monomials
    leads = [Poly(g, x, y, z, modulus=p).monoms(order="grevlex")[0] for g in G.exprs]
    return all(any(m[v] > 0 and sum(m) == m[v] for m in leads) for v in range(3))


def is_smooth(C: TernaryCubic, F: PrimeFieldCtx) -> bool:
    """No singular point over the algebraic closure of ``F_p`` (Euler: partials suffice for p > 3)."""
    if C.is_zero(F):
        return False
    return _smooth_cached(C.reduced(F), F.p)


def singular_points(C: TernaryCubic, F: PrimeFieldCtx) -> list[ProjectivePoint]:
    """Singular points defined over ``F_p`` (possibly empty even for a singular curve)."""
    return [
        ProjectivePoint.make(F, q) for q in _p2_order(F)
        if C.evaluate(F, q) == 0 and not any(C.gradient(F, q))
    ]


def curve_group(C: TernaryCubic, F: PrimeFieldCtx) -> CayleyTable:
    """Chord-tangent table on the ``F_p``-points of a smooth cubic."""
    if not is_smooth(C, F):
        raise SingularCurveError("the cubic is singular")
    pts = enumerate_points(C, F)
    if not pts:
        raise EllError("the curve has no F_p-points")
    index = {P: i for i, P in enumerate(pts)}
    n = len(pts)
    rows = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(i, n):
            rows[i, j] = rows[j, i] = index[chord_tangent(C, F, pts[i], pts[j])]
    return CayleyTable(n, tuple(_label(F, P) for P in pts), rows)
