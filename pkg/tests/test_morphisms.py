import pytest
from hypothesis import given, strategies as st

from ellgrp.abelian import GroupHom
from ellgrp.classify import canonical_form, classify_table
from ellgrp.core import PointedAbelian, flex_points, to_table, verify_axioms
from ellgrp.errors import EllError, InfiniteShapeError
from ellgrp.morphisms import (
    AffineMorphism, affine_map, automorphism_report, automorphisms, compose, enumerate_morphisms,
    hom_exists, identity, is_isomorphic, mor_elliptic, mor_star, predicted_mor_structure,
)

from conftest import all_pointed, finite_pointed


def P(m, a=None):
    return PointedAbelian.make(m, a)


def test_compatibility_enforced():
    with pytest.raises(EllError):
        affine_map(P([3]), P([3], [1]), [0], [[1]])


def test_identity_and_endomorphisms_of_Z1():
    Z1 = P([0], [1])
    x = Z1.element(17)
    assert identity(Z1)(x) == x

    def f(a):
        return affine_map(Z1, Z1, [a], [[1 - 3 * a]])

    for a in range(-4, 5):
        for b in range(-4, 5):
            assert compose(f(a), f(b)) == f(a + b - 3 * a * b)
            assert mor_star(f(a), f(b)) == f(1 - a - b)


def test_kappa_composition():
    Z1, Z0 = P([0], [1]), P([0], [0])
    kappa = affine_map(Z1, Z0, [1], [[-3]])
    g = affine_map(Z0, Z0, [0], [[5]])
    h = compose(g, kappa)
    assert h.linear.matrix() == [[-15]]
    for n in range(-3, 4):
        assert h(Z1.element(n)) == g(kappa(Z1.element(n)))


def test_hom_exists_examples():
    assert not hom_exists(P([3]), P([3], [1]))
    assert hom_exists(P([3], [1]), P([3]))
    assert hom_exists(P([3, 3]), P([3, 3]))
    # free targets go through the classification
    assert not hom_exists(P([3]), P([0], [1]))
    assert hom_exists(P([0], [1]), P([0], [1]))
    assert hom_exists(P([9], [1]), P([0], [0]))
    assert not hom_exists(P([3], [1]), P([9], [1]))
    assert hom_exists(P([9], [1]), P([3], [1]))


def test_enumerate_counts():
    assert len(enumerate_morphisms(P([3]), P([3]))) == 9
    assert len(enumerate_morphisms(P([3], [1]), P([3]))) == 3
    assert len(enumerate_morphisms(P([2]), P([2]))) == 2
    with pytest.raises(InfiniteShapeError):
        enumerate_morphisms(P([3]), P([0]))


def _brute_morphisms(Q, R):
    import itertools
    els, tgt = Q.elements(), R.elements()
    count = 0
    for images in itertools.product(tgt, repeat=len(els)):
        f = dict(zip(els, images))
        if all(f[Q.star(x, y)] == R.star(f[x], f[y]) for x in els for y in els):
            count += 1
    return count


@pytest.mark.parametrize("Q,R", [
    (P([3], [1]), P([3])), (P([3]), P([3], [1])), (P([2]), P([4], [1])),
    (P([4], [2]), P([2])), (P([3]), P([3])), (P([2, 2], [1, 0]), P([2])),
])
def test_affine_description_is_complete(Q, R):
    """Every map preserving * is affine and compatible, and conversely."""
    mors = enumerate_morphisms(Q, R)
    assert len(mors) == _brute_morphisms(Q, R)
    for f in mors:
        for x in Q.elements():
            for y in Q.elements():
                assert f(Q.star(x, y)) == R.star(f(x), f(y))


def test_isomorphism_examples():
    assert not is_isomorphic(P([9], [1]), P([9]))
    for a in range(25):
        assert is_isomorphic(P([25], [a]), P([25]))
    assert is_isomorphic(P([0, 0], [1, 1]), P([0, 0], [1, 0]))
    assert is_isomorphic(P([9], [1]), P([9], [2]), method="enumerate")


def test_mor_elliptic_examples():
    M = mor_elliptic(P([3]), P([3]))
    assert len(M) == 9 and verify_axioms(M.table).ok
    assert classify_table(M.table) == canonical_form(P([3, 3]))
    M = mor_elliptic(P([3], [1]), P([3]))
    assert len(M) == 3 and classify_table(M.table) == canonical_form(P([3]))


def test_mor_from_terminal_is_flex_set():
    pt = P([1])
    for R in all_pointed([(3,), (9,), (3, 3)]):
        assert len(enumerate_morphisms(pt, R)) == len(flex_points(R))


def test_predicted_examples():
    B = P([5], [2])
    assert predicted_mor_structure(P([0], [1]), B) == B
    assert predicted_mor_structure(P([3]), P([3], [1])) is None
    pred = predicted_mor_structure(P([3], [1]), P([9]))
    assert pred == P([9]) and len(enumerate_morphisms(P([3], [1]), P([9]))) == 9


SHAPES = [(3,), (9,), (3, 3), (2,), (6,)]
UNIVERSE = all_pointed(SHAPES)


@pytest.mark.parametrize("src", UNIVERSE, ids=str)
def test_predicted_structure_matches_enumeration(src):
    for dst in UNIVERSE:
        pred = predicted_mor_structure(src, dst)
        mors = enumerate_morphisms(src, dst)
        if pred is None:
            assert mors == []
            continue
        assert len(mors) == pred.order
        if len(mors) <= 27:
            M = mor_elliptic(src, dst)
            assert verify_axioms(M.table).ok
            assert classify_table(M.table) == canonical_form(pred)


def test_automorphism_examples():
    r = automorphism_report(P([3, 3]))
    assert (r.order, r.ann3_order, r.aut_A_order) == (432, 9, 48) and r.exact
    assert automorphism_report(P([2])).order == 1
    assert automorphism_report(P([3], [1])).order == 3


@pytest.mark.parametrize("Q", [P([3, 3], [1, 0]), P([9], [1]), P([9], [3]), P([6], [1]), P([2, 2]), P([3, 9], [1, 1])], ids=str)
def test_automorphism_sequence_exact(Q):
    r = automorphism_report(Q)
    assert r.exact
    assert r.order == r.ann3_order * r.eta_kernel_size


@pytest.mark.parametrize("Q", [P([3], [1]), P([2, 2], [1, 0]), P([9])], ids=str)
def test_automorphisms_form_group(Q):
    auts = set(automorphisms(Q))
    assert identity(Q) in auts
    for f in auts:
        for g in auts:
            assert compose(f, g) in auts


@given(finite_pointed(9), finite_pointed(9), finite_pointed(9))
def test_compose_associative(A, B, C):
    fs, gs, hs = enumerate_morphisms(A, B)[:4], enumerate_morphisms(B, C)[:4], enumerate_morphisms(C, A)[:4]
    for f in fs:
        assert compose(identity(B), f) == f == compose(f, identity(A))
        for g in gs:
            for h in hs:
                assert compose(h, compose(g, f)) == compose(compose(h, g), f)


SMALL_UNIVERSE = all_pointed([(3,), (9,), (2,), (3, 3), (4,)])[:20]


def test_isomorphism_is_equivalence_and_matches_enumeration():
    for Q in SMALL_UNIVERSE:
        assert is_isomorphic(Q, Q)
        for R in SMALL_UNIVERSE:
            canon = is_isomorphic(Q, R)
            assert canon == is_isomorphic(R, Q)
            if Q.shape == R.shape or Q.order == R.order:
                assert canon == is_isomorphic(Q, R, method="enumerate")


def test_naturality_spot_check():
    # postcomposition with a morphism B -> B' commutes with the pointwise operation
    src, B, B2 = P([3]), P([9]), P([3])
    h = enumerate_morphisms(B, B2)[5]
    for f in enumerate_morphisms(src, B)[:9]:
        for g in enumerate_morphisms(src, B)[:9]:
            assert compose(h, mor_star(f, g)) == mor_star(compose(h, f), compose(h, g))


def test_to_dict_and_formula():
    f = affine_map(P([3], [1]), P([3], [1]), [2], [[1]])
    assert f.to_dict() == {"constant": [2], "linear": [[1]]}
    assert "x1" in f.formula()
    assert isinstance(f, AffineMorphism) and isinstance(f.linear, GroupHom)
