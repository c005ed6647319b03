import itertools

import pytest
from hypothesis import settings, strategies as st

from ellgrp.abelian import GroupShape, enumerate_elements
from ellgrp.core import PointedAbelian
from ellgrp.curves import PrimeFieldCtx, TernaryCubic

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

SMALL_SHAPES = [(1,), (2,), (3,), (4,), (5,), (6,), (9,), (2, 2), (3, 3), (2, 3), (2, 4), (3, 9)]


def all_pointed(shapes):
    out = []
    for moduli in shapes:
        shape = GroupShape(tuple(moduli))
        for a in enumerate_elements(shape):
            out.append(PointedAbelian(shape, a))
    return out


@st.composite
def finite_pointed(draw, max_order=16):
    moduli = draw(st.sampled_from([m for m in SMALL_SHAPES if _order(m) <= max_order]))
    shape = GroupShape(moduli)
    base = draw(st.sampled_from(enumerate_elements(shape)))
    return PointedAbelian(shape, base)


def _order(moduli):
    n = 1
    for m in moduli:
        n *= m
    return n


F7 = PrimeFieldCtx(7)
CURVE1 = TernaryCubic((1, 2, -3, 0, 0, 0, 0, 0, 0, 0))
CURVE2 = TernaryCubic.weierstrass(0, 2)

# battery of finite test objects used across coproduct/congruence checks
BATTERY = [
    PointedAbelian.make([1]),
    PointedAbelian.make([3], [0]),
    PointedAbelian.make([3], [1]),
    PointedAbelian.make([9], [0]),
    PointedAbelian.make([9], [1]),
    PointedAbelian.make([3, 3], [1, 0]),
    PointedAbelian.make([3, 3], [0, 0]),
    PointedAbelian.make([2], [0]),
    PointedAbelian.make([6], [1]),
    PointedAbelian.make([4], [1]),
    PointedAbelian.make([12], [5]),
]


@pytest.fixture(scope="session")
def curve_tables():
    from ellgrp.curves import curve_group
    return curve_group(CURVE1, F7), curve_group(CURVE2, F7)


def pairs(xs):
    return itertools.product(xs, repeat=2)


def pytest_terminal_summary(terminalreporter):
    import sys
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[n])
