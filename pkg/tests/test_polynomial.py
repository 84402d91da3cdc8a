from fractions import Fraction

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from semicarnot.polynomial import (
    RatFunc,
    count_real_roots,
    isolate_real_roots,
    p_divmod,
    p_eval,
    p_gcd,
    p_mul,
    poly,
    rational_roots,
    sample_points_between_roots,
    squarefree,
)

F = Fraction

int_polys = st.lists(st.integers(-5, 5), min_size=2, max_size=6).map(poly).filter(lambda p: len(p) > 1)


def test_sqrt_two_samples():
    p = poly([-2, 0, 1])
    assert count_real_roots(p) == 2
    assert rational_roots(p) == []
    assert sample_points_between_roots(p) == [F(-4), F(3, 4), F(4)]


def test_rational_roots():
    p = p_mul(poly([-1, 2]), p_mul(poly([3, 1]), poly([1, 0, 1])))
    assert sorted(rational_roots(p)) == [F(-3), F(1, 2)]
    assert count_real_roots(p) == 2


@given(int_polys, int_polys)
def test_divmod(p, q):
    quo, rem = p_divmod(p, q)
    assert len(rem) < len(q) or rem == poly([0])
    for x in (F(-2), F(1, 3), F(5)):
        assert p_eval(p, x) == p_eval(q, x) * p_eval(quo, x) + p_eval(rem, x)


@given(int_polys, int_polys)
def test_gcd_divides(p, q):
    g = p_gcd(p, q)
    assert p_divmod(p, g)[1] == poly([0])
    assert p_divmod(q, g)[1] == poly([0])


def _numpy_real_roots(p):
    r = np.roots([float(c) for c in reversed(p)])
    return sorted(x.real for x in r if abs(x.imag) < 1e-7)


@given(int_polys)
def test_real_root_count_matches_numpy(p):
    s = squarefree(p)
    roots = _numpy_real_roots(s)
    distinct = [x for i, x in enumerate(roots) if i == 0 or abs(x - roots[i - 1]) > 1e-6]
    assert count_real_roots(p) == len(distinct)


@given(int_polys)
def test_isolation_and_samples(p):
    iv = isolate_real_roots(p)
    for lo, hi in iv:
        assert count_real_roots(p, lo, hi) == 1
    pts = sample_points_between_roots(p)
    assert all(p_eval(p, x) != 0 for x in pts)
    assert len(pts) == len(iv) + 1
    for a, b in zip(pts, pts[1:]):
        assert a < b and count_real_roots(p, a, b) == 1


def test_ratfunc_arithmetic_and_recorder():
    t = RatFunc.t()
    one = RatFunc((F(1),))
    e = (t * t - one) / (t - one)
    assert e.at(F(3)) == 4
    rec = []
    RatFunc.recorder = rec
    try:
        assert (t - one) != 0
    finally:
        RatFunc.recorder = None
    assert rec
