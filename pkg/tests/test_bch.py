from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semicarnot import presentation
from semicarnot.bch import (
    UnsupportedStep,
    bch_product,
    check_monotone_coordinate,
    group_inverse,
    sample_semigroup,
    sample_word,
)
from semicarnot.engel import c_coordinate, make_engel
from semicarnot.hall import free_nilpotent
from semicarnot.lie import dilate

F = Fraction
ALGEBRAS = ["engel1", "engel2", "137A", "n626", "free23", "heisenberg"]


def elements(g):
    return st.lists(st.integers(-3, 3).map(F), min_size=g.dim, max_size=g.dim).map(tuple)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(ALGEBRAS), st.data())
def test_group_laws(name, data):
    g = presentation.load(name)
    a, b, c = (data.draw(elements(g)) for _ in range(3))
    zero = (F(0),) * g.dim
    assert bch_product(g, a, zero) == a == bch_product(g, zero, a)
    assert bch_product(g, a, group_inverse(a)) == zero
    assert bch_product(g, bch_product(g, a, b), c) == bch_product(g, a, bch_product(g, b, c))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(ALGEBRAS), st.data(), st.fractions(-3, 3))
def test_dilation_equivariance(name, data, t):
    g = presentation.load(name)
    a, b = data.draw(elements(g)), data.draw(elements(g))
    assert bch_product(g, dilate(g, a, t), dilate(g, b, t)) == dilate(g, bch_product(g, a, b), t)


def test_step_four_associativity():
    g = free_nilpotent(2, 4)
    a = tuple(F(i % 3 - 1) for i in range(g.dim))
    b = tuple(F((2 * i) % 5 - 2) for i in range(g.dim))
    c = tuple(F((i * i) % 3) for i in range(g.dim))
    assert bch_product(g, bch_product(g, a, b), c) == bch_product(g, a, bch_product(g, b, c))


def test_step_five_unsupported():
    g = free_nilpotent(2, 5)
    with pytest.raises(UnsupportedStep):
        bch_product(g, (F(0),) * g.dim, (F(0),) * g.dim)


def test_sample_word_lies_in_half_space():
    g = make_engel(2)
    lam = (F(1), F(0), F(0))
    for i in range(50):
        for w in sample_word(g, lam, 7, i, 4):
            assert sum(l * x for l, x in zip(lam, w)) >= 0
            assert all(x == 0 for x in w[g.rank:])


@pytest.mark.parametrize("n", [1, 2])
def test_bad_half_space_stays_in_invariant_set(n):
    g = make_engel(n)
    lam = (F(1),) + (F(0),) * n
    run = sample_semigroup(g, lam, 4, 300, seed=3, observe=lambda p: c_coordinate(n, p))
    assert min(run.observed) >= 0


def test_sampling_is_deterministic_across_workers():
    g = make_engel(1)
    a = sample_semigroup(g, (F(0), F(1)), 3, 100, seed=5, workers=1)
    b = sample_semigroup(g, (F(0), F(1)), 3, 100, seed=5, workers=4)
    assert a.dumps() == b.dumps()


def test_monotone_coordinate():
    # V1 coordinates (X, Y) of each segment direction, then its duration
    traj = [((F(1), F(-2)), F(1)), ((F(1, 2), F(3)), F(2))]
    assert check_monotone_coordinate(1, traj)
    with pytest.raises(ValueError):
        check_monotone_coordinate(1, [((F(-1), F(0)), F(1))])


def test_sampler_rejects_zero_lambda():
    with pytest.raises(ValueError):
        sample_semigroup(make_engel(1), (F(0), F(0)), 2, 3)
