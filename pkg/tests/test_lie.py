import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semicarnot import presentation
from semicarnot.engel import make_engel
from semicarnot.hall import free_nilpotent
from semicarnot.lie import (
    GradingViolation,
    JacobiViolation,
    LieAlgebra,
    NotAnIdeal,
    NotHomogeneous,
    NotStratified,
    center,
    center_layers,
    dilate,
    ideal_generated,
    is_hom_ideal,
    is_subalgebra,
    is_trimmed,
    lie_generated,
    lower_central_series,
    product,
    quotient,
)
from semicarnot.linalg import Subspace

from helpers import random_homogeneous, random_ideal

F = Fraction
CORPUS = presentation.corpus_names()


def test_corpus_is_complete():
    assert set(CORPUS) == {
        "engel1", "engel2", "engel3", "engel4", "engel1xengel1", "137A", "n626", "heisenberg", "free23", "free33",
    }


@pytest.mark.parametrize("name", CORPUS)
def test_jacobi_residual_zero_on_corpus(name):
    g = presentation.load(name)
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            for k in range(j + 1, g.dim):
                assert all(c == 0 for c in g.jacobi_residual(i, j, k))


def test_forged_table_reports_forced_triple():
    br = {(0, 1): {2: 1}, (0, 2): {3: 1}, (1, 2): {4: 1}, (0, 4): {5: 1}}
    with pytest.raises(JacobiViolation) as exc:
        LieAlgebra("forged", (2, 1, 2, 1), ["e1", "e2", "e3", "e4", "e5", "e6"], br)
    assert str(exc.value).startswith("JacobiViolation(e1,e2,e3)")


def test_grading_violation():
    with pytest.raises(GradingViolation):
        LieAlgebra("g", (2, 1), ["e1", "e2", "e3"], {(0, 1): {0: 1}})


def test_not_stratified_is_a_flag():
    g = LieAlgebra("g", (2, 1), ["a", "b", "c"], {})
    assert g.stratification_defect() == 1
    assert not g.is_stratified
    with pytest.raises(NotStratified):
        g.require_stratified()


def test_engel_center_split():
    assert [z.dim for z in center_layers(make_engel(2))] == [0, 0, 1]


@pytest.mark.parametrize(
    "name,expected",
    [("engel1", True), ("engel2", True), ("engel3", True), ("engel4", True), ("137A", True),
     ("engel1xengel1", False), ("free23", False)],
)
def test_trimmed(name, expected):
    g = presentation.load(name)
    t = is_trimmed(g)
    assert bool(t) == expected
    assert bool(t) == (center(g).dim == 1)


def test_137A_is_quotient_of_engel_square():
    p = product(make_engel(1), make_engel(1))
    z1, z2 = p.vector({"Z_1": 1}), p.vector({"Z_2": 1})
    q, _ = quotient(p, Subspace.span([tuple(a - b for a, b in zip(z1, z2))], p.dim))
    assert q.layer_dims == (4, 2, 1)
    assert is_trimmed(q)


@pytest.mark.parametrize("name", ["engel1", "engel2", "137A", "n626", "engel1xengel1", "free23", "free33"])
def test_quotient_trimmed_matches_center(name):
    g = presentation.load(name)
    rng = random.Random(name)
    for _ in range(15):
        ideal = random_ideal(g, rng)
        if ideal.dim == g.dim:
            continue
        q, _ = quotient(g, ideal)
        assert bool(is_trimmed(q)) == (center(q).dim == 1 and center(q) <= q.layer_space(q.step))


@given(st.sampled_from(CORPUS), st.integers(0, 10**6).map(random.Random))
@settings(max_examples=40, deadline=None)
def test_lie_generated_by_horizontal_set(name, rnd):
    g = presentation.load(name)
    vs = [random_homogeneous(g, rnd, 1) for _ in range(rnd.randint(1, g.rank))]
    h = lie_generated(g, vs)
    assert is_subalgebra(g, h)
    assert h & g.layer_space(1) == Subspace.span(vs, g.dim)


@given(st.sampled_from(CORPUS), st.integers(0, 10**6).map(random.Random))
@settings(max_examples=40, deadline=None)
def test_ideal_generated_from_second_layer(name, rnd):
    g = presentation.load(name)
    z = random_homogeneous(g, rnd, 2)
    i = ideal_generated(g, [z])
    assert is_hom_ideal(g, i)
    assert (i & g.layer_space(1)).dim == 0


def test_quotient_rejects_non_ideal():
    g = make_engel(1)
    with pytest.raises(NotAnIdeal):
        quotient(g, Subspace.span([g.vector({"T": 1})], g.dim))
    with pytest.raises(NotHomogeneous):
        quotient(g, Subspace.span([g.vector({"T": 1, "Z": 1})], g.dim))


def test_lower_central_series_free():
    g = free_nilpotent(2, 3)
    assert [s.dim for s in lower_central_series(g)] == [5, 3, 2]


@given(st.sampled_from(CORPUS), st.integers(0, 10**6).map(random.Random), st.fractions(-3, 3))
@settings(max_examples=30, deadline=None)
def test_dilation_is_automorphism(name, rnd, t):
    g = presentation.load(name)
    a = tuple(F(rnd.randint(-2, 2)) for _ in range(g.dim))
    b = tuple(F(rnd.randint(-2, 2)) for _ in range(g.dim))
    assert dilate(g, g.bracket(a, b), t) == g.bracket(dilate(g, a, t), dilate(g, b, t))
