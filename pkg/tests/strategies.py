from fractions import Fraction

from hypothesis import strategies as st

small_fractions = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
small_ints = st.integers(-3, 3).map(Fraction)


def vectors(n, elements=small_fractions):
    return st.lists(elements, min_size=n, max_size=n).map(tuple)


def matrices(rows, cols, elements=small_fractions):
    return st.lists(vectors(cols, elements), min_size=rows, max_size=rows)


@st.composite
def vector_families(draw, ambient=None, max_count=5):
    n = ambient if ambient is not None else draw(st.integers(1, 5))
    k = draw(st.integers(0, max_count))
    return n, draw(st.lists(vectors(n, small_ints), min_size=k, max_size=k))


@st.composite
def symmetric_matrices(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = draw(small_ints)
    return m
