from fractions import Fraction
from math import factorial

from hypothesis import given, settings
from hypothesis import strategies as st

from rigidquad import series as S
from rigidquad.enumeration import enumerate_pre_q_trees
from rigidquad.series import UniSeries, binom

ints = st.lists(st.integers(-5, 5), min_size=6, max_size=6)


def test_binomial_degenerate_cases():
    assert binom(0, -1) == 0
    assert binom(-1, 0) == 0
    assert binom(4, 2) == 6


def test_exp_and_reciprocal():
    t = UniSeries.t(8)
    e = t.exp()
    assert [e[n] for n in range(9)] == [Fraction(1, factorial(n)) for n in range(9)]
    geo = (UniSeries([1], 8) - t).reciprocal()
    assert all(geo[n] == 1 for n in range(9))


@given(ints, ints, ints)
@settings(max_examples=50, deadline=None)
def test_ring_axioms(a, b, c):
    a, b, c = UniSeries(a, 5), UniSeries(b, 5), UniSeries(c, 5)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(ints)
@settings(max_examples=50, deadline=None)
def test_compose_with_t_is_identity(a):
    s = UniSeries(a, 5)
    assert s.compose(UniSeries.t(5)) == s


def test_r_series():
    r = S.solve_r(10)
    assert [r[n] for n in range(5)] == [0, 1, -2, -4, -20]
    assert not any(S.r_defining_residual(r).coeffs)


def test_q_hat_small_coefficients():
    q0 = S.q_hat_series(0, 3)
    assert [q0[n] for n in (1, 2, 3)] == [1, 2, 12]
    q1 = S.q_hat_series(1, 3)
    assert (q1[1], q1[2]) == (0, 1)
    # degree one: a single edge, which is a pre-Q-tree for every label p <= 0
    for p in range(-3, 4):
        assert S.q_hat_series(p, 2)[1] == len(enumerate_pre_q_trees(1, p)) == (1 if p <= 0 else 0)


def test_pre_q_count_formula():
    assert [S.pre_q_count(n, 0) for n in (1, 2, 3, 4)] == [1, 2, 12, 100]


def test_q_series():
    assert S.q_series(0, 12) == UniSeries.t(12)
    f1 = S.q_series(1, 6)
    assert [f1[n] for n in range(2, 7)] == [1, 2, 10, 66, 504]
    q0 = S.q_hat_series(0, 8)
    for p in (-2, 1, 3):
        assert S.q_hat_series(p, 8) == S.q_series(p, 8).compose(q0)


def test_h_series():
    assert S.h_series(0, 10) == UniSeries.t(10)
    total = UniSeries.zero(10)
    for p in range(1, 11):
        total = total + S.h_series(p, 10)
    assert S.h_series(-1, 10) == total
    for p in (-3, -2, -1):
        assert S.h_series_closed_form(p, 10) == S.h_series(p, 10)


def test_z_series():
    z = S.z_series(8)
    f1 = S.h_series(1, 8)
    assert z[1] == 0
    assert z[2] == f1[3] / 2
    assert [z[n] for n in range(2, 6)] == [1, 5, 33, 252]
    assert all(c >= 0 and Fraction(c).denominator == 1 for c in z.coeffs)


def test_displayed_bivariate_terms():
    d = S.delta_series(3)
    assert d.terms[1] == {(1, 1): 1}
    assert {k: v for k, v in d.terms[2].items() if v} == {(1, 2): 1, (2, 1): 1, (2, 2): Fraction(1, 2)}
    c = S.c_series(3)
    assert {k: v for k, v in c.terms[3].items() if v} == {(1, 2): 2, (1, 3): 2, (2, 1): 2, (2, 2): 1, (3, 1): 2}


def test_b_c_relations():
    d, b, c = S.delta_series(6), S.b_series(6), S.c_series(6)
    one = S.TriSeries.constant(1, 6)
    assert b == d.exp() - one
    assert c == one - (-d).exp()
    assert b == c * (one - c).reciprocal()


def test_multiplicative_sum():
    assert all(S.multiplicative_sum(m) == 1 for m in range(13))


def test_series_document():
    doc = S.series_document("r", 4, None, S.solve_r(4))
    assert doc["coefficients"] == ["0", "1", "-2", "-4", "-20"]
    assert doc["params"] == {}
