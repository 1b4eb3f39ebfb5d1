from math import comb

import pytest
from hypothesis import given, strategies as st

from oracles import lr_bruteforce, weyl_dim_bruteforce
from szero.partitions import (
    Ordering, YoungDiagram, box_size, diagram, enumerate_P, gl_branch, gl_dual, gl_tensor,
    is_dominant, lex_compare, prodlex_compare, weyl_dim,
)


def dominant(maxlen=4, lo=-3, hi=4):
    return st.integers(1, maxlen).flatmap(
        lambda m: st.lists(st.integers(lo, hi), min_size=m, max_size=m)
        .map(lambda xs: tuple(sorted(xs, reverse=True))))


def same_rank_pair(maxlen=3):
    return st.integers(1, maxlen).flatmap(
        lambda m: st.tuples(*[st.lists(st.integers(-2, 3), min_size=m, max_size=m)
                              .map(lambda xs: tuple(sorted(xs, reverse=True)))] * 2))


def same_rank_triple(maxlen=3):
    return st.integers(1, maxlen).flatmap(
        lambda m: st.tuples(*[st.lists(st.integers(-1, 2), min_size=m, max_size=m)
                              .map(lambda xs: tuple(sorted(xs, reverse=True)))] * 3))


def test_enumerate_small_boxes():
    assert enumerate_P(2, 2) == [(), (1,), (1, 1), (2,), (2, 1), (2, 2)]
    assert enumerate_P(0, 3) == [()]
    assert enumerate_P(4, 0) == [()]
    assert len(enumerate_P(3, 2)) == 10


@pytest.mark.parametrize("a", range(9))
@pytest.mark.parametrize("b", range(9))
def test_box_cardinality(a, b):
    P = enumerate_P(a, b)
    assert len(P) == comb(a + b, b) == box_size(a, b)
    assert len(set(P)) == len(P)
    assert all(lam.fits(a, b) for lam in P)
    assert all(lex_compare(x, y) is Ordering.LT for x, y in zip(P, P[1:]))


def test_lex_examples():
    assert lex_compare((1, 1), (2, 0)) is Ordering.LT
    assert lex_compare((2, 1), (2, 0)) is Ordering.GT
    assert lex_compare((2, 1), (2, 1, 0)) is Ordering.EQ


def test_prodlex_examples():
    assert prodlex_compare(((1,), (0, 0)), ((1,), (1, 0))) is Ordering.LT
    assert prodlex_compare(((2,), (0, 0)), ((1,), (2, 2))) is Ordering.GT
    t = ((2, 1), (1,))
    assert prodlex_compare(t, t) is Ordering.EQ
    with pytest.raises(ValueError, match="tuple arity"):
        prodlex_compare(((1,),), ((1,), (0,)))


@given(st.lists(st.integers(0, 5), max_size=5), st.lists(st.integers(0, 5), max_size=5))
def test_lex_antisymmetric(x, y):
    a, b = diagram(sorted(x, reverse=True)), diagram(sorted(y, reverse=True))
    flip = {Ordering.LT: Ordering.GT, Ordering.GT: Ordering.LT, Ordering.EQ: Ordering.EQ}
    assert lex_compare(b, a) is flip[lex_compare(a, b)]


def test_diagram_validation():
    assert diagram((2, 1, 0, 0)) == (2, 1)
    assert YoungDiagram((3, 1)).transpose() == (2, 1, 1)
    assert YoungDiagram((2, 1)).padded(4) == (2, 1, 0, 0)
    with pytest.raises(ValueError):
        diagram((1, 2))
    with pytest.raises(ValueError):
        diagram((1, -1))


def test_tensor_examples():
    assert gl_tensor((1, 0), (1, 0)) == {(2, 0): 1, (1, 1): 1}
    assert gl_tensor((0, 0), (3, 1)) == {(3, 1): 1}
    assert gl_tensor((1, 1, 0), (1, 0, 0)) == {(2, 1, 0): 1, (1, 1, 1): 1}


def test_dual_examples():
    assert gl_dual((1, 0)) == (0, -1)
    assert gl_dual((0, 0, 0)) == (0, 0, 0)
    assert gl_dual((3, 1, -2)) == (2, -1, -3)


def test_branch_examples():
    assert sorted(gl_branch((1, 0))) == [((0,), 1), ((1,), 0)]
    assert gl_branch((0, 0, 0)) == [((0, 0), 0)]
    assert sorted(gl_branch((2, 1))) == [((1,), 2), ((2,), 1)]


@pytest.mark.parametrize("a,b,m", [
    ((2, 1), (2, 1), 3), ((1, 1), (2,), 3), ((3, 1), (1, 1), 4), ((2, 2), (2, 1), 3), ((2,), (2,), 2),
])
def test_tensor_matches_schur_products(a, b, m):
    want = lr_bruteforce(a, b, m)
    got = gl_tensor(tuple(a) + (0,) * (m - len(a)), tuple(b) + (0,) * (m - len(b)))
    assert got == want


@given(dominant(4, 0, 3))
def test_weyl_dim_matches_tableaux(a):
    assert weyl_dim(a) == weyl_dim_bruteforce(a, len(a))


@given(same_rank_pair(4))
def test_tensor_commutative_and_conserves_dimension(ab):
    a, b = ab
    t = gl_tensor(a, b)
    assert t == gl_tensor(b, a)
    assert all(is_dominant(nu) and sum(nu) == sum(a) + sum(b) for nu in t)
    assert sum(c * weyl_dim(nu) for nu, c in t.items()) == weyl_dim(a) * weyl_dim(b)


@given(same_rank_triple(3))
def test_tensor_associative(abc):
    a, b, c = abc

    def mul(x, y):
        out = {}
        for p, m in x.items():
            for q, n in y.items():
                for r, k in gl_tensor(p, q).items():
                    out[r] = out.get(r, 0) + m * n * k
        return out

    assert mul(mul({a: 1}, {b: 1}), {c: 1}) == mul({a: 1}, mul({b: 1}, {c: 1}))


@given(dominant(4))
def test_dual_is_involution_and_preserves_dimension(a):
    assert gl_dual(gl_dual(a)) == a
    assert weyl_dim(gl_dual(a)) == weyl_dim(a)


@given(dominant(4).filter(lambda w: len(w) >= 2))
def test_branch_conserves_dimension(lam):
    parts = gl_branch(lam)
    assert all(len(mu) == len(lam) - 1 for mu, _ in parts)
    assert all(sum(mu) + e == sum(lam) for mu, e in parts)
    assert sum(weyl_dim(mu) for mu, _ in parts) == weyl_dim(lam)
