import numpy as np
import pytest

from szero.engine import E, Etok, F, Ftok, PM, PP, Psi, Tok
from szero.ktheory import (
    OUT_OF_SCOPE, RELATIONS, basis, check_relation, coordinates, cross_check, euler_matrix,
    eval_E_word, eval_F_word, generator_matrix, word_matrix,
)
from szero.partitions import enumerate_P


def test_eval_F_examples():
    for N in (3, 4, 5):
        assert eval_F_word((2, 1), 2, N).terms == {(((0,) * (N - 2), (2, 1)), 0): 1}
    assert eval_F_word((), 2, 4).terms == {(((0, 0), (0, 0)), 0): 1}
    assert eval_F_word((0, 1), 2, 4).terms == {}


def test_eval_E_examples():
    assert eval_E_word((1,), 1, 2).terms == {(((-1,), (0,)), 0): 1}
    assert eval_E_word((), 1, 3).terms == {(((0, 0), (0,)), 0): 1}
    assert eval_E_word((2, 1), 1, 3).terms == {(((-1, -2), (0,)), 0): 1}


@pytest.mark.parametrize("N", range(2, 6))
def test_word_evaluation_identities(N):
    for k in range(N + 1):
        for lam in enumerate_P(N - k, k):
            c = eval_F_word(lam, k, N)
            assert c.terms == {(((0,) * (N - k), lam.padded(k)), 0): 1}
        for mu in enumerate_P(k, N - k):
            c = eval_E_word(mu, k, N)
            dual = tuple(-x for x in reversed(mu.padded(N - k)))
            assert c.terms == {((dual, (0,) * k), 0): 1}


def test_euler_matrix_examples():
    M = euler_matrix(Ftok(1, 0), (0, 2), 2)
    assert M.tolist() == [[1], [0]]
    assert basis(1, 2) == [(), (1,)]
    M = euler_matrix(Psi("+", 1, 1), (1, 1), 2)
    assert M.tolist() == [[2, 1], [-1, 0]]


def test_generator_matrix_dump():
    g = generator_matrix(Ftok(1, 0), (0, 2), 2)
    d = g.dump()
    assert d["matrix"] == [[1], [0]]


def test_coordinates_of_basis_vectors():
    for N in (3, 4):
        for k in range(N + 1):
            B = basis(k, N)
            for j, lam in enumerate(B):
                cls = {((0,) * (N - k), lam.padded(k)): 1}
                vec = coordinates(cls, k, N)
                assert list(vec) == [int(i == j) for i in range(len(B))]


def test_psi_matrices_invertible():
    for N in (2, 3, 4):
        for k in range(N + 1):
            kk = (k, N - k)
            for kind in (PP, PM):
                A = word_matrix((Tok(kind, 1, 1), Tok(kind, 1, -1)), kk, N)
                assert np.array_equal(A, np.identity(len(basis(k, N)), dtype=object))


@pytest.mark.parametrize("N", [2, 3, 4])
@pytest.mark.parametrize("rel", RELATIONS)
def test_relations_hold(rel, N):
    res = check_relation(rel, N)
    assert res.passed, res.witness
    assert res.checked > 0 or rel == "U09-interior"


def test_wrong_sign_is_detected():
    # e_r e_s = +e_{s+1} e_{r-1} is false: the oracle must be able to see the difference
    N = 3
    seen = False
    for r in range(-2, 1):
        for s in range(-2, 1):
            kk = (2, 1)
            lhs = word_matrix((Etok(1, r), Etok(1, s)), kk, N)
            rhs = word_matrix((Etok(1, s + 1), Etok(1, r - 1)), kk, N)
            if lhs.any():
                seen = True
                assert not np.array_equal(lhs, rhs)
    assert seen


@pytest.mark.parametrize("rel", OUT_OF_SCOPE)
def test_h_relations_out_of_scope(rel):
    with pytest.raises(NotImplementedError, match="out of scope: h-generators"):
        check_relation(rel, 3)


def test_cross_check_examples():
    assert cross_check((1,), (1,), 1, 2).outcome == "agree"
    c = cross_check((0,), (1,), 1, 2)
    assert c.outcome == "agree" and c.ext == {}


def test_cross_check_gr24():
    P = enumerate_P(2, 2)
    out = [cross_check(a, b, 2, 4) for a in P for b in P]
    assert not [c for c in out if c.outcome == "mismatch"]
    # every pair with a claim agrees; the remaining reverse pairs are undecided by the engine
    assert sum(c.outcome == "agree" for c in out) == 21
    assert sum(c.outcome == "engine-incomplete" for c in out) == 15
