from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ycl.fusion import antisymmetrizer, symmetrizer
from ycl.scalars import ONE, Q, RatFunc, TruncSeries, VarOrder, g_coefficients
from ycl.tensor import (
    TensorOp, kron, leg_embed, permutation_op, rbar, rbar_crossing_residuals, rbar_unitarity_residual,
    to_dense, yang_r, ybe_residual,
)


def dense_mul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def dense_r(N, x, a, b, m):
    """1 - P_ab / x as a dense Fraction matrix, built index by index."""
    from itertools import product

    idx = list(product(range(N), repeat=m))
    pos = {t: k for k, t in enumerate(idx)}
    M = [[Fraction(0)] * len(idx) for _ in idx]
    for t in idx:
        M[pos[t]][pos[t]] += 1
        s = list(t)
        s[a - 1], s[b - 1] = s[b - 1], s[a - 1]
        M[pos[tuple(s)]][pos[t]] -= Fraction(1) / x
    return M


def test_embed_identity():
    assert leg_embed(TensorOp.identity(2, 1), [2], 3) == TensorOp.identity(2, 3)


def test_embedded_flips_do_not_commute():
    P12, P23 = permutation_op(2, 3, 1, 2), permutation_op(2, 3, 2, 3)
    assert P12 * P23 != P23 * P12


def test_embed_matrix_units():
    op = kron(TensorOp.unit(2, 0, 1), TensorOp.unit(2, 1, 0))
    assert leg_embed(op, [1, 3], 3).nnz() == 2


def test_permutation_basics():
    for N in (2, 3):
        P = permutation_op(N, 2, 1, 2)
        assert P.nnz() == N * N
        assert P * P == TensorOp.identity(N, 2)
        assert P.trace() == N
        assert P.trace([2]) == TensorOp.identity(N, 1)
    with pytest.raises(ValueError):
        permutation_op(2, 2, 1, 1)


def test_identity_trace():
    assert TensorOp.identity(2, 2).trace() == 4


def test_r_at_plus_minus_one():
    for N in (2, 3):
        assert yang_r(N, 1) == antisymmetrizer(2, N).scale(2)
        assert yang_r(N, -1) == symmetrizer(2, N).scale(2)
    with pytest.raises(ZeroDivisionError):
        yang_r(2, 0)


@pytest.mark.parametrize("N", [2, 3, 4])
def test_ybe_exact(N):
    assert ybe_residual(N).is_zero()


@settings(max_examples=15, deadline=None)
@given(st.fractions(min_value=-5, max_value=5, max_denominator=4), st.fractions(min_value=-5, max_value=5, max_denominator=4))
def test_ybe_dense_oracle(x, y):
    # second route: plain dense matrices at rational points, no RatFunc
    if 0 in (x, y, x + y):
        return
    N = 2
    lhs = dense_mul(dense_mul(dense_r(N, x, 1, 2, 3), dense_r(N, x + y, 1, 3, 3)), dense_r(N, y, 2, 3, 3))
    rhs = dense_mul(dense_mul(dense_r(N, y, 2, 3, 3), dense_r(N, x + y, 1, 3, 3)), dense_r(N, x, 1, 2, 3))
    assert lhs == rhs
    ours = yang_r(N, Q(x), 1, 2, 3) * yang_r(N, Q(x + y), 1, 3, 3) * yang_r(N, Q(y), 2, 3, 3)
    assert [[Fraction(int(Q(v).numerator), int(Q(v).denominator)) for v in row] for row in to_dense(ours)] == lhs


def test_misordered_ybe_fails():
    u, one = RatFunc.x(), RatFunc(1)
    wrong = yang_r(2, u, 1, 2, 3) * yang_r(2, one, 2, 3, 3) * yang_r(2, u + one, 1, 3, 3)
    right = yang_r(2, u + one, 1, 3, 3) * yang_r(2, one, 2, 3, 3) * yang_r(2, u, 1, 2, 3)
    assert not (wrong - right).is_zero()


@pytest.mark.parametrize("N", [2, 3, 4])
def test_rbar_unitarity_and_crossing(N):
    assert rbar_unitarity_residual(N, 8).is_zero()
    assert all(r.is_zero() for r in rbar_crossing_residuals(N, 8))


def test_rbar_leading_terms():
    order = VarOrder([("u", "desc")])
    u = order.var("u")
    R = rbar(2, u, K=3)
    g = g_coefficients(2, 3)
    diag = R.entry((0, 0), (0, 0))
    # R_{11,11}(u) = 1 - 1/u, times g(u)
    assert diag.coeff((0,)) == 1
    assert diag.coeff((-1,)) == g[1] - 1
    off = R.entry((0, 1), (1, 0))
    assert off.coeff((-1,)) == -1
    assert off.coeff((-2,)) == -g[1]


def test_partial_transpose():
    for N in (2, 3):
        P = permutation_op(N, 2, 1, 2)
        Q1 = P.transpose(1)
        assert Q1 * Q1 == Q1.scale(N)
        assert Q1.transpose(1) == P
    A = TensorOp(2, 1, {((0,), (1,)): Q(3), ((1,), (1,)): Q(5)})
    B = TensorOp(2, 1, {((1,), (0,)): Q(7)})
    assert kron(A, B).transpose(2) == kron(A, B.transpose(1))


def test_antisymmetrizer_saturation():
    assert antisymmetrizer(3, 2).is_zero()
    for N in (2, 3):
        assert antisymmetrizer(N, N).trace() == 1


@settings(max_examples=30, deadline=None)
@given(st.dictionaries(st.tuples(st.integers(0, 1), st.integers(0, 1)), st.integers(-4, 4), max_size=4))
def test_trace_of_embedding_scales(entries):
    X = TensorOp(2, 1, {((i,), (j,)): Q(v) for (i, j), v in entries.items()})
    for legs, traced in (([1], [2]), ([2], [1])):
        assert leg_embed(X, legs, 2).trace(traced) == X.scale(2)
