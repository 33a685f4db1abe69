from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ycl.scalars import (
    Q, RatFunc, TruncSeries, TruncationError, VarOrder, compute_g, g_coefficients, g_identity_residuals,
)

U = VarOrder([("u", "desc")])


def series(coeffs, K):
    """sum_k coeffs[k] u^-k known through u^-K."""
    return TruncSeries(U, {(k,): Q(c) for k, c in enumerate(coeffs) if k <= K}, (0,), (K,))


def g_by_product(N, K):
    # order-by-order solution of g(u) g(u+1) ... g(u+N-1) (1 - u^-1) = 1 with plain fractions
    def mul(a, b):
        return [sum(a[i] * b[n - i] for i in range(n + 1)) for n in range(K + 1)]

    def shifted(g, a):
        # g(u + a) = sum_k g_k u^-k (1 + a/u)^-k
        out = [Fraction(0)] * (K + 1)
        for k, gk in enumerate(g):
            for j in range(K + 1 - k):
                c = Fraction(1)
                for t in range(j):
                    c = c * (-k - t) / (t + 1)
                out[k + j] += gk * c * Fraction(a) ** j
        return out

    g = [Fraction(1)] + [Fraction(0)] * K
    for n in range(1, K + 1):
        prod = [Fraction(1)] + [Fraction(0)] * K
        for a in range(N):
            prod = mul(prod, shifted(g, a))
        prod = mul(prod, [Fraction(1), Fraction(-1)] + [Fraction(0)] * (K - 1))
        g[n] = -prod[n] / N  # g_n enters the u^-n coefficient with weight N
    return g


def test_printed_expansion_n2():
    assert [Fraction(int(c.numerator), int(c.denominator)) for c in g_coefficients(2, 3)] == [1, Fraction(1, 2), Fraction(5, 8), Fraction(11, 16)]


@pytest.mark.parametrize("N", [1, 2, 3, 4, 5])
def test_printed_expansion_general(N):
    g = g_coefficients(N, 3)
    assert g[1] == Q(1, N)
    assert g[2] == Q(N * N + 1, 2 * N * N)
    assert g[3] == Q(N ** 4 + 4 * N * N + 1, 6 * N ** 3)


def test_n1_is_geometric():
    assert g_coefficients(1, 4) == [1, 1, 1, 1, 1]


@pytest.mark.parametrize("N", [1, 2, 3, 4, 5])
def test_matches_product_oracle(N):
    assert [Fraction(int(c.numerator), int(c.denominator)) for c in g_coefficients(N, 8)] == g_by_product(N, 8)


@pytest.mark.parametrize("N", range(1, 6))
@pytest.mark.parametrize("K", [8, 10])
def test_defining_identities(N, K):
    res = g_identity_residuals(N, K)
    assert set(res) == {"recursion", "product", "unitarity"}
    assert all(s.is_zero() for s in res.values())


def test_compute_g_window():
    g = compute_g(2, 3)
    assert g.window("u") == (-3, 0)
    with pytest.raises(TruncationError):
        g.coeff((-4,))


def test_shift_binomial_example():
    x = TruncSeries(U, {(1,): Q(1)}, (1,), (3,))
    assert x.shift("u", 1) == series([0, 1, -1, 1], 3)
    assert x.shift("u", 0) == x


def test_shifted_g_recursion_order3():
    g = compute_g(2, 3)
    u = U.var("u")
    assert g.shift("u", 2) == g * (1 - u.invert() ** 2)


def test_truncation_is_loud():
    x = series([1, 2], 1)
    y = x * x
    assert y.coeff((-1,)) == 4
    with pytest.raises(TruncationError):
        y.coeff((-2,))


coeff_lists = st.lists(st.integers(-5, 5), min_size=1, max_size=6)


@settings(max_examples=60, deadline=None)
@given(coeff_lists, coeff_lists, coeff_lists)
def test_ring_axioms(a, b, c):
    x, y, z = series(a, 5), series(b, 4), series(c, 5)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x


@settings(max_examples=40, deadline=None)
@given(coeff_lists, coeff_lists, st.integers(-3, 3))
def test_shift_is_multiplicative(a, b, s):
    x, y = series(a, 5), series(b, 5)
    assert (x * y).shift("u", s) == x.shift("u", s) * y.shift("u", s)


@settings(max_examples=40, deadline=None)
@given(coeff_lists)
def test_inverse(a):
    if a[0] == 0:
        a = [1] + a[1:]
    x = series(a, 5)
    assert x * x.invert() == U.const()


def test_ratfunc_arithmetic():
    v = RatFunc.x()
    one = RatFunc(1)
    r = (one - v.inverse()) * (v / (v - one))
    assert r == one
    assert (v + 1).shift(-1) == v
