import pytest
from hypothesis import given, settings, strategies as st

from ycl.center import qdet
from ycl.diffop import (
    DualAlgebra, ElemPoly, ManinMatrix, ShiftOperator, cdet_coefficients, classical_manin_matrix, commutator,
    dual_manin_matrix, macmahon_check, manin_witness, newton_check, t_plus_series,
)
from ycl.scalars import ONE
from ycl.yangian import DoubleYangian, gen

FLOOR = -4


@pytest.fixture(scope="module")
def Y2():
    return DoubleYangian(2, 0)


@pytest.fixture(scope="module")
def Y1():
    return DoubleYangian(1, 0)


def op(Y, terms, step=1):
    return ShiftOperator(DualAlgebra(Y), FLOOR, terms, step=step)


def test_one_shift(Y2):
    T = t_plus_series(Y2, FLOOR)
    a, b = T[(1, 2)], T[(2, 1)]
    assert op(Y2, {1: a}) * op(Y2, {1: b}) == op(Y2, {2: a * b.shift(-1)})
    assert op(Y2, {0: a}) * op(Y2, {0: b}) == op(Y2, {0: a * b})


def test_cube_rank_one(Y1):
    t = t_plus_series(Y1, FLOOR)[(1, 1)]
    M = op(Y1, {1: t})
    assert M * M * M == op(Y1, {3: t * t.shift(-1) * t.shift(-2)})


def test_cdet_small_cases(Y1, Y2):
    M1 = dual_manin_matrix(Y1, FLOOR)
    c = cdet_coefficients(M1)
    assert len(c) == 2 and c[1] == M1[(1, 1)]
    M2 = dual_manin_matrix(Y2, FLOOR)
    c = cdet_coefficients(M2)
    assert c[1] == M2.trace()
    assert c[2] == op(Y2, {2: qdet(Y2, FLOOR)})


elements = st.sampled_from([
    {(gen(1, 2, -1),): ONE},
    {(gen(2, 1, -1),): ONE},
    {(gen(1, 1, -2),): ONE, (gen(2, 2, -1),): -ONE},
    {(): ONE},
])


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 1), elements), min_size=3, max_size=3))
def test_shift_products_associate(factors):
    Y = DoubleYangian(2, 0)
    alg = DualAlgebra(Y)
    a, b, c = (ShiftOperator(alg, FLOOR, {k: ElemPoly(alg, FLOOR, {n: x})}) for k, n, x in factors)
    assert (a * b) * c == a * (b * c)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), elements), min_size=3, max_size=3))
def test_derivation_products_associate(factors):
    Y = DoubleYangian(2, 0)
    alg = DualAlgebra(Y)
    a, b, c = (ShiftOperator(alg, FLOOR, {k: ElemPoly(alg, FLOOR, {n: x})}, kind="deriv") for k, n, x in factors)
    assert (a * b) * c == a * (b * c)


def test_derivation_rule(Y2):
    alg = DualAlgebra(Y2)
    d = ShiftOperator(alg, FLOOR, {1: ElemPoly.scalar(alg, FLOOR)}, kind="deriv")
    u2 = ShiftOperator(alg, FLOOR, {0: ElemPoly(alg, FLOOR, {2: {(): ONE}})}, kind="deriv")
    u1 = ElemPoly(alg, FLOOR, {1: {(): ONE}}).scale(2)
    assert commutator(d, u2) == ShiftOperator(alg, FLOOR, {0: u1}, kind="deriv")


def test_mixed_flavours_rejected(Y2):
    alg = DualAlgebra(Y2)
    one = ElemPoly.scalar(alg, FLOOR)
    with pytest.raises(ValueError):
        ShiftOperator(alg, FLOOR, {1: one}) + ShiftOperator(alg, FLOOR, {1: one}, kind="deriv")


@pytest.mark.parametrize("N", [1, 2])
@pytest.mark.parametrize("flavour", ["dual", "classical"])
def test_newton_macmahon_manin(N, flavour):
    M = dual_manin_matrix(DoubleYangian(N, 0), FLOOR) if flavour == "dual" else classical_manin_matrix(N, FLOOR)
    assert newton_check(M, 3)["first_difference"] is None
    assert macmahon_check(M, 3)["first_difference"] is None
    assert manin_witness(M) == []


def test_zeroth_coefficients(Y2):
    M = dual_manin_matrix(Y2, FLOOR)
    n = newton_check(M, 0)
    assert n["lhs"][0] == M.trace() and n["rhs"][0] == M.trace()
    assert macmahon_check(M, 0)["lhs"][0] == M.one()


def test_non_manin_controls(Y2):
    M = dual_manin_matrix(Y2, FLOOR)
    transposed = ManinMatrix(2, {(i, j): M[(j, i)] for i in (1, 2) for j in (1, 2)})
    assert manin_witness(transposed)
    T = t_plus_series(Y2, FLOOR)
    wrong_step = ManinMatrix(2, {ij: op(Y2, {1: a}, step=-1) for ij, a in T.items()})
    assert manin_witness(wrong_step)
    assert newton_check(wrong_step, 2)["first_difference"] is not None
