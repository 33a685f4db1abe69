import pytest

from ycl.center import (
    CompletedCentral, centrality_failures, classical_limit, coefficient_states, column_ratio_failures,
    commutativity_failures, expected_noncritical_limit, family_classical_limit, family_series, ff_generator,
    ff_invariance_failures, invariance_failures, linearly_independent, noncritical_classical_limits, parteq_sides,
    qdet, qdet_rmatrix_sides, quantum_immanant, rank, row_column_specializations, sides_equal, tableau_independence,
    ttilde_central_failures, ttilde_vacuum_failures,
)
from ycl.diffop import ElemPoly, DualAlgebra, classical_manin_matrix, t_plus_series
from ycl.fusion import standard_tableaux
from ycl.scalars import ONE, Q
from ycl.yangian import DoubleYangian, gen

D = -6
SHAPES = [(1,), (2,), (1, 1), (2, 1), (3,)]


@pytest.fixture(scope="module")
def crit():
    return DoubleYangian(2, -2)


@pytest.fixture(scope="module")
def level0():
    return DoubleYangian(2, 0)


def immanant(Y, mu, floor=D, k=0):
    return quantum_immanant(Y, standard_tableaux(mu)[k], floor).series


def test_rank_one_immanant_is_the_series():
    Y = DoubleYangian(1, -1)
    assert immanant(Y, (1,)) == t_plus_series(Y, D)[(1, 1)]


def test_column_immanant_is_qdet(crit, level0):
    for Y in (crit, level0):
        assert immanant(Y, (1, 1)) == qdet(Y, D)


def test_tableau_independence(crit):
    ok, series = tableau_independence(crit, (2, 1), D)
    assert ok and len(series) == 2


def test_row_column_specializations(crit):
    for m in (2, 3):
        found = row_column_specializations(crit, m, -4)
        for imm, trace in found.values():
            assert imm == trace
        assert ("column" in found) == (m <= 2)


@pytest.mark.parametrize("mu", SHAPES)
def test_critical_invariance(crit, mu):
    assert invariance_failures(crit, immanant(crit, mu), D, 4) == []


def test_invariance_fails_off_critical(level0):
    bad = []
    for mu in [(1,), (2,), (2, 1), (3,)]:
        bad += invariance_failures(level0, immanant(level0, mu), D, 4)
    assert bad
    # every shape except the column fails on its own
    assert invariance_failures(level0, immanant(level0, (2,)), D, 4)


@pytest.mark.parametrize("c", [0, 1])
def test_qdet_invariant_at_any_level(c):
    Y = DoubleYangian(2, c)
    assert invariance_failures(Y, qdet(Y, -5), -5, 3) == []


@pytest.mark.parametrize("c", [-2, 0, 1])
def test_qdet_centrality(c):
    Y = DoubleYangian(2, c)
    assert centrality_failures(Y, qdet(Y, -5), -5, 3) == []


def test_centrality_control(level0):
    T = t_plus_series(level0, -5)
    assert centrality_failures(level0, T[(1, 2)], -5, 1)


def test_qdet_antisymmetrizer(crit):
    lhs, rhs = qdet_rmatrix_sides(crit, -5)
    assert sides_equal(lhs, rhs)


@pytest.mark.parametrize("c", [-2, 0])
def test_immanants_commute(c):
    Y = DoubleYangian(2, c)
    polys = [immanant(Y, mu) for mu in SHAPES]
    assert all(len(list(coefficient_states(p, 4))) == 5 for p in polys)
    assert commutativity_failures(Y, polys, D, 4) == []


def test_commutativity_control(crit):
    T = t_plus_series(crit, D)
    assert commutativity_failures(crit, [immanant(crit, (2,)), T[(1, 2)]], D, 4)


def test_completed_series(crit):
    U = standard_tableaux((1,))[0]
    T = CompletedCentral(crit, U, -3)
    im = quantum_immanant(crit, U, -3)
    basket = [{(): ONE}, {(gen(2, 1, -1),): ONE}]
    assert ttilde_vacuum_failures(T, im.series, range(0, 3)) == []
    assert ttilde_central_failures(T, basket, range(-2, 2), 2) == []
    assert column_ratio_failures(crit, -3, basket, range(-2, 2)) == []


def test_completed_series_needs_critical_level():
    Y = DoubleYangian(2, 1)
    T = CompletedCentral(Y, standard_tableaux((2,))[0], -3)
    assert ttilde_central_failures(T, [{(): ONE}], range(-1, 1), 1)


def test_classical_ff_phi_closed_forms():
    phi1 = ff_generator(2, "phi", 1, 3)
    for r in range(4):
        assert phi1[r] == expected_noncritical_limit(2, r)


def test_classical_phi2_is_column_determinant():
    # second route: the column determinant of d/du + E_+(u), not an antisymmetrized trace
    M = classical_manin_matrix(2, -5)
    cdet = (M[(1, 1)] * M[(2, 2)] - M[(2, 1)] * M[(1, 2)]).constant_term()
    phi2 = ff_generator(2, "phi", 2, 3)
    for r in range(4):
        assert phi2[r] == dict(cdet.coeff(r))


@pytest.mark.parametrize("kind,m", [("Phi", 1), ("Phi", 2), ("Psi", 1), ("Psi", 2), ("Theta", 1), ("Theta", 2)])
def test_family_limits(crit, kind, m):
    B, fails = family_series(crit, kind, m, -5)
    assert fails == []
    ff = ff_generator(2, kind.lower(), m, 2)
    for n in range(3):
        assert family_classical_limit(crit, B, m, n) == ff[n]


def test_parteq(crit):
    for m in (1, 2):
        lhs, rhs = parteq_sides(crit, m, -4)
        assert lhs == rhs


def test_ff_invariance_and_independence():
    elements = {}
    for m in (1, 2):
        for r, x in ff_generator(2, "phi", m, 3).items():
            if r >= 1:
                elements[(m, r)] = x
    assert ff_invariance_failures(2, elements, 2, -2) == []
    assert ff_invariance_failures(2, elements, 2, 0)
    assert linearly_independent(list(elements.values()))


def test_rank_helper():
    a, b = {"x": Q(1)}, {"y": Q(2)}
    assert rank([a, b, {"x": Q(3), "y": Q(3)}]) == 2
    assert not linearly_independent([a, {"x": Q(-2)}])


@pytest.mark.parametrize("c", [0, 1])
def test_noncritical_limits(c):
    Y = DoubleYangian(2, c)
    got = noncritical_classical_limits(Y, 3, -6)
    assert all(got[r] == expected_noncritical_limit(2, r) for r in range(4))


def test_classical_limit_of_generator():
    assert classical_limit({(gen(1, 2, -3),): ONE}, 2) == {((-3, 1, 2),): ONE}
