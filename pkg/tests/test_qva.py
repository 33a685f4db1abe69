import pytest

from ycl.center import coefficient_states, qdet
from ycl.qva import (
    SMatrix, VacuumQVA, braided_locality_failures, center_invariant_failures, d2_failures, flip_map,
    locality_witness, lr_inverse_closed_form, monomial_legs, noncommutative_center_witness, order_coefficients,
    ordered_inverse, probe_basket, s0_failures, s1_failures, s2_failures, s3_failures, s_map,
    s_product_closure_failures, single_leg_smatrix, sloc_failures, state_degree, strong_associativity_failures,
    tensor_of, v1_failures, v2_failures,
)
from ycl.envelope import add_into
from ycl.scalars import ONE, Q, VarOrder
from ycl.tensor import rbar
from ycl.yangian import DoubleYangian, gen, mono_degree

D = -4
SINGLES = ("t11(-1)", "t11(-2)", "t12(-1)", "t21(-1)")


@pytest.fixture(scope="module", params=[-2, 0])
def setup(request):
    Y = DoubleYangian(2, request.param)
    V = VacuumQVA(Y)
    B = probe_basket(Y)
    central = dict(coefficient_states(qdet(Y, D - 6), 1))
    return Y, V, B, central


def test_basket_shape():
    B = probe_basket(DoubleYangian(2, 0))
    assert set(B) == {"vac", *SINGLES, "t12(-1)t21(-1)", "t11(-1)t22(-1)"}
    assert "t11(-1)^2" in probe_basket(DoubleYangian(1, 0))
    assert state_degree(B["vac"]) == 0 and state_degree(B["t11(-2)"]) == -2


def test_monomial_legs_expansion():
    # t^(-1)_11 = 1 - [u^0] t+_11(u): two terms, opposite signs
    legs = monomial_legs((gen(1, 1, -1),))
    assert sorted(sgn for sgn, _ in legs) == [-1, 1]
    assert len(monomial_legs((gen(1, 2, -1),))) == 1


def test_vacuum_axioms(setup):
    Y, V, B, _ = setup
    states = list(B.values())
    assert v1_failures(V, states, D) == []
    assert v2_failures(V, states, D) == []
    assert V.translation({(): ONE}) == {}


def test_translation_is_derivation(setup):
    Y, V, B, _ = setup
    x = B["t12(-1)t21(-1)"]
    assert V.translation({(gen(1, 2, -1),): ONE}) == {(gen(1, 2, -2),): ONE}
    assert V.translation(x)
    exp = V.exp_translation(B["t11(-1)"], 2)
    assert exp[2] == {(gen(1, 1, -3),): ONE}


def test_d2(setup):
    Y, V, B, _ = setup
    sources = [B[k] for k in SINGLES] + [B["t12(-1)t21(-1)"]]
    targets = [B["vac"], B["t11(-1)"], B["t11(-2)"]]
    assert d2_failures(V, sources, targets, -7, -3, 2) == []


def test_d2_detects_wrong_translation(setup):
    Y, V, B, _ = setup

    class Shifted(VacuumQVA):
        def translation(self, state):
            return {m: 2 * c for m, c in super().translation(state).items()}

    W = Shifted(Y)
    assert d2_failures(W, [B["t12(-1)"]], [B["t21(-1)"]], -7, -3, 2)


@pytest.mark.parametrize("c", [-2, 0, 1])
def test_braiding_single_leg(c):
    assert s0_failures(2, c) == []
    assert s2_failures(2, c) == []
    assert s3_failures(2, c) == []


def test_yang_baxter_detects_perturbation():
    S, _ = single_leg_smatrix(2, -2, 3)
    L = order_coefficients(S, 3)
    t = next(iter(L[1]))
    s = next(iter(L[1][t]))
    bent = [dict(m) for m in L]
    bent[1] = {k: dict(v) for k, v in L[1].items()}
    bent[1][t][s] = bent[1][t][s] + 1
    assert s2_failures(2, -2, 3, coefficients=bent)


def test_ordered_inverses_agree_for_single_legs():
    order = VarOrder([("x", "desc")])
    x = order.var("x")
    F = rbar(2, x, 1, 2, 2, K=5).map(lambda s: s.truncate(x=4))
    lr = ordered_inverse("lr", F, 1, {"x": 4})
    rl = ordered_inverse("rl", F, 1, {"x": 4})
    closed = lr_inverse_closed_form(2, x, 5).map(lambda s: s.truncate(x=4))
    assert lr.map(lambda s: s.truncate(x=4)) == rl.map(lambda s: s.truncate(x=4))
    assert lr.map(lambda s: s.truncate(x=4)) == closed


def test_smatrix_empty_factor_is_identity():
    S = SMatrix(2, -2, 0, 1, None, {}, 3)
    assert S.lam is None and S.entry("a", "a") == ONE and S.entry("a", "b") == 0


def test_shift_compatibility(setup):
    Y, V, B, _ = setup
    for a in ("t11(-1)", "t12(-1)"):
        for b in ("t11(-1)", "t21(-1)"):
            assert s1_failures(V, B[a], B[b], -3) == {}


def test_braiding_of_central_vector_is_trivial():
    # x is known modulo degree < -6, i.e. through h^5 relative to its top degree -1
    Y = DoubleYangian(2, -2)
    x = dict(coefficient_states(qdet(Y, -6), 0))[0]
    w = {(gen(1, 2, -1),): ONE}
    top = state_degree(x) + state_degree(w)
    assert top == -2
    S = s_map(Y, x, w, -6)
    dev = dict(S)
    dev[0] = add_into(dict(S.get(0, {})), tensor_of(x, w), -ONE)
    for k, t in dev.items():
        for (a, b) in t:
            assert top - k - mono_degree(a) - mono_degree(b) >= 6


def test_braided_locality(setup):
    Y, V, B, _ = setup
    v, w = B["t11(-1)"], B["t21(-1)"]
    ell = locality_witness(V, v, w, 3)
    assert ell is not None and ell <= 6
    assert braided_locality_failures(V, v, w, 3, ell, 1, 1) == {}


def test_flip_is_not_local_at_critical_level():
    Y = DoubleYangian(2, -2)
    V = VacuumQVA(Y)
    B = probe_basket(Y)
    v, w = B["t11(-1)"], B["t21(-1)"]
    ell = locality_witness(V, v, w, 3)
    assert braided_locality_failures(V, v, w, 3, ell, 1, 1, smap=flip_map)


def test_sloc_small_window(setup):
    Y, V, B, central = setup
    assert sloc_failures(V, central[0], B["t11(-1)"], B["vac"], D + 1, -1, 0, 0) == {}


def test_strong_associativity(setup):
    Y, V, B, central = setup
    for u in (B["vac"], central[1]):
        assert strong_associativity_failures(V, B["t11(-1)"], central[0], u, D + 1, 1, 1) == {}


def test_center(setup):
    Y, V, B, central = setup
    probes = [B[k] for k in SINGLES]
    w = central[0]
    assert V.is_central(w, probes, D)
    assert not V.is_central(B["t12(-1)t21(-1)"], probes, D)
    assert center_invariant_failures(Y, w, D, 3) == []
    assert center_invariant_failures(Y, B["t12(-1)"], D, 1)
    assert s_product_closure_failures(V, w, central[1], D, 1, 2) == []


def test_variant_is_holomorphic():
    Y = DoubleYangian(2, 0)
    V = VacuumQVA(Y, variant=True)
    B = probe_basket(Y)
    probes = [x for k, x in B.items() if k != "vac"]
    for v in probes:
        for w in B.values():
            assert all(p >= 0 for p in V.vertex(v, w, -3, 0, D))
    assert all(V.is_central(x, probes, D) for x in B.values())
    assert noncommutative_center_witness(2)


def test_witness_needs_two_rows():
    with pytest.raises(ValueError):
        noncommutative_center_witness(1)
