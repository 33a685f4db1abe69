"""Central elements of the vacuum module and their classical limits.

Everything is computed at ``h = 1``.  With ``u = h w`` the h-adic generators
are ``h^deg`` times the plain ones, so an h-adic statement about
``[u^n h^p]`` is a statement about the homogeneous degree ``-n - p`` part of
the plain coefficient ``[w^n]``.  Plain coefficients are kept as
``ElemPoly`` objects modulo a degree floor, which is exact because dual
monomials of degree below the floor span a two-sided ideal.

Acting with t_ij^(s), s > 0, of degree s - 1 on a state known modulo
degree < D gives a state known modulo degree < D + s - 1, which is what
the invariance checks compare.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product

from .diffop import (
    ClassicalAlgebra,
    DualAlgebra,
    ElemPoly,
    ManinMatrix,
    cdet_coefficients,
    classical_manin_matrix,
    dual_manin_matrix,
    power_traces,
    projected_trace,
    t_plus_series,
)
from .envelope import add_into, affine_vacuum_envelope, loop_minus_envelope
from .fusion import (
    StandardTableau,
    antisymmetrizer,
    fusion_idempotent,
    sign,
    standard_tableaux,
    symmetrizer,
)
from .scalars import ONE, Q, binom
from .tensor import TensorOp
from .yangian import DoubleYangian, gen, mono_degree, prune


# ----------------------------------------------------------------------
# degree slices and the h-adic dictionary


def degree_slice(elem: dict, d: int) -> dict:
    """The homogeneous part of filtration degree exactly ``d``."""
    return {m: c for m, c in elem.items() if mono_degree(m) == d}


def h_coefficient(poly: ElemPoly, n: int, p: int, shift: int = 0) -> dict:
    """[u^n h^p] of the h-adic version of ``poly`` divided by h^shift."""
    return degree_slice(poly.coeff(n), -n - p - shift)


def h_divisibility_failures(poly: ElemPoly, m: int) -> list:
    """(n, degree) pairs where the h-adic series has an h-power below h^m."""
    bad = []
    for n, x in sorted(poly.coeffs.items()):
        for mono in x:
            d = mono_degree(mono)
            if d > -n - m:
                bad.append((n, d))
    return sorted(set(bad))


def classical_limit(elem: dict, N: int) -> dict:
    """Map dual monomials t^(-r_1)...t^(-r_k) to E[-r_1]...E[-r_k], normal ordered.

    Applied to the top-degree slice of an element this is its image in the
    associated graded algebra U(t^-1 gl_N[t^-1]).
    """
    env = _loop_env(N)
    out = {}
    for mono, c in elem.items():
        keys = [(g.r, g.i, g.j) for g in mono]
        add_into(out, env.word(keys), c)
    return out


_LOOP = {}


def _loop_env(N):
    if N not in _LOOP:
        _LOOP[N] = loop_minus_envelope(N)
    return _LOOP[N]


# ----------------------------------------------------------------------
# traces of products of T+ matrices


def _shifted_t_plus(Y, floor, shift, cache):
    key = (floor, Q(shift))
    if key not in cache:
        T = t_plus_series(Y, floor)
        cache[key] = {ij: a.shift(shift) for ij, a in T.items()}
    return cache[key]


_TCACHE: dict = {}


def _tcache(Y):
    return _TCACHE.setdefault(id(Y), {})


def leg_product(Y: DoubleYangian, shifts, floor) -> dict:
    """Entries of T+_1(u+s_1)...T+_m(u+s_m): {(J, K): ElemPoly}, 0-based tuples.

    Leg a contributes the factor T+(u+s_a)_{j_a k_a}; factors are multiplied
    in leg order.
    """
    N = Y.N
    cache = _tcache(Y)
    mats = [_shifted_t_plus(Y, floor, s, cache) for s in shifts]
    layer = {((), ()): ElemPoly.scalar(DualAlgebra(Y), floor)}
    for T in mats:
        nxt = {}
        for (J, K), a in layer.items():
            for j in range(N):
                for k in range(N):
                    nxt[(J + (j,), K + (k,))] = a * T[(j + 1, k + 1)]
        layer = nxt
    return layer


def projected_leg_trace(Y, proj: TensorOp, shifts, floor) -> ElemPoly:
    """tr_{1..m} proj T+_1(u+s_1)...T+_m(u+s_m)."""
    P = leg_product(Y, shifts, floor)
    acc = ElemPoly(DualAlgebra(Y), floor)
    for (I, J), c in sorted(proj.entries.items()):
        acc = acc + P[(J, I)].scale(c)
    return acc


def matrix_power_trace(Y, shifts, floor) -> ElemPoly:
    """tr T+(u+s_1) T+(u+s_2)...T+(u+s_k) (ordinary matrix products)."""
    N = Y.N
    cache = _tcache(Y)
    if not shifts:
        return ElemPoly.scalar(DualAlgebra(Y), floor, N)
    mats = [_shifted_t_plus(Y, floor, s, cache) for s in shifts]
    acc = mats[0]
    for T in mats[1:]:
        nxt = {}
        for i in range(1, N + 1):
            for j in range(1, N + 1):
                total = ElemPoly(DualAlgebra(Y), floor)
                for k in range(1, N + 1):
                    total = total + acc[(i, k)] * T[(k, j)]
                nxt[(i, j)] = total
        acc = nxt
    out = acc[(1, 1)]
    for i in range(2, N + 1):
        out = out + acc[(i, i)]
    return out


# ----------------------------------------------------------------------
# quantum immanants and the quantum determinant


@dataclass
class ImmanantSeries:
    shape: tuple
    tableau: StandardTableau
    series: ElemPoly
    floor: int
    extra: dict = field(default_factory=dict)

    def coeff(self, n):
        return self.series.coeff(n)

    def h_coeff(self, n, p):
        return h_coefficient(self.series, n, p)


def quantum_immanant(Y: DoubleYangian, U, floor: int) -> ImmanantSeries:
    """tr E_U T+_1(u+c_1)...T+_m(u+c_m) modulo degree < floor."""
    if not isinstance(U, StandardTableau):
        U = StandardTableau(U)
    E = fusion_idempotent(U, Y.N)
    poly = projected_leg_trace(Y, E, U.contents(), floor)
    return ImmanantSeries(U.shape.parts, U, poly, floor)


def qdet(Y: DoubleYangian, floor: int) -> ElemPoly:
    """sum_sigma sgn(sigma) t+_{sigma(1)1}(u) ... t+_{sigma(N)N}(u-N+1)."""
    N = Y.N
    cache = _tcache(Y)
    mats = [_shifted_t_plus(Y, floor, -a, cache) for a in range(N)]
    acc = ElemPoly(DualAlgebra(Y), floor)
    for s in permutations(range(N)):
        term = ElemPoly.scalar(DualAlgebra(Y), floor, sign(s))
        for a in range(N):
            term = term * mats[a][(s[a] + 1, a + 1)]
        acc = acc + term
    return acc


def qdet_rmatrix_sides(Y: DoubleYangian, floor: int):
    """Entries of A^(N) T+_1(u)...T+_N(u-N+1) and of A^(N) qdet T+(u)."""
    N = Y.N
    A = antisymmetrizer(N, N)
    P = leg_product(Y, [-a for a in range(N)], floor)
    q = qdet(Y, floor)
    zero = ElemPoly(DualAlgebra(Y), floor)
    lhs, rhs = {}, {}
    for (I, K), c in A.entries.items():
        for J in product(range(N), repeat=N):
            lhs[(I, J)] = lhs.get((I, J), zero) + P[(K, J)].scale(c)
        rhs[(I, K)] = q.scale(c)
    return lhs, rhs


def sides_equal(lhs: dict, rhs: dict) -> bool:
    keys = set(lhs) | set(rhs)
    for k in keys:
        a, b = lhs.get(k), rhs.get(k)
        if a is None:
            a, b = b, a
        if b is None:
            if not a.is_zero():
                return False
        elif not a == b:
            return False
    return True


def tableau_independence(Y: DoubleYangian, mu, floor: int):
    """Series for every standard tableau of shape mu; returns (all_equal, series list)."""
    series = [quantum_immanant(Y, U, floor) for U in standard_tableaux(mu)]
    ok = all(s.series == series[0].series for s in series[1:])
    return ok, series


def row_column_specializations(Y: DoubleYangian, m: int, floor: int):
    """Immanants of shapes (m) and (1^m) next to the symmetrizer/antisymmetrizer traces.

    Returns ``{"row": (immanant, trace), "column": (immanant, trace)}``; the
    column entry is absent for m > N.
    """
    out = {}
    row = quantum_immanant(Y, [list(range(1, m + 1))], floor).series
    out["row"] = (row, projected_leg_trace(Y, symmetrizer(m, Y.N), list(range(m)), floor))
    if m <= Y.N:
        col = quantum_immanant(Y, [[a] for a in range(1, m + 1)], floor).series
        out["column"] = (col, projected_leg_trace(Y, antisymmetrizer(m, Y.N), [-a for a in range(m)], floor))
    return out


def newton_trace(Y: DoubleYangian, m: int, floor: int) -> ElemPoly:
    """tr T+(u) T+(u-1) ... T+(u-m+1)."""
    return matrix_power_trace(Y, [-a for a in range(m)], floor)


# ----------------------------------------------------------------------
# invariance and centrality


def coefficient_states(poly: ElemPoly, n_max=None):
    """(n, element) pairs of the nonconstant coefficients of a u-polynomial."""
    for n, x in sorted(poly.coeffs.items()):
        if n_max is not None and n > n_max:
            continue
        x = {m: c for m, c in x.items() if m}
        if x:
            yield n, x


def invariance_failures(Y: DoubleYangian, poly: ElemPoly, floor: int, s_max: int, n_max=None):
    """Coefficients x of ``poly`` with t_ij^(s) x vac != 0 for some 1 <= s <= s_max.

    The constant term (a multiple of vac) is skipped; it is trivially
    invariant.  Results are compared above degree floor + s - 1.
    """
    N = Y.N
    bad = []
    for n, x in coefficient_states(poly, n_max):
        for s in range(1, s_max + 1):
            f = floor + s - 1
            for i in range(1, N + 1):
                for j in range(1, N + 1):
                    res = prune(Y.act_gen(gen(i, j, s), x, f), f)
                    if res:
                        bad.append({"n": n, "i": i, "j": j, "s": s, "residual": res})
    return bad


def probe_generators(N: int, s_max: int, dual: bool = True):
    """t_ij^(s) for 1 <= |s| <= s_max (dual ones only if ``dual``)."""
    out = []
    for s in range(1, s_max + 1):
        for i in range(1, N + 1):
            for j in range(1, N + 1):
                out.append(gen(i, j, s))
                if dual:
                    out.append(gen(i, j, -s))
    return out


def centrality_failures(Y: DoubleYangian, poly: ElemPoly, floor: int, s_max: int, n_max=None):
    """Coefficients of ``poly`` not commuting with some probed generator in the algebra."""
    bad = []
    for n, x in coefficient_states(poly, n_max):
        for g in probe_generators(Y.N, s_max):
            f = floor + g.degree
            res = prune(Y.commutator({(g,): ONE}, x, f), f)
            if res:
                bad.append({"n": n, "generator": g, "residual": res})
    return bad


def commutativity_failures(Y: DoubleYangian, polys, floor: int, n_max: int):
    """Pairs of coefficients (from any of ``polys``) with nonzero commutator."""
    coeffs = []
    for a, poly in enumerate(polys):
        for n, x in coefficient_states(poly, n_max):
            coeffs.append(((a, n), x))
    bad = []
    for p in range(len(coeffs)):
        for q in range(p + 1, len(coeffs)):
            (ka, x), (kb, y) = coeffs[p], coeffs[q]
            if ka[0] == kb[0] and ka[1] == kb[1]:
                continue
            res = Y.commutator(x, y, floor)
            if res:
                bad.append({"left": ka, "right": kb, "residual": res})
    return bad


# ----------------------------------------------------------------------
# central elements of the completed algebra


def _yangian_shifted_coeff(i, j, s, b):
    """[w^-b] t_ij(w + s) as an element of the Yangian half."""
    if b == 0:
        return {(): ONE} if i == j else {}
    out = {}
    for r in range(1, b + 1):
        c = binom(-r, b - r) * Q(s) ** (b - r)
        if c:
            out[(gen(i, j, r),)] = out.get((gen(i, j, r),), 0) + c
    return {m: c for m, c in out.items() if c}


def inverse_t_on_state(Y: DoubleYangian, v: dict, j_max: int):
    """X_j[k, i] v for j <= j_max, where T(w)^-1 = sum_j X_j w^-j.

    Uses T(w) X(w) = 1, i.e. X_j = -sum_{r=1}^{j} T^(r) X_{j-r}.
    """
    N = Y.N
    X = [{(k, i): (dict(v) if k == i else {}) for k in range(1, N + 1) for i in range(1, N + 1)}]
    for j in range(1, j_max + 1):
        layer = {}
        for k in range(1, N + 1):
            for i in range(1, N + 1):
                acc = {}
                for r in range(1, j + 1):
                    for l in range(1, N + 1):
                        prev = X[j - r][(l, i)]
                        if prev:
                            add_into(acc, Y.act_gen(gen(k, l, r), prev), -ONE)
                layer[(k, i)] = acc
        X.append(layer)
    return X


def shifted_inverse_t_on_state(Y, v, shift, b_max):
    """[w^-b] (T(w + shift)^-1)_{k i} v for b <= b_max."""
    X = inverse_t_on_state(Y, v, b_max)
    N = Y.N
    out = []
    for b in range(b_max + 1):
        layer = {}
        for k in range(1, N + 1):
            for i in range(1, N + 1):
                acc = {}
                for j in range(0, b + 1):
                    c = binom(-j, b - j) * Q(shift) ** (b - j) if j else (ONE if b == 0 else Q(0))
                    if c and X[j][(k, i)]:
                        add_into(acc, X[j][(k, i)], c)
                layer[(k, i)] = acc
        out.append(layer)
    return out


class CompletedCentral:
    """T~_U(w) = tr E_U T+_1(w+c_1)...T+_m(w+c_m) T_m(w+c_m-N/2)^-1...T_1(w+c_1-N/2)^-1.

    Only its action on vacuum-module states is realised.  Coefficient
    ``[w^n]`` applied to a state is exact modulo degree < ``floor``: a term
    T+[w^a] * y with y a state has degree at most -a, so a <= -floor and the
    inverse factors contribute w^-b with b = a - n.
    """

    def __init__(self, Y: DoubleYangian, U, floor: int, proj=None):
        if not isinstance(U, StandardTableau):
            U = StandardTableau(U)
        self.Y = Y
        self.U = U
        self.floor = floor
        self.contents = U.contents()
        self.proj = proj if proj is not None else fusion_idempotent(U, Y.N)
        self.P = leg_product(Y, self.contents, floor)
        half = Q(Y.N, 2)
        self.inv_shifts = [Q(c) - half for c in self.contents]

    def _inverse_chain(self, v, b_max):
        """{(K, I): [state at w^-b for b <= b_max]} for the product of inverse factors."""
        N = self.Y.N
        m = len(self.contents)
        # layer over legs: {(K, I): {b: state}}, leg 1 applied first
        layer = {((), ()): {0: dict(v)}}
        for a in range(m):
            nxt = {}
            for (K, I), states in layer.items():
                for b0, y in states.items():
                    if not y:
                        continue
                    inv = shifted_inverse_t_on_state(self.Y, y, self.inv_shifts[a], b_max - b0)
                    for k in range(N):
                        for i in range(N):
                            key = (K + (k,), I + (i,))
                            slot = nxt.setdefault(key, {})
                            for b1, part in enumerate(inv):
                                st = part[(k + 1, i + 1)]
                                if st:
                                    slot[b0 + b1] = add_into(slot.get(b0 + b1, {}), st)
            layer = nxt
        return layer

    def act(self, n: int, v: dict) -> dict:
        """[w^n] T~ applied to the state v, modulo degree < floor."""
        D = self.floor
        b_max = -D - n
        if b_max < 0:
            return {}
        chain = self._inverse_chain(v, b_max)
        out = {}
        for (I, J), c in self.proj.entries.items():
            for K in product(range(self.Y.N), repeat=len(self.contents)):
                pk = self.P[(J, K)]
                states = chain.get((K, I), {})
                for b, y in states.items():
                    a = n + b
                    x = pk.coeff(a)
                    if a < 0 or not x or not y:
                        continue
                    add_into(out, self.Y.mul(x, y, D), c)
        return prune(out, D)


def ttilde_central_failures(T: CompletedCentral, states, n_values, s_max: int):
    """Generators t_ij^(s), 1 <= |s| <= s_max, not commuting with T~ on the basket."""
    Y = T.Y
    D = T.floor
    bad = []
    for v in states:
        for n in n_values:
            base = T.act(n, v)
            for g in probe_generators(Y.N, s_max):
                f = max(D, D + g.degree)
                lhs = prune(Y.act_gen(g, base, f), f)
                rhs = prune(T.act(n, Y.act_gen(g, v)), f)
                diff = add_into(dict(lhs), rhs, -ONE)
                if diff:
                    bad.append({"state": v, "n": n, "generator": g, "residual": diff})
    return bad


def ttilde_vacuum_failures(T: CompletedCentral, immanant: ElemPoly, n_values):
    """[w^n] T~ vac against [w^n] T+_U(w) vac."""
    bad = []
    for n in n_values:
        lhs = T.act(n, {(): ONE})
        rhs = prune(dict(immanant.coeff(n)), T.floor) if n >= 0 else {}
        if add_into(dict(lhs), rhs, -ONE):
            bad.append(n)
    return bad


def _yangian_qdet_coeffs(Y: DoubleYangian, shift, b_max):
    """[w^-b] qdet T(w + shift) for b <= b_max, Yangian-half elements."""
    N = Y.N
    acc = None
    for s in permutations(range(N)):
        series = {0: {(): Q(sign(s))}}
        for a in range(N):
            i, j = s[a] + 1, a + 1
            factor = {b: _yangian_shifted_coeff(i, j, Q(shift) - a, b) for b in range(b_max + 1)}
            nxt = {}
            for b0, x in series.items():
                for b1, y in factor.items():
                    if b0 + b1 > b_max or not y:
                        continue
                    nxt[b0 + b1] = add_into(nxt.get(b0 + b1, {}), Y.mul(x, y))
            series = nxt
        if acc is None:
            acc = series
        else:
            for b, x in series.items():
                acc[b] = add_into(acc.get(b, {}), x)
    return [acc.get(b, {}) for b in range(b_max + 1)]


def qdet_ratio_act(Y: DoubleYangian, n: int, v: dict, floor: int) -> dict:
    """[w^n] qdet T+(w) (qdet T(w - N/2))^-1 applied to v, modulo degree < floor."""
    D = floor
    b_max = -D - n
    if b_max < 0:
        return {}
    q = _yangian_qdet_coeffs(Y, -Q(Y.N, 2), b_max)
    W = [dict(v)]
    for b in range(1, b_max + 1):
        acc = {}
        for k in range(1, b + 1):
            if q[k] and W[b - k]:
                add_into(acc, Y.act(q[k], W[b - k]), -ONE)
        W.append(acc)
    plus = qdet(Y, D)
    out = {}
    for b, y in enumerate(W):
        a = n + b
        x = plus.coeff(a)
        if a < 0 or not x or not y:
            continue
        add_into(out, Y.mul(x, y, D), ONE)
    return prune(out, D)


def column_ratio_failures(Y: DoubleYangian, floor: int, states, n_values):
    """T~ for the column tableau against the ratio of quantum determinants."""
    N = Y.N
    T = CompletedCentral(Y, [[a] for a in range(1, N + 1)], floor)
    bad = []
    for v in states:
        for n in n_values:
            diff = add_into(T.act(n, v), qdet_ratio_act(Y, n, v, floor), -ONE)
            if diff:
                bad.append({"state": v, "n": n, "residual": diff})
    return bad


# ----------------------------------------------------------------------
# the families with alternating binomial coefficients


def family_bracket(Y: DoubleYangian, kind: str, m: int, floor: int) -> ElemPoly:
    """The bracketed sum of the family, at h = 1, before division by h^m."""
    N = Y.N
    acc = ElemPoly(DualAlgebra(Y), floor)
    for k in range(0, m + 1):
        if kind == "Phi":
            c = binom(N - k, m - k)
            term = projected_leg_trace(Y, antisymmetrizer(k, N), [-a for a in range(k)], floor) if k else None
        elif kind == "Psi":
            c = binom(N + m - 1, m - k)
            term = projected_leg_trace(Y, symmetrizer(k, N), [a - k + 1 for a in range(k)], floor) if k else None
        elif kind == "Theta":
            c = binom(m, k)
            term = matrix_power_trace(Y, [-a for a in range(k)], floor) if k else None
        else:
            raise ValueError(f"unknown family {kind!r}")
        if c == 0:
            continue
        if term is None:
            # the empty trace: tr 1 over no legs, or tr of the N x N identity
            term = ElemPoly.scalar(DualAlgebra(Y), floor, N if kind == "Theta" else 1)
        acc = acc + term.scale(Q(-1) ** k * c)
    return acc


def family_series(Y: DoubleYangian, kind: str, m: int, floor: int):
    """Bracketed sum plus its h^m divisibility report.

    Returns ``(bracket, failures)``; with no failures the h-adic series is
    bracket / h^m, read through ``h_coefficient(bracket, n, p, shift=m)``.
    """
    if kind == "Phi" and not 1 <= m <= Y.N:
        raise ValueError("the antisymmetrizer family needs 1 <= m <= N")
    B = family_bracket(Y, kind, m, floor)
    return B, h_divisibility_failures(B, m)


def family_classical_limit(Y: DoubleYangian, B: ElemPoly, m: int, n: int) -> dict:
    """Image at h = 0 of [u^n] of the family series."""
    return classical_limit(h_coefficient(B, n, 0, shift=m), Y.N)


def parteq_sides(Y: DoubleYangian, m: int, floor: int):
    """tr A^(m) prod (1 - T+_a(u) e^-d) against its alternating binomial expansion."""
    N = Y.N
    M = dual_manin_matrix(Y, floor)
    one = M.one()
    L = ManinMatrix(N, {ij: (one - M[ij]) if ij[0] == ij[1] else -M[ij] for ij in M.entries})
    lhs = projected_trace(L, antisymmetrizer(m, N), m)
    c = cdet_coefficients(M)
    rhs = M.zero()
    for k in range(0, m + 1):
        coef = binom(N - k, m - k)
        if coef and k < len(c):
            rhs = rhs + c[k].scale(Q(-1) ** k * coef)
    return lhs, rhs


# ----------------------------------------------------------------------
# classical side: U(t^-1 gl_N[t^-1]) and the affine vacuum module


def ff_generator(N: int, kind: str, m: int, r_max: int) -> dict:
    """{r: coefficient of u^r} of the d-free part of the classical family.

    ``kind`` is "phi" (antisymmetrizer), "psi" (symmetrizer) or "theta"
    (trace of the m-th power) of d/du + E_+(u).  The u^r coefficient is
    homogeneous of degree -r - m, so the floor -r_max - m is exact.
    """
    floor = -r_max - m
    alg = ClassicalAlgebra(N)
    M = classical_manin_matrix(N, floor, alg)
    if kind == "phi":
        if not 1 <= m <= N:
            raise ValueError("phi needs 1 <= m <= N")
        op = projected_trace(M, antisymmetrizer(m, N), m)
    elif kind == "psi":
        op = projected_trace(M, symmetrizer(m, N), m)
    elif kind == "theta":
        op = power_traces(M, m)[-1]
    else:
        raise ValueError(f"unknown classical family {kind!r}")
    poly = op.constant_term()
    return {r: dict(poly.coeff(r)) for r in range(0, r_max + 1)}


def affine_act(state: dict, key, N: int, level=None) -> dict:
    """E_ij[s] applied to a vacuum-module vector; ``key`` is (s, i, j)."""
    level = -N if level is None else level
    env = _affine_env(N, Q(level))
    return env.act(key, state)


_AFF = {}


def _affine_env(N, level):
    k = (N, level)
    if k not in _AFF:
        _AFF[k] = affine_vacuum_envelope(N, level)
    return _AFF[k]


def ff_invariance_failures(N: int, elements: dict, s_max: int, level=None):
    """(label, key) pairs with E_ij[s] x vac != 0, 0 <= s <= s_max."""
    bad = []
    for label, x in elements.items():
        for s in range(0, s_max + 1):
            for i in range(1, N + 1):
                for j in range(1, N + 1):
                    if affine_act(x, (s, i, j), N, level):
                        bad.append((label, (s, i, j)))
    return bad


def rank(vectors) -> int:
    """Rank over Q of sparse vectors given as dicts."""
    rows = [dict(v) for v in vectors if v]
    r = 0
    pivots = []
    for v in rows:
        v = {k: Q(c) for k, c in v.items() if c}
        for p, w in pivots:
            c = v.get(p)
            if c:
                add_into(v, w, -c)
        if v:
            p = min(v)
            inv = 1 / v[p]
            v = {k: c * inv for k, c in v.items()}
            pivots.append((p, v))
            r += 1
    return r


def linearly_independent(vectors) -> bool:
    vectors = list(vectors)
    return all(vectors) and rank(vectors) == len(vectors)


# ----------------------------------------------------------------------
# noncritical levels


def noncritical_generators(Y: DoubleYangian, r_max: int, floor: int) -> dict:
    """d_r as {r: {p: element}} where d_r = sum_p h^(p-1) (p-th slice).

    From qdet T+(u) = 1 - h (d_0 + d_1 u + ...), the h^p part of d_r is
    minus the degree -r-p slice of the plain [w^r] coefficient.
    """
    q = qdet(Y, floor)
    out = {}
    for r in range(0, r_max + 1):
        slices = {}
        for p in range(1, -floor - r + 1):
            x = {m: -c for m, c in h_coefficient(q, r, p).items()}
            if x:
                slices[p] = x
        out[r] = slices
    return out


def noncritical_classical_limits(Y: DoubleYangian, r_max: int, floor: int) -> dict:
    d = noncritical_generators(Y, r_max, floor)
    return {r: classical_limit(d[r].get(1, {}), Y.N) for r in d}


def expected_noncritical_limit(N: int, r: int) -> dict:
    """sum_i E_ii[-r-1]."""
    return {((-r - 1, i, i),): ONE for i in range(1, N + 1)}
