"""The quantum vertex algebra structure on the vacuum module.

Vertex operators, translation and the braiding map are realised at h = 1
(see ``center`` for the dictionary with the h-adic picture: the coefficient
of z^p h^k in Y(v, z) w is the degree deg v + deg w - p - k part of the plain
coefficient of z^p).  Results are exact modulo dual monomials of degree
below a floor ``D``.

A PBW monomial t^(-r_1)_{i_1 j_1} ... t^(-r_k)_{i_k j_k} vac is expanded as
prod_a (delta_{r_a 1} delta_{i_a j_a} - [u_a^{r_a - 1}] t+_{i_a j_a}(u_a)),
so its vertex operator is a signed sum of coefficients of

    Y(T+_n(u) vac, z) = T+_1(z+u_1)...T+_n(z+u_n) T_n(z+u_n+c/2)^-1...T_1(z+u_1+c/2)^-1.

The coefficient of u_a^b turns f(z + u_a) into (d/dz)^b f / b!, split by the
Leibniz rule between the T+ factor and the inverse factor of leg a.  The
inverse factors act first, leg 1 first.

Exactness: the z^p coefficient of Y(v, z) w modulo degree < D only needs w
modulo degree < D + min(p, 0).
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from .center import inverse_t_on_state, probe_generators
from .envelope import add_into
from .scalars import ONE, Q, RatFunc, VarOrder, binom
from .tensor import TensorOp, rbar, series_inverse
from .yangian import DoubleYangian, GenIndex, gen, mono_degree, prune


def _freeze(state: dict):
    return frozenset(state.items())


def state_degree(state: dict):
    """Largest filtration degree present (0 for the vacuum)."""
    return max((mono_degree(m) for m in state), default=None)


def _subsets(k):
    for mask in range(1 << k):
        yield [a for a in range(k) if mask >> a & 1]


def monomial_legs(mono):
    """Signed leg data [(sign, [(i, j, b), ...])] of a PBW monomial."""
    out = []
    k = len(mono)
    for S in _subsets(k):
        ok = True
        for a in range(k):
            if a not in S:
                g = mono[a]
                if not (g.r == -1 and g.i == g.j):
                    ok = False
                    break
        if not ok:
            continue
        legs = [(mono[a].i, mono[a].j, -mono[a].r - 1) for a in S]
        out.append(((-1) ** len(S), tuple(legs)))
    return out


class VacuumQVA:
    """Y, D and the center tests on the vacuum module of DY(gl_N) at level c.

    With ``variant=True`` the inverse factors are dropped, giving the
    structure Y(T+_n(u) vac, z) = T+_n(u|z) on the dual Yangian.
    """

    def __init__(self, Y: DoubleYangian, variant: bool = False):
        self.Y = Y
        self.N = Y.N
        self.variant = variant
        self.half = Y.level / 2
        self._inv = {}
        self._mul = {}

    # ---- building blocks
    def _tplus_leg(self, i, k, b1, e_max):
        """{e: element} for (d/dz)^b1/b1! of t+_ik(z), powers e <= e_max."""
        out = {}
        if b1 == 0 and i == k:
            out[0] = {(): ONE}
        for r in range(b1 + 1, b1 + e_max + 2):
            e = r - 1 - b1
            c = -binom(r - 1, b1)
            if c:
                out.setdefault(e, {})[(gen(i, k, -r),)] = Q(c)
        return out

    def _inverse_leg(self, state, b2, J_max):
        """[z^-J] (d/dz)^b2/b2! (T(z + c/2)^-1)_{ki} state for J <= J_max: {J: {(k, i): state}}."""
        if self.variant:
            if b2:
                return {}
            N = self.N
            return {0: {(k, i): (dict(state) if k == i else {}) for k in range(1, N + 1) for i in range(1, N + 1)}}
        key = (_freeze(state), self.half)
        hit = self._inv.get(key)
        if hit is None or len(hit) <= J_max:
            hit = inverse_t_on_state(self.Y, state, J_max)
            self._inv[key] = hit
        N = self.N
        out = {}
        for J in range(b2, J_max + 1):
            Jp = J - b2  # power of the underived inverse
            cd = binom(-Jp, b2)
            if cd == 0:
                continue
            layer = {}
            for k in range(1, N + 1):
                for i in range(1, N + 1):
                    acc = {}
                    for j in range(0, Jp + 1):
                        if j == 0:
                            c = ONE if Jp == 0 else Q(0)
                        else:
                            c = binom(-j, Jp - j) * self.half ** (Jp - j)
                        if c and hit[j][(k, i)]:
                            add_into(acc, hit[j][(k, i)], c * cd)
                    if acc:
                        layer[(k, i)] = acc
            if layer:
                out[J] = layer
        return out

    def _dmul(self, x, y, floor):
        return self.Y.mul(x, y, floor)

    def apply_legs(self, legs, w: dict, p_lo: int, p_hi: int, floor: int) -> dict:
        """{p: state} for [u^b] Y((T+_n(u))_{rows, cols} vac, z) w, p_lo <= p <= p_hi."""
        N = self.N
        D = floor
        if not legs:
            return {0: prune(dict(w), D)} if p_lo <= 0 <= p_hi and w else {}
        J_max = max(-D - p_lo, 0)
        n = len(legs)
        out = {}
        splits = product(*[range(b + 1) for (_, _, b) in legs])
        for b1s in splits:
            # inverse chain, leg 1 first: {(K, J): state}
            chain = {((), 0): dict(w)}
            for a, (i, j, b) in enumerate(legs):
                b2 = b - b1s[a]
                nxt = {}
                for (K, J0), y in chain.items():
                    if not y:
                        continue
                    inv = self._inverse_leg(y, b2, J_max - J0)
                    for J1, layer in inv.items():
                        for k in range(1, N + 1):
                            st = layer.get((k, j))
                            if st:
                                key = (K + (k,), J0 + J1)
                                nxt[key] = add_into(nxt.get(key, {}), st)
                chain = nxt
            # T+ factors, leg n applied first (leftmost factor is leg 1)
            for (K, J), y in chain.items():
                layer = {0: y}
                for a in range(n - 1, -1, -1):
                    i = legs[a][0]
                    k = K[a]
                    nxt = {}
                    for e0, st in layer.items():
                        factor = self._tplus_leg(i, k, b1s[a], -D - e0)
                        for e, x in factor.items():
                            if e0 + e > -D:
                                continue
                            prod_ = self._dmul(x, st, D)
                            if prod_:
                                nxt[e0 + e] = add_into(nxt.get(e0 + e, {}), prod_)
                    layer = nxt
                for e, st in layer.items():
                    p = e - J
                    if p_lo <= p <= p_hi and st:
                        out[p] = add_into(out.get(p, {}), st)
        return {p: prune(s, D) for p, s in out.items() if prune(s, D)}

    def vertex(self, v: dict, w: dict, p_lo: int, p_hi: int, floor: int) -> dict:
        """{p: [z^p] Y(v, z) w} modulo degree < floor."""
        out = {}
        for mono, c in v.items():
            for sgn, legs in monomial_legs(mono):
                part = self.apply_legs(legs, w, p_lo, p_hi, floor)
                for p, st in part.items():
                    out[p] = add_into(out.get(p, {}), st, c * sgn)
        return {p: s for p, s in out.items() if s}

    # ---- translation
    def translation(self, state: dict) -> dict:
        """D as the derivation t^(-r) -> r t^(-r-1) with D vac = 0."""
        out = {}
        for mono, c in state.items():
            for a, g in enumerate(mono):
                r = -g.r
                word = mono[:a] + (gen(g.i, g.j, -r - 1),) + mono[a + 1 :]
                add_into(out, self.Y.normal_form(word), c * r)
        return out

    def exp_translation(self, state: dict, p_max: int) -> dict:
        """{p: D^p state / p!} for p <= p_max."""
        out = {0: dict(state)}
        cur = dict(state)
        for p in range(1, p_max + 1):
            cur = {m: c / p for m, c in self.translation(cur).items()}
            if cur:
                out[p] = cur
        return out

    # ---- center
    def is_central(self, x: dict, probes, floor: int, p_lo: int = -3) -> bool:
        """True if Y(w, z) x has no negative powers of z for every probe w."""
        for w in probes:
            part = self.vertex(w, x, p_lo, -1, floor)
            if any(part.values()):
                return False
        return True

    def center_product(self, w: dict, u: dict, floor: int) -> dict:
        """w_{-1} u, the coefficient of z^0 in Y(w, z) u."""
        return self.vertex(w, u, 0, 0, floor).get(0, {})


# ----------------------------------------------------------------------
# tensor states: dicts {(mono_a, mono_b): coeff}


def tensor_add(out, x, c=ONE):
    return add_into(out, x, c)


def tensor_of(a: dict, b: dict) -> dict:
    out = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            out[(ma, mb)] = out.get((ma, mb), 0) + ca * cb
    return {k: v for k, v in out.items() if v}


# ----------------------------------------------------------------------
# ordered products on (End C^N)^{(x) n} (x) (End C^N)^{(x) m}


def _vmul(f, x):
    if isinstance(x, dict):
        return {k: f * v for k, v in x.items()}
    return f * x


def _vadd(out, key, val):
    cur = out.get(key)
    if cur is None:
        out[key] = val
    elif isinstance(val, dict):
        for k, v in val.items():
            cur[k] = cur[k] + v if k in cur else v
    else:
        out[key] = cur + val


def _split(idx, n):
    return idx[:n], idx[n:]


def ordered_apply(kind: str, F: TensorOp, X: dict, n: int) -> dict:
    """The ordered product ^{kind}F applied to X = {(row, col): value}.

    Rows and columns are (I, K) with I on the first n legs.  For
    F = sum a (x) b: ll gives a x (x) b y, lr gives a x (x) y b,
    rl gives x a (x) b y and rr gives x a (x) y b.
    """
    out = {}
    if kind == "ll":
        byrow = {}
        for (r, c), x in X.items():
            byrow.setdefault(r, []).append((c, x))
        for (r, mid), f in F.entries.items():
            for c, x in byrow.get(mid, ()):
                _vadd(out, (r, c), _vmul(f, x))
    elif kind == "rr":
        bycol = {}
        for (r, c), x in X.items():
            bycol.setdefault(c, []).append((r, x))
        for (mid, c), f in F.entries.items():
            for r, x in bycol.get(mid, ()):
                _vadd(out, (r, c), _vmul(f, x))
    elif kind == "lr":
        # result[(I,K),(J,L)] += F[(I,L'),(I',L)] X[(I',K),(J,L')]
        index = {}
        for (r, c), x in X.items():
            Ip, K = _split(r, n)
            J, Lp = _split(c, n)
            index.setdefault((Ip, Lp), []).append((K, J, x))
        for (fr, fc), f in F.entries.items():
            I, Lp = _split(fr, n)
            Ip, L = _split(fc, n)
            for K, J, x in index.get((Ip, Lp), ()):
                _vadd(out, (I + K, J + L), _vmul(f, x))
    elif kind == "rl":
        # result[(I,K),(J,L)] += F[(J',K),(J,K')] X[(I,K'),(J',L)]
        index = {}
        for (r, c), x in X.items():
            I, Kp = _split(r, n)
            Jp, L = _split(c, n)
            index.setdefault((Kp, Jp), []).append((I, L, x))
        for (fr, fc), f in F.entries.items():
            Jp, K = _split(fr, n)
            J, Kp = _split(fc, n)
            for I, L, x in index.get((Kp, Jp), ()):
                _vadd(out, (I + K, J + L), _vmul(f, x))
    else:
        raise ValueError(f"unknown ordered product {kind!r}")
    return out


def _cut_values(X: dict, cut: dict) -> dict:
    out = {}
    for key, x in X.items():
        if isinstance(x, dict):
            y = {k: v.truncate(**cut) for k, v in x.items()}
            y = {k: v for k, v in y.items() if not v.is_zero()}
            if y:
                out[key] = y
        else:
            x = x.truncate(**cut)
            if not x.is_zero():
                out[key] = x
    return out


def ordered_inverse(kind: str, F: TensorOp, n: int, cut: dict) -> TensorOp:
    """G with ^{kind}G (F) = 1, for F = 1 + (small), by fixed-point iteration.

    Writing F = 1 + F' and G = 1 + G' the condition reads
    G' = -F' - ^{kind}G' (F'), since ^{kind}G' (1) = G'.
    """
    one = next(iter(F.entries.values())).order.const()
    ident = TensorOp.identity(F.N, F.m, one)
    Fp = {k: v for k, v in (F - ident).entries.items()}
    Fp = _cut_values(Fp, cut)
    G = {k: -v for k, v in Fp.items()}
    while True:
        nxt = _cut_values(ordered_apply(kind, TensorOp(F.N, F.m, G), Fp, n), cut)
        new = {k: -v for k, v in Fp.items()}
        for k, v in nxt.items():
            _vadd(new, k, -v)
        new = _cut_values(new, cut)
        if _same(new, G):
            return ident + TensorOp(F.N, F.m, new)
        G = new


def _same(a: dict, b: dict) -> bool:
    if set(a) != set(b):
        return False
    return all(a[k] == b[k] and b[k] == a[k] for k in a)


def lr_inverse_closed_form(N: int, arg, K: int) -> TensorOp:
    """(^{lr} Rbar(x))^-1 = g(x)^-1 (1 - N/x)^-1 (R(-x) - N/x) for one leg on each side."""
    from .scalars import g_of
    from .tensor import yang_r

    one = arg.order.const()
    xinv = arg.invert()
    g = g_of(N, arg, K)
    Rm = yang_r(N, -arg, 1, 2, 2)
    core = Rm - TensorOp.identity(N, 2, one).rscale(xinv * N)
    scal = (one - xinv * N).invert(**{arg.order.names[0]: K}) * g.invert(**{arg.order.names[0]: K})
    return core.rscale(scal)


class SMatrix:
    """The braiding on T+-generated vectors, as a matrix on component labels.

    ``lam[target][source]`` is a series such that
    S(z)(x_{I J}(u) (x) y_{K L}(v)) = sum_source lam[(I,K,J,L)][source] x_source (x) y_source,
    where labels are (I, K, J, L) with I, J on the n legs of the first factor.
    ``args(j, i)`` is the argument of Rbar between leg j of the first group
    and leg i of the second (z + u_j - v_i in the standard setting).
    """

    def __init__(self, N, level, n, m, args, cut, K):
        self.N, self.n, self.m = N, n, m
        self.level = Q(level)
        self.cut = cut
        self.K = K
        total = n + m
        self.total = total
        one = None

        def rbar_nm(shift):
            op = None
            for j in range(1, n + 1):
                for i in range(m, 0, -1):
                    a = (args(j, i) + shift).truncate(**cut)
                    R = rbar(N, a, j, n + i, total, K).map(lambda s: s.truncate(**cut))
                    op = R if op is None else (op * R).map(lambda s: s.truncate(**cut))
            return op

        if n == 0 or m == 0:
            self.lam = None
            return
        c = self.level
        R0 = rbar_nm(0)
        Rplus = rbar_nm(c)
        Rminus = rbar_nm(-c)
        one = next(iter(R0.entries.values())).order.const()
        G4 = series_inverse(Rplus).map(lambda s: s.truncate(**cut))
        G1 = ordered_inverse("lr", Rminus, n, cut)
        X = {}
        for idx in product(range(N), repeat=2 * total):
            row, col = idx[:total], idx[total:]
            X[(row, col)] = {(row, col): one}
        X = _cut_values(ordered_apply("rl", G4, X, n), cut)
        X = _cut_values(ordered_apply("rr", R0, X, n), cut)
        X = _cut_values(ordered_apply("ll", R0, X, n), cut)
        X = _cut_values(ordered_apply("lr", G1, X, n), cut)
        self.lam = {}
        for (row, col), srcs in X.items():
            I, K = row[:n], row[n:]
            J, L = col[:n], col[n:]
            self.lam[(I, K, J, L)] = {
                (s[0][:n], s[0][n:], s[1][:n], s[1][n:]): v for s, v in srcs.items()
            }

    def entry(self, target, source):
        if self.lam is None:
            return ONE if target == source else 0
        return self.lam.get(target, {}).get(source, 0)


def single_leg_smatrix(N, level, P, var="x"):
    """S for one leg on each side as a function of x = z + u - v, known to x^-(P-1)."""
    order = VarOrder([(var, "desc")])
    x = order.var(var)
    cut = {var: P - 1}
    return SMatrix(N, level, 1, 1, lambda j, i: x, cut, K=P + 1), order


def order_coefficients(S: SMatrix, P: int):
    """[Lambda_0, ..., Lambda_{P-1}] with Lambda(x) = sum_k Lambda_k x^-k (one variable)."""
    out = []
    for k in range(P):
        mat = {}
        for t, row in S.lam.items():
            for s, v in row.items():
                c = v.coeff((-k,))
                if c:
                    mat.setdefault(t, {})[s] = Q(c)
        out.append(mat)
    return out


def _compose(A: dict, B: dict) -> dict:
    """Matrix product sum_s A[t][s] B[s][r] (A applied first)."""
    out = {}
    for t, row in A.items():
        acc = {}
        for s, a in row.items():
            for r, b in B.get(s, {}).items():
                v = acc.get(r)
                acc[r] = a * b if v is None else v + a * b
        acc = {r: v for r, v in acc.items() if not _iszero(v)}
        if acc:
            out[t] = acc
    return out


def _iszero(v):
    if hasattr(v, "is_zero"):
        return v.is_zero()
    return v == 0


def _swap_label(t):
    I, K, J, L = t
    return (K, I, L, J)


def s0_failures(N, level, P=3):
    """Labels where the h^0 part of S differs from the identity."""
    S, _ = single_leg_smatrix(N, level, P)
    L0 = order_coefficients(S, P)[0]
    bad = []
    labels = {t for t in S.lam} | {s for row in S.lam.values() for s in row}
    for t in labels:
        for s in labels:
            want = ONE if s == t else 0
            if L0.get(t, {}).get(s, 0) != want:
                bad.append((t, s))
    return bad


def s3_failures(N, level, P=3):
    """S_21(y) S(-y) = 1 to order y^-(P-1), for one leg on each side."""
    S, order = single_leg_smatrix(N, level, P, "y")
    lam = S.lam
    neg = {t: {s: v.rescale("y", -1) for s, v in row.items()} for t, row in lam.items()}
    swapped = {_swap_label(t): {_swap_label(s): v for s, v in row.items()} for t, row in lam.items()}
    comp = _compose(neg, swapped)
    one = order.const()
    bad = []
    for t in set(lam) | set(comp):
        row = comp.get(t, {})
        for r in set(row) | {t}:
            v = row.get(r, 0 * one)
            if not isinstance(v, type(one)):
                v = order.const(v)
            want = one if r == t else 0 * one
            if not (v - want).truncate(y=P - 1).is_zero():
                bad.append((t, r))
    return bad


def s2_failures(N, level, P=3, coefficients=None):
    """Yang-Baxter for S with one leg per factor, order by order in h.

    The h^k part of each side is homogeneous of degree -k in (a, b) with
    a = z_1 + u_1 - u_2 and b = z_2 + u_2 - u_3, so it is compared as a
    rational function of a at b = 1.
    """
    if coefficients is None:
        S, _ = single_leg_smatrix(N, level, P)
        coefficients = order_coefficients(S, P)
    Lk = coefficients
    labels = sorted({t for m in Lk for t in m} | {s for m in Lk for row in m.values() for s in row})
    a = RatFunc.x()
    one = RatFunc(1)
    args = {(0, 1): a, (0, 2): a + one, (1, 2): one}

    def graded(legs):
        # {k: lifted matrix with RatFunc entries for the h^k part}
        out = {}
        for k in range(P):
            mat = {t: dict(row) for t, row in Lk[k].items()}
            if k == 0:
                for t in labels:
                    mat.setdefault(t, {})
            w = args[legs].inverse() if k else one
            scale = one
            for _ in range(k):
                scale = scale * w
            lifted = _embed3_full(mat, legs, N)
            out[k] = {t: {s: scale * v for s, v in row.items()} for t, row in lifted.items()}
        return out

    S12, S13, S23 = graded((0, 1)), graded((0, 2)), graded((1, 2))
    bad = []
    for k in range(P):
        lhs = _sum_graded3(S23, S13, S12, k)
        rhs = _sum_graded3(S12, S13, S23, k)
        keys = set(lhs) | set(rhs)
        for t in keys:
            l, r = lhs.get(t, {}), rhs.get(t, {})
            for s in set(l) | set(r):
                d = l.get(s, RatFunc(0)) - r.get(s, RatFunc(0))
                if not d.is_zero():
                    bad.append((k, t, s))
    return bad


def _embed3_full(mat: dict, legs: tuple, N: int) -> dict:
    a, b = legs
    other = ({0, 1, 2} - {a, b}).pop()
    out = {}
    pairs = [((i,), (j,)) for i, j in product(range(N), repeat=2)]
    for t, row in mat.items():
        I, K, J, L = t
        for o in pairs:
            tl = [None] * 3
            tl[a], tl[b], tl[other] = (I, J), (K, L), o
            acc = {}
            for s, v in row.items():
                I2, K2, J2, L2 = s
                sl = [None] * 3
                sl[a], sl[b], sl[other] = (I2, J2), (K2, L2), o
                acc[tuple(sl)] = RatFunc(v)
            out[tuple(tl)] = acc
    return out


def _sum_graded3(first, second, third, k):
    """h^k part of the composite map (first applied first)."""
    total = {}
    for i in range(k + 1):
        for j in range(k - i + 1):
            l = k - i - j
            comp = _compose(_compose(first[i], second[j]), third[l])
            for t, row in comp.items():
                acc = total.setdefault(t, {})
                for s, v in row.items():
                    acc[s] = acc[s] + v if s in acc else v
    return total


# ----------------------------------------------------------------------
# the braiding on PBW states


@lru_cache(maxsize=None)
def _state_smatrix(N, level, n, m, bu, bv, z_lo):
    names = [("z", "desc")] + [(f"u{j}", "asc") for j in range(1, n + 1)] + [(f"v{i}", "asc") for i in range(1, m + 1)]
    order = VarOrder(names)
    cut = {"z": -z_lo}
    for j in range(1, n + 1):
        cut[f"u{j}"] = bu[j - 1]
    for i in range(1, m + 1):
        cut[f"v{i}"] = bv[i - 1]
    z = order.var("z")

    def args(j, i):
        return z + order.var(f"u{j}") - order.var(f"v{i}")

    return SMatrix(N, level, n, m, args, cut, K=-z_lo + 1), order


def _tplus_coefficient_state(Y, rows, cols, powers):
    """[u^powers] (T+_1(u_1)...T+_n(u_n))_{rows, cols} vac as a state."""
    state = {(): ONE}
    for i, j, q in reversed(list(zip(rows, cols, powers))):
        x = {(gen(i, j, -q - 1),): -ONE}
        if q == 0 and i == j:
            x[()] = ONE
        state = Y.mul(x, state)
    return state


def s_map(Y: DoubleYangian, v: dict, w: dict, z_lo: int) -> dict:
    """S(z)(v (x) w) as {k: tensor state} with k the power of z, k >= z_lo."""
    N = Y.N
    out = {}
    for mv, cv in v.items():
        for sv, legs_v in monomial_legs(mv):
            for mw, cw in w.items():
                for sw, legs_w in monomial_legs(mw):
                    n, m = len(legs_v), len(legs_w)
                    bu = tuple(b for (_, _, b) in legs_v)
                    bv = tuple(b for (_, _, b) in legs_w)
                    coef = cv * cw * sv * sw
                    I = tuple(i - 1 for (i, _, _) in legs_v)
                    J = tuple(j - 1 for (_, j, _) in legs_v)
                    K = tuple(i - 1 for (i, _, _) in legs_w)
                    L = tuple(j - 1 for (_, j, _) in legs_w)
                    if n == 0 or m == 0:
                        a = _tplus_coefficient_state(Y, [i + 1 for i in I], [j + 1 for j in J], bu)
                        b = _tplus_coefficient_state(Y, [k + 1 for k in K], [l + 1 for l in L], bv)
                        out[0] = add_into(out.get(0, {}), tensor_of(a, b), coef)
                        continue
                    S, order = _state_smatrix(N, Y.level, n, m, bu, bv, z_lo)
                    row = S.lam.get((I, K, J, L), {})
                    for (I0, K0, J0, L0), series in row.items():
                        for exps, c in series.items():
                            zk = exps[0]
                            du, dv = exps[1 : 1 + n], exps[1 + n :]
                            beta = tuple(b - d for b, d in zip(bu, du))
                            gamma = tuple(b - d for b, d in zip(bv, dv))
                            if min(beta + gamma, default=0) < 0:
                                continue
                            a = _tplus_coefficient_state(Y, [i + 1 for i in I0], [j + 1 for j in J0], beta)
                            b = _tplus_coefficient_state(Y, [k + 1 for k in K0], [l + 1 for l in L0], gamma)
                            out[zk] = add_into(out.get(zk, {}), tensor_of(a, b), coef * c)
    return {k: t for k, t in out.items() if t}


# ----------------------------------------------------------------------
# axiom checks on probe states


def _diff(a: dict, b: dict) -> dict:
    return add_into(dict(a), b, -ONE)


def _series_diff(a: dict, b: dict, floor: int) -> dict:
    out = {}
    for k in set(a) | set(b):
        d = prune(_diff(a.get(k, {}), b.get(k, {})), floor)
        if d:
            out[k] = d
    return out


def v1_failures(V: VacuumQVA, states, floor: int):
    bad = []
    for w in states:
        res = V.vertex({(): ONE}, w, -3, 3, floor)
        if _series_diff(res, {0: prune(dict(w), floor)}, floor):
            bad.append(w)
    return bad


def v2_failures(V: VacuumQVA, states, floor: int, p_max: int = 2):
    """Y(v, z) vac is Taylor with constant term v, and equals e^{zD} v."""
    bad = []
    for v in states:
        res = V.vertex(v, {(): ONE}, -3, p_max, floor)
        expect = {p: prune(s, floor) for p, s in V.exp_translation(v, p_max).items()}
        if _series_diff(res, expect, floor):
            bad.append(v)
    return bad


def d2_failures(V: VacuumQVA, sources, targets, floor: int, p_lo: int, p_hi: int):
    """d/dz Y(v, z) w = D Y(v, z) w - Y(v, z) D w, compared modulo degree < floor."""
    bad = []
    inner = floor + min(p_lo, 0)
    for v in sources:
        for w in targets:
            Yw = V.vertex(v, w, p_lo, p_hi + 1, inner)
            lhs = {}
            for p, st in Yw.items():
                if p - 1 >= p_lo and p - 1 <= p_hi and p != 0:
                    lhs[p - 1] = {m: c * p for m, c in st.items()}
            DYw = {p: V.translation(st) for p, st in Yw.items() if p_lo <= p <= p_hi}
            YDw = V.vertex(v, V.translation(w), p_lo, p_hi, floor)
            rhs = {}
            for p in set(DYw) | set(YDw):
                rhs[p] = _diff(DYw.get(p, {}), YDw.get(p, {}))
            if _series_diff(lhs, rhs, floor):
                bad.append((v, w))
    return bad


def sloc_failures(V: VacuumQVA, v: dict, w: dict, u: dict, floor: int, p_lo: int, p_hi: int, q_hi: int):
    """S-commutativity for central v, u, compared on z1^p z2^q modulo degree < floor.

    LHS = Y(z1)(1 (x) Y(z2))(S(z1 - z2)(v (x) w) (x) u), with (z1 - z2)^k
    expanded in powers of z2; RHS = Y(w, z2) Y(v, z1) u.
    """
    Y = V.Y
    D = floor
    inner = D + min(p_lo, 0)
    z_lo = D + min(p_lo, 0) - 1
    S = s_map(Y, v, w, z_lo)
    lhs = {}
    cache = {}
    for k, tens in S.items():
        for (ma, mb), c in tens.items():
            key = mb
            if key not in cache:
                cache[key] = V.vertex({mb: ONE}, u, 0, q_hi, inner)
            yb = cache[key]
            for qp, ystate in yb.items():
                ya = V.vertex({ma: ONE}, ystate, p_lo, -D, D)
                for pp, st in ya.items():
                    # (z1 - z2)^k = sum_l binom(k, l) z1^(k-l) (-z2)^l
                    for l in range(0, q_hi - qp + 1):
                        coef = binom(k, l) * (-1) ** l
                        if coef == 0:
                            continue
                        p, q = pp + k - l, qp + l
                        if p_lo <= p <= p_hi:
                            lhs[(p, q)] = add_into(lhs.get((p, q), {}), st, c * coef)
    rhs = {}
    inner_r = V.vertex(v, u, 0, p_hi, D)
    for p, st in inner_r.items():
        part = V.vertex(w, st, 0, q_hi, D)
        for q, s2 in part.items():
            rhs[(p, q)] = add_into(rhs.get((p, q), {}), s2)
    return _series_diff(lhs, rhs, D)


def braided_locality_failures(V: VacuumQVA, v: dict, w: dict, h_order: int, K: int, p_hi: int, q_hi: int, smap=None):
    """(z1 - z2)^K times both sides of S-locality applied to the vacuum, modulo h^h_order.

    LHS = Y(z1)(1 (x) Y(z2))(S(z1 - z2)(v (x) w) (x) vac), expanded in
    nonnegative powers of z2; RHS = Y(w, z2) Y(v, z1) vac.  For K at least
    the pole order both products are Taylor in z1, z2.  Since z carries the
    same degree as h, the h^k part of the z1^p z2^q coefficient is the
    degree deg v + deg w - p - q + K - k slice, so each coefficient is
    compared above its own floor.  S(z)(v (x) w) never exceeds degree
    deg v + deg w.
    """
    smap = smap or s_map
    Y = V.Y
    dv, dw = state_degree(v) or 0, state_degree(w) or 0
    top = dv + dw + K - h_order + 1

    def floor_at(p, q):
        return top - p - q

    D = floor_at(p_hi, q_hi)
    z_lo = min(D - dv - dw - K, -1)
    lhs = {}
    taylor = {}
    for k, tens in smap(Y, v, w, z_lo).items():
        e = k + K
        for (ma, mb), c in tens.items():
            if mb not in taylor:
                taylor[mb] = V.exp_translation({mb: ONE}, q_hi)
            for qp, y in taylor[mb].items():
                for l in range(0, q_hi - qp + 1):
                    coef = binom(e, l) * (-1) ** l
                    if coef == 0:
                        continue
                    q = qp + l
                    # z1 power p = p' + e - l
                    part = V.vertex({ma: ONE}, y, l - e, p_hi - e + l, D)
                    for pp, st in part.items():
                        p = pp + e - l
                        if 0 <= p <= p_hi:
                            lhs[(p, q)] = add_into(lhs.get((p, q), {}), st, c * coef)
    rhs = {}
    for pp, x in V.exp_translation(v, p_hi + K).items():
        part = V.vertex(w, x, -K, q_hi, D)
        for qp, st in part.items():
            for l in range(0, K + 1):
                p, q = pp + K - l, qp + l
                coef = binom(K, l) * (-1) ** l
                if coef and 0 <= p <= p_hi and 0 <= q <= q_hi:
                    rhs[(p, q)] = add_into(rhs.get((p, q), {}), st, coef)
    out = {}
    for key in set(lhs) | set(rhs):
        d = prune(_diff(lhs.get(key, {}), rhs.get(key, {})), floor_at(*key))
        if d:
            out[key] = d
    return out


def s1_failures(V: VacuumQVA, v: dict, w: dict, z_lo: int) -> dict:
    """S(z)(Dv (x) w) = (D (x) 1) S(z)(v (x) w) + d/dz S(z)(v (x) w) for powers >= z_lo."""
    Y = V.Y
    lhs = s_map(Y, V.translation(v), w, z_lo - 1)
    base = s_map(Y, v, w, z_lo - 1)
    rhs = {}
    for k, tens in base.items():
        moved = {}
        for (ma, mb), c in tens.items():
            for ma2, c2 in V.translation({ma: ONE}).items():
                moved[(ma2, mb)] = moved.get((ma2, mb), 0) + c * c2
        rhs[k] = add_into(rhs.get(k, {}), {m: x for m, x in moved.items() if x})
        if k:
            rhs[k - 1] = add_into(rhs.get(k - 1, {}), tens, Q(k))
    out = {}
    for k in set(lhs) | set(rhs):
        if k < z_lo:
            continue
        d = _diff(lhs.get(k, {}), rhs.get(k, {}))
        if d:
            out[k] = d
    return out


def locality_witness(V: VacuumQVA, v: dict, w: dict, h_order: int, p_hi: int = 1, q_hi: int = 1, l_max: int = 6, smap=None):
    """Smallest pole-clearing power l <= l_max for which braided locality holds, or None."""
    for l in range(0, l_max + 1):
        if not braided_locality_failures(V, v, w, h_order, l, p_hi, q_hi, smap):
            return l
    return None


def probe_basket(Y: DoubleYangian) -> dict:
    """Single and double T+-excitations of the vacuum used as axiom probes."""
    one = lambda *g: {tuple(g): ONE}
    N = Y.N
    basket = {"vac": {(): ONE}}
    basket["t11(-1)"] = one(gen(1, 1, -1))
    basket["t11(-2)"] = one(gen(1, 1, -2))
    if N >= 2:
        basket["t12(-1)"] = one(gen(1, 2, -1))
        basket["t21(-1)"] = one(gen(2, 1, -1))
        basket["t12(-1)t21(-1)"] = Y.normal_form((gen(1, 2, -1), gen(2, 1, -1)))
        basket["t11(-1)t22(-1)"] = Y.normal_form((gen(1, 1, -1), gen(2, 2, -1)))
    else:
        basket["t11(-1)^2"] = Y.normal_form((gen(1, 1, -1), gen(1, 1, -1)))
    return basket


def flip_map(Y, v, w, z_lo):
    """The trivial braiding v (x) w, for negative controls."""
    return {0: tensor_of(v, w)}


def strong_associativity_failures(V: VacuumQVA, v: dict, w: dict, u: dict, floor: int, a_hi: int, b_hi: int):
    """Y(v, z0 + z2) Y(w, z2) u = Y(Y(v, z0) w, z2) u for central w, u.

    Both sides are Taylor series; coefficients z0^a z2^b with a <= a_hi,
    b <= b_hi are compared modulo degree < floor.  The left side is
    expanded in nonnegative powers of z2.
    """
    D = floor
    lhs = {}
    inner = V.vertex(w, u, 0, b_hi, D + min(0, -a_hi - b_hi) - 1)
    for q, y in inner.items():
        part = V.vertex(v, y, -a_hi - b_hi - 1, a_hi + b_hi, D)
        for p, st in part.items():
            # (z0 + z2)^p = sum_k binom(p, k) z0^(p-k) z2^k
            for k in range(0, b_hi - q + 1):
                coef = binom(p, k)
                a, b = p - k, q + k
                if coef and 0 <= b <= b_hi and a <= a_hi:
                    lhs[(a, b)] = add_into(lhs.get((a, b), {}), st, coef)
    rhs = {}
    first = V.vertex(v, w, -a_hi - 1, a_hi, D - b_hi)
    for a, x in first.items():
        part = V.vertex(x, u, -1, b_hi, D)
        for b, st in part.items():
            rhs[(a, b)] = add_into(rhs.get((a, b), {}), st)
    return _series_diff(lhs, rhs, D)


def center_invariant_failures(Y: DoubleYangian, x: dict, floor: int, s_max: int):
    """Yangian generators not annihilating x (the vacuum-module form of centrality)."""
    bad = []
    for g in probe_generators(Y.N, s_max, dual=False):
        f = floor + g.degree
        if prune(Y.act_gen(g, x, f), f):
            bad.append(g)
    return bad


def s_product_closure_failures(V: VacuumQVA, v: dict, w: dict, floor: int, p_hi: int, s_max: int):
    """For central v, w: Y(v, z) w is Taylor and each coefficient is invariant."""
    res = V.vertex(v, w, -3, p_hi, floor)
    bad = [("negative power", p) for p in res if p < 0]
    for p, st in res.items():
        if p >= 0:
            if center_invariant_failures(V.Y, st, floor, s_max):
                bad.append(("not central", p))
    return bad


def noncommutative_center_witness(N: int = 2):
    """[t_12^(-1), t_21^(-1)] in the dual Yangian, nonzero for N >= 2."""
    if N < 2:
        raise ValueError("the witness needs N >= 2")
    Y = DoubleYangian(N, 0)
    a = {(gen(1, 2, -1),): ONE}
    b = {(gen(2, 1, -1),): ONE}
    return Y.commutator(a, b)
