"""The double Yangian of gl_N at a fixed level and its vacuum module.

Generators are ``GenIndex(fam, i, j, r)`` with 1-based ``i, j`` and a signed
``r``: ``r > 0`` is the Yangian generator t_ij^(r) (``fam = 1``) and
``r < 0`` the dual generator t_ij^(r) (``fam = 0``).  Tuples sort as
(family, i, j, r), which is exactly the PBW order: dual before Yangian,
then lexicographic in (i, j), then ascending r.

Elements are dicts from sorted generator tuples to rationals.  Products are
normal ordered by insertion.  Yangian/Yangian and dual/dual swaps use the
finite quadratic relations.  A Yangian generator passes a dual one through
the mixed relation: expanding it in ``u^-1`` and ``v`` turns
t_ij^(r) t_kl^(-s) into a finite sum of (dual or 1)(Yangian or 1) products.

The filtration degree is ``r - 1`` for t^(r) and ``r`` for t^(r), r < 0.
Every routine accepts an optional ``floor``: terms of degree below it are
dropped along the way.  Products never raise the degree beyond the sum of
the factors' degrees, so the kept part is exact.
"""

from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple

from .envelope import add_into, gl_envelope
from .scalars import ONE, Q, VarOrder, as_q, g_of


class GenIndex(NamedTuple):
    fam: int
    i: int
    j: int
    r: int

    @property
    def degree(self):
        return self.r - 1 if self.r > 0 else self.r

    def __repr__(self):
        return f"t{self.i}{self.j}({self.r})"


def gen(i, j, r) -> GenIndex:
    if r == 0:
        raise ValueError("generators have r != 0; t^(0) is the identity")
    return GenIndex(1 if r > 0 else 0, i, j, r)


def mono_degree(mono) -> int:
    return sum(g.degree for g in mono)


def max_degree(elem: dict):
    return max((mono_degree(m) for m in elem), default=None)


def prune(elem: dict, floor):
    if floor is None:
        return elem
    return {m: c for m, c in elem.items() if mono_degree(m) >= floor}


def _sub(floor, d):
    return None if floor is None else floor - d


class MixedRuleTable:
    """Coefficients of the mixed relation t(u) t+(v) = sum_k F_k(u, v) (...).

    With x_pm = u - v +- c/2 and rho = g(x_-)/g(x_+) the relation solves to

        t_ij(u) t+_kl(v) = F1 t+_kl t_ij + F2 t+_kj t_il + F3 t+_il t_kj + F4 t+_ij t_kl

    with F1 = rho/(1 - x_+^-2), F2 = -F1/x_-, F3 = F1/x_+, F4 = -F1/(x_+ x_-).
    Series live in (u desc, v asc); ``coeff(k, a, b)`` is [u^-a v^b] F_k.
    """

    def __init__(self, N: int, level):
        self.N = N
        self.level = as_q(level)
        self.depth = -1
        self._tables = None

    def _build(self, depth):
        order = VarOrder([("u", "desc"), ("v", "asc")])
        u, v = order.var("u"), order.var("v")
        half = self.level / 2
        xp = (u - v + half).truncate(u=depth + 2)
        xm = (u - v - half).truncate(u=depth + 2)
        K = depth + 2
        rho = g_of(self.N, xm, K) * g_of(self.N, xp, K).invert()
        xpi, xmi = xp.invert(), xm.invert()
        F1 = rho * (order.const() - xpi * xpi).invert()
        F2 = -(F1 * xmi)
        F3 = F1 * xpi
        F4 = -(F1 * xpi * xmi)
        self._tables = []
        for F in (F1, F2, F3, F4):
            F = F.truncate(u=depth)
            table = {}
            for (eu, ev), c in F.items():
                table[(-eu, ev)] = Q(c)
            self._tables.append(table)
        self.depth = depth

    def coeff(self, k: int, a: int, b: int):
        if a > self.depth:
            self._build(max(a, 2 * self.depth, 6))
        return self._tables[k].get((a, b), 0)


class DoubleYangian:
    """Normal-form engine for DY(gl_N) at level c, with its vacuum module."""

    def __init__(self, N: int, level=0):
        self.N = N
        self.level = as_q(level)
        self.rules = MixedRuleTable(N, self.level)
        self._memo = {}
        self._vac_memo = {}
        self._mixed = {}

    # ---- quadratic relations as ordered words
    def _swap_words(self, g: GenIndex, x: GenIndex):
        """g x expressed as a dict of words (tuples of generators) for g > x."""
        if g.fam == x.fam and (g.i, g.j) == (x.i, x.j):
            return {(x, g): ONE}
        if g.fam == 1 and x.fam == 1:
            out = {(x, g): ONE}
            _add_words(out, _yangian_bracket(g, x))
            return out
        if g.fam == 0 and x.fam == 0:
            out = {(x, g): ONE}
            _add_words(out, _dual_bracket(g, x))
            return out
        return self._mixed_words(g, x)

    def _mixed_words(self, g: GenIndex, x: GenIndex):
        key = (g, x)
        hit = self._mixed.get(key)
        if hit is not None:
            return hit
        i, j, r = g.i, g.j, g.r
        k, l, s = x.i, x.j, -x.r
        out = {}
        if k == l and s == 1:
            out[(g,)] = ONE
        triples = ((0, (k, l), (i, j)), (1, (k, j), (i, l)), (2, (i, l), (k, j)), (3, (i, j), (k, l)))
        for F, (a, b), (cc, d) in triples:
            for p in range(0, r + 1):
                for q in range(0, s):
                    coeff = self.rules.coeff(F, r - p, s - 1 - q)
                    if coeff == 0:
                        continue
                    left = _dual_series_coeff(a, b, q)
                    right = _yangian_series_coeff(cc, d, p)
                    for wl, cl in left.items():
                        for wr, cr in right.items():
                            w = wl + wr
                            out[w] = out.get(w, 0) - coeff * cl * cr
        out = {w: c for w, c in out.items() if c != 0}
        self._mixed[key] = out
        return out

    # ---- algebra
    def gen_times_mono(self, g: GenIndex, mono: tuple, floor=None) -> dict:
        """g * mono in normal order, dropping terms of degree below ``floor``."""
        if floor is not None and g.degree + mono_degree(mono) < floor:
            return {}
        if not mono or g <= mono[0]:
            return {(g,) + mono: ONE}
        key = (g, mono, floor)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        x, rest = mono[0], mono[1:]
        out = {}
        for word, c in self._swap_words(g, x).items():
            add_into(out, self._apply_word(word, rest, floor), c)
        self._memo[key] = out
        return out

    def _apply_word(self, word, mono, floor, vacuum=False):
        elem = {mono: ONE}
        left = mono_degree(word)
        for g in reversed(word):
            left -= g.degree
            if vacuum:
                elem = self.act_gen(g, elem, _sub(floor, left))
            else:
                elem = self.mul_gen(g, elem, _sub(floor, left))
            if not elem:
                break
        return elem

    def mul_gen(self, g: GenIndex, elem: dict, floor=None) -> dict:
        out = {}
        for mono, c in elem.items():
            add_into(out, self.gen_times_mono(g, mono, floor), c)
        return out

    def mul(self, a: dict, b: dict, floor=None) -> dict:
        out = {}
        bdeg = max_degree(b)
        if bdeg is None:
            return out
        for mono, c in a.items():
            add_into(out, self._apply_elem_word(mono, b, floor), c)
        return out

    def _apply_elem_word(self, word, elem, floor, vacuum=False):
        left = mono_degree(word)
        for g in reversed(word):
            left -= g.degree
            f = _sub(floor, left)
            elem = self.act_gen(g, elem, f) if vacuum else self.mul_gen(g, elem, f)
            if not elem:
                break
        return elem

    def normal_form(self, word, floor=None) -> dict:
        """Normal form of an arbitrary ordered product of generators."""
        return self._apply_elem_word(tuple(word), {(): ONE}, floor)

    def commutator(self, a: dict, b: dict, floor=None) -> dict:
        return add_into(self.mul(a, b, floor), self.mul(b, a, floor), -ONE)

    # ---- vacuum module: states are dicts of dual monomials applied to vac
    def vac_gen_times_mono(self, g: GenIndex, mono: tuple, floor=None) -> dict:
        """g applied to the state mono * vac."""
        if floor is not None and g.degree + mono_degree(mono) < floor:
            return {}
        if g.fam == 0:
            return self.gen_times_mono(g, mono, floor)
        if not mono:
            return {}
        key = (g, mono, floor)
        hit = self._vac_memo.get(key)
        if hit is not None:
            return hit
        x, rest = mono[0], mono[1:]
        out = {}
        for word, c in self._mixed_words(g, x).items():
            add_into(out, self._apply_word(word, rest, floor, vacuum=True), c)
        self._vac_memo[key] = out
        return out

    def act_gen(self, g: GenIndex, state: dict, floor=None) -> dict:
        out = {}
        for mono, c in state.items():
            add_into(out, self.vac_gen_times_mono(g, mono, floor), c)
        return out

    def act(self, x: dict, state: dict, floor=None) -> dict:
        """An algebra element x applied to a vacuum-module state."""
        out = {}
        for mono, c in x.items():
            add_into(out, self._apply_elem_word(mono, state, floor, vacuum=True), c)
        return out

    def act_generator(self, state: dict, i: int, j: int, r: int, floor=None) -> dict:
        if r <= 0:
            raise ValueError("act_generator expects a Yangian generator (r > 0)")
        return self.act_gen(gen(i, j, r), state, floor)


def _add_words(out, words):
    for w, c in words.items():
        v = out.get(w, 0) + c
        if v == 0:
            out.pop(w, None)
        else:
            out[w] = v


def _yangian_series_coeff(i, j, p):
    """[u^-p] t_ij(u) as a dict of words."""
    if p == 0:
        return {(): ONE} if i == j else {}
    return {(gen(i, j, p),): ONE}


def _dual_series_coeff(i, j, q):
    """[v^q] t+_ij(v) as a dict of words."""
    out = {(gen(i, j, -q - 1),): -ONE}
    if q == 0 and i == j:
        out[()] = ONE
    return out


def _word_or_delta(i, j, r):
    if r == 0:
        return {(): ONE} if i == j else {}
    return {(gen(i, j, r),): ONE}


def _yangian_bracket(g, x):
    """[t_ij^(r), t_kl^(s)] as words whose quadratic terms are PBW ordered.

    The RTT relation gives two equivalent expansions, with quadratic terms
    t_kj t_il or t_il t_kj.  For g > x the first is ordered when i > k and
    the second when i = k.
    """
    i, j, r = g.i, g.j, g.r
    k, l, s = x.i, x.j, x.r
    out = {}
    for a in range(1, min(r, s) + 1):
        if i > k:
            pairs = ((1, (k, j, a - 1), (i, l, r + s - a)), (-1, (k, j, r + s - a), (i, l, a - 1)))
        else:
            pairs = ((1, (i, l, r + s - a), (k, j, a - 1)), (-1, (i, l, a - 1), (k, j, r + s - a)))
        for sign, first, second in pairs:
            for w1, c1 in _word_or_delta(*first).items():
                for w2, c2 in _word_or_delta(*second).items():
                    _add_words(out, {w1 + w2: sign * c1 * c2})
    return out


def _dual_bracket(g, x):
    """[t_ij^(-r), t_kl^(-s)] as words (r, s > 0), ordered as in the Yangian case.

    Normal ordering with the anti-ordered expansion would never terminate:
    its quadratic terms raise the total index and swap back forever.
    """
    i, j, r = g.i, g.j, -g.r
    k, l, s = x.i, x.j, -x.r
    out = {}
    if k == j:
        _add_words(out, {(gen(i, l, -r - s),): ONE})
    if i == l:
        _add_words(out, {(gen(k, j, -r - s),): -ONE})
    for a in range(1, min(r, s) + 1):
        if i > k:
            _add_words(out, {(gen(k, j, -r - s + a - 1), gen(i, l, -a)): ONE})
            _add_words(out, {(gen(k, j, -a), gen(i, l, -r - s + a - 1)): -ONE})
        else:
            _add_words(out, {(gen(i, l, -a), gen(k, j, -r - s + a - 1)): ONE})
            _add_words(out, {(gen(i, l, -r - s + a - 1), gen(k, j, -a)): -ONE})
    return out


# ----------------------------------------------------------------------
# element helpers


def gen_element(i, j, r) -> dict:
    return {(gen(i, j, r),): ONE}


def lin(*pairs) -> dict:
    """Linear combination of elements: lin((c1, x1), (c2, x2), ...)."""
    out = {}
    for c, x in pairs:
        add_into(out, x, Q(c))
    return out


def is_dual_only(elem: dict) -> bool:
    return all(g.fam == 0 for m in elem for g in m)


def format_element(elem: dict) -> str:
    if not elem:
        return "0"
    parts = []
    for m in sorted(elem):
        word = "*".join(repr(g) for g in m) or "1"
        parts.append(f"({elem[m]})*{word}")
    return " + ".join(parts)


# ----------------------------------------------------------------------
# dense truncated state spaces and the R-matrix route to the action


def dual_t_plus_coeff(i, j, q) -> dict:
    """[v^q] t+_ij(v) as an element (1-based indices)."""
    return {m: c for m, c in _dual_series_coeff(i, j, q).items()}


def t_plus_product_state(Y: DoubleYangian, rows, cols, powers) -> dict:
    """[v_1^b_1 ... v_p^b_p] of (T+_1(v_1)...T+_p(v_p))_{rows, cols} vac."""
    state = {(): ONE}
    for a, b, q in reversed(list(zip(rows, cols, powers))):
        state = Y.act(dual_t_plus_coeff(a, b, q), state)
    return state


def act_T_conjugation(Y: DoubleYangian, p: int, r_max: int, v_order: int, K=None):
    """Method A: T_0(z) T+_1(v_1)...T+_p(v_p) vac through R-matrix conjugation.

    Uses T_0(z) T+_a(v) = Rbar_0a(z - v + c/2)^-1 T+_a(v) T_0(z) Rbar_0a(z - v - c/2)
    leg by leg, with T_0(z) vac = vac, which gives

        prod_a Rbar_0a(+)^-1 T+_a(v_a)  *  prod_{a descending} Rbar_0a(-).
  Returns ``coeff(r, i, j, rows, cols,
    powers)`` giving the state that equals t_ij^(r) applied to
    ``t_plus_product_state(rows, cols, powers)``.  Indices are 1-based.
    """
    from .tensor import TensorOp, rbar, series_inverse

    N = Y.N
    names = [("z", "desc")] + [(f"v{a}", "asc") for a in range(1, p + 1)]
    order = VarOrder(names)
    K = K if K is not None else r_max + 2
    m = p + 1
    cut = {"z": r_max}
    cut.update({f"v{a}": v_order for a in range(1, p + 1)})
    z = order.var("z")
    half = Y.level / 2
    one = order.const()
    left = TensorOp.identity(N, m, one)
    right = TensorOp.identity(N, m, one)
    for a in range(1, p + 1):
        v = order.var(f"v{a}")
        plus = (z - v + half).truncate(z=r_max + 2)
        minus = (z - v - half).truncate(z=r_max + 2)
        Rp = rbar(N, plus, 1, a + 1, m, K).map(lambda s: s.truncate(**cut))
        Rm = rbar(N, minus, 1, a + 1, m, K).map(lambda s: s.truncate(**cut))
        Rp_inv = series_inverse(Rp)
        # T+_a(v_a) with entries that are series in v_a with element coefficients
        entries = {}
        for i in range(N):
            for j in range(N):
                terms = {}
                for q in range(v_order + 1):
                    exps = [0] * (p + 1)
                    exps[a] = q
                    c = dual_t_plus_coeff(i + 1, j + 1, q)
                    terms[tuple(exps)] = _Elem(Y, c)
                series = _series_from_terms(order, terms, cut)
                entries[((i,), (j,))] = series
        Tp = TensorOp(N, 1, entries)
        from .tensor import leg_embed

        Tp = leg_embed(Tp, [a + 1], m, one=_series_one(order, Y, cut))
        # the scalar R-matrices on legs (0, a) pass the T+ of other legs
        left = (left * Rp_inv * Tp).map(lambda s: s.truncate(**cut))
        right = Rm * right
    total = (left * right).map(lambda s: s.truncate(**cut))

    def coeff(r, i, j, rows, cols, powers):
        row = (i - 1,) + tuple(x - 1 for x in rows)
        col = (j - 1,) + tuple(x - 1 for x in cols)
        entry = total.entry(row, col)
        if entry == 0:
            return {}
        val = entry.coeff((-r,) + tuple(powers), default=None)
        if val is None:
            return {}
        if isinstance(val, _Elem):
            return val.terms
        return {(): Q(val)} if val != 0 else {}

    return coeff


class _Elem:
    """A thin ring wrapper so algebra elements can sit inside series."""

    __slots__ = ("Y", "terms")

    def __init__(self, Y, terms):
        self.Y = Y
        self.terms = terms

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        return _Elem(self.Y, add_into(dict(self.terms), _terms(other)))

    __radd__ = __add__

    def __neg__(self):
        return _Elem(self.Y, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return _Elem(self.Y, add_into(dict(self.terms), _terms(other), -ONE))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, _Elem):
            return _Elem(self.Y, self.Y.mul(self.terms, other.terms))
        return _Elem(self.Y, {m: c * other for m, c in self.terms.items() if c * other != 0})

    def __rmul__(self, other):
        return _Elem(self.Y, {m: other * c for m, c in self.terms.items() if other * c != 0})

    def __eq__(self, other):
        return not add_into(dict(self.terms), _terms(other), -ONE)

    __hash__ = None

    def __repr__(self):
        return format_element(self.terms)


def _terms(x):
    if isinstance(x, _Elem):
        return x.terms
    x = Q(x)
    return {(): x} if x != 0 else {}


def _series_from_terms(order, terms, cut):
    from .scalars import TruncSeries

    n = len(order)
    oriented = {order_exps(order, e): c for e, c in terms.items()}
    prec = tuple(cut.get(name) for name in order.names)
    return TruncSeries(order, oriented, (0,) * n, prec)


def order_exps(order, exps):
    return tuple(d * e for d, e in zip(order.dirs, exps))


def _series_one(order, Y, cut):
    return _series_from_terms(order, {(0,) * len(order): _Elem(Y, {(): ONE})}, cut)


# ----------------------------------------------------------------------
# evaluation homomorphism at level zero


def evaluation_hom(x: dict, a, N: int) -> dict:
    """ev_a: t_ij^(r) -> E_ij a^(r-1), t_ij^(-r) -> E_ij a^(-r), into U(gl_N).

    Only meaningful at level zero; the result is a normal-ordered dict over
    monomials in the keys (i, j).
    """
    a = as_q(a)
    if a == 0:
        raise ValueError("the evaluation parameter must be nonzero")
    env = _gl_env(N)
    out = {}
    for mono, c in x.items():
        scale = Q(c)
        keys = []
        for g in mono:
            scale *= a ** (g.r - 1) if g.r > 0 else a ** g.r
            keys.append((g.i, g.j))
        add_into(out, env.word(keys), scale)
    return out


@lru_cache(maxsize=None)
def _gl_env(N):
    return gl_envelope()


def gl_envelope_for(N):
    return _gl_env(N)


def loop_key(g: GenIndex):
    """Loop index (s, i, j) of the graded image: t^(r) -> E[r-1], t^(-r) -> E[-r]."""
    return (g.degree, g.i, g.j)


def loop_generator(key) -> GenIndex:
    s, i, j = key
    return gen(i, j, s + 1 if s >= 0 else s)


def graded_bracket_failures(Y: DoubleYangian, pairs, level=None) -> list:
    """Pairs whose commutator disagrees with the affine bracket at K = level in top degree.

    ``level`` defaults to the level of ``Y``; passing another value gives a
    negative control.

    Also flags any commutator with terms above the expected degree, which
    would break the filtration.
    """
    from .envelope import affine_bracket

    bracket = affine_bracket(Y.N, Y.level if level is None else level)
    bad = []
    for g, x in pairs:
        d = g.degree + x.degree
        comm = Y.commutator({(g,): ONE}, {(x,): ONE})
        top = {m: c for m, c in comm.items() if mono_degree(m) == d}
        above = [m for m in comm if mono_degree(m) > d]
        expect = {}
        for key, c in bracket(loop_key(g), loop_key(x)).items():
            mono = () if key is None else (loop_generator(key),)
            if mono_degree(mono) == d:
                expect[mono] = expect.get(mono, 0) + c
        expect = {m: c for m, c in expect.items() if c}
        if above or top != expect:
            bad.append((g, x))
    return bad
