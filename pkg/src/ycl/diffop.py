"""Shift and differential operators with coefficients in a filtered algebra.

Coefficients are polynomials in ``u`` whose coefficients are elements of a
filtered algebra, known modulo the span of monomials of degree below a
fixed ``floor``.  For the dual Yangian and for U(t^-1 gl_N[t^-1]) every
generator has negative degree, so that span is a two-sided ideal and the
quotient is finite dimensional in each u-degree.  The generating series
used here have the property that the coefficient of ``u^n`` has degree at
most ``-n``, so modulo the floor they are polynomials and the substitution
``u -> u - 1`` is exact.

Two operator flavours share one normal form ``sum_k a_k(u) X^k``:

* ``shift``: X is e^{-step d/du}, with X a(u) = a(u - step) X;
* ``deriv``: X is d/du, with X a(u) = a(u) X + a'(u).
"""

from __future__ import annotations

from itertools import product

from .envelope import add_into, loop_minus_envelope
from .scalars import ONE, Q, binom


# ----------------------------------------------------------------------
# filtered algebras


class DualAlgebra:
    """The dual half of a DoubleYangian, generators t_ij^(-r) of degree -r."""

    def __init__(self, Y):
        self.Y = Y
        self.N = Y.N

    def mul(self, a, b, floor):
        return self.Y.mul(a, b, floor)

    @staticmethod
    def degree(mono):
        return sum(g.degree for g in mono)


class ClassicalAlgebra:
    """U(t^-1 gl_N[t^-1]) with keys (s, i, j) for E_ij[s], graded by s."""

    def __init__(self, N):
        self.N = N
        self.env = loop_minus_envelope(N)

    def mul(self, a, b, floor):
        out = self.env.mul(a, b)
        return prune_elem(out, floor, self.degree)

    @staticmethod
    def degree(mono):
        return sum(k[0] for k in mono)


def prune_elem(elem, floor, degree):
    if floor is None:
        return elem
    return {m: c for m, c in elem.items() if degree(m) >= floor}


# ----------------------------------------------------------------------
# polynomials in u with algebra coefficients


class ElemPoly:
    """sum_n u^n x_n with each x_n an algebra element modulo degree < floor."""

    __slots__ = ("alg", "floor", "coeffs")

    def __init__(self, alg, floor, coeffs=None):
        self.alg = alg
        self.floor = floor
        self.coeffs = {}
        for n, x in (coeffs or {}).items():
            x = prune_elem(x, floor, alg.degree)
            if x:
                self.coeffs[n] = x

    @classmethod
    def scalar(cls, alg, floor, c=ONE):
        return cls(alg, floor, {0: {(): Q(c)}} if c else {})

    def _like(self, coeffs):
        return ElemPoly(self.alg, self.floor, coeffs)

    def is_zero(self):
        return not self.coeffs

    def coeff(self, n):
        return self.coeffs.get(n, {})

    def __add__(self, other):
        out = {n: dict(x) for n, x in self.coeffs.items()}
        for n, x in _poly(self, other).coeffs.items():
            out[n] = add_into(out.get(n, {}), x)
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({n: {m: -c for m, c in x.items()} for n, x in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-_poly(self, other))

    def __rsub__(self, other):
        return _poly(self, other) - self

    def scale(self, c):
        c = Q(c)
        if c == 0:
            return self._like({})
        return self._like({n: {m: v * c for m, v in x.items()} for n, x in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, ElemPoly):
            return self.scale(other)
        out = {}
        for n, x in self.coeffs.items():
            for k, y in other.coeffs.items():
                xy = self.alg.mul(x, y, self.floor)
                if xy:
                    out[n + k] = add_into(out.get(n + k, {}), xy)
        return self._like(out)

    def __rmul__(self, other):
        return self.scale(other)

    def shift(self, a):
        """Substitute u -> u + a (exact: the polynomial is finite)."""
        a = Q(a)
        if a == 0:
            return self
        out = {}
        for n, x in self.coeffs.items():
            for k in range(n + 1):
                c = binom(n, k) * a ** (n - k)
                if c:
                    out[k] = add_into(out.get(k, {}), x, c)
        return self._like(out)

    def derivative(self):
        out = {}
        for n, x in self.coeffs.items():
            if n:
                out[n - 1] = {m: c * n for m, c in x.items()}
        return self._like(out)

    def __eq__(self, other):
        return (self - _poly(self, other)).is_zero()

    __hash__ = None

    def __repr__(self):
        return " + ".join(f"u^{n}*[{_fmt(x)}]" for n, x in sorted(self.coeffs.items())) or "0"


def _poly(ref, x):
    if isinstance(x, ElemPoly):
        return x
    return ElemPoly.scalar(ref.alg, ref.floor, x)


def _fmt(x):
    return " + ".join(f"{c}*{m}" for m, c in sorted(x.items(), key=repr))


# ----------------------------------------------------------------------
# operators sum_k a_k(u) X^k


class ShiftOperator:
    """Finite sum of ``a_k(u) X^k`` in normal form (operator symbols on the right)."""

    __slots__ = ("kind", "step", "terms", "alg", "floor")

    def __init__(self, alg, floor, terms=None, kind="shift", step=1):
        if kind not in ("shift", "deriv"):
            raise ValueError(f"unknown operator kind {kind!r}")
        self.alg = alg
        self.floor = floor
        self.kind = kind
        self.step = Q(step)
        self.terms = {k: a for k, a in (terms or {}).items() if not a.is_zero()}

    def _like(self, terms):
        return ShiftOperator(self.alg, self.floor, terms, self.kind, self.step)

    def _check(self, other):
        if not isinstance(other, ShiftOperator):
            return self._like({0: _poly(self._zero_poly(), other)})
        if (other.kind, other.step) != (self.kind, self.step):
            raise ValueError("operators of different flavours cannot be combined")
        return other

    def _zero_poly(self):
        return ElemPoly(self.alg, self.floor)

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.terms)
        for k, a in other.terms.items():
            out[k] = out[k] + a if k in out else a
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({k: -a for k, a in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def scale(self, c):
        return self._like({k: a.scale(c) for k, a in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, ShiftOperator):
            return self.scale(other)
        other = self._check(other)
        out = {}
        for k, a in self.terms.items():
            for l, b in other.terms.items():
                if self.kind == "shift":
                    pieces = ((k + l, a * b.shift(-k * self.step)),)
                else:
                    pieces = []
                    deriv = b
                    for j in range(k + 1):
                        pieces.append((k - j + l, (a * deriv).scale(binom(k, j))))
                        deriv = deriv.derivative()
                        if deriv.is_zero():
                            break
                for e, c in pieces:
                    out[e] = out[e] + c if e in out else c
        return self._like(out)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        return (self - self._check(other)).is_zero()

    __hash__ = None

    def constant_term(self):
        """The X-free coefficient a_0(u)."""
        return self.terms.get(0, self._zero_poly())

    def __repr__(self):
        sym = "X" if self.kind == "shift" else "d"
        return " + ".join(f"({a})*{sym}^{k}" for k, a in sorted(self.terms.items())) or "0"


def commutator(a, b):
    return a * b - b * a


# ----------------------------------------------------------------------
# Manin matrices


class ManinMatrix:
    """An N x N matrix of ShiftOperators (1-based entries)."""

    def __init__(self, N, entries):
        self.N = N
        self.entries = entries

    def __getitem__(self, ij):
        return self.entries[ij]

    def __mul__(self, other):
        N = self.N
        out = {}
        for i in range(1, N + 1):
            for j in range(1, N + 1):
                acc = None
                for k in range(1, N + 1):
                    t = self.entries[(i, k)] * other.entries[(k, j)]
                    acc = t if acc is None else acc + t
                out[(i, j)] = acc
        return ManinMatrix(N, out)

    def trace(self):
        acc = self.entries[(1, 1)]
        for i in range(2, self.N + 1):
            acc = acc + self.entries[(i, i)]
        return acc

    def one(self):
        """The identity operator in the same flavour."""
        ref = self.entries[(1, 1)]
        return ref._like({0: ElemPoly.scalar(ref.alg, ref.floor)})

    def zero(self):
        ref = self.entries[(1, 1)]
        return ref._like({})


def t_plus_series(Y, floor):
    """Entries of T+(u) = 1 - sum_r t^(-r) u^(r-1) modulo degree < floor."""
    from .yangian import gen

    alg = DualAlgebra(Y)
    depth = -floor
    out = {}
    for i in range(1, Y.N + 1):
        for j in range(1, Y.N + 1):
            coeffs = {}
            if i == j:
                coeffs[0] = {(): ONE}
            for r in range(1, depth + 1):
                c = coeffs.setdefault(r - 1, {})
                add_into(c, {(gen(i, j, -r),): -ONE})
            out[(i, j)] = ElemPoly(alg, floor, coeffs)
    return out


def e_plus_series(N, floor, alg=None):
    """Entries of E_+(u) = sum_r E[-r] u^(r-1) in U(t^-1 gl_N[t^-1])."""
    alg = alg or ClassicalAlgebra(N)
    out = {}
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            coeffs = {r - 1: {((-r, i, j),): ONE} for r in range(1, -floor + 1)}
            out[(i, j)] = ElemPoly(alg, floor, coeffs)
    return out


def dual_manin_matrix(Y, floor) -> ManinMatrix:
    """M = T+(u) e^{-d/du}."""
    T = t_plus_series(Y, floor)
    alg = DualAlgebra(Y)
    return ManinMatrix(Y.N, {ij: ShiftOperator(alg, floor, {1: a}) for ij, a in T.items()})


def classical_manin_matrix(N, floor, alg=None) -> ManinMatrix:
    """M = d/du + E_+(u)."""
    alg = alg or ClassicalAlgebra(N)
    E = e_plus_series(N, floor, alg)
    one = ElemPoly.scalar(alg, floor)
    entries = {}
    for (i, j), a in E.items():
        terms = {0: a}
        if i == j:
            terms[1] = one
        entries[(i, j)] = ShiftOperator(alg, floor, terms, kind="deriv")
    return ManinMatrix(N, entries)


def projected_trace(M: ManinMatrix, proj, m):
    """tr_{1..m} proj M_1 ... M_m for a TensorOp ``proj`` on m legs (None = identity).

    With proj = sum P[I, J] e_IJ this is sum P[I, J] M_{J1 I1} ... M_{Jm Im}.
    """
    N = M.N
    if m == 0:
        return M.one()
    if proj is None:
        pairs = {(I, I): ONE for I in product(range(N), repeat=m)}
    else:
        pairs = {(I, J): c for (I, J), c in proj.entries.items()}
    cache = {}

    def word(J, I):
        key = (J, I)
        if key not in cache:
            op = M[(J[0] + 1, I[0] + 1)]
            if len(J) > 1:
                op = op * word(J[1:], I[1:])
            cache[key] = op
        return cache[key]

    acc = M.zero()
    for (I, J), c in sorted(pairs.items()):
        acc = acc + word(J, I).scale(c)
    return acc


def cdet_coefficients(M: ManinMatrix, sign=1):
    """[c_0, ..., c_N] with cdet(1 + sign z M) = sum z^m c_m."""
    from .fusion import antisymmetrizer

    out = [M.one()]
    for m in range(1, M.N + 1):
        c = projected_trace(M, antisymmetrizer(m, M.N), m)
        out.append(c.scale(Q(sign) ** m))
    return out


def power_traces(M: ManinMatrix, kmax):
    """[tr M^1, ..., tr M^kmax]."""
    out = []
    P = M
    for k in range(1, kmax + 1):
        if k > 1:
            P = P * M
        out.append(P.trace())
    return out


def _first_difference(lhs, rhs):
    for m, (a, b) in enumerate(zip(lhs, rhs)):
        if not a == b:
            return m
    return None


def newton_check(M: ManinMatrix, m_max: int):
    """Both sides of d/dz cdet(1+zM) = cdet(1+zM) sum_k (-z)^k tr M^(k+1), up to z^m_max."""
    c = cdet_coefficients(M)
    p = power_traces(M, m_max + 1)
    lhs, rhs = [], []
    for m in range(m_max + 1):
        lhs.append(c[m + 1].scale(m + 1) if m + 1 < len(c) else M.zero())
        acc = M.zero()
        for a in range(0, min(m, M.N) + 1):
            k = m - a
            acc = acc + (c[a] * p[k]).scale((-1) ** k)
        rhs.append(acc)
    return {"lhs": lhs, "rhs": rhs, "first_difference": _first_difference(lhs, rhs)}


def macmahon_check(M: ManinMatrix, m_max: int):
    """Both sides of [cdet(1-zM)]^-1 = sum z^m tr H^(m) M_1...M_m, up to z^m_max."""
    from .fusion import symmetrizer

    c = cdet_coefficients(M, sign=-1)
    inv = [M.one()]
    for m in range(1, m_max + 1):
        acc = M.zero()
        for a in range(1, min(m, M.N) + 1):
            acc = acc - c[a] * inv[m - a]
        inv.append(acc)
    sym = [M.one()] + [projected_trace(M, symmetrizer(m, M.N), m) for m in range(1, m_max + 1)]
    return {"lhs": inv, "rhs": sym, "first_difference": _first_difference(inv, sym)}


def manin_witness(M: ManinMatrix):
    """Index quadruples violating [M_ij, M_kl] = [M_kj, M_il] (empty for a Manin matrix)."""
    N = M.N
    bad = []
    for i, j, k, l in product(range(1, N + 1), repeat=4):
        lhs = commutator(M[(i, j)], M[(k, l)])
        rhs = commutator(M[(k, j)], M[(i, l)])
        if not lhs == rhs:
            bad.append((i, j, k, l))
    return bad
