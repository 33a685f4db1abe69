"""Exact scalars: rationals, univariate rational functions, truncated series.

Series live in an ordered list of variables.  Each variable is either
``desc`` (a large variable, expanded in its inverse powers, like ``u`` or
``z``) or ``asc`` (a small variable, expanded in nonnegative powers, like
``v`` or ``h``).  Earlier variables are larger than later ones, so
``1/(z - w)`` under the order ``(z, w)`` means ``z^-1 + w z^-2 + ...``.

Exponents are tracked in *oriented* form: ``f = e`` for an ascending
variable and ``f = -e`` for a descending one.  In oriented form every
variable becomes "small", and the window of a series is a box: per
variable a support ``s`` (every coefficient with ``f < s`` is zero) and a
precision ``p`` (coefficients with ``f > p`` are unknown; ``None`` means
the series is exact in that variable).
"""

from __future__ import annotations

from math import comb

import gmpy2

Q = gmpy2.mpq
ZERO = Q(0)
ONE = Q(1)

ASC = 1
DESC = -1


class TruncationError(ArithmeticError):
    """Raised when a result would depend on coefficients outside a window."""


class SingularSeriesError(ArithmeticError):
    """Raised when inverting a series whose leading term is not a unit."""


def as_q(x):
    """Parse ints, ``"p/q"`` strings and rationals into ``Q``."""
    if isinstance(x, str):
        num, _, den = x.partition("/")
        return Q(int(num), int(den or 1))
    return Q(x)


def is_zero(x):
    probe = getattr(x, "is_zero", None)
    if probe is not None:
        return probe()
    return x == 0


def binom(n, k):
    """Binomial coefficient valid for negative ``n``."""
    if k < 0:
        return 0
    if n >= 0:
        return comb(n, k)
    return (-1) ** k * comb(k - n - 1, k)


# ----------------------------------------------------------------------
# univariate polynomials and rational functions


class Poly:
    """Dense univariate polynomial with rational coefficients, low degree first."""

    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        c = [Q(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def x(cls):
        return cls((0, 1))

    @property
    def degree(self):
        return len(self.c) - 1

    def is_zero(self):
        return not self.c

    def lead(self):
        return self.c[-1]

    def __add__(self, other):
        other = _poly(other)
        n = max(len(self.c), len(other.c))
        a = self.c + (ZERO,) * (n - len(self.c))
        b = other.c + (ZERO,) * (n - len(other.c))
        return Poly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-x for x in self.c)

    def __sub__(self, other):
        return self + (-_poly(other))

    def __rsub__(self, other):
        return _poly(other) - self

    def __mul__(self, other):
        other = _poly(other)
        if not self.c or not other.c:
            return Poly()
        out = [ZERO] * (len(self.c) + len(other.c) - 1)
        for i, x in enumerate(self.c):
            if x:
                for j, y in enumerate(other.c):
                    out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        quo = [ZERO] * max(len(rem) - len(other.c) + 1, 0)
        inv = 1 / other.lead()
        for k in range(len(quo) - 1, -1, -1):
            q = rem[k + other.degree] * inv
            quo[k] = q
            if q:
                for j, y in enumerate(other.c):
                    rem[k + j] -= q * y
        return Poly(quo), Poly(rem)

    def monic(self):
        inv = 1 / self.lead()
        return Poly(x * inv for x in self.c)

    def __call__(self, x):
        acc = ZERO
        for coef in reversed(self.c):
            acc = acc * x + coef
        return acc

    def shift(self, a):
        """Return p(x + a)."""
        out = Poly()
        xa = Poly((a, 1))
        for coef in reversed(self.c):
            out = out * xa + Poly((coef,))
        return out

    def __eq__(self, other):
        return self.c == _poly(other).c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"Poly({[str(x) for x in self.c]})"


def _poly(x):
    return x if isinstance(x, Poly) else Poly((x,))


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic() if not a.is_zero() else a


class RatFunc:
    """Univariate rational function kept in lowest terms with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = _poly(num)
        den = Poly((1,)) if den is None else _poly(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = Poly(), Poly((1,))
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = num.divmod(g)[0]
            den = den.divmod(g)[0]
        lead = den.lead()
        self.num = Poly(x / lead for x in num.c)
        self.den = den.monic()

    @classmethod
    def x(cls):
        return cls(Poly.x())

    def is_zero(self):
        return self.num.is_zero()

    def __add__(self, other):
        other = _rat(other)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-_rat(other))

    def __rsub__(self, other):
        return _rat(other) - self

    def __mul__(self, other):
        other = _rat(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        return self * _rat(other).inverse()

    def __rtruediv__(self, other):
        return _rat(other) * self.inverse()

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole at {x}")
        return self.num(x) / d

    def shift(self, a):
        return RatFunc(self.num.shift(a), self.den.shift(a))

    def __eq__(self, other):
        other = _rat(other)
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFunc({self.num!r} / {self.den!r})"


def _rat(x):
    return x if isinstance(x, RatFunc) else RatFunc(x)


# ----------------------------------------------------------------------
# truncated iterated Laurent series


class VarOrder:
    """Ordered variables, each tagged ``asc`` (small) or ``desc`` (large)."""

    __slots__ = ("names", "dirs", "_index")

    def __init__(self, variables):
        names, dirs = [], []
        for item in variables:
            name, kind = item if isinstance(item, tuple) else (item, "desc")
            if kind not in ("asc", "desc"):
                raise ValueError(f"unknown direction {kind!r}")
            names.append(name)
            dirs.append(ASC if kind == "asc" else DESC)
        if not names:
            raise ValueError("a variable order needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variables in {names}")
        self.names = tuple(names)
        self.dirs = tuple(dirs)
        self._index = {n: i for i, n in enumerate(names)}

    def __len__(self):
        return len(self.names)

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"variable {name!r} not in {self.names}") from None

    def __eq__(self, other):
        return isinstance(other, VarOrder) and self.names == other.names and self.dirs == other.dirs

    def __hash__(self):
        return hash((self.names, self.dirs))

    def __repr__(self):
        kinds = ", ".join(f"{n}:{'asc' if d == ASC else 'desc'}" for n, d in zip(self.names, self.dirs))
        return f"VarOrder({kinds})"

    # constructors of series in this order
    def const(self, c=ONE):
        if isinstance(c, int):
            c = Q(c)
        n = len(self.names)
        return TruncSeries(self, {(0,) * n: c} if not is_zero(c) else {}, (0,) * n, (None,) * n)

    def zero(self):
        n = len(self.names)
        return TruncSeries(self, {}, (0,) * n, (None,) * n)

    def monomial(self, exps, c=ONE):
        f = tuple(d * e for d, e in zip(self.dirs, exps))
        return TruncSeries(self, {f: c} if not is_zero(c) else {}, f, (None,) * len(f))

    def var(self, name, power=1):
        exps = [0] * len(self.names)
        exps[self.index(name)] = power
        return self.monomial(exps)


def _padd(p, s):
    return None if p is None else p + s


def _pmin(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class TruncSeries:
    """Truncated series over an ordered variable list with generic coefficients.

    Coefficients may be any ring elements supporting ``+``, ``-`` and ``*``;
    products keep the left-to-right order, so noncommutative coefficients
    are fine.  Terms are keyed by oriented exponent vectors.
    """

    __slots__ = ("order", "terms", "support", "prec")

    def __init__(self, order: VarOrder, terms, support, prec):
        self.order = order
        self.support = tuple(support)
        self.prec = tuple(prec)
        kept = {}
        for f, c in terms.items():
            if is_zero(c):
                continue
            if any(p is not None and x > p for x, p in zip(f, self.prec)):
                continue
            kept[f] = c
        self.terms = kept

    # ---- inspection
    def exps(self, f):
        return tuple(d * x for d, x in zip(self.order.dirs, f))

    def window(self, name):
        """Known exponent range of ``name`` as real exponents; ``None`` is unbounded."""
        i = self.order.index(name)
        s, p = self.support[i], self.prec[i]
        if self.order.dirs[i] == ASC:
            return (s, p)
        return (None if p is None else -p, -s)

    def coeff(self, exps, default=ZERO):
        f = self.exps(exps)
        for name, x, p in zip(self.order.names, f, self.prec):
            if p is not None and x > p:
                raise TruncationError(
                    f"coefficient at {dict(zip(self.order.names, exps))} is outside the "
                    f"known window of {name} (order {p})"
                )
        return self.terms.get(f, default)

    def items(self):
        """Yield (real exponent vector, coefficient)."""
        for f, c in self.terms.items():
            yield self.exps(f), c

    def is_zero(self):
        return not self.terms

    def is_exact(self):
        return all(p is None for p in self.prec)

    def _check(self, other):
        if not isinstance(other, TruncSeries):
            return self.order.const(other)
        if other.order != self.order:
            raise ValueError(f"mismatched variable orders {self.order} and {other.order}")
        return other

    # ---- ring operations
    def __add__(self, other):
        other = self._check(other)
        support = tuple(min(a, b) for a, b in zip(self.support, other.support))
        prec = tuple(_pmin(a, b) for a, b in zip(self.prec, other.prec))
        terms = dict(self.terms)
        for f, c in other.terms.items():
            terms[f] = terms[f] + c if f in terms else c
        return TruncSeries(self.order, terms, support, prec)

    def __radd__(self, other):
        return self._check(other) + self

    def __neg__(self):
        return TruncSeries(self.order, {f: -c for f, c in self.terms.items()}, self.support, self.prec)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def scale(self, c):
        """Multiply every coefficient on the left by a scalar."""
        return TruncSeries(self.order, {f: c * v for f, v in self.terms.items()}, self.support, self.prec)

    def rscale(self, c):
        return TruncSeries(self.order, {f: v * c for f, v in self.terms.items()}, self.support, self.prec)

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return self.rscale(other)
        other = self._check(other)
        support = tuple(a + b for a, b in zip(self.support, other.support))
        prec = tuple(
            _pmin(_padd(pa, sb), _padd(pb, sa))
            for pa, pb, sa, sb in zip(self.prec, other.prec, self.support, other.support)
        )
        out = {}
        bitems = list(other.terms.items())
        for fa, ca in self.terms.items():
            for fb, cb in bitems:
                f = tuple(x + y for x, y in zip(fa, fb))
                if any(p is not None and x > p for x, p in zip(f, prec)):
                    continue
                v = ca * cb
                if f in out:
                    out[f] = out[f] + v
                else:
                    out[f] = v
        return TruncSeries(self.order, out, support, prec)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k):
        if k < 0:
            return self.invert() ** (-k)
        acc = self.order.const()
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def truncate(self, **orders):
        """Forget coefficients beyond the given oriented orders, e.g. ``u=8``."""
        prec = list(self.prec)
        for name, p in orders.items():
            i = self.order.index(name)
            prec[i] = _pmin(prec[i], p)
        return TruncSeries(self.order, self.terms, self.support, prec)

    def invert(self, **orders):
        """Multiplicative inverse.

        For a variable in which the input is exact, ``orders`` gives the
        oriented order to which the inverse is wanted (e.g. ``u=6``); for an
        already truncated variable it truncates the input further.
        """
        a = self
        target = {}
        for name, p in orders.items():
            i = self.order.index(name)
            if self.prec[i] is None:
                target[i] = p
            else:
                a = a.truncate(**{name: p})
        if not a.terms:
            raise SingularSeriesError("cannot invert the zero series")
        lead = min(a.terms)
        c = a.terms[lead]
        if getattr(c, "is_zero", None) is not None:
            raise SingularSeriesError("leading coefficient is not a scalar")
        if c == 0:
            raise SingularSeriesError("leading coefficient is zero")
        cinv = ONE / c
        eps = {}
        for f, v in a.terms.items():
            if f == lead:
                continue
            g = tuple(x - y for x, y in zip(f, lead))
            if any(x < 0 for x in g):
                raise SingularSeriesError(
                    f"leading monomial {a.exps(lead)} does not dominate {a.exps(f)}"
                )
            eps[g] = v * cinv
        # an exact input with a requested order is expanded to exactly that order
        base_prec = tuple(
            target[i] + m if i in target else _padd(p, -m)
            for i, (p, m) in enumerate(zip(a.prec, lead))
        )
        for g in eps:
            if not any(x > 0 and p is not None for x, p in zip(g, base_prec)):
                raise TruncationError("inverse of an exact non-monomial series needs explicit orders")
        n = len(lead)
        one = (0,) * n
        e_series = TruncSeries(a.order, eps, one, base_prec)
        total = TruncSeries(a.order, {one: ONE}, one, base_prec)
        power = total
        while True:
            power = -(power * e_series)
            if not power.terms:
                break
            total = total + power
        neg = tuple(-m for m in lead)
        prec = tuple(_padd(p, -m) for p, m in zip(base_prec, lead))
        return TruncSeries(
            a.order,
            {tuple(x + y for x, y in zip(f, neg)): v * cinv for f, v in total.terms.items()},
            neg,
            prec,
        )

    def __truediv__(self, other):
        if isinstance(other, TruncSeries):
            return self * other.invert()
        return self.rscale(1 / Q(other))

    # ---- substitutions
    def shift(self, name, offset, order=None):
        """Substitute ``name -> name + offset``.

        ``offset`` is a scalar or an exact series with nonnegative oriented
        exponents in the other variables.  Shifting a descending variable keeps
        its window; an exact series is required for negative powers if
        ``order`` (the oriented order to keep) is not given.
        """
        i = self.order.index(name)
        if isinstance(offset, TruncSeries):
            offset = self._check(offset)
            if not offset.is_exact():
                raise ValueError("shift offset must be an exact series")
            if any(f[i] != 0 for f in offset.terms):
                raise ValueError("shift offset may not involve the shifted variable")
            if any(x < 0 for f in offset.terms for x in f):
                raise ValueError("shift offset must be small in every variable")
            off = offset
        else:
            if is_zero(offset):
                return self
            off = self.order.const(offset)
        d = self.order.dirs[i]
        if d == ASC and self.prec[i] is not None:
            raise TruncationError(f"shifting the small variable {name} needs an exact series")
        p = self.prec[i] if order is None else _pmin(self.prec[i], order)
        pw_cache = [self.order.const()]

        def off_pow(j):
            while len(pw_cache) <= j:
                pw_cache.append(pw_cache[-1] * off)
            return pw_cache[j]

        acc = {}
        for f, c in self.terms.items():
            e = d * f[i]
            if e >= 0:
                jmax = e
            else:
                if d == ASC:
                    raise ValueError(f"cannot shift a negative power of the small variable {name}")
                if p is None:
                    raise TruncationError(f"shifting {name}^{e} needs an order for {name}")
                jmax = p + e
            for j in range(0, jmax + 1):
                b = binom(e, j)
                if b == 0:
                    continue
                g = list(f)
                g[i] = d * (e - j)
                for fo, co in off_pow(j).terms.items():
                    h = tuple(x + y for x, y in zip(g, fo))
                    v = c * (b * co)
                    acc[h] = acc[h] + v if h in acc else v
        prec = list(self.prec)
        prec[i] = p
        return TruncSeries(self.order, acc, self.support, prec)

    def rescale(self, name, lam):
        """Substitute ``name -> lam * name`` for a nonzero scalar ``lam``."""
        i = self.order.index(name)
        d = self.order.dirs[i]
        lam = Q(lam)
        terms = {f: v * lam ** (d * f[i]) for f, v in self.terms.items()}
        return TruncSeries(self.order, terms, self.support, self.prec)

    def derivative(self, name):
        i = self.order.index(name)
        d = self.order.dirs[i]
        terms = {}
        for f, v in self.terms.items():
            e = d * f[i]
            if e == 0:
                continue
            g = list(f)
            g[i] = d * (e - 1)
            terms[tuple(g)] = v * e
        support = list(self.support)
        prec = list(self.prec)
        support[i] = support[i] - d
        prec[i] = _padd(prec[i], -d)
        return TruncSeries(self.order, terms, support, prec)

    def map(self, fn):
        return TruncSeries(self.order, {f: fn(v) for f, v in self.terms.items()}, self.support, self.prec)

    def __eq__(self, other):
        """Equality on the common known window."""
        other = self._check(other)
        prec = tuple(_pmin(a, b) for a, b in zip(self.prec, other.prec))
        keys = set(self.terms) | set(other.terms)
        for f in keys:
            if any(p is not None and x > p for x, p in zip(f, prec)):
                continue
            if not is_zero(self.terms.get(f, ZERO) - other.terms.get(f, ZERO)):
                return False
        return True

    __hash__ = None

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for f in sorted(self.terms):
            mono = "*".join(
                f"{n}^{e}" for n, e in zip(self.order.names, self.exps(f)) if e != 0
            )
            parts.append(f"({self.terms[f]})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


# ----------------------------------------------------------------------
# the normalising series g(u)


_G_CACHE: dict[int, list] = {}


def g_coefficients(N: int, K: int) -> list:
    """Return ``[g_0, ..., g_K]`` of the unique series with ``g(u+N) = g(u)(1-u^-2)``."""
    if N < 1 or K < 0:
        raise ValueError("need N >= 1 and K >= 0")
    g = _G_CACHE.setdefault(N, [ONE])
    # the coefficient of u^-n in g(u+N) - g(u)(1 - u^-2) fixes g_{n-1}
    while len(g) <= K:
        n = len(g) + 1
        acc = g[n - 2]
        for k in range(0, n - 1):
            acc += g[k] * binom(-k, n - k) * N ** (n - k)
        g.append(acc / ((n - 1) * N))
    return g[: K + 1]


def compute_g(N: int, K: int, var: str = "u") -> TruncSeries:
    """g(u) as a series in a single descending variable, known to ``u^-K``."""
    if K < 1:
        raise ValueError("need K >= 1")
    order = VarOrder([(var, "desc")])
    coeffs = g_coefficients(N, K)
    return TruncSeries(order, {(k,): c for k, c in enumerate(coeffs)}, (0,), (K,))


def g_of(N: int, x: TruncSeries, K: int) -> TruncSeries:
    """Compose g with a series ``x`` whose inverse is small, i.e. ``sum g_k x^-k``."""
    xinv = x.invert()
    coeffs = g_coefficients(N, K)
    acc = x.order.const(coeffs[K])
    for k in range(K - 1, -1, -1):
        acc = acc * xinv + coeffs[k]
    # the omitted tail g_{K+1} x^{-K-1} starts at this order
    for name, s in zip(x.order.names, xinv.support):
        if s > 0:
            return acc.truncate(**{name: (K + 1) * s - 1})
    raise SingularSeriesError("g(x) needs x to be large in some variable")


def g_identity_residuals(N: int, K: int) -> dict:
    """Residuals of the three defining identities of g, each cut at u^-K.

    ``recursion``: g(u + N) - g(u)(1 - u^-2); ``product``:
    g(u) g(u+1) ... g(u+N-1) (1 - u^-1) - 1; ``unitarity``:
    g(u) g(-u) (1 - u^-2) - 1.  All three vanish for the true series.
    """
    g = compute_g(N, K)
    order = g.order
    u = order.var("u")
    one = order.const()
    cut = {"u": K}
    rec = g.shift("u", N) - g * (one - u.invert() ** 2)
    prod = one
    for a in range(N):
        prod = (prod * g.shift("u", a)).truncate(**cut)
    prod = prod * (one - u.invert()) - one
    uni = g * g.rescale("u", -1) * (one - u.invert() ** 2) - one
    return {name: s.truncate(**cut) for name, s in (("recursion", rec), ("product", prod), ("unitarity", uni))}
