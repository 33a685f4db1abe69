"""Sparse operators on (C^N)^{(x) m} with entries in an arbitrary ring.

Basis indices are 0-based internally: a multi-index is a tuple of length
``m`` with components in ``range(N)``, and legs are numbered ``1..m``.
Entries are stored in a dict keyed by ``(row, col)``.
"""

from __future__ import annotations

from itertools import product

from .scalars import ONE, Q, RatFunc, TruncSeries, g_of, is_zero


class TensorOp:
    __slots__ = ("N", "m", "entries")

    def __init__(self, N: int, m: int, entries=None):
        self.N = N
        self.m = m
        self.entries = {}
        for key, v in (entries or {}).items():
            if not is_zero(v):
                self.entries[key] = v

    # ---- constructors
    @classmethod
    def identity(cls, N, m, one=ONE):
        return cls(N, m, {(idx, idx): one for idx in product(range(N), repeat=m)})

    @classmethod
    def unit(cls, N, i, j, c=ONE):
        """Matrix unit e_ij on a single leg (0-based i, j)."""
        return cls(N, 1, {((i,), (j,)): c})

    @classmethod
    def permutation(cls, N, perm, one=ONE):
        """Operator moving the tensor factor in leg k to leg perm[k] (0-based)."""
        m = len(perm)
        entries = {}
        for col in product(range(N), repeat=m):
            row = [0] * m
            for k, target in enumerate(perm):
                row[target] = col[k]
            entries[(tuple(row), col)] = one
        return cls(N, m, entries)

    # ---- ring structure
    def _like(self, other):
        if not isinstance(other, TensorOp):
            raise TypeError("expected a TensorOp")
        if (self.N, self.m) != (other.N, other.m):
            raise ValueError(f"shape mismatch ({self.N},{self.m}) vs ({other.N},{other.m})")
        return other

    def __add__(self, other):
        other = self._like(other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out[k] + v if k in out else v
        return TensorOp(self.N, self.m, out)

    def __neg__(self):
        return TensorOp(self.N, self.m, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-self._like(other))

    def scale(self, c):
        """c * X with the scalar on the left."""
        return TensorOp(self.N, self.m, {k: c * v for k, v in self.entries.items()})

    def rscale(self, c):
        return TensorOp(self.N, self.m, {k: v * c for k, v in self.entries.items()})

    def __mul__(self, other):
        if not isinstance(other, TensorOp):
            return self.rscale(other)
        other = self._like(other)
        by_row = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        out = {}
        for (r, k), a in self.entries.items():
            for c, b in by_row.get(k, ()):
                key = (r, c)
                v = a * b
                out[key] = out[key] + v if key in out else v
        return TensorOp(self.N, self.m, out)

    def __rmul__(self, other):
        return self.scale(other)

    def map(self, fn):
        return TensorOp(self.N, self.m, {k: fn(v) for k, v in self.entries.items()})

    def is_zero(self):
        return not self.entries

    def __eq__(self, other):
        if not isinstance(other, TensorOp):
            return NotImplemented
        if (self.N, self.m) != (other.N, other.m):
            return False
        for k in set(self.entries) | set(other.entries):
            a = self.entries.get(k)
            b = other.entries.get(k)
            if a is None or b is None:
                if not is_zero(a if b is None else b):
                    return False
            elif not is_zero(a - b):
                return False
        return True

    __hash__ = None

    def nnz(self):
        return len(self.entries)

    def __repr__(self):
        return f"TensorOp(N={self.N}, m={self.m}, nnz={len(self.entries)})"

    # ---- leg operations
    def transpose(self, leg):
        """Partial transpose on a single leg (1-based)."""
        a = _check_leg(leg, self.m)
        out = {}
        for (r, c), v in self.entries.items():
            r2, c2 = list(r), list(c)
            r2[a], c2[a] = c[a], r[a]
            out[(tuple(r2), tuple(c2))] = v
        return TensorOp(self.N, self.m, out)

    def trace(self, legs=None):
        """Partial trace over ``legs`` (1-based); all legs by default.

        A full trace returns a bare scalar.
        """
        legs = list(range(1, self.m + 1)) if legs is None else list(legs)
        idx = [_check_leg(a, self.m) for a in legs]
        if len(set(idx)) != len(idx):
            raise ValueError(f"repeated legs {legs}")
        keep = [k for k in range(self.m) if k not in idx]
        out = {}
        for (r, c), v in self.entries.items():
            if any(r[k] != c[k] for k in idx):
                continue
            key = (tuple(r[k] for k in keep), tuple(c[k] for k in keep))
            out[key] = out[key] + v if key in out else v
        if not keep:
            return out.get(((), ()), 0)
        return TensorOp(self.N, len(keep), out)

    def entry(self, row, col, default=0):
        return self.entries.get((tuple(row), tuple(col)), default)


def _check_leg(leg, m):
    if not 1 <= leg <= m:
        raise ValueError(f"leg {leg} out of range 1..{m}")
    return leg - 1


def leg_embed(op: TensorOp, legs, m: int, one=None) -> TensorOp:
    """Place a k-leg operator on the given legs of an m-fold tensor product."""
    legs = list(legs)
    if len(legs) != op.m:
        raise ValueError(f"operator has {op.m} legs but {len(legs)} targets were given")
    idx = [_check_leg(a, m) for a in legs]
    if len(set(idx)) != len(idx):
        raise ValueError(f"repeated legs {legs}")
    if one is None:
        one = _one_like(op)
    rest = [k for k in range(m) if k not in idx]
    out = {}
    for (r, c), v in op.entries.items():
        for other in product(range(op.N), repeat=len(rest)):
            row, col = [0] * m, [0] * m
            for k, a in enumerate(idx):
                row[a], col[a] = r[k], c[k]
            for k, a in enumerate(rest):
                row[a] = col[a] = other[k]
            out[(tuple(row), tuple(col))] = v
    return TensorOp(op.N, m, out)


def _one_like(op):
    for v in op.entries.values():
        if isinstance(v, TruncSeries):
            return v.order.const()
        if isinstance(v, RatFunc):
            return RatFunc(1)
        break
    return ONE


def kron(a: TensorOp, b: TensorOp) -> TensorOp:
    if a.N != b.N:
        raise ValueError("local dimensions differ")
    out = {}
    for (r1, c1), v1 in a.entries.items():
        for (r2, c2), v2 in b.entries.items():
            out[(r1 + r2, c1 + c2)] = v1 * v2
    return TensorOp(a.N, a.m + b.m, out)


def permutation_op(N: int, m: int, a: int, b: int, one=ONE) -> TensorOp:
    """The flip P_ab of legs a and b."""
    ia, ib = _check_leg(a, m), _check_leg(b, m)
    if ia == ib:
        raise ValueError("a permutation operator needs two distinct legs")
    perm = list(range(m))
    perm[ia], perm[ib] = ib, ia
    return TensorOp.permutation(N, perm, one)


def _reciprocal(arg):
    if isinstance(arg, TruncSeries):
        return arg.invert(), arg.order.const()
    if isinstance(arg, RatFunc):
        return arg.inverse(), RatFunc(1)
    arg = Q(arg)
    if arg == 0:
        raise ZeroDivisionError("R(u) has a pole at u = 0")
    return 1 / arg, ONE


def yang_r(N: int, arg, a: int = 1, b: int = 2, m: int = 2) -> TensorOp:
    """R_ab(arg) = 1 - P_ab / arg for a scalar, rational-function or series argument."""
    inv, one = _reciprocal(arg)
    P = permutation_op(N, m, a, b, one)
    return TensorOp.identity(N, m, one) - P.rscale(inv)


def rbar(N: int, arg: TruncSeries, a: int = 1, b: int = 2, m: int = 2, K: int = 8) -> TensorOp:
    """The normalised R-matrix g(arg) R(arg) with g known to order K."""
    return yang_r(N, arg, a, b, m).scale(g_of(N, arg, K))


def series_inverse(op: TensorOp) -> TensorOp:
    """Inverse of an operator with series entries of the form 1 + (small).

    Uses the Neumann series sum_k (1 - op)^k, which terminates because
    every power of ``1 - op`` raises the oriented order.
    """
    one = _one_like(op)
    ident = TensorOp.identity(op.N, op.m, one)
    x = ident - op
    for v in x.entries.values():
        if any(all(c == 0 for c in f) for f in v.terms):
            raise ValueError("operator is not of the form 1 + small")
    # powers are cut at the common precision so the loop terminates
    order = one.order
    cut = {}
    for i, name in enumerate(order.names):
        ps = [v.prec[i] for v in op.entries.values() if v.prec[i] is not None]
        if ps:
            cut[name] = min(ps)
    if not cut:
        raise ValueError("series_inverse needs truncated entries")
    total = ident
    power = ident
    while True:
        power = (power * x).map(lambda v: v.truncate(**cut))
        if power.is_zero():
            return total
        total = total + power


def to_dense(op: TensorOp):
    """Nested lists indexed by flattened row/column (little-endian in leg order)."""
    dim = op.N ** op.m
    rows = [[0] * dim for _ in range(dim)]
    for (r, c), v in op.entries.items():
        rows[_flat(r, op.N)][_flat(c, op.N)] = v
    return rows


def _flat(idx, N):
    k = 0
    for x in idx:
        k = k * N + x
    return k


def ybe_residual(N: int) -> TensorOp:
    """R12(u) R13(u+v) R23(v) - R23(v) R13(u+v) R12(u) at v = 1, over RatFunc.

    Both sides are homogeneous of degree 0 in (u, v), so vanishing at v = 1
    for all u is equivalent to vanishing identically.
    """
    u = RatFunc.x()
    one = RatFunc(1)
    R12 = yang_r(N, u, 1, 2, 3)
    R13 = yang_r(N, u + one, 1, 3, 3)
    R23 = yang_r(N, one, 2, 3, 3)
    return R12 * R13 * R23 - R23 * R13 * R12


def _cut(op: TensorOp, K: int) -> TensorOp:
    return op.map(lambda s: s.truncate(u=K))


def rbar_unitarity_residual(N: int, K: int) -> TensorOp:
    """Rbar(u) Rbar(-u) - 1 to order u^-K."""
    from .scalars import VarOrder

    order = VarOrder([("u", "desc")])
    u = order.var("u")
    a = _cut(rbar(N, u, K=K + 1), K)
    b = _cut(rbar(N, -u, K=K + 1), K)
    return _cut(a * b - TensorOp.identity(N, 2, order.const()), K)


def rbar_crossing_residuals(N: int, K: int) -> list:
    """(Rbar(u)^-1)^{t_a} Rbar(u + N)^{t_a} - 1 for a = 1, 2, to order u^-K."""
    from .scalars import VarOrder

    order = VarOrder([("u", "desc")])
    u = order.var("u")
    R = _cut(rbar(N, u, K=K + 1), K)
    Rinv = _cut(series_inverse(R), K)
    Rshift = R.map(lambda s: s.shift("u", N))
    one = TensorOp.identity(N, 2, order.const())
    return [_cut(Rinv.transpose(a) * Rshift.transpose(a) - one, K) for a in (1, 2)]
