"""Young diagrams, standard tableaux and primitive idempotents on tensor space.

The fusion procedure evaluates the ordered product of R-matrices
``R_ab(u_a - u_b)`` (pairs ``a < b`` in lexicographic order) at the contents
of a tableau, one variable at a time.  We realise the consecutive evaluation
by putting ``u_a = c_a + eps_a`` with ``eps_a = eta_m * ... * eta_a`` for
small formal variables ``eta``.  Letting ``eta_1 -> 0`` sends only ``u_1`` to
its content, then ``eta_2 -> 0`` does the same for ``u_2``, and so on.  The
whole product is computed in the group algebra of S_m with series
coefficients and only then mapped to operators.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations, product
from math import factorial

from .scalars import ONE, Q, RatFunc, VarOrder
from .tensor import TensorOp, leg_embed, yang_r


class FusionError(ArithmeticError):
    """A negative eta power survived: the consecutive evaluation was singular."""


# ----------------------------------------------------------------------
# diagrams and tableaux


class YoungDiagram:
    __slots__ = ("parts",)

    def __init__(self, parts):
        parts = tuple(int(p) for p in parts)
        if not parts or any(p <= 0 for p in parts):
            raise ValueError(f"diagram parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"diagram parts must be weakly decreasing: {parts}")
        self.parts = parts

    @property
    def m(self):
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def boxes(self):
        return [(i, j) for i, p in enumerate(self.parts) for j in range(p)]

    def conjugate(self):
        return YoungDiagram([sum(1 for p in self.parts if p > j) for j in range(self.parts[0])])

    def __eq__(self, other):
        return isinstance(other, YoungDiagram) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return f"YoungDiagram{self.parts}"


def _diagram(mu):
    return mu if isinstance(mu, YoungDiagram) else YoungDiagram(mu)


class StandardTableau:
    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(r) for r in rows)
        shape = YoungDiagram(len(r) for r in rows)
        entries = sorted(x for r in rows for x in r)
        if entries != list(range(1, shape.m + 1)):
            raise ValueError(f"entries must be 1..{shape.m}: {rows}")
        for r in rows:
            if any(a >= b for a, b in zip(r, r[1:])):
                raise ValueError(f"rows must increase: {rows}")
        for i in range(1, len(rows)):
            if any(rows[i][j] <= rows[i - 1][j] for j in range(len(rows[i]))):
                raise ValueError(f"columns must increase: {rows}")
        self.rows = rows

    @property
    def shape(self):
        return YoungDiagram(len(r) for r in self.rows)

    @property
    def m(self):
        return sum(len(r) for r in self.rows)

    def contents(self):
        """Content j - i of the box holding each entry 1..m, as a tuple."""
        c = [0] * self.m
        for i, r in enumerate(self.rows):
            for j, x in enumerate(r):
                c[x - 1] = j - i
        return tuple(c)

    def __eq__(self, other):
        return isinstance(other, StandardTableau) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"StandardTableau{self.rows}"


def standard_tableaux(mu) -> list:
    """All standard tableaux of shape mu, sorted by their row reading word."""
    mu = _diagram(mu)
    out = []

    def fill(rows, k):
        if k > mu.m:
            out.append(StandardTableau(rows))
            return
        for i, p in enumerate(mu.parts):
            j = len(rows[i])
            if j < p and (i == 0 or len(rows[i - 1]) > j):
                rows[i].append(k)
                fill(rows, k + 1)
                rows[i].pop()

    fill([[] for _ in mu.parts], 1)
    out.sort(key=lambda t: tuple(x for r in t.rows for x in r))
    return out


def hook_product(mu) -> int:
    mu = _diagram(mu)
    conj = mu.conjugate().parts
    h = 1
    for i, j in mu.boxes():
        h *= (mu.parts[i] - j - 1) + (conj[j] - i - 1) + 1
    return h


def partitions(m: int, max_len: int | None = None):
    """Partitions of m in reverse lexicographic order."""
    def rec(n, largest):
        if n == 0:
            yield ()
            return
        for k in range(min(n, largest), 0, -1):
            for rest in rec(n - k, k):
                yield (k,) + rest

    for p in rec(m, m):
        if max_len is None or len(p) <= max_len:
            yield YoungDiagram(p)


# ----------------------------------------------------------------------
# group algebra of S_m; a permutation is a tuple s with s[k] the image of k


def compose(s, t):
    """The permutation s o t (apply t first)."""
    return tuple(s[k] for k in t)


def transposition(m, a, b):
    s = list(range(m))
    s[a], s[b] = b, a
    return tuple(s)


def ga_mul(x: dict, y: dict) -> dict:
    out = {}
    for s, a in x.items():
        for t, b in y.items():
            st = compose(s, t)
            v = a * b
            out[st] = out[st] + v if st in out else v
    return out


def ga_to_op(x: dict, N: int) -> TensorOp:
    """Image of a group algebra element with scalar coefficients on (C^N)^{(x) m}."""
    m = len(next(iter(x)))
    total = {}
    for s, a in x.items():
        for key, _ in TensorOp.permutation(N, s).entries.items():
            total[key] = total[key] + a if key in total else a
    return TensorOp(N, m, total)


def sign(s):
    seen, sgn = set(), 1
    for k in range(len(s)):
        if k in seen:
            continue
        length, j = 0, k
        while j not in seen:
            seen.add(j)
            j = s[j]
            length += 1
        if length % 2 == 0:
            sgn = -sgn
    return sgn


# ----------------------------------------------------------------------
# fusion procedure


def _equal_content_pairs(c):
    return sum(1 for a in range(len(c)) for b in range(a + 1, len(c)) if c[a] == c[b])


@lru_cache(maxsize=None)
def fusion_group_element(rows) -> dict:
    """h(mu) E_U as an element of Q[S_m], via consecutive evaluation.

    ``rows`` are the rows of a standard tableau.  Raises ``FusionError`` if a
    negative power of a formal variable survives.
    """
    U = StandardTableau(rows)
    m = U.m
    c = U.contents()
    if m == 1:
        return {(0,): ONE}
    P = _equal_content_pairs(c)
    names = [f"eta{a}" for a in range(m, 0, -1)]
    order = VarOrder([(n, "asc") for n in names])
    cut = {n: P for n in names}

    def eps(a):
        exps = [1 if int(n[3:]) >= a + 1 else 0 for n in names]
        return order.monomial(exps)

    identity = tuple(range(m))
    prod = {identity: order.const()}
    for a in range(m):
        for b in range(a + 1, m):
            diff = eps(a) - eps(b) + Q(c[a] - c[b])
            inv = diff.invert(**cut)
            factor = {identity: order.const(), transposition(m, a, b): -inv}
            prod = ga_mul(prod, factor)
    # evaluate eta_1 -> 0, then eta_2 -> 0, ...
    out = {}
    for s, series in prod.items():
        terms = dict(series.items())
        for a in range(1, m + 1):
            i = order.index(f"eta{a}")
            for e, v in terms.items():
                if e[i] < 0 and v != 0:
                    raise FusionError(f"eta{a}^{e[i]} survives for tableau {rows}")
            terms = {e: v for e, v in terms.items() if e[i] == 0}
        val = terms.get((0,) * m, 0)
        # the constant term must lie inside the known window
        series.coeff((0,) * m)
        if val != 0:
            out[s] = Q(val)
    return out


def fusion_idempotent(U: StandardTableau, N: int) -> TensorOp:
    """Primitive idempotent E_U on (C^N)^{(x) m} from the fusion procedure."""
    if len(U.shape) > N:
        raise ValueError(f"shape {U.shape.parts} has more than N={N} rows")
    h = hook_product(U.shape)
    x = {s: a / h for s, a in fusion_group_element(U.rows).items()}
    return ga_to_op(x, N)


def rmatrix_product(U: StandardTableau, N: int, values) -> TensorOp:
    """The ordered product of R_ab(u_a - u_b) at generic rational values u_a."""
    m = U.m
    op = TensorOp.identity(N, m)
    for a in range(m):
        for b in range(a + 1, m):
            op = op * yang_r(N, Q(values[a]) - Q(values[b]), a + 1, b + 1, m)
    return op


def jm_oracle_idempotent(U: StandardTableau, N: int) -> TensorOp:
    """E_U as a Lagrange interpolation polynomial in Jucys-Murphy operators.

    X_k = sum_{a<k} P_ak acts on rows by permuting indices, so each factor
    costs one pass over the current sparse matrix.  Integer arithmetic is used
    throughout and the denominator is divided out at the end.
    """
    if len(U.shape) > N:
        raise ValueError(f"shape {U.shape.parts} has more than N={N} rows")
    m = U.m
    c = U.contents()
    current = {(idx, idx): 1 for idx in product(range(N), repeat=m)}
    denom = 1
    for k in range(1, m):
        for d in range(-k, k + 1):
            if d == c[k]:
                continue
            nxt = {}
            for (r, col), v in current.items():
                for a in range(k):
                    r2 = list(r)
                    r2[a], r2[k] = r[k], r[a]
                    key = (tuple(r2), col)
                    nxt[key] = nxt.get(key, 0) + v
                if d:
                    key = (r, col)
                    nxt[key] = nxt.get(key, 0) - d * v
            current = {key: v for key, v in nxt.items() if v}
            denom *= c[k] - d
    return TensorOp(N, m, {key: Q(v, denom) for key, v in current.items()})


def symmetrizer(m: int, N: int) -> TensorOp:
    x = {s: Q(1, factorial(m)) for s in permutations(range(m))}
    return ga_to_op(x, N)


def antisymmetrizer(m: int, N: int) -> TensorOp:
    x = {s: Q(sign(s), factorial(m)) for s in permutations(range(m))}
    return ga_to_op(x, N)


def column_relation_sides(N: int):
    """Both sides of A^(N) R_{0N}(v+N-1)...R_{01}(v) = A^(N) (1 - 1/v) over Q(v).

    Leg 1 plays the role of the auxiliary space 0; legs 2..N+1 carry A^(N).
    """
    m = N + 1
    v = RatFunc.x()
    one = RatFunc(1)
    A = _embed_tail(antisymmetrizer(N, N), m).map(RatFunc)
    lhs = A
    for k in range(N, 0, -1):
        lhs = lhs * yang_r(N, v + (k - 1), 1, k + 1, m)
    rhs = A.rscale(one - v.inverse())
    return lhs, rhs


def _embed_tail(op: TensorOp, m: int) -> TensorOp:
    return leg_embed(op, range(m - op.m + 1, m + 1), m)
