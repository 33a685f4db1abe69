"""Normal ordering in universal enveloping algebras of Lie algebras.

A Lie algebra is given by a totally ordered basis (hashable, sortable keys)
and a bracket returning ``{key: coeff}``; the key ``None`` stands for the
identity and carries central terms.  Elements of the enveloping algebra are
dicts mapping sorted key tuples to rational coefficients.

If the ordering puts every basis element that kills a vacuum vector after
all the others, a normal monomial acts on that vacuum as zero exactly when
its last key is such an annihilator.  ``act`` uses this to realise
induced vacuum modules.
"""

from __future__ import annotations

from .scalars import ONE, Q


def add_into(out: dict, x: dict, c=ONE):
    for k, v in x.items():
        w = out.get(k)
        w = v * c if w is None else w + v * c
        if w == 0:
            out.pop(k, None)
        else:
            out[k] = w
    return out


class Envelope:
    def __init__(self, bracket, annihilates=None):
        self._bracket = bracket
        self._annihilates = annihilates or (lambda key: False)
        self._memo = {}
        self._bracket_memo = {}

    def bracket(self, a, b) -> dict:
        key = (a, b)
        if key not in self._bracket_memo:
            self._bracket_memo[key] = {k: Q(v) for k, v in self._bracket(a, b).items() if v != 0}
        return self._bracket_memo[key]

    def gen_times_mono(self, x, mono: tuple) -> dict:
        """x * mono in normal order."""
        if not mono or x <= mono[0]:
            return {(x,) + mono: ONE}
        key = (x, mono)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        y, rest = mono[0], mono[1:]
        out = self.mul_gen(y, self.gen_times_mono(x, rest))
        for z, c in self.bracket(x, y).items():
            if z is None:
                add_into(out, {rest: ONE}, c)
            else:
                add_into(out, self.gen_times_mono(z, rest), c)
        self._memo[key] = out
        return out

    def mul_gen(self, x, elem: dict) -> dict:
        out = {}
        for mono, c in elem.items():
            add_into(out, self.gen_times_mono(x, mono), c)
        return out

    def mul(self, a: dict, b: dict) -> dict:
        out = {}
        for mono, c in a.items():
            part = dict(b)
            for x in reversed(mono):
                part = self.mul_gen(x, part)
            add_into(out, part, c)
        return out

    def word(self, keys) -> dict:
        """Normal form of an arbitrary ordered product of basis elements."""
        elem = {(): ONE}
        for x in reversed(list(keys)):
            elem = self.mul_gen(x, elem)
        return elem

    def commutator(self, a: dict, b: dict) -> dict:
        return add_into(self.mul(a, b), self.mul(b, a), -ONE)

    def act(self, x, state: dict) -> dict:
        """x applied to a vector of the vacuum module (monomials applied to vac)."""
        out = self.mul_gen(x, state)
        return {m: c for m, c in out.items() if not (m and self._annihilates(m[-1]))}


# ----------------------------------------------------------------------
# concrete Lie algebras; E_ij uses 1-based indices


def gl_bracket(a, b):
    """[E_ij, E_kl] = delta_kj E_il - delta_il E_kj with keys (i, j)."""
    (i, j), (k, l) = a, b
    out = {}
    if k == j:
        out[(i, l)] = out.get((i, l), 0) + 1
    if i == l:
        out[(k, j)] = out.get((k, j), 0) - 1
    return out


def gl_envelope() -> Envelope:
    return Envelope(gl_bracket)


def affine_bracket(N, level):
    """Loop algebra bracket with central term; keys (s, i, j) for E_ij[s]."""
    level = Q(level)

    def bracket(a, b):
        (r, i, j), (s, k, l) = a, b
        out = {}
        if k == j:
            key = (r + s, i, l)
            out[key] = out.get(key, 0) + 1
        if i == l:
            key = (r + s, k, j)
            out[key] = out.get(key, 0) - 1
        if r == -s and r != 0:
            central = Q(int(k == j and i == l)) - Q(int(i == j and k == l), N)
            if central:
                out[None] = r * level * central
        return out

    return bracket


def affine_vacuum_envelope(N, level) -> Envelope:
    """U(gl_N^) acting on its vacuum module at the given level.

    Keys sort by mode first, so the annihilators E_ij[s], s >= 0, come last.
    """
    return Envelope(affine_bracket(N, level), annihilates=lambda key: key[0] >= 0)


def loop_minus_envelope(N) -> Envelope:
    """U(t^-1 gl_N[t^-1]), the classical counterpart of the dual Yangian."""
    def bracket(a, b):
        out = affine_bracket(N, 0)(a, b)
        out.pop(None, None)
        return out

    return Envelope(bracket)
