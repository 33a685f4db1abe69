"""Command line harness: run verification suites and print exact objects as JSON.

    ycl verify <suite> [--N 2] [--level p/q] [--g-order K] [--window var=lo..hi]
                       [--shape a,b,c] [--budget key=val] [--seed n] [--strict] [--out path]
    ycl compute <entity> [same options]

Windows: ``deg`` bounds the filtration degree of states (its lower end is
the floor), ``u`` the range of series coefficients, ``z`` the z-window of
vertex operators and ``h`` the h-orders checked.  Budgets: ``s_max``,
``r_max``, ``m_max``, ``words``, ``states``.

Exit status: 0 all checks pass, 1 a check failed, 2 bad configuration,
3 a check was skipped for lack of window and ``--strict`` was given.
"""

from __future__ import annotations

import json
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import click

from .scalars import ONE, Q, TruncationError, g_coefficients, g_identity_residuals

SCHEMA = "ycl-report/1"
SUITES = ("rmatrix", "fusion", "pbw", "critical-center", "noncritical-center", "manin", "classical-ff", "qva-axioms")
ENTITIES = ("g-series", "idempotent", "immanant", "qdet", "phi", "psi", "theta", "ff-generator")


class ConfigError(click.UsageError):
    pass


# ----------------------------------------------------------------------
# configuration


@dataclass
class SuiteConfig:
    N: int = 2
    level: object = None
    g_order: int = 8
    windows: dict = field(default_factory=dict)
    shapes: list = field(default_factory=list)
    budget: dict = field(default_factory=dict)
    seed: int = 0

    def window(self, name, default):
        return self.windows.get(name, default)

    def floor(self, default):
        return self.window("deg", (default, 0))[0]

    def levels(self, default):
        return [self.level] if self.level is not None else [Q(c) for c in default]

    def get(self, key, default):
        return self.budget.get(key, default)

    def echo(self):
        return {
            "N": self.N,
            "level": None if self.level is None else qstr(self.level),
            "g_order": self.g_order,
            "windows": {k: [lo, hi] for k, (lo, hi) in sorted(self.windows.items())},
            "shapes": [list(s) for s in self.shapes],
            "budget": dict(sorted(self.budget.items())),
            "seed": self.seed,
        }


def parse_level(text):
    try:
        return Q(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"level must be a rational p/q, got {text!r}") from exc


def parse_window(text):
    try:
        name, rng = text.split("=", 1)
        lo, hi = rng.split("..", 1)
        lo, hi = int(lo), int(hi)
    except ValueError as exc:
        raise ConfigError(f"window must look like var=lo..hi, got {text!r}") from exc
    if lo > hi:
        raise ConfigError(f"empty window {text!r}")
    return name.strip(), (lo, hi)


def parse_shape(text):
    try:
        parts = tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise ConfigError(f"shape must be comma separated integers, got {text!r}") from exc
    if not parts or any(p <= 0 for p in parts) or list(parts) != sorted(parts, reverse=True):
        raise ConfigError(f"shape must be a partition, got {text!r}")
    return parts


def parse_budget(text):
    try:
        key, val = text.split("=", 1)
        return key.strip(), int(val)
    except ValueError as exc:
        raise ConfigError(f"budget must look like key=int, got {text!r}") from exc


def build_config(N, level, g_order, window, shape, budget, seed) -> SuiteConfig:
    if N < 1:
        raise ConfigError("N must be positive")
    shapes = [parse_shape(s) for s in shape]
    for s in shapes:
        if len(s) > N:
            raise ConfigError(f"shape {s} has more than N={N} rows")
    return SuiteConfig(
        N=N,
        level=None if level is None else parse_level(level),
        g_order=g_order,
        windows=dict(parse_window(w) for w in window),
        shapes=shapes,
        budget=dict(parse_budget(b) for b in budget),
        seed=seed,
    )


# ----------------------------------------------------------------------
# serialisation


def qstr(x) -> str:
    x = Q(x)
    return f"{x.numerator}/{x.denominator}"


def mono_str(mono) -> str:
    if not mono:
        return "1"
    parts = []
    for g in mono:
        if isinstance(g, tuple) and len(g) == 3 and not hasattr(g, "fam"):
            s, i, j = g
            parts.append(f"E{i}{j}[{s}]")
        else:
            parts.append(repr(g))
    return " ".join(parts)


def elem_json(elem: dict) -> dict:
    return {mono_str(m): qstr(c) for m, c in sorted(elem.items(), key=lambda kv: mono_str(kv[0])) if c}


def poly_json(poly, n_max=None) -> dict:
    out = {}
    for n in sorted(poly.coeffs):
        if n_max is not None and n > n_max:
            continue
        x = poly.coeffs[n]
        if x:
            out[f"u^{n}"] = elem_json(x)
    return out


def op_json(op) -> list:
    rows = []
    for (r, c), v in sorted(op.entries.items()):
        rows.append([[a + 1 for a in r], [a + 1 for a in c], qstr(v)])
    return rows


def series_json(s) -> dict:
    return {
        "variable-order": [[n, "desc" if d < 0 else "asc"] for n, d in zip(s.order.names, s.order.dirs)],
        "window": list(s.prec),
        "coefficients": {",".join(str(e) for e in f): qstr(c) for f, c in sorted(s.items())},
    }


# ----------------------------------------------------------------------
# checks


@dataclass
class CheckResult:
    name: str
    status: str
    detail: str
    elapsed: float


def run_check(name, fn) -> CheckResult:
    """``fn`` returns (ok, detail); truncation errors become skips."""
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
        status = "pass" if ok else "fail"
    except TruncationError as exc:
        status, detail = "skipped-truncation", f"window too small: {exc}"
    return CheckResult(name, status, str(detail), time.perf_counter() - t0)


def _count(bad, what="failures"):
    return (not bad, f"{len(bad)} {what}")


def _control(bad, what="violations detected"):
    # negative controls pass when the defect is detected
    return (bool(bad), f"{len(bad)} {what}")


def suite_rmatrix(cfg: SuiteConfig):
    from .tensor import rbar_crossing_residuals, rbar_unitarity_residual, ybe_residual, yang_r
    from .scalars import RatFunc

    K = cfg.g_order
    Ns = sorted({cfg.N, 2, 3, 4}) if cfg.N <= 4 else [cfg.N]
    checks = []
    for N in range(1, max(5, cfg.N) + 1):
        checks.append((f"g-identities N={N}", lambda N=N: _count([k for k, s in g_identity_residuals(N, K).items() if not s.is_zero()], "identities violated")))
    for N in Ns:
        checks.append((f"ybe N={N}", lambda N=N: (ybe_residual(N).is_zero(), "exact over Q(u) at v=1")))
        checks.append((f"unitarity N={N}", lambda N=N: (rbar_unitarity_residual(N, K).is_zero(), f"to u^-{K}")))
        checks.append((f"crossing N={N}", lambda N=N: (all(r.is_zero() for r in rbar_crossing_residuals(N, K)), f"both legs to u^-{K}")))

    def control():
        u = RatFunc.x()
        one = RatFunc(1)
        N = Ns[0]
        wrong = yang_r(N, u, 1, 2, 3) * yang_r(N, one, 2, 3, 3) * yang_r(N, u + one, 1, 3, 3)
        right = yang_r(N, u + one, 1, 3, 3) * yang_r(N, one, 2, 3, 3) * yang_r(N, u, 1, 2, 3)
        return (not (wrong - right).is_zero(), "misordered Yang-Baxter product differs")

    checks.append(("negative-control misordered ybe", control))
    return checks


def suite_fusion(cfg: SuiteConfig):
    from .fusion import FusionError, fusion_idempotent, jm_oracle_idempotent, partitions, standard_tableaux
    from .tensor import TensorOp

    m_max = cfg.get("m_max", 4)
    Ns = [cfg.N] if cfg.N != 2 else [2, 3]
    checks = []
    for N in Ns:
        for m in range(1, m_max + 1):
            def fn(N=N, m=m):
                total = None
                bad = []
                for mu in partitions(m, N):
                    tabs = standard_tableaux(mu)
                    ops = []
                    for U in tabs:
                        try:
                            E = fusion_idempotent(U, N)
                        except FusionError as exc:
                            bad.append(f"{U.rows}: {exc}")
                            continue
                        if E * E != E:
                            bad.append(f"{U.rows} not idempotent")
                        if E != jm_oracle_idempotent(U, N):
                            bad.append(f"{U.rows} differs from Jucys-Murphy oracle")
                        ops.append(E)
                        total = E if total is None else total + E
                    for a in range(len(ops)):
                        for b in range(len(ops)):
                            if a != b and not (ops[a] * ops[b]).is_zero():
                                bad.append(f"{mu} tableaux {a},{b} not orthogonal")
                if total != TensorOp.identity(N, m):
                    bad.append("idempotents do not sum to the identity")
                return (not bad, "; ".join(bad) or "idempotent, oracle, orthogonality, completeness")

            checks.append((f"fusion N={N} m={m}", fn))
    return checks


def _random_gen(rng, N, r_max=3):
    from .yangian import gen

    r = rng.choice([s for s in range(-r_max, r_max + 1) if s])
    return gen(rng.randint(1, N), rng.randint(1, N), r)


def suite_pbw(cfg: SuiteConfig):
    from .yangian import DoubleYangian, act_T_conjugation, gen, graded_bracket_failures, t_plus_product_state

    N = cfg.N
    words = cfg.get("words", 200)
    n_states = cfg.get("states", 50)
    checks = []
    for c in cfg.levels([0, -2, 1]):
        def diamond(c=c):
            rng = random.Random(cfg.seed)
            Y = DoubleYangian(N, c)
            bad = 0
            for _ in range(words):
                w = [_random_gen(rng, N) for _ in range(rng.randint(2, 5))]
                k = rng.randint(1, len(w) - 1)
                if Y.mul(Y.normal_form(w[:k]), Y.normal_form(w[k:])) != Y.normal_form(w):
                    bad += 1
            return (bad == 0, f"{bad} of {words} random words depend on the bracketing")

        def graded(c=c):
            Y = DoubleYangian(N, c)
            gens = [gen(i, j, r) for i in range(1, N + 1) for j in range(1, N + 1) for r in (-3, -2, -1, 1, 2, 3)]
            pairs = list(product(gens, gens))
            return _count(graded_bracket_failures(Y, pairs), f"of {len(pairs)} pairs disagree with the affine bracket")

        def methods(c=c):
            rng = random.Random(cfg.seed + 1)
            Y = DoubleYangian(N, c)
            conj = act_T_conjugation(Y, 2, 3, 2)
            bad = 0
            for _ in range(n_states):
                rows = (rng.randint(1, N), rng.randint(1, N))
                cols = (rng.randint(1, N), rng.randint(1, N))
                pw = (rng.randint(0, 2), rng.randint(0, 2))
                r, i, j = rng.randint(1, 3), rng.randint(1, N), rng.randint(1, N)
                state = t_plus_product_state(Y, rows, cols, pw)
                if conj(r, i, j, rows, cols, pw) != Y.act_gen(gen(i, j, r), state):
                    bad += 1
            return (bad == 0, f"{bad} of {n_states} random states differ between rule and conjugation actions")

        checks.append((f"diamond c={qstr(c)}", diamond))
        checks.append((f"graded-limit c={qstr(c)}", graded))
        checks.append((f"method-cross-validation c={qstr(c)}", methods))

    def control():
        Y = DoubleYangian(N, -2)
        gens = [gen(i, j, r) for i in range(1, N + 1) for j in range(1, N + 1) for r in (-1, 2)]
        return _control(graded_bracket_failures(Y, list(product(gens, gens)), level=0), "central-term mismatches at the wrong level")

    checks.append(("negative-control graded limit at wrong level", control))
    return checks


def _shapes(cfg, default):
    return cfg.shapes or [s for s in default if len(s) <= cfg.N]


def suite_critical_center(cfg: SuiteConfig):
    from .center import (
        CompletedCentral, column_ratio_failures, invariance_failures, qdet, qdet_rmatrix_sides, quantum_immanant,
        sides_equal, tableau_independence, ttilde_central_failures, ttilde_vacuum_failures,
    )
    from .fusion import standard_tableaux
    from .yangian import DoubleYangian, gen

    N = cfg.N
    D = cfg.floor(-6)
    s_max = cfg.get("s_max", 4)
    crit = cfg.level if cfg.level is not None else Q(-N)
    shapes = _shapes(cfg, [(1,), (2,), (1, 1), (2, 1), (3,), (1, 1, 1)])
    checks = []
    for mu in shapes:
        def inv(mu=mu):
            Y = DoubleYangian(N, crit)
            im = quantum_immanant(Y, standard_tableaux(mu)[0], D)
            return _count(invariance_failures(Y, im.series, D, s_max), "non-annihilated coefficients")

        checks.append((f"invariance shape={mu} c={qstr(crit)}", inv))

    def control():
        Y = DoubleYangian(N, 0)
        bad = []
        for mu in shapes:
            if mu == (1,) * N:
                continue  # the quantum determinant is central at every level
            im = quantum_immanant(Y, standard_tableaux(mu)[0], D)
            bad += invariance_failures(Y, im.series, D, s_max)
        return _control(bad, "non-annihilated coefficients at c=0")

    checks.append(("negative-control c=0", control))

    def independence():
        Y = DoubleYangian(N, crit)
        bad = [mu for mu in shapes if len(standard_tableaux(mu)) > 1 and not tableau_independence(Y, mu, D)[0]]
        return _count(bad, "shapes whose series depends on the tableau")

    checks.append(("tableau-independence", independence))

    def rmatdet():
        Y = DoubleYangian(N, crit)
        lhs, rhs = qdet_rmatrix_sides(Y, D)
        return (sides_equal(lhs, rhs), "antisymmetrized product equals qdet times the antisymmetrizer")

    checks.append(("qdet-antisymmetrizer", rmatdet))

    Dt = cfg.get("ttilde_floor", -3)
    basket = [{(): ONE}, {(gen(2, 1, -1),): ONE}] if N >= 2 else [{(): ONE}, {(gen(1, 1, -1),): ONE}]

    def ttilde():
        Y = DoubleYangian(N, crit)
        U = standard_tableaux(shapes[0])[0]
        T = CompletedCentral(Y, U, Dt)
        im = quantum_immanant(Y, U, Dt)
        bad = ttilde_vacuum_failures(T, im.series, range(0, 3))
        bad += ttilde_central_failures(T, basket, range(-2, 2), 2)
        return _count(bad, "failures of the completed series on the basket")

    checks.append((f"completed-series shape={shapes[0]}", ttilde))

    def ratio():
        Y = DoubleYangian(N, crit)
        return _count(column_ratio_failures(Y, Dt, basket, range(-2, 2)), "column tableau mismatches with the qdet ratio")

    checks.append(("column-qdet-ratio", ratio))
    return checks


def suite_noncritical_center(cfg: SuiteConfig):
    from .center import (
        centrality_failures, expected_noncritical_limit, invariance_failures, noncritical_classical_limits, qdet,
    )
    from .qva import noncommutative_center_witness
    from .yangian import DoubleYangian

    N = cfg.N
    D = cfg.floor(-5)
    s_max = cfg.get("s_max", 3)
    r_max = cfg.get("r_max", 3)
    checks = []
    for c in cfg.levels([0, 1]):
        def inv(c=c):
            Y = DoubleYangian(N, c)
            return _count(invariance_failures(Y, qdet(Y, D), D, s_max), "non-invariant qdet coefficients")

        def limits(c=c):
            Y = DoubleYangian(N, c)
            got = noncritical_classical_limits(Y, r_max, D - 1)
            bad = [r for r in got if got[r] != expected_noncritical_limit(N, r)]
            return _count(bad, "classical limits differ from the diagonal sum")

        checks.append((f"d_r invariance c={qstr(c)}", inv))
        checks.append((f"d_r classical limits c={qstr(c)}", limits))
    for c in cfg.levels([-2, 0, 1]):
        def cent(c=c):
            Y = DoubleYangian(N, c)
            return _count(centrality_failures(Y, qdet(Y, D), D, s_max), "generators not commuting with qdet")

        checks.append((f"qdet centrality c={qstr(c)}", cent))

    def witness():
        w = noncommutative_center_witness(max(N, 2))
        return (bool(w), "[t12(-1), t21(-1)] = " + json.dumps(elem_json(w), sort_keys=True))

    checks.append(("variant noncommutative witness", witness))
    return checks


def suite_manin(cfg: SuiteConfig):
    from .diffop import classical_manin_matrix, dual_manin_matrix, macmahon_check, manin_witness, newton_check
    from .yangian import DoubleYangian

    D = cfg.floor(-4)
    m_max = cfg.get("m_max", 3)
    checks = []
    for N in sorted({1, 2, cfg.N}):
        for label, build in (("dual", lambda N=N: dual_manin_matrix(DoubleYangian(N, 0), D)), ("classical", lambda N=N: classical_manin_matrix(N, D))):
            def newton(build=build):
                r = newton_check(build(), m_max)
                return (r["first_difference"] is None, f"first difference: {r['first_difference']}")

            def macmahon(build=build):
                r = macmahon_check(build(), m_max)
                return (r["first_difference"] is None, f"first difference: {r['first_difference']}")

            def manin(build=build):
                return _count(manin_witness(build()), "Manin relation violations")

            checks.append((f"newton {label} N={N}", newton))
            checks.append((f"macmahon {label} N={N}", macmahon))
            checks.append((f"manin-property {label} N={N}", manin))
    return checks


def suite_classical_ff(cfg: SuiteConfig):
    from .center import family_classical_limit, family_series, ff_generator, ff_invariance_failures, linearly_independent
    from .yangian import DoubleYangian

    N = cfg.N
    D = cfg.floor(-5)
    m_max = min(cfg.get("m_max", 2), 2)
    r_max = cfg.get("r_max", 3)
    s_max = cfg.get("s_max", 2)
    n_max = cfg.window("u", (0, 2))[1]
    crit = cfg.level if cfg.level is not None else Q(-N)
    checks = []
    names = {"Phi": "phi", "Psi": "psi", "Theta": "theta"}
    for kind in ("Phi", "Psi", "Theta"):
        for m in range(1, m_max + 1):
            if kind == "Phi" and m > N:
                continue

            def fam(kind=kind, m=m):
                Y = DoubleYangian(N, crit)
                B, fails = family_series(Y, kind, m, D)
                if fails:
                    return (False, f"{len(fails)} coefficients not divisible by h^{m}")
                ff = ff_generator(N, names[kind], m, n_max)
                bad = [n for n in range(0, n_max + 1) if family_classical_limit(Y, B, m, n) != ff[n]]
                return (not bad, f"divisible by h^{m}; limits differ at u^{bad}" if bad else f"divisible by h^{m}; limits match for u^0..u^{n_max}")

            checks.append((f"family {kind} m={m}", fam))
    elements = {}
    for m in range(1, min(m_max, N) + 1):
        for r, x in ff_generator(N, "phi", m, r_max).items():
            if r >= 1:
                elements[f"phi{m}({r})"] = x

    checks.append((f"ff invariance K={qstr(crit)}", lambda: _count(ff_invariance_failures(N, elements, s_max, crit), "non-annihilated pairs")))
    checks.append(("negative-control ff at K=0", lambda: _control(ff_invariance_failures(N, elements, s_max, 0), "non-annihilated pairs at K=0")))
    checks.append(("ff linear independence", lambda: (linearly_independent(list(elements.values())), f"{len(elements)} probed generators")))
    return checks


def suite_qva(cfg: SuiteConfig):
    from .center import coefficient_states, qdet
    from .qva import (
        VacuumQVA, braided_locality_failures, center_invariant_failures, d2_failures, flip_map, locality_witness,
        noncommutative_center_witness, probe_basket, s0_failures, s1_failures, s2_failures, s3_failures,
        s_product_closure_failures, sloc_failures, strong_associativity_failures, v1_failures, v2_failures,
    )
    from .yangian import DoubleYangian

    N = cfg.N
    P = cfg.window("h", (0, 2))[1] + 1
    z_lo, z_hi = cfg.window("z", (-3, 3))
    D = cfg.floor(-4)
    checks = []
    for c in cfg.levels([-2, 0]):
        Y = DoubleYangian(N, c)
        V = VacuumQVA(Y)
        B = probe_basket(Y)
        states = list(B.values())
        singles = [B[k] for k in B if k != "vac" and "(" in k and k.count("(") == 1]
        tag = f"c={qstr(c)}"
        checks.append((f"v1 {tag}", lambda V=V, s=states: _count(v1_failures(V, s, D), "probes")))
        checks.append((f"v2 {tag}", lambda V=V, s=states: _count(v2_failures(V, s, D), "probes")))
        checks.append((f"d1 {tag}", lambda V=V: (V.translation({(): ONE}) == {}, "D vac = 0")))
        # d2 to order h^(P-1) on z in [z_lo, z_hi]: floor over the window
        d2_floor = min(D, -2 - z_hi - (P - 1))
        checks.append((f"d2 {tag}", lambda V=V, B=B, f=d2_floor: _count(
            d2_failures(V, singles + [B.get("t12(-1)t21(-1)", B["vac"])], [B["vac"]] + singles[:2], f, z_lo, z_hi), "pairs")))
        checks.append((f"s0 {tag}", lambda c=c: _count(s0_failures(N, c, P), "entries")))
        checks.append((f"s2 {tag}", lambda c=c: _count(s2_failures(N, c, P), "entries")))
        checks.append((f"s3 {tag}", lambda c=c: _count(s3_failures(N, c, P), "entries")))
        checks.append((f"s1 {tag}", lambda V=V: _count([k for v in singles[:2] for w in singles[:2] for k in s1_failures(V, v, w, -3)], "powers")))

        q = qdet(Y, D - 6)
        cs = dict(coefficient_states(q, 1))
        vac = B["vac"]
        a = singles[0]

        def sloc(V=V, cs=cs, vac=vac, a=a):
            bad = {}
            for u in (vac, cs.get(1, vac)):
                bad.update(sloc_failures(V, cs[0], a, u, D + 1, -2, 1, 1))
            return _count(bad, "coefficients")

        def assoc(V=V, cs=cs, vac=vac, a=a):
            bad = {}
            for u in (vac, cs.get(1, vac)):
                bad.update(strong_associativity_failures(V, a, cs[0], u, D + 1, 1, 1))
            return _count(bad, "coefficients")

        def braided(V=V, B=B):
            v, w = singles[0], singles[-1]
            ell = locality_witness(V, v, w, P)
            if ell is None:
                return (False, "no witness l <= 6")
            flip = braided_locality_failures(V, v, w, P, ell, 1, 1, smap=flip_map)
            return (bool(flip), f"witness l={ell}; trivial braiding fails at l={ell}: {bool(flip)}")

        def center(V=V, cs=cs, Y=Y):
            w = cs[0]
            bad = []
            if not V.is_central(w, singles, D):
                bad.append("qdet coefficient has negative powers")
            if V.is_central(B.get("t12(-1)t21(-1)", singles[0]), singles, D):
                bad.append("noncentral probe accepted")
            prod_ = V.center_product(w, cs.get(1, vac), D)
            from .envelope import add_into
            from .yangian import prune
            if prune(add_into(dict(prod_), Y.mul(w, cs.get(1, vac), D), -ONE), D):
                bad.append("(-1)-product differs from the algebra product")
            bad += s_product_closure_failures(V, w, cs.get(1, vac), D, 1, 2)
            return (not bad, "; ".join(map(str, bad)) or "membership, product and closure")

        checks.append((f"sloc {tag}", sloc))
        checks.append((f"strong-associativity {tag}", assoc))
        checks.append((f"braided-locality {tag}", braided))
        checks.append((f"center {tag}", center))

    def variant():
        Y = DoubleYangian(N, 0)
        V = VacuumQVA(Y, variant=True)
        B = probe_basket(Y)
        probes = [x for k, x in B.items() if k != "vac"]
        bad = []
        for v in probes:
            for w in B.values():
                if any(p < 0 for p in V.vertex(v, w, -3, 0, D)):
                    bad.append("negative power")
        if not all(V.is_central(x, probes, D) for x in B.values()):
            bad.append("probe not central")
        if not noncommutative_center_witness(max(N, 2)):
            bad.append("no noncommutativity witness")
        return (not bad, "; ".join(bad) or "Taylor on probes, center is everything, noncommutative")

    checks.append(("variant structure", variant))
    return checks


SUITE_FUNCS = {
    "rmatrix": suite_rmatrix,
    "fusion": suite_fusion,
    "pbw": suite_pbw,
    "critical-center": suite_critical_center,
    "noncritical-center": suite_noncritical_center,
    "manin": suite_manin,
    "classical-ff": suite_classical_ff,
    "qva-axioms": suite_qva,
}


def run_suite(name: str, cfg: SuiteConfig) -> dict:
    """Run a named suite and return the report (body plus timing metadata)."""
    if name == "all":
        names = list(SUITES)
    elif name in SUITE_FUNCS:
        names = [name]
    else:
        raise ConfigError(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}")
    results = []
    for n in names:
        for check_name, fn in SUITE_FUNCS[n](cfg):
            results.append(run_check(f"{n}/{check_name}", fn))
    results.sort(key=lambda r: r.name)
    return {
        "schema": SCHEMA,
        "suite": name,
        "config": cfg.echo(),
        "checks": [{"name": r.name, "status": r.status, "detail": r.detail} for r in results],
        "meta": {"elapsed": {r.name: round(r.elapsed, 3) for r in results}},
    }


def exit_status(report: dict, strict: bool) -> int:
    statuses = {c["status"] for c in report["checks"]}
    if "fail" in statuses:
        return 1
    if strict and "skipped-truncation" in statuses:
        return 3
    return 0


# ----------------------------------------------------------------------
# compute


def compute(entity: str, cfg: SuiteConfig, kind: str = "phi") -> dict:
    from .center import family_series, ff_generator, h_coefficient, qdet, quantum_immanant
    from .fusion import StandardTableau, fusion_idempotent, standard_tableaux
    from .yangian import DoubleYangian

    N = cfg.N
    shape = cfg.shapes[0] if cfg.shapes else None
    if entity == "g-series":
        value = [qstr(c) for c in g_coefficients(N, cfg.g_order)[1:]]
    elif entity == "idempotent":
        if shape is None:
            raise ConfigError("idempotent needs --shape")
        U = standard_tableaux(shape)[cfg.get("tableau", 0)]
        E = fusion_idempotent(U, N)
        value = {"tableau": [list(r) for r in U.rows], "dimension": N ** U.m, "entries": op_json(E)}
    elif entity in ("immanant", "qdet"):
        floor = -cfg.window("u", (0, 4))[1] - 1 if "deg" not in cfg.windows else cfg.floor(-5)
        level = cfg.level if cfg.level is not None else Q(-N)
        Y = DoubleYangian(N, level)
        if entity == "qdet":
            poly = qdet(Y, floor)
        else:
            if shape is None:
                raise ConfigError("immanant needs --shape")
            poly = quantum_immanant(Y, StandardTableau(standard_tableaux(shape)[0].rows), floor).series
        value = {"floor": floor, "coefficients": poly_json(poly)}
    elif entity in ("phi", "psi", "theta"):
        m = shape[0] if shape else 1
        level = cfg.level if cfg.level is not None else Q(-N)
        floor = cfg.floor(-5)
        Y = DoubleYangian(N, level)
        B, fails = family_series(Y, entity.capitalize(), m, floor)
        if fails:
            raise click.ClickException(f"{entity}: bracket not divisible by h^{m} within the window")
        n_max = cfg.window("u", (0, 2))[1]
        out = {}
        for n in range(0, n_max + 1):
            for p in range(0, -floor - n - m + 1):
                x = h_coefficient(B, n, p, shift=m)
                if x:
                    out[f"u^{n} h^{p}"] = elem_json(x)
        value = {"m": m, "floor": floor, "coefficients": out}
    elif entity == "ff-generator":
        m = shape[0] if shape else 1
        r_max = cfg.get("r_max", 3)
        k = kind
        gens = ff_generator(N, k, m, r_max)
        value = {"kind": k, "m": m, "coefficients": {f"u^{r}": elem_json(x) for r, x in sorted(gens.items())}}
    else:
        raise ConfigError(f"unknown entity {entity!r}; choose from {', '.join(ENTITIES)}")
    return {"schema": SCHEMA, "entity": entity, "config": cfg.echo(), "value": value}


# ----------------------------------------------------------------------
# click wiring


def _common(f):
    options = [
        click.option("--N", "N", type=int, default=2, show_default=True, help="Rank of gl_N."),
        click.option("--level", default=None, help="Level c as a rational p/q."),
        click.option("--g-order", "g_order", type=int, default=8, show_default=True, help="Order of the g-series."),
        click.option("--window", multiple=True, help="var=lo..hi, repeatable (deg, u, z, h)."),
        click.option("--shape", multiple=True, help="Partition a,b,c; repeatable."),
        click.option("--budget", multiple=True, help="key=int, repeatable (s_max, r_max, m_max, words, states)."),
        click.option("--seed", type=int, default=0, show_default=True),
        click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write the report here."),
    ]
    for opt in reversed(options):
        f = opt(f)
    return f


def _emit(obj: dict, out):
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


@click.group()
def main():
    """Exact checks for the double Yangian vacuum module and its center."""


@main.command()
@click.argument("suite")
@_common
@click.option("--strict", is_flag=True, help="Exit 3 if any check was skipped for lack of window.")
def verify(suite, N, level, g_order, window, shape, budget, seed, out, strict):
    """Run a verification suite and print a JSON report."""
    cfg = build_config(N, level, g_order, window, shape, budget, seed)
    if suite != "all" and suite not in SUITE_FUNCS:
        raise ConfigError(f"unknown suite {suite!r}; choose from {', '.join(SUITES + ('all',))}")
    report = run_suite(suite, cfg)
    _emit(report, out)
    sys.exit(exit_status(report, strict))


@main.command(name="compute")
@click.argument("entity")
@_common
@click.option("--kind", type=click.Choice(["phi", "psi", "theta"]), default="phi", show_default=True, help="Family for ff-generator.")
def compute_cmd(entity, N, level, g_order, window, shape, budget, seed, out, kind):
    """Print an exact object as JSON."""
    cfg = build_config(N, level, g_order, window, shape, budget, seed)
    _emit(compute(entity, cfg, kind), out)


if __name__ == "__main__":
    main()
