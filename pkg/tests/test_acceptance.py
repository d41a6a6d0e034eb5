"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line
and asserting both the correctness condition and the runtime budget.

Run with `pytest tests/test_acceptance.py -v -s` to see the verdict lines.
"""

import math
import time
from fractions import Fraction

import numpy as np
import pytest

from expsieve import verify
from expsieve.arith import ArithTable, FnKind, eval_kind, sieve_table
from expsieve.characters import build_characters, gauss_sum
from expsieve.cli import ExperimentConfig, run_scaling_lambda
from expsieve.dioph import farey, parse_alpha_source, realize_alpha
from expsieve.expsum import (
    PhaseContext,
    expsum_at_rational,
    expsum_full,
    window_l2_average,
)

SEED = 20250810


def _verdict(num, name, ok, t0, budget):
    elapsed = time.perf_counter() - t0
    print(f"\nACCEPTANCE {num} {name}: {'PASS' if ok else 'FAIL'} "
          f"({elapsed:.1f}s, budget {budget:.0f}s)")
    assert ok, f"criterion {num} ({name}) failed"
    assert elapsed < budget, f"runtime {elapsed:.1f}s over budget {budget}s"


def test_criterion_1_sieve_oracle():
    t0 = time.perf_counter()
    n_max = 10 ** 4
    kinds = [FnKind.VON_MANGOLDT, FnKind.DIVISOR, FnKind.MOEBIUS,
             FnKind.EULER_PHI, FnKind.OMEGA_DISTINCT]
    tabs = {k: sieve_table(k, 1, n_max) for k in kinds}
    ok = True
    for n in range(1, n_max + 1):
        for kind in kinds:
            got = tabs[kind].values[n - 1]
            want = eval_kind(kind, n)
            if kind == FnKind.VON_MANGOLDT:
                ok = ok and abs(got - want) <= 1e-12
            else:
                ok = ok and got == want
    _verdict(1, "sieve oracle equivalence", ok, t0, 5)


def test_criterion_2_sum_oracles(tables, contexts):
    t0 = time.perf_counter()
    rng = np.random.default_rng(SEED)
    kinds = [FnKind.VON_MANGOLDT, FnKind.DIVISOR, FnKind.MOEBIUS]
    tabs = {k: tables(k, 10 ** 6) for k in kinds}
    worst_rational = 0.0
    for i in range(200):
        q = int(rng.integers(1, 1001))
        x = int(round(10 ** rng.uniform(3, 6)))
        a = int(rng.integers(0, q))
        frac = Fraction(a, q)
        table = tabs[kinds[i % 3]]
        v_res = expsum_at_rational(table, frac, x)
        v_full = expsum_full(table, PhaseContext.from_fraction(frac), x)
        rel = abs(v_res - v_full) / max(abs(v_res), abs(v_full), 1.0)
        worst_rational = max(worst_rational, rel)
    worst_window = 0.0
    for i in range(50):
        x = int(rng.integers(100, 10001))
        y = int(rng.integers(1, min(x, max(2, 10 ** 7 // x)) + 1))
        table = tabs[kinds[i % 3]]
        name = ("golden", "sqrt:2", "e")[i % 3]
        ctx = contexts(name)
        got = window_l2_average(table, ctx, x, y).S
        vals = table.slice(1, x)
        unit = ctx.unit(1, x)
        c = vals * unit
        total = 0.0
        for n in range(1 - y, x + 1):
            lo, hi = max(n + 1, 1), min(n + y, x)
            w = c[lo - 1:hi].sum() if hi >= lo else 0.0
            total += abs(w) ** 2
        want = total / x
        worst_window = max(worst_window,
                           abs(got - want) / max(want, 1e-12))
    ok = worst_rational <= 1e-8 and worst_window <= 1e-6
    print(f"\n  worst rational-vs-full rel: {worst_rational:.3e}; "
          f"worst window-vs-oracle rel: {worst_window:.3e}")
    _verdict(2, "sum oracle equivalence", ok, t0, 120)


def test_criterion_3_exact_identities(tables, contexts):
    t0 = time.perf_counter()
    ok = True
    lam4 = tables(FnKind.VON_MANGOLDT, 10 ** 4)
    tau4 = tables(FnKind.DIVISOR, 10 ** 4)
    lam5 = tables(FnKind.VON_MANGOLDT, 10 ** 5)
    # window transform
    for table, name in ((lam4, "golden"), (lam4, "sqrt:2"), (tau4, "e")):
        for beta in (Fraction(0), Fraction(1, 3), Fraction(7, 23),
                     Fraction(-2, 11)):
            for y in (21, 50):
                rep = verify.check_window_transform(table, contexts(name),
                                                    10 ** 4, y, beta)
                ok = ok and rep.passed
    # hyperbola split
    for x, frac in ((16, Fraction(0, 1)), (10 ** 4, Fraction(1, 3)),
                    (10 ** 5, Fraction(3, 7))):
        table = tables(FnKind.DIVISOR, max(x, 16))
        rep = verify.check_hyperbola(x, frac, table=table)
        ok = ok and rep.passed
    # additive-character decomposition with exact correction
    for q, a, x, table in ((1, 0, 1000, lam4), (4, 1, 100, lam4),
                           (12, 5, 10 ** 4, lam4), (105, 2, 10 ** 5, lam5),
                           (1009, 10, 10 ** 5, lam5)):
        rep = verify.check_grh_decomposition(table, q, a, x)
        ok = ok and rep.passed
    # additive reconstruction from multiplicative characters, all q <= 200;
    # the identity depends only on a*n mod q, so checking every coprime
    # residue covers every coprime (a, n) pair
    for q in range(1, 201):
        tab = build_characters(q)
        rows = np.array([tab.chi_row(i) for i in range(tab.char_count)])
        gs = np.array([gauss_sum(tab, tab.conj_index(i))
                       for i in range(tab.char_count)])
        vec = (gs[:, None] * rows).sum(axis=0) / tab.char_count
        r = np.arange(max(q, 1))
        mask = np.gcd(r, q) == 1
        want = np.exp(2j * np.pi * r / q) if q > 1 else np.ones(1)
        ok = ok and np.max(np.abs(vec[mask] - want[mask])) <= 1e-6
    _verdict(3, "exact-identity suite", ok, t0, 180)


def test_criterion_4_theorem_suite(tables, contexts):
    t0 = time.perf_counter()
    rng = np.random.default_rng(SEED)
    ok = True
    # 1000 randomized large-sieve instances
    farey_sets = {k: farey(k) for k in range(3, 13)}
    for i in range(1000):
        N = int(rng.integers(16, 4097))
        M = int(rng.integers(0, 2048))
        if i % 2:
            vals = rng.choice(np.array([-1.0, 1.0]), size=N)
        else:
            vals = rng.normal(size=N) * float(rng.uniform(0.5, 4.0))
        table = ArithTable(FnKind.ONE, M + 1, M + N, vals)
        if i % 2:
            pts = farey_sets[int(rng.integers(3, 13))]
        else:
            pts = sorted({Fraction(int(a), int(q)) % 1
                          for a, q in zip(rng.integers(0, 64, 12),
                                          rng.integers(1, 64, 12))})
        rep = verify.check_large_sieve(table, pts)
        ok = ok and rep.passed
    # inequality chain and sup bound on the alpha/x/theta grid
    lam = {x: tables(FnKind.VON_MANGOLDT, x) for x in (10 ** 4, 10 ** 5, 10 ** 6)}
    for name in ("golden", "sqrt:2", "e"):
        for x in (10 ** 4, 10 ** 5, 10 ** 6):
            for theta in (0.25, 0.30):
                y = max(1, int(x ** theta))
                Q = max(2, int(round(x ** (1 / 3))))
                rep = verify.check_initial_chain(lam[x], contexts(name), x, y, Q)
                ok = ok and rep.passed
                rep = verify.check_sup_lower_bound(lam[x], contexts(name), x, y)
                ok = ok and rep.passed
    _verdict(4, "theorem-as-test suite", ok, t0, 600)


def test_criterion_5_gauss_facts():
    t0 = time.perf_counter()
    ok = True
    worst_mu = 0.0
    for q in range(1, 10 ** 4 + 1):
        tab = build_characters(q)
        diff = abs(gauss_sum(tab, tab.principal_index)
                   - eval_kind(FnKind.MOEBIUS, q))
        worst_mu = max(worst_mu, diff)
    ok = ok and worst_mu <= 1e-9
    worst_prim = 0.0
    from expsieve.arith import small_primes
    for p in small_primes(200):
        tab = build_characters(int(p))
        for i in range(1, tab.char_count):
            worst_prim = max(worst_prim,
                             abs(abs(gauss_sum(tab, i)) - math.sqrt(p)))
    ok = ok and worst_prim <= 1e-8
    print(f"\n  worst |G(chi0)-mu(q)|: {worst_mu:.3e}; "
          f"worst ||G|-sqrt(p)|: {worst_prim:.3e}")
    _verdict(5, "gauss-sum facts", ok, t0, 60)


def test_criterion_6_divisor_asymptotic(tables):
    t0 = time.perf_counter()
    rng = np.random.default_rng(SEED)
    ok = True
    worst = 0.0
    for x in (10 ** 4, 10 ** 5, 10 ** 6):
        table = tables(FnKind.DIVISOR, x)
        q_hi = min(100, math.isqrt(x))
        reps = verify.check_tau_rational(x, range(1, q_hi + 1), table=table,
                                         rng=rng)
        for rep in reps:
            ok = ok and rep.passed
            worst = max(worst, rep.parameters["normalized"])
    print(f"\n  worst normalized divisor-sum error: {worst:.3f} (ceiling 10)")
    _verdict(6, "divisor asymptotic", ok, t0, 300)


def test_criterion_7_scaling_floor(tmp_path):
    t0 = time.perf_counter()
    min_ratio = math.inf
    for name in ("golden", "sqrt:2"):
        cfg = ExperimentConfig(
            alpha_source=parse_alpha_source(name),
            x_grid=[10 ** 4, 10 ** 5, 10 ** 6],
            y_rule=("power", 0.28),
            seed=SEED,
            out_path=str(tmp_path / f"scaling_{name.replace(':', '')}.csv"),
        )
        rows = run_scaling_lambda(cfg)
        assert len(rows) == 3
        min_ratio = min(min_ratio, min(r.ratio for r in rows))
    ok = min_ratio > 0.05
    print(f"\n  min S/(y log x) over the grid: {min_ratio:.4f} (floor 0.05); "
          f"CSVs archived under {tmp_path}")
    _verdict(7, "scaling measurement floor", ok, t0, 600)


def test_criterion_8_determinism(tmp_path):
    t0 = time.perf_counter()

    def run(path):
        cfg = ExperimentConfig(
            alpha_source=parse_alpha_source("sqrt:2"),
            x_grid=[1000, 10 ** 4],
            y_rule=("power", 0.28),
            seed=SEED,
            out_path=str(path),
        )
        run_scaling_lambda(cfg)
        lines = open(path).read().strip().split("\n")
        return [line.rsplit(",", 1)[0] for line in lines]  # drop wall_time

    ok = run(tmp_path / "run1.csv") == run(tmp_path / "run2.csv")
    _verdict(8, "CSV determinism", ok, t0, 60)
