import json
import math
from fractions import Fraction

import numpy as np
import pytest

from expsieve.arith import ArithTable, FnKind, sieve_table
from expsieve.dioph import farey, realize_alpha, parse_alpha_source
from expsieve.expsum import PhaseContext
from expsieve import verify


# ------------------------------------------------------------ large sieve


def test_large_sieve_singleton_equality(tables):
    one = tables(FnKind.ONE, 100)
    rep = verify.check_large_sieve(one, [Fraction(0)])
    # lhs = N^2, rhs = N * N with delta = +infinity
    assert rep.passed
    assert rep.lhs == pytest.approx(100.0 ** 2)
    assert rep.rhs == pytest.approx(100.0 ** 2)


def test_large_sieve_random_signs():
    rng = np.random.default_rng(3)
    vals = rng.choice(np.array([-1.0, 1.0]), size=1024)
    table = ArithTable(FnKind.ONE, 1, 1024, vals)
    rep = verify.check_large_sieve(table, farey(10), delta=Fraction(1, 100))
    assert rep.passed
    assert rep.parameters["points"] == len(farey(10))


def test_large_sieve_lambda_low_fractions(tables):
    lam = tables(FnKind.VON_MANGOLDT, 10 ** 4)
    pts = [Fraction(a, q) for q in range(1, 21) for a in range(q)
           if math.gcd(a, q) == 1]
    rep = verify.check_large_sieve(lam, pts)
    assert rep.passed


def test_large_sieve_separation_violated(tables):
    one = tables(FnKind.ONE, 100)
    with pytest.raises(ValueError, match="separation violated"):
        verify.check_large_sieve(one, [Fraction(0), Fraction(1, 100)],
                                 delta=Fraction(1, 10))


# ------------------------------------------------------- window transform


def test_window_transform_beta_zero(tables, contexts):
    x, y = 5000, 37
    lam = tables(FnKind.VON_MANGOLDT, x)
    rep = verify.check_window_transform(lam, contexts("golden"), x, y,
                                        Fraction(0))
    assert rep.passed
    # at beta = 0 both sides equal y * |F(x; alpha)|
    from expsieve.expsum import expsum_full
    want = y * abs(expsum_full(lam, contexts("golden"), x))
    assert rep.lhs == pytest.approx(want, rel=1e-9)


def test_window_transform_hand_enumeration():
    # f = 1, alpha = 0, x = 5, y = 2, beta = 1/3: both sides equal 1
    one = sieve_table(FnKind.ONE, 1, 5)
    ctx = PhaseContext.from_fraction(Fraction(0))
    rep = verify.check_window_transform(one, ctx, 5, 2, Fraction(1, 3))
    assert rep.passed
    assert rep.lhs == pytest.approx(1.0, abs=1e-12)
    assert rep.rhs == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("beta", [Fraction(1, 3), Fraction(7, 23),
                                  Fraction(-2, 11), Fraction(355, 452)])
def test_window_transform_lambda(tables, contexts, beta):
    x, y = 10 ** 4, 50
    lam = tables(FnKind.VON_MANGOLDT, x)
    rep = verify.check_window_transform(lam, contexts("sqrt:2"), x, y, beta)
    assert rep.passed


def test_window_transform_million_validates_sliding_drift(tables, contexts):
    # the left side runs through the sliding/resync path over 1e6 windows,
    # the right side is a single direct sum, so agreement at 1e-6 bounds
    # the accumulated sliding drift at full scale
    x, y = 10 ** 6, 50
    lam = tables(FnKind.VON_MANGOLDT, x)
    rep = verify.check_window_transform(lam, contexts("golden"), x, y,
                                        Fraction(7, 23))
    assert rep.passed


def test_window_transform_zero_function(contexts):
    zero = ArithTable(FnKind.ONE, 1, 64, np.zeros(64))
    rep = verify.check_window_transform(zero, contexts("golden"), 64, 5,
                                        Fraction(1, 7))
    assert rep.passed and rep.lhs == 0 and rep.rhs == 0


# ---------------------------------------------------------- initial chain


def test_initial_chain_zero_function(contexts):
    zero = ArithTable(FnKind.VON_MANGOLDT, 1, 256, np.zeros(256))
    rep = verify.check_initial_chain(zero, contexts("golden"), 256, 9, 11)
    assert rep.passed
    assert rep.lhs == 0 and rep.rhs == 0 and rep.parameters["A"] == 0


def test_initial_chain_lambda(tables, contexts):
    x, y, Q = 10 ** 4, 21, 21
    lam = tables(FnKind.VON_MANGOLDT, x)
    rep = verify.check_initial_chain(lam, contexts("golden"), x, y, Q)
    assert rep.passed
    assert rep.lhs >= rep.rhs >= rep.parameters["A"] >= 0
    assert rep.parameters["measured_constant"] > 0


def test_initial_chain_constant_function_near_half(tables):
    # alpha = 1/2 + 1e-6: the arc set may be tiny but the chain still holds
    ctx = PhaseContext.from_fraction(Fraction(1, 2) + Fraction(1, 10 ** 6))
    one = tables(FnKind.ONE, 10 ** 4)
    rep = verify.check_initial_chain(one, ctx, 10 ** 4, 50, 90)
    assert rep.passed


def test_initial_chain_q_cap(tables, contexts):
    lam = tables(FnKind.VON_MANGOLDT, 100)
    with pytest.raises(ValueError, match="exceeds sqrt"):
        verify.check_initial_chain(lam, contexts("golden"), 100, 5, 11)


# ---------------------------------------------------------- coprime count


def test_coprime_count_cases(alphas):
    s2 = alphas("sqrt:2")
    rep = verify.check_coprime_count(210, 10, s2)
    assert rep.passed
    assert rep.rhs == pytest.approx(48 / 30)
    rep1 = verify.check_coprime_count(1, 10, s2)
    assert rep1.passed
    # primes much larger than y stay within 4 * 2 of (p-1)/(3y)
    for p in (211, 1009, 4001, 9973):
        rep = verify.check_coprime_count(p, 10, s2)
        assert rep.passed
        assert abs(rep.lhs - rep.rhs) <= 4 * 2


# --------------------------------------------------------------- goal-g


def test_goal_g_reports_ratio():
    rep = verify.check_goal_g(1000, 0.5)
    assert rep.passed and rep.ratio > 0.5


def test_goal_g_full_range_classical_inequality(tables):
    # sum_{q<=Q} mu^2(q)/phi(q) >= log Q, checked cumulatively to 1e6
    Q = 10 ** 6
    mu = tables(FnKind.MOEBIUS, Q).values
    phi = tables(FnKind.EULER_PHI, Q).values
    csum = np.cumsum(mu * mu / phi)
    qs = np.arange(1, Q + 1, dtype=np.float64)
    assert np.all(csum >= np.log(qs))


def test_goal_g_epsilon_one_recovers_full_range():
    rep_small = verify.check_goal_g(4096, 0.999999)
    rep_full = verify.check_goal_g(4096, 0.5)
    assert rep_small.passed
    assert rep_small.lhs >= rep_full.lhs  # wider q-range, larger sum


def test_goal_g_validation():
    with pytest.raises(ValueError):
        verify.check_goal_g(8, 0.5)
    with pytest.raises(ValueError):
        verify.check_goal_g(100, 1.5)


# ------------------------------------------------------------ bv average


def test_bv_average_q1(tables):
    x = 1000
    lam = tables(FnKind.VON_MANGOLDT, x)
    rep = verify.bv_average(x, 1, table=lam)
    assert rep.passed  # data-only, always true
    assert rep.lhs == pytest.approx(abs(float(lam.values.sum()) - x), rel=1e-9)


def test_bv_average_monotone_in_Q(tables):
    x = 10 ** 4
    lam = tables(FnKind.VON_MANGOLDT, x)
    values = [verify.bv_average(x, Q, table=lam).lhs for Q in (1, 3, 5, 10, 21)]
    assert all(a <= b + 1e-9 for a, b in zip(values, values[1:]))


def test_bv_average_cross_check_direct(tables):
    # x = 1e3, Q = 5 against per-fraction direct sums
    x, Q = 1000, 5
    lam = tables(FnKind.VON_MANGOLDT, x)
    from expsieve.arith import eval_kind
    from expsieve.expsum import expsum_full
    B = 0.0
    for q in range(1, Q + 1):
        main = eval_kind(FnKind.MOEBIUS, q) / eval_kind(FnKind.EULER_PHI, q) * x
        worst = 0.0
        for a in range(q if q > 1 else 1):
            if math.gcd(a, q) != 1:
                continue
            F = expsum_full(lam, PhaseContext.from_fraction(Fraction(a, q)), x)
            worst = max(worst, abs(F - main))
        B += worst
    rep = verify.bv_average(x, Q, table=lam)
    assert rep.lhs == pytest.approx(B, rel=1e-9)
    assert "B_norm_log2" in rep.parameters


def test_bv_average_caps():
    with pytest.raises(ValueError, match="exceeds"):
        verify.bv_average(1000, 11)


# ----------------------------------------------------- gauss decomposition


def test_grh_decomposition_trivial_modulus(tables):
    lam = tables(FnKind.VON_MANGOLDT, 100)
    rep = verify.check_grh_decomposition(lam, 1, 0, 100)
    assert rep.passed
    assert rep.lhs == pytest.approx(float(lam.values.sum()), rel=1e-12)


def test_grh_decomposition_small(tables):
    lam = tables(FnKind.VON_MANGOLDT, 100)
    rep = verify.check_grh_decomposition(lam, 4, 1, 100, tol=1e-8)
    assert rep.passed


def test_grh_decomposition_composite(tables):
    lam = tables(FnKind.VON_MANGOLDT, 10 ** 5)
    rep = verify.check_grh_decomposition(lam, 105, 2, 10 ** 5)
    assert rep.passed
    assert rep.parameters["corr_abs"] > 0  # prime-power correction is real


def test_grh_decomposition_rejects_non_coprime(tables):
    lam = tables(FnKind.VON_MANGOLDT, 100)
    with pytest.raises(ValueError, match="coprime"):
        verify.check_grh_decomposition(lam, 6, 3, 100)


# ---------------------------------------------------------- tau rational


def test_tau_rational_dirichlet_q1(tables):
    tau = tables(FnKind.DIVISOR, 10 ** 6)
    reps = verify.check_tau_rational(10 ** 6, [1], table=tau)
    assert reps[0].passed
    assert reps[0].parameters["normalized"] <= 1.0


def test_tau_rational_small_grid(tables):
    tau = tables(FnKind.DIVISOR, 10 ** 4)
    reps = verify.check_tau_rational(10 ** 4, [1, 2, 3, 5, 10, 50, 100],
                                     table=tau)
    assert all(r.passed for r in reps)


def test_tau_rational_guard(tables):
    tau = tables(FnKind.DIVISOR, 100)
    with pytest.raises(ValueError, match="exceeds sqrt"):
        verify.check_tau_rational(100, [11], table=tau)


# -------------------------------------------------------------- hyperbola


def test_hyperbola_sixteen():
    rep = verify.check_hyperbola(16, Fraction(0, 1))
    assert rep.passed
    assert rep.lhs == pytest.approx(50.0)
    assert rep.rhs == pytest.approx(50.0)


def test_hyperbola_third(tables):
    rep = verify.check_hyperbola(10 ** 4, Fraction(1, 3),
                                 table=tables(FnKind.DIVISOR, 10 ** 4))
    assert rep.passed


def test_hyperbola_square_term_bounded(tables):
    rep = verify.check_hyperbola(10 ** 4, Fraction(3, 7),
                                 table=tables(FnKind.DIVISOR, 10 ** 4))
    assert rep.passed
    assert rep.parameters["E_abs"] <= math.sqrt(10 ** 4)


# --------------------------------------------------------- sup lower bound


def test_sup_lower_bound_zero(contexts):
    zero = ArithTable(FnKind.VON_MANGOLDT, 1, 64, np.zeros(64))
    rep = verify.check_sup_lower_bound(zero, contexts("golden"), 64, 8)
    assert rep.passed


def test_sup_lower_bound_lambda_irrational(tables, contexts):
    lam = tables(FnKind.VON_MANGOLDT, 10 ** 4)
    rep = verify.check_sup_lower_bound(lam, contexts("golden"), 10 ** 4, 21)
    assert rep.passed


def test_sup_lower_bound_lambda_rational(tables):
    lam = tables(FnKind.VON_MANGOLDT, 10 ** 4)
    ctx = PhaseContext.from_fraction(Fraction(1, 5))
    rep = verify.check_sup_lower_bound(lam, ctx, 10 ** 4, 21)
    assert rep.passed
    assert rep.parameters["sup"] > 1000  # rational phase gives a large sup


# --------------------------------------------------------- pi psi window


def test_pi_psi_window_no_prime_powers(tables, contexts):
    lam = tables(FnKind.VON_MANGOLDT, 10 ** 4)
    pri = tables(FnKind.PRIME_INDICATOR, 10 ** 4)
    # (115, 118] = {116, 117, 118}: no primes, no prime powers, so D = 0
    rep = verify.check_pi_psi_window(lam, pri, contexts("sqrt:2"),
                                     10 ** 4, 3, [115])
    assert rep.passed and rep.lhs < 1e-9


def test_pi_psi_window_zero_phase(tables):
    x, y = 10 ** 5, 100
    lam = tables(FnKind.VON_MANGOLDT, x)
    pri = tables(FnKind.PRIME_INDICATOR, x)
    ctx = PhaseContext.from_fraction(Fraction(0))
    grid = list(range(10 ** 4, x, 7919))
    rep = verify.check_pi_psi_window(lam, pri, ctx, x, y, grid)
    assert rep.passed


def test_pi_psi_window_sqrt2(tables, contexts):
    x, y = 10 ** 5, 100
    lam = tables(FnKind.VON_MANGOLDT, x)
    pri = tables(FnKind.PRIME_INDICATOR, x)
    grid = sorted({int(v) for v in np.linspace(y * y, x - 1, 32)})
    rep = verify.check_pi_psi_window(lam, pri, contexts("sqrt:2"), x, y, grid)
    assert rep.passed
    assert rep.lhs >= 0


def test_pi_psi_window_grid_guard(tables, contexts):
    lam = tables(FnKind.VON_MANGOLDT, 100)
    pri = tables(FnKind.PRIME_INDICATOR, 100)
    with pytest.raises(ValueError, match="precondition"):
        verify.check_pi_psi_window(lam, pri, contexts("sqrt:2"), 100, 10, [50])


# ----------------------------------------------------------- report shape


def test_report_json_line():
    rep = verify.check_goal_g(1000, 0.5)
    data = json.loads(rep.to_json_line())
    assert data["check_name"] == "goal-g"
    assert set(data) == {"check_name", "parameters", "lhs", "rhs", "ratio",
                         "passed", "tolerance_used"}
    assert data["passed"] is True


def test_report_ratio_none_when_rhs_zero(contexts):
    zero = ArithTable(FnKind.ONE, 1, 32, np.zeros(32))
    rep = verify.check_initial_chain(zero, contexts("golden"), 32, 4, 5)
    assert rep.ratio is None


def test_write_jsonl(tmp_path):
    reps = [verify.check_goal_g(1000, 0.5), verify.check_goal_g(1024, 0.25)]
    path = tmp_path / "reports.jsonl"
    with open(path, "w") as fh:
        verify.write_jsonl(reps, fh)
    lines = path.read_text().strip().split("\n")
    assert len(lines) == 2
    assert all(json.loads(line)["check_name"] == "goal-g" for line in lines)
