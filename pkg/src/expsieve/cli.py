"""Experiment driver and command-line interface.

Subcommands: sieve, expsum, window-avg, dioph, major-arcs, verify, and
experiment.  Experiments read a TOML config (flags override) and write a
fixed-schema CSV; re-running with the same config and seed reproduces the
CSV byte for byte apart from the wall-time column.

Exit codes: 0 success, 1 any failed check, 2 config/usage error.
"""

import argparse
import math
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

try:
    import tomllib
except ModuleNotFoundError:  # python 3.10
    import tomli as tomllib

import numpy as np

from . import verify
from .arith import ArithTable, FnKind, parse_kind, sieve_table, write_cache
from .backend import active_backend, set_num_threads
from .dioph import (
    AlphaSource,
    _quotient_stream,
    admissible_window,
    approx_quality,
    continued_fraction,
    farey,
    major_arcs,
    parse_alpha_source,
    realize_alpha,
)
from .expsum import (
    RESYNC_DEFAULT,
    PhaseContext,
    expsum_at_rational,
    expsum_full,
    prefix_sups,
    window_l2_average,
)

CSV_HEADER = "x,y,Q,S,normalizer,ratio,sup_prefix,R,wall_time_seconds"

THETA_LAMBDA_DEFAULT = 1 / 3 - 0.05
EPS_PRIME_DEFAULT = Fraction(1, 24)
EPS_DEFAULT = 0.05
BIG_C_DEFAULT = 10.0


class ConfigError(Exception):
    pass


@dataclass
class ExperimentConfig:
    alpha_source: AlphaSource = field(default_factory=lambda: AlphaSource("golden"))
    fn_kind: FnKind = FnKind.VON_MANGOLDT
    x_grid: list = field(default_factory=lambda: [10_000, 100_000])
    y_rule: tuple = ("power", THETA_LAMBDA_DEFAULT)
    q_rule: tuple = ("power", 1 / 3)
    resync: int = RESYNC_DEFAULT
    threads: int = 1
    seed: int = 0
    out_path: str = "experiment.csv"
    eps: float = EPS_DEFAULT
    big_c: float = BIG_C_DEFAULT

    def validate(self):
        if any(x < 2 for x in self.x_grid):
            raise ConfigError("x_grid entries must be >= 2")
        if any(b <= a for a, b in zip(self.x_grid, self.x_grid[1:])):
            raise ConfigError("x_grid must be strictly increasing")
        kind, val = self.y_rule
        if kind == "power" and not 0 < val < 1:
            raise ConfigError(f"y_rule theta must lie in (0,1), got {val}")
        if kind == "convergent" and not 0 < Fraction(val) <= Fraction(1, 12):
            raise ConfigError("eps_prime must lie in (0, 1/12]")
        qk, qv = self.q_rule
        if qk == "power" and not 0 < qv < 1:
            raise ConfigError(f"q_rule theta must lie in (0,1), got {qv}")
        if qk == "fixed" and qv < 1:
            raise ConfigError("fixed Q must be >= 1")
        if self.resync < 1 or self.threads < 1:
            raise ConfigError("resync and threads must be >= 1")
        return self


def _parse_rule(node, which):
    if node is None:
        return None
    kind = node.get("kind")
    if which == "y":
        if kind == "power":
            return ("power", float(node["theta"]))
        if kind == "convergent":
            return ("convergent", Fraction(str(node["eps_prime"])))
    else:
        if kind == "power":
            return ("power", float(node["theta"]))
        if kind == "fixed":
            return ("fixed", int(node["value"]))
    raise ConfigError(f"bad {which}_rule: {node!r}")


def load_config(path) -> ExperimentConfig:
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except (OSError, tomllib.TOMLDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    exp = data.get("experiment", {})
    cfg = ExperimentConfig()
    try:
        if "alpha" in exp:
            cfg.alpha_source = parse_alpha_source(str(exp["alpha"]))
        if "kind" in exp:
            cfg.fn_kind = parse_kind(str(exp["kind"]))
        if "x_grid" in exp:
            cfg.x_grid = [int(v) for v in exp["x_grid"]]
        y_rule = _parse_rule(exp.get("y_rule"), "y")
        if y_rule:
            cfg.y_rule = y_rule
        q_rule = _parse_rule(exp.get("q_rule"), "q")
        if q_rule:
            cfg.q_rule = q_rule
        for key, attr in (("resync", "resync"), ("threads", "threads"),
                          ("seed", "seed")):
            if key in exp:
                setattr(cfg, attr, int(exp[key]))
        if "out" in exp:
            cfg.out_path = str(exp["out"])
        if "eps" in exp:
            cfg.eps = float(exp["eps"])
        if "C" in exp:
            cfg.big_c = float(exp["C"])
    except (KeyError, ValueError, TypeError) as exc:
        raise ConfigError(f"bad config value: {exc}") from exc
    return cfg.validate()


@dataclass
class ResultRow:
    x: int
    y: int
    Q: int
    S: float
    normalizer: float
    ratio: float
    sup_prefix: float
    R: float
    wall_time_seconds: float

    def to_csv_line(self) -> str:
        return (
            f"{self.x},{self.y},{self.Q},{self.S!r},{self.normalizer!r},"
            f"{self.ratio!r},{self.sup_prefix!r},{self.R!r},"
            f"{self.wall_time_seconds:.6f}"
        )


def write_rows_csv(rows, path) -> None:
    with open(path, "w") as fh:
        fh.write(CSV_HEADER + "\n")
        for row in rows:
            fh.write(row.to_csv_line() + "\n")


def _phase_floor(x_max: int) -> int:
    # realization denominator >= x^2 keeps every phase within 2pi/x of truth
    return max(2, x_max * x_max)


def _prepare(cfg: ExperimentConfig, kind: FnKind, x_max: int):
    alpha = realize_alpha(cfg.alpha_source, _phase_floor(x_max))
    ctx = PhaseContext(alpha)
    table = sieve_table(kind, 1, x_max)
    return alpha, ctx, table


def run_scaling_lambda(cfg: ExperimentConfig):
    """Windowed L2 average of the von Mangoldt sum against y*log(x)."""
    if cfg.fn_kind != FnKind.VON_MANGOLDT:
        raise ConfigError("scaling-lambda requires the von Mangoldt function")
    rule, theta = cfg.y_rule
    if rule != "power" or theta > 1 / 3:
        raise ConfigError("scaling-lambda needs y_rule power with theta <= 1/3")
    rows = []
    if cfg.x_grid:
        alpha, ctx, table = _prepare(cfg, cfg.fn_kind, max(cfg.x_grid))
        for x in cfg.x_grid:
            t0 = time.perf_counter()
            y = max(1, int(x ** theta))
            avg = window_l2_average(table, ctx, x, y, cfg.resync)
            sup, _ = prefix_sups(table, ctx, x)
            R, _ = approx_quality(alpha, x)
            norm = y * math.log(x)
            rows.append(ResultRow(x, y, 0, avg.S, norm, avg.S / norm, sup,
                                  float(R), time.perf_counter() - t0))
    write_rows_csv(rows, cfg.out_path)
    return rows


def _tau_window_for(cfg: ExperimentConfig, x: int):
    """Largest convergent denominator s with floor(s^2/12) <= Y(x); returns
    (s, y, Y) or None when no window fits."""
    llx = math.log(math.log(x))
    Y = x * (llx / (cfg.big_c * math.log(x))) ** 2
    if Y < 1:
        return None
    eps_prime = cfg.y_rule[1]
    best = None
    p0, q0, p1, q1 = 1, 0, 0, 1
    for a in _quotient_stream(cfg.alpha_source):
        p0, q0, p1, q1 = a * p0 + p1, a * q0 + q1, p0, q0
        y = q0 * q0 // 12
        if y > Y:
            break
        if y >= 1 and Fraction(eps_prime) * q0 * q0 <= y:
            best = (q0, y, Y)
        if q0 > x:
            break
    return best


def run_scaling_tau(cfg: ExperimentConfig):
    """Windowed L2 average of the divisor sum against
    y * log(x/y)^2 * log(Y/y), window size from a convergent denominator."""
    if cfg.fn_kind != FnKind.DIVISOR:
        raise ConfigError("scaling-tau requires the divisor function")
    if cfg.y_rule[0] != "convergent":
        raise ConfigError("scaling-tau needs y_rule convergent (eps_prime)")
    if cfg.alpha_source.kind == "rational":
        raise ConfigError("scaling-tau needs a non-rational alpha")
    rows = []
    if cfg.x_grid:
        alpha, ctx, table = _prepare(cfg, cfg.fn_kind, max(cfg.x_grid))
        for x in cfg.x_grid:
            t0 = time.perf_counter()
            sel = _tau_window_for(cfg, x)
            if sel is None:
                print(f"scaling-tau: x={x} skipped (no admissible window)",
                      file=sys.stderr)
                continue
            s, y, Y = sel
            if y >= Y:
                print(f"scaling-tau: x={x} skipped (y={y} >= Y={Y:.3g})",
                      file=sys.stderr)
                continue
            avg = window_l2_average(table, ctx, x, y, cfg.resync)
            sup, _ = prefix_sups(table, ctx, x)
            R, _ = approx_quality(alpha, x)
            norm = y * math.log(x / y) ** 2 * math.log(Y / y)
            rows.append(ResultRow(x, y, 0, avg.S, norm, avg.S / norm, sup,
                                  float(R), time.perf_counter() - t0))
    write_rows_csv(rows, cfg.out_path)
    return rows


def run_sup_growth(cfg: ExperimentConfig):
    """Prefix supremum growth: sup_{n<=x} |F(n; alpha)| against x^(1/6-eps),
    and along the convergent-driven sequence x = y^(9/5+eps), y = s^2/12,
    against x^(5/18-eps)."""
    if cfg.fn_kind != FnKind.VON_MANGOLDT:
        raise ConfigError("sup-growth requires the von Mangoldt function")
    eps = cfg.eps
    convergent_mode = cfg.y_rule[0] == "convergent"
    if convergent_mode:
        if cfg.alpha_source.kind == "rational":
            raise ConfigError("convergent-driven sup-growth needs irrational alpha")
        x_lo, x_hi = min(cfg.x_grid), max(cfg.x_grid)
        pairs = []
        p0, q0, p1, q1 = 1, 0, 0, 1
        for a in _quotient_stream(cfg.alpha_source):
            p0, q0, p1, q1 = a * p0 + p1, a * q0 + q1, p0, q0
            y = q0 * q0 // 12
            if y < 1:
                continue
            x = int(y ** (9 / 5 + eps))
            if x > x_hi:
                break
            if x >= max(x_lo, 3) and y <= x:
                pairs.append((x, y))
    else:
        theta = cfg.y_rule[1]
        pairs = [(x, max(1, int(x ** theta))) for x in cfg.x_grid]
    rows = []
    if pairs:
        x_max = max(x for x, _ in pairs)
        alpha, ctx, table = _prepare(cfg, cfg.fn_kind, x_max)
        for x, y in pairs:
            t0 = time.perf_counter()
            sup, _ = prefix_sups(table, ctx, x)
            avg = window_l2_average(table, ctx, x, y, cfg.resync)
            R, _ = approx_quality(alpha, x)
            norm = y * math.log(x)
            rows.append(ResultRow(x, y, 0, avg.S, norm, avg.S / norm, sup,
                                  float(R), time.perf_counter() - t0))
            line = f"x={x} y={y} sup={sup:.6g} sup/x^(1/6-eps)={sup / x ** (1 / 6 - eps):.6g}"
            if convergent_mode:
                line += f" sup/x^(5/18-eps)={sup / x ** (5 / 18 - eps):.6g}"
            print(line)
    write_rows_csv(rows, cfg.out_path)
    return rows


def run_vinogradov_envelope(cfg: ExperimentConfig):
    """|F(x; alpha)| against the envelope x^(1+eps)/sqrt(R) + x^(4/5+eps),
    R the approximation quality of alpha at x.  Data only."""
    if cfg.fn_kind != FnKind.VON_MANGOLDT:
        raise ConfigError("vinogradov-envelope requires the von Mangoldt function")
    eps = cfg.eps
    rows = []
    if cfg.x_grid:
        alpha, ctx, table = _prepare(cfg, cfg.fn_kind, max(cfg.x_grid))
        for x in cfg.x_grid:
            t0 = time.perf_counter()
            F = abs(expsum_full(table, ctx, x))
            R, _ = approx_quality(alpha, x)
            envelope = x ** (1 + eps) / math.sqrt(float(R)) + x ** (0.8 + eps)
            sup, _ = prefix_sups(table, ctx, x)
            rows.append(ResultRow(x, 0, 0, F, envelope, F / envelope, sup,
                                  float(R), time.perf_counter() - t0))
            print(f"x={x} |F|={F:.6g} R={float(R):.6g} ratio={F / envelope:.6g}")
    write_rows_csv(rows, cfg.out_path)
    return rows


EXPERIMENTS = {
    "scaling-lambda": run_scaling_lambda,
    "scaling-tau": run_scaling_tau,
    "sup-growth": run_sup_growth,
    "vinogradov-envelope": run_vinogradov_envelope,
}


# ----------------------------------------------------------------------
# verify subcommand: named checks with desk-scale defaults
# ----------------------------------------------------------------------

def _ctx_for(alpha_text: str, x: int) -> PhaseContext:
    source = parse_alpha_source(alpha_text)
    return PhaseContext(realize_alpha(source, _phase_floor(x)))


def _verify_large_sieve(args):
    rng = np.random.default_rng(args.seed)
    reports = []
    for _ in range(args.count or 3):
        N = int(rng.integers(64, 2049))
        M = int(rng.integers(0, 1024))
        vals = rng.choice(np.array([-1.0, 1.0]), size=N)
        table = ArithTable(FnKind.ONE, M + 1, M + N, vals)
        reports.append(verify.check_large_sieve(table, farey(10)))
    return reports


def _verify_window_transform(args):
    x = args.x or 10_000
    y = args.y or 50
    beta = Fraction(args.beta) if args.beta else Fraction(1, 3)
    ctx = _ctx_for(args.alpha or "sqrt:2", x)
    table = sieve_table(FnKind.VON_MANGOLDT, 1, x)
    return [verify.check_window_transform(table, ctx, x, y, beta)]


def _verify_initial_chain(args):
    x = args.x or 10_000
    y = args.y or max(1, int(x ** 0.3))
    Q = args.Q or max(2, int(round(x ** (1 / 3))))
    ctx = _ctx_for(args.alpha or "golden", x)
    table = sieve_table(FnKind.VON_MANGOLDT, 1, x)
    return [verify.check_initial_chain(table, ctx, x, y, Q)]


def _verify_coprime_count(args):
    q = args.q or 210
    y = args.y or 10
    alpha = realize_alpha(parse_alpha_source(args.alpha or "sqrt:2"),
                          _phase_floor(max(q, 6 * y)))
    return [verify.check_coprime_count(q, y, alpha)]


def _verify_goal_g(args):
    return [verify.check_goal_g(args.Q or 1000, args.epsilon or 0.5)]


def _verify_bv_average(args):
    return [verify.bv_average(args.x or 100_000, args.Q or 40)]


def _verify_grh_decomposition(args):
    x = args.x or 10_000
    q = args.q or 105
    a = args.a or 2
    table = sieve_table(FnKind.VON_MANGOLDT, 1, x)
    return [verify.check_grh_decomposition(table, q, a, x)]


def _verify_tau_rational(args):
    x = args.x or 10_000
    q_hi = args.Q or 20
    qs = [q for q in range(1, q_hi + 1) if q * q <= x]
    rng = np.random.default_rng(args.seed)
    return verify.check_tau_rational(x, qs, rng=rng)


def _verify_hyperbola(args):
    x = args.x or 10_000
    frac = Fraction(args.beta) if args.beta else Fraction(1, 3)
    return [verify.check_hyperbola(x, frac)]


def _verify_sup_lower_bound(args):
    x = args.x or 10_000
    y = args.y or 21
    ctx = _ctx_for(args.alpha or "golden", x)
    table = sieve_table(FnKind.VON_MANGOLDT, 1, x)
    return [verify.check_sup_lower_bound(table, ctx, x, y)]


def _verify_pi_psi_window(args):
    x = args.x or 100_000
    y = args.y or 100
    ctx = _ctx_for(args.alpha or "sqrt:2", x)
    lam = sieve_table(FnKind.VON_MANGOLDT, 1, x)
    pri = sieve_table(FnKind.PRIME_INDICATOR, 1, x)
    lo = y * y
    grid = sorted({int(v) for v in np.linspace(lo, x - 1, 16)})
    return [verify.check_pi_psi_window(lam, pri, ctx, x, y, grid)]


VERIFY_RUNNERS = {
    "large-sieve": _verify_large_sieve,
    "window-transform": _verify_window_transform,
    "initial-chain": _verify_initial_chain,
    "coprime-count": _verify_coprime_count,
    "goal-g": _verify_goal_g,
    "bv-average": _verify_bv_average,
    "grh-decomposition": _verify_grh_decomposition,
    "tau-rational": _verify_tau_rational,
    "hyperbola": _verify_hyperbola,
    "sup-lower-bound": _verify_sup_lower_bound,
    "pi-psi-window": _verify_pi_psi_window,
}


# ----------------------------------------------------------------------
# subcommand handlers
# ----------------------------------------------------------------------

def _cmd_sieve(args):
    table = sieve_table(parse_kind(args.kind), args.lo, args.hi)
    print(f"kind={table.kind.name} range=[{table.lo},{table.hi}] "
          f"sum={float(np.sum(table.values))!r}")
    head = min(args.head, len(table))
    print("head:", " ".join(repr(float(v)) for v in table.values[:head]))
    if args.cache_out:
        write_cache(table, args.cache_out)
        print(f"cache written to {args.cache_out}")
    return 0


def _cmd_expsum(args):
    kind = parse_kind(args.kind)
    table = sieve_table(kind, 1, args.x)
    if args.rational:
        frac = Fraction(args.rational)
        val = expsum_at_rational(table, frac, args.x)
        print(f"F({args.x}; {frac}) = {val!r} |F| = {abs(val)!r}")
    else:
        ctx = _ctx_for(args.alpha, args.x)
        val = expsum_full(table, ctx, args.x)
        print(f"F({args.x}; {args.alpha}) = {val!r} |F| = {abs(val)!r}")
    return 0


def _cmd_window_avg(args):
    kind = parse_kind(args.kind)
    table = sieve_table(kind, 1, args.x)
    ctx = _ctx_for(args.alpha, args.x)
    avg = window_l2_average(table, ctx, args.x, args.y, args.resync)
    print(f"S = {avg.S!r} over {avg.n_count} windows "
          f"(x={args.x}, y={args.y}, alpha={args.alpha}, kind={kind.name})")
    return 0


def _cmd_dioph(args):
    source = parse_alpha_source(args.alpha)
    if args.window:
        eps_txt, smin_txt = args.window.split(",")
        alpha = realize_alpha(source, max(2, int(smin_txt) ** 2))
        s, u, (ylo, yhi) = admissible_window(alpha, Fraction(eps_txt),
                                             int(smin_txt))
        print(f"s={s} u={u} y_range=[{ylo},{yhi}]")
        return 0
    x = args.approx_x or 10_000
    alpha = realize_alpha(source, _phase_floor(x))
    if args.convergents:
        seq = continued_fraction(alpha, args.convergents)
        print("quotients:", seq.partial_quotients)
        print("convergents:", " ".join(str(f) for f in seq.convergents))
        return 0
    R, witness = approx_quality(alpha, x)
    print(f"R({x}, {source}) = {float(R)!r} witness {witness}")
    return 0


def _cmd_major_arcs(args):
    import json as _json
    source = parse_alpha_source(args.alpha)
    floor = args.floor or max(2, (6 * args.y * args.Q) ** 2)
    alpha = realize_alpha(source, floor)
    arcs = major_arcs(alpha, args.Q, args.y)
    text = _json.dumps(arcs.to_json_dict())
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
        print(f"{len(arcs.fractions)} fractions written to {args.out}")
    else:
        print(text)
    return 0


def _cmd_verify(args):
    names = list(VERIFY_RUNNERS) if args.check == "all" else [args.check]
    reports = []
    for name in names:
        reports.extend(VERIFY_RUNNERS[name](args))
    for rep in reports:
        print(rep.to_json_line())
    if args.out:
        with open(args.out, "w") as fh:
            verify.write_jsonl(reports, fh)
    return 0 if all(r.passed for r in reports) else 1


def _cmd_experiment(args):
    cfg = load_config(args.config) if args.config else ExperimentConfig()
    if args.name == "scaling-tau":
        if not args.config:
            cfg.fn_kind = FnKind.DIVISOR
            cfg.y_rule = ("convergent", EPS_PRIME_DEFAULT)
    if args.alpha:
        cfg.alpha_source = parse_alpha_source(args.alpha)
    if args.kind:
        cfg.fn_kind = parse_kind(args.kind)
    if args.x_grid:
        cfg.x_grid = sorted(int(float(tok)) for tok in args.x_grid.split(","))
    if args.theta is not None:
        cfg.y_rule = ("power", args.theta)
    if args.eps_prime is not None:
        cfg.y_rule = ("convergent", Fraction(args.eps_prime))
    if args.Q is not None:
        cfg.q_rule = ("fixed", args.Q)
    if args.out:
        cfg.out_path = args.out
    for name in ("resync", "threads", "seed"):
        val = getattr(args, name)
        if val is not None:
            setattr(cfg, name, val)
    if args.eps is not None:
        cfg.eps = args.eps
    if args.C is not None:
        cfg.big_c = args.C
    cfg.validate()
    set_num_threads(cfg.threads)
    rows = EXPERIMENTS[args.name](cfg)
    print(f"{len(rows)} rows written to {cfg.out_path} "
          f"(backend={active_backend()})")
    if rows:
        print(f"min ratio = {min(r.ratio for r in rows)!r}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="expsieve",
        description="exponential-sum lower-bound machinery: sieves, major "
                    "arcs, window averages, certification checks, experiments",
    )
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sieve", help="sieve an arithmetic function table")
    s.add_argument("--kind", default="lambda")
    s.add_argument("--lo", type=int, default=1)
    s.add_argument("--hi", type=int, required=True)
    s.add_argument("--head", type=int, default=10)
    s.add_argument("--cache-out")
    s.set_defaults(func=_cmd_sieve)

    s = sub.add_parser("expsum", help="evaluate F(x; alpha)")
    s.add_argument("--kind", default="lambda")
    s.add_argument("--alpha", default="golden")
    s.add_argument("--x", type=int, required=True)
    s.add_argument("--rational", help="evaluate at a/q instead of alpha")
    s.set_defaults(func=_cmd_expsum)

    s = sub.add_parser("window-avg", help="short-interval L2 average")
    s.add_argument("--kind", default="lambda")
    s.add_argument("--alpha", default="golden")
    s.add_argument("--x", type=int, required=True)
    s.add_argument("--y", type=int, required=True)
    s.add_argument("--resync", type=int, default=RESYNC_DEFAULT)
    s.set_defaults(func=_cmd_window_avg)

    s = sub.add_parser("dioph", help="convergents / approximation quality")
    s.add_argument("--alpha", default="golden")
    s.add_argument("--convergents", type=int)
    s.add_argument("--approx-x", type=int)
    s.add_argument("--window", help="eps_prime,s_min for an admissible window")
    s.set_defaults(func=_cmd_dioph)

    s = sub.add_parser("major-arcs", help="enumerate the major-arc set")
    s.add_argument("--alpha", default="golden")
    s.add_argument("--Q", type=int, required=True)
    s.add_argument("--y", type=int, required=True)
    s.add_argument("--floor", type=int)
    s.add_argument("--out")
    s.set_defaults(func=_cmd_major_arcs)

    s = sub.add_parser("verify", help="run a named certification check")
    s.add_argument("check", choices=sorted(VERIFY_RUNNERS) + ["all"])
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=int)
    s.add_argument("--x", type=int)
    s.add_argument("--y", type=int)
    s.add_argument("--q", type=int)
    s.add_argument("--a", type=int)
    s.add_argument("--Q", type=int)
    s.add_argument("--alpha")
    s.add_argument("--beta", help="rational like 1/3")
    s.add_argument("--epsilon", type=float)
    s.add_argument("--out", help="write JSON lines here as well")
    s.set_defaults(func=_cmd_verify)

    s = sub.add_parser("experiment", help="run a scaling experiment to CSV")
    s.add_argument("name", choices=sorted(EXPERIMENTS))
    s.add_argument("--config", help="TOML config path")
    s.add_argument("--alpha")
    s.add_argument("--kind")
    s.add_argument("--x-grid", help="comma-separated x values")
    s.add_argument("--theta", type=float)
    s.add_argument("--eps-prime")
    s.add_argument("--Q", type=int)
    s.add_argument("--eps", type=float)
    s.add_argument("--C", type=float)
    s.add_argument("--resync", type=int)
    s.add_argument("--threads", type=int)
    s.add_argument("--seed", type=int)
    s.add_argument("--out")
    s.set_defaults(func=_cmd_experiment)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
