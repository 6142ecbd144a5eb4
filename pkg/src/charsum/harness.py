"""Run configuration, suite orchestration, result persistence, Gauss cache.

A run is a set of (field, suite) jobs; suites that depend on the parameter a
fan out further over an a-sweep.  Every job produces a VerificationReport
whose records are deterministic for a given configuration, so serial and
parallel runs agree after sorting.
"""

import csv
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

from .characters import MultChar, char, trivial_char
from .classical_sums import (
    GAUSS_CSV_COLUMNS,
    eisenstein_E,
    eisenstein_E2,
    eisenstein_gauss_deviation,
    eisenstein_shift_deviation,
    gauss,
    gauss_literal,
    gauss_table_rows,
    hasse_davenport_product_deviation,
    jacobi,
    lifted_gauss_deviation,
    quartic_gauss_deviation,
)
from .finite_field import FieldError, build_tower, factor_prime_power
from .hypergeometric import (
    binom,
    hyp2f1,
    norm_fiber,
    norm_jacobi_hyp_deviation,
    norm_restricted_jacobi,
)
from .katz import (
    KatzContext,
    double_mellin_mixed_deviation,
    double_mellin_product,
    double_mellin_product_deviation,
    fiber_jacobi_transform_deviation,
    kernel_closed_form_deviation,
    kernel_double_sum,
    kernel_double_sum_anchor,
    kernel_double_sum_deviation,
    kernel_transform_deviation,
    mellin_single_deviation,
    mellin_transform,
    quadratic_kernel_expected,
    quadratic_kernel_mellin,
    ratio_bracket_deviation,
    select_char_pairs,
    spaced_sample,
    verify_master_identity,
)
from .report import VerificationReport, report_sort_key, write_csv, write_json
from .tolerance import DEFAULT_POLICY, TolerancePolicy

SUITES = (
    "classical",
    "eisenstein",
    "hypergeometric",
    "theorem-4.1",
    "mellin",
    "theorem-5.x",
    "remark-Z",
    "master",
)

# required q mod 4 per suite
_SUITE_MOD4 = {name: 3 for name in SUITES}
_SUITE_MOD4["remark-Z"] = 1

# suites whose checks involve the parameter a
_A_DEPENDENT = ("mellin", "master")

# suites re-run per octic character when the variants flag is set
_M8_DEPENDENT = ("hypergeometric", "theorem-4.1", "mellin", "theorem-5.x", "master")

DEFAULT_Q = (3, 7, 11, 19, 23, 27)
DEFAULT_Q_REMARK = (5, 9, 13, 17, 25)

ENV_PARALLELISM = "CHARSUM_PARALLELISM"

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_FIELD = 3
EXIT_IO = 4


class ConfigError(ValueError):
    """Unusable run configuration."""


@dataclass
class RunConfig:
    """Mirrors the CLI flags one-to-one; fields=None means per-suite defaults."""

    fields: list[tuple[int, int]] | None = None
    suites: list[str] | None = None  # None or ["all"]: every applicable suite
    a_policy: str = "auto"  # all | sample-N | auto (all up to q=50, then sample-8)
    tolerance: TolerancePolicy = dc_field(default_factory=lambda: DEFAULT_POLICY)
    out_json: str | None = None
    out_csv: str | None = None
    parallelism: int = 1
    octic_variants: bool = False

    def jobs(self) -> list[tuple[str, int, int]]:
        """Resolve to (suite, p, t) triples, or raise ConfigError.

        An explicit suite list is strict: every listed suite must accept every
        listed field.  Omitted suites (or "all") select the applicable ones.
        """
        explicit = self.suites is not None and self.suites != ["all"]
        suites = list(self.suites) if explicit else list(SUITES)
        for s in suites:
            if s not in SUITES:
                raise ConfigError(f"unknown suite {s!r}; choose from {', '.join(SUITES)}")
        if not _valid_a_policy(self.a_policy):
            raise ConfigError(f"bad a-policy {self.a_policy!r}; use all, sample-N or auto")
        if self.parallelism < 1:
            raise ConfigError("parallelism must be >= 1")

        if self.fields is None:
            out = []
            for s in suites:
                qs = DEFAULT_Q_REMARK if s == "remark-Z" else DEFAULT_Q
                out.extend((s, *factor_prime_power(q)) for q in qs)
            return out

        out = []
        for p, t in self.fields:
            q = p**t
            try:
                factor_prime_power(q)  # re-validates p odd prime
            except FieldError as e:
                raise ConfigError(str(e)) from None
            applicable = [s for s in suites if q % 4 == _SUITE_MOD4[s]]
            if explicit:
                bad = [s for s in suites if q % 4 != _SUITE_MOD4[s]]
                if bad:
                    raise ConfigError(
                        f"suite(s) {', '.join(bad)} require q = {_SUITE_MOD4[bad[0]]} (mod 4) "
                        f"but q = {q} = {q % 4} (mod 4)"
                    )
            if not applicable:
                raise ConfigError(f"no requested suite applies to q = {q}")
            out.extend((s, p, t) for s in applicable)
        return out


def _valid_a_policy(policy: str) -> bool:
    if policy in ("all", "auto"):
        return True
    if policy.startswith("sample-"):
        tail = policy[len("sample-"):]
        return tail.isdigit() and int(tail) >= 1
    return False


def parse_q(q: int) -> tuple[int, int]:
    """q -> (p, t); rejects q that is not an odd prime power."""
    try:
        return factor_prime_power(q)
    except FieldError as e:
        raise ConfigError(str(e)) from None


def a_values(q: int, policy: str) -> list[int]:
    """Codes of the a-sweep: exhaustive, or the first N generator powers."""
    if policy == "auto":
        policy = "all" if q <= 50 else "sample-8"
    if policy == "all":
        return list(range(1, q))
    n = int(policy[len("sample-"):])
    p, t = factor_prime_power(q)
    base = build_tower(p, t).base
    return sorted({base.exp[k % (q - 1)] for k in range(n)})


def load_config(path: str) -> RunConfig:
    """Flat key = value format; '#' starts a comment.  Keys: q, suites,
    a_policy, tol_floor, tol_scale, out_json, out_csv, parallelism,
    octic_variants."""
    cfg = RunConfig()
    floor, scale = DEFAULT_POLICY.floor, DEFAULT_POLICY.scale
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}") from None
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        parts = value.replace(",", " ").split()
        try:
            if key == "q":
                cfg.fields = [parse_q(int(v)) for v in parts]
            elif key == "suites":
                cfg.suites = parts
            elif key == "a_policy":
                cfg.a_policy = value
            elif key == "tol_floor":
                floor = float(value)
            elif key == "tol_scale":
                scale = float(value)
            elif key == "out_json":
                cfg.out_json = value
            elif key == "out_csv":
                cfg.out_csv = value
            elif key == "parallelism":
                cfg.parallelism = int(value)
            elif key == "octic_variants":
                if value.lower() not in ("true", "false", "0", "1"):
                    raise ConfigError(f"{path}:{lineno}: octic_variants must be true/false")
                cfg.octic_variants = value.lower() in ("true", "1")
            else:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        except ValueError as e:
            if isinstance(e, ConfigError):
                raise
            raise ConfigError(f"{path}:{lineno}: bad value for {key!r}: {value!r}") from None
    cfg.tolerance = TolerancePolicy(floor=floor, scale=scale)
    return cfg


# ---------------------------------------------------------------------------
# suites


def _all_chars(field):
    return [char(field, i) for i in range(field.order - 1)]


def suite_classical(tower, policy: TolerancePolicy) -> VerificationReport:
    """Gauss/Jacobi basics, the Hasse-Davenport product and lifting relations,
    the quartic Gauss evaluation, and Frobenius conjugation of G2."""
    q = tower.q
    base, top = tower.base, tower.top
    rep = VerificationReport("classical", q, None)
    t0 = time.perf_counter()
    tol = policy.abs_tol(q, 4 * top.order)

    for f in (base, top):
        rep.add("gauss-trivial", f"order={f.order}", abs(gauss(trivial_char(f)) + 1), tol)
    for a in _all_chars(base)[1:]:
        dev = abs(gauss(a) * gauss(a.conj) - a(-1) * q)
        rep.add("gauss-conjugate", f"A={a.index}", dev, tol)
    for b in _all_chars(top)[1:]:
        dev = abs(gauss(b) * gauss(b.conj) - b(-1) * top.order)
        rep.add("gauss-conjugate-top", f"beta={b.index}", dev, tol)

    eps = trivial_char(base)
    rep.add("jacobi-trivial", "", abs(jacobi(eps, eps) - (q - 2)), tol)
    for a in _all_chars(base)[1:]:
        rep.add("jacobi-inverse", f"A={a.index}", abs(jacobi(a, a.conj) + a(-1)), tol)
        rep.add("jacobi-with-trivial", f"A={a.index}", abs(jacobi(eps, a) + 1), tol)

    for a in _all_chars(base):
        for b in _all_chars(base):
            if (a * b).is_trivial:
                continue
            dev = abs(jacobi(a, b) - gauss(a) * gauss(b) / gauss(a * b))
            rep.add("gauss-jacobi-bridge", f"A={a.index},B={b.index}", dev, tol)
        for c in _all_chars(base)[1:]:
            dev = abs(jacobi(a, c.conj) - a(-1) * jacobi(a, a.conj * c))
            rep.add("jacobi-reflection", f"A={a.index},C={c.index}", dev, tol)
        rep.add("hd-product", f"A={a.index}", hasse_davenport_product_deviation(a), tol)

    for c in _all_chars(base):
        rep.add("lifted-gauss", f"C={c.index}", lifted_gauss_deviation(tower, c), tol)
        rep.add("quartic-gauss", f"C={c.index}", quartic_gauss_deviation(tower, c), tol)

    for b in _all_chars(top):
        dev = abs(gauss(b) - gauss(b**q))
        rep.add("gauss-frobenius", f"beta={b.index}", dev, tol)

    rep.wall_time = time.perf_counter() - t0
    return rep


def suite_eisenstein(tower, policy: TolerancePolicy) -> VerificationReport:
    """E(beta) = beta(2) E2(beta) and the Gauss-sum evaluation of E2."""
    q = tower.q
    top = tower.top
    rep = VerificationReport("eisenstein", q, None)
    t0 = time.perf_counter()
    tol = policy.abs_tol(q, 4 * top.order)

    triv = trivial_char(top)
    rep.add("line-count", "", abs(len(tower.trace_line) - q), tol)
    rep.add("eisenstein-trivial", "", abs(eisenstein_E2(tower, triv) - q), tol)
    rep.add("eisenstein-line-trivial", "", abs(eisenstein_E(tower, triv) - q), tol)
    for b in _all_chars(top):
        rep.add("eisenstein-shift", f"beta={b.index}", eisenstein_shift_deviation(tower, b), tol)
        if not b.is_trivial:
            rep.add(
                "eisenstein-gauss-ratio",
                f"beta={b.index}",
                eisenstein_gauss_deviation(tower, b),
                tol,
            )

    rep.wall_time = time.perf_counter() - t0
    return rep


def suite_hypergeometric(ctx: KatzContext, policy: TolerancePolicy) -> VerificationReport:
    """Norm fibers, 2F1 sanity, binomial reflection, R parity in j."""
    tower = ctx.tower
    q = tower.q
    base = tower.base
    rep = VerificationReport("hypergeometric", q, None)
    t0 = time.perf_counter()
    tol = policy.abs_tol(q, 4 * tower.top.order)

    for c in range(1, q):
        fib = norm_fiber(tower, c)
        dev = abs(len(fib) - (q + 1))
        if sorted(fib) != norm_fiber(tower, c, scan=True):
            dev = max(dev, 1.0)
        rep.add("norm-fiber", f"c={c}", dev, tol)

    idx = list(range(q - 1)) if q <= 11 else spaced_sample(list(range(q - 1)), 6)
    chars = [char(base, i) for i in idx]
    for a in chars:
        for b in chars:
            rep.add(
                "hyp-zero-arg", f"A={a.index},B={b.index}", abs(hyp2f1(a, b, a, 0)), tol
            )
            for c in chars:
                for x in range(1, q):
                    v = abs(hyp2f1(a, b, c, base.element(x)))
                    dev = max(0.0, v - (q - 1) / q)
                    rep.add(
                        "hyp-bound", f"A={a.index},B={b.index},C={c.index},x={x}", dev, tol
                    )

    for d in chars:
        for c in chars:
            lhs = binom(d * c.conj, c.conj)
            rhs = d(-1) * binom(c, d.conj * c)
            rep.add("binom-reflection", f"D={d.index},chi={c.index}", abs(lhs - rhs), tol)

    for d in chars:
        for j in range(1, q):
            je = base.element(j)
            dev = abs(
                norm_restricted_jacobi(ctx, d, je) - norm_restricted_jacobi(ctx, d, -je)
            )
            rep.add("fiber-jacobi-even", f"D={d.index},j={j}", dev, tol)

    rep.wall_time = time.perf_counter() - t0
    return rep


def suite_theorem41(ctx: KatzContext, policy: TolerancePolicy) -> VerificationReport:
    """R(D, j) against its hypergeometric reduction, all (D, j)."""
    q = ctx.tower.q
    base = ctx.tower.base
    rep = VerificationReport("theorem-4.1", q, None)
    t0 = time.perf_counter()
    tol = policy.abs_tol(q, 4 * q * q)
    for d_idx in range(q - 1):
        d = char(base, d_idx)
        for j in range(1, q):
            dev = norm_jacobi_hyp_deviation(ctx, d, base.element(j))
            rep.add("fiber-jacobi-hyp", f"D={d_idx},j={j}", dev, tol)
    rep.wall_time = time.perf_counter() - t0
    return rep


def suite_mellin(ctx: KatzContext, policy: TolerancePolicy) -> VerificationReport:
    """Single and double Mellin evaluations, Mellin inversion, and the
    literal-vs-product oracle for the double transform."""
    tower = ctx.tower
    q = tower.q
    base = tower.base
    rep = VerificationReport("mellin", q, ctx.a_index())
    t0 = time.perf_counter()
    tol = policy.abs_tol(q, 4 * q * q)
    tol_pairs = policy.abs_tol(q, q**3)

    for i in range(q - 1):
        rep.add("mellin-single", f"chi={i}", mellin_single_deviation(ctx, char(base, i)), tol)

    pm = ctx.mixed_sum_matrix()
    for i1, i2 in select_char_pairs(base):
        chi1, chi2 = char(base, i1), char(base, i2)
        inputs = f"chi1={i1},chi2={i2}"
        rep.add(
            "double-mellin-product", inputs, double_mellin_product_deviation(ctx, chi1, chi2),
            tol_pairs,
        )
        rep.add(
            "double-mellin-mixed", inputs,
            double_mellin_mixed_deviation(ctx, chi1, chi2, pm), tol_pairs,
        )
        if q <= 11:
            dev = abs(
                double_mellin_product(ctx, chi1, chi2, literal=True)
                - double_mellin_product(ctx, chi1, chi2)
            )
            rep.add("double-mellin-literal", inputs, dev, tol_pairs)

    v = ctx.v_vector()
    s_all = [mellin_transform(ctx, char(base, i)) for i in range(q - 1)]
    tables = [char(base, i).value_table() for i in range(q - 1)]
    for j in range(1, q):
        recon = sum(s_all[i] * tables[i][j].conjugate() for i in range(q - 1)) / (q - 1)
        rep.add("mellin-inversion", f"j={j}", abs(recon - v[j]), tol_pairs)

    rep.wall_time = time.perf_counter() - t0
    return rep


def suite_theorem5x(ctx: KatzContext, policy: TolerancePolicy) -> VerificationReport:
    """Kernel closed forms, the weighted transforms W and Y, the double-sum
    evaluation with its integer anchor, and the Gauss-ratio bridge."""
    tower = ctx.tower
    q = tower.q
    base = tower.base
    rep = VerificationReport("theorem-5.x", q, None)
    t0 = time.perf_counter()
    tol = policy.abs_tol(q, 4 * q * q)

    all_idx = list(range(q - 1))
    for d_idx in all_idx:
        d = char(base, d_idx)
        for j in range(1, q):
            dev = kernel_closed_form_deviation(d, base.element(j))
            rep.add("kernel-closed-form", f"D={d_idx},j={j}", dev, tol)

    idx = all_idx if q <= 11 else spaced_sample(all_idx, 6)
    for d_idx in idx:
        d = char(base, d_idx)
        for n_idx in idx:
            nu = char(base, n_idx)
            inputs = f"D={d_idx},nu={n_idx}"
            rep.add("kernel-transform", inputs, kernel_transform_deviation(ctx, d, nu), tol)
            rep.add(
                "fiber-transform", inputs, fiber_jacobi_transform_deviation(ctx, d, nu), tol
            )
            rep.add("gauss-ratio-bridge", inputs, ratio_bracket_deviation(ctx, nu, d), tol)

    for n_idx in idx:
        rep.add(
            "kernel-double-sum", f"nu={n_idx}",
            kernel_double_sum_deviation(q, n_idx, ctx.m8_variant), tol,
        )
    anchor = kernel_double_sum_anchor(q)
    rep.add("kernel-double-anchor", "nu=0", abs(kernel_double_sum(q) - anchor), tol)

    for m_idx in all_idx:
        mu = char(base, m_idx)
        dev = abs(int((mu**4).is_trivial) - int((mu**2).is_trivial))
        rep.add("delta-square-fourth", f"mu={m_idx}", float(dev), tol)

    rep.wall_time = time.perf_counter() - t0
    return rep


def suite_remark_z(q: int, policy: TolerancePolicy) -> VerificationReport:
    """Z against its integer evaluation (0, 4q, or 4c^2)."""
    rep = VerificationReport("remark-Z", q, None)
    t0 = time.perf_counter()
    tol = policy.abs_tol(q, 4 * q * q)
    val = quadratic_kernel_mellin(q)
    expected = quadratic_kernel_expected(q)
    rep.add("z-evaluation", f"expected={expected}", abs(val - expected), tol)
    rep.wall_time = time.perf_counter() - t0
    return rep


# ---------------------------------------------------------------------------
# orchestration


def _run_task(task) -> VerificationReport:
    suite, p, t, a_code, variant, floor, scale = task
    policy = TolerancePolicy(floor=floor, scale=scale)
    q = p**t
    if suite == "remark-Z":
        rep = suite_remark_z(q, policy)
    else:
        tower = build_tower(p, t)
        if suite == "classical":
            rep = suite_classical(tower, policy)
        elif suite == "eisenstein":
            rep = suite_eisenstein(tower, policy)
        else:
            ctx = KatzContext(tower, a_code if a_code is not None else 1, m8_variant=variant)
            if suite == "hypergeometric":
                rep = suite_hypergeometric(ctx, policy)
            elif suite == "theorem-4.1":
                rep = suite_theorem41(ctx, policy)
            elif suite == "mellin":
                rep = suite_mellin(ctx, policy)
            elif suite == "theorem-5.x":
                rep = suite_theorem5x(ctx, policy)
            elif suite == "master":
                rep = verify_master_identity(ctx, policy)
            else:  # pragma: no cover
                raise ConfigError(f"unknown suite {suite!r}")
    if variant != 1:
        rep.suite = f"{rep.suite}@m8={variant}"
    return rep


def build_tasks(config: RunConfig) -> list[tuple]:
    tasks = []
    floor, scale = config.tolerance.floor, config.tolerance.scale
    for suite, p, t in config.jobs():
        q = p**t
        variants = (1, 3, 5, 7) if (config.octic_variants and suite in _M8_DEPENDENT) else (1,)
        for variant in variants:
            if suite in _A_DEPENDENT:
                for a_code in a_values(q, config.a_policy):
                    tasks.append((suite, p, t, a_code, variant, floor, scale))
            else:
                tasks.append((suite, p, t, None, variant, floor, scale))
    return tasks


def run(config: RunConfig) -> tuple[int, list[VerificationReport]]:
    """Execute the configured suites; returns (exit_code, sorted reports).

    Raises ConfigError for unusable configs, FieldError for field
    construction problems, OSError for output failures.
    """
    tasks = build_tasks(config)
    parallelism = int(os.environ.get(ENV_PARALLELISM, config.parallelism))
    if parallelism > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            reports = list(pool.map(_run_task, tasks))
    else:
        reports = [_run_task(t) for t in tasks]
    reports = [rep.sorted() for rep in reports]
    reports.sort(key=report_sort_key)
    if config.out_json:
        write_json(reports, config.out_json)
    if config.out_csv:
        write_csv(reports, config.out_csv)
    code = EXIT_OK if all(rep.all_passed for rep in reports) else EXIT_CHECK_FAILED
    return code, reports


# ---------------------------------------------------------------------------
# Gauss-sum cache


def cache_gauss_tables(field, path: str):
    """Write G(A) for every character of the field as CSV rows
    (field_order, char_index, re, im)."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(GAUSS_CSV_COLUMNS)
        for row in gauss_table_rows(field):
            w.writerow(row)


def load_gauss_tables(field, path: str):
    """Load a Gauss-sum cache, validating the field order and spot-checking
    five entries by literal recomputation before populating the memo."""
    rows = {}
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != list(GAUSS_CSV_COLUMNS):
            raise ValueError(f"unrecognized Gauss cache header in {path}: {header}")
        for lineno, row in enumerate(reader, 2):
            try:
                order, index = int(row[0]), int(row[1])
                val = complex(float(row[2]), float(row[3]))
            except (ValueError, IndexError):
                raise ValueError(f"{path}:{lineno}: corrupt row {row!r}") from None
            if order != field.order:
                raise ValueError(
                    f"{path}: cache is for field order {order}, not {field.order}"
                )
            rows[index] = val
    n = field.order - 1
    if sorted(rows) != list(range(n)):
        raise ValueError(f"{path}: expected one row per character index 0..{n - 1}")
    tol = DEFAULT_POLICY.abs_tol(field.order, 4 * field.order)
    for index in spaced_sample(list(range(n)), 5):
        expect = gauss_literal(MultChar(field, index))
        if abs(rows[index] - expect) > tol:
            raise ValueError(
                f"{path}: spot check failed at char_index {index}: "
                f"cached {rows[index]}, recomputed {expect}"
            )
    field._gauss_memo.update(rows)
    return rows
