"""Acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line (shown even under output
capture) and then asserts.  Relative tolerances use the mixed measure
``|lhs - rhs| / max(1, |rhs|)`` so that points near a root of the reference
value do not dominate.
"""

import io
import math
import random
import subprocess
import sys
from contextlib import redirect_stderr, redirect_stdout

import pytest

from deformexp import (
    deformed_derivative,
    deformed_derivative_analytic,
    e_sub,
    e_sup,
    expand_e_sub,
    expand_e_sub_neg,
    expand_e_sup,
    kaniadakis_exp,
    quantum_group_exp,
    tsallis_q_exp,
)
from deformexp.cli import fmt, main
from deformexp.verify import GridSpec, run_identity

H_GRID = (0.1, -0.1, 0.5, -0.5, 1.0, -1.0)


@pytest.fixture
def report(capsys):
    def emit(criterion, ok, detail=""):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {criterion}" + (f": {detail}" if detail else ""))
        assert ok, f"{criterion}: {detail}"

    return emit


def mixed(a, b):
    return abs(a - b) / max(1.0, abs(b))


def _suite(ids, tol, samples, ranges=None):
    grid = GridSpec(ranges=ranges or {}, h_values=H_GRID, samples=samples, seed=42)
    reports = [run_identity(i, grid, tolerance=tol) for i in ids]
    worst = max(reports, key=lambda r: r.max_err)
    bad = [r.identity_id for r in reports if not r.passed]
    n = sum(r.samples for r in reports)
    return not bad, f"{len(reports)} identities, {n} points, worst {worst.max_err:.2e} ({worst.identity_id}), tol {tol:g}" + (
        f", failing {bad}" if bad else "")


def test_power_identity_suite(report):
    ids = [
        "power.reflection_backward",
        "power.reflection_forward",
        "power.central_parity",
        "power.central_to_backward",
        "power.central_factored_even",
        "power.central_factored_odd",
        "power.even_odd_product",
    ]
    ok, detail = _suite(ids, 1e-12, 50, {"n": (1, 10)})
    report("power identities at 1e-12", ok, detail)


def test_operator_lowering_suite(report):
    ids = ["ops.lower_forward", "ops.lower_backward", "ops.lower_central"]
    ok, detail = _suite(ids, 1e-10, 50, {"n": (1, 10)})
    report("operator lowering at 1e-10", ok, detail)


def test_eigenfunction_suite(report):
    ok, detail = _suite(["eigen.forward", "eigen.backward", "eigen.central"], 1e-10, 50)
    report("eigenfunctions of the y-difference operators at 1e-10", ok, detail)


def test_expansion_suite(report):
    rng = random.Random(2024)
    worst = 0.0
    for _ in range(200):
        h = rng.choice((-1, 1)) * rng.uniform(0.1, 1.0)
        x = rng.uniform(-0.5, 0.5) / abs(h)
        y = rng.uniform(-5, 5)
        worst = max(
            worst,
            mixed(expand_e_sub(x, y, h).value, e_sub(x, y, h)),
            mixed(expand_e_sub_neg(x, y, h).value, e_sub(x, y, -h)),
            mixed(expand_e_sup(x, y, h).value, e_sup(x, y, h)),
        )
    term_worst, term_bad = 0.0, []
    for m in range(11):
        for _ in range(10):
            h = rng.choice((-1, 1)) * rng.uniform(0.1, 1.0)
            x = rng.uniform(-0.5, 0.5) / abs(h)
            r = expand_e_sub(x, m * h, h)
            rn = expand_e_sub_neg(-x, -m * h, h)
            target = (1 + h * x) ** m
            for res in (r, rn):
                if not (res.terminated_exactly and res.terms_used == m + 1):
                    term_bad.append((x, h, m, res.terms_used))
                term_worst = max(term_worst, mixed(res.value, target))
    ok = worst <= 1e-10 and term_worst <= 1e-13 and not term_bad
    report(
        "series expansions at 1e-10; exact termination at 1e-13",
        ok,
        f"600 closed-form comparisons worst {worst:.2e}; 220 polynomial cases worst {term_worst:.2e}"
        + (f", wrong term counts {term_bad[:3]}" if term_bad else ""),
    )


def test_group_axiom_suite(report):
    ids = [
        "arith.sub_commutative",
        "arith.sub_associative",
        "arith.sub_neutral",
        "arith.sub_inverse",
        "arith.sub_homomorphism",
        "arith.sup_commutative",
        "arith.sup_associative",
        "arith.sup_neutral",
        "arith.sup_inverse",
        "arith.sup_homomorphism",
    ]
    # 100 tuples per identity: spread evenly over the deformation values
    grid = GridSpec(h_values=H_GRID, samples=-(-100 // len(H_GRID)), seed=42)
    reports = [run_identity(i, grid, tolerance=1e-12) for i in ids]
    bad = [r.identity_id for r in reports if not r.passed]
    worst = max(reports, key=lambda r: r.max_err)
    report(
        "group axioms and brace homomorphisms at 1e-12",
        not bad,
        f"{sum(r.samples for r in reports)} tuples, worst {worst.max_err:.2e} ({worst.identity_id})"
        + (f", failing {bad}" if bad else ""),
    )


def test_special_case_suite(report):
    xs = [-1 + 4 * k / 1000 for k in range(1, 1001)]
    ts_err = max(mixed(tsallis_q_exp(x, 0.0), 1 + x) for x in xs)
    cutoff = all(tsallis_q_exp(x, 0.0) == 0.0 for x in (-1.0, -1.5, -3.0, -100.0))
    ka = abs(kaniadakis_exp(0.75, 1) - 2)
    qg = abs(quantum_group_exp(1, 2) - 2)
    conn = run_identity("connection.sub_to_sup", GridSpec(h_values=H_GRID, seed=42), tolerance=1e-11)
    ok = ts_err <= 1e-14 and cutoff and ka <= 1e-15 and qg <= 1e-15 and conn.passed
    report(
        "special cases and connection formula",
        ok,
        f"tsallis q=0 worst {ts_err:.1e}, cutoff {'ok' if cutoff else 'broken'}, "
        f"kaniadakis {ka:.1e}, quantum group {qg:.1e}, connection {conn.max_err:.1e} (tol 1e-11)",
    )


def test_deformed_derivative_suite(report):
    worst = 0.0
    for h in H_GRID:
        for x in [-2 + 0.25 * k for k in range(17)]:
            for y in (-5.0, -1.3, 0.4, 2.2, 5.0):
                if 1 + h * x >= 0.1:
                    fd = deformed_derivative(lambda t: e_sub(t, y, h), x, h, "sub", 1e-6)
                    worst = max(worst, mixed(fd, deformed_derivative_analytic("sub", "sub", x, y, h)))
                fd = deformed_derivative(lambda t: e_sup(t, y, h), x, h, "sup", 1e-6)
                worst = max(worst, mixed(fd, deformed_derivative_analytic("sup", "sup", x, y, h)))
    ratios = []
    for kind, f in (("sub", e_sub), ("sup", e_sup)):
        for x, y, h in ((0.3, 1.7, 0.5), (-0.4, -2.0, 1.0), (1.1, 0.8, -0.1)):
            exact = deformed_derivative_analytic(kind, kind, x, y, h)
            errs = [abs(deformed_derivative(lambda t: f(t, y, h), x, h, kind, 1e-2 / 2**k) - exact) for k in range(4)]
            ratios += [a / b for a, b in zip(errs, errs[1:])]
    ratio_ok = all(2 <= r <= 8 for r in ratios)
    report(
        "deformed derivatives at 1e-6; step-halving ratio in [2, 8]",
        worst <= 1e-6 and ratio_ok,
        f"worst eigen-relation error {worst:.2e}; halving ratios {min(ratios):.3f}..{max(ratios):.3f}",
    )


def test_classical_limit_suite(report):
    x, y = 0.3, 1.7
    target = math.exp(x * y)
    out, ok = [], True
    for name, f in (("e_sub", e_sub), ("e_sup", e_sup)):
        errs = [abs(f(x, y, h) - target) for h in (0.1, 0.01, 0.001)]
        ratios = [a / b for a, b in zip(errs, errs[1:])]
        good = all(5 <= r <= 20 for r in ratios)
        ok &= good
        out.append(f"{name} ratios {', '.join(f'{r:.2f}' for r in ratios)} ({'in' if good else 'outside'} [5, 20])")
    report("classical limit shrinks linearly in h", ok, "; ".join(out))


def _cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        try:
            code = main(list(argv))
        except SystemExit as exc:
            code = exc.code
    return code, out.getvalue()


def test_cli_contract(report):
    codes = (
        _cli("eval", "e_sub", "--x", "0.5", "--y", "2", "--h", "1")[0],
        _cli("eval", "e_sub", "--x", "-3", "--y", "2", "--h", "1")[0],
        _cli("eval", "e_sub", "--x", "0.5", "--y", "2")[0],
    )
    cmd = [sys.executable, "-m", "deformexp", "verify", "--seed", "42", "--format", "json"]
    runs = [subprocess.run(cmd, capture_output=True).stdout for _ in range(2)]
    identical = runs[0] == runs[1] and len(runs[0]) > 0
    rng = random.Random(17)
    mismatches = 0
    for _ in range(1000):
        x, y, h = rng.uniform(-2, 2), rng.uniform(-5, 5), rng.uniform(-1, 1)
        value = rng.uniform(-1e6, 1e6) * 10 ** rng.randint(-300, 300)
        mismatches += float(fmt(value)) != value
        code, out = _cli("eval", "e_sup", "--x", fmt(x), "--y", fmt(y), "--h", fmt(h))
        mismatches += code != 0 or float(out) != e_sup(x, y, h)
    ok = codes == (0, 1, 2) and identical and mismatches == 0
    report(
        "CLI exit codes, reproducibility, 17-digit round trip",
        ok,
        f"exit codes {codes}; repeated verify output {'identical' if identical else 'differs'}; "
        f"{mismatches} round-trip mismatches in 2000 checks",
    )
