"""Acceptance gate: the thirteen criteria, one test and one printed line each.

Run with -s to watch the pass/fail lines stream; each line carries the
measured margins so a red run is diagnosable from the log alone.
"""

import io
import json
import math
import random
import time
from contextlib import redirect_stdout
from fractions import Fraction

import gmpy2
from gmpy2 import mpfr, mpq

from polyzeta import (
    GAMMA,
    GapQuery,
    Precision,
    SymbolicConstantPoly,
    alternating_c_sum,
    b_entry,
    bernoulli,
    c_entry,
    cli,
    dirichlet_L,
    eulerian,
    expansion_coefficients,
    find_root,
    inverse_expansion_check,
    pi_const,
    second_logderiv_sides,
    stirling2,
    theta_lhs,
    theta_rhs,
    two_sided_power_sum,
    zeta2_finite,
    zeta_even_closed,
    zeta_from_odd,
    zeta_partial,
    zeta_symbol,
    zeta_value,
)
from polyzeta.asymptotics import c4_candidates, default_binding, evaluate_expansion_at_log, truncated_alpha
from polyzeta.numerics import e_unit

P = Precision(128)
GRID = (10**3, 10**4, 10**5, 10**6)


def _report(num, label, ok, detail):
    print(f"criterion {num:02d} {label}: {'PASS' if ok else 'FAIL'}  [{detail}]", flush=True)
    assert ok, f"criterion {num} ({label}) failed: {detail}"


def _cli_rows(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli.main(argv)
    assert code == 0, f"cli {argv} exited {code}"
    return json.loads(buf.getvalue())["rows"]


def test_criterion_01_exact_small_roots():
    row1 = _cli_rows(["alpha", "--n", "1"])[0]
    row2 = _cli_rows(["alpha", "--n", "2"])[0]
    with gmpy2.context(precision=192):
        d1 = abs(mpfr(row1["value"]) - mpq(1, 2))
        d2 = abs(mpfr(row2["value"]) - (1 - 1 / gmpy2.sqrt(mpfr(3))))
        r1 = abs(mpfr(row1["abs_error"]))
        r2 = abs(mpfr(row2["abs_error"]))
    ok = d1 <= 1e-12 and d2 <= 1e-12 and r1 <= 1e-30 and r2 <= 1e-30
    _report(1, "exact small-N roots", ok, f"dev {float(d1):.2e}/{float(d2):.2e} resid {float(r1):.2e}/{float(r2):.2e}")


def test_criterion_02_theorem1_grid():
    t0 = time.monotonic()
    worst = 0.0
    for n in GRID:
        est = find_root(GapQuery(n, 0), P)
        with P.context():
            gap = abs(1 / est.value - gmpy2.log(mpfr(n)))
        worst = max(worst, float(gap))
    elapsed = time.monotonic() - t0
    ok = worst <= 2 and elapsed <= 30
    _report(2, "theorem 1 bounded offset", ok, f"worst |1/a - log N| {worst:.4f}, {elapsed:.1f}s")


def test_criterion_03_theorem2_rate():
    # Known red: r(N) - zeta(2) changes sign near N ~ 2.7e4 (the 1/log^2 N
    # error term carries a coefficient ~10x the leading one, opposite sign),
    # so |r - zeta(2)| dips at the grid point nearest the crossing and strict
    # decrease over this grid is not satisfiable by any correct solver. The
    # assertion is kept exact rather than loosened; the envelope bound passes
    # with ~100x margin.
    signed = []
    worst_scaled = 0.0
    for n in GRID:
        r = inverse_expansion_check(n, P)
        with P.context():
            diff = r - zeta_value(2, P)
            scaled = abs(diff) * gmpy2.log(mpfr(n))
        signed.append(float(diff))
        worst_scaled = max(worst_scaled, float(scaled))
    errs = [abs(d) for d in signed]
    decreasing = all(a > b for a, b in zip(errs, errs[1:]))
    ok = worst_scaled <= 10 and decreasing
    _report(3, "theorem 2 rate", ok,
            f"worst scaled {worst_scaled:.3f}, signed r-zeta2 {['%+.2e' % d for d in signed]}")


def test_criterion_04_symbolic_coefficients():
    series = expansion_coefficients(3)
    gamma = SymbolicConstantPoly.from_symbol(GAMMA)
    zeta2 = SymbolicConstantPoly.from_symbol(zeta_symbol(2))
    c2_expected = gamma * Fraction(-1)
    c3_expected = gamma * gamma - zeta2
    ok = series.coefficient(2) == c2_expected and series.coefficient(3) == c3_expected
    _report(4, "symbolic c2, c3", ok, f"c2={series.coefficient(2)}, c3={series.coefficient(3)}")


def test_criterion_05_c4_adjudication():
    prec = Precision(192)
    L = 1000
    bound = 10.0 * float(L) ** -5
    candidates = c4_candidates()
    binding = default_binding(4, prec)
    alpha_star = truncated_alpha(L, prec)
    with prec.context():
        three_terms = evaluate_expansion_at_log(L, 3, binding, prec)
        quartic = mpfr(L) ** -4
        gap_rev = abs(alpha_star - (three_terms + candidates["c4_reversion"].evaluate(binding, prec) * quartic))
        gap_alt = abs(alpha_star - (three_terms + candidates["c4_alternate"].evaluate(binding, prec) * quartic))
    ok = float(gap_rev) <= bound and float(gap_alt) >= 10 * bound
    _report(5, "c4 adjudication", ok, f"reversion gap {float(gap_rev):.2e} <= {bound:.0e}, alternate gap {float(gap_alt):.2e}")


def test_criterion_06_combinatorial_identities():
    ok = all(b_entry(m, m) == (-1) ** (m - 1) * math.factorial(m - 1) for m in range(1, 31))
    ok = ok and all(
        b_entry(k, m) == (-1) ** (k - 1) * math.factorial(k - 1) * stirling2(m, k)
        for m in range(1, 21)
        for k in range(1, m + 1)
    )
    ok = ok and all(
        c_entry(k, m) == (-1) ** (m - 1) * eulerian(k, m - 1)
        for m in range(2, 13)
        for k in range(1, m + 1)
    )
    ok = ok and all(
        alternating_c_sum(n) == Fraction((-1) ** n * 2**n * (2**n - 1)) * bernoulli(n) / n
        for n in range(2, 31)
    )
    ok = ok and all(sum(eulerian(k, m) for k in range(1, m + 1)) == math.factorial(m) for m in range(1, 9))
    _report(6, "exact triangle identities", ok, "b/c/eulerian/bernoulli rows exact")


def test_criterion_07_second_logderiv():
    worst = 0.0
    exact = True
    for n in range(3, 13):
        lhs, rhs = second_logderiv_sides(n, P)
        exact = exact and lhs == mpfr(mpq(n * n - 2 * n, 4))
        with P.context():
            worst = max(worst, float(abs(rhs.real - lhs)), float(abs(rhs.imag)))
        assert float(abs(rhs.real - lhs)) <= 1e-10 * n * n
        assert float(abs(rhs.imag)) <= 1e-10 * n * n
    _report(7, "second log-derivative identity", exact, f"lhs exact, worst residual {worst:.2e}")


def test_criterion_08_zeta2_reproduction():
    n = 10**4
    finite = zeta2_finite(n, P)
    with P.context():
        quarter_err = float(abs(finite - pi_const(P) ** 2 / 4))
        chained = zeta_from_odd(2, finite / 2, P)
        sixth_err = float(abs(chained - pi_const(P) ** 2 / 6))
    bound = 10 * math.log(n) / n
    ok = quarter_err <= bound and sixth_err <= 1e-2
    _report(8, "zeta(2) reproduction", ok, f"quarter err {quarter_err:.2e} <= {bound:.2e}, chained err {sixth_err:.2e}")


def test_criterion_09_zeta_even_vs_partial():
    gaps = []
    for n in range(1, 6):
        with P.context():
            gap = float(abs(zeta_even_closed(n, P) - zeta_partial(2 * n, 10**6, P)))
        gaps.append(gap)
        assert gap <= (2e-6 if n == 1 else 1e-12), (n, gap)
    _report(9, "zeta(2n) closed vs direct", True, f"gaps {['%.1e' % g for g in gaps]}")


def test_criterion_10_theta_tower():
    rng = random.Random(46368)
    worst = 0.0
    for n in range(1, 9):
        for m in range(1, 7):
            for _ in range(20):
                while True:
                    mag = rng.uniform(0.5, 2.0)
                    ang = rng.uniform(0.0, 1.0)
                    z = gmpy2.mpc(mag * math.cos(2 * math.pi * ang), mag * math.sin(2 * math.pi * ang))
                    if min(abs(z - e_unit(Fraction(j, n), P)) for j in range(n)) > 0.05:
                        break
                lhs = theta_lhs(z, n, m, P)
                rhs = theta_rhs(z, n, m, P)
                with P.context():
                    rel = float(abs(lhs - rhs) / abs(lhs))
                worst = max(worst, rel)
    _report(10, "theta tower identity", worst <= 1e-9, f"worst relative split {worst:.2e} over 960 points")


def test_criterion_11_cosecant():
    worst = 0.0
    with P.context():
        pi = pi_const(P)
        cases = ((Fraction(1, 4), 2 * pi**2), (Fraction(1, 3), 4 * pi**2 / 3), (Fraction(1, 2), pi**2))
    for t, ref in cases:
        s = two_sided_power_sum(t, 2, 10**5, P)
        with P.context():
            worst = max(worst, float(abs(s - ref)))
    _report(11, "cosecant identity", worst <= 4e-5, f"worst truncation error {worst:.2e} <= 4e-5")


def test_criterion_12_dirichlet_values():
    chi4 = {1: 1, 3: -1}
    matched = dirichlet_L(4, chi4, 3, 10**4, P)
    mismatched = dirichlet_L(4, chi4, 2, 10**4, P)
    with P.context():
        err = float(abs(matched - pi_const(P) ** 3 / 32))
        leak = float(abs(mismatched))
    ok = err <= 1e-8 and leak <= 1e-8
    _report(12, "Dirichlet L values", ok, f"L(3,chi4) err {err:.2e}, parity leak {leak:.2e}")


def test_criterion_13_repulsion_symmetry():
    n = 10
    values = [find_root(GapQuery(n, gap), P).value for gap in range(n)]
    repelled = all(float(values[i]) < i + 0.5 for i in range(n) if i < (n - 1) / 2)
    with P.context():
        worst = max(float(abs(values[i] + values[n - 1 - i] - n)) for i in range(n))
    ok = repelled and worst <= 1e-12
    _report(13, "repulsion and symmetry", ok, f"repulsion holds, worst symmetry defect {worst:.2e}")
