"""Named invariant checks and convergence tables behind `verify`.

Each check re-derives a property the library is supposed to guarantee and
reports a worst-case residual.  The default set is sized to finish in a
few seconds; the heavy N-grids live in convergence_table so callers opt
into them explicitly.
"""

import math
import random
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
from gmpy2 import mpfr, mpq

from . import asymptotics, unity
from .combinatorics import (
    alternating_c_sum,
    b_entry,
    bernoulli,
    c_entry,
    eulerian,
    eulerian_row_factorial,
    stirling2,
)
from .errors import DomainError
from .numerics import Precision, e_unit, harmonic, pi_const, zeta_partial
from .roots import GapQuery, find_root

__all__ = ["CheckResult", "CHECK_NAMES", "run_check", "run_all", "CONVERGENCE_KINDS", "convergence_table"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str


def _check_small_roots(prec):
    est1 = find_root(GapQuery(1, 0), prec)
    with prec.context():
        d1 = abs(est1.value - mpq(1, 2))
        ref = 1 - 1 / gmpy2.sqrt(mpfr(3))
        d2 = abs(find_root(GapQuery(2, 0), prec).value - ref)
        worst = max(d1, d2)
    return worst <= mpfr(2) ** (-prec.bits // 2), f"worst deviation {float(worst):.3e}"


def _check_root_symmetry(prec):
    n = 10
    with prec.context():
        tol = mpfr(2) ** (-prec.bits // 2)
        worst = mpfr(0)
        ok = True
        for gap in range(n):
            value = find_root(GapQuery(n, gap), prec).value
            mirror = find_root(GapQuery(n, n - 1 - gap), prec).value
            worst = max(worst, abs(value + mirror - n))
            if gap < (n - 1) / 2 and not value < gap + mpq(1, 2):
                ok = False
        ok = ok and worst <= tol
    return ok, f"worst symmetry defect {float(worst):.3e}"


def _check_harmonic(prec):
    ok = True
    with prec.context():
        prev = harmonic(1, prec)
        for n in range(2, 40):
            cur = harmonic(n, prec)
            ok = ok and cur > prev
            prev = cur
        for n in (10, 100):
            gap = zeta_partial(2, 2 * n, prec) - zeta_partial(2, n, prec)
            ok = ok and 0 < gap < mpq(1, n)
    return ok, "monotone harmonic numbers, sandwiched zeta tails"


def _check_triangles(prec):
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
    ok = ok and all(
        sum(eulerian(k, m) for k in range(1, m + 1)) == eulerian_row_factorial(m)
        for m in range(1, 9)
    )
    return ok, "b, c, Eulerian and Bernoulli identities exact"


def _check_second_logderiv(prec):
    with prec.context():
        worst = mpfr(0)
        for n in range(3, 13):
            lhs, rhs = unity.second_logderiv_sides(n, prec)
            worst = max(worst, abs(rhs.real - lhs) / n**2, abs(rhs.imag) / n**2)
    return worst <= mpfr("1e-10"), f"worst scaled residual {float(worst):.3e}"


def _check_theta_tower(prec):
    rng = random.Random(60309)
    with prec.context():
        worst = mpfr(0)
        for n in range(1, 5):
            for m in range(1, 5):
                for _ in range(5):
                    z = _random_off_circle_point(rng, n, prec)
                    lhs = unity.theta_lhs(z, n, m, prec)
                    rhs = unity.theta_rhs(z, n, m, prec)
                    worst = max(worst, abs(lhs - rhs) / abs(lhs))
    return worst <= mpfr("1e-9"), f"worst relative split {float(worst):.3e}"


def _random_off_circle_point(rng, n, prec):
    while True:
        mag = rng.uniform(0.5, 2.0)
        ang = rng.uniform(0.0, 1.0)
        z = gmpy2.mpc(mag * math.cos(2 * math.pi * ang), mag * math.sin(2 * math.pi * ang))
        if min(abs(z - e_unit(Fraction(j, n), prec)) for j in range(n)) > 0.05:
            return z


def _check_zeta_chain(prec):
    with prec.context(64):
        odd_part = pi_const(Precision(prec.bits + 64)) ** 2 / 8
    chained = unity.zeta_from_odd(2, odd_part, prec)
    closed = unity.zeta_even_closed(1, prec)
    with prec.context():
        direct_gap = abs(unity.zeta_even_closed(2, prec) - zeta_partial(4, 10**4, prec))
        ok = chained == closed and direct_gap < mpfr("1e-11")
    return ok, f"chain equal: {chained == closed}, zeta(4) vs partial gap {float(direct_gap):.3e}"


def _check_cosecant(prec):
    with prec.context():
        s = unity.two_sided_power_sum(Fraction(1, 2), 2, 10**3, prec)
        err = abs(s - pi_const(prec) ** 2)
    return err <= mpfr("4e-3"), f"residual {float(err):.3e} at truncation 10^3"


def _check_reversion(prec):
    residual = asymptotics.reversion_residual(6)
    ok = all(poly.is_zero for poly in residual)
    series = asymptotics.expansion_coefficients(6)
    for j in range(2, 7):
        ok = ok and series.coefficient(j).weights() == (j - 1,)
    return ok, "series reversion closes and stays weight homogeneous"


def _check_determinism(prec):
    a = find_root(GapQuery(5, 2), prec).value
    b = find_root(GapQuery(5, 2), prec).value
    c = unity.zeta2_finite(100, prec)
    d = unity.zeta2_finite(100, prec)
    ok = a == b and c == d and gmpy2.digits(a) == gmpy2.digits(b)
    return ok, "repeated evaluations bit-identical"


_CHECKS = {
    "small-roots": _check_small_roots,
    "root-symmetry": _check_root_symmetry,
    "harmonic": _check_harmonic,
    "triangles": _check_triangles,
    "second-logderiv": _check_second_logderiv,
    "theta-tower": _check_theta_tower,
    "zeta-chain": _check_zeta_chain,
    "cosecant": _check_cosecant,
    "reversion": _check_reversion,
    "determinism": _check_determinism,
}

CHECK_NAMES = tuple(_CHECKS)


def run_check(name, prec):
    try:
        fn = _CHECKS[name]
    except KeyError:
        raise DomainError(f"unknown check {name!r}; known: {', '.join(CHECK_NAMES)}") from None
    ok, detail = fn(prec)
    return CheckResult(name, ok, detail)


def run_all(prec):
    return [run_check(name, prec) for name in CHECK_NAMES]


CONVERGENCE_KINDS = ("theorem1", "theorem2", "zeta2finite")


def convergence_table(kind, ns, prec):
    """Residual and normalized-decay columns over an ascending N grid.

    theorem1 rows carry |1/alpha - log N| (bounded by 2), theorem2 rows
    |1/alpha - log N - gamma - zeta(2)/log N| scaled by log^2 N (bounded
    by 10), zeta2finite rows |sum - pi^2/4| scaled by N/log N (bounded by
    10).
    """
    if kind not in CONVERGENCE_KINDS:
        raise DomainError(f"unknown kind {kind!r}; known: {', '.join(CONVERGENCE_KINDS)}")
    if not ns:
        raise DomainError("need at least one N")
    if list(ns) != sorted(set(ns)):
        raise DomainError("N grid must be strictly ascending")
    rows = []
    for n in ns:
        with prec.context():
            log_n = gmpy2.log(mpfr(n))
            if kind == "theorem1":
                alpha = find_root(GapQuery(n, 0), prec).value
                residual = abs(1 / alpha - log_n)
                normalized = residual
            elif kind == "theorem2":
                alpha = find_root(GapQuery(n, 0), prec).value
                binding = asymptotics.default_binding(3, prec)
                gamma = binding[asymptotics.GAMMA]
                zeta2 = binding[asymptotics.zeta_symbol(2)]
                residual = abs(1 / alpha - log_n - gamma - zeta2 / log_n)
                normalized = residual * log_n**2
            else:
                residual = abs(unity.zeta2_finite(n, prec) - pi_const(prec) ** 2 / 4)
                normalized = residual * n / log_n
        rows.append({"kind": kind, "n": n, "residual": residual, "normalized": normalized})
    return rows
