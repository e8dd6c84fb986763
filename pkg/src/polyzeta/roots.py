"""Critical points of p(x) = x(x-1)(x-2)...(x-N).

Between consecutive zeros g and g+1 the polynomial has exactly one
critical point, and it is the unique zero there of the logarithmic
derivative

    p'(x)/p(x) = sum_{j=0..N} 1/(x - j),

which is strictly decreasing on the gap (its derivative is a negative sum
of squares).  The solver brackets that zero and polishes it with Newton
iterations on the log-derivative itself; working entirely with the sum
avoids the astronomically large coefficients of p'.

Summation order matters at N = 10^6: terms are accumulated smallest
magnitude first (farthest lattice points first) on each side of x so the
rounding error stays near the last-bit level of the final sum.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import gmpy2
import numpy as np
from gmpy2 import mpfr

from .combinatorics import stirling1_signed
from .errors import CapabilityError, ConvergenceError, DomainError, PoleError
from .numerics import DEFAULT_PRECISION, Precision, round_to

__all__ = [
    "GapQuery",
    "RootEstimate",
    "CrosscheckResult",
    "logderiv_p",
    "find_root",
    "coefficient_form_crosscheck",
    "COEFF_CROSSCHECK_MAX_N",
]

# endpoint inset: far enough from the poles for a stable sign, yet the
# critical point always stays strictly inside (checked by the sign assert)
EPS_INSET = 2.0**-16

# the float64 pre-refinement stops here; its evaluation noise is ~3e-14
# so signs are still trustworthy at this width (|f| ~ 1e-12)
_F64_TARGET_WIDTH = 2.0**-40
_F64_NOISE_FLOOR = 1e-11

COEFF_CROSSCHECK_MAX_N = 12


@dataclass(frozen=True)
class GapQuery:
    """Which critical point: the one in (gap, gap+1) for p of degree n+1."""

    n: int
    gap: int = 0

    def __post_init__(self):
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 1:
            raise DomainError(f"polynomial index n must be a positive integer, got {self.n!r}")
        if not isinstance(self.gap, int) or isinstance(self.gap, bool):
            raise DomainError(f"gap must be an integer, got {self.gap!r}")
        if not (0 <= self.gap <= self.n - 1):
            raise DomainError(f"gap must lie in [0, {self.n - 1}], got {self.gap}")


@dataclass(frozen=True)
class RootEstimate:
    """A solved critical point.

    value     the root, rounded to precision.bits
    residual  log-derivative evaluated at exactly that rounded value
    """

    value: object
    residual: object
    iterations: int
    precision: Precision


class CrosscheckResult(NamedTuple):
    ok: bool
    normalized_residual: object
    scale: int


def _sum_logderiv(x, n: int):
    """sum 1/(x - j), j = 0..n, under the caller's context."""
    split = int(gmpy2.floor(x))
    below = mpfr(0)
    for j in range(0, min(split, n) + 1):
        below += 1 / (x - j)
    above = mpfr(0)
    for j in range(n, max(split, -1), -1):
        above += 1 / (x - j)
    return below + above


def _sum_logderiv_fp(x, n: int):
    """(f, f') with f = sum 1/(x - j); one pass, shared reciprocals."""
    split = int(gmpy2.floor(x))
    below = mpfr(0)
    dbelow = mpfr(0)
    for j in range(0, min(split, n) + 1):
        t = 1 / (x - j)
        below += t
        dbelow += t * t
    above = mpfr(0)
    dabove = mpfr(0)
    for j in range(n, max(split, -1), -1):
        t = 1 / (x - j)
        above += t
        dabove += t * t
    return below + above, -(dbelow + dabove)


def logderiv_p(x, n: int, prec: Precision = DEFAULT_PRECISION):
    """p'(x)/p(x) = sum_{j=0..n} 1/(x - j) at precision prec.

    Raises PoleError when x sits within 2^(-bits+4) of one of the integer
    poles 0..n.
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise DomainError(f"polynomial index n must be a positive integer, got {n!r}")
    with prec.context():
        xf = mpfr(x)
        nearest = int(gmpy2.floor(xf + mpfr(1) / 2))
        if 0 <= nearest <= n and abs(xf - nearest) <= mpfr(2) ** (-prec.bits + 4):
            raise PoleError(f"x = {xf} is within 2^(-{prec.bits}+4) of the pole at {nearest}")
        return _sum_logderiv(xf, n)


def _guard_bits(n: int) -> int:
    # headroom above the requested precision so that the Newton step
    # tolerance 2^(-bits+8) stays above the summation noise floor even at
    # n = 10^6 (noise ~ n * 2^-workbits)
    return 24 + n.bit_length()


def _solve(n: int, gap: int, prec: Precision) -> RootEstimate:
    bits = prec.bits
    guard = _guard_bits(n)
    with prec.context(guard):
        a = mpfr(gap) + mpfr(EPS_INSET)
        b = mpfr(gap + 1) - mpfr(EPS_INSET)
        fa = _sum_logderiv(a, n)
        fb = _sum_logderiv(b, n)
        # the sign change across the inset bracket is asserted on every solve
        if not (fa > 0 and fb < 0):
            raise ConvergenceError(
                f"log-derivative does not change sign on the inset bracket of gap {gap}",
                bracket=(round_to(prec, a), round_to(prec, b)),
            )

        # cheap float64 bisection narrows the bracket before any further
        # full-precision work; the refined bracket is re-verified in full
        # precision and discarded if the verification fails
        lattice = np.arange(0, n + 1, dtype=np.float64)
        wa, wb = float(a), float(b)
        while wb - wa > _F64_TARGET_WIDTH:
            mid = 0.5 * (wa + wb)
            if not (wa < mid < wb):
                break
            fm = float(np.sum(1.0 / (mid - lattice)))
            if not np.isfinite(fm) or abs(fm) < _F64_NOISE_FLOOR:
                break
            if fm > 0.0:
                wa = mid
            else:
                wb = mid
        if (wa, wb) != (float(a), float(b)):
            ra, rb = mpfr(wa), mpfr(wb)  # doubles embed exactly
            fra = _sum_logderiv(ra, n)
            frb = _sum_logderiv(rb, n)
            if fra > 0 and frb < 0:
                a, b = ra, rb

        iterations = 0
        cap = 10 * bits
        width_target = mpfr(2) ** (-((bits + 1) // 2))

        def budget_check():
            if iterations > cap:
                raise ConvergenceError(
                    f"no convergence within {cap} iterations for n={n}, gap={gap}",
                    bracket=(round_to(prec, a), round_to(prec, b)),
                )

        # bisection down to the contract width
        while b - a > width_target:
            iterations += 1
            budget_check()
            mid = (a + b) / 2
            fm = _sum_logderiv(mid, n)
            if fm == 0:
                a = b = mid
                break
            if fm > 0:
                a = mid
            else:
                b = mid

        # Newton, safeguarded by the bracket
        x = (a + b) / 2
        step_target = mpfr(2) ** (-bits + 8)
        while True:
            iterations += 1
            budget_check()
            f, fprime = _sum_logderiv_fp(x, n)
            if f == 0:
                break
            if f > 0:
                a = max(a, x)
            else:
                b = min(b, x)
            step = f / fprime
            nxt = x - step
            if not (a < nxt < b):
                nxt = (a + b) / 2
            done = abs(step) <= step_target
            x = nxt
            if done:
                break

    value = round_to(prec, x)
    with prec.context(guard):
        resid = _sum_logderiv(mpfr(value), n)
    residual = round_to(prec, resid)
    est = RootEstimate(value, residual, iterations, prec)
    assert gap < est.value < gap + 1
    return est


@lru_cache(maxsize=None)
def _solve_cached(n: int, gap: int, bits: int) -> RootEstimate:
    return _solve(n, gap, Precision(bits))


def find_root(query: GapQuery, prec: Precision = DEFAULT_PRECISION) -> RootEstimate:
    """Locate the critical point of p in (query.gap, query.gap + 1).

    Bracketing bisection from epsilon-inset endpoints down to width
    2^(-bits/2), then Newton until the step drops below 2^(-bits+8); at
    most 10*bits iterations, else ConvergenceError with the best bracket.
    Results are memoized per (n, gap, bits); the function is pure.
    """
    if not isinstance(query, GapQuery):
        raise DomainError(f"find_root expects a GapQuery, got {type(query).__name__}")
    return _solve_cached(query.n, query.gap, prec.bits)


def coefficient_form_crosscheck(
    query: GapQuery, prec: Precision = DEFAULT_PRECISION
) -> CrosscheckResult:
    """Independent check of a solved root against the coefficient form.

    p(x) = x(x-1)...(x-n) is the falling factorial with n+1 factors, so its
    coefficient of x^k is exactly stirling1_signed(n+1, k).  This expands p
    that way, differentiates term by term, and evaluates p' at the solved
    root by Horner.  Passes when |p'(root)| <= 2^(-bits/2) * scale with
    scale = max |coefficient of p'|.

    Coefficient growth is factorial, so this companion check is capped at
    n <= 12 and raises CapabilityError beyond.
    """
    if not isinstance(query, GapQuery):
        raise DomainError(f"crosscheck expects a GapQuery, got {type(query).__name__}")
    if query.n > COEFF_CROSSCHECK_MAX_N:
        raise CapabilityError(
            f"coefficient-form crosscheck supports n <= {COEFF_CROSSCHECK_MAX_N} "
            f"(factorial coefficient growth); got n = {query.n}"
        )
    root = find_root(query, prec).value
    n = query.n
    # p' coefficients: d/dx sum_k a_k x^k, a_k = stirling1_signed(n+1, k)
    dcoeffs = [k * stirling1_signed(n + 1, k) for k in range(1, n + 2)]
    scale = max(abs(c) for c in dcoeffs)
    with prec.context(16):
        acc = mpfr(0)
        for c in reversed(dcoeffs):  # Horner on c_1 + c_2 x + ... + c_{n+1} x^n
            acc = acc * root + c
        normalized = abs(acc) / scale
    normalized = round_to(prec, normalized)
    bound = mpfr(2) ** (-(prec.bits // 2))
    return CrosscheckResult(bool(normalized <= bound), normalized, scale)
