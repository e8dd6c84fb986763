"""High-precision scalar layer shared by every other module.

Numbers are gmpy2 ``mpfr``/``mpc`` values (MPFR / MPC: correctly rounded
binary floating point), always created under an explicit :class:`Precision`,
so identical inputs give bit-identical outputs on every run.

Euler's constant and pi are stored as 200+ digit decimal literals (about
670 bits; well above the 256-bit floor this package promises) rather than
computed on demand.  Each literal is self-validated the first time it is
used: gamma against the harmonic-number estimate

    H(10^6) - log(10^6) - 1/(2*10^6)  =  gamma + O(10^-13)

to within 1e-10, and pi by checking |sin(pi)| stays below 2^(-bits+8).
Asking for more bits than the literals carry raises CapabilityError.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
from gmpy2 import mpfr, mpq

from .errors import CapabilityError, DomainError

__all__ = [
    "Precision",
    "DEFAULT_PRECISION",
    "MIN_BITS",
    "CONST_CAPACITY_BITS",
    "e_unit",
    "harmonic",
    "euler_gamma",
    "pi_const",
    "zeta_partial",
    "zeta_partial_tail_bounds",
    "round_to",
]

MIN_BITS = 64
DEFAULT_BITS = 128

# Exact rational summation is used for harmonic numbers up to this index;
# beyond it the cost of huge denominators buys nothing and plain
# high-precision summation takes over.
EXACT_HARMONIC_LIMIT = 10**4


@dataclass(frozen=True)
class Precision:
    """Working precision in bits of mantissa (binary).  At least 64."""

    bits: int = DEFAULT_BITS

    def __post_init__(self):
        if not isinstance(self.bits, int) or isinstance(self.bits, bool):
            raise DomainError(f"precision bits must be an integer, got {self.bits!r}")
        if self.bits < MIN_BITS:
            raise DomainError(f"precision must be at least {MIN_BITS} bits, got {self.bits}")

    def context(self, guard: int = 0) -> "gmpy2.context":
        """A gmpy2 context at this precision plus ``guard`` headroom bits.

        Use as a context manager; the previous thread context is restored
        on exit.  Guard bits are internal headroom only: results handed
        back to callers are re-rounded to ``self.bits`` (see round_to).
        """
        return gmpy2.context(precision=self.bits + guard)

    @property
    def decimal_digits(self) -> int:
        # enough significant digits to round-trip the binary value
        return int(math.ceil(self.bits * math.log10(2))) + 2

    @property
    def eps(self) -> float:
        return 2.0 ** (-self.bits)


DEFAULT_PRECISION = Precision()


def round_to(prec: Precision, value):
    """Re-round a (possibly guard-precision) value to exactly prec.bits."""
    with prec.context():
        return +value


# ---------------------------------------------------------------------------
# stored constants
# ---------------------------------------------------------------------------

# 205 significant digits each (~680 bits).  Generated with mpmath at
# dps=220 and cross-checked against MPFR's const_euler / const_pi; the
# runtime oracles below re-validate them on first use.
_GAMMA_LITERAL = (
    "0.5772156649015328606065120900824024310421593359399235988057672348"
    "8486772677766467093694706329174674951463144724980708248096050401"
    "4486542836224173997644923536253500333742937337737673942792595258"
    "2470949160087"
)
_PI_LITERAL = (
    "3.1415926535897932384626433832795028841971693993751058209749445923"
    "0781640628620899862803482534211706798214808651328230664709384460"
    "9550582231725359408128481117450284102701938521105559644622948954"
    "930381964429"
)

# Published capacity: conservative, leaves headroom for internal guard bits
# below the ~676 bits the literals actually determine.
CONST_CAPACITY_BITS = 576
_LITERAL_HARD_CAP = 672

_validated = {"gamma": False, "pi": False}


def _check_capacity(prec: Precision, name: str) -> None:
    if prec.bits > CONST_CAPACITY_BITS:
        raise CapabilityError(
            f"stored {name} literal carries {CONST_CAPACITY_BITS} bits; "
            f"{prec.bits} bits requested"
        )


def _pi_raw(total_bits: int):
    """pi at an internal working precision (guard included)."""
    if total_bits > _LITERAL_HARD_CAP:
        raise CapabilityError(f"pi literal exhausted at {total_bits} bits")
    with gmpy2.context(precision=total_bits):
        return mpfr(_PI_LITERAL)


def _gamma_raw(total_bits: int):
    if total_bits > _LITERAL_HARD_CAP:
        raise CapabilityError(f"gamma literal exhausted at {total_bits} bits")
    with gmpy2.context(precision=total_bits):
        return mpfr(_GAMMA_LITERAL)


def _validate_pi() -> None:
    # |sin(x)| near pi equals |x - pi| to first order, so this checks every
    # stored digit, not just the leading ones.
    bits = 560
    with gmpy2.context(precision=bits + 32):
        s = abs(gmpy2.sin(_pi_raw(bits + 32)))
        if s > mpfr(2) ** (-bits + 8):
            raise CapabilityError("stored pi literal failed sin(pi) ~ 0 self-validation")
    _validated["pi"] = True


def _validate_gamma() -> None:
    p = Precision(DEFAULT_BITS)
    n = 10**6
    with p.context(32):
        h = harmonic(n, Precision(p.bits + 32))
        est = h - gmpy2.log(mpfr(n)) - mpq(1, 2 * n)
        if abs(_gamma_raw(p.bits + 32) - est) > mpfr("1e-10"):
            raise CapabilityError(
                "stored gamma literal failed harmonic-number self-validation"
            )
    _validated["gamma"] = True


def pi_const(prec: Precision = DEFAULT_PRECISION):
    """pi rounded to prec.bits, from the stored literal."""
    _check_capacity(prec, "pi")
    if not _validated["pi"]:
        _validate_pi()
    return round_to(prec, _pi_raw(prec.bits + 16))


def euler_gamma(prec: Precision = DEFAULT_PRECISION):
    """Euler's constant rounded to prec.bits, from the stored literal.

    First call pays ~0.5 s for the harmonic self-validation at N = 10^6;
    the outcome is cached for the process lifetime.
    """
    _check_capacity(prec, "gamma")
    if not _validated["gamma"]:
        _validate_gamma()
    return round_to(prec, _gamma_raw(prec.bits + 16))


# ---------------------------------------------------------------------------
# elementary sums
# ---------------------------------------------------------------------------


def e_unit(x, prec: Precision = DEFAULT_PRECISION):
    """exp(2 pi i x) as an mpc.

    x may be an int, float, Fraction, mpq or mpfr.  The fractional part is
    split off exactly first, so the function is exactly 1-periodic and
    stays accurate for large arguments; |result| = 1 within 2^(-bits+4).
    """
    guard = 16
    with prec.context(guard):
        if isinstance(x, Fraction):
            x = mpq(x.numerator, x.denominator)
        xf = mpfr(x)
        frac = xf - gmpy2.floor(xf)
        theta = 2 * _pi_raw(prec.bits + guard) * frac
        s, c = gmpy2.sin_cos(theta)
    with prec.context():
        return gmpy2.mpc(c, s)


def _harmonic_fraction(lo: int, hi: int) -> Fraction:
    # divide and conquer keeps the intermediate denominators small
    if lo == hi:
        return Fraction(1, lo)
    mid = (lo + hi) // 2
    return _harmonic_fraction(lo, mid) + _harmonic_fraction(mid + 1, hi)


def harmonic(n: int, prec: Precision = DEFAULT_PRECISION):
    """H(n) = 1 + 1/2 + ... + 1/n.

    Exact rational arithmetic (one final rounding) up to n = 10^4, direct
    high-precision summation with guard bits above that.  n must be a
    positive integer.
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise DomainError(f"harmonic index must be a positive integer, got {n!r}")
    if n <= EXACT_HARMONIC_LIMIT:
        frac = _harmonic_fraction(1, n)
        with prec.context():
            return mpfr(mpq(frac.numerator, frac.denominator))
    guard = 16 + n.bit_length()
    with prec.context(guard):
        total = mpfr(0)
        one = mpfr(1)
        for i in range(n, 0, -1):  # smallest terms first
            total += one / i
    return round_to(prec, total)


def zeta_partial(k: int, n: int, prec: Precision = DEFAULT_PRECISION):
    """Partial sum of zeta(k): sum of m^(-k) for m = 1..n.

    k must be an integer >= 2 (k = 1 diverges and is rejected), n a
    positive integer.  Terms are added smallest first.
    """
    if not isinstance(k, int) or isinstance(k, bool) or k < 2:
        raise DomainError(f"zeta partial sums need integer k >= 2, got {k!r}")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise DomainError(f"partial sum length must be a positive integer, got {n!r}")
    guard = 16 + n.bit_length()
    with prec.context(guard):
        total = mpfr(0)
        one = mpfr(1)
        for m in range(n, 0, -1):
            total += one / (m**k)
    return round_to(prec, total)


def zeta_partial_tail_bounds(k: int, n: int, prec: Precision = DEFAULT_PRECISION):
    """Open interval (lo, hi) guaranteed to contain zeta(k) - zeta_partial(k, n).

    Integral comparison gives
        1/((k-1)(n+1)^(k-1))  <  tail  <  1/((k-1) n^(k-1)).
    """
    if not isinstance(k, int) or isinstance(k, bool) or k < 2:
        raise DomainError(f"zeta tail bounds need integer k >= 2, got {k!r}")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise DomainError(f"partial sum length must be a positive integer, got {n!r}")
    with prec.context():
        lo = mpfr(mpq(1, (k - 1) * (n + 1) ** (k - 1)))
        hi = mpfr(mpq(1, (k - 1) * n ** (k - 1)))
    return lo, hi
