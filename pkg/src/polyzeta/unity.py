"""Roots-of-unity identities for q(z) = z^N - 1.

The engine evaluates both sides of the second-log-derivative identity at
z = e(1/2N), the tower of theta = z d/dz identities built on the b and c
triangles, the finite two-sided odd sum that converges to pi^2/4, the
closed form for zeta at even integers, two-sided arithmetic-progression
sums, and Dirichlet L-value assembly from those sums.

Representatives of the residues mod N are fixed to -N/2 < j <= N/2
throughout; any other choice would push |x| past 1 in the Taylor step.
"""

import math
from fractions import Fraction

import gmpy2
from gmpy2 import mpc, mpfr, mpq

from .combinatorics import b_entry, bernoulli, c_entry
from .errors import DomainError, InputError, PoleError
from .numerics import Precision, e_unit, pi_const, round_to

__all__ = [
    "representatives",
    "second_logderiv_sides",
    "taylor_inv_sq",
    "zeta2_finite",
    "zeta_from_odd",
    "zeta_even_closed",
    "theta_rhs",
    "theta_lhs",
    "two_sided_power_sum",
    "dirichlet_L",
]


def representatives(n):
    """Residues j mod n with -n/2 < j <= n/2, exactly n of them."""
    if n < 1:
        raise DomainError(f"modulus must be a positive integer, got {n}")
    return range(-((n + 1) // 2) + 1, n // 2 + 1)


def _as_real(x):
    # exact where possible: Fraction and int pass through as mpq
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, int):
        return mpq(x)
    if isinstance(x, (mpq, mpfr)):
        return x
    if isinstance(x, float):
        return mpfr(x)
    raise DomainError(f"expected a real scalar, got {type(x).__name__}")


def second_logderiv_sides(n, prec):
    """Both sides of the identity (N^2 - 2N)/4 = -sum_j (1 - e((2j-1)/2N))^-2.

    Returns (lhs, rhs) where lhs is the exact rational rounded once and rhs
    is the complex sum over the representatives.  The two agree within
    2^(-bits/2) * N^2 and the imaginary part of rhs is below the same
    bound.
    """
    if n < 3:
        raise DomainError(f"need n >= 3, got {n}")
    guard = 32 + n.bit_length()
    with prec.context(guard):
        # largest |2j - 1| first so the small terms accumulate ahead of
        # the big ones near the removed singularity
        order = sorted(representatives(n), key=lambda j: abs(2 * j - 1), reverse=True)
        acc = mpc(0)
        for j in order:
            w = 1 - e_unit(Fraction(2 * j - 1, 2 * n), Precision(prec.bits + guard))
            acc -= 1 / (w * w)
    lhs = round_to(prec, mpfr(mpq(n * n - 2 * n, 4)))
    return lhs, round_to(prec, acc)


def taylor_inv_sq(x, terms, prec):
    """Partial Taylor sum of (1 - e(x))^-2 about x = 0.

    The four available terms are -1/(4 pi^2 x^2), i/(2 pi x), 5/12 and
    -i pi x/6.  `terms` picks how many, in that order.
    """
    if not isinstance(terms, int) or not 1 <= terms <= 4:
        raise DomainError(f"terms must be an integer in [1, 4], got {terms}")
    xr = _as_real(x)
    if xr == 0 or abs(xr) >= 1:
        raise DomainError("expansion point must satisfy 0 < |x| < 1")
    guard = 16
    with prec.context(guard):
        pi = pi_const(Precision(prec.bits + guard))
        xf = mpfr(xr)
        acc = mpc(-1 / (4 * pi * pi * xf * xf))
        if terms >= 2:
            acc += mpc(0, 1 / (2 * pi * xf))
        if terms >= 3:
            acc += mpq(5, 12)
        if terms >= 4:
            acc += mpc(0, -pi * xf / 6)
    return round_to(prec, acc)


def zeta2_finite(n, prec):
    """Sum of (2j - 1)^-2 over the representatives of an even modulus.

    Approaches pi^2/4 as n grows; |result - pi^2/4| <= 10 log(n)/n.  Odd n
    leaves the odd integers unpaired, so only even n >= 4 is accepted.
    """
    if n < 4 or n % 2:
        raise DomainError(f"need an even modulus >= 4, got {n}")
    with prec.context(16 + n.bit_length()):
        acc = mpfr(0)
        # the set {2j-1} is symmetric for even n: +-1, +-3, ..., +-(n-1)
        for m in range(n - 1, 0, -2):
            acc += 2 / mpfr(m * m)
    return round_to(prec, acc)


def zeta_from_odd(k, zeta_odd_value, prec):
    """Recover zeta(k) from the odd-index-only sum: factor 2^k/(2^k - 1)."""
    if k < 2:
        raise DomainError(f"need k >= 2, got {k}")
    with prec.context(32):
        value = mpq(2**k, 2**k - 1) * zeta_odd_value
    return round_to(prec, value)


def zeta_even_closed(n, prec):
    """zeta(2n) = (-1)^(n+1) 2^(2n-1) pi^(2n) B_{2n} / (2n)!.

    The rational factor is exact; pi^(2n) is the only rounded quantity.
    """
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    coeff = (-1) ** (n + 1) * mpq(2 ** (2 * n - 1)) * mpq(bernoulli(2 * n)) / math.factorial(2 * n)
    guard = 32
    with prec.context(guard):
        pi = pi_const(Precision(prec.bits + guard))
        value = coeff * pi ** (2 * n)
    return round_to(prec, value)


def _nearest_unity_gap(z, n, prec):
    """Distance from z to the nearest nth root of unity."""
    with prec.context(16):
        if z == 0:
            return mpfr(1)
        two_pi = 2 * pi_const(Precision(prec.bits + 16))
        jstar = int(gmpy2.rint(n * gmpy2.phase(z) / two_pi))
        return abs(z - e_unit(Fraction(jstar % n, n), prec))


def _check_theta_args(z, n, m, prec):
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    if not isinstance(m, int) or m < 1:
        raise DomainError(f"theta order must be a positive integer, got {m}")
    zc = mpc(z)
    gap = _nearest_unity_gap(zc, n, prec)
    if gap <= mpfr(2) ** (-prec.bits + 8):
        raise PoleError(f"z within 2^{-prec.bits + 8} of an nth root of unity")
    return zc


def theta_rhs(z, n, m, prec):
    """theta^m log(z^n - 1) as the double sum over roots of unity.

    Computes sum_k b_{k,m} sum_j (z/(z - e(j/n)))^k with the inner Horner
    pass per representative j.
    """
    zc = _check_theta_args(z, n, m, prec)
    coeffs = [b_entry(k, m) for k in range(1, m + 1)]
    guard = 32 + m * max(1, n.bit_length())
    with prec.context(guard):
        acc = mpc(0)
        for j in representatives(n):
            r = zc / (zc - e_unit(Fraction(j, n), Precision(prec.bits + guard)))
            horner = mpc(0)
            for coeff in reversed(coeffs):
                horner = (horner + coeff) * r
            acc += horner
    return round_to(prec, acc)


def theta_lhs(z, n, m, prec):
    """theta^m log(z^n - 1) in closed form: n^m sum_k c_{k,m} z^(nk) / (z^n - 1)^m."""
    zc = _check_theta_args(z, n, m, prec)
    coeffs = [c_entry(k, m) for k in range(1, m + 1)]
    guard = 32 + m * max(1, n.bit_length())
    with prec.context(guard):
        zn = zc**n
        horner = mpc(0)
        for coeff in reversed(coeffs):
            horner = (horner + coeff) * zn
        value = mpq(n) ** m * horner / (zn - 1) ** m
    return round_to(prec, value)


def two_sided_power_sum(t, k, trunc, prec):
    """sum over |n| <= trunc of (n + t)^-k, accumulated in (n, -n) pairs.

    t is reduced mod 1 exactly before summing; an integral t sits on a
    pole.  For k = 2 the result approaches pi^2/sin^2(pi t) with error at
    most 4/trunc.
    """
    if k < 2:
        raise DomainError(f"need k >= 2, got {k}")
    if trunc < 10:
        raise DomainError(f"need truncation >= 10, got {trunc}")
    tq = mpq(_as_real(t))
    tq -= tq // 1
    if tq == 0:
        raise PoleError("offset t is an integer, the n = -t term is a pole")
    guard = 32
    with prec.context(guard):
        tf = mpfr(tq)
        acc = mpfr(0)
        # pairs first, far to near; the lone n = 0 term is the largest
        for j in range(trunc, 0, -1):
            acc += (j + tf) ** (-k) + (tf - j) ** (-k)
        acc += tf ** (-k)
    return round_to(prec, acc)


def dirichlet_L(modulus, chi, k, trunc, prec):
    """Assemble L(k, chi) from two-sided progression sums.

    chi maps residues mod `modulus` to character values; it must cover
    every residue coprime to the modulus and be zero elsewhere.  The
    assembly (1/2) sum_a chi(a) S(a/modulus, k) modulus^-k equals the
    L-value when chi(-1) (-1)^k = 1 and nearly cancels when the parities
    mismatch.
    """
    if modulus < 3:
        raise DomainError(f"need modulus >= 3, got {modulus}")
    if k < 2:
        raise DomainError(f"need k >= 2, got {k}")
    guard = 32
    table = {}
    for residue, value in chi.items():
        if not isinstance(residue, int):
            raise InputError(f"character table keys must be integers, got {residue!r}")
        with prec.context(guard):
            table[residue % modulus] = mpc(value)
    for a in range(modulus):
        cop = math.gcd(a, modulus) == 1
        if cop and a not in table:
            raise InputError(f"character table missing residue {a} coprime to {modulus}")
        if not cop and table.get(a, mpc(0)) != 0:
            raise InputError(f"character table nonzero at residue {a} sharing a factor with {modulus}")
    one = table[1 % modulus]
    if one != 1:
        raise InputError("character table must send 1 to 1")
    at_minus_one = table[(modulus - 1) % modulus]
    if at_minus_one != 1 and at_minus_one != -1:
        raise InputError("character table must send -1 to +1 or -1")
    inner = Precision(prec.bits + guard)
    with prec.context(guard):
        acc = mpc(0)
        for a in range(1, modulus):
            weight = table.get(a)
            if weight is None or weight == 0:
                continue
            acc += weight * two_sided_power_sum(mpq(a, modulus), k, trunc, inner)
        acc *= mpq(1, 2 * modulus**k)
    return round_to(prec, acc)
