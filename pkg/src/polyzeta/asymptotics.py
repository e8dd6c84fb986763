"""Asymptotics of the first critical point alpha(N) in (0, 1).

Writing u = 1/log N, the critical point satisfies

    1/alpha = 1/u + gamma + sum_{i>=1} zeta(i+1) alpha^i + (terms -> 0),

and reverting this relation gives a formal series

    alpha = u + c_2 u^2 + c_3 u^3 + ...

whose coefficients are exact polynomials in gamma and zeta values:
c_2 = -gamma, c_3 = gamma^2 - zeta(2), and so on.  This module carries the
symbolic side (SymbolicConstantPoly, FormalSeries, the reversion) and the
numeric side (evaluating the expansion, measuring how fast the true root
approaches it, and fitting coefficients empirically from a truncated model
equation).

Two closed forms circulate for c_4; the reversion gives

    c_4 = -gamma^3 + 3 gamma zeta(2) - zeta(3)

while an alternate form (zeta(3) - gamma zeta(2) + zeta(2) - gamma) also
appears in print.  Reports here always show both candidates next to the
empirical fit, which decides between them; see c4_candidates().
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

import gmpy2
from gmpy2 import mpfr, mpq

from .combinatorics import bernoulli
from .errors import BindingError, CapabilityError, ConvergenceError, DomainError
from .numerics import DEFAULT_PRECISION, Precision, euler_gamma, round_to
from .roots import GapQuery, find_root

__all__ = [
    "ConstSymbol",
    "GAMMA",
    "zeta_symbol",
    "SymbolicConstantPoly",
    "FormalSeries",
    "expansion_coefficients",
    "reversion_residual",
    "c4_candidates",
    "zeta_value",
    "default_binding",
    "evaluate_expansion",
    "evaluate_expansion_at_log",
    "inverse_expansion_check",
    "truncated_alpha",
    "empirical_coefficient_fit",
]


# ---------------------------------------------------------------------------
# symbols and polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConstSymbol:
    """Either Euler's gamma (zeta_index 0) or zeta(k) for integer k >= 2."""

    zeta_index: int = 0

    def __post_init__(self):
        bad = (
            not isinstance(self.zeta_index, int)
            or isinstance(self.zeta_index, bool)
            or self.zeta_index < 0
            or self.zeta_index == 1
        )
        if bad:
            raise DomainError(
                f"symbol must be gamma (index 0) or zeta(k >= 2), got index {self.zeta_index!r}"
            )

    @property
    def is_gamma(self) -> bool:
        return self.zeta_index == 0

    @property
    def name(self) -> str:
        return "gamma" if self.is_gamma else f"zeta{self.zeta_index}"

    @property
    def weight(self) -> int:
        # gamma weighs 1 and zeta(k) weighs k; these are the weights under
        # which every expansion coefficient c_j is homogeneous of degree j-1
        return 1 if self.is_gamma else self.zeta_index

    @property
    def sort_key(self) -> tuple:
        return (0, 0) if self.is_gamma else (1, self.zeta_index)

    def __str__(self):
        return self.name


GAMMA = ConstSymbol(0)


def zeta_symbol(k: int) -> ConstSymbol:
    if not isinstance(k, int) or isinstance(k, bool) or k < 2:
        raise DomainError(f"zeta symbols need integer k >= 2, got {k!r}")
    return ConstSymbol(k)


def _canonical_monomial(mono) -> tuple:
    merged: dict[ConstSymbol, int] = {}
    for sym, exp in mono:
        if not isinstance(sym, ConstSymbol):
            raise DomainError(f"monomial factor {sym!r} is not a ConstSymbol")
        if not isinstance(exp, int) or exp < 1:
            raise DomainError(f"monomial exponent must be a positive integer, got {exp!r}")
        merged[sym] = merged.get(sym, 0) + exp
    return tuple(sorted(merged.items(), key=lambda it: it[0].sort_key))


def _mono_degree(mono) -> int:
    return sum(exp for _, exp in mono)


def _mono_weight(mono) -> int:
    return sum(sym.weight * exp for sym, exp in mono)


def _mono_display_key(mono) -> tuple:
    flat = []
    for sym, exp in mono:
        flat.extend([sym.sort_key] * exp)
    return (-_mono_degree(mono), tuple(flat))


class SymbolicConstantPoly:
    """Exact-rational polynomial in gamma and zeta(k) symbols.

    Stored as monomial -> Fraction with zero coefficients dropped, so
    ``==`` is structural identity.  Monomials are kept in the canonical
    graded order gamma < zeta2 < zeta3 < ...
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for mono, coeff in (terms or {}).items():
            c = Fraction(coeff)
            if c != 0:
                key = _canonical_monomial(mono)
                clean[key] = clean.get(key, Fraction(0)) + c
        self.terms = {k: v for k, v in clean.items() if v != 0}

    # --- constructors ---

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def constant(cls, q):
        return cls({(): Fraction(q)})

    @classmethod
    def from_symbol(cls, sym: ConstSymbol):
        return cls({((sym, 1),): Fraction(1)})

    # --- structure ---

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((_mono_degree(m) for m in self.terms), default=0)

    def weights(self) -> tuple:
        """Distinct monomial weights present (gamma -> 1, zeta(k) -> k)."""
        return tuple(sorted({_mono_weight(m) for m in self.terms}))

    def __eq__(self, other):
        if not isinstance(other, SymbolicConstantPoly):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    # --- arithmetic ---

    def __neg__(self):
        return SymbolicConstantPoly({m: -c for m, c in self.terms.items()})

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SymbolicConstantPoly.constant(other)
        if not isinstance(other, SymbolicConstantPoly):
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return SymbolicConstantPoly(out)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SymbolicConstantPoly.constant(other)
        if not isinstance(other, SymbolicConstantPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return SymbolicConstantPoly({m: c * Fraction(other) for m, c in self.terms.items()})
        if not isinstance(other, SymbolicConstantPoly):
            return NotImplemented
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                key = _canonical_monomial(m1 + m2)
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return SymbolicConstantPoly(out)

    __rmul__ = __mul__

    # --- numerics and display ---

    def evaluate(self, binding: dict, prec: Precision | None = None):
        """Numeric value under ``binding`` (ConstSymbol -> mpfr).

        With ``prec`` the result is computed and rounded at that precision;
        without it the current gmpy2 context applies.  A symbol absent from
        the binding raises BindingError naming it.
        """
        if prec is not None:
            with prec.context(16):
                val = self.evaluate(binding)
            return round_to(prec, val)
        total = mpfr(0)
        for mono in sorted(self.terms, key=_mono_display_key):
            coeff = self.terms[mono]
            term = mpfr(mpq(coeff.numerator, coeff.denominator))
            for sym, exp in mono:
                if sym not in binding:
                    raise BindingError(sym.name)
                term *= mpfr(binding[sym]) ** exp
            total += term
        return total

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for mono in sorted(self.terms, key=_mono_display_key):
            coeff = self.terms[mono]
            mag = abs(coeff)
            factors = "*".join(
                sym.name if exp == 1 else f"{sym.name}^{exp}" for sym, exp in mono
            )
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = factors
            else:
                body = f"{mag}*{factors}"
            chunks.append(("-" if coeff < 0 else "+", body))
        sign, body = chunks[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in chunks[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"SymbolicConstantPoly({self})"


_ZERO = SymbolicConstantPoly.zero()
_ONE = SymbolicConstantPoly.constant(1)


# ---------------------------------------------------------------------------
# formal series and the reversion
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FormalSeries:
    """alpha(u) = sum_{j=1..order} c_j u^j with symbolic coefficients."""

    coeffs: tuple

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def coefficient(self, j: int) -> SymbolicConstantPoly:
        if not isinstance(j, int) or not (1 <= j <= self.order):
            raise DomainError(f"coefficient index must lie in [1, {self.order}], got {j!r}")
        return self.coeffs[j - 1]

    def rows(self):
        return [(f"c{j}", str(self.coeffs[j - 1])) for j in range(1, self.order + 1)]

    def __str__(self):
        return "; ".join(f"{name} = {text}" for name, text in self.rows())


def _series_mul(a, b, order):
    out = [_ZERO] * (order + 1)
    for i, ai in enumerate(a):
        if ai.is_zero or i > order:
            continue
        for j in range(order - i + 1):
            bj = b[j]
            if not bj.is_zero:
                out[i + j] = out[i + j] + ai * bj
    return out


def _series_inv(a, order):
    # standard power-series reciprocal; needs unit constant term
    if a[0] != _ONE:
        raise DomainError("series inversion requires constant term 1")
    inv = [_ONE] + [_ZERO] * order
    for n in range(1, order + 1):
        acc = _ZERO
        for i in range(1, n + 1):
            ai = a[i] if i < len(a) else _ZERO
            if not (ai.is_zero or inv[n - i].is_zero):
                acc = acc + ai * inv[n - i]
        inv[n] = -acc
    return inv


@lru_cache(maxsize=None)
def expansion_coefficients(order: int) -> FormalSeries:
    """Revert 1/alpha = 1/u + gamma + sum zeta(i+1) alpha^i to given order.

    Fixed-point form alpha = u / (1 + u (gamma + sum_i zeta(i+1) alpha^i));
    every pass gains at least one correct order, so ``order`` passes settle
    c_1..c_order.  Coefficient c_j only involves gamma and zeta(2..j-1).
    """
    if not isinstance(order, int) or isinstance(order, bool) or order < 1:
        raise DomainError(f"expansion order must be a positive integer, got {order!r}")
    gamma = SymbolicConstantPoly.from_symbol(GAMMA)
    zetas = [SymbolicConstantPoly.from_symbol(zeta_symbol(i + 1)) for i in range(1, order - 1)]
    alpha = [_ZERO, _ONE] + [_ZERO] * (order - 1)
    for _ in range(order):
        inner = [gamma] + [_ZERO] * order
        power = [_ONE] + [_ZERO] * order
        for i in range(1, order - 1):
            power = _series_mul(power, alpha, order)
            z = zetas[i - 1]
            inner = [gj + z * pj for gj, pj in zip(inner, power)]
        denom = [_ONE] + inner[:order]
        inv = _series_inv(denom, order)
        alpha = [_ZERO] + inv[:order]
    return FormalSeries(tuple(alpha[1 : order + 1]))


def reversion_residual(order: int):
    """Coefficients of u^0..u^(order-1) in alpha*(1/u + gamma + sum zeta alpha^i) - 1.

    Substituting the computed series back into the defining relation must
    reproduce it identically; every returned polynomial should be zero.
    """
    series = expansion_coefficients(order)
    alpha = [_ZERO] + list(series.coeffs)
    gamma = SymbolicConstantPoly.from_symbol(GAMMA)
    residual = [_ZERO] * order
    residual[0] = alpha[1] - _ONE
    for j in range(1, order):
        residual[j] = alpha[j + 1] + gamma * alpha[j]
    power = alpha
    for i in range(1, order - 1):
        power = _series_mul(power, alpha, order)
        z = SymbolicConstantPoly.from_symbol(zeta_symbol(i + 1))
        for j in range(order):
            if not power[j].is_zero:
                residual[j] = residual[j] + z * power[j]
    return residual


def c4_candidates() -> dict:
    """Both circulating closed forms for c_4, keyed for reports."""
    g = SymbolicConstantPoly.from_symbol(GAMMA)
    z2 = SymbolicConstantPoly.from_symbol(zeta_symbol(2))
    z3 = SymbolicConstantPoly.from_symbol(zeta_symbol(3))
    return {
        "c4_reversion": expansion_coefficients(4).coefficient(4),
        "c4_alternate": z3 - g * z2 + z2 - g,
    }


# ---------------------------------------------------------------------------
# zeta constants and bindings
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _zeta_em(k: int, bits: int):
    """zeta(k) by Euler-Maclaurin off the tail of the partial sum.

    Cutoff P is a power of two (so the correction denominators are exact
    binary scalings) slightly above the bit demand; correction terms use
    the package's own exact Bernoulli numbers.
    """
    guard = 32
    work = bits + guard
    P = 1 << max(7, bits.bit_length())
    threshold = Fraction(1, 2 ** (work + 8))
    with gmpy2.context(precision=work):
        acc = mpfr(0)
        one = mpfr(1)
        for m in range(P, 0, -1):
            acc += one / (m**k)
        acc += mpfr(mpq(1, (k - 1) * P ** (k - 1)))
        acc -= mpfr(mpq(1, 2 * P**k))
        rising = k  # product k(k+1)...(k+2j-2), grown two factors per step
        j = 1
        while True:
            frac = (
                bernoulli(2 * j)
                / factorial(2 * j)
                * rising
                * Fraction(1, P ** (k + 2 * j - 1))
            )
            acc += mpfr(mpq(frac.numerator, frac.denominator))
            if abs(frac) < threshold:
                break
            j += 1
            if j > 300:
                raise CapabilityError(
                    f"zeta({k}) Euler-Maclaurin did not settle at {bits} bits"
                )
            rising *= (k + 2 * j - 3) * (k + 2 * j - 2)
        result = acc
    return round_to(Precision(bits), result)


def zeta_value(k: int, prec: Precision = DEFAULT_PRECISION):
    """zeta(k) for integer k >= 2 at full precision (Euler-Maclaurin)."""
    if not isinstance(k, int) or isinstance(k, bool) or k < 2:
        raise DomainError(f"zeta_value needs integer k >= 2, got {k!r}")
    return _zeta_em(k, prec.bits)


def default_binding(order: int, prec: Precision = DEFAULT_PRECISION) -> dict:
    """Numeric values for every symbol expansion_coefficients(order) uses."""
    if not isinstance(order, int) or isinstance(order, bool) or order < 1:
        raise DomainError(f"expansion order must be a positive integer, got {order!r}")
    binding = {GAMMA: euler_gamma(prec)}
    for k in range(2, order):
        binding[zeta_symbol(k)] = zeta_value(k, prec)
    return binding


# ---------------------------------------------------------------------------
# numeric evaluation and checks
# ---------------------------------------------------------------------------


def evaluate_expansion_at_log(log_n, order: int, binding: dict, prec: Precision = DEFAULT_PRECISION):
    """sum_{j=1..order} c_j / log_n^j for an explicitly supplied log value."""
    series = expansion_coefficients(order)
    with prec.context(16):
        L = mpfr(log_n)
        if not L > 0:
            raise DomainError(f"log value must be positive, got {log_n!r}")
        u = 1 / L
        acc = mpfr(0)
        for j in range(order, 0, -1):
            acc = (acc + series.coefficient(j).evaluate(binding)) * u
    return round_to(prec, acc)


def evaluate_expansion(n: int, order: int, binding: dict, prec: Precision = DEFAULT_PRECISION):
    """The expansion evaluated at u = 1/log n, for integer n >= 3."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 3:
        raise DomainError(f"expansion evaluation needs integer n >= 3, got {n!r}")
    with prec.context(16):
        L = gmpy2.log(mpfr(n))
    return evaluate_expansion_at_log(L, order, binding, prec)


def inverse_expansion_check(n: int, prec: Precision = DEFAULT_PRECISION):
    """r(n) = (1/alpha_true - log n - gamma) * log n.

    As n grows this approaches zeta(2) at rate O(1/log n); comparing it
    with pi^2/6 is the cleanest numeric witness of the second-order term.
    n >= 10 keeps the root solve in a regime where the tail terms are
    already far below the leading behavior.
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 10:
        raise DomainError(f"inverse expansion check needs integer n >= 10, got {n!r}")
    root = find_root(GapQuery(n, 0), prec).value
    gamma = euler_gamma(prec)
    with prec.context(16):
        L = gmpy2.log(mpfr(n))
        r = (1 / mpfr(root) - L - gamma) * L
    return round_to(prec, r)


def truncated_alpha(L, prec: Precision = DEFAULT_PRECISION):
    """Root of the truncated model 1/a = L + gamma + z2 a + z3 a^2 + z4 a^3.

    This synthetic equation has no finite-N tail, so its solution isolates
    the expansion coefficients: the fit below reads them off one by one.
    """
    guard = 48
    with prec.context(guard):
        Lf = mpfr(L)
        if not Lf > 1:
            raise DomainError(f"model log value must exceed 1, got {L!r}")
        wide = Precision(prec.bits + guard)
        g = euler_gamma(wide)
        z2 = zeta_value(2, wide)
        z3 = zeta_value(3, wide)
        z4 = zeta_value(4, wide)
        x = 1 / Lf
        tol = mpfr(2) ** (-(prec.bits + guard - 16))
        for _ in range(80):
            fx = 1 / x - Lf - g - z2 * x - z3 * x * x - z4 * x * x * x
            fpx = -1 / (x * x) - z2 - 2 * z3 * x - 3 * z4 * x * x
            step = fx / fpx
            x = x - step
            if abs(step) <= tol:
                break
        else:
            raise ConvergenceError("truncated model Newton did not settle", bracket=None)
    return round_to(prec, x)


def empirical_coefficient_fit(j: int, L, prec: Precision = DEFAULT_PRECISION):
    """Estimate c_j from the truncated model at synthetic log value L.

    Solves the model, subtracts the lower-order expansion terms, and
    rescales:  (alpha(L) - sum_{i<j} c_i/L^i) * L^j  =  c_j + O(1/L).
    j must be 2, 3 or 4 and L at least 100.
    """
    if not isinstance(j, int) or isinstance(j, bool) or not (2 <= j <= 4):
        raise DomainError(f"fit order j must be 2, 3 or 4, got {j!r}")
    guard = 48
    with prec.context(guard):
        Lf = mpfr(L)
        if not Lf >= 100:
            raise DomainError(f"fit needs L >= 100, got {L!r}")
        wide = Precision(prec.bits + guard)
        alpha = truncated_alpha(Lf, wide)
        binding = default_binding(max(j, 3), wide)
        series = expansion_coefficients(j - 1)
        acc = mpfr(alpha)
        for i in range(1, j):
            acc -= series.coefficient(i).evaluate(binding) / Lf**i
        est = acc * Lf**j
    return round_to(prec, est)
