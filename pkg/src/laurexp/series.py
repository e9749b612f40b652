"""Truncated Laurent series in 1/T over a finite field.

A series sum a_i T^(-i) is stored as (first, coeffs, precision): coeffs[j]
is the coefficient at index first+j, indices below first are known zero, and
indices at or beyond precision are unknown.  precision may be math.inf for
exactly known series (polynomials, the zero series).  Every operation
propagates precision pessimistically, so a verdict never claims an index it
cannot actually see.

Absolute values are integer exponents of |T|; no real number is ever formed.
"""

import math
from dataclasses import dataclass

from .ffield import FieldDescriptor, Polynomial, poly_gcd


class InsufficientPrecisionError(ValueError):
    def __init__(self, needed, available):
        self.needed = needed
        self.available = available
        super().__init__(
            f"series precision {available} cannot reach depth {needed}")


class NotContractingError(ValueError):
    pass


class LaurentSeries:
    __slots__ = ("field", "first", "coeffs", "precision")

    def __init__(self, field, first, coeffs, precision=None):
        coeffs = list(coeffs)
        if precision is None:
            precision = first + len(coeffs)
        if precision < first + len(coeffs):
            raise ValueError("precision cannot cut into stored coefficients")
        while coeffs and not coeffs[0]:
            coeffs.pop(0)
            first += 1
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        if not coeffs:
            first = precision
        self.field = field
        self.first = first
        self.coeffs = tuple(coeffs)
        self.precision = precision

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_coefficients(cls, field, start, coeffs, precision=None):
        return cls(field, start, [field.element(c) for c in coeffs], precision)

    @classmethod
    def zero(cls, field):
        return cls(field, 0, (), math.inf)

    @classmethod
    def from_polynomial(cls, field, poly: Polynomial):
        """Polynomial c(T) as the exactly known series with indices <= 0."""
        if poly.is_zero():
            return cls.zero(field)
        return cls(field, -poly.degree, tuple(reversed(poly.coeffs)), math.inf)

    # -- inspection -----------------------------------------------------------

    def is_known_zero(self):
        return not self.coeffs

    def valuation(self):
        """Leading index; for a series with no known nonzero term this is a
        lower bound (everything below precision is zero)."""
        return self.first if self.coeffs else self.precision

    def coeff(self, i):
        if i >= self.precision:
            raise InsufficientPrecisionError(i, self.precision)
        if self.first <= i < self.first + len(self.coeffs):
            return self.coeffs[i - self.first]
        return self.field.zero

    def known_coeffs(self, lo, hi):
        return tuple(self.coeff(i) for i in range(lo, hi))

    def __repr__(self):
        shown = ", ".join(f"{c}@{self.first + j}"
                          for j, c in enumerate(self.coeffs[:6]) if c)
        return (f"LaurentSeries({self.field}, [{shown}"
                f"{', ...' if len(self.coeffs) > 6 else ''}], prec={self.precision})")

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, LaurentSeries) or other.field is not self.field:
            raise ValueError("series over different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        precision = min(self.precision, other.precision)
        lo = min(self.valuation(), other.valuation(), precision)
        if lo >= precision:
            return LaurentSeries(self.field, precision, (), precision)
        if precision == math.inf:
            ends = [s.first + len(s.coeffs) for s in (self, other) if s.coeffs]
            hi = max(ends) if ends else lo
        else:
            hi = precision
        out = [self.coeff(i) + other.coeff(i) for i in range(lo, hi)]
        return LaurentSeries(self.field, lo, out, precision)

    def __neg__(self):
        return LaurentSeries(self.field, self.first,
                             [-c for c in self.coeffs], self.precision)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        other = self._check(other)
        precision = min(self.precision + other.valuation(),
                        other.precision + self.valuation())
        if self.is_known_zero() or other.is_known_zero():
            return LaurentSeries(self.field, precision, (), precision)
        lo = self.first + other.first
        if precision == math.inf:
            hi = lo + len(self.coeffs) + len(other.coeffs) - 1
        else:
            hi = precision
        zero = self.field.zero
        out = [zero] * max(0, hi - lo)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            base = self.first + i + other.first - lo
            if base >= len(out):
                break
            top = min(len(other.coeffs), len(out) - base)
            for j in range(top):
                b = other.coeffs[j]
                if b:
                    out[base + j] = out[base + j] + a * b
        return LaurentSeries(self.field, lo, out, precision)

    def mul_polynomial(self, poly: Polynomial):
        """c(T) * f; positive powers of T pull unknown indices downward."""
        return LaurentSeries.from_polynomial(self.field, poly) * self

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative series power")
        out = LaurentSeries.from_polynomial(self.field, Polynomial.one(self.field))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def truncate(self, precision):
        if precision >= self.precision:
            return self
        return LaurentSeries(self.field, self.first,
                             self.coeffs[:max(0, precision - self.first)], precision)


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RationalFunction:
    numerator: Polynomial
    denominator: Polynomial

    def __post_init__(self):
        if self.denominator.is_zero():
            raise ZeroDivisionError("zero denominator")
        if self.numerator.field is not self.denominator.field:
            raise ValueError("numerator and denominator over different fields")

    @property
    def field(self):
        return self.numerator.field

    def reduced(self):
        g = poly_gcd(self.numerator, self.denominator)
        if g.degree < 1:
            return self
        return RationalFunction(self.numerator // g, self.denominator // g)


def expand_rational(rf: RationalFunction, n_terms: int) -> LaurentSeries:
    """First n_terms coefficients of the expansion of rf at T = infinity.

    Reciprocal-polynomial long division in x = 1/T; the divisor is iterated
    over its nonzero coefficients only, so near-sparse denominators such as
    T^L - 1 expand in time O(n_terms) rather than O(n_terms * L).
    """
    num, den = rf.numerator, rf.denominator
    field = rf.field
    if num.is_zero():
        return LaurentSeries.zero(field)
    lead_index = den.degree - num.degree
    dn, dd = num.degree, den.degree
    num_rev = [num.coeff(dn - j) for j in range(dn + 1)]
    den_rev_pairs = [(j, den.coeff(dd - j)) for j in range(1, dd + 1)
                     if den.coeff(dd - j)]
    inv0 = den.coeff(dd).inverse()
    zero = field.zero
    out = []
    for j in range(n_terms):
        acc = num_rev[j] if j < len(num_rev) else zero
        for off, c in den_rev_pairs:
            if off > j:
                break
            prev = out[j - off]
            if prev:
                acc = acc - c * prev
        out.append(acc * inv0)
    return LaurentSeries(field, lead_index, out, lead_index + n_terms)


def word_to_rational(u_coded, v_coded, field) -> RationalFunction:
    """Rational function whose expansion is the eventually periodic word
    U V^infinity; the denominator is left unreduced as T^(k-1)(T^l - 1)
    (just T^l - 1 against T P_V when U is empty)."""
    v_coded = tuple(v_coded)
    if not v_coded:
        raise ValueError("periodic block V must be nonempty")
    u_coded = tuple(u_coded)
    k, ell = len(u_coded), len(v_coded)
    p_u = Polynomial(field, tuple(reversed(u_coded)))
    p_v = Polynomial(field, tuple(reversed(v_coded)))
    cyc = Polynomial.monomial(field, ell) - Polynomial.one(field)
    if k == 0:
        return RationalFunction(p_v.shift(1), cyc)
    return RationalFunction(p_u * cyc + p_v, cyc.shift(k - 1))


@dataclass(frozen=True)
class DegreeValue:
    """Ultrametric distance as an exponent of |T|.

    exponent is None when the series agree on every index both know; then
    compared_through reports how far the comparison reached (the distance is
    at most |T|^-compared_through).
    """

    exponent: object
    compared_through: int


def distance_degree(f: LaurentSeries, g: LaurentSeries) -> DegreeValue:
    limit = min(f.precision, g.precision)
    lo = min(f.valuation(), g.valuation(), limit)
    i = lo
    while i < limit:
        if f.coeff(i) != g.coeff(i):
            return DegreeValue(-i, i)
        i += 1
    return DegreeValue(None, limit)


@dataclass(frozen=True)
class VerificationResult:
    consistent: bool
    checked_through: int
    first_nonzero: object  # index of the first violated coefficient, or None

    @property
    def verdict(self):
        if self.consistent:
            return f"consistent to depth {self.checked_through}"
        return f"inconsistent at index {self.first_nonzero}"


def verify_algebraic(f: LaurentSeries, coefficients, depth: int) -> VerificationResult:
    """Check sum_i c_i(T) f^i = 0 on all indices down to T^-depth.

    coefficients[i] is the polynomial c_i.  Precision bookkeeping follows the
    series operations; if the combination cannot be seen through the requested
    depth the call fails with the precision that would be required.
    """
    field = f.field
    total = LaurentSeries.zero(field)
    power = LaurentSeries.from_polynomial(field, Polynomial.one(field))
    for i, c in enumerate(coefficients):
        if i > 0:
            power = power * f if i > 1 else f
        if c.is_zero():
            continue
        total = total + power.mul_polynomial(c)
    if total.precision <= depth:
        loss = f.precision - total.precision  # precision eaten by the c_i degrees
        raise InsufficientPrecisionError(depth + 1 + loss, total.precision)
    for i in range(total.valuation(), depth + 1):
        if total.coeff(i):
            return VerificationResult(False, depth, i)
    return VerificationResult(True, depth, None)


def fixed_point_solve(coefficient_fractions, n_terms: int) -> LaurentSeries:
    """Unique solution of X = sum_j g_j(T) X^j inside the open unit ball.

    Iterates from X = 0; every step must strictly increase the valuation of
    the update, and iteration stops once the first n_terms coefficients are
    stable.  Raises NotContractingError when an update fails to gain.
    """
    if not coefficient_fractions:
        raise ValueError("empty map")
    field = coefficient_fractions[0].field
    work = 2 * n_terms + 8
    constants = [expand_rational(g, work) if not g.numerator.is_zero()
                 else LaurentSeries.zero(field)
                 for g in coefficient_fractions]

    def apply_map(x):
        total = LaurentSeries.zero(field)
        power = LaurentSeries.from_polynomial(field, Polynomial.one(field))
        for j, g in enumerate(constants):
            if j > 0:
                power = power * x if j > 1 else x
            if not g.is_known_zero():
                total = total + g * power
        return total

    x = LaurentSeries.zero(field)
    last_gain = 0
    for _ in range(n_terms + 4):
        nxt = apply_map(x)
        if nxt.valuation() < 1:
            raise NotContractingError(
                f"iterate leaves the unit ball (valuation {nxt.valuation()})")
        diff = nxt - x
        gain = diff.valuation()
        if gain >= n_terms or gain >= diff.precision:
            result = nxt.truncate(n_terms)
            if result.precision < n_terms:
                raise InsufficientPrecisionError(n_terms, result.precision)
            return result
        if gain <= last_gain:
            raise NotContractingError(
                f"no valuation gain ({gain} after {last_gain})")
        last_gain = gain
        x = nxt
    raise NotContractingError("iteration failed to stabilize")
