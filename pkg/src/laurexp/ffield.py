"""Exact arithmetic over small finite fields and their polynomial rings.

F_q (q = p^u) is realized as F_p[x]/(modulus) in the polynomial basis.  A
FieldDescriptor interns every element and precomputes full add / mul /
inverse tables, so element arithmetic is integer table lookup.  This is only
sensible because q stays tiny (a few dozen at most) in every intended use.

Polynomials over F_q are dense, lowest degree first, with no trailing zero
coefficient; the zero polynomial is the empty tuple.
"""

import math
from dataclasses import dataclass
from itertools import product


class FieldMismatchError(ValueError):
    """Operands belong to different field descriptors."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# Primitive polynomial arithmetic over F_p on plain int tuples.  Only used to
# bootstrap extension-field tables; everything else goes through Polynomial.

def _pp_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _pp_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _pp_trim(out)


def _pp_mod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        if a[-1] == 0:
            a.pop()
            continue
        q = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - dm
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - q * c) % p
        a.pop()
    return _pp_trim(a)


def _pp_is_irreducible(m, p):
    # trial division by every monic polynomial of degree <= deg(m)/2
    deg = len(m) - 1
    if deg <= 0:
        return False
    for d in range(1, deg // 2 + 1):
        for tail in product(range(p), repeat=d):
            cand = tuple(tail) + (1,)
            if not _pp_mod(m, cand, p):
                return False
    return True


def _find_irreducible(p, u):
    for tail in product(range(p), repeat=u):
        cand = tuple(reversed(tail)) + (1,)
        if _pp_is_irreducible(cand, p):
            return cand
    raise ValueError(f"no irreducible polynomial of degree {u} over F_{p}")


# ---------------------------------------------------------------------------

class FieldElement:
    """Interned element of a FieldDescriptor; arithmetic is table lookup."""

    __slots__ = ("field", "coeffs", "index")

    def __init__(self, field, coeffs, index):
        self.field = field
        self.coeffs = coeffs
        self.index = index

    def _other(self, other):
        if not isinstance(other, FieldElement) or other.field is not self.field:
            raise FieldMismatchError(f"cannot combine {self!r} with {other!r}")
        return other

    def __add__(self, other):
        other = self._other(other)
        return self.field._elts[self.field._add[self.index][other.index]]

    def __sub__(self, other):
        other = self._other(other)
        f = self.field
        return f._elts[f._add[self.index][f._neg[other.index]]]

    def __neg__(self):
        return self.field._elts[self.field._neg[self.index]]

    def __mul__(self, other):
        other = self._other(other)
        return self.field._elts[self.field._mul[self.index][other.index]]

    def inverse(self):
        if self.index == 0:
            raise ZeroDivisionError("inverse of zero field element")
        return self.field._elts[self.field._inv[self.index]]

    def __truediv__(self, other):
        return self * self._other(other).inverse()

    def __bool__(self):
        return self.index != 0

    def __eq__(self, other):
        return (isinstance(other, FieldElement)
                and other.field is self.field and other.index == self.index)

    def __hash__(self):
        return hash((id(self.field), self.index))

    def __int__(self):
        if self.field.u != 1:
            raise ValueError("int() only defined on prime-field elements")
        return self.coeffs[0]

    def __repr__(self):
        return f"FieldElement({self.field}, {self})"

    def __str__(self):
        if self.field.u == 1:
            return str(self.coeffs[0])
        return "(" + ",".join(str(c) for c in self.coeffs) + ")"


class FieldDescriptor:
    """F_q with q = p^u, with all elements and operation tables precomputed.

    Use the finite_field() factory so equal parameters share one instance;
    element identity then implies field identity everywhere.
    """

    def __init__(self, p, u=1, modulus=None):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if u < 1:
            raise ValueError("extension degree must be >= 1")
        if u == 1:
            modulus = None
        else:
            if modulus is None:
                modulus = _find_irreducible(p, u)
            modulus = _pp_trim(tuple(c % p for c in modulus))
            if len(modulus) - 1 != u or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree u")
            if not _pp_is_irreducible(modulus, p):
                raise ValueError("modulus is not irreducible")
        self.p = p
        self.u = u
        self.q = p ** u
        self.modulus = modulus
        self._build_tables()

    def _build_tables(self):
        p, u, q = self.p, self.u, self.q
        coeff_lists = [tuple((i // p ** k) % p for k in range(u)) for i in range(q)]
        self._elts = [FieldElement(self, c, i) for i, c in enumerate(coeff_lists)]
        index_of = {c: i for i, c in enumerate(coeff_lists)}

        def pad(c):
            return tuple(c) + (0,) * (u - len(c))

        self._add = [[index_of[tuple((a + b) % p for a, b in zip(x, y))]
                      for y in coeff_lists] for x in coeff_lists]
        self._neg = [index_of[tuple((-a) % p for a in x)] for x in coeff_lists]
        if u == 1:
            self._mul = [[index_of[((x[0] * y[0]) % p,)] for y in coeff_lists]
                         for x in coeff_lists]
        else:
            self._mul = [[index_of[pad(_pp_mod(_pp_mul(x, y, p), self.modulus, p))]
                          for y in coeff_lists] for x in coeff_lists]
        self._inv = [0] * q
        for i in range(1, q):
            for j in range(1, q):
                if self._mul[i][j] == 1:
                    self._inv[i] = j
                    break

    # -- element constructors ------------------------------------------------

    @property
    def zero(self):
        return self._elts[0]

    @property
    def one(self):
        return self._elts[1]

    def element(self, value):
        """Element from an integer (prime-subfield embedding) or coeff tuple."""
        if isinstance(value, FieldElement):
            if value.field is not self:
                raise FieldMismatchError("element from a different field")
            return value
        if isinstance(value, int):
            return self._elts[value % self.p]
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) > self.u:
            raise ValueError("too many coordinates for this field")
        idx = sum(c * self.p ** k for k, c in enumerate(coeffs))
        return self._elts[idx]

    def elements(self):
        return tuple(self._elts)

    def __repr__(self):
        if self.u == 1:
            return f"F_{self.p}"
        return f"F_{self.p}^{self.u}"


_FIELD_CACHE = {}


def finite_field(p, u=1, modulus=None):
    """Shared FieldDescriptor for (p, u, modulus)."""
    key = (p, u, tuple(modulus) if modulus is not None else None)
    if key not in _FIELD_CACHE:
        _FIELD_CACHE[key] = FieldDescriptor(p, u, modulus)
        if modulus is None and u > 1:
            # register under the auto-picked modulus as well
            _FIELD_CACHE[(p, u, _FIELD_CACHE[key].modulus)] = _FIELD_CACHE[key]
    return _FIELD_CACHE[key]


# ---------------------------------------------------------------------------

class Polynomial:
    """Dense polynomial over a FieldDescriptor, lowest degree first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def one(cls, field):
        return cls(field, (field.one,))

    @classmethod
    def t(cls, field):
        return cls(field, (field.zero, field.one))

    @classmethod
    def from_ints(cls, field, ints):
        return cls(field, tuple(field.element(i) for i in ints))

    @classmethod
    def monomial(cls, field, degree, coeff=None):
        c = field.one if coeff is None else field.element(coeff)
        return cls(field, (field.zero,) * degree + (c,))

    # -- structure -----------------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    def is_zero(self):
        return not self.coeffs

    @property
    def lead(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.field.zero

    def to_int_list(self):
        return [int(c) for c in self.coeffs]

    # -- ring operations -----------------------------------------------------

    def _check(self, other):
        if not isinstance(other, Polynomial) or other.field is not self.field:
            raise FieldMismatchError("polynomials over different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        z = self.field.zero
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self.field,
                          [self.coeff(i) + other.coeff(i) for i in range(n)] or [z])

    def __neg__(self):
        return Polynomial(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        other = self._check(other)
        if not self.coeffs or not other.coeffs:
            return Polynomial.zero(self.field)
        z = self.field.zero
        out = [z] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = out[i + j] + a * b
        return Polynomial(self.field, out)

    def scale(self, c):
        c = self.field.element(c)
        return Polynomial(self.field, [a * c for a in self.coeffs])

    def shift(self, k):
        """Multiply by T^k."""
        if self.is_zero() or k == 0:
            return self if k >= 0 else self
        if k < 0:
            raise ValueError("negative shift")
        return Polynomial(self.field, (self.field.zero,) * k + self.coeffs)

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        out = Polynomial.one(self.field)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other):
        other = self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        inv_lead = other.lead.inverse()
        z = self.field.zero
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Polynomial.zero(self.field), self
        quot = [z] * (dq + 1)
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] * inv_lead
            quot[k] = c
            if c:
                for i, b in enumerate(other.coeffs):
                    rem[k + i] = rem[k + i] - c * b
        return Polynomial(self.field, quot), Polynomial(self.field, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.lead.inverse())

    def evaluate(self, x):
        x = self.field.element(x)
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def subst_power(self, k):
        """Substitute T -> T^k."""
        if k < 1:
            raise ValueError("power substitution needs k >= 1")
        if self.is_zero():
            return self
        z = self.field.zero
        out = [z] * (self.degree * k + 1)
        for i, c in enumerate(self.coeffs):
            if c:
                out[i * k] = c
        return Polynomial(self.field, out)

    # -- comparisons ---------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, Polynomial)
                and other.field is self.field and other.coeffs == self.coeffs)

    def __hash__(self):
        return hash((id(self.field), self.coeffs))

    def __repr__(self):
        return f"Polynomial({self.field}, {poly_str(self)})"


def poly_str(poly, var="T"):
    """Human-readable rendering, highest degree first."""
    if poly.is_zero():
        return "0"
    parts = []
    for k in range(poly.degree, -1, -1):
        c = poly.coeff(k)
        if not c:
            continue
        cs = str(c)
        if k == 0:
            parts.append(cs)
        else:
            tk = var if k == 1 else f"{var}^{k}"
            parts.append(tk if cs == "1" else f"{cs}*{tk}")
    return "+".join(parts)


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic greatest common divisor; gcd(a, 0) = monic(a)."""
    if a.field is not b.field:
        raise FieldMismatchError("gcd of polynomials over different fields")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def quotient_eval(poly: Polynomial, h: Polynomial) -> Polynomial:
    """Residue of poly in F_q[T]/(h); zero iff every root of h kills poly."""
    if h.degree < 1:
        raise ValueError("quotient modulus must have degree >= 1")
    return poly % h


class QuotientRing:
    """F_q[T]/(h): residues are Polynomials of degree < deg h."""

    def __init__(self, h: Polynomial):
        if h.degree < 1:
            raise ValueError("quotient modulus must have degree >= 1")
        self.modulus = h
        self.field = h.field
        self.zero = Polynomial.zero(h.field)
        self.one = Polynomial.one(h.field) % h

    def reduce(self, poly):
        return poly % self.modulus

    def mul(self, a, b):
        return (a * b) % self.modulus

    def add(self, a, b):
        return a + b

    def pow(self, a, n):
        out = self.one
        base = self.reduce(a)
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def t_power(self, e):
        """Residue of T^e."""
        return self.pow(Polynomial.t(self.field), e)


# ---------------------------------------------------------------------------
# Roots of unity: locating the l-th roots as irreducible factors of T^l' - 1.

def cyclotomic_cosets(n, q):
    """q-cyclotomic cosets modulo n (requires gcd(n, q) = 1)."""
    if n < 1:
        raise ValueError("modulus must be positive")
    if n > 1 and math.gcd(n, q) != 1:
        raise ValueError("q must be invertible modulo n")
    seen = set()
    cosets = []
    for j in range(n):
        if j in seen:
            continue
        coset = []
        x = j
        while x not in coset:
            coset.append(x)
            x = (x * q) % n
        seen.update(coset)
        cosets.append(tuple(sorted(coset)))
    return sorted(cosets)


def _iter_monic(field, degree):
    """All monic polynomials of the given degree, in a fixed total order."""
    q = field.q
    elts = field.elements()
    for code in range(q ** degree):
        tail = []
        c = code
        for _ in range(degree):
            tail.append(elts[c % q])
            c //= q
        yield Polynomial(field, tuple(tail) + (field.one,))


def factor_unity(field, n):
    """Irreducible factors of T^n - 1 over F_q, gcd(n, p) = 1, sorted.

    Plain trial division in order of increasing degree: any divisor found at
    the minimal remaining degree is automatically irreducible.  Fine because
    n stays tiny here; the coset structure gives an independent check on the
    factor count and degrees.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n % field.p == 0:
        raise ValueError("n must be prime to the characteristic")
    f = Polynomial.monomial(field, n) - Polynomial.one(field)
    factors = []
    d = 1
    while f.degree > 0:
        if 2 * d > f.degree:
            factors.append(f.monic())
            break
        for cand in _iter_monic(field, d):
            if f.degree < d:
                break
            while True:
                qt, rem = divmod(f, cand)
                if rem.is_zero():
                    factors.append(cand)
                    f = qt
                else:
                    break
            if 2 * d > f.degree:
                break
        d += 1
    return tuple(sorted(factors, key=lambda g: (g.degree, [c.index for c in g.coeffs])))


@dataclass(frozen=True)
class UnityRootPlan:
    """Where the l-th roots of unity live, and how to walk their values.

    ell = ell_prime * p^p_valuation with gcd(ell_prime, p) = 1; the root set
    of T^ell - 1 equals that of T^ell_prime - 1, split here into irreducible
    factors over F_q.  t is the multiplicative order of the morphism base b
    modulo ell_prime: every root alpha satisfies alpha^(b^t) = alpha, which
    bounds value-sequence periods.
    """

    ell: int
    ell_prime: int
    p_valuation: int
    base: int
    t: int
    factors: tuple
    field: FieldDescriptor


def unity_root_plan(ell, field, base) -> UnityRootPlan:
    """Factorization plan for the ell-th roots of unity over the field."""
    if ell < 1:
        raise ValueError("ell must be positive")
    b, j = base, 0
    while b % field.p == 0 and b > 1:
        b //= field.p
        j += 1
    if b != 1 or j < 1:
        raise ValueError(f"base {base} is not a positive power of p={field.p}")
    ell_prime, v = ell, 0
    while ell_prime % field.p == 0:
        ell_prime //= field.p
        v += 1
    if ell_prime == 1:
        t = 1
    else:
        t = 1
        acc = base % ell_prime
        while acc != 1:
            acc = (acc * base) % ell_prime
            t += 1
    return UnityRootPlan(ell, ell_prime, v, base, t,
                         factor_unity(field, ell_prime), field)
