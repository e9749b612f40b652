"""Word polynomials, occurrence vectors and morphism matrices.

A word W = a_0 a_1 ... a_{k-1} over the output field has the polynomial
P_W(T) = sum_j a_{k-1-j} T^j, i.e. the letter at distance j from the right
end becomes the coefficient of T^j, and P_W(0) is the last letter.

The occurrence vector of an internal word counts letter positions the same
way, from the rightmost letter = position 0.  Stacking the occurrence
vectors of the images of a morphism gives an m x m polynomial matrix whose
twisted products evaluate word polynomials of morphism iterates without ever
expanding the iterated words; evaluated at roots of unity the products live
in a finite ring, so the value sequences are eventually periodic and can be
certified by exhibiting one pre-period plus one full period.
"""

from dataclasses import dataclass

from .ffield import Polynomial, QuotientRing, UnityRootPlan
from .words import Coding, UniformMorphism, Word


def word_poly(coded_word, field) -> Polynomial:
    """P_W for a word whose letters are field elements."""
    return Polynomial(field, tuple(reversed(tuple(coded_word))))


def occurrence_vector(word: Word, m: int, field) -> tuple:
    """Row of m polynomials; entry j has one monomial per occurrence of j,
    positions counted from the rightmost letter = 0."""
    length = len(word)
    zero, one = field.zero, field.one
    columns = [[zero] * length for _ in range(m)]
    for pos, letter in enumerate(reversed(word)):
        columns[letter][pos] = one
    return tuple(Polynomial(field, col) for col in columns)


def morphism_matrix(images, field) -> tuple:
    """Matrix with row i = occurrence vector of the image of letter i.

    Accepts a UniformMorphism or a plain sequence of words (the definition
    does not need uniformity).
    """
    if isinstance(images, UniformMorphism):
        images = images.images
    m = len(images)
    return tuple(occurrence_vector(img, m, field) for img in images)


def matrix_subst_power(matrix, k: int) -> tuple:
    return tuple(tuple(entry.subst_power(k) for entry in row) for row in matrix)


def matrix_mul(a, b) -> tuple:
    m, inner, cols = len(a), len(b), len(b[0])
    out = []
    for i in range(m):
        row = []
        for j in range(cols):
            acc = a[i][0] * b[0][j]
            for s in range(1, inner):
                acc = acc + a[i][s] * b[s][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def coding_column(coding: Coding) -> tuple:
    field = coding.field
    return tuple((Polynomial(field, (v,)),) for v in coding.table)


def r_vector(sigma: UniformMorphism, coding: Coding, n: int) -> tuple:
    """Column whose entry i is P over the coded n-th image of letter i.

    Built by the twisted recurrence R_{j+1} = M(T^{b^j}) R_j from the coding
    column, entirely in F_q[T]; degrees grow like b^n, so keep n small.
    """
    field = coding.field
    matrix = morphism_matrix(sigma, field)
    col = coding_column(coding)
    for j in range(n):
        col = matrix_mul(matrix_subst_power(matrix, sigma.b ** j), col)
    return tuple(row[0] for row in col)


# ---------------------------------------------------------------------------
# Evaluation at roots of unity via quotient rings.

def _ring_eval(poly: Polynomial, x: Polynomial, ring: QuotientRing) -> Polynomial:
    """poly(x) inside the quotient ring."""
    acc = ring.zero
    for c in reversed(poly.coeffs):
        acc = ring.mul(acc, x) + Polynomial(poly.field, (c,))
        acc = ring.reduce(acc)
    return acc


def _matrix_ring_eval(matrix, x, ring):
    return tuple(tuple(_ring_eval(entry, x, ring) for entry in row) for row in matrix)


def _ring_mat_mul(a, b, ring):
    m, inner, cols = len(a), len(b), len(b[0])
    out = []
    for i in range(m):
        row = []
        for j in range(cols):
            acc = ring.zero
            for s in range(inner):
                acc = acc + ring.mul(a[i][s], b[s][j])
            row.append(ring.reduce(acc))
        out.append(tuple(row))
    return tuple(out)


def iterate_value(sigma: UniformMorphism, coding: Coding, word: Word,
                  n: int, h: Polynomial) -> Polynomial:
    """Residue of P over the coded n-th image of word, modulo h.

    Computed as row(T^{b^n}) . M(T^{b^{n-1}}) ... M(T) . coding column with
    everything reduced mod h; the iterated word itself is never expanded.
    """
    field = coding.field
    ring = QuotientRing(h)
    b = sigma.b
    row = tuple(_ring_eval(entry, ring.t_power(b ** n), ring)
                for entry in occurrence_vector(word, sigma.m, field))
    matrix = morphism_matrix(sigma, field)
    col = tuple((ring.reduce(Polynomial(field, (v,))),) for v in coding.table)
    for i in range(n - 1, -1, -1):
        twisted = _matrix_ring_eval(matrix, ring.t_power(b ** i), ring)
        col = _ring_mat_mul(twisted, col, ring)
    acc = ring.zero
    for j in range(sigma.m):
        acc = acc + ring.mul(row[j], col[j][0])
    return ring.reduce(acc)


# ---------------------------------------------------------------------------
# Eventual periodicity of value sequences.

def _minimize_eventual(values, pre, period):
    """Smallest (pre, period) consistent with the guaranteed window."""
    tail = values[pre:pre + period]
    best_period = period
    for cand in range(1, period):
        if period % cand:
            continue
        if all(tail[(i + cand) % period] == tail[i] for i in range(period)):
            best_period = cand
            break
    best_pre = pre
    while best_pre > 0 and values[best_pre - 1 + best_period] == values[best_pre - 1]:
        best_pre -= 1
    return best_pre, best_period, tuple(values[:best_pre + best_period])


@dataclass(frozen=True)
class PeriodicityCertificate:
    """Values of an eventually periodic sequence over one pre-period + period."""

    pre_period: int
    period: int
    values: tuple

    def value_at(self, n: int):
        if n < len(self.values):
            return self.values[n]
        return self.values[self.pre_period + (n - self.pre_period) % self.period]


def periodicity_certificate(sigma: UniformMorphism, coding: Coding, word: Word,
                            h: Polynomial, t: int) -> PeriodicityCertificate:
    """Certify the residues mod h of P over coded images of word, all levels.

    t must satisfy alpha^(b^t) = alpha for the roots alpha of h, so the state
    (n mod t, product matrix at level n) drives everything; the first repeated
    state closes the cycle and the window is then minimized.
    """
    field = coding.field
    ring = QuotientRing(h)
    b = sigma.b
    matrix = morphism_matrix(sigma, field)
    alphas = [ring.t_power(pow(b, i)) for i in range(t)]
    twisted = [_matrix_ring_eval(matrix, a, ring) for a in alphas]
    rows = [tuple(_ring_eval(entry, a, ring)
                  for entry in occurrence_vector(word, sigma.m, field))
            for a in alphas]
    col = tuple((ring.reduce(Polynomial(field, (v,))),) for v in coding.table)

    m = sigma.m
    product = tuple(tuple(ring.one if i == j else ring.zero for j in range(m))
                    for i in range(m))
    values = []
    seen = {}
    n = 0
    while True:
        key = (n % t, product)
        if key in seen:
            pre, period = seen[key], n - seen[key]
            break
        seen[key] = n
        row = rows[n % t]
        acc = ring.zero
        for i in range(m):
            entry = ring.zero
            for s in range(m):
                entry = entry + ring.mul(product[i][s], col[s][0])
            acc = acc + ring.mul(row[i], ring.reduce(entry))
        values.append(ring.reduce(acc))
        product = _ring_mat_mul(twisted[n % t], product, ring)
        n += 1
    pre, period, window = _minimize_eventual(values, pre, period)
    return PeriodicityCertificate(pre, period, window)


def matrix_power_cycle(matrix, mul):
    """First repetition in the power sequence M, M^2, ...; returns
    (start, period) with start the smallest exponent >= 1 inside the cycle."""
    seen = {matrix: 1}
    current = matrix
    n = 1
    while True:
        current = mul(current, matrix)
        n += 1
        if current in seen:
            return seen[current], n - seen[current]
        seen[current] = n


# ---------------------------------------------------------------------------
# The coprimality decision.

@dataclass(frozen=True)
class FactorReport:
    """Nonvanishing record for one irreducible factor of T^ell' - 1."""

    modulus: Polynomial
    certificate: PeriodicityCertificate

    def zero_levels_window(self):
        return tuple(n for n, v in enumerate(self.certificate.values) if v.is_zero())

    def never_zero(self):
        return not self.zero_levels_window()

    def holds_at(self, n):
        return not self.certificate.value_at(n).is_zero()


@dataclass(frozen=True)
class LastLetterReport:
    """Orbit comparison of the final letters of the two iterated words.

    The last letter of an iterated image evolves by c -> last letter of
    sigma(c), so both orbits are eventually periodic with tiny windows; the
    coded values decide whether the numerator picks up a factor T.
    """

    pre_period: int
    period: int
    u_values: tuple
    v_values: tuple

    def value_pair(self, n):
        if n < len(self.u_values):
            return self.u_values[n], self.v_values[n]
        i = self.pre_period + (n - self.pre_period) % self.period
        return self.u_values[i], self.v_values[i]

    def holds_at(self, n):
        un, vn = self.value_pair(n)
        return un != vn


@dataclass(frozen=True)
class CoprimalityCertificate:
    """Decides coprimality of the approximation fractions for every level.

    verdict is one of 'coprime-for-all-n' (all n >= 1), 'coprime-for-n>=N'
    (finitely many early failures; threshold holds from N on) and 'fails'
    (failures recur periodically; first_failure is the smallest bad n >= 1).
    """

    factor_reports: tuple
    last_letter_report: object
    verdict: str
    threshold: int
    first_failure: object

    def holds_at(self, n: int) -> bool:
        if not all(fr.holds_at(n) for fr in self.factor_reports):
            return False
        if self.last_letter_report is not None:
            return self.last_letter_report.holds_at(n)
        return True

    @property
    def certified(self):
        """True when coprimality holds for all large n."""
        return self.verdict != "fails"


def _last_letter_report(sigma, coding, u_word, v_word):
    lam = sigma.last_letter
    pair = (u_word[-1], v_word[-1])
    seen = {}
    pairs = []
    while pair not in seen:
        seen[pair] = len(pairs)
        pairs.append(pair)
        pair = (lam(pair[0]), lam(pair[1]))
    pre = seen[pair]
    period = len(pairs) - pre
    u_vals = tuple(coding(x) for x, _ in pairs)
    v_vals = tuple(coding(y) for _, y in pairs)
    # shrink the window like any eventually periodic value sequence
    merged = tuple(zip(u_vals, v_vals))
    pre, period, window = _minimize_eventual(list(merged), pre, period)
    return LastLetterReport(pre, period,
                            tuple(u for u, _ in window), tuple(v for _, v in window))


def coprimality_check(sigma: UniformMorphism, coding: Coding, witness,
                      plan: UnityRootPlan) -> CoprimalityCertificate:
    """Certify numerator/denominator coprimality of the level-n fractions.

    The denominator roots are 0 (only when the preperiod is nonempty) and the
    ell-th roots of unity.  The unity part is settled per irreducible factor
    by a periodicity certificate on the repeated block; the zero part by the
    last-letter orbit comparison.  Verdicts quantify over levels n >= 1.
    """
    reports = tuple(FactorReport(h, periodicity_certificate(sigma, coding,
                                                            witness.v, h, plan.t))
                    for h in plan.factors)
    last_report = None
    if witness.k > 0:
        last_report = _last_letter_report(sigma, coding, witness.u, witness.v)

    recurring = []  # first failing level >= 1 of each periodically recurring failure
    transient = []  # isolated failures confined to the pre-periodic part
    windows = [(fr.certificate.pre_period, fr.certificate.period,
                tuple(n for n, v in enumerate(fr.certificate.values) if v.is_zero()))
               for fr in reports]
    if last_report is not None:
        windows.append((last_report.pre_period, last_report.period,
                        tuple(n for n in range(len(last_report.u_values))
                              if not last_report.holds_at(n))))
    for pre, period, bad_levels in windows:
        for n in bad_levels:
            if n >= pre:
                first = n
                while first < 1:
                    first += period
                recurring.append(first)
            elif n >= 1:
                transient.append(n)

    if recurring:
        verdict, threshold, first_failure = "fails", None, min(recurring)
    elif transient:
        verdict, threshold, first_failure = "coprime-for-n>=N", max(transient) + 1, None
    else:
        verdict, threshold, first_failure = "coprime-for-all-n", 1, None
    return CoprimalityCertificate(reports, last_report, verdict, threshold,
                                  first_failure)
