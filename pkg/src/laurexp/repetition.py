"""Repetition witnesses and agreement measurement.

A witness (U, V, omega) asserts that U V^omega prefixes the sequence; its
morphism iterates then prefix the sequence at every level, which is what
drives the rational approximations.  Two origins with different evidentiary
weight: pigeonhole witnesses come with a proof valid at all levels, searched
witnesses maximize omega empirically and are re-validated level by level.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from .words import SequenceStream, Word, word_str


class WitnessError(ValueError):
    """No usable repetition witness within the given bounds."""


@dataclass(frozen=True)
class RepetitionWitness:
    u: Word
    v: Word
    omega: Fraction
    mode: str  # "pigeonhole" or "empirical"

    def __post_init__(self):
        if not self.v:
            raise ValueError("witness block V must be nonempty")
        if self.omega <= 1:
            raise ValueError("witness exponent must exceed 1")

    @property
    def k(self):
        return len(self.u)

    @property
    def l(self):
        return len(self.v)

    def expected_agreement(self, base: int, n: int) -> Fraction:
        return (self.k + self.omega * self.l) * base ** n

    def describe(self):
        return (f"U={word_str(self.u) or 'eps'} V={word_str(self.v)} "
                f"omega={self.omega} ({self.mode})")


@dataclass(frozen=True)
class AgreementRecord:
    level: int
    expected: Fraction
    measured: object  # int, or None when the budget ran out before a mismatch
    exact: bool
    budget: int

    @property
    def budget_exceeded(self):
        return self.measured is None

    def valid(self):
        """Measured agreement at least as long as the witness promises."""
        return self.measured is None or self.measured >= ceil(self.expected)


def pigeonhole_witness(stream: SequenceStream, e: int) -> RepetitionWitness:
    """Witness from the first repeated letter in a short prefix.

    A prefix of length e+1 of the internal fixed point shows some letter
    twice once e is at least the internal alphabet size; splitting the prefix
    at the two occurrences gives U b V' b, hence U (bV')^(1+1/l) is a prefix.
    The scan length is padded to m+1 so a repeat always exists.
    """
    sigma = stream.morphism
    prefix = stream.prefix(max(e + 1, sigma.m + 1))
    seen = {}
    for j, letter in enumerate(prefix):
        if letter in seen:
            i = seen[letter]
            ell = j - i
            return RepetitionWitness(prefix[:i], prefix[i:j],
                                     1 + Fraction(1, ell), "pigeonhole")
        seen[letter] = j
    raise WitnessError("no repeated letter found")  # unreachable by pigeonhole


def measure_agreement(stream: SequenceStream, witness: RepetitionWitness,
                      n: int, budget: int) -> AgreementRecord:
    """First position where the sequence leaves U_n V_n^infinity.

    Compares coded letters one by one; measured is None when the first
    budget letters all agree (the caller decides what that means).
    """
    sigma = stream.morphism
    expected = witness.expected_agreement(sigma.b, n)
    if budget <= expected:
        raise ValueError(f"budget {budget} does not reach past the expected "
                         f"agreement {expected}")
    coding = stream.coding
    u_n = coding.map(sigma.iterate(witness.u, n))
    v_n = coding.map(sigma.iterate(witness.v, n))
    a_pref = stream.coded_prefix(budget)
    ku, lv = len(u_n), len(v_n)
    measured = None
    for i in range(budget):
        c = u_n[i] if i < ku else v_n[(i - ku) % lv]
        if a_pref[i] != c:
            measured = i
            break
    exact = measured is not None and Fraction(measured) == expected
    return AgreementRecord(n, expected, measured, exact, budget)


def default_budget(witness: RepetitionWitness, base: int, n: int) -> int:
    """Letters to inspect at level n: four times the expected agreement."""
    return int(ceil(4 * witness.expected_agreement(base, n))) + 1


def search_witness(stream: SequenceStream, max_k: int, max_l: int,
                   n_check: int, level_budget: int = 200_000) -> RepetitionWitness:
    """Best prefix-based witness: maximize the exact exponent omega*.

    Scans all (|U|, |V|) with U V a prefix of the internal fixed point,
    measures the level-0 agreement L0 and scores omega* = (L0 - k) / l.
    Ties break toward smaller k + l, then smaller l.  The winning candidate
    must keep at least its promised agreement on levels 1..n_check (levels
    whose budget would exceed level_budget are skipped).
    """
    if max_k < 0 or max_l < 1:
        raise WitnessError("search bounds must allow a nonempty block")
    sigma = stream.morphism
    head = stream.prefix(max_k + max_l)
    a_pref = stream.coded_prefix(level_budget)
    coding = stream.coding

    candidates = []
    for k in range(max_k + 1):
        for ell in range(1, max_l + 1):
            u = head[:k]
            v = head[k:k + ell]
            u0 = coding.map(u)
            v0 = coding.map(v)
            measured = None
            for i in range(level_budget):
                c = u0[i] if i < k else v0[(i - k) % ell]
                if a_pref[i] != c:
                    measured = i
                    break
            if measured is None:
                continue  # looks periodic to the whole budget; not usable
            omega = Fraction(measured - k, ell)
            if omega > 1:
                candidates.append((-omega, k + ell, ell, u, v, omega))
    if not candidates:
        raise WitnessError(
            f"no candidate with omega > 1 for k <= {max_k}, l <= {max_l}")

    for _, _, _, u, v, omega in sorted(candidates):
        witness = RepetitionWitness(u, v, omega, "empirical")
        ok = True
        for n in range(1, n_check + 1):
            budget = default_budget(witness, sigma.b, n)
            if budget > level_budget:
                break
            if not measure_agreement(stream, witness, n, budget).valid():
                ok = False
                break
        if ok:
            return witness
    raise WitnessError("every candidate lost its promised agreement at some level")
