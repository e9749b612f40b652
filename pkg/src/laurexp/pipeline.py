"""End-to-end analysis: problem description in, certified report out.

The report is a plain dict ready for JSON: automaton size, kernel data,
witness, per-level agreement, coprimality certificate and the bound ladder,
with every bound labeled by the rule that produced it and the evidence
backing it.  Construction order is fixed, so equal inputs give byte-equal
structured reports.
"""

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from . import automata, exponent, repetition, series, wordpoly
from .ffield import finite_field, Polynomial, poly_str, unity_root_plan, _is_prime
from .words import Coding, SequenceStream, UniformMorphism, word_from_digits, word_str


class SpecError(ValueError):
    """Malformed problem description (CLI exit code 2)."""

    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


class BudgetExceededError(RuntimeError):
    """An exploration budget ran out before a decision (CLI exit code 3)."""


DEFAULT_N_CHECK = 8
DEFAULT_SEARCH_K = 4
DEFAULT_SEARCH_L = 8
DEFAULT_DEPTH = 200
DEFAULT_LEVEL_BUDGET = 200_000


@dataclass
class ProblemSpec:
    p: int
    b: int
    m: int
    images: tuple            # m digit tuples of length b
    coding: tuple            # m residues mod p
    seed: int = 0
    witness_mode: str = "search"   # search | pigeonhole | explicit
    witness_u: tuple = ()
    witness_v: tuple = ()
    witness_omega: Fraction = None
    n_check: int = DEFAULT_N_CHECK
    search_k: int = DEFAULT_SEARCH_K
    search_l: int = DEFAULT_SEARCH_L
    depth: int = DEFAULT_DEPTH
    level_budget: int = DEFAULT_LEVEL_BUDGET
    equation: tuple = None   # coefficient arrays, lowest degree first
    degree: int = None       # optional known algebraic degree
    name: str = "problem"

    def validate(self):
        if not _is_prime(self.p):
            raise SpecError(f"p = {self.p} is not prime")
        b = self.b
        while b % self.p == 0 and b > 1:
            b //= self.p
        if b != 1 or self.b < 2:
            raise SpecError(f"b = {self.b} must be a power of p = {self.p}, at least p")
        if self.m < 1:
            raise SpecError("alphabet size m must be positive")
        if len(self.images) != self.m:
            raise SpecError(f"expected {self.m} images, got {len(self.images)}")
        for letter, img in enumerate(self.images):
            if len(img) != self.b:
                raise SpecError(f"image of {letter} has length {len(img)}, not {self.b}")
            for c in img:
                if not 0 <= c < self.m:
                    raise SpecError(f"letter {c} out of range in image of {letter}")
        if len(self.coding) != self.m:
            raise SpecError(f"coding needs {self.m} values, got {len(self.coding)}")
        for v in self.coding:
            if not 0 <= v < self.p:
                raise SpecError(f"coding value {v} outside F_{self.p}")
        if not 0 <= self.seed < self.m:
            raise SpecError(f"seed {self.seed} out of range")
        if self.images[self.seed][0] != self.seed:
            raise SpecError(
                f"morphism is not prolongable on seed {self.seed}: image "
                f"{word_str(self.images[self.seed])} does not start with the seed")
        if self.witness_mode not in ("search", "pigeonhole", "explicit"):
            raise SpecError(f"unknown witness mode {self.witness_mode!r}")
        if self.witness_mode == "explicit":
            if not self.witness_v or self.witness_omega is None:
                raise SpecError("explicit witness needs witness_v and witness_omega")
            if self.witness_omega <= 1:
                raise SpecError("witness omega must exceed 1")
        for bound_name, value in (("n_check", self.n_check), ("depth", self.depth),
                                  ("search_l", self.search_l),
                                  ("level_budget", self.level_budget)):
            if value < 1:
                raise SpecError(f"{bound_name} must be positive")
        if self.search_k < 0:
            raise SpecError("search_k must be >= 0")
        if self.degree is not None and self.degree < 2:
            raise SpecError("degree must be >= 2 when given")
        if self.equation is not None:
            if len(self.equation) < 2 or all(
                    not any(cs) for cs in self.equation[1:]):
                raise SpecError("equation needs a nonconstant term")
        return self


def _frac_str(x) -> str:
    return str(Fraction(x))


def _bound_dict(report: exponent.BoundReport) -> dict:
    return {
        "lower": _frac_str(report.lower) if report.lower is not None else None,
        "upper": _frac_str(report.upper),
        "exact": _frac_str(report.exact) if report.exact is not None else None,
        "provenance": {which: rule for which, rule in report.provenance},
        "assumptions": list(report.assumptions),
    }


def _spec_echo(spec: ProblemSpec) -> dict:
    return {
        "name": spec.name,
        "p": spec.p,
        "b": spec.b,
        "m": spec.m,
        "images": [word_str(img) for img in spec.images],
        "coding": list(spec.coding),
        "seed": spec.seed,
        "options": {
            "witness_mode": spec.witness_mode,
            "n_check": spec.n_check,
            "search_k": spec.search_k,
            "search_l": spec.search_l,
            "depth": spec.depth,
            "level_budget": spec.level_budget,
        },
    }


def build_stream(spec: ProblemSpec) -> SequenceStream:
    field = finite_field(spec.p)
    sigma = UniformMorphism(spec.images)
    coding = Coding.from_ints(field, spec.coding)
    return SequenceStream(sigma, coding, spec.seed)


def _choose_witness(spec, stream, e, assumptions):
    if spec.witness_mode == "pigeonhole":
        return repetition.pigeonhole_witness(stream, e)
    if spec.witness_mode == "explicit":
        witness = repetition.RepetitionWitness(
            spec.witness_u, spec.witness_v, spec.witness_omega, "empirical")
        record = repetition.measure_agreement(
            stream, witness, 0,
            repetition.default_budget(witness, stream.morphism.b, 0))
        if not record.valid():
            raise SpecError(
                f"supplied witness fails at level 0: agreement {record.measured} "
                f"< expected {record.expected}")
        assumptions.append("witness supplied by the user, validated empirically")
        return witness
    try:
        return repetition.search_witness(stream, spec.search_k, spec.search_l,
                                         min(spec.n_check, 3), spec.level_budget)
    except repetition.WitnessError:
        assumptions.append("witness search found nothing; pigeonhole fallback used")
        return repetition.pigeonhole_witness(stream, e)


def analyze_problem(spec: ProblemSpec) -> dict:
    spec.validate()
    stream = build_stream(spec)
    sigma, coding = stream.morphism, stream.coding
    field = coding.field
    assumptions = []

    # automaton and kernels
    dfao = automata.build_dfao(sigma, coding, spec.seed)
    minimal, e = automata.minimize(dfao)
    base_kernel = automata.kernel(minimal)
    if spec.b == spec.p:
        p_dfao, p_kernel = minimal, base_kernel
    else:
        p_dfao, _ = automata.minimize(automata.rebase(minimal, spec.p))
        p_kernel = automata.kernel(p_dfao)
        assumptions.append(
            f"kernel size s is the base-{spec.p} kernel cardinality; the base-{spec.b} "
            f"kernel has {base_kernel.cardinality} elements")
    s = p_kernel.cardinality

    # repetition witness and agreement table
    witness = _choose_witness(spec, stream, e, assumptions)
    agreement = []
    for n in range(spec.n_check + 1):
        budget = repetition.default_budget(witness, sigma.b, n)
        if budget > spec.level_budget and n > 0:
            break
        agreement.append(repetition.measure_agreement(stream, witness, n, budget))
    if not all(rec.valid() for rec in agreement):
        if witness.mode == "pigeonhole":
            raise BudgetExceededError(
                "pigeonhole witness lost agreement; sequence data inconsistent")
        assumptions.append("searched witness lost agreement; pigeonhole fallback used")
        witness = repetition.pigeonhole_witness(stream, e)
        agreement = []
        for n in range(spec.n_check + 1):
            budget = repetition.default_budget(witness, sigma.b, n)
            if budget > spec.level_budget and n > 0:
                break
            agreement.append(repetition.measure_agreement(stream, witness, n, budget))
    max_level = agreement[-1].level
    exact_agreement = all(rec.exact for rec in agreement) and max_level >= 1
    if exact_agreement:
        if max_level < spec.n_check:
            assumptions.append(
                f"exact agreement verified for n <= {max_level} only "
                f"(budget-capped below n_check = {spec.n_check})")
        else:
            assumptions.append(f"exact agreement verified for n <= {max_level}")
    else:
        assumptions.append("agreement not exactly (k+omega*l)b^n at every "
                           "checked level; kernel-size bound used")

    # coprimality certificate
    plan = unity_root_plan(witness.l, field, sigma.b)
    certificate = wordpoly.coprimality_check(sigma, coding, witness, plan)
    coprime = certificate.certified
    if coprime:
        if certificate.verdict == "coprime-for-all-n":
            assumptions.append("coprimality certified for all n >= 1")
        else:
            assumptions.append(
                f"coprimality certified for all n >= {certificate.threshold}")
    else:
        assumptions.append(
            f"coprimality fails at n = {certificate.first_failure} and periodically after")

    # bound ladder; the s-dependent formulas run in base b and therefore use
    # the base-b kernel size (the reported headline s is the base-p one)
    s_b = base_kernel.cardinality
    general = exponent.general_bound(sigma.b, s_b, e)
    theorem = exponent.witness_bounds(witness.k, witness.l, witness.omega,
                                      sigma.b, s_b, exact_agreement=False)
    refined = None
    if exact_agreement:
        refined = exponent.witness_bounds(witness.k, witness.l, witness.omega,
                                          sigma.b, s_b, exact_agreement=True,
                                          coprime=False)
    final = exponent.witness_bounds(witness.k, witness.l, witness.omega,
                                    sigma.b, s_b, exact_agreement=exact_agreement,
                                    coprime=coprime)
    bounds = {
        "general": _bound_dict(general),
        "theorem": _bound_dict(theorem),
        "refined": _bound_dict(refined) if refined is not None else None,
        "final": _bound_dict(final),
        "exact": _frac_str(final.exact) if final.exact is not None else None,
    }
    if spec.degree is not None:
        bounds["degree"] = _bound_dict(exponent.degree_bound(spec.degree))
    if final.exact is not None and witness.mode == "empirical":
        assumptions.append("exact value rests on empirically verified agreement")

    # optional equation verification
    equation_report = None
    if spec.equation is not None:
        equation_report = _verify_equation(spec, stream, field)

    report = {
        "spec": _spec_echo(spec),
        "kernel": {
            "s": s,
            "base": spec.p,
            "elements": [
                {"n": el.n, "r": el.r,
                 "prefix": "".join(str(v) for v in
                                   p_kernel.element_prefix(el, 24))}
                for el in p_kernel.elements
            ],
            "uniformity_base": {"base": spec.b, "s": base_kernel.cardinality},
        },
        "automaton": {"e": e, "base": spec.b},
        "witness": {
            "mode": witness.mode,
            "u": word_str(witness.u),
            "v": word_str(witness.v),
            "k": witness.k,
            "l": witness.l,
            "omega": _frac_str(witness.omega),
        },
        "agreement": [
            {"n": rec.level, "expected": _frac_str(rec.expected),
             "measured": rec.measured, "exact": rec.exact, "budget": rec.budget}
            for rec in agreement
        ],
        "coprimality": _certificate_dict(certificate, plan),
        "bounds": bounds,
        "assumptions": assumptions,
        "equation": equation_report,
    }
    return report


def _certificate_dict(certificate, plan) -> dict:
    factors = []
    for fr in certificate.factor_reports:
        cert = fr.certificate
        factors.append({
            "modulus": poly_str(fr.modulus),
            "pre_period": cert.pre_period,
            "period": cert.period,
            "values": [poly_str(v) for v in cert.values],
            "never_zero": fr.never_zero(),
        })
    last = None
    if certificate.last_letter_report is not None:
        rep = certificate.last_letter_report
        last = {
            "pre_period": rep.pre_period,
            "period": rep.period,
            "u_last_values": [str(v) for v in rep.u_values],
            "v_last_values": [str(v) for v in rep.v_values],
        }
    return {
        "ell": plan.ell,
        "ell_prime": plan.ell_prime,
        "p_valuation": plan.p_valuation,
        "t": plan.t,
        "factors": factors,
        "last_letter": last,
        "verdict": certificate.verdict,
        "threshold": certificate.threshold,
        "first_failure": certificate.first_failure,
    }


def _verify_equation(spec: ProblemSpec, stream, field) -> dict:
    coeffs = [Polynomial.from_ints(field, cs) for cs in spec.equation]
    slack = max((c.degree for c in coeffs if not c.is_zero()), default=0)
    slack = 0 if slack == -math.inf else int(slack)
    prefix = stream.coded_prefix(spec.depth + slack + 2)
    f = series.LaurentSeries(field, 0, prefix)
    try:
        result = series.verify_algebraic(f, coeffs, spec.depth)
    except series.InsufficientPrecisionError as err:
        raise BudgetExceededError(
            f"equation check needs precision {err.needed}, have {err.available}")
    return {
        "depth": spec.depth,
        "consistent": result.consistent,
        "first_nonzero": result.first_nonzero,
        "verdict": result.verdict,
        "coefficients": [poly_str(c) for c in coeffs],
    }
