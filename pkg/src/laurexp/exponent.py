"""Exact-rational bound engine for irrationality exponents.

Every bound is a Fraction; nothing here touches floating point.  Reports
carry the rule that produced each bound and the evidence the caller supplied
(rigorous coprimality certificates versus empirically verified agreement),
so an "exact" value is always traceable to its assumptions.
"""

from dataclasses import dataclass, field
from fractions import Fraction


@dataclass(frozen=True)
class BoundReport:
    lower: object  # Fraction or None when no lower bound is asserted
    upper: Fraction
    exact: object  # Fraction or None
    provenance: tuple  # pairs (which bound, rule description)
    assumptions: tuple = ()

    def __post_init__(self):
        if self.lower is not None and self.lower > self.upper:
            raise ValueError(f"empty bound interval [{self.lower}, {self.upper}]")
        if self.exact is not None and (self.exact != self.upper
                                       or self.exact != self.lower):
            raise ValueError("exact value must equal both endpoints")

    def interval(self):
        return self.lower, self.upper


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def approximation_bounds(delta, rho, theta, coprime: bool = False) -> BoundReport:
    """Bounds from a sequence of rational approximations.

    Hypotheses: denominator growth |Q_{n+1}| <= c |Q_n|^theta and approximation
    quality pinched between exponents 1+delta and 1+rho.  Requires
    0 < delta <= rho and theta >= 1.  Coprime numerators sharpen the upper
    bound to max(1+rho, 1+theta/delta), with equality mu = 1+delta once
    rho = delta and theta <= delta^2.
    """
    delta, rho, theta = _frac(delta), _frac(rho), _frac(theta)
    if delta <= 0:
        raise ValueError(f"delta must be positive, got {delta}")
    if rho < delta:
        raise ValueError(f"rho must be >= delta, got rho={rho} < delta={delta}")
    if theta < 1:
        raise ValueError(f"theta must be >= 1, got {theta}")
    lower = 1 + delta
    assumptions = []
    if coprime:
        upper = max(1 + rho, 1 + theta / delta)
        rule = "coprime approximation bound: max(1+rho, 1+theta/delta)"
        assumptions.append("numerators and denominators eventually coprime")
    else:
        upper = theta * (1 + rho) / delta
        rule = "approximation bound: theta(1+rho)/delta"
    exact = None
    if coprime and rho == delta and theta <= delta * delta:
        exact = lower
        upper = lower
        rule = "pinched approximation bound: rho=delta, theta<=delta^2"
    provenance = (("lower", "approximation lower bound 1+delta"), ("upper", rule))
    return BoundReport(lower, upper, exact, provenance, tuple(assumptions))


def witness_bounds(k: int, l: int, omega, base: int, kernel_size: int,
                   exact_agreement: bool = False,
                   coprime: bool = False) -> BoundReport:
    """Bounds from a repetition witness (U, V, omega) in base b.

    Plain form: (k+wl)/(k+l) <= mu <= b^(s+1)(k+l)/((w-1)l).  When the
    measured agreement is exactly (k+wl)b^n at every level the kernel size
    drops out: mu <= b(k+wl)/((w-1)l); adding coprimality gives
    max((k+wl)/(k+l), 1+b(k+l)/((w-1)l)), and for k=0 with (w-1)^2 >= b the
    interval collapses to mu = w exactly.
    """
    omega = _frac(omega)
    if omega <= 1:
        raise ValueError(f"omega must exceed 1, got {omega}")
    if l < 1 or k < 0:
        raise ValueError("need l >= 1 and k >= 0")
    lower = Fraction(k + omega * l, 1) / (k + l)
    assumptions = []
    exact = None
    if not exact_agreement:
        upper = Fraction(base) ** (kernel_size + 1) * (k + l) / ((omega - 1) * l)
        rule = "witness bound: b^(s+1)(k+l)/((omega-1)l)"
        if coprime:
            assumptions.append("coprimality certificate unused without exact agreement")
    else:
        assumptions.append("agreement positions exactly (k+omega*l)b^n (empirical)")
        if coprime:
            upper = max(lower, 1 + Fraction(base) * (k + l) / ((omega - 1) * l))
            rule = "coprime witness bound: max((k+omega*l)/(k+l), 1+b(k+l)/((omega-1)l))"
            assumptions.append("numerators and denominators eventually coprime")
            if (k == 0 and (omega - 1) ** 2 >= base) or upper == lower:
                exact = lower
                upper = lower
                rule = "collapsed witness bound: omega is the exponent"
        else:
            upper = Fraction(base) * (k + omega * l) / ((omega - 1) * l)
            rule = "exact-agreement witness bound: b(k+omega*l)/((omega-1)l)"
    provenance = (("lower", "witness lower bound (k+omega*l)/(k+l)"),
                  ("upper", rule))
    return BoundReport(lower, upper, exact, provenance, tuple(assumptions))


def general_bound(base: int, kernel_size: int, state_count: int) -> BoundReport:
    """Kernel/automaton bound b^(s+1) e; no lower bound is asserted."""
    if kernel_size < 1 or state_count < 1:
        raise ValueError("kernel size and state count must be positive")
    upper = Fraction(base) ** (kernel_size + 1) * state_count
    provenance = (("upper", "automatic-sequence bound b^(s+1)e"),)
    return BoundReport(None, upper, None, provenance,
                       (f"kernel base b={base}",))


def degree_bound(degree: int) -> BoundReport:
    """Informational Liouville-type bound: mu <= algebraic degree."""
    if degree < 2:
        raise ValueError("degree bound needs degree >= 2")
    return BoundReport(None, Fraction(degree), None,
                       (("upper", "algebraic-degree bound"),),
                       ("degree supplied by the user, not computed",))
