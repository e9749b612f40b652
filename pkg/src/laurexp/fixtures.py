"""Bundled regression problems and their expected key results.

Each fixture is one ProblemSpec plus a list of (path, expected) pairs into
the analysis report; reproduction fails when any path disagrees.  Paths use
dots for dict keys and integers for list indices.
"""

from fractions import Fraction

from .pipeline import ProblemSpec


def _spec(name, p, b, images, coding, seed=0, **options):
    images = tuple(tuple(int(ch) for ch in s) for s in images)
    return ProblemSpec(p=p, b=b, m=len(images), images=images,
                       coding=tuple(coding), seed=seed, name=name, **options)


BUILTIN = {
    "ex1": _spec(
        "ex1", 2, 4, ["0001", "1001"], [0, 1],
        equation=((0, 1), (1, 0, 0, 0, 1), (), (), (1, 0, 0, 0, 1)),
        degree=4),
    "ex2": _spec(
        "ex2", 2, 8, ["00000122", "10120011", "12120021"], [1, 0, 1]),
    "ex3": _spec(
        "ex3", 3, 3, ["010", "102", "122"], [0, 1, 2]),
    "ex4": _spec(
        "ex4", 5, 5, ["00043", "13042", "14201", "32411", "00144"],
        [0, 1, 2, 3, 4]),
    "thue-morse": _spec(
        "thue-morse", 2, 2, ["01", "10"], [0, 1],
        equation=((0, 0, 1), (0, 1, 0, 1), (1, 1, 1, 1))),
    "mahler": _spec(
        "mahler", 2, 2, ["01", "12", "22"], [0, 1, 0],
        witness_mode="pigeonhole", degree=2,
        equation=((1,), (0, 1), (0, 1))),
}


def get_report_path(report, path):
    node = report
    for part in path.split("."):
        if isinstance(node, list):
            node = node[int(part)]
        else:
            node = node[part]
    return node


# Filled with externally checked values: the exact/interval bounds, value
# cycles and matrix periods come from independent hand computation, the
# remaining structural numbers were frozen from a verified run.
EXPECTED = {
    "ex1": [
        ("kernel.s", 5),
        ("kernel.uniformity_base.s", 3),
        ("automaton.e", 2),
        ("witness.mode", "empirical"),
        ("witness.k", 0),
        ("witness.l", 1),
        ("witness.omega", "3"),
        ("coprimality.verdict", "coprime-for-all-n"),
        ("bounds.refined.lower", "3"),
        ("bounds.refined.upper", "6"),
        ("bounds.exact", "3"),
        ("equation.consistent", True),
    ],
    "ex2": [
        ("kernel.s", 38),
        ("kernel.uniformity_base.s", 8),
        ("automaton.e", 3),
        ("witness.k", 0),
        ("witness.l", 1),
        ("witness.omega", "5"),
        ("coprimality.verdict", "coprime-for-all-n"),
        ("coprimality.factors.0.values", ["1"]),
        ("bounds.refined.lower", "5"),
        ("bounds.refined.upper", "10"),
        ("bounds.exact", "5"),
    ],
    "ex3": [
        ("kernel.s", 17),
        ("automaton.e", 3),
        ("witness.k", 0),
        ("witness.l", 6),
        ("witness.omega", "8/3"),
        ("coprimality.verdict", "coprime-for-all-n"),
        ("coprimality.factors.0.modulus", "T+1"),
        ("coprimality.factors.0.period", 1),
        ("coprimality.factors.0.values", ["1"]),
        ("coprimality.factors.1.modulus", "T+2"),
        ("coprimality.factors.1.period", 2),
        ("coprimality.factors.1.values", ["1", "2"]),
        ("bounds.refined.lower", "8/3"),
        ("bounds.refined.upper", "24/5"),
        ("bounds.final.lower", "8/3"),
        ("bounds.final.upper", "14/5"),
        ("bounds.exact", None),
    ],
    "ex4": [
        ("automaton.e", 5),
        ("witness.k", 0),
        ("witness.l", 5),
        ("witness.omega", "17/5"),
        ("coprimality.verdict", "coprime-for-all-n"),
        ("coprimality.factors.0.period", 4),
        ("coprimality.factors.0.values", ["2", "1", "3", "4"]),
        ("bounds.refined.lower", "17/5"),
        ("bounds.refined.upper", "85/12"),
        ("bounds.exact", "17/5"),
    ],
    "thue-morse": [
        ("kernel.s", 2),
        ("automaton.e", 2),
        ("witness.k", 1),
        ("witness.l", 1),
        ("witness.omega", "2"),
        ("coprimality.verdict", "fails"),
        ("coprimality.first_failure", 2),
        ("bounds.general.upper", "16"),
        ("bounds.final.lower", "3/2"),
        ("bounds.final.upper", "6"),
        ("bounds.exact", None),
        ("equation.consistent", True),
    ],
    "mahler": [
        ("kernel.s", 3),
        ("automaton.e", 3),
        ("witness.mode", "pigeonhole"),
        ("witness.omega", "2"),
        ("bounds.final.lower", "3/2"),
        ("bounds.degree.upper", "2"),
        ("bounds.exact", None),
        ("equation.consistent", True),
    ],
}


def compare_expected(name, report):
    """Mismatch list [(path, expected, actual)] for a bundled fixture."""
    mismatches = []
    for path, expected in EXPECTED[name]:
        try:
            actual = get_report_path(report, path)
        except (KeyError, IndexError, TypeError):
            actual = "<missing>"
        if actual != expected:
            mismatches.append((path, expected, actual))
    return mismatches
