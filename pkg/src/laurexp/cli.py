"""Command-line front end.

    laurexp analyze <specfile> [--n-check N] [--witness U,V,omega |
                                --search-k K --search-l L] [--format text|json]
    laurexp reproduce <name>       one of the bundled fixtures
    laurexp verify-equation <specfile> [--depth N]

Exit codes: 0 ok, 2 malformed problem description, 3 budget exceeded,
4 reproduction mismatch.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import fixtures
from .pipeline import (BudgetExceededError, ProblemSpec, SpecError,
                       analyze_problem)
from .repetition import WitnessError
from .words import word_from_digits

EXIT_OK = 0
EXIT_SPEC = 2
EXIT_BUDGET = 3
EXIT_MISMATCH = 4

_INT_KEYS = {"p", "b", "m", "seed", "n_check", "search_k", "search_l",
             "depth", "degree", "level_budget"}
_KNOWN_KEYS = _INT_KEYS | {"images", "coding", "witness", "witness_u",
                           "witness_v", "witness_omega", "equation", "name"}


def _parse_bracket_list(text, line_no):
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise SpecError(f"expected a [...] list, got {text!r}", line_no)
    inner = text[1:-1].strip()
    if not inner:
        return []
    depth = 0
    parts, cur = [], []
    for ch in inner:
        if ch == "[":
            depth += 1
            cur.append(ch)
        elif ch == "]":
            depth -= 1
            cur.append(ch)
        elif ch == "," and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur).strip())
    return parts


def parse_problem(text, name="problem") -> ProblemSpec:
    """Parse the line-oriented key = value problem format."""
    values = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise SpecError(f"expected 'key = value', got {line!r}", line_no)
        key, _, val = line.partition("=")
        key = key.strip().replace("-", "_")
        val = val.strip()
        if key not in _KNOWN_KEYS:
            raise SpecError(f"unknown key {key!r}", line_no)
        if key in _INT_KEYS:
            try:
                values[key] = int(val)
            except ValueError:
                raise SpecError(f"{key} must be an integer, got {val!r}", line_no)
        elif key in ("images", "coding"):
            parts = _parse_bracket_list(val, line_no)
            if key == "images":
                values[key] = tuple(word_from_digits(p) for p in parts)
            else:
                try:
                    values[key] = tuple(int(p) for p in parts)
                except ValueError:
                    raise SpecError(f"coding entries must be integers", line_no)
        elif key == "equation":
            arrays = []
            for part in _parse_bracket_list(val, line_no):
                if part == "[]" or part == "":
                    arrays.append(())
                    continue
                inner = _parse_bracket_list(part, line_no)
                try:
                    arrays.append(tuple(int(x) for x in inner))
                except ValueError:
                    raise SpecError("equation coefficients must be integers", line_no)
            values[key] = tuple(arrays)
        elif key == "witness":
            values["witness_mode"] = val
        elif key in ("witness_u", "witness_v"):
            values[key] = word_from_digits(val)
        elif key == "witness_omega":
            try:
                values[key] = Fraction(val)
            except (ValueError, ZeroDivisionError):
                raise SpecError(f"witness_omega must be a rational, got {val!r}",
                                line_no)
        else:  # name
            values[key] = val
    for required in ("p", "b", "images", "coding"):
        if required not in values:
            raise SpecError(f"missing required key {required!r}")
    values.setdefault("m", len(values["images"]))
    values.setdefault("name", name)
    if values.get("witness_u") or values.get("witness_v"):
        values.setdefault("witness_mode", "explicit")
    spec = ProblemSpec(**values)
    spec.validate()
    return spec


def load_problem(path) -> ProblemSpec:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as err:
        raise SpecError(f"cannot read {path}: {err.strerror}")
    return parse_problem(text, name=str(path))


# ---------------------------------------------------------------------------
# rendering

def _approx(frac_str):
    if frac_str is None:
        return "-"
    fr = Fraction(frac_str)
    if fr.denominator == 1:
        return f"{fr} (= {fr.numerator}.000)"
    return f"{fr} (~ {float(fr):.3f})"


def render_text(report) -> str:
    lines = []
    spec = report["spec"]
    lines.append(f"problem {spec['name']}: p={spec['p']} b={spec['b']} "
                 f"m={spec['m']} seed={spec['seed']}")
    lines.append("  images: " + " ".join(spec["images"])
                 + "   coding: " + ",".join(str(v) for v in spec["coding"]))
    kern = report["kernel"]
    lines.append(f"kernel: s = {kern['s']} (base {kern['base']}); "
                 f"base-{kern['uniformity_base']['base']} kernel size "
                 f"{kern['uniformity_base']['s']}")
    for el in kern["elements"]:
        lines.append(f"  (n={el['n']}, r={el['r']}): {el['prefix']}...")
    lines.append(f"automaton: e = {report['automaton']['e']} states "
                 f"(base {report['automaton']['base']}, direct reading)")
    w = report["witness"]
    lines.append(f"witness [{w['mode']}]: U={w['u'] or 'eps'} V={w['v']} "
                 f"k={w['k']} l={w['l']} omega={_approx(w['omega'])}")
    lines.append("agreement:")
    for rec in report["agreement"]:
        measured = "> budget" if rec["measured"] is None else rec["measured"]
        flag = "exact" if rec["exact"] else "    -"
        lines.append(f"  n={rec['n']:>2}  expected={rec['expected']:>12}  "
                     f"measured={measured:>10}  {flag}")
    cop = report["coprimality"]
    lines.append(f"coprimality: verdict {cop['verdict']}"
                 + (f" (from n = {cop['threshold']})"
                    if cop["verdict"] == "coprime-for-n>=N" else "")
                 + (f" (first failure n = {cop['first_failure']})"
                    if cop["verdict"] == "fails" else ""))
    lines.append(f"  ell = {cop['ell']} = {cop['ell_prime']} * p^{cop['p_valuation']}, "
                 f"order t = {cop['t']}")
    for fac in cop["factors"]:
        zeros = [str(n) for n, v in enumerate(fac["values"]) if v == "0"]
        lines.append(f"  factor {fac['modulus']}: pre={fac['pre_period']} "
                     f"period={fac['period']} values=({','.join(fac['values'])})"
                     + (f"  zero at n={','.join(zeros)}" if zeros else ""))
    if cop["last_letter"]:
        ll = cop["last_letter"]
        lines.append(f"  last letters: U->({','.join(ll['u_last_values'])}) "
                     f"V->({','.join(ll['v_last_values'])}) "
                     f"pre={ll['pre_period']} period={ll['period']}")
    lines.append("bounds:")
    for key in ("general", "theorem", "refined", "final"):
        bd = report["bounds"].get(key)
        if bd is None:
            continue
        lo = _approx(bd["lower"]) if bd["lower"] is not None else "-"
        lines.append(f"  {key:>8}: [{lo}, {_approx(bd['upper'])}]")
        if key == "degree":
            continue
    if report["bounds"].get("degree"):
        lines.append(f"    degree: upper {_approx(report['bounds']['degree']['upper'])}"
                     " (informational)")
    exact = report["bounds"]["exact"]
    lines.append(f"  exact mu = {_approx(exact)}" if exact is not None
                 else "  exact value: not certified")
    if report["equation"]:
        eq = report["equation"]
        lines.append(f"equation check to depth {eq['depth']}: {eq['verdict']}")
    lines.append("assumptions:")
    for item in report["assumptions"]:
        lines.append(f"  - {item}")
    return "\n".join(lines) + "\n"


def render_json(report) -> str:
    return json.dumps(report, indent=2) + "\n"


def _emit(report, fmt, out):
    out.write(render_json(report) if fmt == "json" else render_text(report))


# ---------------------------------------------------------------------------

def _apply_overrides(spec, args):
    if getattr(args, "n_check", None) is not None:
        spec.n_check = args.n_check
    if getattr(args, "search_k", None) is not None:
        spec.search_k = args.search_k
    if getattr(args, "search_l", None) is not None:
        spec.search_l = args.search_l
    if getattr(args, "depth", None) is not None:
        spec.depth = args.depth
    if getattr(args, "witness", None):
        parts = args.witness.split(",")
        if len(parts) != 3:
            raise SpecError("--witness wants U,V,omega (U may be empty)")
        spec.witness_mode = "explicit"
        spec.witness_u = word_from_digits(parts[0])
        spec.witness_v = word_from_digits(parts[1])
        try:
            spec.witness_omega = Fraction(parts[2].replace(" ", ""))
        except (ValueError, ZeroDivisionError):
            raise SpecError(f"bad witness omega {parts[2]!r}")
    spec.validate()
    return spec


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="laurexp",
        description="Certified irrationality-exponent bounds for morphic "
                    "Laurent series over finite fields")
    sub = parser.add_subparsers(dest="command", required=True)

    p_an = sub.add_parser("analyze", help="run the full pipeline on a problem file")
    p_an.add_argument("specfile")
    p_an.add_argument("--n-check", type=int, dest="n_check")
    p_an.add_argument("--search-k", type=int, dest="search_k")
    p_an.add_argument("--search-l", type=int, dest="search_l")
    p_an.add_argument("--depth", type=int, dest="depth")
    p_an.add_argument("--witness", help="explicit witness U,V,omega")
    p_an.add_argument("--format", choices=("text", "json"), default="text")

    p_re = sub.add_parser("reproduce", help="run a bundled fixture and compare")
    p_re.add_argument("name", choices=sorted(fixtures.BUILTIN))
    p_re.add_argument("--format", choices=("text", "json"), default="text")

    p_ve = sub.add_parser("verify-equation",
                          help="check the equation in a problem file")
    p_ve.add_argument("specfile")
    p_ve.add_argument("--depth", type=int, dest="depth")

    args = parser.parse_args(argv)
    out = sys.stdout
    try:
        if args.command == "analyze":
            spec = _apply_overrides(load_problem(args.specfile), args)
            report = analyze_problem(spec)
            _emit(report, args.format, out)
            return EXIT_OK
        if args.command == "reproduce":
            spec = fixtures.BUILTIN[args.name]
            report = analyze_problem(spec)
            _emit(report, args.format, out)
            mismatches = fixtures.compare_expected(args.name, report)
            if mismatches:
                for path, expected, actual in mismatches:
                    out.write(f"MISMATCH {path}: expected {expected!r}, "
                              f"got {actual!r}\n")
                return EXIT_MISMATCH
            out.write(f"reproduce {args.name}: all "
                      f"{len(fixtures.EXPECTED[args.name])} checks match\n")
            return EXIT_OK
        if args.command == "verify-equation":
            spec = load_problem(args.specfile)
            if getattr(args, "depth", None) is not None:
                spec.depth = args.depth
            if spec.equation is None:
                raise SpecError("problem file carries no equation")
            report = analyze_problem(spec)
            eq = report["equation"]
            out.write(f"{eq['verdict']}\n")
            return EXIT_OK
    except SpecError as err:
        sys.stderr.write(f"problem error: {err}\n")
        return EXIT_SPEC
    except WitnessError as err:
        sys.stderr.write(f"witness search failed: {err}\n")
        return EXIT_BUDGET
    except BudgetExceededError as err:
        sys.stderr.write(f"budget exceeded: {err}\n")
        return EXIT_BUDGET
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
