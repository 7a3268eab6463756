"""Command-line interface.

Exit codes: 0 analysed (whatever the verdicts), 1 corpus mismatch,
2 input error, 3 an internal limit (degree cap, basis cap, time cap) was hit.
"""

from __future__ import annotations

import argparse
import json
import logging
import signal
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .analysis import (
    NonIsolatedAtZero,
    certificate_search,
    check_equimultiplicity,
    check_greuel,
    check_necessary_bounds,
    is_mu_constant,
    lst_gap,
    multiplicity_profile,
)
from .arc import Arc, DimensionMismatch, InvalidArc, LimitExceeded
from .extint import to_json
from .family import FamilyError
from .fields import QQ
from .groebner import BasisLimitExceeded
from .parser import ParseError, parse_document, print_family, print_polynomial
from .report import AnalysisOptions, build_report, dumps, load_schema, render_text
from .singularity import DoesNotVanishAtOrigin, cone_has_isolated_singularity, sigma_witness

log = logging.getLogger("equimult")

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_LIMIT = 3


class TimeCapExceeded(RuntimeError):
    pass


class InputError(ValueError):
    pass


def _on_alarm(signum, frame):
    raise TimeCapExceeded("time cap exceeded")


# -- input handling -------------------------------------------------------------------


def read_source(source: str) -> tuple[str, str]:
    """``(label, text)`` for a file path, ``-`` for stdin, or inline family text."""
    if source == "-":
        return "<stdin>", sys.stdin.read()
    if ":" in source or "\n" in source:
        return "<inline>", source
    path = Path(source)
    if not path.is_file():
        raise InputError(f"no such file: {source}")
    return str(path), path.read_text()


def load(source: str):
    label, text = read_source(source)
    try:
        return parse_document(text)
    except ParseError as exc:
        raise InputError(f"{label}: {exc}") from None


def parse_samples(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(s.strip()) for s in text.split(",") if s.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad sample list {text!r}; expected e.g. 1,-1,2,1/2") from None


def options_from(args) -> AnalysisOptions:
    opts = AnalysisOptions(
        seed=args.seed,
        height=args.height,
        retries=args.retries,
        generic=not args.no_generic,
        assume_mu_constant=getattr(args, "assume_mu_constant", False),
    )
    if args.mu_samples is not None:
        opts.mu_samples = args.mu_samples
    return opts


def emit(args, payload: dict, text: str | None = None) -> None:
    if args.pretty and text is not None:
        print(text)
    else:
        print(dumps(payload))


def _require_rational(doc) -> None:
    if doc.family.ring.field != QQ:
        raise InputError(f"this command needs rational coefficients, not {doc.family.ring.field.name}")


# -- subcommands ------------------------------------------------------------------------


def cmd_analyze(args) -> int:
    doc = load(args.input)
    report = build_report(doc, options_from(args))
    emit(args, report, render_text(report))
    return EXIT_OK


def cmd_mu(args) -> int:
    doc = load(args.input)
    _require_rational(doc)
    opts = options_from(args)
    try:
        mc = is_mu_constant(doc.family, samples=opts.mu_samples, generic=opts.generic)
    except NonIsolatedAtZero as exc:
        raise InputError(str(exc)) from None
    out = mc.to_json()
    text = (
        f"mu(0) = {out['mu_at_0']}, mu(generic t) = {out['mu_generic']}: "
        + ("constant" if mc.constant else "not constant")
        + "".join(f"\n  t = {k}: {v}" for k, v in out["samples"].items())
    )
    emit(args, out, text)
    return EXIT_OK


def cmd_mult(args) -> int:
    doc = load(args.input)
    prof = multiplicity_profile(doc.family, seed=args.seed, retries=args.retries, height=args.height)
    out = prof.to_json()
    text = f"m = {out['m']}, m1 = {out['m1']}, generic multiplicity = {out['generic']}" + (
        "" if prof.verified else " (not confirmed by sampling)"
    )
    emit(args, out, text)
    return EXIT_OK


def cmd_cone(args) -> int:
    doc = load(args.input)
    f = doc.family.f
    out = {
        "initial_form": print_polynomial(f.initial_form),
        "cone_singular_ideal": [print_polynomial(g) for g in f.cone_singular_ideal.generators],
        "isolated": cone_has_isolated_singularity(f),
        "witness": None,
    }
    if doc.family.ring.field == QQ:
        w = sigma_witness(f, height=args.height)
        out["witness"] = None if w is None else [str(c) for c in w]
    text = (
        f"tangent cone {out['initial_form']} = 0; singular locus "
        f"V({', '.join(out['cone_singular_ideal'])}) "
        + ("is the origin" if out["isolated"] else f"is positive dimensional, witness {out['witness']}")
    )
    emit(args, out, text)
    return EXIT_OK


def cmd_check_bounds(args) -> int:
    doc = load(args.input)
    verdict = check_necessary_bounds(doc.family)
    out = verdict.to_json()
    text = "\n".join(
        [f"m = {out['m']}: {'PASS' if verdict.all_pass else 'VIOLATION'}"]
        + [f"  k={c['k']}: {c['multiplicity']} >= {c['required']} {c['verdict']}" for c in out["checks"]]
    )
    emit(args, out, text)
    return EXIT_OK


def cmd_check_greuel(args) -> int:
    doc = load(args.input)
    if doc.greuel is None:
        raise InputError("check-greuel needs lambda[j]/g[j] input")
    v = check_greuel(doc.greuel)
    out = v.to_json()
    text = v.verdict
    if not v.applicable:
        text += f": initial forms {', '.join(v.dependent_forms)} are linearly dependent"
    emit(args, out, text)
    return EXIT_OK


def cmd_check_equimult(args) -> int:
    doc = load(args.input)
    _require_rational(doc)
    try:
        v = check_equimultiplicity(doc.family, assume_mu_constant=args.assume_mu_constant)
    except NonIsolatedAtZero as exc:
        raise InputError(str(exc)) from None
    out = v.to_json()
    emit(args, out, f"{v.verdict}{f' ({v.citation})' if v.citation else ''}: {v.reason}")
    return EXIT_OK


def cmd_probe_arcs(args) -> int:
    doc = load(args.input)
    _require_rational(doc)
    F = doc.family
    if args.arc is not None:
        try:
            arc = Arc.from_json(json.loads(args.arc))
            gap = lst_gap(F, arc)
        except (ValueError, KeyError, TypeError, InvalidArc, DimensionMismatch) as exc:
            raise InputError(f"bad arc: {exc}") from None
        out = {"arc": arc.to_json(), "gap": to_json(gap)}
        emit(args, out, f"gap = {out['gap']}")
        return EXIT_OK
    cert = certificate_search(F, seed=args.seed, retries=args.retries, height=args.height)
    out = {"certificate": None if cert is None else cert.to_json()}
    if cert is None:
        text = "no certificate found (this proves nothing)"
    else:
        text = f"{cert.kind} at stage {cert.stage}: arc {cert.arc.to_json()} gap {cert.gap}"
    emit(args, out, text)
    return EXIT_OK


def cmd_regroup(args) -> int:
    doc = load(args.input)
    F = doc.family
    out = {
        "family": print_family(F),
        "g": {str(k): print_polynomial(g.poly) for k, g in sorted(F.deformations.items())},
    }
    emit(args, out, out["family"])
    return EXIT_OK


# -- corpus ---------------------------------------------------------------------------


def corpus_files(directory: str | None) -> list[Path]:
    if directory is None:
        root = resources.files("equimult").joinpath("corpus")
        base = Path(str(root))
    else:
        base = Path(directory)
    if not base.is_dir():
        raise InputError(f"corpus directory not found: {base}")
    files = sorted(base.glob("*.germ"))
    if not files:
        raise InputError(f"no .germ files in {base}")
    return files


def _norm(value) -> str:
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def computed_value(key: str, doc, report: dict) -> str:
    """The report value that an ``expect.<key>`` line is compared against."""
    mu = report["mu"]
    if key == "mu0":
        return _norm(mu["mu_at_0"])
    if key == "mu_generic":
        return _norm(mu["mu_generic"])
    if key == "mu_constant":
        return _norm(mu["constant"])
    if key.startswith("mu_at_"):
        sample = str(Fraction(key[len("mu_at_"):].replace("_", "/")))
        return _norm(mu["samples"].get(sample))
    if key == "m":
        return _norm(report["multiplicities"]["m"])
    if key == "m1":
        return _norm(report["multiplicities"]["m1"])
    if key == "generic_multiplicity":
        return _norm(report["multiplicities"]["generic"])
    if key == "bounds":
        return report["summary"]["bounds"]
    if key == "equimult":
        return report["equimultiplicity"]["verdict"]
    if key == "citation":
        return _norm(report["equimultiplicity"]["citation"])
    if key == "certificate":
        return _norm(report["summary"]["certificate"])
    if key == "greuel":
        return _norm(None if report["greuel"] is None else report["greuel"]["verdict"])
    if key == "equimult_conditional":
        return check_equimultiplicity(doc.family, assume_mu_constant=True).verdict
    raise KeyError(key)


def cmd_corpus_list(args) -> int:
    files = corpus_files(args.dir)
    rows = []
    for path in files:
        try:
            doc = parse_document(path.read_text())
        except ParseError as exc:
            raise InputError(f"{path}: {exc}") from None
        rows.append({"file": path.name, "name": doc.name, "F": print_polynomial(doc.family.total)})
    if args.pretty:
        for r in rows:
            print(f"{r['file']:<32} {r['F']}")
    else:
        print(dumps({"entries": rows}))
    return EXIT_OK


def cmd_corpus_run(args) -> int:
    files = corpus_files(args.dir)
    opts = options_from(args)
    validator = None
    try:
        import jsonschema

        validator = jsonschema.Draft202012Validator(load_schema())
    except ImportError:  # schema validation is a test-time extra
        log.debug("jsonschema not installed; skipping report validation")
    results = []
    mismatches = 0
    for path in files:
        try:
            doc = parse_document(path.read_text())
        except ParseError as exc:
            raise InputError(f"{path}: {exc}") from None
        report = build_report(doc, opts)
        if validator is not None:
            errors = [e.message for e in validator.iter_errors(report)]
            if errors:
                mismatches += 1
                results.append({"file": path.name, "key": "schema", "expected": "valid",
                                "computed": errors[0], "match": False})
        if not doc.expect:
            results.append({"file": path.name, "key": "-", "expected": "-", "computed": "-", "match": True})
        for key, expected in doc.expect.items():
            try:
                got = computed_value(key, doc, report)
            except KeyError:
                got = f"<unknown expectation {key!r}>"
            ok = got == expected.strip()
            mismatches += not ok
            results.append({"file": path.name, "key": key, "expected": expected.strip(),
                            "computed": got, "match": ok})
    if args.pretty:
        for r in results:
            mark = "ok" if r["match"] else "MISMATCH"
            print(f"{r['file']:<32} {r['key']:<22} {r['expected']:<16} {r['computed']:<16} {mark}")
        print(f"{len(files)} files, {sum(r['match'] for r in results)}/{len(results)} expectations matched")
    else:
        print(dumps({"results": results, "mismatches": mismatches, "files": len(files)}))
    return EXIT_MISMATCH if mismatches else EXIT_OK


# -- parser -----------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser, needs_input: bool = True) -> None:
    if needs_input:
        p.add_argument("input", help="family file, '-' for stdin, or inline text like 'F: x^3+y^3+t*x^2'")
    p.add_argument("--seed", type=int, default=0, help="seed for random arcs and samples")
    p.add_argument("--height", type=int, default=10, help="coordinate bound for random draws and witnesses")
    p.add_argument("--retries", type=int, default=25, help="random draws per search stage")
    p.add_argument("--mu-samples", type=parse_samples, default=None, metavar="LIST",
                   help="comma-separated t values for sampled Milnor numbers")
    p.add_argument("--no-generic", action="store_true", help="skip the computation over QQ(t)")
    p.add_argument("--time-cap", type=int, default=None, metavar="SEC", help="abort with exit 3 after SEC seconds")
    p.add_argument("--pretty", action="store_true", help="human-readable output instead of JSON")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="equimult",
        description="Milnor-number constancy and equimultiplicity checks for families f + sum t^k g_k.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    table = [
        ("analyze", cmd_analyze, "full report"),
        ("mu", cmd_mu, "Milnor number at 0, over QQ(t) and at sample values"),
        ("mult", cmd_mult, "multiplicities m, m(g_k), m1 and the generic fibre"),
        ("cone", cmd_cone, "tangent cone of f and its singular locus"),
        ("check-bounds", cmd_check_bounds, "necessary bounds m(g_k) >= m - k + 1"),
        ("check-greuel", cmd_check_greuel, "Greuel's inequality with its independence gate"),
        ("check-equimult", cmd_check_equimult, "sufficient conditions for equimultiplicity"),
        ("probe-arcs", cmd_probe_arcs, "search for (or evaluate) an arc with gap <= 0"),
        ("regroup", cmd_regroup, "collect a lambda/g family by powers of t"),
    ]
    for name, fn, help_ in table:
        p = sub.add_parser(name, help=help_)
        _common(p)
        p.set_defaults(func=fn)
        if name in ("analyze", "check-equimult"):
            p.add_argument("--assume-mu-constant", action="store_true",
                           help="report equimultiplicity verdicts conditional on a constant Milnor number")
        if name == "probe-arcs":
            p.add_argument("--arc", default=None, help='arc as JSON, e.g. \'{"z": [["0","1"],["0","1"]], "t": ["0"]}\'')
    corpus = sub.add_parser("corpus", help="bundled example families")
    csub = corpus.add_subparsers(dest="corpus_command", required=True)
    for name, fn, help_ in (("list", cmd_corpus_list, "list corpus entries"),
                            ("run", cmd_corpus_run, "check every entry against its expectations")):
        p = csub.add_parser(name, help=help_)
        _common(p, needs_input=False)
        p.add_argument("--dir", default=None, help="corpus directory (default: the bundled one)")
        p.set_defaults(func=fn)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    if args.time_cap:
        signal.signal(signal.SIGALRM, _on_alarm)
        signal.alarm(args.time_cap)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (FamilyError, DoesNotVanishAtOrigin) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (TimeCapExceeded, LimitExceeded, BasisLimitExceeded) as exc:
        print(f"limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    finally:
        if args.time_cap:
            signal.alarm(0)


if __name__ == "__main__":
    sys.exit(main())
