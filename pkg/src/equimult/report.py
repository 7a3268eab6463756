"""Assembly and rendering of analysis reports.

A report is a plain JSON-compatible dict following ``report_schema.json``.
Everything except the ``timings`` block is a pure function of the input
family and the options, so two runs with the same seed agree byte for byte
once timings are dropped.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Sequence

from . import analysis
from .analysis import (
    Certificate,
    NonIsolatedAtZero,
    certificate_search,
    check_equimultiplicity,
    check_greuel,
    check_necessary_bounds,
    is_mu_constant,
    multiplicity_profile,
)
from .fields import QQ
from .parser import FamilyDocument, print_family, print_polynomial

SCHEMA_VERSION = 1


@dataclass
class AnalysisOptions:
    seed: int = 0
    height: int = analysis.DEFAULT_HEIGHT
    witness_height: int = analysis.DEFAULT_WITNESS_HEIGHT
    retries: int = analysis.DEFAULT_RETRIES
    mu_samples: Sequence[Fraction] = analysis.DEFAULT_MU_SAMPLES
    generic: bool = True
    assume_mu_constant: bool = False

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "height": self.height,
            "witness_height": self.witness_height,
            "retries": self.retries,
            "mu_samples": [str(s) for s in self.mu_samples],
            "generic": self.generic,
            "assume_mu_constant": self.assume_mu_constant,
        }


def load_schema() -> dict:
    text = resources.files("equimult").joinpath("report_schema.json").read_text()
    return json.loads(text)


class _Timer:
    def __init__(self) -> None:
        self.timings: dict[str, float] = {}

    def run(self, stage: str, fn, *args, **kwargs):
        start = time.perf_counter()
        try:
            return fn(*args, **kwargs)
        finally:
            self.timings[stage] = round(time.perf_counter() - start, 6)


def family_json(doc: FamilyDocument) -> dict:
    F = doc.family
    out = {
        "name": doc.name,
        "vars": list(F.ring.vars),
        "field": F.ring.field.name,
        "text": print_family(F),
        "total": print_polynomial(F.total),
        "f": print_polynomial(F.f.poly),
        "g": {str(k): print_polynomial(g.poly) for k, g in sorted(F.deformations.items())},
        "greuel": None,
    }
    if doc.greuel is not None:
        out["greuel"] = [
            {"lambda": print_polynomial(lam), "g": print_polynomial(g.poly)}
            for lam, g in doc.greuel.pairs
        ]
    return out


def _mu_block(doc: FamilyDocument, opts: AnalysisOptions, timer: _Timer) -> tuple[dict, bool | None]:
    F = doc.family
    empty = {
        "available": False,
        "constant": None,
        "mu_at_0": None,
        "mu_generic": None,
        "samples": {},
        "caveats": list(analysis.CAVEATS),
        "reason": None,
    }
    if F.ring.field != QQ:
        empty["reason"] = (
            f"Milnor numbers need rational coefficients; the family is over {F.ring.field.name}"
        )
        return empty, None
    try:
        mc = timer.run("mu", is_mu_constant, F, samples=opts.mu_samples, generic=opts.generic)
    except NonIsolatedAtZero as exc:
        empty["reason"] = str(exc)
        return empty, None
    out = mc.to_json()
    out["available"] = True
    out["reason"] = None
    return out, mc.constant


def build_report(doc: FamilyDocument, opts: AnalysisOptions | None = None) -> dict:
    """Run every checker on a parsed family and collect the results."""
    opts = opts or AnalysisOptions()
    F = doc.family
    timer = _Timer()
    report: dict = {
        "schema_version": SCHEMA_VERSION,
        "seed": opts.seed,
        "options": opts.to_json(),
        "family": family_json(doc),
    }

    profile = timer.run(
        "multiplicity", multiplicity_profile, F, seed=opts.seed, retries=opts.retries,
        height=opts.height,
    )
    report["multiplicities"] = profile.to_json()
    bounds = timer.run("bounds", check_necessary_bounds, F)
    report["bounds"] = bounds.to_json()
    report["greuel"] = (
        timer.run("greuel", check_greuel, doc.greuel).to_json() if doc.greuel is not None else None
    )

    mu, constant = _mu_block(doc, opts, timer)
    report["mu"] = mu

    certificates: list[dict] = []
    for c in bounds.violations:
        certificates.append(
            Certificate(
                "BoundViolation",
                c.citation,
                f"m(g[{c.k}]) = {c.multiplicity} < {c.required} = m - {c.k} + 1",
            ).to_json()
        )
    refuted = constant is False or not bounds.all_pass
    if refuted and F.ring.field == QQ:
        cert = timer.run(
            "certificates", certificate_search, F, seed=opts.seed, retries=opts.retries,
            height=opts.height, witness_height=opts.witness_height,
        )
        if cert is not None:
            certificates.append(cert.to_json())
        else:
            certificates.append(
                Certificate(
                    "Inconclusive",
                    "lst-arc",
                    "no arc with gap <= 0 among the bounded line searches",
                ).to_json()
            )

    if constant is None and not opts.assume_mu_constant:
        why = mu["reason"] or "the Milnor number could not be decided"
        equi = analysis.EquimultiplicityVerdict("NotApplicable", None, why)
    else:
        equi = timer.run(
            "equimultiplicity", check_equimultiplicity, F, mu_constant=constant,
            assume_mu_constant=opts.assume_mu_constant,
        )
    report["equimultiplicity"] = equi.to_json()
    if equi.verdict == "Equimultiple":
        certificates.append(
            Certificate("EquimultipleVerdict", equi.citation, equi.reason).to_json()
        )
    report["certificates"] = certificates
    report["summary"] = _summary(report)
    report["timings"] = timer.timings
    return report


def _summary(report: dict) -> dict:
    mu = report["mu"]
    if mu["constant"] is None:
        mu_verdict = "unknown"
    else:
        mu_verdict = "constant" if mu["constant"] else "not-constant"
    kinds = [c["kind"] for c in report["certificates"]]
    return {
        "mu_constancy": mu_verdict,
        "bounds": "PASS" if report["bounds"]["all_pass"] else "VIOLATION",
        "equimultiplicity": report["equimultiplicity"]["verdict"],
        "certificate": "NonMuConstant" if "NonMuConstant" in kinds else None,
    }


def strip_timings(report: dict) -> dict:
    return {k: v for k, v in report.items() if k != "timings"}


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True)


# -- text rendering -------------------------------------------------------------------


def render_text(report: dict) -> str:
    fam = report["family"]
    lines = [f"family   F = {fam['total']}"]
    if fam["name"]:
        lines[0] += f"   [{fam['name']}]"
    lines.append(f"ring     {', '.join(fam['vars'])} over {fam['field']}")
    mult = report["multiplicities"]
    per_k = ", ".join(f"m(g[{k}])={v}" for k, v in mult["per_k"].items())
    lines.append(
        f"mult     m={mult['m']}  m1={mult['m1']}  generic={mult['generic']}"
        + (f"  ({per_k})" if per_k else "")
        + ("" if mult["verified"] else "  [not confirmed by sampling]")
    )
    b = report["bounds"]
    lines.append(f"bounds   {'PASS' if b['all_pass'] else 'VIOLATION'}")
    for c in b["checks"]:
        lines.append(f"           k={c['k']}: {c['multiplicity']} >= {c['required']}  {c['verdict']}")
    if report["greuel"] is not None:
        g = report["greuel"]
        lines.append(f"greuel   {g['verdict']}")
        if g["dependent_forms"]:
            lines.append(f"           dependent initial forms: {', '.join(g['dependent_forms'])}")
    mu = report["mu"]
    if mu["available"]:
        samples = ", ".join(f"t={k}: {v}" for k, v in mu["samples"].items())
        lines.append(
            f"mu       at 0: {mu['mu_at_0']}  generic: {mu['mu_generic']}  ->  "
            f"{report['summary']['mu_constancy']}"
        )
        if samples:
            lines.append(f"           samples {samples}")
    else:
        lines.append(f"mu       unavailable: {mu['reason']}")
    e = report["equimultiplicity"]
    cite = f" ({e['citation']})" if e["citation"] else ""
    cond = " [conditional on constant Milnor number]" if e["conditional_on_mu_constancy"] else ""
    lines.append(f"equimult {e['verdict']}{cite}{cond}: {e['reason']}")
    for s in e["strengthened_bounds"]:
        lines.append(f"           k={s['k']}: {s['multiplicity']} >= {s['required']}  {s['verdict']}")
    for c in report["certificates"]:
        line = f"cert     {c['kind']} ({c['citation']})"
        if c["arc"] is not None:
            line += f" arc z={c['arc']['z']} t={c['arc']['t']} gap={c['gap']}"
        lines.append(line)
        lines.append(f"           {c['explanation']}")
    return "\n".join(lines)


__all__ = [
    "AnalysisOptions",
    "SCHEMA_VERSION",
    "build_report",
    "dumps",
    "family_json",
    "load_schema",
    "render_text",
    "strip_timings",
]
