"""Checkers for families ``F = f + sum_k t^k g_k`` near ``t = 0``.

The arc machinery refutes constancy of the Milnor number: along an arc
``gamma`` through the origin, ``|F_t| / ||F_z||`` fails to tend to zero as
soon as ``ord_u F_t(gamma) - min_i ord_u F_{z_i}(gamma) <= 0``. The
bound checkers apply the necessary conditions ``m(g_k) >= m - k + 1``; the
equimultiplicity checker applies the sufficient conditions built on the
tangent cone of ``f`` and its singular locus.

Statement identifiers used in verdicts:

``necessary-bound``
    ``m(g_k) >= m - k + 1`` for a family with constant Milnor number.
``greuel-criterion``
    ``nu(lambda_j) + m(g_j) > m(f)`` when the initial forms of the ``g_j``
    are linearly independent.
``isolated-tangent-cone``
    constant Milnor number plus an isolated singularity of the tangent cone
    of ``f`` gives constant multiplicity.
``cone-locus-avoids-h``
    for ``f + t g + t^2 h`` with constant Milnor number, a singular locus of
    the tangent cone of ``f`` not contained in the tangent cone of ``h``
    gives constant multiplicity.
``strengthened-bound``
    ``m(g_k) >= m - k + 2`` when that locus is not contained in the tangent
    cone of ``g_k``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .arc import Arc, InvalidArc, substitute_arc
from .extint import INFINITY, UNDEFINED, ext_sub, is_finite, to_json
from .family import PARAMETER, Family, GreuelFamily
from .fields import QQ
from .groebner import radical_member
from .linalg import nullspace
from .polynomial import Polynomial, initial_form, order, partials
from .singularity import (
    DoesNotVanishAtOrigin,
    Germ,
    cone_has_isolated_singularity,
    milnor_number,
    sigma_witness,
)

DEFAULT_RETRIES = 25
DEFAULT_HEIGHT = 10
DEFAULT_WITNESS_HEIGHT = 5
DEFAULT_MU_SAMPLES = (Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2))

__all__ = [
    "BoundCheck",
    "BoundsVerdict",
    "Certificate",
    "EquimultiplicityVerdict",
    "GreuelVerdict",
    "MuConstancy",
    "MultiplicityProfile",
    "NonIsolatedAtZero",
    "certificate_search",
    "check_equimultiplicity",
    "check_greuel",
    "check_necessary_bounds",
    "is_mu_constant",
    "lst_gap",
    "mu_at",
    "mu_generic",
    "multiplicity_profile",
]


class NonIsolatedAtZero(ValueError):
    """The special fibre ``f`` has a non-isolated singularity at the origin."""


# -- arc valuations ---------------------------------------------------------------


class _GapProbe:
    """``F_t`` and the ``F_{z_i}`` of a family, ready for repeated arc evaluation."""

    def __init__(self, F: Family) -> None:
        if F.ring.field != QQ:
            raise ValueError("arc valuations need a family over QQ")
        total = F.total
        self.nz = F.ring.nvars
        self.F = F
        self.Ft = total.derivative(PARAMETER)
        self.Fz = partials(total, F.ring.vars)

    def valuations(self, arc: Arc):
        if len(arc.z) != self.nz:
            raise InvalidArc(f"arc has {len(arc.z)} z-components, family has {self.nz} variables")
        vt = substitute_arc(self.Ft, arc).order()
        vz = min(substitute_arc(p, arc).order() for p in self.Fz)
        return vt, vz

    def gap(self, arc: Arc):
        vt, vz = self.valuations(arc)
        return ext_sub(vt, vz)


def lst_gap(F: Family, arc: Arc):
    """``ord_u F_t(gamma) - min_i ord_u F_{z_i}(gamma)`` computed exactly.

    ``UNDEFINED`` when both orders are infinite.
    """
    return _GapProbe(F).gap(arc)


def _refutes(gap) -> bool:
    return gap is not UNDEFINED and gap <= 0


@dataclass
class Certificate:
    kind: str
    citation: str
    explanation: str
    arc: Arc | None = None
    gap: object = None
    stage: str | None = None

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "citation": self.citation,
            "stage": self.stage,
            "arc": self.arc.to_json() if self.arc is not None else None,
            "gap": None if self.gap is None else to_json(self.gap),
            "explanation": self.explanation,
        }


def replay_certificate(F: Family, cert: Certificate):
    """Recompute the gap of a certificate's arc from scratch."""
    total = F.total
    ft = substitute_arc(total.derivative(PARAMETER), cert.arc).order()
    fz = min(substitute_arc(total.derivative(v), cert.arc).order() for v in F.ring.vars)
    return ext_sub(ft, fz)


def _random_point(rng: random.Random, n: int, height: int) -> tuple[int, ...]:
    while True:
        pt = tuple(rng.randint(-height, height) for _ in range(n))
        if any(pt):
            return pt


def _nonzero(rng: random.Random, height: int) -> int:
    while True:
        v = rng.randint(-height, height)
        if v:
            return v


def certificate_search(
    F: Family,
    seed: int | random.Random = 0,
    retries: int = DEFAULT_RETRIES,
    height: int = DEFAULT_HEIGHT,
    witness_height: int = DEFAULT_WITNESS_HEIGHT,
) -> Certificate | None:
    """Look for an arc with gap ``<= 0``, proving the Milnor number is not constant.

    Stages, in order: lines ``(u z0, 0)``; lines ``(u z0, u t0)``; lines
    ``(u z0, u t0)`` with ``z0`` on the singular locus of the tangent cone of
    ``f`` and off the tangent cone of some ``g_k``. Each random stage starts
    from the all-ones direction and then makes ``retries`` seeded draws.
    ``None`` means no certificate was found, which proves nothing.
    """
    if not F.deformations:
        return None
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    probe = _GapProbe(F)
    n = F.ring.nvars
    ones = (1,) * n

    def found(arc: Arc, stage: str, gap, why: str) -> Certificate:
        return Certificate(
            kind="NonMuConstant",
            citation="necessary-bound" if stage != "cone-locus" else "cone-locus-avoids-h",
            explanation=why,
            arc=arc,
            gap=gap,
            stage=stage,
        )

    # (a) lines in the special fibre t = 0
    for attempt in range(retries + 1):
        z0 = ones if attempt == 0 else _random_point(rng, n, height)
        arc = Arc.linear(z0, 0)
        gap = probe.gap(arc)
        if _refutes(gap):
            return found(arc, "line-t0", gap, "ord F_t <= min ord F_z along a line in t = 0")
    # (b) slanted lines
    for attempt in range(retries + 1):
        z0 = ones if attempt == 0 else _random_point(rng, n, height)
        t0 = 1 if attempt == 0 else _nonzero(rng, height)
        arc = Arc.linear(z0, t0)
        gap = probe.gap(arc)
        if _refutes(gap):
            return found(arc, "line", gap, "ord F_t <= min ord F_z along a line through the origin")
    # (c) lines through the singular locus of the tangent cone
    for k, g in F.deformations.items():
        z0 = sigma_witness(F.f, initial_form(g.poly), height=witness_height)
        if z0 is None:
            continue
        for attempt in range(retries + 1):
            t0 = 1 if attempt == 0 else _nonzero(rng, height)
            arc = Arc.linear(z0, t0)
            gap = probe.gap(arc)
            if _refutes(gap):
                return found(
                    arc,
                    "cone-locus",
                    gap,
                    f"line through a point of the cone's singular locus off the tangent cone of g[{k}]",
                )
    return None


# -- necessary multiplicity bounds ---------------------------------------------------


@dataclass
class BoundCheck:
    k: int
    multiplicity: int
    required: int
    passed: bool
    citation: str = "necessary-bound"

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "multiplicity": self.multiplicity,
            "required": self.required,
            "verdict": "PASS" if self.passed else "VIOLATION",
            "citation": self.citation,
        }


@dataclass
class BoundsVerdict:
    m: int
    checks: list[BoundCheck]

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def violations(self) -> list[BoundCheck]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "all_pass": self.all_pass,
            "checks": [c.to_json() for c in self.checks],
        }


def check_necessary_bounds(F: Family) -> BoundsVerdict:
    """``m(g_k) >= m - k + 1`` for every stored ``k``.

    A violation proves the Milnor number is not constant.
    """
    m = F.m
    checks = []
    for k, g in F.deformations.items():
        req = m - k + 1
        checks.append(BoundCheck(k, g.multiplicity, req, g.multiplicity >= req))
    return BoundsVerdict(m, checks)


# -- Milnor numbers along the family -------------------------------------------------


def mu_at(F: Family, t0) -> object:
    """Milnor number of the fibre ``z -> F(z, t0)``."""
    return milnor_number(F.member(t0))


def mu_generic(F: Family, upper_bound=None) -> object:
    """Milnor number of ``F`` over ``QQ(t)``: the value at all but finitely many ``t``.

    The generic value is the least value over all ``t``, so any finite
    ``mu_at(F, t0)`` bounds it; ``mu_at(F, 0)`` is used when no bound is
    given. The bound caps the truncation degree of the standard basis
    computation, which is what keeps rational-function coefficients small.
    """
    if not F.deformations:
        return mu_at(F, 0)
    if upper_bound is None:
        upper_bound = mu_at(F, 0)
    germ = Germ(F.over_parameter_field())
    if is_finite(upper_bound):
        germ.jacobian.colength_bound = upper_bound
    return germ.milnor_number


@dataclass
class MuConstancy:
    constant: bool
    mu0: object
    mu_generic: object
    samples: dict = field(default_factory=dict)
    caveats: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "constant": self.constant,
            "mu_at_0": to_json(self.mu0),
            "mu_generic": to_json(self.mu_generic),
            "samples": {str(k): to_json(v) for k, v in self.samples.items()},
            "caveats": list(self.caveats),
        }


CAVEATS = (
    "constancy is certified at t = 0 and for all but finitely many t; for a polynomial "
    "family the exceptional values cannot accumulate at 0, so this is constancy near t = 0",
    "arcs can only refute constancy; a missing certificate proves nothing",
    "sampled values are shown for corroboration and do not enter the verdict",
)


def is_mu_constant(
    F: Family, samples: Sequence = DEFAULT_MU_SAMPLES, generic: bool = True
) -> MuConstancy:
    """Decide constancy of the Milnor number near ``t = 0``.

    The verdict compares ``mu(F(., 0))`` with the Milnor number over
    ``QQ(t)``; by upper semicontinuity the two agree exactly when the family
    is constant near 0. With ``generic=False`` the verdict falls back to the
    sampled values (weaker; recorded in the caveats).
    """
    mu0 = mu_at(F, 0)
    if not is_finite(mu0):
        raise NonIsolatedAtZero(f"f = {F.f} has a non-isolated singularity at 0")
    sampled = {}
    for s in samples:
        s = Fraction(s)
        try:
            sampled[s] = mu_at(F, s)
        except DoesNotVanishAtOrigin:
            sampled[s] = UNDEFINED
    caveats = CAVEATS
    if generic:
        finite = [v for v in sampled.values() if v is not UNDEFINED and is_finite(v)]
        mg = mu_generic(F, min([mu0, *finite]))
        constant = mg == mu0
    else:
        mg = UNDEFINED
        constant = all(v == mu0 for v in sampled.values())
        caveats = CAVEATS + ("generic computation skipped: verdict from samples only",)
    return MuConstancy(constant, mu0, mg, sampled, caveats)


# -- Greuel's criterion ---------------------------------------------------------------


@dataclass
class GreuelVerdict:
    applicable: bool
    m: int
    sums: list[tuple[int, int, int]]
    passed: list[bool]
    dependency: list | None = None
    dependent_forms: list[str] = field(default_factory=list)
    citation: str = "greuel-criterion"

    @property
    def verdict(self) -> str:
        if not self.applicable:
            return "NotApplicable"
        return "PASS" if all(self.passed) else "VIOLATION"

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "applicable": self.applicable,
            "m": self.m,
            "terms": [
                {"j": j, "nu": nu, "multiplicity": mg, "sum": nu + mg, "holds": ok}
                for (j, nu, mg), ok in zip(self.sums, self.passed)
            ],
            "dependency": None if self.dependency is None else [str(c) for c in self.dependency],
            "dependent_forms": self.dependent_forms,
            "citation": self.citation,
        }


def check_greuel(G: GreuelFamily) -> GreuelVerdict:
    """Greuel's inequality ``nu(lambda_j) + m(g_j) > m(f)`` with its applicability gate.

    The gate requires the initial forms of the ``g_j`` to be linearly
    independent. Forms of different degrees are independent, so the rank test
    runs per degree; the first dependency found is reported.
    """
    m = G.f.multiplicity
    forms = [initial_form(g.poly) for _, g in G.pairs]
    sums = [(j, G.nu(j), g.multiplicity) for j, (_, g) in enumerate(G.pairs, 1)]
    passed = [nu + mg > m for _, nu, mg in sums]
    by_degree: dict[int, list[int]] = {}
    for j, form in enumerate(forms):
        by_degree.setdefault(order(form), []).append(j)
    zero = G.ring.field.zero
    for deg in sorted(by_degree):
        idx = by_degree[deg]
        if len(idx) < 2:
            continue
        monos = sorted({e for j in idx for e in forms[j].terms})
        vectors = [[forms[j].terms.get(e, zero) for e in monos] for j in idx]
        kernel = nullspace(vectors)
        if kernel:
            vec = kernel[0]
            dependency = [zero] * len(forms)
            for pos, j in enumerate(idx):
                dependency[j] = vec[pos]
            involved = [str(forms[j]) for pos, j in enumerate(idx) if vec[pos]]
            return GreuelVerdict(False, m, sums, passed, dependency, involved)
    return GreuelVerdict(True, m, sums, passed)


# -- equimultiplicity -------------------------------------------------------------------


@dataclass
class StrengthenedBound:
    k: int
    multiplicity: int
    required: int
    passed: bool

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "multiplicity": self.multiplicity,
            "required": self.required,
            "verdict": "PASS" if self.passed else "VIOLATION",
            "citation": "strengthened-bound",
        }


@dataclass
class EquimultiplicityVerdict:
    verdict: str
    citation: str | None
    reason: str
    strengthened: list[StrengthenedBound] = field(default_factory=list)
    conditional: bool = False
    confirmed_at: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "citation": self.citation,
            "reason": self.reason,
            "conditional_on_mu_constancy": self.conditional,
            "strengthened_bounds": [b.to_json() for b in self.strengthened],
            "multiplicity_at_samples": {str(k): v for k, v in self.confirmed_at.items()},
        }


def _cone_contains(F: Family, g: Polynomial) -> bool:
    """Whether the cone's singular locus of ``f`` lies in the tangent cone of ``g``."""
    return radical_member(initial_form(g), F.f.cone_singular_ideal)


def check_equimultiplicity(
    F: Family,
    mu_constant: bool | None = None,
    assume_mu_constant: bool = False,
    confirm_samples: Sequence = (Fraction(1), Fraction(2), Fraction(-1, 3)),
) -> EquimultiplicityVerdict:
    """Apply the sufficient conditions for constant multiplicity.

    Only what the cited statements license is asserted: the tangent-cone
    route applies to any family, the locus route only to ``f + t g + t^2 h``.
    Families whose Milnor number is not constant get ``NotApplicable`` unless
    ``assume_mu_constant`` is set, in which case verdicts are conditional.
    """
    if not assume_mu_constant:
        if mu_constant is None:
            mu_constant = is_mu_constant(F, samples=()).constant
        if not mu_constant:
            return EquimultiplicityVerdict(
                "NotApplicable", None, "the Milnor number is not constant along the family"
            )
    if not F.deformations:
        return EquimultiplicityVerdict(
            "Equimultiple", None, "the family does not depend on t", [], assume_mu_constant
        )
    m = F.m
    strengthened = []
    for k, g in F.deformations.items():
        if not _cone_contains(F, g.poly):
            req = m - k + 2
            strengthened.append(StrengthenedBound(k, g.multiplicity, req, g.multiplicity >= req))

    def confirm() -> dict:
        if F.ring.field != QQ:
            return {}
        return {Fraction(s): order(F.member(s)) for s in confirm_samples}

    if cone_has_isolated_singularity(F.f):
        return EquimultiplicityVerdict(
            "Equimultiple",
            "isolated-tangent-cone",
            "the tangent cone of f has an isolated singularity",
            strengthened,
            assume_mu_constant,
            confirm(),
        )
    reasons = ["the tangent cone of f has a non-isolated singularity"]
    support = set(F.support)
    if support and support <= {1, 2} and 2 in support:
        if not _cone_contains(F, F.g(2)):
            return EquimultiplicityVerdict(
                "Equimultiple",
                "cone-locus-avoids-h",
                "the singular locus of the tangent cone of f is not contained in the tangent cone of h",
                strengthened,
                assume_mu_constant,
                confirm(),
            )
        reasons.append("the singular locus of the tangent cone of f lies in the tangent cone of h")
    elif support <= {1, 2}:
        reasons.append("no t^2 coefficient h, so the locus route does not apply")
    else:
        reasons.append(f"support {sorted(support)} is not of the form f + t g + t^2 h")
    return EquimultiplicityVerdict(
        "Inconclusive", None, "; ".join(reasons), strengthened, assume_mu_constant
    )


# -- generic multiplicity ---------------------------------------------------------------


@dataclass
class MultiplicityProfile:
    m: int
    m1: object
    per_k: dict[int, int]
    generic: int
    samples: dict
    verified: bool

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "m1": to_json(self.m1),
            "per_k": {str(k): v for k, v in self.per_k.items()},
            "generic": self.generic,
            "samples": {str(k): v for k, v in self.samples.items()},
            "verified": self.verified,
        }


def _random_rational(rng: random.Random, height: int) -> Fraction:
    while True:
        p = rng.randint(-height, height)
        q = rng.randint(1, height)
        if p:
            return Fraction(p, q)


def multiplicity_profile(
    F: Family, seed: int | random.Random = 0, draws: int = 3, retries: int = DEFAULT_RETRIES,
    height: int = DEFAULT_HEIGHT,
) -> MultiplicityProfile:
    """Multiplicities ``m``, ``m(g_k)``, ``m_1`` and the generic fibre multiplicity.

    The fibre multiplicity ``min(m, m_1)`` is checked by substitution at
    random rational ``t0``; more draws are made if coincidental cancellation
    hides it at the first ones.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    m = F.m
    m1 = F.m1
    generic = min(m, m1)
    samples: dict[Fraction, int] = {}
    verified = False
    for i in range(draws + retries):
        t0 = _random_rational(rng, height)
        samples[t0] = order(F.member(t0))
        if samples[t0] == generic:
            verified = True
        if verified and i + 1 >= draws:
            break
    per_k = {k: g.multiplicity for k, g in F.deformations.items()}
    return MultiplicityProfile(m, m1, per_k, generic, samples, verified)
