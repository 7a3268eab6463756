"""Local colength at the origin by linear algebra on truncated multiples.

``dim Q[z]/(I + m^N)`` is the number of monomials of degree ``< N`` minus
the rank of the truncations of all ``z^a * g`` with ``deg z^a < N``. The
sequence is non-decreasing in ``N`` and, once two consecutive values agree,
Nakayama's lemma gives ``m^N`` inside the local ideal, so that value is the
local colength. No Gröbner or standard basis is involved.
"""

from __future__ import annotations

import itertools
from typing import Sequence

from .extint import INFINITY
from .linalg import sparse_rank
from .polynomial import Polynomial

DEFAULT_MAX_DEGREE = 40


def monomials_below(nvars: int, degree: int) -> list[tuple]:
    """All exponent vectors of total degree ``< degree``."""
    out = []
    for d in range(degree):
        for combo in itertools.combinations_with_replacement(range(nvars), d):
            e = [0] * nvars
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    return out


def truncated_quotient_dimension(gens: Sequence[Polynomial], degree: int) -> int:
    """``dim Q[z]/(I + m^degree)``."""
    gens = [g for g in gens if g]
    nvars = gens[0].ring.nvars if gens else 0
    monos = monomials_below(nvars, degree)
    rows = []
    for g in gens:
        low = min(sum(e) for e in g.terms)
        if low >= degree:
            continue
        for a in monomials_below(nvars, degree - low):
            row = {}
            for e, c in g.terms.items():
                ne = tuple(x + y for x, y in zip(e, a))
                if sum(ne) < degree:
                    row[ne] = c
            if row:
                rows.append(row)
    return len(monos) - sparse_rank(rows)


def macaulay_colength(gens: Sequence[Polynomial], max_degree: int = DEFAULT_MAX_DEGREE):
    """Local colength at 0, or ``INFINITY`` if it has not stabilised by ``max_degree``."""
    prev = None
    for n in range(1, max_degree + 1):
        d = truncated_quotient_dimension(gens, n)
        if d == prev:
            return d
        prev = d
    return INFINITY
