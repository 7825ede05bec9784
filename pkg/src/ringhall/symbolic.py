"""Recover structure constants as Laurent polynomials in v from several primes."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .hall import HallAlgebra
from .laurent import InterpolationError, LaurentPoly, SqrtQ, interpolate_in_q
from .quiver import FreeReps, Quiver
from .ring import get_ring


@dataclass(frozen=True)
class SymbolicTerm:
    label: str  # rendered representative, identical at every sampled prime
    rep_json: dict
    exponent: int  # twist exponent e of the word
    bracket: LaurentPoly  # coefficient with v^e divided out
    value: LaurentPoly  # v^e * bracket

    @property
    def grade(self):
        return tuple(self.rep_json["dim"])


def interpolate_word(quiver: Quiver, word: Sequence, n: int, primes: Sequence[int],
                     twist: str = "half", degree_bound: int | None = None,
                     budget: int | None = None) -> list:
    """Interpolate every coefficient of S_{w_1} ... S_{w_m} as a polynomial in q.

    The known power v^e of the word is divided out, the remaining rational
    coefficient is fitted as a polynomial in q (even parity), and v^e is put
    back.  Representatives are matched across primes by their rendering,
    so they must not depend on q.
    """
    primes = list(primes)
    if degree_bound is None:
        degree_bound = len(primes) - 2
    samples = {}
    reps_json = {}
    order = []
    exponent = None
    for q in primes:
        ring = get_ring(q, n) if budget is None else get_ring(q, n, budget)
        H = HallAlgebra(FreeReps(quiver, ring), twist)
        e = H.word_twist_exponent(word)
        if twist == "integer":
            e *= 2
        exponent = e
        elem = H.word(word)
        scale = SqrtQ.v_power(q, -e)
        for X, c in elem.sorted_terms():
            label = H.reps.format_rep(X)
            samples.setdefault(label, {})[q] = c * scale
            if label not in reps_json:
                reps_json[label] = H.reps.rep_to_json(X)
                order.append((X.sort_key, label))
    out = []
    # the ring encoding orders 0 < t^{n-1} < ... < t < 1 at every prime, so
    # sort keys from different primes compare consistently
    for _, label in sorted(order):
        pts = [(q, samples[label].get(q, SqrtQ(q))) for q in primes]
        try:
            bracket = interpolate_in_q(pts, "even", degree_bound)
        except InterpolationError as exc:
            raise InterpolationError(f"{label}: {exc}") from None
        value = LaurentPoly.monomial(exponent) * bracket
        out.append(SymbolicTerm(label, reps_json[label], exponent, bracket, value))
    return out
