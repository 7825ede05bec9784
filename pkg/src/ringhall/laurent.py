"""Exact coefficients: Laurent polynomials in v and numbers in Q[v]/(v^2 - q).

``LaurentPoly`` is the symbolic side (v an indeterminate, v^2 standing for q).
``SqrtQ`` is the numeric side at one fixed prime q: a + b v with rational a, b.
``interpolate_in_q`` reconstructs the symbolic coefficient from numeric
samples at several primes, validating on a held-out prime.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .ring import is_prime


class InterpolationError(ValueError):
    """Samples are not fitted by a polynomial in q of the requested degree."""


class LaurentPoly:
    """Finitely supported map exponent -> nonzero Fraction."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, object] | None = None):
        clean = {}
        for e, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[int(e)] = c
        self.terms = dict(sorted(clean.items(), reverse=True))

    @classmethod
    def monomial(cls, exp: int, coeff=1) -> "LaurentPoly":
        return cls({exp: coeff})

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def quantum_int(cls, m: int) -> "LaurentPoly":
        """[m] = v^{m-1} + v^{m-3} + ... + v^{1-m}."""
        return cls({m - 1 - 2 * k: 1 for k in range(m)}) if m > 0 else cls()

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials have inverses")
            (e, c), = self.terms.items()
            return LaurentPoly({e * k: Fraction(c) ** k})
        out = LaurentPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        return format_laurent(self)

    def parity(self):
        """'even', 'odd', 'mixed' or None for the zero polynomial."""
        kinds = {e % 2 for e in self.terms}
        if not kinds:
            return None
        if len(kinds) == 2:
            return "mixed"
        return "even" if 0 in kinds else "odd"


def format_laurent(f: LaurentPoly) -> str:
    """Render terms by decreasing exponent, e.g. 'v^4 + v^2', '1/2*v^-1 - 3'."""
    if not f.terms:
        return "0"
    parts = []
    for k, (e, c) in enumerate(f.terms.items()):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = "" if e == 0 else ("v" if e == 1 else f"v^{e}")
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if k == 0:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


_TERM = re.compile(r"^(?:(\d+(?:/\d+)?)\*?)?(v(?:\^(-?\d+))?)?$")


def parse_laurent(text: str) -> LaurentPoly:
    """Inverse of ``format_laurent``; also accepts v^{-1} style braces."""
    s = text.replace(" ", "").replace("{", "").replace("}", "")
    if not s:
        raise ValueError("empty Laurent polynomial")
    # exponent signs are protected so that only term signs split
    tokens = [t for t in re.split(r"(?=[+-])", s.replace("^-", "^~")) if t]
    out = LaurentPoly()
    for tok in tokens:
        tok = tok.replace("^~", "^-")
        sign = -1 if tok.startswith("-") else 1
        tok = tok.lstrip("+-")
        m = _TERM.match(tok)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise ValueError(f"cannot parse term {tok!r} in {text!r}")
        coeff = Fraction(m.group(1)) if m.group(1) else Fraction(1)
        if m.group(2) is None:
            exp = 0
        else:
            exp = int(m.group(3)) if m.group(3) else 1
        out = out + LaurentPoly.monomial(exp, sign * coeff)
    return out


@dataclass(frozen=True)
class SqrtQ:
    """a + b*v in Q[v]/(v^2 - q) for a fixed prime q."""

    q: int
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    @classmethod
    def v_power(cls, q: int, e: int) -> "SqrtQ":
        """v^e; odd powers carry one factor of v."""
        half, odd = divmod(e, 2)
        scale = Fraction(q) ** half
        return cls(q, 0, scale) if odd else cls(q, scale, 0)

    def _coerce(self, other):
        if isinstance(other, SqrtQ):
            if other.q != self.q:
                raise ValueError(f"mixed q: {self.q} and {other.q}")
            return other
        if isinstance(other, (int, Fraction)):
            return SqrtQ(self.q, other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return SqrtQ(self.q, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return SqrtQ(self.q, -self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return SqrtQ(self.q, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return SqrtQ(self.q, self.a * o.a + self.q * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        norm = o.a * o.a - self.q * o.b * o.b
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q[v]/(v^2-q)")
        conj = SqrtQ(self.q, o.a / norm, -o.b / norm)
        return self * conj

    def __bool__(self):
        return bool(self.a or self.b)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, SqrtQ):
            return (self.q, self.a, self.b) == (other.q, other.a, other.b)
        return NotImplemented

    def __hash__(self):
        return hash((self.q, self.a, self.b))

    def __str__(self):
        if not self.b:
            return str(self.a)
        bpart = "v" if self.b == 1 else ("-v" if self.b == -1 else f"{self.b}*v")
        if not self.a:
            return bpart
        return f"{self.a} + {bpart}" if self.b > 0 else f"{self.a} - {bpart.lstrip('-')}"

    def to_json(self):
        return {"a": str(self.a), "b": str(self.b)}


def eval_at_prime(f: LaurentPoly, q: int) -> SqrtQ:
    """Substitute v^2 -> q."""
    if not is_prime(q):
        raise ValueError(f"q must be prime, got {q}")
    out = SqrtQ(q)
    for e, c in f.terms.items():
        out = out + SqrtQ.v_power(q, e) * c
    return out


def _q_valuation(x: Fraction, q: int) -> int:
    """Exponent of q in the denominator of x (0 if none)."""
    d, k = x.denominator, 0
    while d % q == 0:
        d //= q
        k += 1
    return k


def _lagrange(points: Sequence[tuple]) -> list:
    """Coefficients (ascending) of the polynomial through ``points``."""
    m = len(points)
    coeffs = [Fraction(0)] * m
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        for k, c in enumerate(basis):
            coeffs[k] += yi * c / denom
    return coeffs


def interpolate_in_q(samples: Sequence[tuple], parity: str, degree_bound: int,
                     shift: int | None = None) -> LaurentPoly:
    """Fit c(q) as a Laurent polynomial in v from samples (q, SqrtQ).

    For ``parity='even'`` the samples are a(q) with b = 0 and the result only
    has even exponents; for 'odd' the samples are b(q) v.  ``shift`` multiplies
    the samples by q^shift before fitting a polynomial of degree <=
    ``degree_bound``; by default it is the largest power of q found in any
    sample denominator, so that v^{-2} style terms can be recovered.  The last
    sample is held out and must match the fit.
    """
    if parity not in ("even", "odd"):
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
    if len(samples) < degree_bound + 2:
        raise ValueError(f"need at least {degree_bound + 2} samples for degree {degree_bound}")
    values = []
    for q, x in samples:
        main, cross = (x.a, x.b) if parity == "even" else (x.b, x.a)
        if cross:
            raise InterpolationError(f"sample at q={q} has a nonzero {'odd' if parity == 'even' else 'even'} part")
        values.append((q, main))
    if shift is None:
        shift = max(_q_valuation(y, q) for q, y in values)
    scaled = [(Fraction(q), y * Fraction(q) ** shift) for q, y in values]
    fit, held = scaled[:-1], scaled[-1]
    coeffs = _lagrange(fit)
    if any(coeffs[degree_bound + 1:]):
        raise InterpolationError(f"samples need degree above {degree_bound}")
    pred = sum(c * held[0] ** k for k, c in enumerate(coeffs))
    if pred != held[1]:
        raise InterpolationError(f"held-out q={held[0]} gives {held[1]}, fit predicts {pred}")
    offset = 1 if parity == "odd" else 0
    return LaurentPoly({2 * (k - shift) + offset: c for k, c in enumerate(coeffs)})
