"""Hall algebra of free representations: products, coproduct and its checks.

Conventions (fixed across the package):

* F^L_{XY} counts free subrepresentations W of L with W ~ Y and L/W ~ X.
* X o Y = sum_L F^L_{XY} L; the twisted product is X.Y = v^{n<|X|,|Y|>} X o Y.
* Delta(E) = sum v^{n<|M|,|N|>} F^E_{MN} a_M a_N / a_E  M (x) N, with N the
  subobject and M the quotient.
* (A (x) B)(C (x) D) = v^{n(<|B|,|C|> + <|C|,|B|>)} AC (x) BD.

Under the "integer" twist every power v^e above becomes v^{2e} = q^e.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .laurent import LaurentPoly, SqrtQ, eval_at_prime
from .quiver import FreeRep, FreeReps, add_dims, dims_below, euler_form

TWISTS = ("half", "integer")


class _Combination:
    """Finite linear combination of hashable keys; zero coefficients dropped."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms: Mapping | None = None):
        self.algebra = algebra
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    def _new(self, terms):
        return type(self)(self.algebra, terms)

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return self._new(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        return self._new({k: c * x for k, x in self.terms.items()})

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def support(self) -> set:
        return set(self.terms)

    def coeff(self, key):
        return self.terms.get(key, 0)


class HallElement(_Combination):
    """Element of the Hall algebra: canonical FreeRep -> coefficient."""

    def __mul__(self, other):
        if isinstance(other, HallElement):
            return self.algebra.multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key)

    def grades(self) -> set:
        return {X.dim for X in self.terms}


class TensorElement(_Combination):
    """Element of H (x) H: (left rep, right rep) -> coefficient."""

    def __mul__(self, other):
        if isinstance(other, TensorElement):
            return self.algebra.tensor_multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0][0].sort_key, kv[0][1].sort_key))


@dataclass
class DualFunction:
    """A function on the iso classes of one grade (finitely supported)."""

    grade: tuple
    values: dict = field(default_factory=dict)

    def __call__(self, X: FreeRep):
        return self.values.get(X, 0)

    def __eq__(self, other):
        if not isinstance(other, DualFunction):
            return NotImplemented
        strip = lambda d: {k: v for k, v in d.items() if v}
        return self.grade == other.grade and strip(self.values) == strip(other.values)


@dataclass
class HomomorphismReport:
    homomorphism: bool
    lhs_support: set
    rhs_support: set
    only_lhs: set
    only_rhs: set
    lhs: TensorElement
    rhs: TensorElement

    @property
    def supports_equal(self) -> bool:
        return not self.only_lhs and not self.only_rhs


class HallAlgebra:
    """Twisted Hall algebra of Rep^f_R(quiver) at a fixed prime q.

    >>> from ringhall.ring import Ring
    >>> from ringhall.quiver import PRESETS, FreeReps
    >>> H = HallAlgebra(FreeReps(PRESETS["a2"], Ring(2, 2)))
    >>> S1 = H.simple(1)
    >>> [str(c) for c in (S1 * S1).terms.values()]
    ['12']
    """

    def __init__(self, reps: FreeReps, twist: str = "half"):
        if twist not in TWISTS:
            raise ValueError(f"twist must be one of {TWISTS}, got {twist!r}")
        self.reps = reps
        self.quiver = reps.quiver
        self.ring = reps.ring
        self.q, self.n = reps.ring.q, reps.ring.n
        self.twist = twist
        self._circ = {}
        self._delta = {}

    def _check(self, other: "HallAlgebra"):
        if (other.quiver, other.ring, other.twist) != (self.quiver, self.ring, self.twist):
            raise ValueError("elements belong to different Hall algebras")

    def v_power(self, e: int) -> SqrtQ:
        """v^e under the active twist (v^{2e} = q^e for the integer twist)."""
        return SqrtQ.v_power(self.q, e if self.twist == "half" else 2 * e)

    def euler(self, alpha, beta) -> int:
        return euler_form(alpha, beta, self.quiver)

    def as_coeff(self, c) -> SqrtQ:
        if isinstance(c, LaurentPoly):
            return eval_at_prime(c, self.q)
        if isinstance(c, SqrtQ):
            return c
        return SqrtQ(self.q, c)

    # -- elements -------------------------------------------------------

    def element(self, terms: Mapping | None = None) -> HallElement:
        canon = {}
        for X, c in (terms or {}).items():
            X = self.reps.canonical_form(X)
            canon[X] = canon.get(X, SqrtQ(self.q)) + self.as_coeff(c)
        return HallElement(self, canon)

    def basis(self, X: FreeRep) -> HallElement:
        return self.element({X: 1})

    def unit(self) -> HallElement:
        return self.basis(self.reps.zero())

    def simple(self, vertex) -> HallElement:
        return self.basis(self.reps.simple(vertex))

    def zero_element(self) -> HallElement:
        return HallElement(self, {})

    # -- structure constants -------------------------------------------

    def hall_number(self, L: FreeRep, X: FreeRep, Y: FreeRep) -> int:
        """F^L_{XY}: subobjects of L isomorphic to Y with quotient isomorphic to X."""
        if add_dims(X.dim, Y.dim) != L.dim:
            return 0
        reps = self.reps
        L, X, Y = reps.canonical_form(L), reps.canonical_form(X), reps.canonical_form(Y)
        return reps.subquotient_counts(L, Y.dim)[(X, Y)]

    def circ(self, X: FreeRep, Y: FreeRep) -> dict:
        """Untwisted product X o Y as {L: F^L_{XY}}."""
        reps = self.reps
        X, Y = reps.canonical_form(X), reps.canonical_form(Y)
        key = (X, Y)
        if key not in self._circ:
            out = {}
            for L in reps.iso_classes(add_dims(X.dim, Y.dim)):
                c = reps.subquotient_counts(L, Y.dim)[(X, Y)]
                if c:
                    out[L] = c
            self._circ[key] = out
        return self._circ[key]

    def circ_product(self, X: FreeRep, Y: FreeRep) -> HallElement:
        return HallElement(self, {L: SqrtQ(self.q, c) for L, c in self.circ(X, Y).items()})

    def multiply(self, a: HallElement, b: HallElement) -> HallElement:
        self._check(a.algebra)
        self._check(b.algebra)
        out = {}
        for X, cx in a.terms.items():
            for Y, cy in b.terms.items():
                c = cx * cy * self.v_power(self.n * self.euler(X.dim, Y.dim))
                for L, f in self.circ(X, Y).items():
                    term = c * f
                    out[L] = out[L] + term if L in out else term
        return HallElement(self, out)

    twisted_product = multiply

    def word(self, vertices: Iterable) -> HallElement:
        """S_{i_1} . S_{i_2} ... S_{i_m}; the empty word is the unit."""
        out = self.unit()
        for v in vertices:
            out = out * self.simple(v)
        return out

    def composition_span(self, words: Iterable[Sequence]) -> list:
        return [self.word(w) for w in words]

    def word_twist_exponent(self, vertices: Sequence) -> int:
        """Total v-exponent n sum_{k<l} <e_{i_k}, e_{i_l}> of a word of simples."""
        dims = [self.reps.simple(v).dim for v in vertices]
        return self.n * sum(self.euler(dims[k], dims[l])
                            for k in range(len(dims)) for l in range(k + 1, len(dims)))

    # -- coproduct ------------------------------------------------------

    def delta_basis(self, E: FreeRep) -> TensorElement:
        reps = self.reps
        E = reps.canonical_form(E)
        if E not in self._delta:
            a_E = reps.aut_count(E)
            out = {}
            for w in dims_below(E.dim):
                for (M, N), f in reps.subquotient_counts(E, w).items():
                    c = self.v_power(self.n * self.euler(M.dim, N.dim))
                    c = c * Fraction(f * reps.aut_count(M) * reps.aut_count(N), a_E)
                    out[(M, N)] = c
            self._delta[E] = TensorElement(self, out)
        return self._delta[E]

    def delta(self, x) -> TensorElement:
        if isinstance(x, FreeRep):
            return self.delta_basis(x)
        self._check(x.algebra)
        out = TensorElement(self, {})
        for E, c in x.terms.items():
            out = out + self.delta_basis(E).scale(c)
        return out

    def tensor(self, a: HallElement, b: HallElement) -> TensorElement:
        return TensorElement(self, {(X, Y): cx * cy for X, cx in a.terms.items()
                                    for Y, cy in b.terms.items()})

    def tensor_multiply(self, u: TensorElement, w: TensorElement) -> TensorElement:
        self._check(u.algebra)
        self._check(w.algebra)
        out = {}
        for (A, B), c1 in u.terms.items():
            for (C, D), c2 in w.terms.items():
                e = self.n * (self.euler(B.dim, C.dim) + self.euler(C.dim, B.dim))
                c = c1 * c2 * self.v_power(e)
                left = self.multiply(self.basis(A), self.basis(C))
                right = self.multiply(self.basis(B), self.basis(D))
                for X, cx in left.terms.items():
                    for Y, cy in right.terms.items():
                        term = c * cx * cy
                        out[(X, Y)] = out[(X, Y)] + term if (X, Y) in out else term
        return TensorElement(self, out)

    tensor_twisted_product = tensor_multiply

    def check_delta_homomorphism(self, x, y) -> HomomorphismReport:
        """Compare Delta(x y) with Delta(x) Delta(y)."""
        x = self.basis(x) if isinstance(x, FreeRep) else x
        y = self.basis(y) if isinstance(y, FreeRep) else y
        lhs = self.delta(x * y)
        rhs = self.delta(x) * self.delta(y)
        ls, rs = lhs.support(), rhs.support()
        return HomomorphismReport(lhs == rhs, ls, rs, ls - rs, rs - ls, lhs, rhs)

    # -- dual Hall algebra ---------------------------------------------

    def delta_function(self, M: FreeRep) -> DualFunction:
        """Characteristic function of the iso class of M."""
        M = self.reps.canonical_form(M)
        return DualFunction(M.dim, {M: 1})

    def dual_product(self, f1: DualFunction, f2: DualFunction) -> DualFunction:
        """(f1 f2)(E) = sum over free N in E of f1(E/N) f2(N)."""
        reps = self.reps
        grade = add_dims(f1.grade, f2.grade)
        values = {}
        for E in reps.iso_classes(grade):
            total = 0
            for (quot, sub), c in reps.subquotient_counts(E, f2.grade).items():
                total += f1(quot) * f2(sub) * c
            if total:
                values[E] = total
        return DualFunction(grade, values)


def conflation_count(reps: FreeReps, L: FreeRep, X: FreeRep, Y: FreeRep) -> int:
    """|W^L_{XY}|: pairs (f: Y >-> L, g: L ->> X) forming a conflation.

    Brute force over all morphisms, independent of the echelon machinery: f
    must be split injective at every vertex (full column rank mod t), g split
    surjective, and g f = 0.  Ranks then force im f = ker g.
    """
    ring = reps.ring
    if add_dims(X.dim, Y.dim) != L.dim:
        return 0

    def homs(A, B, full_rank):
        shapes = [(B.dim[i], A.dim[i]) for i in range(len(A.dim))]
        ring.check_budget(ring.size ** sum(r * c for r, c in shapes), "morphism search")
        out = []
        for f in itertools.product(*(ring.enumerate_matrices(r, c) for r, c in shapes)):
            if all(ring.rank_mod_t(m) == full_rank(m) for m in f) and reps.is_morphism(f, A, B):
                out.append(f)
        return out

    infl = homs(Y, L, lambda m: m.cols)
    defl = homs(L, X, lambda m: m.rows)
    mm = ring.mat_mul
    count = 0
    for f in infl:
        for g in defl:
            if all(not any(mm(gi, fi).entries) for fi, gi in zip(f, g)):
                count += 1
    return count
