"""Quivers, free representations over R, and isomorphism classes.

A ``FreeRep`` stores a dimension vector and one matrix per arrow.  Matrices act
on column vectors, so the map of an arrow h: i -> j has shape rank_j x rank_i.
``FreeReps`` binds a quiver to a ring and owns every cache (canonical forms,
iso-class lists, subrepresentation counts); all its results are deterministic.
"""

from __future__ import annotations

import itertools
from collections import Counter, deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .ring import BudgetExceeded, RMatrix, Ring


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple  # (source, target) pairs

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(tuple(a) for a in self.arrows))
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex")
        for s, t in self.arrows:
            if s not in self.vertices or t not in self.vertices:
                raise ValueError(f"arrow ({s}, {t}) uses an unknown vertex")
            if s == t:
                raise ValueError(f"loop at vertex {s}: quivers must be loop-free")

    def index(self, vertex) -> int:
        try:
            return self.vertices.index(vertex)
        except ValueError:
            raise ValueError(f"unknown vertex {vertex!r}") from None

    @property
    def arrow_indices(self):
        """Arrows as (source index, target index)."""
        return tuple((self.index(s), self.index(t)) for s, t in self.arrows)

    def arrow_count(self, i, j) -> int:
        return sum(1 for a in self.arrows if a == (i, j))

    def to_json(self):
        return {"vertices": list(self.vertices), "arrows": [list(a) for a in self.arrows]}

    @staticmethod
    def from_json(obj) -> "Quiver":
        return Quiver(tuple(obj["vertices"]), tuple(tuple(a) for a in obj["arrows"]))


PRESETS = {
    "a2": Quiver((1, 2), ((1, 2),)),
    "a3": Quiver((1, 2, 3), ((1, 2), (2, 3))),
    "two-points": Quiver((1, 2), ()),
}


def euler_form(alpha: Sequence[int], beta: Sequence[int], quiver: Quiver) -> int:
    """<alpha, beta> = sum_i a_i b_i - sum_h a_{source h} b_{target h}."""
    k = len(quiver.vertices)
    if len(alpha) != k or len(beta) != k:
        raise ValueError(f"dimension vectors must have length {k}")
    out = sum(a * b for a, b in zip(alpha, beta))
    for s, t in quiver.arrow_indices:
        out -= alpha[s] * beta[t]
    return out


def add_dims(alpha, beta):
    return tuple(a + b for a, b in zip(alpha, beta))


def sub_dims(alpha, beta):
    return tuple(a - b for a, b in zip(alpha, beta))


def dims_below(alpha):
    """All dimension vectors w with 0 <= w <= alpha, in lexicographic order."""
    return list(itertools.product(*(range(a + 1) for a in alpha)))


@dataclass(frozen=True, order=True)
class FreeRep:
    dim: tuple
    maps: tuple  # one RMatrix per arrow

    @property
    def sort_key(self):
        return (self.dim, tuple(m.entries for m in self.maps))


class FreeReps:
    """Free representations of ``quiver`` over ``ring``.

    >>> from ringhall.ring import Ring
    >>> reps = FreeReps(PRESETS["a2"], Ring(2, 2))
    >>> len(reps.iso_classes((1, 1)))
    3
    """

    def __init__(self, quiver: Quiver, ring: Ring):
        self.quiver = quiver
        self.ring = ring
        self._arrows = quiver.arrow_indices
        self._canon = {}
        self._classes = {}
        self._orbit_size = {}
        self._subquot = {}
        self._gens = {}

    # -- construction ---------------------------------------------------

    def make(self, dim: Sequence[int], maps: Iterable = ()) -> FreeRep:
        """Build a representation, checking map shapes against ``dim``."""
        dim = tuple(dim)
        if len(dim) != len(self.quiver.vertices) or any(d < 0 for d in dim):
            raise ValueError(f"bad dimension vector {dim}")
        maps = tuple(m if isinstance(m, RMatrix) else self.ring.matrix(m, dim[s])
                     for m, (s, _) in zip(maps, self._arrows)) if maps else None
        if maps is None:
            maps = tuple(self.ring.zeros(dim[t], dim[s]) for s, t in self._arrows)
        if len(maps) != len(self._arrows):
            raise ValueError("need one matrix per arrow")
        for m, (s, t) in zip(maps, self._arrows):
            if m.shape != (dim[t], dim[s]):
                raise ValueError(f"map shape {m.shape} does not match ({dim[t]}, {dim[s]})")
        return FreeRep(dim, maps)

    def zero(self, dim=None) -> FreeRep:
        return self.make(dim or (0,) * len(self.quiver.vertices))

    def simple(self, vertex) -> FreeRep:
        i = self.quiver.index(vertex)
        return self.zero(tuple(int(k == i) for k in range(len(self.quiver.vertices))))

    def direct_sum(self, X: FreeRep, Y: FreeRep) -> FreeRep:
        dim = add_dims(X.dim, Y.dim)
        maps = []
        for a, b, (s, t) in zip(X.maps, Y.maps, self._arrows):
            ent = []
            for i in range(dim[t]):
                for j in range(dim[s]):
                    if i < X.dim[t] and j < X.dim[s]:
                        ent.append(a[i, j])
                    elif i >= X.dim[t] and j >= X.dim[s]:
                        ent.append(b[i - X.dim[t], j - X.dim[s]])
                    else:
                        ent.append(0)
            maps.append(RMatrix(dim[t], dim[s], tuple(ent)))
        return FreeRep(dim, tuple(maps))

    # -- group action ---------------------------------------------------

    def group_order(self, dim) -> int:
        out = 1
        for d in dim:
            out *= self.ring.gl_order(d)
        return out

    def act(self, g: Sequence[RMatrix], X: FreeRep, g_inv: Sequence[RMatrix] | None = None) -> FreeRep:
        """x'_h = g_{target} x_h g_{source}^{-1}."""
        ring = self.ring
        if g_inv is None:
            g_inv = [ring.mat_inverse(m) for m in g]
        maps = tuple(ring.mat_mul(ring.mat_mul(g[t], x), g_inv[s])
                     for x, (s, t) in zip(X.maps, self._arrows))
        return FreeRep(X.dim, maps)

    def is_morphism(self, f: Sequence[RMatrix], X: FreeRep, Y: FreeRep) -> bool:
        """f_target x_h = y_h f_source for every arrow."""
        mm = self.ring.mat_mul
        return all(mm(f[t], x) == mm(y, f[s]) for x, y, (s, t) in zip(X.maps, Y.maps, self._arrows))

    def _generators(self, dim):
        if dim not in self._gens:
            gens = []
            for i, d in enumerate(dim):
                for g, gi in self.ring.gl_generators(d):
                    gens.append((i, g, gi))
            self._gens[dim] = gens
        return self._gens[dim]

    def _apply_generator(self, i, g, gi, X):
        mm = self.ring.mat_mul
        maps = list(X.maps)
        for k, (s, t) in enumerate(self._arrows):
            if t == i:
                maps[k] = mm(g, maps[k])
            if s == i:
                maps[k] = mm(maps[k], gi)
        return FreeRep(X.dim, tuple(maps))

    def orbit(self, X: FreeRep) -> set:
        """The G_V-orbit of X by breadth-first search over group generators."""
        self.ring.check_budget(self.group_order(X.dim), f"group G_V for dim {X.dim}")
        gens = self._generators(X.dim)
        seen = {X}
        queue = deque([X])
        while queue:
            Y = queue.popleft()
            for i, g, gi in gens:
                Z = self._apply_generator(i, g, gi, Y)
                if Z not in seen:
                    seen.add(Z)
                    queue.append(Z)
        return seen

    def _orbit_min(self, X):
        orb = self.orbit(X)
        best = min(orb, key=lambda r: r.sort_key)
        size = len(orb)
        for Y in orb:
            self._canon[Y] = best
        self._orbit_size[best] = size
        return best

    def orbit_min_exhaustive(self, X: FreeRep) -> FreeRep:
        """Lexicographically least point of the orbit by running over all of G_V."""
        ring = self.ring
        self.ring.check_budget(self.group_order(X.dim), f"group G_V for dim {X.dim}")
        best = None
        for g in itertools.product(*(list(ring.enumerate_GL(d)) for d in X.dim)):
            Y = self.act(g, X)
            if best is None or Y.sort_key < best.sort_key:
                best = Y
        return best

    # -- canonical forms ------------------------------------------------

    @property
    def single_arrow(self) -> bool:
        return len(self._arrows) == 1

    def canonical_form(self, X: FreeRep) -> FreeRep:
        """Canonical representative of the isomorphism class of X.

        Quivers without arrows are already canonical.  With exactly one arrow
        the class is fixed by the Smith form Diag(1,..,t,..,t^{n-1},..,0);
        otherwise the least point of the orbit is returned.
        """
        if not self._arrows:
            return X
        hit = self._canon.get(X)
        if hit is not None:
            return hit
        if self.single_arrow:
            (s, t), = self._arrows
            vals = smith_valuations(self.ring, X.maps[0])
            out = FreeRep(X.dim, (diagonal_matrix(self.ring, X.dim[t], X.dim[s], vals),))
            self._canon[X] = out
            return out
        return self._orbit_min(X)

    def lex_canonical_form(self, X: FreeRep) -> FreeRep:
        """Orbit-minimum canonical form, regardless of the fast path."""
        if not self._arrows:
            return X
        return min(self.orbit(X), key=lambda r: r.sort_key)

    def is_isomorphic(self, X: FreeRep, Y: FreeRep) -> bool:
        return X.dim == Y.dim and self.canonical_form(X) == self.canonical_form(Y)

    def iso_classes(self, dim) -> list:
        """Canonical representatives of every iso class at ``dim``, sorted."""
        dim = tuple(dim)
        if dim in self._classes:
            return self._classes[dim]
        ring = self.ring
        if not self._arrows:
            out = [self.zero(dim)]
        elif self.single_arrow:
            (s, t), = self._arrows
            k = min(dim[s], dim[t])
            out = []
            for vals in itertools.combinations_with_replacement(range(ring.n + 1), k):
                out.append(FreeRep(dim, (diagonal_matrix(ring, dim[t], dim[s], vals),)))
        else:
            shapes = [(dim[t], dim[s]) for s, t in self._arrows]
            total = ring.size ** sum(r * c for r, c in shapes)
            ring.check_budget(total, f"representation space at {dim}")
            found = set()
            for combo in itertools.product(*(ring.enumerate_matrices(r, c) for r, c in shapes)):
                X = FreeRep(dim, combo)
                C = self._canon.get(X)
                found.add(C if C is not None else self._orbit_min(X))
            out = list(found)
        out.sort(key=lambda r: r.sort_key)
        self._classes[dim] = out
        return out

    # -- automorphisms --------------------------------------------------

    def aut_count(self, X: FreeRep) -> int:
        """|Aut(X)| = |G_V| / |orbit of X|."""
        if not self._arrows:
            return self.group_order(X.dim)
        C = self.canonical_form(X)
        if C not in self._orbit_size:
            self._orbit_size[C] = len(self.orbit(C))
        return self.group_order(X.dim) // self._orbit_size[C]

    def aut_count_exhaustive(self, X: FreeRep) -> int:
        """Count tuples g with g_target x_h = x_h g_source by brute force."""
        ring = self.ring
        ring.check_budget(self.group_order(X.dim), f"group G_V for dim {X.dim}")
        return sum(1 for g in itertools.product(*(list(ring.enumerate_GL(d)) for d in X.dim))
                   if self.is_morphism(g, X, X))

    # -- subrepresentations ---------------------------------------------

    def free_subreps(self, L: FreeRep, w: Sequence[int], canonical: bool = True) -> list:
        """Every x-stable I-graded free direct summand W of rank vector w.

        Returns (sub, quot) pairs with the induced maps; ``canonical`` replaces
        both by their canonical forms.
        """
        w = tuple(w)
        if len(w) != len(L.dim) or any(a < 0 or a > b for a, b in zip(w, L.dim)):
            raise ValueError(f"rank vector {w} is not below {L.dim}")
        ring = self.ring
        bases = [ring.summand_bases(r, s) for r, s in zip(L.dim, w)]
        count = 1
        for b in bases:
            count *= len(b)
        ring.check_budget(count, f"summand tuples of rank {w} in {L.dim}")
        out = []
        for choice in itertools.product(*bases):
            pair = self._restrict(L, w, choice)
            if pair is None:
                continue
            if canonical:
                pair = (self.canonical_form(pair[0]), self.canonical_form(pair[1]))
            out.append(pair)
        return out

    def _restrict(self, L, w, choice):
        ring = self.ring
        mm = ring.mat_mul
        sub_maps, quot_maps = [], []
        for x, (s, t) in zip(L.maps, self._arrows):
            B_s, _, Q_s = choice[s]
            B_t, P_t, Q_t = choice[t]
            image = mm(x, B_s)
            coords = image.select_rows(P_t)
            if mm(B_t, coords) != image:
                return None
            sub_maps.append(coords)
            # quotient: coordinates of x e_q in the basis [B_t | e_{Q_t}], Q-part
            xq = x.select_cols(Q_s)
            quot_maps.append(ring.mat_sub(xq.select_rows(Q_t),
                                          mm(B_t.select_rows(Q_t), xq.select_rows(P_t))))
        quot_dim = tuple(a - b for a, b in zip(L.dim, w))
        return FreeRep(w, tuple(sub_maps)), FreeRep(quot_dim, tuple(quot_maps))

    def subquotient_counts(self, L: FreeRep, w: Sequence[int]) -> Counter:
        """Counter of (quotient class, sub class) over free subreps of rank w.

        The count for (X, Y) is the Hall number F^L_{XY}.
        """
        key = (L, tuple(w))
        if key not in self._subquot:
            self._subquot[key] = Counter((quot, sub) for sub, quot in self.free_subreps(L, w))
        return self._subquot[key]

    # -- formatting -----------------------------------------------------

    def format_rep(self, X: FreeRep) -> str:
        dim = ",".join(str(d) for d in X.dim)
        if not X.maps:
            return f"({dim})"
        maps = "; ".join(format_matrix(self.ring, m) for m in X.maps)
        return f"({dim}) {maps}"

    def rep_to_json(self, X: FreeRep):
        return {"dim": list(X.dim),
                "maps": [[[list(self.ring.coeffs(x)) for x in m.row(i)] for i in range(m.rows)]
                         for m in X.maps]}

    def rep_from_json(self, obj) -> FreeRep:
        dim = tuple(obj["dim"])
        maps = []
        for rows, (s, t) in zip(obj["maps"], self._arrows):
            maps.append(self.ring.matrix(rows, dim[s]) if rows else self.ring.zeros(dim[t], dim[s]))
        return self.make(dim, maps)


def format_matrix(ring: Ring, M: RMatrix) -> str:
    if M.rows == 0 or M.cols == 0:
        return f"0[{M.rows}x{M.cols}]"
    return "[" + ",".join("[" + ",".join(ring.format(x) for x in M.row(i)) + "]"
                          for i in range(M.rows)) + "]"


def smith_valuations(ring: Ring, M: RMatrix) -> tuple:
    """Sorted t-adic valuations of the Smith form diagonal of M (n means 0).

    Repeatedly moves an entry of least valuation to the pivot and clears its
    row and column; this works because every entry is divisible by it.
    """
    a = [list(M.row(i)) for i in range(M.rows)]
    rows, cols = M.rows, M.cols
    val, mul, sub = ring._val, ring._mul, ring._sub
    out = []
    for k in range(min(rows, cols)):
        best = None
        for i in range(k, rows):
            for j in range(k, cols):
                if best is None or val[a[i][j]] < val[a[best[0]][best[1]]]:
                    best = (i, j)
        i, j = best
        v = val[a[i][j]]
        out.append(v)
        if v == ring.n:
            out.extend([ring.n] * (min(rows, cols) - k - 1))
            break
        a[k], a[i] = a[i], a[k]
        for row in a:
            row[k], row[j] = row[j], row[k]
        p = a[k][k]
        # p = u t^v; an entry e = c t^v satisfies e = p * (c u^{-1}) where c = e / t^v
        for i2 in range(k + 1, rows):
            f = _divide(ring, a[i2][k], p)
            if f:
                a[i2] = [sub[x][mul[f][y]] for x, y in zip(a[i2], a[k])]
        for j2 in range(k + 1, cols):
            f = _divide(ring, a[k][j2], p)
            if f:
                for row in a:
                    row[j2] = sub[row[j2]][mul[f][row[k]]]
    return tuple(sorted(out))


def _divide(ring: Ring, e: int, p: int) -> int:
    """Some f with f * p == e, given val(e) >= val(p)."""
    v = ring.valuation(p)
    if ring.valuation(e) < v:
        raise ArithmeticError("not divisible")
    if e == 0:
        return 0
    pc, ec = ring.coeffs(p), ring.coeffs(e)
    p_shift = ring.from_coeffs(pc[v:])
    e_shift = ring.from_coeffs(ec[v:])
    return ring.mul(e_shift, ring.inverse(p_shift))


def diagonal_matrix(ring: Ring, rows: int, cols: int, valuations: Sequence[int]) -> RMatrix:
    ent = [0] * (rows * cols)
    for k, v in enumerate(valuations):
        ent[k * cols + k] = ring.t_power(v)
    return RMatrix(rows, cols, tuple(ent))


def resolve_vertices(quiver: Quiver, word: Iterable) -> list:
    """Map user-supplied vertex tokens (strings or ints) onto quiver vertices."""
    out = []
    for w in word:
        if w in quiver.vertices:
            out.append(w)
            continue
        match = [v for v in quiver.vertices if str(v) == str(w)]
        if not match:
            raise ValueError(f"unknown vertex {w!r}")
        out.append(match[0])
    return out


__all__ = [
    "BudgetExceeded", "FreeRep", "FreeReps", "PRESETS", "Quiver", "add_dims",
    "dims_below", "euler_form", "smith_valuations",
]
