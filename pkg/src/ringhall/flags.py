"""Dimension and shift bookkeeping for free flag varieties over R.

A flag type is a sequence of (vertex, k) pairs.  All quantities are integer
formulas in the pair data, the quiver and n; ``free_grassmannian_count`` is the
one brute-force count.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .quiver import Quiver
from .ring import Ring


@dataclass(frozen=True)
class FlagType:
    pairs: tuple  # ((vertex, k), ...)

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple((v, int(k)) for v, k in self.pairs))
        if any(k <= 0 for _, k in self.pairs):
            raise ValueError("flag multiplicities must be positive")

    def __add__(self, other: "FlagType") -> "FlagType":
        return FlagType(self.pairs + other.pairs)

    def check(self, quiver: Quiver):
        for v, _ in self.pairs:
            quiver.index(v)
        return self

    def rank_vector(self, quiver: Quiver) -> tuple:
        """Per-vertex sum of multiplicities: the ranks the flag lives in."""
        out = [0] * len(quiver.vertices)
        for v, k in self.pairs:
            out[quiver.index(v)] += k
        return tuple(out)

    @staticmethod
    def parse(text: str) -> "FlagType":
        """'1:1,2:1' -> ((1,1),(2,1)); vertices that look numeric become ints."""
        pairs = []
        for item in text.split(","):
            item = item.strip()
            if not item:
                continue
            v, _, k = item.partition(":")
            v = int(v) if v.lstrip("-").isdigit() else v
            pairs.append((v, int(k) if k else 1))
        return FlagType(tuple(pairs))

    def __str__(self):
        return ",".join(f"{v}:{k}" for v, k in self.pairs)


def n_vertex(ft: FlagType, i) -> int:
    """N_i = sum_{r<r'} k_r k_r' over pairs both at vertex i."""
    ks = [k for v, k in ft.pairs if v == i]
    return sum(ks[a] * ks[b] for a in range(len(ks)) for b in range(a + 1, len(ks)))


def n_arrow(ft: FlagType, arrow) -> int:
    """N_h = sum over r' < r of k_r' k_r with i_r' = source, i_r = target."""
    src, tgt = arrow
    p = ft.pairs
    return sum(p[a][1] * p[b][1] for a in range(len(p)) for b in range(a + 1, len(p))
               if p[a][0] == src and p[b][0] == tgt)


@dataclass(frozen=True)
class FlagDims:
    flag_dim: int
    bundle_rank: int
    total_dim: int
    perverse_shift: int
    jet_fiber_rank: int


def flag_dims(ft: FlagType, quiver: Quiver, n: int) -> FlagDims:
    """flag_dim = n sum N_i, bundle_rank = n sum N_h, total d = their sum,
    perverse shift d + (n-1) sum N_i; the evaluation-map fiber has rank
    (n-1) sum N_i."""
    ni = sum(n_vertex(ft, i) for i in quiver.vertices)
    nh = sum(n_arrow(ft, h) for h in quiver.arrows)
    d = n * ni + n * nh
    return FlagDims(n * ni, n * nh, d, d + (n - 1) * ni, (n - 1) * ni)


def d1_d2(tdim: Sequence[int], wdim: Sequence[int], quiver: Quiver, n: int) -> tuple:
    """Fiber dimensions of the induction diagram for quotient T and sub W.

    d2 = dim P/U = n sum(t_i^2 + w_i^2)
    d1 = dim G_V/U + n sum_h t_{h'} w_{h''} with dim G_V/U = n sum(v_i^2 - t_i w_i)
    """
    k = len(quiver.vertices)
    if len(tdim) != k or len(wdim) != k:
        raise ValueError(f"rank vectors must have length {k}")
    d2 = n * sum(t * t + w * w for t, w in zip(tdim, wdim))
    d1 = n * sum((t + w) ** 2 - t * w for t, w in zip(tdim, wdim))
    d1 += n * sum(tdim[src] * wdim[tgt] for src, tgt in quiver.arrow_indices)
    return d1, d2


def _cross(tdim, wdim):
    return sum(t * w for t, w in zip(tdim, wdim))


def induction_shift(tdim, wdim, quiver: Quiver, n: int) -> int:
    d1, d2 = d1_d2(tdim, wdim, quiver, n)
    return d1 - d2 + (n - 1) * _cross(tdim, wdim)


def restriction_shift(tdim, wdim, quiver: Quiver, n: int) -> int:
    d1, d2 = d1_d2(tdim, wdim, quiver, n)
    g_mod_p = n * _cross(tdim, wdim)
    return d1 - d2 - 2 * g_mod_p + (n - 1) * _cross(tdim, wdim)


def check_concat_identity(ft1: FlagType, ft2: FlagType, i) -> bool:
    """N_i(ft1 ft2) - N_i(ft1) - N_i(ft2) equals the product of the k-sums at i."""
    lhs = n_vertex(ft1 + ft2, i) - n_vertex(ft1, i) - n_vertex(ft2, i)
    rhs = sum(k for v, k in ft1.pairs if v == i) * sum(k for v, k in ft2.pairs if v == i)
    return lhs == rhs


def degree_defect(ft1: FlagType, ft2: FlagType, quiver: Quiver, n: int) -> int:
    """d(T, ft1) + d(W, ft2) + d1 - d2 - d(V, ft1 ft2); vanishes identically.

    ft1 filters the quotient T and ft2 the subobject W.
    """
    tdim, wdim = ft1.rank_vector(quiver), ft2.rank_vector(quiver)
    d1, d2 = d1_d2(tdim, wdim, quiver, n)
    return (flag_dims(ft1, quiver, n).total_dim + flag_dims(ft2, quiver, n).total_dim
            + d1 - d2 - flag_dims(ft1 + ft2, quiver, n).total_dim)


def random_flag_type(rng: random.Random, quiver: Quiver, max_len: int = 4, max_k: int = 3) -> FlagType:
    m = rng.randint(1, max_len)
    return FlagType(tuple((rng.choice(quiver.vertices), rng.randint(1, max_k)) for _ in range(m)))


def free_grassmannian_count(s: int, l: int, ring: Ring) -> int:
    """Number of free rank-s direct summands of R^l, by explicit enumeration."""
    return len(ring.summand_bases(l, s))


def geometry_table(ft: FlagType, quiver: Quiver, n: int, split: int | None = None) -> list:
    """(name, value) rows for the ``geom`` report.

    ``split`` cuts ft into (ft[:split], ft[split:]) for the T/W quantities;
    by default the cut is in the middle.
    """
    ft.check(quiver)
    dims = flag_dims(ft, quiver, n)
    dims1 = flag_dims(ft, quiver, 1)
    rows = [("n", n), ("flag_type", str(ft))]
    for i in quiver.vertices:
        rows.append((f"N_{i}", n_vertex(ft, i)))
    for h in quiver.arrows:
        rows.append((f"N_{h[0]}->{h[1]}", n_arrow(ft, h)))
    rows += [
        ("flag_dim", dims.flag_dim),
        ("flag_dim_n1", dims1.flag_dim),
        ("jet_scaling_holds", dims.flag_dim == n * dims1.flag_dim),
        ("jet_fiber_rank", dims.jet_fiber_rank),
        ("bundle_rank", dims.bundle_rank),
        ("total_dim", dims.total_dim),
        ("perverse_shift", dims.perverse_shift),
    ]
    cut = len(ft.pairs) // 2 if split is None else split
    ft1, ft2 = FlagType(ft.pairs[:cut]), FlagType(ft.pairs[cut:])
    tdim, wdim = ft1.rank_vector(quiver), ft2.rank_vector(quiver)
    d1, d2 = d1_d2(tdim, wdim, quiver, n)
    rows += [
        ("split_T", str(ft1)),
        ("split_W", str(ft2)),
        ("rank_T", ",".join(map(str, tdim))),
        ("rank_W", ",".join(map(str, wdim))),
        ("d1", d1),
        ("d2", d2),
        ("induction_shift", induction_shift(tdim, wdim, quiver, n)),
        ("restriction_shift", restriction_shift(tdim, wdim, quiver, n)),
        ("concat_identity_holds", all(check_concat_identity(ft1, ft2, i) for i in quiver.vertices)),
        ("degree_defect", degree_defect(ft1, ft2, quiver, n)),
    ]
    return rows
