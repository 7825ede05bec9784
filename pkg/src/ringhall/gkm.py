"""Generalized Kac-Moody relation checks inside the composition subalgebra."""

from __future__ import annotations

from dataclasses import dataclass

from .hall import HallAlgebra, HallElement
from .laurent import LaurentPoly
from .quiver import Quiver


@dataclass(frozen=True)
class BorcherdsCartan:
    """Symmetric Borcherds-Cartan matrix over ``vertices``; charge is all ones."""

    vertices: tuple
    a: tuple  # rows

    def __post_init__(self):
        k = len(self.vertices)
        if len(self.a) != k or any(len(r) != k for r in self.a):
            raise ValueError("matrix must be square over the vertex set")
        for i in range(k):
            d = self.a[i][i]
            if not (d == 2 or (d <= 0 and d % 2 == 0)):
                raise ValueError(f"diagonal entry {d} not in {{2, 0, -2, ...}}")
            for j in range(k):
                if i != j and (self.a[i][j] > 0 or self.a[i][j] != self.a[j][i]):
                    raise ValueError("off-diagonal entries must be symmetric and <= 0")

    def entry(self, i, j) -> int:
        return self.a[self.vertices.index(i)][self.vertices.index(j)]

    @property
    def charge(self) -> tuple:
        return (1,) * len(self.vertices)

    @property
    def real(self) -> tuple:
        return tuple(v for k, v in enumerate(self.vertices) if self.a[k][k] == 2)

    @property
    def imaginary(self) -> tuple:
        return tuple(v for k, v in enumerate(self.vertices) if self.a[k][k] != 2)


def cartan_from_quiver(quiver: Quiver, n: int) -> BorcherdsCartan:
    """a_ij = -(arrows between i and j); a_ii = 2 for n = 1, else 0 (imaginary)."""
    diag = 2 if n == 1 else 0
    rows = []
    for i in quiver.vertices:
        rows.append(tuple(diag if i == j else -(quiver.arrow_count(i, j) + quiver.arrow_count(j, i))
                          for j in quiver.vertices))
    return BorcherdsCartan(quiver.vertices, tuple(rows))


def commutation_check(H: HallAlgebra, i, j) -> bool:
    """S_i S_j == S_j S_i; only defined for distinct vertices with a_ij = 0."""
    if i == j:
        raise ValueError("commutation check needs two distinct vertices")
    A = cartan_from_quiver(H.quiver, H.n)
    if A.entry(i, j) != 0:
        raise ValueError(f"a_{i}{j} = {A.entry(i, j)} != 0: vertices are joined by arrows")
    Si, Sj = H.simple(i), H.simple(j)
    return Si * Sj == Sj * Si


def serre_residual(H: HallAlgebra, i, j, coeff: LaurentPoly) -> HallElement:
    """S_i^2 S_j - coeff S_i S_j S_i + S_j S_i^2 for vertices joined by one arrow."""
    if i == j:
        raise ValueError("Serre residual needs two distinct vertices")
    if H.quiver.arrow_count(i, j) + H.quiver.arrow_count(j, i) != 1:
        raise ValueError(f"vertices {i}, {j} must be joined by exactly one arrow")
    Si, Sj = H.simple(i), H.simple(j)
    c = H.as_coeff(coeff)
    return Si * Si * Sj - (Si * Sj * Si).scale(c) + Sj * Si * Si
