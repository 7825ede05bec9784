"""Exact arithmetic over R = F_q[t]/(t^n) and matrices with entries in R.

Elements are stored as integer codes: the coefficient sequence
(c_0, ..., c_{n-1}) of c_0 + c_1 t + ... + c_{n-1} t^{n-1} read as a base-q
number with c_0 most significant.  Integer order on codes is therefore the
lexicographic order on coefficient sequences, which fixes every enumeration
order downstream.  ``RingElem`` wraps a code together with its ring for the
operator-based public API; the hot paths work on bare codes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

DEFAULT_BUDGET = 10**7


class NotInvertible(ArithmeticError):
    """Raised when inverting a non-unit element or a singular matrix."""


class BudgetExceeded(RuntimeError):
    """Raised when an exhaustive enumeration would exceed the configured cap."""


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    return all(q % d for d in range(2, int(q**0.5) + 1))


@dataclass(frozen=True, order=True)
class RMatrix:
    """A rows x cols matrix over R, entries row-major as element codes."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    @property
    def shape(self):
        return (self.rows, self.cols)

    def row(self, i):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j):
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self):
        return RMatrix(self.cols, self.rows,
                       tuple(self.entries[i * self.cols + j]
                             for j in range(self.cols) for i in range(self.rows)))

    def select_rows(self, idx):
        return RMatrix(len(idx), self.cols,
                       tuple(x for i in idx for x in self.row(i)))

    def select_cols(self, idx):
        return RMatrix(self.rows, len(idx),
                       tuple(self.entries[i * self.cols + j]
                             for i in range(self.rows) for j in idx))

    @staticmethod
    def from_rows(rows: Sequence[Sequence[int]], cols: int | None = None) -> "RMatrix":
        rows = [tuple(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cols must be given for a matrix with no rows")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return RMatrix(len(rows), cols, tuple(x for r in rows for x in r))


class Ring:
    """The finite local ring F_q[t]/(t^n), q prime.

    >>> R = Ring(2, 2)
    >>> R.format(R.mul(R.t, R.t))
    '0'
    """

    def __init__(self, q: int, n: int, budget: int = DEFAULT_BUDGET):
        if not isinstance(q, int) or not is_prime(q):
            raise ValueError(f"q must be prime, got {q!r}")
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"n must be a positive integer, got {n!r}")
        if budget <= 0:
            raise ValueError("budget must be positive")
        self.q = q
        self.n = n
        self.budget = budget
        self.size = q**n
        self.zero = 0
        self.one = self.from_coeffs([1])
        self.t = self.from_coeffs([0, 1]) if n > 1 else 0
        self._coeffs = [self._decode(c) for c in range(self.size)]
        size = self.size
        self._add = [[self._encode([(x + y) % q for x, y in zip(self._coeffs[a], self._coeffs[b])])
                      for b in range(size)] for a in range(size)]
        self._neg = [self._encode([(-x) % q for x in self._coeffs[a]]) for a in range(size)]
        self._sub = [[self._add[a][self._neg[b]] for b in range(size)] for a in range(size)]
        self._mul = [[self._mul_coeffs(a, b) for b in range(size)] for a in range(size)]
        self._unit = [self._coeffs[a][0] != 0 for a in range(size)]
        self._inv = [self._lift_inverse(a) if self._unit[a] else None for a in range(size)]
        self._val = [self._valuation(a) for a in range(size)]
        self._t_pow = [self.from_coeffs([0] * k + [1]) for k in range(n)] + [0]

    @property
    def params(self):
        return (self.q, self.n)

    def __repr__(self):
        return f"Ring(q={self.q}, n={self.n})"

    def __eq__(self, other):
        return isinstance(other, Ring) and self.params == other.params

    def __hash__(self):
        return hash(self.params)

    # -- encoding -------------------------------------------------------

    def _encode(self, coeffs):
        code = 0
        for c in coeffs:
            code = code * self.q + c
        return code

    def _decode(self, code):
        out = []
        for _ in range(self.n):
            code, c = divmod(code, self.q)
            out.append(c)
        return tuple(reversed(out))

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        coeffs = list(coeffs)[:self.n]
        coeffs += [0] * (self.n - len(coeffs))
        return self._encode([c % self.q for c in coeffs])

    def coeffs(self, a: int) -> tuple:
        return self._coeffs[a]

    def elem(self, coeffs: Sequence[int]) -> "RingElem":
        return RingElem(self, self.from_coeffs(coeffs))

    def t_power(self, k: int) -> int:
        """Code of t^k (zero once k >= n)."""
        return self._t_pow[min(k, self.n)]

    # -- scalar arithmetic ---------------------------------------------

    def _mul_coeffs(self, a, b):
        ca, cb = self._coeffs[a], self._coeffs[b]
        out = [0] * self.n
        for i, x in enumerate(ca):
            if x:
                for j in range(self.n - i):
                    out[i + j] += x * cb[j]
        return self._encode([c % self.q for c in out])

    def _lift_inverse(self, a):
        # Newton iteration x <- x(2 - ax) doubles the t-adic precision each step.
        x = self.from_coeffs([pow(self._coeffs[a][0], -1, self.q)])
        two = self.from_coeffs([2])
        prec = 1
        while prec < self.n:
            x = self._mul[x][self._sub[two][self._mul[a][x]]]
            prec *= 2
        return x

    def _valuation(self, a):
        for k, c in enumerate(self._coeffs[a]):
            if c:
                return k
        return self.n

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._sub[a][b]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def is_unit(self, a: int) -> bool:
        return self._unit[a]

    def valuation(self, a: int) -> int:
        """t-adic valuation; n for the zero element."""
        return self._val[a]

    def inverse(self, a: int) -> int:
        inv = self._inv[a]
        if inv is None:
            raise NotInvertible(f"{self.format(a)} is not invertible in {self!r}")
        return inv

    def inverse_exhaustive(self, a: int) -> int:
        """Inverse by scanning all of R; the independent check on ``inverse``."""
        for b in range(self.size):
            if self._mul[a][b] == self.one:
                return b
        raise NotInvertible(f"{self.format(a)} is not invertible in {self!r}")

    def elements(self) -> range:
        return range(self.size)

    def units(self) -> list:
        return [a for a in range(self.size) if self._unit[a]]

    def format(self, a: int) -> str:
        terms = []
        for k, c in enumerate(self._coeffs[a]):
            if not c:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}{mono}")
        return "+".join(terms) if terms else "0"

    def parse(self, text: str) -> int:
        """Inverse of ``format``: accepts e.g. '1+t', '2t^2', 't', '0'."""
        text = text.replace(" ", "")
        coeffs = [0] * self.n
        if text in ("", "0"):
            return 0
        for term in text.split("+"):
            if "t" in term:
                c, _, rest = term.partition("t")
                k = int(rest[1:]) if rest.startswith("^") else 1
                if rest and not rest.startswith("^"):
                    raise ValueError(f"cannot parse ring element {text!r}")
                c = int(c) if c else 1
            else:
                c, k = int(term), 0
            if k < self.n:
                coeffs[k] += c
        return self.from_coeffs(coeffs)

    # -- matrices -------------------------------------------------------

    def zeros(self, rows: int, cols: int) -> RMatrix:
        return RMatrix(rows, cols, (0,) * (rows * cols))

    def identity(self, r: int) -> RMatrix:
        one = self.one
        return RMatrix(r, r, tuple(one if i == j else 0 for i in range(r) for j in range(r)))

    def matrix(self, rows, cols=None) -> RMatrix:
        """Build a matrix from nested lists of codes or coefficient lists."""
        conv = [[self.from_coeffs(x) if isinstance(x, (list, tuple)) else x for x in row]
                for row in rows]
        return RMatrix.from_rows(conv, cols)

    def mat_mul(self, A: RMatrix, B: RMatrix) -> RMatrix:
        if A.cols != B.rows:
            raise ValueError(f"cannot multiply {A.shape} by {B.shape}")
        mul, add = self._mul, self._add
        ae, be, m, k = A.entries, B.entries, B.cols, A.cols
        out = []
        for i in range(A.rows):
            arow = ae[i * k:(i + 1) * k]
            for j in range(m):
                acc = 0
                for l, x in enumerate(arow):
                    if x:
                        acc = add[acc][mul[x][be[l * m + j]]]
                out.append(acc)
        return RMatrix(A.rows, m, tuple(out))

    def mat_add(self, A: RMatrix, B: RMatrix) -> RMatrix:
        if A.shape != B.shape:
            raise ValueError(f"shape mismatch {A.shape} vs {B.shape}")
        add = self._add
        return RMatrix(A.rows, A.cols, tuple(add[x][y] for x, y in zip(A.entries, B.entries)))

    def mat_sub(self, A: RMatrix, B: RMatrix) -> RMatrix:
        if A.shape != B.shape:
            raise ValueError(f"shape mismatch {A.shape} vs {B.shape}")
        sub = self._sub
        return RMatrix(A.rows, A.cols, tuple(sub[x][y] for x, y in zip(A.entries, B.entries)))

    def mat_inverse(self, M: RMatrix) -> RMatrix:
        """Gauss-Jordan inverse; pivots must be units because R is local."""
        if M.rows != M.cols:
            raise ValueError(f"cannot invert non-square {M.shape} matrix")
        r = M.rows
        a = [list(M.row(i)) + [self.one if i == j else 0 for j in range(r)] for i in range(r)]
        mul, sub = self._mul, self._sub
        for col in range(r):
            piv = next((i for i in range(col, r) if self._unit[a[i][col]]), None)
            if piv is None:
                raise NotInvertible("matrix is singular modulo t")
            a[col], a[piv] = a[piv], a[col]
            inv = self._inv[a[col][col]]
            a[col] = [mul[inv][x] for x in a[col]]
            for i in range(r):
                f = a[i][col]
                if i != col and f:
                    a[i] = [sub[x][mul[f][y]] for x, y in zip(a[i], a[col])]
        return RMatrix(r, r, tuple(x for row in a for x in row[r:]))

    def is_invertible(self, M: RMatrix) -> bool:
        return M.rows == M.cols and self.rank_mod_t(M) == M.rows

    def rank_mod_t(self, M: RMatrix) -> int:
        """Rank over F_q of the reduction of M modulo t."""
        return len(_pivot_rows_mod_t(self, M))

    def check_budget(self, count: int, what: str = "enumeration"):
        if count > self.budget:
            raise BudgetExceeded(f"{what} needs {count} elements, budget is {self.budget}")

    def enumerate_matrices(self, rows: int, cols: int) -> Iterator[RMatrix]:
        self.check_budget(self.size ** (rows * cols), f"all {rows}x{cols} matrices")
        for entries in itertools.product(range(self.size), repeat=rows * cols):
            yield RMatrix(rows, cols, entries)

    def gl_order(self, r: int) -> int:
        """|GL_r(R)| = q^{(n-1) r^2} prod_{i<r} (q^r - q^i)."""
        q = self.q
        out = q ** ((self.n - 1) * r * r)
        for i in range(r):
            out *= q**r - q**i
        return out

    def enumerate_GL(self, r: int) -> Iterator[RMatrix]:
        """Every invertible r x r matrix once, in lexicographic entry order."""
        self.check_budget(self.size ** (r * r), f"GL_{r} search space")
        for M in self.enumerate_matrices(r, r):
            if self.rank_mod_t(M) == r:
                yield M

    def gl_generators(self, r: int) -> list:
        """Pairs (g, g^{-1}) generating GL_r(R).

        Over a local ring GL_r is generated by elementary transvections and
        diag(u, 1, ..., 1); additive generators t^k suffice for the
        transvection parameters.
        """
        gens = []
        ident = list(self.identity(r).entries)
        for a in range(r):
            for b in range(r):
                if a == b:
                    continue
                for k in range(self.n):
                    e = ident.copy()
                    e[a * r + b] = self._t_pow[k]
                    ei = ident.copy()
                    ei[a * r + b] = self._neg[self._t_pow[k]]
                    gens.append((RMatrix(r, r, tuple(e)), RMatrix(r, r, tuple(ei))))
        if r:
            for u in self.units():
                if u == self.one:
                    continue
                d = ident.copy()
                d[0] = u
                di = ident.copy()
                di[0] = self._inv[u]
                gens.append((RMatrix(r, r, tuple(d)), RMatrix(r, r, tuple(di))))
        return gens

    # -- free direct summands -------------------------------------------

    def echelon_summand_form(self, M: RMatrix) -> RMatrix | None:
        """Canonical generator matrix of the column span of M.

        Returns None when the span is not a free rank-s direct summand of
        R^r (s = number of columns).  The form has an identity block at the
        pivot rows, and entries above a column's pivot lie in tR.
        """
        if M.cols > M.rows:
            raise ValueError(f"need cols <= rows, got shape {M.shape}")
        pivots = _pivot_rows_mod_t(self, M)
        if len(pivots) < M.cols:
            return None
        return self.mat_mul(M, self.mat_inverse(M.select_rows(pivots)))

    def summand_bases(self, r: int, s: int) -> list:
        """All free rank-s direct summands of R^r as (basis, pivots, others).

        Generated directly in echelon form; ``basis`` is the r x s matrix of
        ``echelon_summand_form`` and ``others`` the non-pivot rows used as a
        complement basis.
        """
        return _summand_bases(self.q, self.n, r, s, self.budget)

    def free_grassmannian_size(self, r: int, s: int) -> int:
        """q^{(n-1)s(r-s)} times the Gaussian binomial [r choose s]_q."""
        if not 0 <= s <= r:
            return 0
        q = self.q
        num = den = 1
        for i in range(s):
            num *= q ** (r - i) - 1
            den *= q ** (i + 1) - 1
        return q ** ((self.n - 1) * s * (r - s)) * (num // den)


def _pivot_rows_mod_t(ring: Ring, M: RMatrix) -> list:
    """Rows where the rank of the top rows (mod t) jumps."""
    q = ring.q
    rows = [[ring._coeffs[x][0] for x in M.row(i)] for i in range(M.rows)]
    basis = []  # reduced rows with their leading column
    pivots = []
    for i, row in enumerate(rows):
        v = row[:]
        for lead, b in basis:
            if v[lead]:
                f = v[lead]
                v = [(x - f * y) % q for x, y in zip(v, b)]
        lead = next((j for j, x in enumerate(v) if x), None)
        if lead is not None:
            inv = pow(v[lead], -1, q)
            basis.append((lead, [(x * inv) % q for x in v]))
            pivots.append(i)
    return pivots


@lru_cache(maxsize=None)
def _summand_bases(q, n, r, s, budget):
    ring = _ring(q, n, budget)
    if not 0 <= s <= r:
        raise ValueError(f"need 0 <= s <= r, got s={s}, r={r}")
    ring.check_budget(ring.free_grassmannian_size(r, s), f"free Grassmannian G({s},{r})")
    units_free = list(range(ring.size))
    nonunits = [a for a in units_free if not ring.is_unit(a)]
    out = []
    for pivots in itertools.combinations(range(r), s):
        others = tuple(i for i in range(r) if i not in pivots)
        # free cells: (row, col) -> allowed values
        cells = []
        for col, p in enumerate(pivots):
            for row in others:
                cells.append((row, col, nonunits if row < p else units_free))
        for values in itertools.product(*(c[2] for c in cells)):
            ent = [0] * (r * s)
            for col, p in enumerate(pivots):
                ent[p * s + col] = ring.one
            for (row, col, _), val in zip(cells, values):
                ent[row * s + col] = val
            out.append((RMatrix(r, s, tuple(ent)), pivots, others))
    out.sort(key=lambda item: item[0].entries)
    return tuple(out)


@lru_cache(maxsize=None)
def _ring(q, n, budget=DEFAULT_BUDGET):
    return Ring(q, n, budget)


def get_ring(q: int, n: int, budget: int = DEFAULT_BUDGET) -> Ring:
    """Shared (cached) ring instance; ring tables are costly for larger q^n."""
    return _ring(q, n, budget)


@dataclass(frozen=True)
class RingElem:
    """An element of R bound to its ring, with operator arithmetic."""

    ring: Ring
    code: int

    def _check(self, other):
        if not isinstance(other, RingElem):
            return NotImplemented
        if other.ring != self.ring:
            raise ValueError(f"mismatched rings {self.ring!r} and {other.ring!r}")
        return other.code

    def __add__(self, other):
        b = self._check(other)
        return b if b is NotImplemented else RingElem(self.ring, self.ring.add(self.code, b))

    def __sub__(self, other):
        b = self._check(other)
        return b if b is NotImplemented else RingElem(self.ring, self.ring.sub(self.code, b))

    def __mul__(self, other):
        b = self._check(other)
        return b if b is NotImplemented else RingElem(self.ring, self.ring.mul(self.code, b))

    def __neg__(self):
        return RingElem(self.ring, self.ring.neg(self.code))

    def inverse(self) -> "RingElem":
        return RingElem(self.ring, self.ring.inverse(self.code))

    def is_unit(self) -> bool:
        return self.ring.is_unit(self.code)

    @property
    def coeffs(self) -> tuple:
        return self.ring.coeffs(self.code)

    def __str__(self):
        return self.ring.format(self.code)


def elem_arith(a: RingElem, b: RingElem, op: str) -> RingElem:
    ops = {"add": RingElem.__add__, "sub": RingElem.__sub__, "mul": RingElem.__mul__}
    if op not in ops:
        raise ValueError(f"unknown op {op!r}")
    return ops[op](a, b)
