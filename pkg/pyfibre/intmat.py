from typing import List, Optional, Sequence, Tuple

from pydantic import validator

from pyfibre.model import FibreModel
from pyfibre.presentations import Presentation
from pyfibre.words import Word

Rows = List[List[int]]


class IntMatrix(FibreModel):
    rows: int
    cols: int

    # Row-major, arbitrary precision.
    entries: Tuple[int, ...]

    @validator('entries')
    def _check_size(cls, v, values):
        if 'rows' in values and 'cols' in values:
            assert len(v) == values['rows'] * values['cols'], "Entries do not match the shape."
        return v

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> 'IntMatrix':
        cols = len(rows[0]) if rows else (cols or 0)
        assert all(len(r) == cols for r in rows), "Ragged rows."
        return cls(rows=len(rows), cols=cols, entries=tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> 'IntMatrix':
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zero(cls, rows: int, cols: int) -> 'IntMatrix':
        return cls(rows=rows, cols=cols, entries=(0,) * (rows * cols))

    def to_rows(self) -> Rows:
        return [list(self.entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    def __getitem__(self, ij: Tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def __matmul__(self, other: 'IntMatrix') -> 'IntMatrix':
        assert self.cols == other.rows, "Shapes do not match."
        a, b = self.to_rows(), other.to_rows()
        return IntMatrix.from_rows(
            [[sum(a[i][k] * b[k][j] for k in range(self.cols)) for j in range(other.cols)] for i in range(self.rows)],
            cols=other.cols,
        )

    def diagonal(self) -> List[int]:
        return [self[i, i] for i in range(min(self.rows, self.cols))]

    def is_diagonal(self) -> bool:
        return all(self[i, j] == 0 for i in range(self.rows) for j in range(self.cols) if i != j)


class AbelianInvariants(FibreModel):
    """ Z^free_rank x Z/d_1 x ... x Z/d_k with d_i | d_(i+1), every d_i >= 2. """

    torsion: Tuple[int, ...] = ()
    free_rank: int = 0

    @validator('torsion')
    def _check_chain(cls, v):
        assert all(d >= 2 for d in v), "Torsion factors should be at least 2."
        assert all(b % a == 0 for a, b in zip(v, v[1:])), "Torsion factors should form a divisibility chain."
        return v

    @property
    def is_trivial(self) -> bool:
        return not self.torsion and not self.free_rank

    def __str__(self):
        if self.is_trivial: return '1'
        parts = ([f"Z^{self.free_rank}" if self.free_rank > 1 else 'Z'] if self.free_rank else [])
        return ' x '.join(parts + [f"Z/{d}" for d in self.torsion])


# ----------------------------------------------------
# Smith normal form

def _smallest(a: Rows, t: int, m: int, n: int) -> Optional[Tuple[int, int]]:
    # Smallest nonzero absolute value, ties by row-major order.
    best = None
    for i in range(t, m):
        row = a[i]
        for j in range(t, n):
            x = row[j]
            if x and (best is None or abs(x) < best[0]): best = (abs(x), i, j)
    return None if best is None else (best[1], best[2])


def _diagonalize(a: Rows, m: int, n: int, left: Optional[Rows] = None, right: Optional[Rows] = None):
    """ Brings `a` to Smith normal form in place, mirroring row ops in `left`, column ops in `right`. """

    def swap_rows(i, k):
        if i == k: return
        a[i], a[k] = a[k], a[i]
        if left is not None: left[i], left[k] = left[k], left[i]

    def swap_cols(j, k):
        if j == k: return
        for row in a: row[j], row[k] = row[k], row[j]
        if right is not None:
            for row in right: row[j], row[k] = row[k], row[j]

    def add_row(i, k, q):
        # row i += q * row k
        a[i] = [x + q * y for x, y in zip(a[i], a[k])]
        if left is not None: left[i] = [x + q * y for x, y in zip(left[i], left[k])]

    def add_col(j, k, q):
        for row in a: row[j] += q * row[k]
        if right is not None:
            for row in right: row[j] += q * row[k]

    t = 0
    while t < min(m, n):
        pivot = _smallest(a, t, m, n)
        if pivot is None: break
        while True:
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = a[i][t] // p
                if q: add_row(i, t, -q)
                if a[i][t]: dirty = True
            for j in range(t + 1, n):
                q = a[t][j] // p
                if q: add_col(j, t, -q)
                if a[t][j]: dirty = True
            if dirty:
                pivot = _smallest(a, t, m, n)
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p), None)
            if bad is not None:
                add_row(t, bad, 1)
                pivot = (t, t)
                continue
            break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if left is not None: left[t] = [-x for x in left[t]]
        t += 1


def smith_normal_form(m: IntMatrix) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """ Returns (U, D, V) with D = U m V, U and V unimodular, D the Smith normal form. """
    a = m.to_rows()
    left = IntMatrix.identity(m.rows).to_rows()
    right = IntMatrix.identity(m.cols).to_rows()
    _diagonalize(a, m.rows, m.cols, left, right)
    return (
        IntMatrix.from_rows(left, cols=m.rows),
        IntMatrix.from_rows(a, cols=m.cols),
        IntMatrix.from_rows(right, cols=m.cols),
    )


def invariants_of_rows(rows: Sequence[Sequence[int]], cols: int) -> AbelianInvariants:
    """ Invariants of Z^cols modulo the row lattice. """
    a = [list(r) for r in rows]
    _diagonalize(a, len(a), cols)
    diagonal = [a[i][i] for i in range(min(len(a), cols))]
    rank = sum(1 for d in diagonal if d)
    return AbelianInvariants(torsion=tuple(d for d in diagonal if d > 1), free_rank=cols - rank)


def relation_matrix(relators: Sequence[Word], generators: int) -> IntMatrix:
    """ Exponent-sum matrix, one row per relator, one column per generator. """
    return IntMatrix.from_rows([r.exponent_sums(generators) for r in relators], cols=generators)


def abelianization(p: Presentation) -> AbelianInvariants:
    return invariants_of_rows([r.exponent_sums(p.rank) for r in p.relators], p.rank)
