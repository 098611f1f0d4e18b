"""Exact sparse linear algebra over the rationals.

Rows are sparse mappings ``{column: value}`` with ``int`` or ``Fraction``
values.  Elimination is fraction-free: every row is scaled to a primitive
integer vector and row combinations ``a*r - b*p`` are followed by division
by the content, which keeps coefficient growth bounded without ever
forming rational intermediates.

Pivots are taken at the *rightmost* nonzero column of each row.  With that
choice the kernel vectors read off the reduced form are already in reduced
row echelon form with respect to the natural (left-to-right) column order,
which is the order every caller uses for its basis.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

Row = Mapping[int, "int | Fraction"]


def _primitive(row: Mapping[int, int | Fraction]) -> dict[int, int]:
    """Scale ``row`` to a primitive integer row with positive pivot entry."""
    row = {c: v for c, v in row.items() if v}
    if not row:
        return {}
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    ints = {c: int(v * den) for c, v in row.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
        if g == 1:
            break
    if ints[max(ints)] < 0:
        g = -g
    return {c: v // g for c, v in ints.items()}


def _combine(r: dict[int, int], p: dict[int, int], col: int) -> dict[int, int]:
    """Eliminate ``col`` from ``r`` using pivot row ``p`` (fraction-free)."""
    a, b = p[col], r[col]
    g = gcd(a, b)
    a, b = a // g, b // g
    out = {c: a * v for c, v in r.items()}
    for c, v in p.items():
        nv = out.get(c, 0) - b * v
        if nv:
            out[c] = nv
        else:
            out.pop(c, None)
    return _primitive(out)


class Echelon:
    """Incremental fraction-free echelon form.

    Rows can be added one at a time; ``rank`` is available at any point.
    Call :meth:`reduce` before reading a kernel.
    """

    def __init__(self) -> None:
        self.pivots: dict[int, dict[int, int]] = {}
        self._reduced = True

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add(self, row: Row) -> bool:
        """Insert a row; return True if it increased the rank."""
        r = _primitive(row)
        while r:
            c = max(r)
            p = self.pivots.get(c)
            if p is None:
                self.pivots[c] = r
                self._reduced = False
                return True
            r = _combine(r, p, c)
        return False

    def reduce(self) -> None:
        """Clear every pivot column from all other pivot rows."""
        if self._reduced:
            return
        done: dict[int, dict[int, int]] = {}
        for c in sorted(self.pivots):
            r = self.pivots[c]
            for c2 in sorted((k for k in r if k != c and k in done), reverse=True):
                if c2 in r:
                    r = _combine(r, done[c2], c2)
            done[c] = r
        self.pivots = done
        self._reduced = True


def connected_blocks(rows: Sequence[Row], ncols: int) -> list[tuple[list[int], list[int]]]:
    """Split a sparse system into independent blocks.

    Returns ``(row_indices, column_indices)`` pairs for the connected
    components of the row/column incidence graph.  Columns touched by no row
    come back as singleton blocks with an empty row list.
    """
    parent = list(range(ncols))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for row in rows:
        cols = [c for c, v in row.items() if v]
        for c in cols[1:]:
            a, b = find(cols[0]), find(c)
            if a != b:
                parent[max(a, b)] = min(a, b)
    col_groups: dict[int, list[int]] = {}
    for c in range(ncols):
        col_groups.setdefault(find(c), []).append(c)
    row_groups: dict[int, list[int]] = {}
    for i, row in enumerate(rows):
        nz = [c for c, v in row.items() if v]
        if nz:
            row_groups.setdefault(find(nz[0]), []).append(i)
    return [(row_groups.get(root, []), cols) for root, cols in sorted(col_groups.items())]


def rank(rows: Iterable[Row]) -> int:
    ech = Echelon()
    for row in rows:
        ech.add(row)
    return ech.rank


def blocked_rank(rows: Sequence[Row], ncols: int) -> int:
    """Rank computed block by block; equal to :func:`rank` but cheaper."""
    total = 0
    for row_ids, _ in connected_blocks(rows, ncols):
        if row_ids:
            total += rank(rows[i] for i in row_ids)
    return total


def nullspace(rows: Sequence[Row], ncols: int) -> list[dict[int, Fraction]]:
    """Basis of ``{v : row . v = 0 for all rows}`` in reduced echelon form.

    Each returned vector has leading entry 1 at a distinct free column and is
    zero at every other free column; vectors are sorted by leading column.
    """
    out: list[dict[int, Fraction]] = []
    for row_ids, cols in connected_blocks(rows, ncols):
        ech = Echelon()
        for i in row_ids:
            ech.add(rows[i])
        ech.reduce()
        by_col: dict[int, list[int]] = {}
        for pc, prow in ech.pivots.items():
            for c in prow:
                if c != pc:
                    by_col.setdefault(c, []).append(pc)
        for f in cols:
            if f in ech.pivots:
                continue
            vec = {f: Fraction(1)}
            for pc in by_col.get(f, ()):
                prow = ech.pivots[pc]
                vec[pc] = Fraction(-prow[f], prow[pc])
            out.append(vec)
    out.sort(key=min)
    return out


def dense_rows(matrix: Sequence[Sequence[int | Fraction]]) -> list[dict[int, int | Fraction]]:
    return [{j: v for j, v in enumerate(r) if v} for r in matrix]


def matrix_rank(matrix: Sequence[Sequence[int | Fraction]]) -> int:
    return rank(dense_rows(matrix))


def inverse(matrix: Sequence[Sequence[int | Fraction]]) -> list[list[Fraction]]:
    """Exact inverse by Gauss-Jordan; raises ``ZeroDivisionError`` if singular."""
    n = len(matrix)
    aug = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv_p = 1 / aug[col][col]
        aug[col] = [v * inv_p for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def determinant(matrix: Sequence[Sequence[int | Fraction]]) -> Fraction:
    n = len(matrix)
    a = [[Fraction(v) for v in row] for row in matrix]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] / a[col][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det
