"""Matrix realizations of su(n,1), so(2n,1) and so(2n+1,1) over the rationals.

Each algebra is stored through its complexification g together with the
splitting g = k + p.  The basis is always ordered k first (Cartan
elements, positive root vectors, negative root vectors) and p after
(positive-weight, zero-weight, negative-weight vectors).  Every basis
element is a weight vector for the diagonal torus of K, so the weight data
is integral.

Realizations
------------
``su``      g = sl(n+1).  k = {diag(b, -tr b)}, p = last row and column.
            Torus of K: diag(t_1, ..., t_n, (t_1...t_n)^-1).
``so-even`` g = so(2n+1) = {X : X^t = -G X G}, G = diag(G0, 1),
            G0 = [[0, I], [I, 0]]; k is the upper-left 2n x 2n block.
``so-odd``  g = so(2n+2), G = diag(G0, 1), G0 = [[0, I, 0], [I, 0, 0],
            [0, 0, 1]]; k is the upper-left (2n+1) x (2n+1) block.
            For both orthogonal families the torus is
            diag(t_1, ..., t_n, t_1^-1, ..., t_n^-1, 1, ...).

The invariant form is the trace form Tr(XY) of the defining
representation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from . import linalg
from .ratpoly import Polynomial

SU = "su"
SO_EVEN = "so-even"
SO_ODD = "so-odd"
FAMILIES = (SU, SO_EVEN, SO_ODD)


class NotInAlgebra(ValueError):
    """A matrix is not in the span of the algebra's basis."""


@dataclass(frozen=True)
class Family:
    tag: str
    n: int

    def __post_init__(self):
        if self.tag not in FAMILIES:
            raise ValueError(f"unknown family {self.tag!r}; expected one of {FAMILIES}")
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError("n must be a positive integer")

    def __str__(self) -> str:
        return f"{self.tag}(n={self.n})"


def expected_dims(family: Family) -> tuple[int, int, int, int]:
    """(dim g, dim k, rank g, rank k) from the closed-form table."""
    n = family.n
    if family.tag == SU:
        return n * n + 2 * n, n * n, n, n
    if family.tag == SO_EVEN:
        return 2 * n * n + n, 2 * n * n - n, n, n
    return 2 * n * n + 3 * n + 1, 2 * n * n + n, n + 1, n


def zeros(size: int) -> np.ndarray:
    return np.zeros((size, size), dtype=object)


def unit(size: int, entries: dict[tuple[int, int], int]) -> np.ndarray:
    m = zeros(size)
    for (i, j), v in entries.items():
        m[i, j] = v
    return m


def as_exact(matrix) -> np.ndarray:
    m = np.array(matrix, dtype=object)
    for idx, v in np.ndenumerate(m):
        if isinstance(v, (np.integer,)):
            m[idx] = int(v)
        elif not isinstance(v, (int, Fraction)):
            raise TypeError(f"non-exact entry {v!r}")
    return m


def bracket(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """The commutator ``xy - yx``."""
    if x.shape != y.shape or x.shape[0] != x.shape[1]:
        raise ValueError(f"size mismatch: {x.shape} vs {y.shape}")
    return x.dot(y) - y.dot(x)


def is_zero_matrix(m: np.ndarray) -> bool:
    return all(v == 0 for v in m.flat)


def matrix_power(m: np.ndarray, k: int) -> np.ndarray:
    out = np.identity(m.shape[0], dtype=object)
    for _ in range(k):
        out = out.dot(m)
    return out


def is_nilpotent(m: np.ndarray) -> bool:
    # The matrix size bounds the nilpotency index.
    return is_zero_matrix(matrix_power(m, m.shape[0]))


@dataclass(frozen=True)
class TorusWeightData:
    rank: int
    labels: tuple[str, ...]
    weights: tuple[tuple[int, ...], ...]

    def zero_weight_count(self) -> int:
        return sum(1 for w in self.weights if not any(w))


@dataclass(frozen=True, eq=False)
class MatrixLieAlgebra:
    family: Family
    size: int
    gamma: np.ndarray = field(repr=False)
    k_basis: tuple[np.ndarray, ...] = field(repr=False)
    p_basis: tuple[np.ndarray, ...] = field(repr=False)
    labels: tuple[str, ...]
    torus: tuple[np.ndarray, ...] = field(repr=False)

    # -- dimensions ---------------------------------------------------------
    @property
    def basis(self) -> tuple[np.ndarray, ...]:
        return self.k_basis + self.p_basis

    @property
    def dim(self) -> int:
        return len(self.k_basis) + len(self.p_basis)

    @property
    def dim_k(self) -> int:
        return len(self.k_basis)

    @property
    def rank_g(self) -> int:
        return expected_dims(self.family)[2]

    @property
    def rank_k(self) -> int:
        return len(self.torus)

    @property
    def dims(self) -> tuple[int, int, int, int]:
        return self.dim, self.dim_k, self.rank_g, self.rank_k

    @property
    def k_indices(self) -> range:
        return range(self.dim_k)

    @property
    def p_indices(self) -> range:
        return range(self.dim_k, self.dim)

    # -- coordinates ------------------------------------------------------
    @cached_property
    def _solver(self) -> tuple[list[int], list[list[Fraction]]]:
        flat = [[v for v in b.flat] for b in self.basis]
        cols: list[int] = []
        ech = linalg.Echelon()
        # Pick one matrix position per basis element so the restricted system is square.
        for pos in range(self.size * self.size):
            if ech.add({i: flat[i][pos] for i in range(self.dim) if flat[i][pos]}):
                cols.append(pos)
            if len(cols) == self.dim:
                break
        square = [[flat[i][pos] for i in range(self.dim)] for pos in cols]
        return cols, linalg.inverse(square)

    def coordinates(self, x: np.ndarray) -> tuple[Fraction, ...]:
        """Coefficients of ``x`` in the basis; raises NotInAlgebra otherwise."""
        x = np.asarray(x, dtype=object)
        if x.shape != (self.size, self.size):
            raise NotInAlgebra(f"expected a {self.size}x{self.size} matrix")
        cols, inv = self._solver
        flat = list(x.flat)
        rhs = [flat[p] for p in cols]
        coords = tuple(sum((Fraction(inv[a][r]) * rhs[r] for r in range(self.dim) if rhs[r]), Fraction(0))
                       for a in range(self.dim))
        if not np.array_equal(self.element(coords), x):
            raise NotInAlgebra("matrix is not in the span of the basis")
        return coords

    def element(self, coords: Sequence) -> np.ndarray:
        if len(coords) != self.dim:
            raise ValueError(f"need {self.dim} coordinates")
        out = zeros(self.size)
        for c, b in zip(coords, self.basis):
            if c:
                out = out + b * c
        return out

    def contains(self, x: np.ndarray) -> bool:
        try:
            self.coordinates(x)
        except NotInAlgebra:
            return False
        return True

    def satisfies_relation(self, x: np.ndarray) -> bool:
        """Defining relation of the realization (trace zero / G-skewness)."""
        if self.family.tag == SU:
            return sum(x[i, i] for i in range(self.size)) == 0
        g = self.gamma
        return np.array_equal(x.T, -(g.dot(x).dot(g)))

    def project_to_k(self, x: np.ndarray) -> np.ndarray:
        c = self.coordinates(x)
        return self.element([v if i < self.dim_k else 0 for i, v in enumerate(c)])

    # -- form -------------------------------------------------------------
    def form_value(self, x: np.ndarray, y: np.ndarray) -> Fraction:
        self.coordinates(x)
        self.coordinates(y)
        return Fraction(sum(x.dot(y)[i, i] for i in range(self.size)))

    @cached_property
    def gram(self) -> tuple[tuple[Fraction, ...], ...]:
        b = self.basis
        return tuple(tuple(Fraction(sum(b[i].dot(b[j])[r, r] for r in range(self.size)))
                           for j in range(self.dim)) for i in range(self.dim))

    @cached_property
    def gram_inverse(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(tuple(r) for r in linalg.inverse(self.gram))

    # -- adjoint action ---------------------------------------------------
    def ad_matrix(self, z: np.ndarray) -> list[dict[int, Fraction]]:
        """Columns of ad(z): entry ``[b][a]`` is the X_a-coefficient of [z, X_b]."""
        return [{a: c for a, c in enumerate(self.coordinates(bracket(z, xb))) if c}
                for xb in self.basis]

    @cached_property
    def ad_k(self) -> tuple[list[dict[int, Fraction]], ...]:
        return tuple(self.ad_matrix(z) for z in self.k_basis)

    @cached_property
    def weights(self) -> tuple[tuple[int, ...], ...]:
        """Adjoint torus weight of every basis element."""
        out = []
        for xa in self.basis:
            w = []
            for h in self.torus:
                br = bracket(h, xa)
                # xa is a weight vector: br must be a multiple of xa
                pos = next(idx for idx, v in np.ndenumerate(xa) if v)
                lam = Fraction(br[pos]) / xa[pos]
                if not np.array_equal(br, xa * lam):
                    raise AssertionError("basis element is not a torus weight vector")
                if lam.denominator != 1:
                    raise AssertionError("non-integral weight")
                w.append(int(lam))
            out.append(tuple(w))
        return tuple(out)

    @cached_property
    def coordinate_weights(self) -> tuple[tuple[int, ...], ...]:
        """Torus weights of the coordinate functions (negated adjoint weights)."""
        return tuple(tuple(-v for v in w) for w in self.weights)

    def generic_element(self, k_only: bool = False) -> list[list[Polynomial]]:
        """x = sum c_a X_a as a matrix of linear polynomials in the coordinates."""
        n = self.dim
        entries: list[list[dict[int, Fraction]]] = [[{} for _ in range(self.size)] for _ in range(self.size)]
        count = self.dim_k if k_only else n
        for a in range(count):
            for (i, j), v in np.ndenumerate(self.basis[a]):
                if v:
                    entries[i][j][a] = Fraction(v)
        return [[Polynomial.linear([e.get(a, 0) for a in range(n)]) for e in row] for row in entries]


def coadjoint_derivation(z: np.ndarray | int, f: Polynomial, algebra: MatrixLieAlgebra) -> Polynomial:
    """Derivation of P(g) induced by ad(z): (D f)(x) = -df_x([z, x]).

    ``z`` is a k-element given as a matrix or as an index into ``k_basis``.
    """
    cols = algebra.ad_k[z] if isinstance(z, int) else algebra.ad_matrix(z)
    # rows[a] = [(b, A_ab)]: the X_a coefficient of [z, x] is sum_b A_ab c_b
    rows: dict[int, list[tuple[int, Fraction]]] = {}
    for b, col in enumerate(cols):
        for a, v in col.items():
            rows.setdefault(a, []).append((b, v))
    out: dict[tuple[int, ...], Fraction] = {}
    for m, c in f.items():
        for a, e in enumerate(m):
            if not e or a not in rows:
                continue
            base = list(m)
            base[a] -= 1
            for b, v in rows[a]:
                nm = base.copy()
                nm[b] += 1
                key = tuple(nm)
                out[key] = out.get(key, 0) - c * e * v
    return Polynomial(f.nvars, out)


def torus_weights(algebra: MatrixLieAlgebra) -> TorusWeightData:
    return TorusWeightData(algebra.rank_k, algebra.labels, algebra.weights)


def form_value(algebra: MatrixLieAlgebra, x: np.ndarray, y: np.ndarray) -> Fraction:
    return algebra.form_value(x, y)


def project_to_k(algebra: MatrixLieAlgebra, x: np.ndarray) -> np.ndarray:
    return algebra.project_to_k(x)


# -- constructions ---------------------------------------------------------

def _build_su(n: int) -> MatrixLieAlgebra:
    size = n + 1
    last = n
    k, kl, p, pl = [], [], [], []
    torus = []
    for i in range(n):
        h = unit(size, {(i, i): 1, (last, last): -1})
        torus.append(h)
        k.append(h)
        kl.append(f"h{i + 1}")
    for i in range(n):
        for j in range(i + 1, n):
            k.append(unit(size, {(i, j): 1}))
            kl.append(f"E{i + 1}{j + 1}")
    for i in range(n):
        for j in range(i + 1, n):
            k.append(unit(size, {(j, i): 1}))
            kl.append(f"E{j + 1}{i + 1}")
    for i in range(n):
        p.append(unit(size, {(i, last): 1}))
        pl.append(f"E{i + 1}{size}")
    for i in range(n):
        p.append(unit(size, {(last, i): 1}))
        pl.append(f"E{size}{i + 1}")
    gamma = unit(size, {(i, i): 1 for i in range(n)} | {(last, last): -1})
    return MatrixLieAlgebra(Family(SU, n), size, gamma, tuple(k), tuple(p), tuple(kl + pl), tuple(torus))


def _orthogonal_k(n: int, size: int, with_vector: bool) -> tuple[list, list, list]:
    """k-basis for the split orthogonal forms (G0 pairs index i with n+i).

    With ``with_vector`` the extra index 2n carries the type-B short roots.
    """
    k, kl, torus = [], [], []
    for i in range(n):
        h = unit(size, {(i, i): 1, (n + i, n + i): -1})
        torus.append(h)
        k.append(h)
        kl.append(f"h{i + 1}")
    pos, posl, neg, negl = [], [], [], []
    for i in range(n):
        for j in range(i + 1, n):
            pos.append(unit(size, {(i, j): 1, (n + j, n + i): -1}))
            posl.append(f"A{i + 1}{j + 1}")
            neg.append(unit(size, {(j, i): 1, (n + i, n + j): -1}))
            negl.append(f"A{j + 1}{i + 1}")
    for i in range(n):
        for j in range(i + 1, n):
            pos.append(unit(size, {(i, n + j): 1, (j, n + i): -1}))
            posl.append(f"B{i + 1}{j + 1}")
            neg.append(unit(size, {(n + i, j): 1, (n + j, i): -1}))
            negl.append(f"C{i + 1}{j + 1}")
    if with_vector:
        mid = 2 * n
        for i in range(n):
            pos.append(unit(size, {(i, mid): 1, (mid, n + i): -1}))
            posl.append(f"a{i + 1}")
            neg.append(unit(size, {(n + i, mid): 1, (mid, i): -1}))
            negl.append(f"b{i + 1}")
    return k + pos + neg, kl + posl + negl, torus


def _gamma0(n: int, odd: bool) -> np.ndarray:
    size = 2 * n + 1 if odd else 2 * n
    g = zeros(size)
    for i in range(n):
        g[i, n + i] = 1
        g[n + i, i] = 1
    if odd:
        g[2 * n, 2 * n] = 1
    return g


def _with_last_one(g0: np.ndarray) -> np.ndarray:
    s = g0.shape[0]
    g = zeros(s + 1)
    g[:s, :s] = g0
    g[s, s] = 1
    return g


def _build_so_even(n: int) -> MatrixLieAlgebra:
    size = 2 * n + 1
    last = 2 * n
    k, kl, torus = _orthogonal_k(n, size, with_vector=False)
    p, pl = [], []
    for i in range(n):
        p.append(unit(size, {(i, last): 1, (last, n + i): -1}))
        pl.append(f"a{i + 1}")
    for i in range(n):
        p.append(unit(size, {(n + i, last): 1, (last, i): -1}))
        pl.append(f"b{i + 1}")
    gamma = _with_last_one(_gamma0(n, odd=False))
    return MatrixLieAlgebra(Family(SO_EVEN, n), size, gamma, tuple(k), tuple(p), tuple(kl + pl), tuple(torus))


def _build_so_odd(n: int) -> MatrixLieAlgebra:
    size = 2 * n + 2
    mid, last = 2 * n, 2 * n + 1
    k, kl, torus = _orthogonal_k(n, size, with_vector=True)
    p, pl = [], []
    for i in range(n):
        p.append(unit(size, {(i, last): 1, (last, n + i): -1}))
        pl.append(f"c{i + 1}")
    p.append(unit(size, {(mid, last): 1, (last, mid): -1}))
    pl.append("alpha")
    for i in range(n):
        p.append(unit(size, {(n + i, last): 1, (last, i): -1}))
        pl.append(f"d{i + 1}")
    gamma = _with_last_one(_gamma0(n, odd=True))
    return MatrixLieAlgebra(Family(SO_ODD, n), size, gamma, tuple(k), tuple(p), tuple(kl + pl), tuple(torus))


_BUILDERS = {SU: _build_su, SO_EVEN: _build_so_even, SO_ODD: _build_so_odd}
_CACHE: dict[Family, MatrixLieAlgebra] = {}


def build_algebra(family: Family | str, n: int | None = None) -> MatrixLieAlgebra:
    """Construct (and memoize) the realization for ``family``."""
    if not isinstance(family, Family):
        family = Family(family, n)
    if family not in _CACHE:
        _CACHE[family] = _BUILDERS[family.tag](family.n)
    return _CACHE[family]


def gamma0(algebra: MatrixLieAlgebra) -> np.ndarray:
    """The form matrix on the k-block of an orthogonal family."""
    if algebra.family.tag == SU:
        raise ValueError("su has no G0 block")
    s = algebra.size - 1
    return algebra.gamma[:s, :s].copy()
