"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Polynomial` lives in a fixed ambient space of ``nvars``
variables.  The same class represents elements of the symmetric algebra
S(V); there a variable stands for the partial derivative in that
direction and :func:`apply_operator` realizes the action.

All arithmetic is exact (``fractions.Fraction``); stored coefficients are
never zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Iterator, Mapping, Sequence

from . import linalg

Monomial = tuple[int, ...]


class DimensionMismatch(ValueError):
    pass


def _coerce(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


class Polynomial:
    """Immutable polynomial ``sum c_m x^m`` over the rationals."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Monomial, int | Fraction] | None = None):
        if nvars < 0:
            raise ValueError("nvars must be non-negative")
        self.nvars = nvars
        clean: dict[Monomial, Fraction] = {}
        for mono, c in (terms or {}).items():
            if len(mono) != nvars:
                raise DimensionMismatch(f"monomial {mono} does not have {nvars} exponents")
            c = _coerce(c)
            if c:
                clean[tuple(mono)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Monomial, Fraction]) -> "Polynomial":
        # Trusted constructor: terms already pruned and typed.
        p = cls.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, value, nvars: int) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, index: int, nvars: int) -> "Polynomial":
        if not 0 <= index < nvars:
            raise IndexError(index)
        mono = tuple(int(i == index) for i in range(nvars))
        return cls._raw(nvars, {mono: Fraction(1)})

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=1) -> "Polynomial":
        return cls(len(exps), {tuple(exps): coeff})

    @classmethod
    def linear(cls, coeffs: Sequence) -> "Polynomial":
        """The linear form ``sum coeffs[i] * x_i``."""
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                terms[tuple(int(j == i) for j in range(n))] = c
        return cls(n, terms)

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    def coefficient(self, mono: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = {sum(m) for m in self._terms}
        if not degs:
            return True
        if len(degs) != 1:
            return False
        return degree is None or degs == {degree}

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.nvars, Fraction(0))

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "Polynomial") -> None:
        if self.nvars != other.nvars:
            raise DimensionMismatch(f"ambient dimensions differ: {self.nvars} != {other.nvars}")

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(other, self.nvars)

    def __add__(self, other) -> "Polynomial":
        other = self._lift(other)
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for m, c in small.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.nvars, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._lift(other) - self

    def scale(self, factor) -> "Polynomial":
        factor = _coerce(factor)
        if not factor:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw(self.nvars, {m: c * factor for m, c in self._terms.items()})

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Polynomial._raw(self.nvars, out)

    def __rmul__(self, other) -> "Polynomial":
        return self.scale(other)

    def __pow__(self, k: int) -> "Polynomial":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(other, self.nvars)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # -- calculus and substitution ---------------------------------------
    def derivative(self, index: int, order: int = 1) -> "Polynomial":
        out: dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            e = m[index]
            if e < order:
                continue
            f = 1
            for j in range(e - order + 1, e + 1):
                f *= j
            nm = m[:index] + (e - order,) + m[index + 1:]
            out[nm] = out.get(nm, 0) + c * f
        return Polynomial._raw(self.nvars, {m: c for m, c in out.items() if c})

    def substitute_linear(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Replace variable ``i`` by the polynomial ``images[i]``."""
        if len(images) != self.nvars:
            raise DimensionMismatch("need one image per variable")
        target = images[0].nvars if images else 0
        powers: dict[tuple[int, int], Polynomial] = {}

        def power(i: int, e: int) -> Polynomial:
            key = (i, e)
            if key not in powers:
                powers[key] = images[i] ** e
            return powers[key]

        acc: dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            term = Polynomial.constant(c, target)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            for tm, tc in term._terms.items():
                acc[tm] = acc.get(tm, 0) + tc
        return Polynomial._raw(target, {m: c for m, c in acc.items() if c})

    def __repr__(self) -> str:
        return f"Polynomial({self.nvars}, {format_poly(self)})"


def format_poly(p: Polynomial, names: Sequence[str] | None = None) -> str:
    if p.is_zero():
        return "0"
    names = names or [f"x{i}" for i in range(p.nvars)]
    parts = []
    for m in sorted(p._terms, key=_grlex_key, reverse=True):
        c = p._terms[m]
        factors = [names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(m) if e]
        body = "*".join(factors)
        if not body:
            parts.append(str(c))
        elif c == 1:
            parts.append(body)
        elif c == -1:
            parts.append("-" + body)
        else:
            parts.append(f"{c}*{body}")
    return " + ".join(parts).replace("+ -", "- ")


def _grlex_key(m: Monomial) -> tuple:
    return (sum(m), m)


@dataclass(frozen=True)
class DifferentialOperator:
    """Constant-coefficient operator ``d(u)`` with symbol ``u`` in S(V)."""

    symbol: Polynomial

    def __call__(self, f: Polynomial) -> Polynomial:
        return apply_operator(self, f)

    def __mul__(self, other: "DifferentialOperator") -> "DifferentialOperator":
        return DifferentialOperator(self.symbol * other.symbol)


def poly_arith(p: Polynomial, q, op: str) -> Polynomial:
    if op == "add":
        return p + q
    if op == "mul":
        return p * q
    if op == "scale":
        return p.scale(q)
    raise ValueError(f"unknown operation {op!r}")


@lru_cache(maxsize=None)
def _falling(e: int, a: int) -> int:
    out = 1
    for j in range(e - a + 1, e + 1):
        out *= j
    return out


def apply_operator(u: DifferentialOperator | Polynomial, f: Polynomial) -> Polynomial:
    """Apply the constant-coefficient differential operator with symbol ``u``."""
    sym = u.symbol if isinstance(u, DifferentialOperator) else u
    if sym.nvars != f.nvars:
        raise DimensionMismatch(f"ambient dimensions differ: {sym.nvars} != {f.nvars}")
    out: dict[Monomial, Fraction] = {}
    for a, ca in sym._terms.items():
        for b, cb in f._terms.items():
            coef = 1
            for ai, bi in zip(a, b):
                if ai > bi:
                    coef = 0
                    break
                if ai:
                    coef *= _falling(bi, ai)
            if not coef:
                continue
            m = tuple(bi - ai for ai, bi in zip(a, b))
            out[m] = out.get(m, 0) + ca * cb * coef
    return Polynomial._raw(f.nvars, {m: c for m, c in out.items() if c})


def pairing(u: Polynomial, f: Polynomial) -> Fraction:
    """``<u, f> = (d(u) f)(0)``; on monomials this is ``a! * delta(a, b)``."""
    if u.nvars != f.nvars:
        raise DimensionMismatch(f"ambient dimensions differ: {u.nvars} != {f.nvars}")
    total = Fraction(0)
    small, other = (u, f) if len(u) <= len(f) else (f, u)
    for m, c in small._terms.items():
        d = other._terms.get(m)
        if d:
            w = 1
            for e in m:
                w *= factorial(e)
            total += c * d * w
    return total


def evaluate(f: Polynomial, point: Sequence) -> Fraction:
    if len(point) != f.nvars:
        raise DimensionMismatch(f"point has {len(point)} coordinates, expected {f.nvars}")
    pt = [_coerce(v) for v in point]
    total = Fraction(0)
    for m, c in f._terms.items():
        v = c
        for x, e in zip(pt, m):
            if e:
                v *= x ** e
                if not v:
                    break
        total += v
    return total


def _compositions(n: int, d: int) -> Iterator[Monomial]:
    # Descending lexicographic order of exponent vectors.
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _compositions(n - 1, d - first):
            yield (first,) + rest


@lru_cache(maxsize=256)
def _basis_cached(ambient: int, degree: int) -> tuple[Monomial, ...]:
    return tuple(_compositions(ambient, degree))


def homogeneous_basis(ambient: int, degree: int) -> list[Monomial]:
    """Monomials of total ``degree`` in graded-lex order (x0 > x1 > ...)."""
    if ambient < 1 or degree < 0:
        raise ValueError("need ambient >= 1 and degree >= 0")
    return list(_basis_cached(ambient, degree))


def monomial_index(ambient: int, degree: int) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(_basis_cached(ambient, degree))}


def coefficient_row(f: Polynomial, index: Mapping[Monomial, int]) -> dict[int, Fraction]:
    """Coordinates of ``f`` in a monomial basis given by ``index``."""
    row = {}
    for m, c in f.items():
        try:
            row[index[m]] = c
        except KeyError:
            raise ValueError(f"monomial {m} is outside the target basis") from None
    return row


def kernel_of_linear_maps(
    maps: Iterable[Sequence[Mapping[int, int | Fraction]]],
    basis: Sequence[Monomial],
) -> list[Polynomial]:
    """Joint kernel of linear maps given as sparse row lists over ``basis``.

    Each map is a list of rows; a row maps column index (position in
    ``basis``) to the matrix entry.  Returns kernel elements as polynomials,
    in reduced echelon form relative to the basis order.
    """
    if not basis:
        return []
    nvars = len(basis[0])
    rows: list[Mapping[int, int | Fraction]] = []
    for m in maps:
        rows.extend(r for r in m if r)
    vectors = linalg.nullspace(rows, len(basis))
    return [Polynomial._raw(nvars, {basis[i]: c for i, c in v.items()}) for v in vectors]


def operator_matrix(op: Polynomial, domain: Sequence[Monomial]) -> list[dict[int, Fraction]]:
    """Rows of ``d(op)`` restricted to ``span(domain)``, indexed by target monomial.

    Row order follows first appearance, which is deterministic given the
    domain order.
    """
    rows: dict[Monomial, dict[int, Fraction]] = {}
    for j, m in enumerate(domain):
        img = apply_operator(op, Polynomial._raw(len(m), {m: Fraction(1)}))
        for tm, c in img.items():
            rows.setdefault(tm, {})[j] = c
    return list(rows.values())
