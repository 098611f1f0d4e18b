"""Torus characters, Weyl characters and K-type multiplicities of harmonics.

K-types are labelled by highest weights in the torus coordinates of
``liealg``:

* su(n,1)     -> type A, rank n: GL(n)-weights, lambda_1 >= ... >= lambda_n.
* so(2n,1)    -> type D, rank n: lambda_1 >= ... >= lambda_{n-1} >= |lambda_n|.
* so(2n+1,1)  -> type B, rank n: lambda_1 >= ... >= lambda_n >= 0.

For su(n,1) only weights with sum divisible by n+1 descend to the adjoint
group's K; harmonics never produce any others.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from math import prod
from typing import Mapping, Sequence

from .harmonics import harmonic_space, numerator_coefficients
from .invariants import InvariantSet
from .liealg import SO_EVEN, SO_ODD, SU, MatrixLieAlgebra
from .ratpoly import homogeneous_basis
from .report import FAIL, OPEN, PASS, VerificationReport

Weight = tuple[int, ...]
MAX_DESK_RANK = 4


class DecompositionError(ValueError):
    pass


class NotDominant(ValueError):
    pass


@dataclass(frozen=True)
class SignedPermutation:
    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def act(self, weight: Sequence) -> tuple:
        return tuple(s * weight[p] for p, s in zip(self.perm, self.signs))

    @property
    def sign(self) -> int:
        inversions = sum(1 for i in range(len(self.perm)) for j in range(i + 1, len(self.perm))
                         if self.perm[i] > self.perm[j])
        return (-1) ** inversions * prod(self.signs)


def weyl_group_elements(lie_type: str, rank: int) -> list[SignedPermutation]:
    if rank > MAX_DESK_RANK:
        raise ValueError(f"rank {rank} exceeds the desk-scale limit {MAX_DESK_RANK}")
    out = []
    for perm in permutations(range(rank)):
        if lie_type == "A":
            out.append(SignedPermutation(perm, (1,) * rank))
            continue
        for signs in product((1, -1), repeat=rank):
            if lie_type == "D" and prod(signs) != 1:
                continue
            out.append(SignedPermutation(perm, signs))
    if lie_type not in ("A", "B", "D"):
        raise ValueError(f"unsupported type {lie_type!r}")
    return out


def rho(lie_type: str, rank: int) -> tuple[Fraction, ...]:
    if lie_type == "B":
        return tuple(Fraction(2 * (rank - i) - 1, 2) for i in range(rank))
    return tuple(Fraction(rank - 1 - i) for i in range(rank))


def positive_roots(lie_type: str, rank: int) -> list[tuple[int, ...]]:
    roots = []
    for i in range(rank):
        for j in range(i + 1, rank):
            r = [0] * rank
            r[i], r[j] = 1, -1
            roots.append(tuple(r))
            if lie_type in ("B", "D"):
                r = [0] * rank
                r[i], r[j] = 1, 1
                roots.append(tuple(r))
        if lie_type == "B":
            r = [0] * rank
            r[i] = 1
            roots.append(tuple(r))
    return roots


def is_dominant(weight: Sequence[int], lie_type: str) -> bool:
    w = list(weight)
    n = len(w)
    if any(w[i] < w[i + 1] for i in range(n - 2)):
        return False
    if lie_type == "A":
        return n < 2 or w[n - 2] >= w[n - 1]
    if lie_type == "B":
        return (n < 2 or w[n - 2] >= w[n - 1]) and (n == 0 or w[-1] >= 0)
    # type D
    return n < 2 or w[n - 2] >= abs(w[n - 1])


def contragredient(weight: Weight, lie_type: str) -> Weight:
    if lie_type == "A":
        return tuple(-v for v in reversed(weight))
    if lie_type == "D" and len(weight) % 2:
        return weight[:-1] + (-weight[-1],)
    return tuple(weight)


def weyl_dimension(weight: Weight, lie_type: str) -> int:
    r = rho(lie_type, len(weight))
    num = den = Fraction(1)
    for a in positive_roots(lie_type, len(weight)):
        num *= sum((w + p) * c for w, p, c in zip(weight, r, a))
        den *= sum(p * c for p, c in zip(r, a))
    value = num / den
    assert value.denominator == 1
    return int(value)


# -- characters --------------------------------------------------------------

@dataclass(frozen=True)
class TorusCharacter:
    rank: int
    terms: Mapping[Weight, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "terms", {tuple(w): m for w, m in self.terms.items() if m})

    def __add__(self, other: "TorusCharacter") -> "TorusCharacter":
        out = Counter(self.terms)
        out.update(other.terms)
        return TorusCharacter(self.rank, dict(out))

    def __sub__(self, other: "TorusCharacter") -> "TorusCharacter":
        return self + other.scale(-1)

    def scale(self, k: int) -> "TorusCharacter":
        return TorusCharacter(self.rank, {w: k * m for w, m in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, TorusCharacter) and self.rank == other.rank and self.terms == other.terms

    def __hash__(self):
        return hash((self.rank, frozenset(self.terms.items())))

    @property
    def dimension(self) -> int:
        return sum(self.terms.values())

    def is_nonnegative(self) -> bool:
        return all(m > 0 for m in self.terms.values())

    def is_weyl_symmetric(self, lie_type: str) -> bool:
        group = weyl_group_elements(lie_type, self.rank)
        return all(self.terms.get(w.act(mu), 0) == m for mu, m in self.terms.items() for w in group)


def _laurent_divide(num: dict[Weight, int], den: dict[Weight, int]) -> dict[Weight, int]:
    """Exact division of Laurent polynomials by leading-term cancellation (lex order)."""
    num = dict(num)
    lead = max(den)
    lc = den[lead]
    quot: dict[Weight, int] = {}
    while num:
        top = max(num)
        c, r = divmod(num[top], lc)
        if r:
            raise DecompositionError("alternant division is not exact")
        shift = tuple(a - b for a, b in zip(top, lead))
        quot[shift] = c
        for w, v in den.items():
            key = tuple(a + b for a, b in zip(w, shift))
            nv = num.get(key, 0) - c * v
            if nv:
                num[key] = nv
            else:
                num.pop(key, None)
    return quot


def _alternant(mu: Sequence[int], group: list[SignedPermutation]) -> dict[Weight, int]:
    out: dict[Weight, int] = {}
    for w in group:
        key = w.act(mu)
        out[key] = out.get(key, 0) + w.sign
    return {k: v for k, v in out.items() if v}


def irreducible_character(weight: Weight, lie_type: str, rank: int | None = None) -> TorusCharacter:
    """Character of the irreducible K-module with highest weight ``weight``.

    Computed as the alternant ratio A(lambda + rho) / A(rho) in doubled
    coordinates (keeps rho integral for type B).
    """
    weight = tuple(int(v) for v in weight)
    rank = len(weight) if rank is None else rank
    if len(weight) != rank:
        raise ValueError("weight length must equal the rank")
    if not is_dominant(weight, lie_type):
        raise NotDominant(f"{weight} is not dominant for type {lie_type}")
    return _irreducible_cached(weight, lie_type)


_CHAR_CACHE: dict[tuple[Weight, str], TorusCharacter] = {}


def _irreducible_cached(weight: Weight, lie_type: str) -> TorusCharacter:
    key = (weight, lie_type)
    if key not in _CHAR_CACHE:
        rank = len(weight)
        group = weyl_group_elements(lie_type, rank)
        r2 = [int(2 * v) for v in rho(lie_type, rank)]
        top = [2 * w + r for w, r in zip(weight, r2)]
        q = _laurent_divide(_alternant(top, group), _alternant(r2, group))
        terms = {}
        for w, m in q.items():
            if any(v % 2 for v in w):
                raise DecompositionError("character has non-integral weights")
            terms[tuple(v // 2 for v in w)] = m
        _CHAR_CACHE[key] = TorusCharacter(rank, terms)
    return _CHAR_CACHE[key]


def _graded_lex(w: Weight) -> tuple:
    return (sum(w), w)


def decompose(char: TorusCharacter, lie_type: str, rank: int | None = None) -> dict[Weight, int]:
    """Multiplicities of irreducibles by repeated highest-weight peeling."""
    rank = char.rank if rank is None else rank
    residual = char
    out: dict[Weight, int] = {}
    while residual.terms:
        top = max(residual.terms, key=_graded_lex)
        mult = residual.terms[top]
        if mult < 0 or not is_dominant(top, lie_type):
            raise DecompositionError(f"character is not a non-negative sum of irreducibles (at {top})")
        out[top] = mult
        residual = residual - irreducible_character(top, lie_type, rank).scale(mult)
    return dict(sorted(out.items(), key=lambda kv: _graded_lex(kv[0]), reverse=True))


def compose(mults: Mapping[Weight, int], lie_type: str, rank: int) -> TorusCharacter:
    total = TorusCharacter(rank, {})
    for w, m in mults.items():
        total = total + irreducible_character(w, lie_type, rank).scale(m)
    return total


# -- harmonics as K-modules --------------------------------------------------

def lie_type_of(algebra: MatrixLieAlgebra) -> tuple[str, int]:
    tag = algebra.family.tag
    return {SU: "A", SO_EVEN: "D", SO_ODD: "B"}[tag], algebra.family.n


def monomial_weight(algebra: MatrixLieAlgebra, mono: Sequence[int]) -> Weight:
    cw = algebra.coordinate_weights
    return tuple(sum(e * cw[a][i] for a, e in enumerate(mono) if e) for i in range(algebra.rank_k))


def polynomial_character(algebra: MatrixLieAlgebra, degree: int) -> TorusCharacter:
    """Character of P^degree(g)."""
    counts = Counter(monomial_weight(algebra, m) for m in homogeneous_basis(algebra.dim, degree))
    return TorusCharacter(algebra.rank_k, dict(counts))


def graded_harmonic_character(inv: InvariantSet, degree: int, method: str = "kernel") -> TorusCharacter:
    """Torus character of H^degree.

    ``kernel``: weights of the computed harmonic basis (each basis vector is a
    weight vector).  ``series``: char P(t) * prod(1 - t^d_i), read off at
    ``degree``; the generators have weight zero.
    """
    algebra = inv.algebra
    if method == "kernel":
        counts: Counter = Counter()
        for p in harmonic_space(inv, degree).basis:
            ws = {monomial_weight(algebra, m) for m, _ in p.items()}
            if len(ws) != 1:
                raise DecompositionError("harmonic basis vector is not a weight vector")
            counts[ws.pop()] += 1
        return TorusCharacter(algebra.rank_k, dict(counts))
    if method == "series":
        num = numerator_coefficients(inv.degrees, degree)
        total = TorusCharacter(algebra.rank_k, {})
        for j, c in enumerate(num):
            if c:
                total = total + polynomial_character(algebra, degree - j).scale(c)
        return total
    raise ValueError(f"unknown method {method!r}")


@dataclass
class MultiplicityLedger:
    lie_type: str
    rank: int
    cutoff: int
    per_degree: dict[int, dict[Weight, int]]
    cumulative: dict[Weight, tuple[int, int]]
    saturated_at: dict[Weight, int]

    @property
    def violations(self) -> list[Weight]:
        return [w for w, (m, d) in self.cumulative.items() if m > d]

    def multiplicity(self, weight: Weight) -> int:
        return self.cumulative.get(tuple(weight), (0, 0))[0]

    def is_saturated(self, weight: Weight) -> bool:
        return tuple(weight) in self.saturated_at


def multiplicity_report(inv: InvariantSet, cutoff: int) -> MultiplicityLedger:
    if cutoff < 0:
        raise ValueError("cutoff must be non-negative")
    lie_type, rank = lie_type_of(inv.algebra)
    per_degree: dict[int, dict[Weight, int]] = {}
    running: Counter = Counter()
    saturated_at: dict[Weight, int] = {}
    for d in range(cutoff + 1):
        dec = decompose(graded_harmonic_character(inv, d), lie_type, rank)
        per_degree[d] = dec
        running.update(dec)
        for w in dec:
            if w not in saturated_at and running[w] == weyl_dimension(w, lie_type):
                saturated_at[w] = d
    order = sorted(running, key=lambda w: (weyl_dimension(w, lie_type), _graded_lex(w)))
    cumulative = {w: (running[w], weyl_dimension(w, lie_type)) for w in order}
    return MultiplicityLedger(lie_type, rank, cutoff, per_degree, cumulative, saturated_at)


def invariant_rank_check(ledger: MultiplicityLedger, module: Sequence[tuple[Weight, int]],
                         family: str = "", n: int = 0) -> VerificationReport:
    """Compare dim (H (x) V)^K = sum_eps n(eps) m(eps*) with dim V."""
    value = 0
    target = 0
    all_saturated = True
    for weight, mult in module:
        weight = tuple(weight)
        dual = contragredient(weight, ledger.lie_type)
        value += mult * ledger.multiplicity(dual)
        target += mult * weyl_dimension(weight, ledger.lie_type)
        all_saturated &= ledger.is_saturated(dual)
    if value > target:
        status = FAIL
    elif all_saturated:
        status = PASS if value == target else FAIL
    else:
        status = OPEN
    return VerificationReport(
        id="invariant-rank",
        family=family,
        n=n,
        params={"cutoff": ledger.cutoff, "module": [[list(w), m] for w, m in module]},
        expected=target,
        computed=value,
        status=status,
    )
