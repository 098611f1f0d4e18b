import itertools
from collections import Counter

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from harmonia.invariants import generator_polynomials
from harmonia.liealg import SO_EVEN, SO_ODD, SU, build_algebra
from harmonia.repthy import (
    DecompositionError,
    NotDominant,
    TorusCharacter,
    compose,
    contragredient,
    decompose,
    graded_harmonic_character,
    invariant_rank_check,
    irreducible_character,
    is_dominant,
    multiplicity_report,
    polynomial_character,
    weyl_dimension,
    weyl_group_elements,
)


def vector_weights(lie_type, rank):
    ws = []
    for i in range(rank):
        e = [0] * rank
        e[i] = 1
        ws.append(tuple(e))
        if lie_type != "A":
            ws.append(tuple(-v for v in e))
    if lie_type == "B":
        ws.append((0,) * rank)
    return ws


def sym_power_character(weights, d, rank):
    counts = Counter()
    for combo in itertools.combinations_with_replacement(weights, d):
        counts[tuple(map(sum, zip(*combo))) if combo else (0,) * rank] += 1
    return TorusCharacter(rank, dict(counts))


def test_weyl_group_orders():
    assert len(weyl_group_elements("B", 2)) == 8
    assert len(weyl_group_elements("D", 2)) == 4
    assert len(weyl_group_elements("A", 2)) == 2
    assert len(weyl_group_elements("B", 3)) == 48
    with pytest.raises(ValueError):
        weyl_group_elements("B", 5)


def test_small_characters():
    assert irreducible_character((1, 0), "A").terms == {(1, 0): 1, (0, 1): 1}
    adj = irreducible_character((1, -1), "A")
    assert adj.terms == {(1, -1): 1, (0, 0): 1, (-1, 1): 1}
    assert irreducible_character((1,), "B").terms == {(1,): 1, (0,): 1, (-1,): 1}
    assert irreducible_character((1, 1), "B").dimension == 10
    assert irreducible_character((0, 0), "D").terms == {(0, 0): 1}


def test_not_dominant():
    with pytest.raises(NotDominant):
        irreducible_character((0, 1), "A")
    with pytest.raises(NotDominant):
        irreducible_character((1, -1), "B")
    assert is_dominant((1, -1), "D")


@pytest.mark.parametrize("lie_type,rank", [("A", 2), ("A", 3), ("B", 1), ("B", 2), ("D", 2), ("D", 3)])
@pytest.mark.parametrize("d", [1, 2, 3])
def test_symmetric_powers_oracle(lie_type, rank, d):
    # type A: S^d V is irreducible; orthogonal: S^d V = V_(d) + S^(d-2) V
    weights = vector_weights(lie_type, rank)
    top = (d,) + (0,) * (rank - 1)
    expected = sym_power_character(weights, d, rank)
    if lie_type != "A" and d >= 2:
        expected = expected - sym_power_character(weights, d - 2, rank)
    assert irreducible_character(top, lie_type, rank) == expected


@pytest.mark.parametrize("rank", [2, 3])
def test_type_a_against_schur_bialternant(rank):
    z = sympy.symbols(f"z0:{rank}")
    for lam in [(2, 1, 0)[:rank], (3, 1, 0)[:rank], (2, 0, -1)[:rank]]:
        if not is_dominant(lam, "A"):
            continue
        shift = -min(lam)
        mu = [v + shift for v in lam]
        num = sympy.Matrix(rank, rank, lambda i, j: z[i] ** (mu[j] + rank - 1 - j)).det()
        den = sympy.Matrix(rank, rank, lambda i, j: z[i] ** (rank - 1 - j)).det()
        schur = sympy.Poly(sympy.cancel(num / den), *z)
        expected = {tuple(e - shift for e in m): int(c) for m, c in schur.terms()}
        assert irreducible_character(lam, "A").terms == expected


dominant_b2 = st.tuples(st.integers(0, 3), st.integers(0, 3)).map(lambda t: (max(t), min(t)))
dominant_d2 = st.tuples(st.integers(0, 3), st.integers(-3, 3)).filter(lambda t: t[0] >= abs(t[1]))
dominant_a3 = st.tuples(st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2)).map(
    lambda t: tuple(sorted(t, reverse=True)))


@settings(max_examples=25, deadline=None)
@given(st.one_of(dominant_b2.map(lambda w: ("B", w)), dominant_d2.map(lambda w: ("D", w)),
                 dominant_a3.map(lambda w: ("A", w))))
def test_character_properties(case):
    lie_type, w = case
    ch = irreducible_character(w, lie_type)
    assert ch.dimension == weyl_dimension(w, lie_type)
    assert ch.is_weyl_symmetric(lie_type)
    assert ch.terms[w] == 1
    dual = irreducible_character(contragredient(w, lie_type), lie_type)
    assert dual.terms == {tuple(-v for v in k): m for k, m in ch.terms.items()}


@settings(max_examples=20, deadline=None)
@given(st.dictionaries(dominant_b2, st.integers(1, 3), min_size=1, max_size=3))
def test_decompose_compose_round_trip(mults):
    assert decompose(compose(mults, "B", 2), "B", 2) == dict(
        sorted(mults.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True))


def test_decompose_rejects_non_characters():
    with pytest.raises(DecompositionError):
        decompose(TorusCharacter(1, {(1,): 1}), "B")
    with pytest.raises(DecompositionError):
        decompose(TorusCharacter(1, {(0,): -1}), "B")


def test_contragredient():
    assert contragredient((2, 0, -1), "A") == (1, 0, -2)
    assert contragredient((1, 1, -1), "D") == (1, 1, 1)
    assert contragredient((1, -1), "D") == (1, -1)
    assert contragredient((2, 1), "B") == (2, 1)


def test_polynomial_character_degree_one_is_coadjoint():
    alg = build_algebra(SU, 2)
    ch = polynomial_character(alg, 1)
    assert ch.dimension == alg.dim
    assert decompose(ch, "A", 2) == {(2, 1): 1, (1, -1): 1, (0, 0): 1, (-1, -2): 1}


@pytest.mark.parametrize("key,cutoff", [((SU, 1), 6), ((SU, 2), 3), ((SO_ODD, 1), 4), ((SO_EVEN, 2), 3)])
def test_character_paths_agree(key, cutoff):
    inv = generator_polynomials(build_algebra(*key))
    for d in range(cutoff + 1):
        assert graded_harmonic_character(inv, d, "kernel") == graded_harmonic_character(inv, d, "series")
    with pytest.raises(ValueError):
        graded_harmonic_character(inv, 1, "other")


def test_su1_ledger_saturates_every_weight():
    inv = generator_polynomials(build_algebra(SU, 1))
    ledger = multiplicity_report(inv, 8)
    assert not ledger.violations
    assert set(ledger.cumulative) == {(w,) for w in range(-16, 17, 2)}
    assert all(ledger.is_saturated(w) for w in ledger.cumulative)
    assert ledger.saturated_at[(16,)] == 8 and ledger.saturated_at[(0,)] == 0


def test_so_odd1_ledger():
    inv = generator_polynomials(build_algebra(SO_ODD, 1))
    ledger = multiplicity_report(inv, 4)
    assert not ledger.violations
    assert ledger.saturated_at[(0,)] == 0
    assert ledger.saturated_at[(1,)] == 2
    assert ledger.saturated_at[(2,)] == 3


def test_su2_ledger():
    inv = generator_polynomials(build_algebra(SU, 2))
    ledger = multiplicity_report(inv, 4)
    assert not ledger.violations
    assert ledger.saturated_at[(0, 0)] == 0
    assert ledger.saturated_at[(3, 3)] == 3 and ledger.saturated_at[(-3, -3)] == 3
    assert ledger.saturated_at[(2, 1)] == 2


def test_invariant_rank_check_statuses():
    inv = generator_polynomials(build_algebra(SO_ODD, 1))
    ledger = multiplicity_report(inv, 4)
    assert invariant_rank_check(ledger, [((1,), 2), ((0,), 1)]).status == "pass"
    assert invariant_rank_check(ledger, [((1,), 1)]).computed == 3
    early = multiplicity_report(inv, 1)
    assert invariant_rank_check(early, [((2,), 1)]).status == "open"
    with pytest.raises(ValueError):
        multiplicity_report(inv, -1)
