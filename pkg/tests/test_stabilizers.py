import random

import numpy as np
import pytest
import sympy

from harmonia import linalg
from harmonia.invariants import generator_polynomials
from harmonia.liealg import SO_EVEN, SO_ODD, SU, Family, NotInAlgebra, bracket, build_algebra, is_zero_matrix, zeros
from harmonia.stabilizers import (
    bracket_rank,
    centralizer_in_k,
    exp_nilpotent,
    explicit_centralizer,
    jordan_block,
    nilpotent_k_directions,
    orbit_dimension,
    pattern_constraints,
    principal_nilpotent_x0,
    random_k_conjugate,
    trivial_stabilizer_element,
    variety_samples,
    verify_centralizer_structure,
    verify_nilpotent_variety,
    verify_trivial_stabilizer,
)

STABILIZER_CASES = [(SU, n) for n in (1, 2, 3, 4)] + [(t, n) for t in (SO_EVEN, SO_ODD) for n in (1, 2, 3)]


def test_su2_element_is_jordan_block():
    x = trivial_stabilizer_element(Family(SU, 2)).x
    assert np.array_equal(x, np.array([[0, 1, 0], [0, 0, 1], [0, 0, 0]], dtype=object))


def test_so_odd1_element():
    x = trivial_stabilizer_element(Family(SO_ODD, 1)).x
    expected = [[0, 0, 1, 0], [0, 0, 0, 1], [0, -1, 0, 0], [-1, 0, 0, 0]]
    assert x.tolist() == expected


def test_so_odd_element_is_signed_permutation():
    for n in (1, 2, 3):
        x = trivial_stabilizer_element(Family(SO_ODD, n)).x
        assert all(sorted(abs(v) for v in row) == [0] * (len(row) - 1) + [1] for row in x.tolist())


def test_so_even2_decomposition():
    elem = trivial_stabilizer_element(Family(SO_EVEN, 2))
    alg = build_algebra(SO_EVEN, 2)
    assert np.array_equal(elem.x, elem.x0 + elem.y)
    assert np.array_equal(alg.project_to_k(elem.x), elem.x0)
    assert elem.y[2, 4] == 1 and elem.y[4, 0] == -1
    assert elem.x0[0, 1] == 1 and elem.x0[0, 3] == 1 and elem.x0[1, 2] == -1


@pytest.mark.parametrize("tag,n", STABILIZER_CASES)
def test_trivial_centralizer_and_orbit_dimension(tag, n):
    alg = build_algebra(tag, n)
    x = trivial_stabilizer_element(Family(tag, n)).x
    assert alg.contains(x) and alg.satisfies_relation(x)
    assert centralizer_in_k(x, alg).dimension == 0
    assert orbit_dimension(x, alg) == alg.dim_k == alg.dim - alg.rank_g - alg.rank_k
    assert bracket_rank(x, alg) == alg.dim_k


@pytest.mark.parametrize("tag,n", STABILIZER_CASES)
def test_verify_reports_pass(tag, n):
    report = verify_trivial_stabilizer(tag, n)
    assert report.status == "pass"
    assert report.computed["orbit_dim"] == build_algebra(tag, n).dim_k


def test_verify_records_generator_values():
    report = verify_trivial_stabilizer(SO_ODD, 2)
    assert report.computed["orbit_dim"] == 10
    assert len(report.params["xi"]) == 3 and len(report.params["eta"]) == 2


@pytest.mark.parametrize("n", [1, 2, 3])
def test_x0_centralizer(n):
    alg = build_algebra(SO_EVEN, n)
    x0 = principal_nilpotent_x0(n)
    cent = centralizer_in_k(x0, alg)
    assert cent.dimension == n
    for z in cent.basis:
        assert is_zero_matrix(bracket(z, x0))
    assert orbit_dimension(x0, alg) == alg.dim_k - n


def test_orbit_dimension_examples():
    alg = build_algebra(SU, 2)
    assert orbit_dimension(zeros(3), alg) == 0
    assert orbit_dimension(principal_nilpotent_x0(2), build_algebra(SO_EVEN, 2)) == 4
    with pytest.raises(NotInAlgebra):
        centralizer_in_k(np.identity(3, dtype=object), alg)


@pytest.mark.parametrize("tag,n", [(SU, 2), (SO_EVEN, 2), (SO_ODD, 1)])
def test_centralizer_matches_sympy_and_is_complete(tag, n):
    alg = build_algebra(tag, n)
    rng = random.Random(7)
    for _ in range(4):
        x = alg.element([rng.choice([0, 0, 1, -1, 2]) for _ in range(alg.dim)])
        cent = centralizer_in_k(x, alg)
        images = sympy.Matrix([list(bracket(z, x).flat) for z in alg.k_basis]).T
        assert cent.dimension == len(images.nullspace())
        for z in cent.basis:
            assert is_zero_matrix(bracket(z, x))
        # adding any k-basis vector outside the span raises the rank
        span = [list(v.get(a, 0) for a in range(alg.dim_k)) for v in cent.coordinates]
        base = linalg.matrix_rank(span) if span else 0
        for a in range(alg.dim_k):
            e = [int(a == b) for b in range(alg.dim_k)]
            if linalg.matrix_rank(span + [e]) > base:
                assert not is_zero_matrix(bracket(alg.k_basis[a], x))


def test_exp_nilpotent_inverse_and_failure():
    n = jordan_block(3)
    assert np.array_equal(exp_nilpotent(n, 2).dot(exp_nilpotent(n, -2)), np.identity(3, dtype=object))
    with pytest.raises(ValueError):
        exp_nilpotent(np.identity(2, dtype=object))


@pytest.mark.parametrize("tag,n", [(SU, 2), (SO_EVEN, 2), (SO_ODD, 2)])
def test_orbit_dimension_and_invariants_constant_on_conjugates(tag, n):
    alg = build_algebra(tag, n)
    inv = generator_polynomials(alg)
    x = trivial_stabilizer_element(Family(tag, n)).x
    values = inv.values_at(x)
    rng = random.Random(3)
    for _ in range(5):
        y = random_k_conjugate(x, alg, rng)
        assert alg.contains(y)
        assert orbit_dimension(y, alg) == alg.dim_k
        assert inv.values_at(y) == values
    assert nilpotent_k_directions(alg)


def test_explicit_matrices_commute_with_x0():
    for n in (6, 7):
        alg = build_algebra(SO_EVEN, n)
        x0 = principal_nilpotent_x0(n)
        for i in range(n):
            a, b = explicit_centralizer(n, [int(j == i) for j in range(7)])
            z = zeros(2 * n + 1)
            z[:n, :n], z[:n, n:2 * n], z[n:2 * n, n:2 * n] = a, b, -a.T
            assert alg.contains(z)
            assert is_zero_matrix(bracket(z, x0))
    with pytest.raises(ValueError):
        explicit_centralizer(5, [0] * 7)


@pytest.mark.parametrize("n", range(2, 8))
def test_centralizer_structure(n):
    report = verify_centralizer_structure(n)
    assert report.status == "pass", report.computed
    assert report.computed["centralizer_dim"] == n


def test_pattern_first_row_odd():
    # n = 7: first row of B is 0 a1 0 a2 0 a3 a4
    row = [form for blk, (r, c), form in pattern_constraints(7) if blk == "B" and r == 0][:7]
    assert row == [{}, {1: 1}, {}, {2: 1}, {}, {3: 1}, {4: 1}]


def test_centralizer_structure_bounds():
    with pytest.raises(ValueError):
        verify_centralizer_structure(8)


@pytest.mark.parametrize("tag", [SU, SO_EVEN, SO_ODD])
def test_nilpotent_variety_sampler(tag):
    report = verify_nilpotent_variety(tag, 1, count=60, seed=5)
    assert report.status == "pass"
    tally = report.computed["tally"]
    assert tally["in_N"] > 0 and tally["neither"] > 0
    kinds = {k for k, _ in variety_samples(build_algebra(tag, 1), 12, seed=5)}
    assert len(kinds) == 6
