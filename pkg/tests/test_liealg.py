import itertools
import random

import numpy as np
import pytest

from harmonia import linalg
from harmonia.liealg import (
    FAMILIES,
    SO_EVEN,
    SO_ODD,
    SU,
    Family,
    NotInAlgebra,
    bracket,
    build_algebra,
    coadjoint_derivation,
    expected_dims,
    is_zero_matrix,
    torus_weights,
    unit,
)
from harmonia.invariants import trace_power
from harmonia.ratpoly import Polynomial

CASES = [(f, n) for f in FAMILIES for n in (1, 2, 3)]


@pytest.mark.parametrize("tag,n,dims", [
    (SU, 2, (8, 4, 2, 2)),
    (SO_EVEN, 2, (10, 6, 2, 2)),
    (SO_ODD, 1, (6, 3, 2, 1)),
])
def test_table_examples(tag, n, dims):
    assert build_algebra(tag, n).dims == dims


@pytest.mark.parametrize("tag", FAMILIES)
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_dims_match_closed_forms(tag, n):
    alg = build_algebra(tag, n)
    assert alg.dims == expected_dims(Family(tag, n))
    assert linalg.matrix_rank([list(b.flat) for b in alg.basis]) == alg.dim


def test_family_validation():
    with pytest.raises(ValueError):
        Family("sp", 1)
    with pytest.raises(ValueError):
        Family(SU, 0)


@pytest.mark.parametrize("tag,n", CASES)
def test_cartan_decomposition_inclusions(tag, n):
    alg = build_algebra(tag, n)
    k_idx, p_idx = set(alg.k_indices), set(alg.p_indices)
    for a, b in itertools.combinations_with_replacement(range(alg.dim), 2):
        coords = alg.coordinates(bracket(alg.basis[a], alg.basis[b]))
        support = {i for i, c in enumerate(coords) if c}
        both_k = a in k_idx and b in k_idx
        both_p = a in p_idx and b in p_idx
        if both_k or both_p:
            assert support <= k_idx
        else:
            assert support <= p_idx
    for b in alg.basis:
        assert alg.satisfies_relation(b)


@pytest.mark.parametrize("tag,n", CASES)
def test_form_is_symmetric_invariant_nondegenerate(tag, n):
    alg = build_algebra(tag, n)
    assert linalg.determinant(alg.gram) != 0
    rng = random.Random(n)
    for _ in range(5):
        z = alg.basis[rng.randrange(alg.dim_k)]
        x = alg.element([rng.randint(-2, 2) for _ in range(alg.dim)])
        y = alg.element([rng.randint(-2, 2) for _ in range(alg.dim)])
        assert alg.form_value(x, y) == alg.form_value(y, x)
        assert alg.form_value(bracket(z, x), y) + alg.form_value(x, bracket(z, y)) == 0


def test_sl2_relations():
    e, f, h = unit(2, {(0, 1): 1}), unit(2, {(1, 0): 1}), unit(2, {(0, 0): 1, (1, 1): -1})
    assert np.array_equal(bracket(e, f), h)
    assert np.array_equal(bracket(h, e), 2 * e)
    assert is_zero_matrix(bracket(e, e))
    alg = build_algebra(SU, 1)
    assert alg.form_value(e, f) == 1


@pytest.mark.parametrize("tag,n", CASES)
def test_projection(tag, n):
    alg = build_algebra(tag, n)
    coords = list(range(1, alg.dim + 1))
    x = alg.element(coords)
    xk = alg.element(coords[:alg.dim_k] + [0] * (alg.dim - alg.dim_k))
    assert np.array_equal(alg.project_to_k(x), xk)
    assert np.array_equal(alg.project_to_k(xk), xk)
    assert is_zero_matrix(alg.project_to_k(x - xk))


def test_coordinates_reject_outside_span():
    alg = build_algebra(SU, 2)
    with pytest.raises(NotInAlgebra):
        alg.coordinates(unit(3, {(0, 0): 1}))
    with pytest.raises(NotInAlgebra):
        alg.coordinates(unit(2, {(0, 1): 1}))
    assert not build_algebra(SO_EVEN, 2).contains(unit(5, {(0, 1): 1}))


def test_su1_torus_weights():
    data = torus_weights(build_algebra(SU, 1))
    assert sorted(w[0] for w in data.weights) == [-2, 0, 2]


def test_su2_torus_weights():
    alg = build_algebra(SU, 2)
    k_weights = sorted(alg.weights[a] for a in alg.k_indices)
    assert k_weights == [(-1, 1), (0, 0), (0, 0), (1, -1)]
    p_weights = sorted(alg.weights[a] for a in alg.p_indices)
    # torus diag(t1, t2, 1/(t1 t2)): E_{i3} has weight e_i + e_1 + e_2
    assert p_weights == [(-2, -1), (-1, -2), (1, 2), (2, 1)]
    assert torus_weights(alg).zero_weight_count() == alg.rank_g


@pytest.mark.parametrize("tag,n", CASES)
def test_weights_sum_to_zero_and_are_symmetric(tag, n):
    alg = build_algebra(tag, n)
    ws = alg.weights
    assert all(sum(c) == 0 for c in zip(*ws))
    assert sorted(ws) == sorted(tuple(-c for c in w) for w in ws)
    assert torus_weights(alg).zero_weight_count() >= alg.rank_k


@pytest.mark.parametrize("tag,n", CASES)
def test_coadjoint_derivation_kills_trace_form(tag, n):
    alg = build_algebra(tag, n)
    f = trace_power(alg.generic_element(), 2)
    for z in alg.k_indices:
        assert coadjoint_derivation(z, f, alg).is_zero()
        assert coadjoint_derivation(z, Polynomial.constant(3, alg.dim), alg).is_zero()


def test_coadjoint_derivation_on_su11_p_coordinate():
    alg = build_algebra(SU, 1)
    a = alg.p_indices[0]
    c = Polynomial.variable(a, alg.dim)
    image = coadjoint_derivation(alg.torus[0], c, alg)
    # coordinate functions carry the negated adjoint weight
    assert image == c.scale(-alg.weights[a][0])
    assert not image.is_zero()
