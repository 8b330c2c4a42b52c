from fractions import Fraction

import pytest

from jps.complexes import DegreeError, rho_form
from jps.homology import (CLOSED_FORMS, STAR_SIGNS, GradedMap, RationalSeries,
                          UnsupportedStructureError, assemble_matrix, boundary_map, casimir_count,
                          chain_to_vector, cohomology_dims, euler_check, form_basis, form_dim,
                          homology_dims, kernel_dims, map_rank, multideriv_dim,
                          predicted_homology_series, predicted_kernel_series,
                          star_intertwining_sign, taylor_coeffs, vector_to_chain)
from jps.linalg import rank
from jps.poisson import PoissonStructure, j_preset, k_preset
from jps.polyring import COORDS, STANDARD_WEIGHTS, WeightVector

X1, X2, X3, X4 = COORDS
W = STANDARD_WEIGHTS


@pytest.fixture(scope="module")
def J235():
    return j_preset(2, 3, 5)


@pytest.fixture(scope="module")
def dims_J235(J235):
    return homology_dims(J235, 8)


def test_form_dims():
    # Omega^k_d with unit weights: C(4,k) * dim A_{d-k}
    assert [form_dim(k, 4, W) for k in range(5)] == [35, 80, 60, 16, 1]
    assert form_dim(4, 3, W) == 0
    assert len(form_basis(2, 3, W)) == form_dim(2, 3, W) == 24
    assert multideriv_dim(4, -4, W) == 1


def test_vector_roundtrip():
    c = rho_form(W)
    v = chain_to_vector(c, 4, W)
    assert vector_to_chain(3, 4, W, v) == c
    with pytest.raises(ValueError):
        chain_to_vector(c, 5, W)


def test_casimir_count():
    assert [casimir_count(d, 2, 2) for d in range(7)] == [1, 0, 2, 0, 3, 0, 4]
    assert casimir_count(-1, 2, 2) == 0
    assert [casimir_count(d, 2, 3) for d in range(7)] == [1, 0, 1, 1, 1, 1, 2]


def test_graded_map_validation():
    with pytest.raises(DegreeError):
        GradedMap("boundary", 0)
    with pytest.raises(ValueError):
        GradedMap("koszul", 1)
    with pytest.raises(ValueError):
        GradedMap("laplace", 1)


def test_modular_rank_agrees(J235):
    # the fast rank path agrees with the exact one on every slice d <= 8
    for k in range(1, 5):
        for d in range(9):
            if form_dim(k, d, W):
                M = assemble_matrix(J235, boundary_map(k), d)
                assert rank(M, "modular") == rank(M, "exact"), (k, d)


def test_boundary_matrices_compose_to_zero(J235):
    for k in range(2, 5):
        for d in range(5):
            A = assemble_matrix(J235, boundary_map(k), d).to_dense()
            B = assemble_matrix(J235, boundary_map(k - 1), d).to_dense()
            if not A or not B or not A[0]:
                continue
            prod = [[sum(B[i][t] * A[t][j] for t in range(len(A))) for j in range(len(A[0]))]
                    for i in range(len(B))]
            assert all(v == 0 for row in prod for v in row)


def test_derham_is_exact_in_positive_degree(J235):
    # Poincare lemma: dim ker d_k = rank d_{k-1} for d > 0
    for d in range(1, 6):
        for k in range(1, 4):
            ker = form_dim(k, d, W) - map_rank(J235, GradedMap("derham", k), d)
            assert ker == map_rank(J235, GradedMap("derham", k - 1), d)


def test_homology_rows(dims_J235):
    assert dims_J235[0] == [1, 4, 4, 8, 7, 12, 10, 16, 13]
    assert dims_J235[3] == dims_J235[4] == [0, 0, 0, 0, 1, 0, 2, 0, 3]


def test_closed_forms_printed():
    assert str(CLOSED_FORMS[0]) == "(1 + 4*t + 2*t^2) / (1 - 2*t^2 + t^4)"
    assert taylor_coeffs(CLOSED_FORMS[1], 6) == [0, 4, 4, 12, 9, 20, 14]
    with pytest.raises(ValueError):
        RationalSeries((1,), (0, 1))
    assert taylor_coeffs(RationalSeries((1,), (2,)), 2, integral=False) == [Fraction(1, 2), 0, 0]
    with pytest.raises(ValueError):
        taylor_coeffs(RationalSeries((1,), (2,)), 2)


def test_euler_balance(J235, dims_J235):
    for d in range(9):
        chain, hom = euler_check(J235, d, dims_J235)
        assert chain == hom
    assert euler_check(J235, 4, dims_J235) == (0, 0)


def test_predicted_kernels_match(J235):
    for i in range(1, 5):
        assert predicted_kernel_series(J235, i, 8) == kernel_dims(J235, i, 8), i


def test_predicted_homology_matches(J235, dims_J235):
    assert predicted_homology_series(J235, 8) == dims_J235


def test_weighted_structure_has_sensible_homology():
    w = WeightVector((1, 1, 1, 3))
    S = PoissonStructure(X1 ** 2 + X2 ** 2 + X3 ** 2, X4 * X1 + X2 ** 4 + X3 ** 4, 1, w)
    dims = homology_dims(S, 5)
    assert all(v >= 0 for row in dims for v in row)
    assert dims[4][:w.total] == [0] * w.total
    with pytest.raises(UnsupportedStructureError):
        predicted_kernel_series(S, 3, 4)


def test_star_signs(J235):
    for k, eps in STAR_SIGNS.items():
        seen = {star_intertwining_sign(J235, k, d) for d in range(9)}
        assert seen <= {0, eps} and eps in seen, k


def test_cohomology_duality(J235):
    co = cohomology_dims(J235, 6)
    hom = homology_dims(J235, 6)
    for i in range(5):
        for d, v in co[i].items():
            assert v == hom[4 - i][d + 4]
    assert co[0][0] == 1  # the constants


def test_parallel_matches_serial():
    S = k_preset(Fraction(5, 3))
    assert homology_dims(S, 5, jobs=2) == homology_dims(S, 5, jobs=1)
