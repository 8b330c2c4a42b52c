"""The ten acceptance criteria, one test each.

Every criterion prints a PASS/FAIL line in the pytest terminal summary (see
conftest.py).  Running this file directly prints the same lines.
"""
import json
import random
import subprocess
import sys
import time
from fractions import Fraction
from itertools import combinations

import pytest

from jps.complexes import (PAYLOAD_SIZE, ChainElement, MultiDerivation, boundary_from_definition, coboundary,
                           derham_d, modular_check, poisson_boundary)
from jps.homology import (STAR_SIGNS, basis_chain, closed_form_series, euler_check, form_basis,
                          form_dim, homology_dims, multideriv_basis, star_intertwining_sign,
                          taylor_coeffs)
from jps.identities import IDENTITIES, check_identity, random_poly
from jps.modcheck import (generator_family, kernel_characterization_check,
                          koszul_exactness_check, milnor_dims, resolve_h2_sixth, saito_division_check,
                          verify_generators)
from jps.poisson import expected_k_table, is_casimir, j_preset, jacobiator, k_preset
from jps.polyring import COORDS, STANDARD_WEIGHTS, Poly, parse_poly

W = STANDARD_WEIGHTS
N = 12
GENERIC_J = [(2, 3, 5), (3, 5, 7), (-2, 4, Fraction(1, 2))]
GENERIC_K = [2, Fraction(5, 3)]


def presets():
    return [j_preset(2, 3, 5), k_preset(2), k_preset(Fraction(5, 3))]


@pytest.mark.criterion(1, "19 operator identities, >= 100 random inputs each, < 30 s")
def test_identities():
    t = time.perf_counter()
    bad = {}
    for item in IDENTITIES:
        ok, failures = check_identity(item, random.Random(7000 + item), 100)
        if not ok:
            bad[item] = failures
    elapsed = time.perf_counter() - t
    print(f"identities: {19 - len(bad)}/19 in {elapsed:.1f} s")
    assert not bad
    assert elapsed < 30


@pytest.mark.criterion(2, "k-form bracket table verbatim at k = 2 and 5/3 (lambda = -1)")
def test_bracket_table():
    for k in GENERIC_K:
        S = k_preset(k)
        assert S.lam == -1
        for (i, j), v in expected_k_table(k).items():
            assert S.pi[i, j] == v


@pytest.mark.criterion(3, "Jacobi, Casimir and unimodularity exact on both presets")
def test_structure_validity():
    for S in presets():
        for a, b, c in combinations(COORDS, 3):
            assert jacobiator(S, a, b, c).is_zero()
        assert is_casimir(S, S.P1) and is_casimir(S, S.P2)
        D2, ok = modular_check(S)
        assert ok and D2.is_zero()


@pytest.mark.criterion(4, "boundary^2 = coboundary^2 = d^2 = 0, compact = raw boundary, star signs")
def test_complex_properties():
    S = j_preset(2, 3, 5)
    K = k_preset(2)
    # squares vanish on every basis element of the low-degree slices
    for d in range(6):
        for k in range(2, 5):
            for j, m in form_basis(k, d, W):
                c = basis_chain(k, j, m)
                assert poisson_boundary(S, poisson_boundary(S, c)).is_zero()
        for k in range(3):
            for j, m in form_basis(k, d, W):
                assert derham_d(derham_d(basis_chain(k, j, m))).is_zero()
    for d in range(-4, 2):
        for k in range(3):
            for I, m in multideriv_basis(k, d, W):
                Q = MultiDerivation(k, {I: Poly.monomial(m)})
                assert coboundary(S, coboundary(S, Q)).is_zero()
    # compact formula against the term-by-term definition on sampled chains
    rng = random.Random(44)
    for T in (S, K):
        for k in range(1, 5):
            for _ in range(10):
                slots = [random_poly(rng, max_deg=3, max_terms=4) for _ in range(PAYLOAD_SIZE[k])]
                c = ChainElement.from_slots(k, slots)
                assert poisson_boundary(T, c) == boundary_from_definition(T, c)
    # star o coboundary o star^-1 = eps_k boundary, slice by slice
    for T in (S, K):
        for k, eps in STAR_SIGNS.items():
            seen = {star_intertwining_sign(T, k, d) for d in range(9)}
            assert seen <= {0, eps} and eps in seen
    print(f"star signs eps_k = {[STAR_SIGNS[k] for k in range(4)]}")


def _series_ok(S):
    dims = homology_dims(S, N)
    expected = [taylor_coeffs(closed_form_series(i), N) for i in range(5)]
    return dims == expected, dims


@pytest.mark.criterion(5, "homology dims d <= 12 equal the five closed-form series (3 J triples, 2 k values)")
def test_series_reproduction():
    for J in GENERIC_J:
        ok, dims = _series_ok(j_preset(*J))
        assert ok, (J, dims)
    for k in GENERIC_K:
        S = k_preset(k)
        assert milnor_dims(S.P1, S.P2, 8).finite
        ok, dims = _series_ok(S)
        assert ok, (k, dims)


@pytest.mark.criterion(6, "Euler characteristic balance for d <= 12")
def test_euler_balance():
    S = j_preset(2, 3, 5)
    dims = homology_dims(S, N)
    for d in range(N + 1):
        chain, hom = euler_check(S, d, dims)
        assert chain == hom
    assert [form_dim(k, 4, W) for k in range(5)] == [35, 80, 60, 16, 1]
    assert [dims[k][4] for k in range(5)] == [7, 9, 2, 1, 1]


@pytest.mark.criterion(7, "Milnor algebra dims (1,4,2), mu = 7, matching generator degrees")
def test_milnor():
    S = j_preset(2, 3, 5)
    r = milnor_dims(S.P1, S.P2, 8)
    assert r.graded_dims[:3] == (1, 4, 2) and not any(r.graded_dims[3:])
    assert r.mu == 7
    degs = sorted(d for _, d in generator_family(S, 0).elements)
    assert degs == [0, 1, 1, 1, 1, 2, 2]


@pytest.mark.criterion(8, "generator families of H_0..H_4 span and are free up to d = 12")
def test_generators():
    S = j_preset(2, 3, 5)
    for i in (0, 1, 3, 4):
        r = verify_generators(S, i, N)
        assert r.spans and r.free, i
    runs = resolve_h2_sixth(S, N)
    summary = {k: (v.spans, v.free) for k, v in runs.items()}
    print(f"H2 sixth generator readings (spans, free): {summary}")
    assert runs["P1xP2"].spans and runs["P1xP2"].free
    assert not runs["printed"].spans


@pytest.mark.criterion(9, "kernel descriptions and division lemmas for d <= 8; Koszul exactness")
def test_kernels_division_koszul():
    for S in (j_preset(2, 3, 5), k_preset(2)):
        for d in range(9):
            for i in range(1, 5):
                assert kernel_characterization_check(S, i, d), (S.name, i, d)
            assert saito_division_check(S, d), (S.name, d)
    morse = parse_poly("x1^2 + x2^2 + x3^2 + x4^2")
    assert all(koszul_exactness_check(morse, d) for d in range(7))
    x1x2 = COORDS[0] * COORDS[1]
    assert not all(koszul_exactness_check(x1x2, d) for d in range(7))


@pytest.mark.criterion(10, "identical config and seed give byte-identical JSON reports")
def test_determinism(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("preset = sklyanin-J\nJ = 2,3,5\nmax-degree = 6\nseed = 7\n")
    outs = []
    for _ in range(2):
        proc = subprocess.run([sys.executable, "-m", "jps.cli", "verify", "--config", str(cfg)],
                              capture_output=True)
        assert proc.returncode == 0, proc.stderr
        outs.append(proc.stdout)
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["checks"]


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
