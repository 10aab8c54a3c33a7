from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import sympy_rank
from surfrigid import numeric
from surfrigid.errors import ParameterError
from surfrigid.fixtures import fixture
from surfrigid.numeric import cokernel_basis, exact_array, is_psd, nullspace_basis, rank
from surfrigid.rigidity import surface_rigidity_matrix


def exact(rows):
    return exact_array(rows)


def test_rank_trivial():
    assert rank(exact(np.eye(3, dtype=int))) == 3
    assert rank(np.eye(3)) == 3
    assert rank(exact([[0, 0], [0, 0]])) == 0
    assert rank(np.zeros((2, 3))) == 0


def test_rank_k5e_fixture():
    R = surface_rigidity_matrix(fixture("K5_E").framework())
    assert rank(R) == 13
    assert rank(R.astype(float)) == 13


def test_cokernel_trivial():
    assert cokernel_basis(exact(np.eye(3, dtype=int))) == []
    basis = cokernel_basis(exact([[0, 0, 0]]))
    assert len(basis) == 1


def test_cokernel_k5e_is_paper_stress_direction():
    fx = fixture("K5_E")
    (v,) = cokernel_basis(surface_rigidity_matrix(fx.framework()))
    paper = np.array(fx.stress.vector(), dtype=object)
    c = paper[0] / v[0]
    assert all(c * a == b for a, b in zip(v, paper))


def test_nullspace_trivial():
    assert nullspace_basis(np.eye(4)) == []
    assert len(nullspace_basis(exact([[1, 0, 0]]))) == 2
    assert len(nullspace_basis(np.array([[1.0, 0.0, 0.0]]))) == 2


def test_nullspace_k5e_fixture_dimension_two():
    R = surface_rigidity_matrix(fixture("K5_E").framework())
    basis = nullspace_basis(R)
    assert len(basis) == 2
    for v in basis:
        assert all(x == 0 for x in R @ v)


def test_psd_examples():
    assert is_psd(exact(np.eye(3, dtype=int)))
    assert not is_psd(exact([[1, 0], [0, -1]]))
    k3 = [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]
    # eigenvalues of the triangle Laplacian are 0, 3, 3
    assert np.allclose(np.linalg.eigvalsh(np.array(k3, float)), [0, 3, 3])
    assert is_psd(exact(k3))
    assert is_psd(np.array(k3, dtype=float))
    assert not is_psd(np.diag([1.0, -1.0]))


def test_psd_zero_pivot_with_offdiagonal():
    assert not is_psd(exact([[0, 1], [1, 0]]))
    assert is_psd(exact([[0, 0], [0, 0]]))
    assert not is_psd(exact([[1, 0, 0], [0, 0, 2], [0, 2, 0]]))


def test_psd_rejects_nonsymmetric():
    with pytest.raises(ParameterError):
        is_psd(exact([[1, 2], [0, 1]]))


def test_primitive_integer_basis():
    (v,) = nullspace_basis(exact([[Fraction(1, 2), Fraction(1, 3)]]))
    assert [int(x) for x in v] in ([2, -3], [-2, 3])
    assert all(isinstance(x, Fraction) for x in v)


small_ints = st.integers(-5, 5)


@st.composite
def rational_matrices(draw, max_dim=8):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    k = draw(st.integers(0, min(r, c)))
    # product of random factors to force rank deficiency
    a = draw(st.lists(st.lists(small_ints, min_size=k, max_size=k), min_size=r, max_size=r))
    b = draw(st.lists(st.lists(small_ints, min_size=c, max_size=c), min_size=k, max_size=k))
    den = draw(st.integers(1, 4))
    M = [[Fraction(sum(a[i][t] * b[t][j] for t in range(k)), den) for j in range(c)] for i in range(r)]
    return exact_array(M)


@settings(max_examples=80, deadline=None)
@given(rational_matrices())
def test_rank_nullity(M):
    rows, cols = M.shape
    r = rank(M)
    assert r == sympy_rank(M)
    assert r + len(nullspace_basis(M)) == cols
    assert r + len(cokernel_basis(M)) == rows
    for v in nullspace_basis(M):
        assert all(x == 0 for x in M @ v)
    for v in cokernel_basis(M):
        assert all(x == 0 for x in v @ M)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 30), st.integers(1, 30), st.integers(0, 30), st.integers(0, 2**31))
def test_exact_and_float_backends_agree_on_integer_matrices(r, c, k, seed):
    rng = np.random.default_rng(seed)
    k = min(k, r, c)
    M = rng.integers(-10, 11, size=(r, k)) @ rng.integers(-10, 11, size=(k, c))
    M = np.clip(M, -1000, 1000)
    assert rank(exact(M.tolist())) == rank(M.astype(float))


def test_float_bases_annihilate_within_bound():
    rng = np.random.default_rng(0)
    M = rng.standard_normal((7, 4)) @ rng.standard_normal((4, 9))
    norm = np.linalg.norm(M)
    for v in nullspace_basis(M):
        assert np.linalg.norm(M @ v) <= numeric.DEFAULT_TOL * np.linalg.norm(v) * norm
    for v in cokernel_basis(M):
        assert np.linalg.norm(v @ M) <= numeric.DEFAULT_TOL * np.linalg.norm(v) * norm
    assert len(nullspace_basis(M)) == 5
    assert len(cokernel_basis(M)) == 3
