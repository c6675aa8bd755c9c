import numpy as np
import pytest

from chm import (basis_simplex, bloch_dot, density_from_vector, density_matrix, fourier,
                 hs_distance, maximally_mixed, mub_prime, span_rank, sphere_radii,
                 total_orthogonality)


def test_density_from_vector():
    np.testing.assert_allclose(density_from_vector([1, 0]), np.diag([1, 0]))
    np.testing.assert_allclose(density_from_vector(np.array([1, 1]) / np.sqrt(2)), np.full((2, 2), 0.5))
    rho = density_from_vector(fourier(5)[:, 3])
    np.testing.assert_allclose(np.diag(rho).real, 0.2, atol=1e-15)
    assert abs(np.trace(rho @ rho) - 1) < 1e-12
    with pytest.raises(ValueError):
        density_from_vector([1, 1])


def test_density_matrix_admission():
    with pytest.raises(ValueError):
        density_matrix(np.diag([1.5, -0.5]))
    with pytest.raises(ValueError):
        density_matrix(np.array([[0.5, 1], [0, 0.5]]))
    with pytest.raises(ValueError):
        density_matrix(np.eye(2))


def test_hs_distance_values():
    rho = density_from_vector([0.6, 0.8j])
    assert hs_distance(rho, rho) == 0
    a = density_from_vector([1, 0])
    b = density_from_vector([0, 1])
    # a - b = diag(1, -1): (1/2)(1 + 1) = 1
    assert hs_distance(a, b) == pytest.approx(1.0, abs=1e-15)
    assert hs_distance(a, b) == hs_distance(b, a)
    for n in (2, 3, 5, 8):
        p = density_from_vector(np.eye(n)[0])
        # Tr(P - I/n)^2 = (1 - 1/n)^2 + (n - 1)/n^2 = (n - 1)/n
        assert hs_distance(p, maximally_mixed(n)) == pytest.approx(np.sqrt((n - 1) / (2 * n)), abs=1e-15)
    with pytest.raises(ValueError):
        hs_distance(np.eye(2) / 2, np.eye(3) / 3)


def test_bloch_dot_values():
    n = 4
    p = density_from_vector(fourier(n)[:, 1])
    assert bloch_dot(maximally_mixed(n), p) == pytest.approx(0, abs=1e-16)
    assert bloch_dot(p, p) == pytest.approx((n - 1) / (2 * n), abs=1e-15)
    assert bloch_dot(p, p) == pytest.approx(hs_distance(p, maximally_mixed(n)) ** 2, abs=1e-15)
    e = density_from_vector(np.eye(n)[2])
    assert bloch_dot(e, p) == pytest.approx(0, abs=1e-15)


def test_bloch_dot_identity_on_random_states():
    rng = np.random.default_rng(5)
    for n in (2, 3, 6):
        for _ in range(10):
            states = []
            for _ in range(2):
                g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
                r = g @ g.conj().T
                states.append(density_matrix(r / np.trace(r).real))
            a, b = states
            assert abs(bloch_dot(a, b) - (0.5 * np.trace(a @ b).real - 1 / (2 * n))) < 1e-12


@pytest.mark.parametrize("basis,dot", [(np.eye(3), -1 / 6), (fourier(4), -1 / 8), (np.eye(2), -1 / 4)])
def test_basis_simplex_regular(basis, dot):
    s = basis_simplex(basis)
    n = s.n
    g = s.gram()
    np.testing.assert_allclose(np.diag(g), (n - 1) / (2 * n), atol=1e-15)
    off = g[~np.eye(n, dtype=bool)]
    np.testing.assert_allclose(off, dot, atol=1e-15)
    np.testing.assert_allclose(s.centroid, maximally_mixed(n), atol=1e-12)


def test_basis_simplex_rejects_non_orthonormal():
    with pytest.raises(ValueError):
        basis_simplex(np.ones((2, 2)))


def test_sphere_radii():
    assert sphere_radii(2) == pytest.approx((0.5, 0.5, 1.0), abs=1e-15)
    for n in (3, 6):
        r_out, r_in, ratio = sphere_radii(n)
        assert r_out == pytest.approx(np.sqrt((n - 1) / (2 * n)), abs=1e-15)
        assert r_in == pytest.approx(np.sqrt(1 / (2 * n * (n - 1))), abs=1e-15)
        assert abs(ratio - (n - 1)) < 1e-12


def test_total_orthogonality():
    for n in (2, 3, 5):
        ok, m = total_orthogonality(basis_simplex(np.eye(n)), basis_simplex(fourier(n)))
        assert ok and m < 1e-15
        ok, m = total_orthogonality(basis_simplex(np.eye(n)), basis_simplex(np.eye(n)))
        assert not ok and m == pytest.approx((n - 1) / (2 * n))


def test_mub3_pairwise_orthogonal_planes():
    bases = mub_prime(3).bases
    simplices = [basis_simplex(b) for b in bases]
    count = 0
    for i in range(len(simplices)):
        for j in range(i + 1, len(simplices)):
            assert total_orthogonality(simplices[i], simplices[j])[0]
            count += 1
    assert count == 6


@pytest.mark.parametrize("p", [2, 3, 5])
def test_mub_planes_fill_bloch_space(p):
    simplices = [basis_simplex(b) for b in mub_prime(p).bases]
    assert span_rank(simplices) == p * p - 1
    assert span_rank(simplices[:1]) == p - 1
