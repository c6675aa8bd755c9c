import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from chm import (PhaseGrid, dephase, fourier, haagerup_fingerprint, hadamard4, is_hadamard,
                 random_equivalent, tensor, unbiasedness)


def test_fourier_small_cases():
    np.testing.assert_allclose(fourier(2), np.array([[1, 1], [1, -1]]) / np.sqrt(2), atol=1e-15)
    np.testing.assert_allclose(fourier(4)[1], np.array([1, 1j, -1, -1j]) / 2, atol=1e-15)
    assert fourier(1).shape == (1, 1)


def test_fourier_rejects_zero():
    with pytest.raises(ValueError):
        fourier(0)


@pytest.mark.parametrize("n", range(1, 33))
def test_fourier_is_hadamard(n):
    r = is_hadamard(fourier(n), 1e-12)
    assert r.max_unitarity_residual < 1e-12 and r.max_modulus_deviation < 1e-12
    assert r.is_hadamard


def test_fourier_6_direct_formula():
    # entries straight from the definition, no shared helper
    n = 6
    direct = np.array([[np.exp(2j * np.pi * i * j / n) for j in range(n)] for i in range(n)]) / np.sqrt(n)
    np.testing.assert_allclose(fourier(n), direct, atol=1e-14)
    assert is_hadamard(direct).max_unitarity_residual < 1e-12


def test_tensor():
    f2 = fourier(2)
    m = hadamard4(np.exp(0.3j))
    np.testing.assert_array_equal(tensor(np.eye(1), m), m)
    h = tensor(f2, fourier(3))
    assert h.shape == (6, 6)
    assert is_hadamard(h, 1e-12).is_hadamard
    # F_2 x F_2 is real
    assert np.allclose(tensor(f2, f2).imag, 0)


def test_is_hadamard_examples():
    assert is_hadamard(fourier(5)).is_hadamard
    r = is_hadamard(np.eye(3))
    assert r.is_unitary and not r.is_flat
    assert r.max_modulus_deviation == pytest.approx(1 / np.sqrt(3))
    assert is_hadamard(hadamard4(np.exp(0.7j))).is_hadamard
    with pytest.raises(ValueError):
        is_hadamard(np.eye(2), tol=0)


def test_dephase_fourier_is_identity():
    d, l, r = dephase(fourier(5))
    np.testing.assert_allclose(d, fourier(5), atol=1e-15)
    np.testing.assert_allclose(l, 1)
    np.testing.assert_allclose(r, 1)


def test_dephase_cancels_diagonals():
    rng = np.random.default_rng(0)
    a = np.exp(1j * rng.uniform(0, 7, 3))
    b = np.exp(1j * rng.uniform(0, 7, 3))
    m = a[:, None] * fourier(3) * b[None, :]
    d, l, r = dephase(m)
    np.testing.assert_allclose(d, fourier(3), atol=1e-14)
    np.testing.assert_allclose(l[:, None] * m * r[None, :], d, atol=1e-15)


def test_dephase_scrambled_h4():
    rng = np.random.default_rng(1)
    h = hadamard4(np.exp(1.1j))
    m = np.exp(1j * rng.uniform(0, 7, 4))[:, None] * h
    d, _, _ = dephase(m)
    np.testing.assert_allclose(d[0], 0.5, atol=1e-15)
    np.testing.assert_allclose(d[:, 0], 0.5, atol=1e-15)
    np.testing.assert_allclose(d, h, atol=1e-14)


def test_dephase_rejects_zero_border():
    m = np.ones((3, 3), complex)
    m[2, 0] = 0
    with pytest.raises(ValueError):
        dephase(m)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 8), st.integers(0, 2**32 - 1))
def test_dephase_idempotent(n, seed):
    rng = np.random.default_rng(seed)
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    d = dephase(m)[0]
    assert np.max(np.abs(dephase(d)[0] - d)) < 1e-14


def test_phase_grid_reduces_and_applies():
    g = PhaseGrid(np.array([[-0.5, 2 * np.pi], [7.0, 0.1]]))
    assert np.all((g.phases >= 0) & (g.phases < 2 * np.pi))
    np.testing.assert_allclose(g.apply(np.ones((2, 2))), np.exp(1j * np.array([[-0.5, 0], [7, 0.1]])))


def _fingerprint_bruteforce(m, tol):
    n = m.shape[0]
    vals = []
    for i, j, k, l in itertools.product(range(n), repeat=4):
        z = m[i, j] * m[k, l] * np.conj(m[i, l]) * np.conj(m[k, j])
        a = np.angle(z)
        b = round(a / tol)
        if b <= -round(np.pi / tol):
            b += 2 * round(np.pi / tol)
        vals.append(b)
    return sorted(vals)


def test_fingerprint_f2_matches_bruteforce():
    fp = haagerup_fingerprint(fourier(2), 1e-9)
    assert fp.size == 16
    expected = np.array(_fingerprint_bruteforce(fourier(2), 1e-9)) * 1e-9
    np.testing.assert_array_equal(fp, expected)
    # only 0 and pi occur
    assert set(np.round(fp, 6)) == {0.0, round(np.pi, 6)}
    assert np.count_nonzero(fp == 0) == 12


def test_fingerprint_f4_vs_f2f2():
    f4 = fourier(4)
    f22 = tensor(fourier(2), fourier(2))
    b4 = _fingerprint_bruteforce(f4, 1e-9)
    b22 = _fingerprint_bruteforce(f22, 1e-9)
    assert b4 != b22
    np.testing.assert_array_equal(haagerup_fingerprint(f4), np.array(b4) * 1e-9)
    assert not np.array_equal(haagerup_fingerprint(f4), haagerup_fingerprint(f22))


def test_fingerprint_invariant_under_100_moves():
    rng = np.random.default_rng(6)
    h = fourier(6)
    ref = haagerup_fingerprint(h, 1e-9)
    for _ in range(100):
        h2, _ = random_equivalent(h, rng)
        np.testing.assert_array_equal(haagerup_fingerprint(h2, 1e-9), ref)


def test_fingerprint_rejects_non_flat():
    with pytest.raises(ValueError):
        haagerup_fingerprint(np.eye(3))


def test_unbiasedness():
    for n in (2, 3, 7):
        ok, dev = unbiasedness(np.eye(n), fourier(n))
        assert ok and dev < 1e-12
        ok, dev = unbiasedness(np.eye(n), np.eye(n))
        assert not ok and dev == pytest.approx(1 - 1 / n)
    rng = np.random.default_rng(3)
    for _ in range(5):
        z = np.exp(1j * rng.uniform(0, 2 * np.pi))
        assert unbiasedness(np.eye(4), hadamard4(z))[0]
    with pytest.raises(ValueError):
        unbiasedness(np.eye(2), np.ones((2, 2)))
