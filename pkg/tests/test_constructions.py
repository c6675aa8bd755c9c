from math import gcd

import numpy as np
import pytest

from chm import (DitaSpec, crt_certificate, dephase, dita, equivalent_bruteforce, fourier,
                 hadamard4, is_dephased, is_hadamard, mub_check, mub_prime, tensor,
                 verify_certificate)


def test_hadamard4_endpoints():
    h1 = hadamard4(1)
    assert np.allclose(h1.imag, 0)
    assert equivalent_bruteforce(h1, tensor(fourier(2), fourier(2))).status == "Equivalent"
    assert equivalent_bruteforce(hadamard4(1j), fourier(4)).status == "Equivalent"
    assert is_hadamard(hadamard4(np.exp(1.234j)), 1e-12).is_hadamard


def test_hadamard4_rejects_non_unimodular():
    with pytest.raises(ValueError):
        hadamard4(1.1)


@pytest.mark.parametrize("k", range(64))
def test_hadamard4_grid(k):
    z = np.exp(2j * np.pi * k / 64)
    h = hadamard4(z)
    assert is_hadamard(h, 1e-12).is_hadamard
    assert is_dephased(h, 1e-15)
    # the parameter survives dephasing up to sign
    assert min(abs(2 * dephase(h)[0][1, 1] - s * z) for s in (1, -1)) < 1e-14


def test_hadamard4_parameter_after_scrambling():
    rng = np.random.default_rng(8)
    from chm import canonical_dephased, random_equivalent
    for _ in range(20):
        z = np.exp(1j * rng.uniform(0.1, 3.0))
        m, _ = random_equivalent(hadamard4(z), rng)
        vals = 2 * canonical_dephased(m).ravel()
        allowed = [1, -1, z, -z, np.conj(z), -np.conj(z)]
        assert all(min(abs(v - a) for a in allowed) < 1e-12 for v in vals)


def test_dita_f2_family_matches_h4():
    theta = 0.9
    m = dita(DitaSpec(fourier(2), [fourier(2)] * 2, [[0.0, theta]]))
    assert is_hadamard(m, 1e-12).is_hadamard and is_dephased(m, 1e-14)
    z = np.exp(1j * theta)
    found = [w for w in (z, -z, np.conj(z), 1j * z, -1j * z, 1j * np.conj(z), -1j * np.conj(z))
             if equivalent_bruteforce(m, hadamard4(w)).status == "Equivalent"]
    assert found


def test_dita_no_warping_is_tensor():
    b = fourier(3)
    m = dita(DitaSpec(fourier(2), [b, b], [np.zeros(3)]))
    assert np.max(np.abs(m - tensor(fourier(2), b))) < 1e-14


def test_dita_6_random():
    rng = np.random.default_rng(4)
    diags = [np.r_[0.0, rng.uniform(0, 6, 1)] for _ in range(2)]
    m = dita(DitaSpec(fourier(3), [fourier(2)] * 3, diags))
    assert is_hadamard(m, 1e-12).is_hadamard
    assert is_dephased(m, 1e-14)


def test_dita_spec_validation():
    with pytest.raises(ValueError):
        DitaSpec(fourier(2), [fourier(2), fourier(3)], [[0, 0]])
    with pytest.raises(ValueError):
        DitaSpec(fourier(2), [fourier(2)] * 2, [])
    with pytest.raises(ValueError):
        DitaSpec(fourier(2), [fourier(2)] * 2, [[0.5, 0]])


@pytest.mark.parametrize("n1,n2", [(a, b) for a in range(1, 37) for b in range(1, 37)
                                   if a * b <= 36 and gcd(a, b) == 1])
def test_crt_certificate(n1, n2):
    cert = crt_certificate(n1, n2)
    target = tensor(fourier(n1), fourier(n2))
    ok, res = verify_certificate(fourier(n1 * n2), target, cert, 1e-12)
    assert ok, res
    if n1 == 1:
        np.testing.assert_array_equal(cert.p_left, np.arange(n2))
        np.testing.assert_array_equal(cert.p_right, np.arange(n2))


def test_crt_rejects_non_coprime():
    with pytest.raises(ValueError):
        crt_certificate(2, 4)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_mub_prime(p):
    s = mub_prime(p)
    assert len(s.bases) == p + 1
    assert s.pairwise_unbiased and s.worst_deviation < 1e-10
    for a in range(p + 1):
        for b in range(a + 1, p + 1):
            g = np.abs(s.bases[a].conj().T @ s.bases[b])
            assert np.max(np.abs(g - 1 / np.sqrt(p))) < 1e-10


def test_mub_prime_qubit_third_basis():
    s = mub_prime(2)
    np.testing.assert_allclose(s.bases[2][:, 0], np.array([1, 1j]) / np.sqrt(2))
    np.testing.assert_allclose(s.bases[2][:, 1], np.array([1, -1j]) / np.sqrt(2))
    assert s.worst_deviation < 1e-12


def test_mub_prime_rejects_composite():
    with pytest.raises(ValueError):
        mub_prime(6)


def test_mub_check():
    assert mub_check(mub_prime(5))[0]
    ok, worst = mub_check([np.eye(3), np.eye(3)])
    assert not ok and worst == pytest.approx(2 / 3)
    # only a report: a third basis from the tensor product is not unbiased to both
    third = np.diag(np.exp(2j * np.pi * np.arange(6) ** 2 / 6)) @ tensor(fourier(2), fourier(3))
    ok, worst = mub_check([np.eye(6), fourier(6), third])
    assert np.isfinite(worst)
