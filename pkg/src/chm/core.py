"""Complex matrices, Fourier matrices and the basic Hadamard checks.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. A complex
Hadamard matrix here is *normalized*: it is unitary and every entry has
modulus ``1/sqrt(n)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

DEFAULT_TOL = 1e-9
TWO_PI = 2.0 * np.pi


def as_matrix(m) -> np.ndarray:
    """Coerce ``m`` to a square, finite complex128 array."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise ValueError(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def root_of_unity(p: int, q: int) -> complex:
    """``exp(2*pi*i*p/q)``.

    Every exactly-phased entry in the package goes through this function so
    that values built in different places are bitwise identical.
    """
    return complex(np.exp(1j * (TWO_PI * (p / q))))


def gcd0(k: int, n: int) -> int:
    """gcd with the convention gcd(0, n) = n."""
    return gcd(k, n) if k else n


@dataclass(frozen=True)
class ValidationReport:
    is_unitary: bool
    is_flat: bool
    max_unitarity_residual: float
    max_modulus_deviation: float
    tol: float

    @property
    def is_hadamard(self) -> bool:
        return self.is_unitary and self.is_flat


@dataclass(frozen=True)
class PhaseGrid:
    """An ``n x n`` grid of phases (radians), reduced to ``[0, 2*pi)``."""

    phases: np.ndarray

    def __post_init__(self):
        ph = np.asarray(self.phases, dtype=float)
        if ph.ndim != 2 or ph.shape[0] != ph.shape[1]:
            raise ValueError("phase grid must be square")
        ph = np.mod(ph, TWO_PI)
        ph[ph >= TWO_PI] = 0.0
        object.__setattr__(self, "phases", ph)

    @property
    def n(self) -> int:
        return self.phases.shape[0]

    def apply(self, m) -> np.ndarray:
        """Entrywise product ``m_ij * exp(i*phi_ij)``."""
        m = as_matrix(m)
        if m.shape[0] != self.n:
            raise ValueError("dimension mismatch")
        return m * np.exp(1j * self.phases)


def fourier(n: int) -> np.ndarray:
    """Fourier matrix ``F_ij = omega**(i*j) / sqrt(n)`` with ``omega = exp(2 pi i / n)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    k = np.outer(np.arange(n), np.arange(n)) % n
    roots = np.array([root_of_unity(int(j), n) for j in range(n)])
    return roots[k] / np.sqrt(n)


def tensor(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def is_hadamard(m, tol: float = DEFAULT_TOL) -> ValidationReport:
    """Check unitarity and flatness of ``m``, reporting the raw residuals."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    m = as_matrix(m)
    n = m.shape[0]
    unit = float(np.max(np.abs(m @ m.conj().T - np.eye(n))))
    flat = float(np.max(np.abs(np.abs(m) - 1.0 / np.sqrt(n))))
    return ValidationReport(unit <= tol, flat <= tol, unit, flat, tol)


def _unit(z: np.ndarray) -> np.ndarray:
    return z / np.abs(z)


def dephase(m):
    """Bring ``m`` to dephased form.

    Returns ``(d, d_left, d_right)`` with ``d = diag(d_left) @ m @ diag(d_right)``
    whose first row and column are positive real. Rows are fixed first (by the
    phase of their first entry), then columns are fixed on the row-fixed matrix.
    """
    m = as_matrix(m)
    if np.any(m[:, 0] == 0) or np.any(m[0, :] == 0):
        raise ValueError("cannot dephase: zero entry in first row or column")
    d_left = _unit(m[:, 0]).conj()
    rows = d_left[:, None] * m
    d_right = _unit(rows[0, :]).conj()
    out = rows * d_right[None, :]
    # clear rounding noise from the gauge-fixed border
    out[:, 0] = np.abs(out[:, 0])
    out[0, :] = np.abs(out[0, :])
    return out, d_left, d_right


def is_dephased(m, tol: float = DEFAULT_TOL) -> bool:
    m = as_matrix(m)
    border = np.concatenate([m[0, :], m[:, 0]])
    return bool(np.max(np.abs(border - 1.0 / np.sqrt(m.shape[0]))) <= tol)


def _bin_phases(angles: np.ndarray, tol: float) -> np.ndarray:
    k = np.rint(angles / tol).astype(np.int64)
    half = int(np.rint(np.pi / tol))
    k[k <= -half] += 2 * half
    return k


def haagerup_fingerprint(m, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Sorted multiset of ``arg(m_ij m_kl conj(m_il) conj(m_kj))`` over all ``i, j, k, l``.

    Phases are rounded to multiples of ``tol``. The multiset is invariant under
    ``m -> P1 D1 m D2 P2`` up to that rounding.
    """
    m = as_matrix(m)
    mod = np.abs(m)
    if np.max(np.abs(mod - mod.mean())) > 1e-8 * max(1.0, mod.mean()):
        raise ValueError("fingerprint needs a flat matrix")
    u = m / mod
    # q[i,j,k,l] = u_ij u_kl conj(u_il) conj(u_kj)
    q = np.einsum("ij,kl,il,kj->ijkl", u, u, u.conj(), u.conj(), optimize=True)
    bins = _bin_phases(np.angle(q).ravel(), tol)
    bins.sort()
    return bins * tol


def unbiasedness(basis_a, basis_b, tol: float = DEFAULT_TOL):
    """Whether the columns of two orthonormal bases are mutually unbiased.

    Returns ``(ok, max_dev)`` with ``max_dev = max |<a_i|b_j>|^2 - 1/n|``.
    """
    a = as_matrix(basis_a)
    b = as_matrix(basis_b)
    if a.shape != b.shape:
        raise ValueError("bases must have the same dimension")
    n = a.shape[0]
    for name, x in (("basis_a", a), ("basis_b", b)):
        if np.max(np.abs(x.conj().T @ x - np.eye(n))) > tol:
            raise ValueError(f"{name} is not orthonormal")
    dev = float(np.max(np.abs(np.abs(a.conj().T @ b) ** 2 - 1.0 / n)))
    return dev <= tol, dev
