"""Geometry of the body of density matrices.

The maximally mixed state ``I/n`` is the origin; distances and scalar
products use ``D^2 = Tr(a - b)^2 / 2`` and ``a . b = Tr[(a - I/n)(b - I/n)] / 2``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import as_matrix

PSD_TOL = 1e-10


def density_matrix(m, tol: float = 1e-12) -> np.ndarray:
    """Validate ``m`` as a density matrix and return it as a complex array."""
    rho = as_matrix(m)
    if np.max(np.abs(rho - rho.conj().T)) > tol:
        raise ValueError("density matrix must be Hermitian")
    if abs(np.trace(rho) - 1.0) > tol:
        raise ValueError("density matrix must have unit trace")
    if np.linalg.eigvalsh(rho)[0] < -PSD_TOL:
        raise ValueError("density matrix must be positive semidefinite")
    return rho


def maximally_mixed(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.complex128) / n


def density_from_vector(v) -> np.ndarray:
    """Projector ``|v><v|`` onto a unit vector."""
    v = np.asarray(v, dtype=np.complex128).ravel()
    if abs(np.linalg.norm(v) - 1.0) > 1e-12:
        raise ValueError("state vector must be normalized")
    return density_matrix(np.outer(v, v.conj()))


def _check_dims(a, b):
    if a.shape != b.shape:
        raise ValueError("dimension mismatch")


def hs_distance(a, b) -> float:
    a = as_matrix(a)
    b = as_matrix(b)
    _check_dims(a, b)
    d = a - b
    return float(np.sqrt(max(0.5 * np.trace(d @ d).real, 0.0)))


def bloch_dot(a, b) -> float:
    a = as_matrix(a)
    b = as_matrix(b)
    _check_dims(a, b)
    c = maximally_mixed(a.shape[0])
    return float(0.5 * np.trace((a - c) @ (b - c)).real)


@dataclass(frozen=True)
class SimplexEmbedding:
    """Regular simplex of the projectors onto an orthonormal basis."""

    n: int
    vertices: tuple
    centroid: np.ndarray

    def gram(self) -> np.ndarray:
        return np.array([[bloch_dot(a, b) for b in self.vertices] for a in self.vertices])


def basis_simplex(basis, tol: float = 1e-9) -> SimplexEmbedding:
    basis = as_matrix(basis)
    n = basis.shape[0]
    if np.max(np.abs(basis.conj().T @ basis - np.eye(n))) > tol:
        raise ValueError("basis columns are not orthonormal")
    vertices = tuple(density_from_vector(basis[:, k] / np.linalg.norm(basis[:, k])) for k in range(n))
    centroid = sum(vertices) / n
    return SimplexEmbedding(n, vertices, centroid)


def sphere_radii(n: int):
    """``(outsphere, insphere, ratio)``, each radius measured on a witness state.

    The outsphere passes through any pure state. The insphere touches
    ``(I - P)/(n - 1)`` for a rank-one projector ``P``: it has a single zero
    eigenvalue, so it lies on the boundary, and it is the boundary point
    closest to the centre.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    pure = np.zeros((n, n), dtype=np.complex128)
    pure[0, 0] = 1.0
    centre = maximally_mixed(n)
    face = density_matrix((np.eye(n) - pure) / (n - 1))
    r_out = hs_distance(pure, centre)
    r_in = hs_distance(face, centre)
    return r_out, r_in, r_out / r_in


def total_orthogonality(a: SimplexEmbedding, b: SimplexEmbedding, tol: float = 1e-10):
    """Whether the planes of two centred simplices are totally orthogonal.

    For simplices centred at the origin the planes are spanned by the vertices,
    so it suffices that all cross dot products vanish. Returns ``(ok, max_dot)``.
    """
    if a.n != b.n:
        raise ValueError("dimension mismatch")
    max_dot = max(abs(bloch_dot(x, y)) for x in a.vertices for y in b.vertices)
    return max_dot <= tol, max_dot


def bloch_vector(rho) -> np.ndarray:
    """Real coordinates of ``rho - I/n`` in an orthonormal basis of traceless Hermitian matrices.

    Euclidean dot products of these vectors reproduce :func:`bloch_dot`.
    """
    rho = as_matrix(rho)
    n = rho.shape[0]
    d = rho - maximally_mixed(n)
    iu = np.triu_indices(n, 1)
    off_re = d[iu].real
    off_im = d[iu].imag
    diag = d.diagonal().real
    # diag has zero sum; a Helmert-type orthonormal basis of that hyperplane
    h = np.zeros((n - 1, n))
    for k in range(1, n):
        h[k - 1, :k] = 1.0
        h[k - 1, k] = -k
        h[k - 1] /= np.sqrt(k * (k + 1))
    # 1/2 Tr(A B) weights: off-diagonal pairs count twice, the diagonal once
    return np.concatenate([off_re, off_im, np.sqrt(0.5) * (h @ diag)])


def span_rank(simplices, tol: float = 1e-9) -> int:
    """Rank of all traceless vertex differences of the given simplices."""
    rows = []
    for s in simplices:
        v0 = bloch_vector(s.vertices[0])
        rows.extend(bloch_vector(v) - v0 for v in s.vertices[1:])
    return int(np.linalg.matrix_rank(np.array(rows), tol=tol))
