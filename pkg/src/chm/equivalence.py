"""Hadamard equivalence ``H' = P1 D1 H D2 P2``.

Permutations are stored as integer arrays acting on indices: applying
``p_left`` and ``p_right`` to a matrix ``X`` gives ``X[p_left][:, p_right]``.
Diagonal unitaries are stored as phase vectors in radians.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core import as_matrix, dephase, haagerup_fingerprint

ORACLE_TOL = 1e-8
MAX_ORACLE_N = 6


@dataclass(frozen=True)
class EquivalenceCertificate:
    p_left: np.ndarray
    d_left: np.ndarray
    d_right: np.ndarray
    p_right: np.ndarray

    def __post_init__(self):
        n = len(self.p_left)
        for name in ("p_left", "p_right"):
            p = np.asarray(getattr(self, name), dtype=np.int64)
            if sorted(p.tolist()) != list(range(n)):
                raise ValueError(f"{name} is not a permutation of 0..{n - 1}")
            object.__setattr__(self, name, p)
        for name in ("d_left", "d_right"):
            d = np.asarray(getattr(self, name), dtype=float)
            if d.shape != (n,) or not np.all(np.isfinite(d)):
                raise ValueError(f"{name} must hold {n} finite phases")
            object.__setattr__(self, name, d)

    @property
    def n(self) -> int:
        return len(self.p_left)

    @classmethod
    def identity(cls, n: int) -> "EquivalenceCertificate":
        return cls(np.arange(n), np.zeros(n), np.zeros(n), np.arange(n))

    def apply(self, h) -> np.ndarray:
        h = as_matrix(h)
        if h.shape[0] != self.n:
            raise ValueError("dimension mismatch")
        x = np.exp(1j * self.d_left)[:, None] * h * np.exp(1j * self.d_right)[None, :]
        return x[self.p_left][:, self.p_right]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "p_left": self.p_left.tolist(),
            "d_left": self.d_left.tolist(),
            "d_right": self.d_right.tolist(),
            "p_right": self.p_right.tolist(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "EquivalenceCertificate":
        return cls(d["p_left"], d["d_left"], d["d_right"], d["p_right"])


@dataclass(frozen=True)
class EquivalenceVerdict:
    status: str  # "Equivalent" | "Distinct" | "Inconclusive"
    residual: float
    method: str
    certificate: Optional[EquivalenceCertificate] = field(default=None)

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "residual": self.residual,
            "method": self.method,
            "certificate": None if self.certificate is None else self.certificate.to_dict(),
        }


def verify_certificate(h, h2, cert: EquivalenceCertificate, tol: float = 1e-9):
    h = as_matrix(h)
    h2 = as_matrix(h2)
    if h.shape != h2.shape or cert.n != h.shape[0]:
        raise ValueError("dimension mismatch")
    residual = float(np.max(np.abs(cert.apply(h) - h2)))
    return residual <= tol, residual


def canonical_dephased(m) -> np.ndarray:
    return dephase(m)[0]


def _dephase_batch(x: np.ndarray) -> np.ndarray:
    """Dephase a stack of matrices, same convention as :func:`chm.core.dephase`."""
    rows = x * (np.abs(x[:, :, :1]) / x[:, :, :1])
    return rows * (np.abs(rows[:, :1, :]) / rows[:, :1, :])


def _scan_rows(h, target, p_lefts, p_rights, tol):
    """First ``(i, j)`` in lexicographic order with a matching dephased form, or None."""
    cols = np.asarray(p_rights)
    for i, pl in enumerate(p_lefts):
        stack = h[list(pl)][:, cols].transpose(1, 0, 2)
        diff = np.max(np.abs(_dephase_batch(stack) - target), axis=(1, 2))
        hit = np.flatnonzero(diff <= tol)
        if hit.size:
            return i, int(hit[0])
    return None


def equivalent_bruteforce(h, h2, tol: float = ORACLE_TOL, workers: int = 1) -> EquivalenceVerdict:
    """Decide equivalence of two flat matrices by scanning all permutation pairs.

    Dephasing absorbs both diagonal factors, so ``H ~ H'`` iff some
    ``dephase(P1 H P2)`` equals ``dephase(H')``. Permutation pairs are scanned in
    lexicographic order and the first witness is returned, whatever ``workers`` is.
    Cost is ``(n!)**2`` dephasings; ``n`` is capped at 6.
    """
    h = as_matrix(h)
    h2 = as_matrix(h2)
    n = h.shape[0]
    if h2.shape != h.shape:
        raise ValueError("dimension mismatch")
    if n > MAX_ORACLE_N:
        raise ValueError(f"brute-force oracle is limited to n <= {MAX_ORACLE_N}; use invariant_distinguish")
    target = canonical_dephased(h2)
    perms = list(itertools.permutations(range(n)))

    if workers <= 1:
        hit = _scan_rows(h, target, perms, perms, tol)
    else:
        chunks = np.array_split(np.arange(len(perms)), workers)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_scan_rows, h, target, [perms[k] for k in c], perms, tol)
                for c in chunks
            ]
            found = [(c[r[0]], r[1]) for c, f in zip(chunks, futures) if (r := f.result())]
        hit = min(found) if found else None

    if hit is None:
        return EquivalenceVerdict("Distinct", float("nan"), "oracle")
    p_left = np.array(perms[hit[0]])
    p_right = np.array(perms[hit[1]])
    cert = _reconstruct(h, h2, p_left, p_right)
    ok, residual = verify_certificate(h, h2, cert, tol)
    assert ok, residual
    return EquivalenceVerdict("Equivalent", residual, "oracle", cert)


def _reconstruct(h, h2, p_left, p_right) -> EquivalenceCertificate:
    # dephase(A) = diag(la) A diag(ra) with A = P1 H P2, and likewise for H'.
    # Then H' = diag(la/lb) P1 H P2 diag(ra/rb); move the diagonals inside.
    _, la, ra = dephase(h[p_left][:, p_right])
    _, lb, rb = dephase(h2)
    left = la / lb
    right = ra / rb
    d_left = np.empty(len(p_left))
    d_right = np.empty(len(p_right))
    d_left[p_left] = np.angle(left)
    d_right[p_right] = np.angle(right)
    return EquivalenceCertificate(p_left, d_left, d_right, p_right)


def invariant_distinguish(h, h2, tol: float = 1e-9) -> EquivalenceVerdict:
    """Screen with Haagerup fingerprints: a mismatch proves inequivalence.

    A match proves nothing, so this never returns ``"Equivalent"``.
    """
    f1 = haagerup_fingerprint(h, tol)
    f2 = haagerup_fingerprint(h2, tol)
    if f1.shape != f2.shape:
        return EquivalenceVerdict("Distinct", float("inf"), "invariant")
    gap = float(np.max(np.abs(f1 - f2))) if f1.size else 0.0
    status = "Inconclusive" if np.array_equal(f1, f2) else "Distinct"
    return EquivalenceVerdict(status, gap, "invariant")


def random_equivalent(h, rng: np.random.Generator):
    """Apply random permutations and diagonal unitaries; returns ``(h', certificate)``."""
    h = as_matrix(h)
    n = h.shape[0]
    cert = EquivalenceCertificate(
        rng.permutation(n),
        rng.uniform(0, 2 * np.pi, n),
        rng.uniform(0, 2 * np.pi, n),
        rng.permutation(n),
    )
    return cert.apply(h), cert
