"""Parametric Hadamard families and complete sets of mutually unbiased bases."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd
from typing import Sequence

import numpy as np

from .core import DEFAULT_TOL, as_matrix, fourier, is_hadamard, unbiasedness
from .equivalence import EquivalenceCertificate


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


def hadamard4(z: complex) -> np.ndarray:
    """The dephased one-parameter family of 4x4 Hadamard matrices.

    ``z = i`` gives ``F_4`` and ``z = 1`` the real matrix ``F_2 (x) F_2`` up to
    equivalence.
    """
    z = complex(z)
    if abs(abs(z) - 1.0) > 1e-12:
        raise ValueError("z must be unimodular")
    return 0.5 * np.array(
        [
            [1, 1, 1, 1],
            [1, z, -1, -z],
            [1, -1, 1, -1],
            [1, -z, -1, z],
        ],
        dtype=np.complex128,
    )


@dataclass(frozen=True)
class DitaSpec:
    """Inputs of the warped tensor product.

    ``outer`` is ``N1 x N1``; ``inners`` holds ``N1`` matrices of size ``N2``;
    ``diagonals`` holds ``N1 - 1`` phase vectors (radians) of length ``N2``
    whose first entry is 0.
    """

    outer: np.ndarray
    inners: Sequence[np.ndarray]
    diagonals: Sequence[np.ndarray]

    def __post_init__(self):
        outer = as_matrix(self.outer)
        inners = tuple(as_matrix(m) for m in self.inners)
        n1 = outer.shape[0]
        if len(inners) != n1:
            raise ValueError(f"need {n1} inner matrices, got {len(inners)}")
        n2 = inners[0].shape[0]
        if any(m.shape[0] != n2 for m in inners):
            raise ValueError("inner matrices must share one dimension")
        if len(self.diagonals) != n1 - 1:
            raise ValueError(f"need {n1 - 1} diagonals, got {len(self.diagonals)}")
        diags = tuple(np.asarray(d, dtype=float) for d in self.diagonals)
        for d in diags:
            if d.shape != (n2,):
                raise ValueError(f"each diagonal needs {n2} phases")
            if d[0] != 0.0:
                raise ValueError("first phase of each diagonal must be 0")
        object.__setattr__(self, "outer", outer)
        object.__setattr__(self, "inners", inners)
        object.__setattr__(self, "diagonals", diags)

    @property
    def n1(self) -> int:
        return self.outer.shape[0]

    @property
    def n2(self) -> int:
        return self.inners[0].shape[0]


def dita(spec: DitaSpec, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Warped tensor product: block ``(a, b)`` is ``outer[a, b] * D_b @ inners[b]``, ``D_0 = 1``."""
    for m in (spec.outer, *spec.inners):
        if not is_hadamard(m, tol).is_hadamard:
            raise ValueError("all constituents must be Hadamard")
    n1, n2 = spec.n1, spec.n2
    out = np.empty((n1 * n2, n1 * n2), dtype=np.complex128)
    phases = [np.zeros(n2), *spec.diagonals]
    for b in range(n1):
        warped = np.exp(1j * phases[b])[:, None] * spec.inners[b]
        for a in range(n1):
            out[a * n2:(a + 1) * n2, b * n2:(b + 1) * n2] = spec.outer[a, b] * warped
    return out


def crt_certificate(n1: int, n2: int) -> EquivalenceCertificate:
    """Permutations taking ``F_{n1 n2}`` to ``F_{n1} (x) F_{n2}`` for coprime ``n1, n2``.

    Row ``(i1, i2)`` of the tensor product is row ``k`` of the big Fourier matrix,
    where ``k = i1 mod n1 = i2 mod n2`` (Chinese remainders). Column ``(j1, j2)``
    is column ``j1*n2 + j2*n1 mod n1*n2``.
    """
    if n1 < 1 or n2 < 1:
        raise ValueError("dimensions must be positive")
    if gcd(n1, n2) != 1:
        raise ValueError(f"gcd({n1}, {n2}) != 1: F_{n1 * n2} is not equivalent to F_{n1} x F_{n2}")
    n = n1 * n2
    crt = {(k % n1, k % n2): k for k in range(n)}
    p_left = [crt[i1, i2] for i1, i2 in itertools.product(range(n1), range(n2))]
    p_right = [(j1 * n2 + j2 * n1) % n for j1, j2 in itertools.product(range(n1), range(n2))]
    return EquivalenceCertificate(p_left, np.zeros(n), np.zeros(n), p_right)


@dataclass(frozen=True)
class MubSet:
    n: int
    bases: tuple
    pairwise_unbiased: bool
    worst_deviation: float


def mub_check(bases: Sequence, tol: float = DEFAULT_TOL):
    """``(ok, worst)``: every basis orthonormal and every pair unbiased within ``tol``.

    ``worst`` is the largest deviation seen, orthonormality defects included.
    """
    if isinstance(bases, MubSet):
        bases = bases.bases
    bases = [as_matrix(b) for b in bases]
    n = bases[0].shape[0]
    worst = 0.0
    for b in bases:
        worst = max(worst, float(np.max(np.abs(b.conj().T @ b - np.eye(n)))))
    if worst > tol:
        return False, worst
    for a, b in itertools.combinations(bases, 2):
        worst = max(worst, unbiasedness(a, b, tol=max(tol, worst))[1])
    return worst <= tol, worst


def mub_prime(p: int, tol: float = DEFAULT_TOL) -> MubSet:
    """Complete set of ``p + 1`` MUBs in prime dimension ``p``.

    The identity, plus ``diag(omega**(m j^2)) F_p`` for ``m = 0..p-1``. For
    ``p = 2`` the quadratic phases do not work and the third basis is
    ``(1, +-i)/sqrt(2)``.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    f = fourier(p)
    if p == 2:
        y = np.array([[1, 1], [1j, -1j]]) / np.sqrt(2)
        bases = (np.eye(2, dtype=np.complex128), f, y)
    else:
        j = np.arange(p)
        omega = np.exp(2j * np.pi / p)
        bases = (np.eye(p, dtype=np.complex128),) + tuple(
            (omega ** ((m * j * j) % p))[:, None] * f for m in range(p)
        )
    ok, worst = mub_check(bases, tol)
    return MubSet(p, bases, ok, worst)
