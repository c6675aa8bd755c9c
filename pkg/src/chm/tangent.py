"""Smooth Hadamard families through the Fourier matrix.

The Fourier matrix is perturbed entrywise, ``F_ij -> F_ij exp(i phi_ij)``, with
the first row and column held fixed (dephased gauge). Orthogonality of rows
``a < b`` reads

    g_ab(phi) = sum_j omega**((a-b) j) exp(i (phi_aj - phi_bj)) = 0.

Linearizing at ``phi = 0`` gives a real system ``M x = 0`` whose kernel is the
tangent space of Hadamard matrices at ``F_n``. Its dimension matches the gcd
sum ``sum_k gcd(k, n)`` minus the ``2n - 1`` trivial phases.

:func:`continue_orders` then tries to extend a first-order direction to a power
series ``phi(t) = sum_s t**s phi_s``. At each order ``s`` one must solve
``M phi_s = b_s`` where ``b_s`` depends on the lower orders only; this is
possible iff ``b_s`` has no component in the cokernel of ``M``.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core import gcd0
from .constructions import is_prime

log = logging.getLogger(__name__)

TOL_RANK = 1e-10
CONSISTENCY_TOL = 1e-6
EPS = 1e-300


def defect_formula(n: int) -> int:
    """``sum_{k=0}^{n-1} gcd(k, n)`` with ``gcd(0, n) = n``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return sum(gcd0(k, n) for k in range(n))


def dephased_bound(n: int) -> int:
    """Upper bound on the dimension of a dephased family through ``F_n``."""
    return defect_formula(n) - (2 * n - 1)


def conjectured_dimension(p1: int, p2: int) -> int:
    """Conjectured dimension of the non-affine family in dimension ``p1 * p2**2``."""
    if not (is_prime(p1) and is_prime(p2)) or p1 == p2:
        raise ValueError("p1 and p2 must be distinct primes")
    return 3 * p1 * p2**2 - 3 * p1 * p2 - 2 * p2**2 + p2 + 1


def _numerical_rank(s: np.ndarray, tol_rank: float) -> int:
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.count_nonzero(s > tol_rank * s[0]))


@dataclass(frozen=True)
class LinearizedSystem:
    n: int
    matrix: np.ndarray
    kernel_basis: np.ndarray  # columns
    left_null_basis: np.ndarray  # columns
    singular_values: np.ndarray
    rank: int
    # internals for the higher-order solves
    pairs: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    free: np.ndarray = field(repr=False)
    _u: np.ndarray = field(repr=False)
    _vt: np.ndarray = field(repr=False)

    @property
    def kernel_dim(self) -> int:
        return self.kernel_basis.shape[1]

    def row_differences(self, x: np.ndarray) -> np.ndarray:
        """``phi_aj - phi_bj`` for every row pair, from free phases ``x``."""
        phi = np.zeros(self.n * self.n)
        phi[self.free] = x
        phi = phi.reshape(self.n, self.n)
        return phi[self.pairs[:, 0]] - phi[self.pairs[:, 1]]

    def solve(self, b: np.ndarray) -> np.ndarray:
        """Minimal-norm least-squares solution of ``M x = b`` (no kernel component)."""
        r = self.rank
        return self._vt[:r].T @ ((self._u[:, :r].T @ b) / self.singular_values[:r])

    def cokernel_residual(self, b: np.ndarray) -> float:
        return float(np.linalg.norm(self.left_null_basis.T @ b))


def _constraint_matrix(n: int, gauged: bool):
    pairs = np.array([(a, b) for a in range(n) for b in range(a + 1, n)], dtype=np.int64).reshape(-1, 2)
    j = np.arange(n)
    weights = np.exp(2j * np.pi * ((((pairs[:, 0] - pairs[:, 1])[:, None] * j[None, :]) % n) / n))
    c = np.zeros((len(pairs), n * n), dtype=np.complex128)
    rows = np.repeat(np.arange(len(pairs)), n)
    c[rows, (pairs[:, 0][:, None] * n + j).ravel()] += 1j * weights.ravel()
    c[rows, (pairs[:, 1][:, None] * n + j).ravel()] -= 1j * weights.ravel()
    if gauged:
        free = np.array([i * n + k for i in range(1, n) for k in range(1, n)], dtype=np.int64)
    else:
        free = np.arange(n * n)
    c = c[:, free]
    return np.vstack([c.real, c.imag]), pairs, weights, free


def build_linearized(n: int, tol_rank: float = TOL_RANK, gauged: bool = True) -> LinearizedSystem:
    """First-order unitarity system at ``F_n``.

    The real matrix maps the free phases (``(n-1)**2`` of them in dephased gauge,
    ``n**2`` otherwise) to the stacked real and imaginary parts of the
    ``n(n-1)/2`` row-pair conditions. Kernel and cokernel come from a full SVD;
    singular values below ``tol_rank * s_max`` count as zero.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    m, pairs, weights, free = _constraint_matrix(n, gauged)
    u, s, vt = np.linalg.svd(m, full_matrices=True)
    r = _numerical_rank(s, tol_rank)
    return LinearizedSystem(
        n=n,
        matrix=m,
        kernel_basis=vt[r:].T.copy(),
        left_null_basis=u[:, r:].copy(),
        singular_values=s,
        rank=r,
        pairs=pairs,
        weights=weights,
        free=free,
        _u=u,
        _vt=vt,
    )


@dataclass(frozen=True)
class DefectReport:
    n: int
    d1_formula: int
    kernel_dim_numeric: int
    dephased_bound: int
    agree: bool

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d1": self.d1_formula,
            "kernel_dim": self.kernel_dim_numeric,
            "dephased_bound": self.dephased_bound,
            "agree": self.agree,
        }


def defect_numeric(n: int, tol_rank: float = TOL_RANK) -> DefectReport:
    d1 = defect_formula(n)
    bound = d1 - (2 * n - 1)
    k = build_linearized(n, tol_rank).kernel_dim
    return DefectReport(n, d1, k, bound, k == bound)


@dataclass
class ContinuationReport:
    n: int
    max_order: int
    samples: int
    seed: int
    tolerance: float
    kernel_dim: int
    per_order_residuals: list  # per sample: list of residuals for orders 2, 3, ...
    sample_breakdowns: list  # per sample: order or None
    breakdown_order: Optional[int]
    note: str = ""

    def residuals_at(self, order: int) -> list:
        """Residual of every sample that reached ``order``."""
        k = order - 2
        return [r[k] for r in self.per_order_residuals if len(r) > k]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "max_order": self.max_order,
            "samples": self.samples,
            "seed": self.seed,
            "tolerance": self.tolerance,
            "kernel_dim": self.kernel_dim,
            "per_order_residuals": [
                {str(s + 2): r for s, r in enumerate(res)} for res in self.per_order_residuals
            ],
            "sample_breakdowns": self.sample_breakdowns,
            "breakdown_order": self.breakdown_order,
            "note": self.note,
        }


@dataclass
class SeriesSolution:
    """Phase series of one sample; ``orders[s]`` holds the free phases of ``t**s``."""

    system: LinearizedSystem
    orders: list
    residuals: list
    breakdown: Optional[int]

    def phases(self, t: float) -> np.ndarray:
        """Full ``n x n`` phase grid of the truncated series at ``t``."""
        n = self.system.n
        x = sum(t**s * xs for s, xs in enumerate(self.orders) if s > 0)
        phi = np.zeros(n * n)
        phi[self.system.free] = x
        return phi.reshape(n, n)


def extend_series(system: LinearizedSystem, direction: np.ndarray, max_order: int,
                  tol: float = CONSISTENCY_TOL) -> SeriesSolution:
    """Solve order by order from a tangent ``direction`` until ``max_order`` or breakdown.

    With ``u(t) = i (phi_a(t) - phi_b(t))`` per entry, the coefficients of
    ``E = exp(u)`` follow ``s E_s = sum_k k u_k E_{s-k}``. The unknown ``u_s``
    enters ``E_s`` linearly, so the order-``s`` condition is ``M phi_s = b_s``
    with ``b_s = -sum_j w_j c_s`` and ``c_s`` the part of ``E_s`` built from
    lower orders.

    The consistency residual is ``|L^T b_s| / max(|b_s|, |c_s|)``; the ``|c_s|``
    floor keeps exact cancellations (affine directions) from turning rounding
    noise into an O(1) ratio.
    """
    w = system.weights
    u = [None, 1j * system.row_differences(direction)]
    e = [np.ones_like(u[1]), u[1]]
    orders = [None, np.asarray(direction, dtype=float)]
    residuals = []
    for s in range(2, max_order + 1):
        c = sum(k * u[k] * e[s - k] for k in range(1, s)) / s
        bc = -np.sum(w * c, axis=1)
        b = np.concatenate([bc.real, bc.imag])
        scale = max(np.linalg.norm(b), np.linalg.norm(c), EPS)
        res = system.cokernel_residual(b) / scale
        residuals.append(res)
        if res > tol:
            return SeriesSolution(system, orders, residuals, s)
        xs = system.solve(b)
        orders.append(xs)
        u.append(1j * system.row_differences(xs))
        e.append(u[s] + c)
    return SeriesSolution(system, orders, residuals, None)


def random_direction(system: LinearizedSystem, rng: np.random.Generator) -> np.ndarray:
    g = rng.standard_normal(system.kernel_dim)
    return system.kernel_basis @ (g / np.linalg.norm(g))


def continue_orders(n: int, max_order: int, samples: int = 5, seed: int = 0,
                    tol: float = CONSISTENCY_TOL, tol_rank: float = TOL_RANK,
                    threads: int = 1) -> ContinuationReport:
    """Detect the order at which generic first-order directions stop extending.

    Each sample draws a random unit tangent vector from its own stream
    ``default_rng([seed, index])``, so results do not depend on ``threads``.
    The breakdown order is the smallest order flagged by a strict majority of
    samples.
    """
    if n < 2 or max_order < 2 or samples < 1:
        raise ValueError("need n >= 2, max_order >= 2, samples >= 1")
    system = build_linearized(n, tol_rank)
    if system.kernel_dim == 0:
        return ContinuationReport(n, max_order, samples, seed, tol, 0, [[] for _ in range(samples)],
                                  [None] * samples, None, note="isolated point")

    def one(i):
        rng = np.random.default_rng([seed, i])
        return extend_series(system, random_direction(system, rng), max_order, tol)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            sols = list(pool.map(one, range(samples)))
    else:
        sols = [one(i) for i in range(samples)]

    flagged = [s.breakdown for s in sols]
    breakdown = None
    for order in range(2, max_order + 1):
        if sum(f is not None and f <= order for f in flagged) * 2 > samples:
            breakdown = order
            break
    log.debug("n=%d breakdowns per sample: %s", n, flagged)
    return ContinuationReport(
        n, max_order, samples, seed, tol, system.kernel_dim,
        [s.residuals for s in sols], flagged, breakdown,
        note="breakdown = first order flagged by a strict majority of random tangent directions",
    )
