"""Named matrices with the properties each one must satisfy."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import io
from .constructions import DitaSpec, dita, hadamard4
from .core import fourier, is_dephased, is_hadamard, root_of_unity, tensor, unbiasedness
from .geometry import basis_simplex, total_orthogonality

CHECK_TOL = 1e-10


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    constructor: Callable[[], np.ndarray]
    expected_properties: tuple
    provenance: str = ""

    def build(self) -> np.ndarray:
        return self.constructor()


def _dita6() -> np.ndarray:
    rng = np.random.default_rng(20240613)
    diags = [np.concatenate([[0.0], rng.uniform(0, 2 * np.pi, 1)]) for _ in range(2)]
    return dita(DitaSpec(fourier(3), [fourier(2)] * 3, diags))


def _check_exact_roundtrip(m) -> tuple:
    text = io.dumps(m, "exact-phase")
    back = io.loads(text)[0]
    ok = io.dumps(back, "exact-phase") == text and float(np.max(np.abs(back - m))) < 1e-15
    return ok, float(np.max(np.abs(back - m)))


def _check_cartesian_roundtrip(m) -> tuple:
    back = io.loads(io.dumps(m, "cartesian"))[0]
    return bool(np.array_equal(back, m)), float(np.max(np.abs(back - m)))


CHECKS = {
    "hadamard": lambda m: (lambda r: (r.is_hadamard, max(r.max_unitarity_residual, r.max_modulus_deviation)))(
        is_hadamard(m, CHECK_TOL)),
    "dephased": lambda m: (is_dephased(m, CHECK_TOL), 0.0),
    "unbiased_with_identity": lambda m: unbiasedness(np.eye(m.shape[0]), m, CHECK_TOL),
    "totally_orthogonal": lambda m: total_orthogonality(
        basis_simplex(np.eye(m.shape[0])), basis_simplex(m), CHECK_TOL),
    "exact_phase_roundtrip": _check_exact_roundtrip,
    "cartesian_roundtrip": _check_cartesian_roundtrip,
}

_BASIC = ("hadamard", "unbiased_with_identity", "totally_orthogonal", "cartesian_roundtrip")


def _entries():
    out = []
    for n in range(2, 13):
        out.append(CatalogEntry(f"F_{n}", lambda n=n: fourier(n),
                                _BASIC + ("dephased", "exact_phase_roundtrip"), f"fourier({n})"))
    for label, z in (("1", 1.0 + 0j), ("i", 1j), ("e^(i*pi/5)", root_of_unity(1, 10))):
        out.append(CatalogEntry(f"H4({label})", lambda z=z: hadamard4(z),
                                _BASIC + ("dephased", "exact_phase_roundtrip"), f"hadamard4({label})"))
    for a, b in ((2, 2), (2, 3), (3, 4)):
        out.append(CatalogEntry(f"F_{a}xF_{b}", lambda a=a, b=b: tensor(fourier(a), fourier(b)),
                                _BASIC + ("dephased", "exact_phase_roundtrip"), f"tensor(F_{a}, F_{b})"))
    out.append(CatalogEntry("Dita_6", _dita6, _BASIC + ("dephased",),
                            "dita(F_3; F_2, F_2, F_2; seeded diagonals)"))
    return {e.name: e for e in out}


CATALOG = _entries()


def names() -> list:
    return list(CATALOG)


def build(name: str) -> np.ndarray:
    try:
        return CATALOG[name].build()
    except KeyError:
        raise KeyError(f"unknown catalog entry {name!r}; known: {', '.join(CATALOG)}") from None


def verify(name: str) -> dict:
    """Run every expected property of an entry; returns ``{check: (ok, residual)}``."""
    entry = CATALOG[name]
    m = entry.build()
    return {c: tuple(CHECKS[c](m)) for c in entry.expected_properties}


def verify_all() -> dict:
    return {name: verify(name) for name in CATALOG}
