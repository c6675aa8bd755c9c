"""Matrix and certificate files.

A matrix file is line oriented text::

    # chm matrix
    format_version 1
    name F_6
    provenance fourier(6)
    n 6
    representation exact-phase
    row 0/1 0/1 0/1 0/1 0/1 0/1
    row 0/1 1/6 1/3 1/2 2/3 5/6
    ...

``exact-phase`` rows hold ``p/q`` per entry, meaning ``exp(2 pi i p/q)/sqrt(n)``
with ``0 <= p < q`` in lowest terms. ``cartesian`` rows hold ``2n`` decimals
``re im re im ...`` written with ``repr`` so that they round-trip exactly.
Blank lines and lines starting with ``#`` are ignored.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import numpy as np

from .core import as_matrix, root_of_unity
from .equivalence import EquivalenceCertificate

FORMAT_VERSION = 1
REPRESENTATIONS = ("cartesian", "exact-phase")
MAX_DENOMINATOR = 10**6
EXACT_TOL = 1e-12


class MatrixFileError(ValueError):
    """Malformed or unsupported matrix file."""

    def __init__(self, msg, path=None, line=None, field=None):
        where = []
        if path is not None:
            where.append(str(path))
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        super().__init__(f"{': '.join(where)}: {msg}" if where else msg)
        self.line = line
        self.field = field


def exact_phases(m, max_denominator: int = MAX_DENOMINATOR, tol: float = EXACT_TOL):
    """Rational phases ``p/q`` (in turns) of a flat matrix, or raise ``ValueError``."""
    m = as_matrix(m)
    n = m.shape[0]
    scaled = m * np.sqrt(n)
    if np.max(np.abs(np.abs(scaled) - 1.0)) > tol:
        raise ValueError("entries are not all of modulus 1/sqrt(n)")
    out = []
    for z in scaled.ravel():
        turns = float(np.angle(z) / (2 * np.pi)) % 1.0
        fr = Fraction(turns).limit_denominator(max_denominator)
        if fr == 1:
            fr = Fraction(0)
        if abs(root_of_unity(fr.numerator, fr.denominator) - z) > tol:
            raise ValueError(f"entry {z!r} is not a root of unity with denominator <= {max_denominator}")
        out.append(fr)
    return np.array(out, dtype=object).reshape(n, n)


def dumps(m, representation: str = "cartesian", name: str = "", provenance: str = "") -> str:
    m = as_matrix(m)
    n = m.shape[0]
    if representation not in REPRESENTATIONS:
        raise ValueError(f"unknown representation {representation!r}")
    lines = [
        "# chm matrix",
        f"format_version {FORMAT_VERSION}",
        f"name {name}".rstrip(),
        f"provenance {provenance}".rstrip(),
        f"n {n}",
        f"representation {representation}",
    ]
    if representation == "exact-phase":
        ph = exact_phases(m)
        for row in ph:
            lines.append("row " + " ".join(f"{f.numerator}/{f.denominator}" for f in row))
    else:
        for row in m:
            lines.append("row " + " ".join(f"{float(z.real)!r} {float(z.imag)!r}" for z in row))
    return "\n".join(lines) + "\n"


def save(m, path, representation: str = "cartesian", name: str = "", provenance: str = "") -> Path:
    path = Path(path)
    path.write_text(dumps(m, representation, name, provenance))
    return path


def _parse_int(tok, lineno, fieldname, path):
    try:
        return int(tok)
    except ValueError:
        raise MatrixFileError(f"expected an integer, got {tok!r}", path, lineno, fieldname) from None


def loads(text: str, path=None):
    """Parse a matrix file; returns ``(matrix, metadata)``."""
    header = {}
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "row":
            rows.append((lineno, rest.split()))
        elif key in ("format_version", "name", "provenance", "n", "representation"):
            if key in header:
                raise MatrixFileError("duplicate header", path, lineno, key)
            header[key] = (lineno, rest)
        else:
            raise MatrixFileError(f"unknown field {key!r}", path, lineno, key)

    for key in ("format_version", "n", "representation"):
        if key not in header:
            raise MatrixFileError("missing header", path, None, key)
    lineno, v = header["format_version"]
    if _parse_int(v, lineno, "format_version", path) != FORMAT_VERSION:
        raise MatrixFileError(f"unsupported version {v}", path, lineno, "format_version")
    lineno, v = header["n"]
    n = _parse_int(v, lineno, "n", path)
    if n < 1:
        raise MatrixFileError("n must be positive", path, lineno, "n")
    lineno, rep = header["representation"]
    if rep not in REPRESENTATIONS:
        raise MatrixFileError(f"unknown representation {rep!r}", path, lineno, "representation")
    if len(rows) != n:
        raise MatrixFileError(f"expected {n} rows, found {len(rows)}", path, None, "row")

    m = np.empty((n, n), dtype=np.complex128)
    for i, (lineno, toks) in enumerate(rows):
        if rep == "exact-phase":
            if len(toks) != n:
                raise MatrixFileError(f"expected {n} phases, got {len(toks)}", path, lineno, "row")
            for j, tok in enumerate(toks):
                p, sep, q = tok.partition("/")
                try:
                    p, q = int(p), int(q)
                except ValueError:
                    raise MatrixFileError(f"bad phase {tok!r}", path, lineno, "row") from None
                if not sep or q <= 0 or not 0 <= p < q or Fraction(p, q).denominator != q:
                    raise MatrixFileError(f"phase {tok!r} must be p/q in lowest terms with 0 <= p < q",
                                          path, lineno, "row")
                m[i, j] = np.complex128(root_of_unity(p, q)) / np.sqrt(n)
        else:
            if len(toks) != 2 * n:
                raise MatrixFileError(f"expected {2 * n} numbers, got {len(toks)}", path, lineno, "row")
            try:
                vals = [float(t) for t in toks]
            except ValueError:
                raise MatrixFileError("bad number", path, lineno, "row") from None
            m[i] = np.array(vals[0::2]) + 1j * np.array(vals[1::2])
    if not np.all(np.isfinite(m)):
        raise MatrixFileError("non-finite entry", path, None, "row")
    meta = {
        "name": header.get("name", (None, ""))[1],
        "provenance": header.get("provenance", (None, ""))[1],
        "representation": rep,
    }
    return m, meta


def load(path):
    """Load the matrix stored at ``path``."""
    path = Path(path)
    return loads(path.read_text(), path)[0]


def load_with_meta(path):
    path = Path(path)
    return loads(path.read_text(), path)


def save_certificate(cert: EquivalenceCertificate, path) -> Path:
    path = Path(path)
    doc = {"format_version": FORMAT_VERSION, "kind": "equivalence-certificate", **cert.to_dict()}
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return path


def load_certificate(path) -> EquivalenceCertificate:
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
        return EquivalenceCertificate.from_dict(doc)
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise MatrixFileError(f"bad certificate: {exc}", path) from None
