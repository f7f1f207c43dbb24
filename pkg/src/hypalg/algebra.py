"""Commutative unitary algebras defined by structure constants.

An algebra of dimension ``d`` over R or C is a tensor ``c`` of shape
``(d, d, d)`` with ``e_i * e_j = sum_k c[i, j, k] e_k``.  Basis index 0 is
always the unit.  Elements are plain 1-D numpy arrays of coordinates; every
operation takes the :class:`AlgebraTable` explicitly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ._textio import (Line, format_scalar, iter_lines, parse_count, parse_header,
                      parse_scalars)
from .errors import DimensionError, ParseError

#: default tolerance for :func:`verify_algebra`
TOL_AXIOM = 1e-9


class FieldTag(enum.Enum):
    REAL = "R"
    COMPLEX = "C"

    @property
    def dtype(self) -> type:
        return np.float64 if self is FieldTag.REAL else np.complex128

    @classmethod
    def from_text(cls, text: str) -> "FieldTag":
        for tag in cls:
            if tag.value == text:
                return tag
        raise ValueError(f"unknown field {text!r}; expected R or C")


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class AlgebraTable:
    """Structure constants of a finite-dimensional commutative unitary algebra."""

    field: FieldTag
    constants: np.ndarray
    basis_names: tuple[str, ...] = ()

    def __post_init__(self):
        c = np.asarray(self.constants)
        if c.ndim != 3 or not (c.shape[0] == c.shape[1] == c.shape[2]) or c.shape[0] < 1:
            raise DimensionError(f"structure constants must have shape (d, d, d), got {c.shape}")
        if self.field is FieldTag.REAL:
            if np.iscomplexobj(c) and np.any(c.imag != 0):
                raise ValueError("complex structure constants in a real algebra")
            c = c.real
        object.__setattr__(self, "constants", _frozen(c.astype(self.field.dtype)))
        d = c.shape[0]
        names = tuple(self.basis_names) or tuple(f"e{k}" for k in range(d))
        if len(names) != d:
            raise DimensionError(f"{len(names)} basis names for dimension {d}")
        object.__setattr__(self, "basis_names", names)

    @property
    def dim(self) -> int:
        return self.constants.shape[0]

    @property
    def dtype(self) -> type:
        return self.field.dtype

    @property
    def is_complex(self) -> bool:
        return self.field is FieldTag.COMPLEX

    def element(self, coeffs: Sequence[complex] | np.ndarray) -> np.ndarray:
        a = np.asarray(coeffs)
        if a.shape != (self.dim,):
            raise DimensionError(f"element of shape {a.shape} in algebra of dimension {self.dim}")
        if self.field is FieldTag.REAL:
            if np.iscomplexobj(a):
                if np.any(a.imag != 0):
                    raise ValueError("complex coordinates in a real algebra")
                a = a.real
        return a.astype(self.dtype)

    def zero(self) -> np.ndarray:
        return np.zeros(self.dim, dtype=self.dtype)

    def unit(self) -> np.ndarray:
        return self.basis(0)

    def basis(self, k: int) -> np.ndarray:
        v = self.zero()
        v[k] = 1
        return v

    def random_element(self, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
        """Standard-normal coordinates (complex normal over C) times ``scale``."""
        v = rng.standard_normal(self.dim)
        if self.is_complex:
            v = v + 1j * rng.standard_normal(self.dim)
        return (scale * v).astype(self.dtype)

    def format_element(self, a: np.ndarray) -> str:
        return " ".join(format_scalar(x, self.is_complex) for x in a)

    def __repr__(self) -> str:
        return f"AlgebraTable(field={self.field.value}, dim={self.dim}, basis={' '.join(self.basis_names)})"


@dataclass(frozen=True)
class AxiomReport:
    commutativity: float
    unit_law: float
    associativity: float
    tol: float = TOL_AXIOM

    @property
    def passed(self) -> bool:
        return max(self.commutativity, self.unit_law, self.associativity) <= self.tol

    def as_dict(self) -> dict:
        return {
            "commutativity": self.commutativity,
            "unit_law": self.unit_law,
            "associativity": self.associativity,
            "tol": self.tol,
            "passed": self.passed,
        }


@dataclass(frozen=True, eq=False)
class AlgebraPolynomial:
    """``p(w) = sum_r coeffs[r] w^r`` with algebra-valued coefficients.

    ``coeffs`` has shape ``(m + 1, d)``; row ``r`` is the coefficient of ``w^r``.
    """

    coeffs: np.ndarray = field()

    def __post_init__(self):
        c = np.asarray(self.coeffs)
        if c.ndim != 2 or c.shape[0] < 1:
            raise DimensionError(f"polynomial coefficients must have shape (m+1, d), got {c.shape}")
        object.__setattr__(self, "coeffs", _frozen(c))

    @classmethod
    def from_scalars(cls, table: AlgebraTable, scalars: Sequence[complex]) -> "AlgebraPolynomial":
        """Polynomial whose coefficients are scalar multiples of the unit."""
        c = np.zeros((len(scalars), table.dim), dtype=np.result_type(table.dtype, np.asarray(scalars).dtype))
        c[:, 0] = scalars
        return cls(c)

    @property
    def dim(self) -> int:
        return self.coeffs.shape[1]

    @property
    def length(self) -> int:
        return self.coeffs.shape[0]

    def degree(self, tol_lead: float = 0.0) -> int:
        """Largest power whose coefficient exceeds ``tol_lead`` in the max norm; -1 if none."""
        norms = np.max(np.abs(self.coeffs), axis=1)
        nz = np.nonzero(norms > tol_lead)[0]
        return int(nz[-1]) if nz.size else -1

    def __add__(self, other: "AlgebraPolynomial") -> "AlgebraPolynomial":
        if self.dim != other.dim:
            raise DimensionError("polynomials over algebras of different dimension")
        n = max(self.length, other.length)
        out = np.zeros((n, self.dim), dtype=np.result_type(self.coeffs, other.coeffs))
        out[: self.length] += self.coeffs
        out[: other.length] += other.coeffs
        return AlgebraPolynomial(out)

    def scaled(self, s: complex) -> "AlgebraPolynomial":
        return AlgebraPolynomial(s * self.coeffs)


# -- arithmetic -----------------------------------------------------------------

def _check(table: AlgebraTable, *elems: np.ndarray) -> None:
    for a in elems:
        if np.shape(a) != (table.dim,):
            raise DimensionError(f"element of shape {np.shape(a)} in algebra of dimension {table.dim}")


def add(table: AlgebraTable, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    _check(table, a, b)
    return a + b


def neg(table: AlgebraTable, a: np.ndarray) -> np.ndarray:
    _check(table, a)
    return -a


def scalar_mul(table: AlgebraTable, s: complex, a: np.ndarray) -> np.ndarray:
    _check(table, a)
    if not table.is_complex and np.iscomplexobj(s) and np.imag(s) != 0:
        raise ValueError("complex scalar in a real algebra")
    if not table.is_complex:
        s = np.real(s)
    return s * a


def mul(table: AlgebraTable, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Product via the structure constants.

    The outer product is symmetrised before contraction so that
    ``mul(a, b)`` and ``mul(b, a)`` are bit-identical on a commutative table.
    """
    _check(table, a, b)
    ab = np.multiply.outer(a, b)
    return 0.5 * np.tensordot(ab + ab.T, table.constants, axes=([0, 1], [0, 1]))


def regular_representation(table: AlgebraTable, a: np.ndarray) -> np.ndarray:
    """Matrix ``M`` with ``M @ v == mul(a, v)``; column j is ``a * e_j``."""
    _check(table, a)
    return np.einsum("i,ijk->kj", a, table.constants)


def eval_poly(table: AlgebraTable, p: AlgebraPolynomial, w: np.ndarray) -> np.ndarray:
    """Horner evaluation of ``p`` at ``w``."""
    _check(table, w)
    if p.dim != table.dim:
        raise DimensionError(f"polynomial of dimension {p.dim} in algebra of dimension {table.dim}")
    acc = np.array(p.coeffs[-1], dtype=np.result_type(p.coeffs, w))
    for r in range(p.length - 2, -1, -1):
        acc = mul(table, acc, w) + p.coeffs[r]
    return acc


def power(table: AlgebraTable, a: np.ndarray, n: int) -> np.ndarray:
    out = table.unit().astype(np.result_type(table.dtype, a))
    for _ in range(n):
        out = mul(table, out, a)
    return out


def verify_algebra(table: AlgebraTable, tol_axiom: float = TOL_AXIOM) -> AxiomReport:
    if tol_axiom < 0:
        raise ValueError("tol_axiom must be nonnegative")
    c = table.constants
    d = table.dim
    comm = float(np.max(np.abs(c - c.transpose(1, 0, 2))))
    eye = np.eye(d)
    unit = float(max(np.max(np.abs(c[0] - eye)), np.max(np.abs(c[:, 0, :] - eye))))
    # (e_i e_j) e_k  vs  e_i (e_j e_k), both indexed [i, j, k, q]
    left = np.einsum("ijp,pkq->ijkq", c, c)
    right = np.einsum("jkp,ipq->ijkq", c, c)
    assoc = float(np.max(np.abs(left - right)))
    return AxiomReport(comm, unit, assoc, tol_axiom)


# -- algebra file format --------------------------------------------------------

def parse_algebra(text: bytes | str, source: str | None = None) -> AlgebraTable:
    """Parse the algebra text format.

    ::

        field: R
        dim: 4
        names: 1 e f g
        mul 1 1 : 1 0 0 0
        ...

    One ``mul i j`` line is required for each unordered pair of non-unit
    indices; products with the unit are synthesised and may only be given
    if they agree with the unit law.
    """
    try:
        return _parse_algebra(text)
    except ParseError as exc:
        if source and not exc.source:
            exc.source = source
        raise


def _parse_algebra(text: bytes | str) -> AlgebraTable:
    lines = list(iter_lines(text))
    if not lines:
        raise ParseError("empty algebra file")
    try:
        fld = FieldTag.from_text(parse_header(lines[0], "field"))
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise lines[0].error(str(exc), lines[0].text.partition(":")[2].strip()) from None
    if len(lines) < 2:
        raise ParseError("missing 'dim:' line")
    d = parse_count(parse_header(lines[1], "dim"), lines[1], "dim", minimum=1)
    real_only = fld is FieldTag.REAL

    names: tuple[str, ...] = ()
    rest = lines[2:]
    if rest and rest[0].text.startswith("names"):
        tokens = parse_header(rest[0], "names").split()
        if len(tokens) != d:
            raise rest[0].error(f"expected {d} names, found {len(tokens)}")
        if len(set(tokens)) != d:
            raise rest[0].error("duplicate basis names")
        names = tuple(tokens)
        rest = rest[1:]

    c = np.zeros((d, d, d), dtype=fld.dtype)
    c[0] = np.eye(d)
    c[:, 0, :] = np.eye(d)
    seen: dict[tuple[int, int], int] = {}
    for line in rest:
        i, j, values = _parse_mul(line, d, real_only)
        if i == 0 or j == 0:
            other = j if i == 0 else i
            expected = np.zeros(d)
            expected[other] = 1
            if np.any(np.asarray(values) != expected):
                raise line.error(f"product with the unit e0*e{other} must equal e{other}")
            continue
        key = (min(i, j), max(i, j))
        if key in seen:
            raise line.error(f"duplicate product for pair {key} (first given on line {seen[key]})")
        seen[key] = line.number
        c[i, j] = values
        c[j, i] = values

    for i in range(1, d):
        for j in range(i, d):
            if (i, j) not in seen:
                raise ParseError(f"missing product line for pair ({i}, {j})")
    return AlgebraTable(fld, c, names)


def _parse_mul(line: Line, d: int, real_only: bool) -> tuple[int, int, list]:
    head, sep, tail = line.text.partition(":")
    parts = head.split()
    if not sep or len(parts) != 3 or parts[0] != "mul":
        raise line.error("expected 'mul <i> <j> : <scalars>'")
    idx = []
    for tok in parts[1:]:
        k = parse_count(tok, line, "basis index")
        if k >= d:
            raise line.error(f"basis index {k} out of range for dim {d}", tok)
        idx.append(k)
    values = parse_scalars(tail.split(), d, line, real_only)
    return idx[0], idx[1], values


def format_algebra(table: AlgebraTable) -> str:
    lines = [f"field: {table.field.value}", f"dim: {table.dim}",
             "names: " + " ".join(table.basis_names)]
    for i in range(1, table.dim):
        for j in range(i, table.dim):
            lines.append(f"mul {i} {j} : {table.format_element(table.constants[i, j])}")
    return "\n".join(lines) + "\n"


def parse_element(text: str, table: AlgebraTable) -> np.ndarray:
    """Parse ``d`` whitespace-separated scalars into an element."""
    line = Line(1, text.strip(), text)
    return table.element(parse_scalars(text.split(), table.dim, line, not table.is_complex))
