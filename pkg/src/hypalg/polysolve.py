"""Roots of algebra-valued polynomials through the Pierce decomposition.

Projecting every coefficient of ``p(w)`` onto the idempotents ``i_1..i_n``
splits ``p(w) = 0`` into ``n`` independent scalar equations; each scalar root
tuple ``(rho_1..rho_n)`` recombines into the algebra root ``sum rho_s i_s``.
"""

from __future__ import annotations

import enum
import itertools
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from ._textio import iter_lines, parse_count, parse_header, parse_scalars
from .algebra import AlgebraPolynomial, AlgebraTable, FieldTag, eval_poly
from .errors import DimensionError, ParseError
from .spectral import IdempotentSystem, pierce_project, recombine, require_complete

log = logging.getLogger(__name__)


class SolutionKind(enum.Enum):
    FINITE = "finite"
    ALL_OF_K = "all_of_k"
    EMPTY = "empty"


@dataclass(frozen=True)
class SolveOptions:
    tol_lead: float = 1e-12
    tol_imag: float = 1e-8
    tol_root: float = 1e-8
    newton_steps: int = 3
    max_roots: int = 4096


@dataclass(frozen=True)
class ComponentSolution:
    kind: SolutionKind
    roots: tuple = ()
    residuals: tuple = ()
    coeffs: tuple = ()

    def as_dict(self, complex_field: bool) -> dict:
        return {
            "kind": self.kind.value,
            "roots": [_scalar_out(r, complex_field) for r in self.roots],
            "residuals": list(self.residuals),
            "coefficients": [_scalar_out(c, complex_field) for c in self.coeffs],
        }


@dataclass(frozen=True)
class RootSet:
    components: tuple[ComponentSolution, ...]
    roots: tuple[np.ndarray, ...] = ()
    residuals: tuple[float, ...] = ()
    truncated: bool = False
    parametric: bool = False
    tol_root: float = 1e-8
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def verified(self) -> bool:
        return all(r <= self.tol_root for r in self.residuals)

    def as_dict(self, table: AlgebraTable) -> dict:
        cf = table.is_complex
        return {
            "roots": [[_scalar_out(x, cf) for x in w] for w in self.roots],
            "residuals": list(self.residuals),
            "components": [c.as_dict(cf) for c in self.components],
            "truncated": self.truncated,
            "parametric": self.parametric,
            "verified": self.verified,
            "tol_root": self.tol_root,
        }


def _scalar_out(z, complex_field: bool):
    """JSON-friendly scalar rounded at 1e-12: float, or ``[re, im]`` over C."""
    if complex_field:
        z = complex(z)
        return [round(z.real, 12) + 0.0, round(z.imag, 12) + 0.0]
    return round(float(np.real(z)), 12) + 0.0


# -- scalar polynomials ------------------------------------------------------------

def horner(coeffs: np.ndarray, x):
    """Evaluate ``sum coeffs[r] x^r``."""
    acc = coeffs[-1] * 1.0
    for c in coeffs[-2::-1]:
        acc = acc * x + c
    return acc


def balance(a: np.ndarray, radix: float = 2.0) -> np.ndarray:
    """Parlett-Reinsch diagonal similarity scaling that equalises row/column norms."""
    a = np.array(a, dtype=complex if np.iscomplexobj(a) else float)
    n = a.shape[0]
    sqrdx = radix * radix
    done = False
    while not done:
        done = True
        for i in range(n):
            c = np.sum(np.abs(a[:, i])) - abs(a[i, i])
            r = np.sum(np.abs(a[i, :])) - abs(a[i, i])
            if c == 0 or r == 0:
                continue
            g = r / radix
            f = 1.0
            s = c + r
            while c < g:
                f *= radix
                c *= sqrdx
            g = r * radix
            while c > g:
                f /= radix
                c /= sqrdx
            if (c + r) / f < 0.95 * s:
                done = False
                a[i, :] /= f
                a[:, i] *= f
    return a


def companion(coeffs: np.ndarray) -> np.ndarray:
    """Companion matrix of ``sum coeffs[r] x^r`` (nonzero leading coefficient)."""
    m = len(coeffs) - 1
    monic = np.asarray(coeffs[:-1]) / coeffs[-1]
    c = np.zeros((m, m), dtype=np.result_type(monic, float))
    c[1:, :-1] = np.eye(m - 1)
    c[:, -1] = -monic
    return c


def _newton_polish(coeffs: np.ndarray, deriv: np.ndarray, x, steps: int):
    fx = horner(coeffs, x)
    for _ in range(steps):
        dfx = horner(deriv, x)
        if dfx == 0:
            break
        y = x - fx / dfx
        fy = horner(coeffs, y)
        if not abs(fy) < abs(fx):
            break
        x, fx = y, fy
    return x


def solve_scalar(q, field: FieldTag = FieldTag.COMPLEX, opts: SolveOptions | None = None) -> ComponentSolution:
    """All roots of ``sum q[r] x^r`` in the field.

    Leading coefficients with ``|q_r| <= tol_lead`` are stripped first.  The
    identically-zero polynomial is ``ALL_OF_K``, a nonzero constant is
    ``EMPTY``.  Over R, roots whose imaginary part exceeds ``tol_imag``
    after polishing are dropped.
    """
    opts = opts or SolveOptions()
    q = np.asarray(q)
    if field is FieldTag.REAL:
        if np.iscomplexobj(q) and np.any(np.abs(q.imag) > opts.tol_lead):
            raise ValueError("complex coefficients for a real-field scalar polynomial")
        q = q.real.astype(float)
    coeffs_out = tuple(q.tolist())
    big = np.nonzero(np.abs(q) > opts.tol_lead)[0]
    if big.size == 0:
        return ComponentSolution(SolutionKind.ALL_OF_K, coeffs=coeffs_out)
    deg = int(big[-1])
    if deg == 0:
        return ComponentSolution(SolutionKind.EMPTY, coeffs=coeffs_out)
    q = q[: deg + 1]
    deriv = q[1:] * np.arange(1, deg + 1)

    if deg == 1:
        raw = np.array([-q[0] / q[1]], dtype=complex)
    else:
        raw = np.linalg.eigvals(balance(companion(q)))
    roots = []
    for rho in raw:
        rho = _newton_polish(q, deriv, complex(rho), opts.newton_steps)
        if field is FieldTag.REAL:
            if abs(rho.imag) > opts.tol_imag:
                continue
            rho = _newton_polish(q, deriv, rho.real, opts.newton_steps)
        roots.append(rho)
    roots.sort(key=lambda z: (round(np.real(z), 9), round(np.imag(z), 9)))
    residuals = tuple(float(abs(horner(q, r))) for r in roots)
    return ComponentSolution(SolutionKind.FINITE, tuple(roots), residuals, coeffs_out)


# -- algebra polynomials ------------------------------------------------------------

def reduce(table: AlgebraTable, p: AlgebraPolynomial, system: IdempotentSystem) -> list[np.ndarray]:
    """Component scalar polynomials; entry ``s`` holds ``pierce_project(a_r)_s`` for each r."""
    if p.dim != table.dim:
        raise DimensionError(f"polynomial of dimension {p.dim} in algebra of dimension {table.dim}")
    require_complete(table, system)
    ks = np.array([pierce_project(table, a_r, system) for a_r in p.coeffs])  # (m+1, n)
    return [ks[:, s].copy() for s in range(system.n)]


def residual(table: AlgebraTable, p: AlgebraPolynomial, w: np.ndarray) -> float:
    return float(np.max(np.abs(eval_poly(table, p, w))))


def _root_key(w: np.ndarray) -> tuple:
    return tuple(np.round(w.real, 9) + 0.0) + tuple(np.round(np.imag(w), 9) + 0.0)


def solve(table: AlgebraTable, p: AlgebraPolynomial, system: IdempotentSystem,
          opts: SolveOptions | None = None) -> RootSet:
    """Every root of ``p(w) = 0`` obtainable from the component roots.

    Components classified ``ALL_OF_K`` set ``parametric``; the enumerated
    roots then use 0 as the representative for those free components.  Any
    ``EMPTY`` component leaves the root list empty.
    """
    opts = opts or SolveOptions()
    components = tuple(solve_scalar(q, table.field, opts) for q in reduce(table, p, system))
    parametric = any(c.kind is SolutionKind.ALL_OF_K for c in components)
    notes = []
    if any(c.kind is SolutionKind.EMPTY for c in components):
        return RootSet(components, parametric=parametric, tol_root=opts.tol_root)

    choices = [c.roots if c.kind is SolutionKind.FINITE else (0.0,) for c in components]
    total = math.prod(len(c) for c in choices)
    truncated = total > opts.max_roots
    if truncated:
        notes.append(f"enumeration truncated to {opts.max_roots} of {total} roots")
        log.warning(notes[-1])
    roots = []
    for sel in itertools.islice(itertools.product(*choices), opts.max_roots):
        roots.append(recombine(np.array(sel, dtype=table.dtype), system))
    roots.sort(key=_root_key)
    residuals = tuple(residual(table, p, w) for w in roots)
    bad = sum(r > opts.tol_root for r in residuals)
    if bad:
        notes.append(f"{bad} roots exceed tol_root={opts.tol_root:g}")
        log.warning(notes[-1])
    return RootSet(components, tuple(roots), residuals, truncated, parametric,
                   opts.tol_root, tuple(notes))


# -- polynomial file format -----------------------------------------------------

def parse_polynomial(text: bytes | str, table: AlgebraTable, source: str | None = None) -> AlgebraPolynomial:
    """Read ``degree: <m>`` then ``coeff <r> : <d scalars>`` lines; absent powers are zero."""
    try:
        lines = list(iter_lines(text))
        if not lines:
            raise ParseError("empty polynomial file")
        m = parse_count(parse_header(lines[0], "degree"), lines[0], "degree")
        coeffs = np.zeros((m + 1, table.dim), dtype=table.dtype)
        seen: dict[int, int] = {}
        for line in lines[1:]:
            head, sep, tail = line.text.partition(":")
            parts = head.split()
            if not sep or len(parts) != 2 or parts[0] != "coeff":
                raise line.error("expected 'coeff <r> : <scalars>'")
            r = parse_count(parts[1], line, "power")
            if r > m:
                raise line.error(f"power {r} exceeds declared degree {m}", parts[1])
            if r in seen:
                raise line.error(f"duplicate coefficient for power {r} (first on line {seen[r]})")
            seen[r] = line.number
            coeffs[r] = parse_scalars(tail.split(), table.dim, line, not table.is_complex)
    except ParseError as exc:
        if source and not exc.source:
            exc.source = source
        raise
    return AlgebraPolynomial(coeffs)


def format_polynomial(table: AlgebraTable, p: AlgebraPolynomial) -> str:
    lines = [f"degree: {p.length - 1}"]
    for r, a in enumerate(p.coeffs):
        if np.any(a != 0):
            lines.append(f"coeff {r} : {table.format_element(a)}")
    return "\n".join(lines) + "\n"
