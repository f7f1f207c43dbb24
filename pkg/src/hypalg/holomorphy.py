"""Derivatives, Cauchy-Riemann residuals and Taylor sums for algebra functions.

A function is either an :class:`~hypalg.algebra.AlgebraPolynomial` (derivatives
are formal and exact) or any callable ``element -> element`` (derivatives by
central finite differences along the unit direction).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .algebra import AlgebraPolynomial, AlgebraTable, eval_poly, mul, power
from .errors import DimensionError, UnsupportedOrder

AlgebraFunction = Union[AlgebraPolynomial, Callable[[np.ndarray], np.ndarray]]

#: central-difference step for first partials, scaled by ``1 + |x|_inf``
DEFAULT_STEP = 1e-5
# per-order default steps for black-box derivatives (~eps ** (1 / (l + 2)))
_ORDER_STEPS = {1: 1e-5, 2: 1e-4, 3: 1e-3}
# order-l central stencils: offsets (in steps) and weights, divided by step**l
_STENCILS = {
    1: ((-1, 1), (-0.5, 0.5)),
    2: ((-1, 0, 1), (1.0, -2.0, 1.0)),
    3: ((-2, -1, 1, 2), (-0.5, 1.0, -1.0, 0.5)),
}
MAX_BLACKBOX_ORDER = 3


class Method(enum.Enum):
    FORMAL = "formal"
    FINITE_DIFFERENCE = "finite_difference"


@dataclass(frozen=True)
class DerivativeResult:
    value: np.ndarray
    method: Method
    step: float = 0.0


@dataclass(frozen=True)
class CRReport:
    residuals: tuple[float, ...]
    step: float
    tol: float = 1e-4

    @property
    def max_residual(self) -> float:
        return max(self.residuals, default=0.0)

    @property
    def holomorphic(self) -> bool:
        return self.max_residual <= self.tol


def _scale(x: np.ndarray) -> float:
    return 1.0 + float(np.max(np.abs(x)))


def evaluator(table: AlgebraTable, f: AlgebraFunction) -> Callable[[np.ndarray], np.ndarray]:
    if isinstance(f, AlgebraPolynomial):
        if f.dim != table.dim:
            raise DimensionError(f"polynomial of dimension {f.dim} in algebra of dimension {table.dim}")
        return lambda w: eval_poly(table, f, w)
    return f


def formal_poly_derivative(p: AlgebraPolynomial) -> AlgebraPolynomial:
    if p.length == 1:
        return AlgebraPolynomial(np.zeros_like(p.coeffs))
    r = np.arange(1, p.length)[:, None]
    return AlgebraPolynomial(r * p.coeffs[1:])


def directional_derivative(table: AlgebraTable, f: AlgebraFunction, x: np.ndarray, h: np.ndarray,
                           steps: tuple[float, ...] | None = None) -> np.ndarray:
    """Limit of ``(f(x + eps h) - f(x)) / eps``.

    Central differences at each step, then one Richardson extrapolation
    across the two smallest steps.
    """
    fn = evaluator(table, f)
    if steps is None:
        s = _scale(x)
        steps = (2e-3 * s, 1e-3 * s)
    if not steps:
        raise ValueError("steps must be nonempty")
    est = [(fn(x + eps * h) - fn(x - eps * h)) / (2 * eps) for eps in steps]
    if len(steps) == 1:
        return est[0]
    h1, h2 = steps[-2], steps[-1]
    d1, d2 = est[-2], est[-1]
    ratio = (h1 / h2) ** 2
    return d2 + (d2 - d1) / (ratio - 1)


def a_derivative(table: AlgebraTable, f: AlgebraFunction, x: np.ndarray, order: int = 1,
                 step: float | None = None) -> DerivativeResult:
    """``f^(l)(x)``: formal for polynomials, central differences along ``e_0`` otherwise."""
    if order < 0:
        raise ValueError("derivative order must be nonnegative")
    if isinstance(f, AlgebraPolynomial):
        p = f
        for _ in range(order):
            p = formal_poly_derivative(p)
        return DerivativeResult(eval_poly(table, p, x), Method.FORMAL)
    if order == 0:
        return DerivativeResult(f(x), Method.FINITE_DIFFERENCE)
    if order > MAX_BLACKBOX_ORDER:
        raise UnsupportedOrder(f"black-box derivatives are limited to order {MAX_BLACKBOX_ORDER}, got {order}")
    hstep = step if step is not None else _ORDER_STEPS[order] * _scale(x)
    unit = table.unit()
    offsets, weights = _STENCILS[order]
    acc = sum(w * f(x + k * hstep * unit) for k, w in zip(offsets, weights))
    return DerivativeResult(acc / hstep ** order, Method.FINITE_DIFFERENCE, hstep)


def partials(table: AlgebraTable, f: AlgebraFunction, x: np.ndarray, step: float) -> np.ndarray:
    """Row k is ``sum_j e_j du_j/dx_k`` by central differences."""
    fn = evaluator(table, f)
    rows = []
    for k in range(table.dim):
        ek = table.basis(k)
        rows.append((fn(x + step * ek) - fn(x - step * ek)) / (2 * step))
    return np.array(rows)


def check_cauchy_riemann(table: AlgebraTable, f: AlgebraFunction, x: np.ndarray,
                         step: float | None = None, tol: float = 1e-4) -> CRReport:
    """Residuals ``|D_k f - e_k * D_0 f|_inf`` for ``k = 1..d-1``."""
    hstep = step if step is not None else DEFAULT_STEP * _scale(x)
    jac = partials(table, f, x, hstep)
    res = []
    for k in range(1, table.dim):
        rhs = mul(table, table.basis(k), jac[0])
        res.append(float(np.max(np.abs(jac[k] - rhs))))
    return CRReport(tuple(res), hstep, tol)


def taylor_eval(table: AlgebraTable, f: AlgebraFunction, x: np.ndarray, h: np.ndarray,
                order: int) -> np.ndarray:
    """``sum_{l<=L} f^(l)(x) h^l / l!``."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    total = np.zeros(table.dim, dtype=np.result_type(table.dtype, x, h))
    for l in range(order + 1):
        d = a_derivative(table, f, x, l).value
        total = total + mul(table, d, power(table, h, l)) / math.factorial(l)
    return total


def conjugation(table: AlgebraTable) -> Callable[[np.ndarray], np.ndarray]:
    """``x0 e0 + sum x_k e_k  ->  x0 e0 - sum x_k e_k``; not holomorphic for d >= 2."""
    signs = -np.ones(table.dim)
    signs[0] = 1.0
    return lambda w: signs * w
