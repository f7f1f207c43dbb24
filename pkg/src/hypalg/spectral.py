"""Complete orthogonal idempotent systems and the Pierce decomposition.

For a commutative algebra that splits as ``K^d`` the regular representation
of a generic element ``g`` has ``d`` distinct eigenvalues ``lam_1..lam_d`` and
the primitive idempotents are ``p_l(g)`` where ``p_l`` is the Lagrange basis
polynomial with ``p_l(lam_j) = delta_lj``.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass

import numpy as np

from ._textio import iter_lines, parse_count, parse_header, parse_scalars
from .algebra import AlgebraPolynomial, AlgebraTable, eval_poly, mul, regular_representation
from .errors import (DimensionError, IncompleteSystem, NonSplit, NotSemisimpleOrDegenerate,
                     ParseError, VerificationFailed)

log = logging.getLogger(__name__)

TOL_IDEM = 1e-8
TOL_PIERCE = 1e-9


class Provenance(enum.Enum):
    DISCOVERED = "discovered"
    USER_SUPPLIED = "user_supplied"
    FIXTURE = "fixture"


@dataclass(frozen=True)
class SpectralConfig:
    seed: int = 0
    cluster_tol: float = 1e-6   # relative to the spectral radius
    max_retries: int = 8
    tol_idem: float = TOL_IDEM
    tol_imag: float = 1e-8      # relative; RealField spectra only
    polish_steps: int = 2


@dataclass(frozen=True, eq=False)
class IdempotentSystem:
    """Ordered idempotents, one per row of ``idems`` (shape ``(n, d)``)."""

    idems: np.ndarray
    provenance: Provenance = Provenance.USER_SUPPLIED
    tol_idem: float = TOL_IDEM
    seed: int | None = None
    attempts: int = 0

    def __post_init__(self):
        a = np.array(self.idems)
        if a.ndim != 2:
            raise DimensionError(f"idempotent system must have shape (n, d), got {a.shape}")
        a.setflags(write=False)
        object.__setattr__(self, "idems", a)

    @property
    def n(self) -> int:
        return self.idems.shape[0]

    @property
    def dim(self) -> int:
        return self.idems.shape[1]

    def __len__(self) -> int:
        return self.n

    def __iter__(self):
        return iter(self.idems)


@dataclass(frozen=True)
class SystemReport:
    n: int
    dim: int
    idempotency: float
    orthogonality: float
    completeness: float
    rank: int
    tol: float

    @property
    def independent(self) -> bool:
        return self.rank == self.n

    @property
    def complete(self) -> bool:
        return self.n == self.dim

    @property
    def passed(self) -> bool:
        return (self.independent
                and max(self.idempotency, self.orthogonality, self.completeness) <= self.tol)

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "dim": self.dim,
            "idempotency": self.idempotency,
            "orthogonality": self.orthogonality,
            "completeness": self.completeness,
            "rank": self.rank,
            "independent": self.independent,
            "complete": self.complete,
            "tol": self.tol,
            "passed": self.passed,
        }


def verify_idempotent_system(table: AlgebraTable, system: IdempotentSystem | np.ndarray,
                             tol_idem: float = TOL_IDEM) -> SystemReport:
    idems = system.idems if isinstance(system, IdempotentSystem) else np.atleast_2d(system)
    if idems.shape[1] != table.dim:
        raise DimensionError(f"idempotents of dimension {idems.shape[1]} in algebra of dimension {table.dim}")
    n = idems.shape[0]
    idem_res = orth_res = 0.0
    for p in range(n):
        idem_res = max(idem_res, float(np.max(np.abs(mul(table, idems[p], idems[p]) - idems[p]))))
        for r in range(p + 1, n):
            orth_res = max(orth_res, float(np.max(np.abs(mul(table, idems[p], idems[r])))))
    comp_res = float(np.max(np.abs(idems.sum(axis=0) - table.unit())))
    rank = int(np.linalg.matrix_rank(idems, tol=max(tol_idem, 1e-12))) if n else 0
    return SystemReport(n, table.dim, idem_res, orth_res, comp_res, rank, tol_idem)


def require_complete(table: AlgebraTable, system: IdempotentSystem) -> SystemReport:
    """Verify ``system`` and insist on one idempotent per dimension."""
    report = verify_idempotent_system(table, system, system.tol_idem)
    if not report.complete:
        raise IncompleteSystem(f"system has {report.n} idempotents but the algebra has dimension {report.dim}")
    if not report.passed:
        raise VerificationFailed(f"idempotent system fails verification: {report.as_dict()}")
    return report


def _canonical_order(idems: np.ndarray) -> np.ndarray:
    def key(v: np.ndarray) -> tuple:
        re = np.round(v.real, 9) + 0.0
        im = np.round(np.imag(v), 9) + 0.0
        return tuple(re) + tuple(im)

    order = sorted(range(len(idems)), key=lambda k: key(idems[k]))
    return idems[order]


def _min_separation(lam: np.ndarray) -> float:
    diff = np.abs(lam[:, None] - lam[None, :])
    np.fill_diagonal(diff, np.inf)
    return float(diff.min()) if len(lam) > 1 else np.inf


def _lagrange_idempotents(table: AlgebraTable, g: np.ndarray, lam: np.ndarray,
                          polish_steps: int) -> np.ndarray:
    out = []
    for l in range(len(lam)):
        others = np.delete(lam, l)
        coeffs = np.polynomial.polynomial.polyfromroots(others) / np.prod(lam[l] - others)
        i_l = eval_poly(table, AlgebraPolynomial.from_scalars(table, coeffs), g)
        # i <- 3i^2 - 2i^3 converges quadratically to the nearest idempotent
        for _ in range(polish_steps):
            sq = mul(table, i_l, i_l)
            i_l = 3 * sq - 2 * mul(table, sq, i_l)
        out.append(i_l)
    idems = np.array(out)
    if not table.is_complex:
        idems = idems.real
    return idems


def find_idempotent_system(table: AlgebraTable, config: SpectralConfig | None = None) -> IdempotentSystem:
    """Construct the primitive idempotents of ``table``.

    Raises :class:`NonSplit` when a real algebra shows a non-real spectrum,
    :class:`NotSemisimpleOrDegenerate` when eigenvalues stay clustered for
    every sampled element, and :class:`VerificationFailed` when candidates
    miss the invariants.
    """
    cfg = config or SpectralConfig()
    rng = np.random.default_rng(cfg.seed)
    clustered = nonreal = failed = 0
    d = table.dim
    for attempt in range(1, cfg.max_retries + 1):
        g = table.random_element(rng)
        lam = np.linalg.eigvals(regular_representation(table, g))
        scale = max(float(np.max(np.abs(lam))), np.finfo(float).tiny)
        if _min_separation(lam) <= cfg.cluster_tol * scale:
            clustered += 1
            log.debug("attempt %d: clustered spectrum %s", attempt, lam)
            continue
        if not table.is_complex:
            if np.max(np.abs(lam.imag)) > cfg.tol_imag * scale:
                nonreal += 1
                log.debug("attempt %d: non-real spectrum %s", attempt, lam)
                continue
            lam = lam.real
        idems = _lagrange_idempotents(table, g, lam, cfg.polish_steps)
        report = verify_idempotent_system(table, idems, cfg.tol_idem)
        if report.passed and report.n == d:
            return IdempotentSystem(_canonical_order(idems), Provenance.DISCOVERED,
                                    cfg.tol_idem, cfg.seed, attempt)
        failed += 1
        log.debug("attempt %d: verification failed %s", attempt, report)

    n = cfg.max_retries
    if nonreal:
        raise NonSplit(f"regular representation has non-real eigenvalues in {nonreal} of {n} "
                       "attempts; the algebra does not split over R", n)
    if failed and not clustered:
        raise VerificationFailed(f"constructed idempotents failed verification in {failed} attempts", n)
    raise NotSemisimpleOrDegenerate(f"eigenvalues clustered in {clustered} of {n} attempts; "
                                    "the algebra has no complete idempotent system", n)


def pierce_project(table: AlgebraTable, a: np.ndarray, system: IdempotentSystem) -> np.ndarray:
    """Scalars ``k_l`` with ``a * i_l = k_l i_l`` (least-squares extraction)."""
    out = []
    for i_l in system.idems:
        norm2 = np.vdot(i_l, i_l).real
        if norm2 == 0:
            raise VerificationFailed("zero idempotent in system")
        out.append(np.vdot(i_l, mul(table, a, i_l)) / norm2)
    ks = np.array(out)
    return ks.real if not table.is_complex and not np.iscomplexobj(a) else ks


def recombine(ks: np.ndarray, system: IdempotentSystem) -> np.ndarray:
    """``sum_l ks[l] * i_l``."""
    ks = np.asarray(ks)
    if ks.shape != (system.n,):
        raise DimensionError(f"{ks.shape[0] if ks.ndim else 0} scalars for {system.n} idempotents")
    return ks @ system.idems


# -- idempotent file format ------------------------------------------------------

def parse_idempotents(text: bytes | str, table: AlgebraTable, source: str | None = None,
                      tol_idem: float = TOL_IDEM) -> IdempotentSystem:
    """Read ``idempotents: <n>`` followed by ``n`` lines of ``d`` scalars.

    The result is not verified here; :func:`require_complete` does that
    before any use.
    """
    try:
        lines = list(iter_lines(text))
        if not lines:
            raise ParseError("empty idempotent file")
        n = parse_count(parse_header(lines[0], "idempotents"), lines[0], "idempotent count", minimum=1)
        body = lines[1:]
        if len(body) != n:
            raise ParseError(f"header declares {n} idempotents, found {len(body)} lines",
                             body[-1].number if body else lines[0].number)
        rows = [parse_scalars(line.text.split(), table.dim, line, not table.is_complex) for line in body]
    except ParseError as exc:
        if source and not exc.source:
            exc.source = source
        raise
    return IdempotentSystem(np.array(rows, dtype=table.dtype), Provenance.USER_SUPPLIED, tol_idem)


def format_idempotents(table: AlgebraTable, system: IdempotentSystem) -> str:
    lines = [f"idempotents: {system.n}"]
    lines += [table.format_element(i) for i in system.idems]
    return "\n".join(lines) + "\n"
