"""Reference computations that share no code path with the library internals."""

import numpy as np


def mul_loops(c, a, b):
    d = len(a)
    out = [0j] * d
    for i in range(d):
        for j in range(d):
            for k in range(d):
                out[k] += a[i] * b[j] * c[i][j][k]
    return np.array(out)


def assoc_residual_loops(c):
    d = len(c)
    worst = 0.0
    for i in range(d):
        for j in range(d):
            for k in range(d):
                for q in range(d):
                    left = sum(c[i][j][p] * c[p][k][q] for p in range(d))
                    right = sum(c[j][k][p] * c[i][p][q] for p in range(d))
                    worst = max(worst, abs(left - right))
    return worst


def batch_mul(c, a, b):
    return np.einsum("si,sj,ijk->sk", a, b, c)


def batch_eval(c, coeffs, w):
    acc = np.broadcast_to(coeffs[-1], w.shape).astype(complex)
    for a_r in coeffs[-2::-1]:
        acc = batch_mul(c, acc, w) + a_r
    return acc


def newton_multistart(c, coeffs, starts, iters=100, tol=1e-10):
    """Algebra Newton iteration w <- w - p(w) / p'(w) on a batch of starts.

    Division is a linear solve with the regular representation of p'(w).
    Returns the converged iterates (step norm below ``tol`` and finite).
    """
    m = len(coeffs) - 1
    dcoeffs = np.array([r * coeffs[r] for r in range(1, m + 1)])
    w = np.array(starts, dtype=complex)
    done = np.zeros(len(w), dtype=bool)
    alive = np.ones(len(w), dtype=bool)
    for _ in range(iters):
        idx = np.nonzero(alive & ~done)[0]
        if idx.size == 0:
            break
        ws = w[idx]
        f = batch_eval(c, coeffs, ws)
        df = batch_eval(c, dcoeffs, ws)
        mats = np.einsum("si,ijk->skj", df, c)
        conds = np.linalg.cond(mats)
        ok = np.isfinite(conds) & (conds < 1e12)
        step = np.zeros_like(ws)
        step[ok] = np.linalg.solve(mats[ok], f[ok][..., None])[..., 0]
        alive[idx[~ok]] = False
        w[idx] = ws - step
        conv = ok & (np.max(np.abs(step), axis=1) < tol)
        done[idx[conv]] = True
    return w[done]


def lagrange_free_idempotent_check(c, v):
    """max |v*v - v| by loops."""
    return float(np.max(np.abs(mul_loops(c, v, v) - v)))
