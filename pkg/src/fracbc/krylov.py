"""Restart-free GMRES and the fast direct solver for the bordered schemes.

GMRES: Arnoldi with modified Gram-Schmidt (one extra orthogonalization
sweep when the projection collapses the vector norm), Givens-rotation
least squares, zero initial guess by default.  With left preconditioning
the monitored quantity is the preconditioned relative residual
||M^-1 (b - A x)|| / ||M^-1 b||; with right preconditioning it is the true
one.  The iteration count is the Krylov dimension at convergence.

The bordered solver exploits the truncated-scheme layout: diagonal-only
first/last rows decouple the corner unknowns, the interior couples to them
through two known columns, and the interior block is a tau solve.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .precond import Preconditioner, apply_inverse, lift
from .structure import BoundaryScheme, ShiftedOperator, StructuredOperator
from .transforms import tau_eigenvalues, tau_solve

__all__ = ["GmresConfig", "SolveReport", "gmres", "solve_direct_bordered"]


@dataclass(frozen=True)
class GmresConfig:
    tol: float = 1e-6
    maxit: int | None = None  # default 5*m, capped at m
    side: str = "left"  # "left" | "right"
    record_history: bool = True
    reorth_drop: float = 1e-8  # re-orthogonalize when the MGS sweep shrinks
    # the vector below this fraction of its norm

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError("tolerance must be positive")
        if self.side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")


@dataclass
class SolveReport:
    solution: np.ndarray
    iterations: int
    residuals: np.ndarray = field(default_factory=lambda: np.empty(0))
    converged: bool = False


def _as_apply(op):
    if callable(op):
        return op
    return op.apply


def gmres(
    op,
    b: np.ndarray,
    precond: Preconditioner | None = None,
    config: GmresConfig | None = None,
    x0: np.ndarray | None = None,
) -> SolveReport:
    """Solve op @ x = b by full GMRES with an optional algebra preconditioner.

    ``op`` is a callable v -> A v or an object with ``.apply``.
    """
    cfg = config or GmresConfig()
    apply_op = _as_apply(op)
    b = np.asarray(b, dtype=np.float64)
    n = b.shape[0]
    maxit = cfg.maxit if cfg.maxit is not None else 5 * n
    maxit = min(maxit, n)
    left = precond is not None and not precond.is_identity() and cfg.side == "left"
    right = precond is not None and not precond.is_identity() and cfg.side == "right"

    def prec(v):
        return apply_inverse(precond, v)

    if x0 is None:
        r = b.copy()
    else:
        r = b - apply_op(np.asarray(x0, dtype=np.float64))
    if left:
        r = prec(r)
    beta = np.linalg.norm(r)
    history = [1.0]
    if beta == 0.0:
        return SolveReport(np.zeros(n) if x0 is None else x0.copy(), 0,
                           np.asarray(history), True)

    cap = min(64, maxit)
    Q = np.empty((n, cap + 1), order="F")
    H = np.zeros((cap + 1, cap))
    Q[:, 0] = r / beta
    cos = np.empty(maxit)
    sin = np.empty(maxit)
    g = np.zeros(maxit + 1)
    g[0] = beta

    converged = False
    j = 0
    for j in range(maxit):
        if j == cap:  # grow the Krylov storage
            new_cap = min(2 * cap, maxit)
            Q_new = np.empty((n, new_cap + 1), order="F")
            Q_new[:, : cap + 1] = Q
            H_new = np.zeros((new_cap + 1, new_cap))
            H_new[: cap + 1, :cap] = H
            Q, H, cap = Q_new, H_new, new_cap

        v = Q[:, j]
        if right:
            w = apply_op(prec(v))
        elif left:
            w = prec(apply_op(v))
        else:
            w = apply_op(v)
        norm_before = np.linalg.norm(w)

        h = Q[:, : j + 1].T @ w
        w = w - Q[:, : j + 1] @ h
        norm_after = np.linalg.norm(w)
        if norm_after <= cfg.reorth_drop * norm_before:
            h2 = Q[:, : j + 1].T @ w
            w = w - Q[:, : j + 1] @ h2
            h += h2
            norm_after = np.linalg.norm(w)
        H[: j + 1, j] = h
        H[j + 1, j] = norm_after
        subdiag = norm_after

        # apply the accumulated Givens rotations to the new column
        col = H[: j + 2, j]
        for i in range(j):
            tmp = cos[i] * col[i] + sin[i] * col[i + 1]
            col[i + 1] = -sin[i] * col[i] + cos[i] * col[i + 1]
            col[i] = tmp
        denom = np.hypot(col[j], col[j + 1])
        if denom == 0.0:
            cos[j], sin[j] = 1.0, 0.0
        else:
            cos[j], sin[j] = col[j] / denom, col[j + 1] / denom
        col[j] = denom
        col[j + 1] = 0.0
        g[j + 1] = -sin[j] * g[j]
        g[j] = cos[j] * g[j]

        relres = abs(g[j + 1]) / beta
        history.append(relres)
        happy = subdiag <= 1e-14 * max(1.0, norm_before)
        if relres <= cfg.tol or happy:
            converged = True
            j += 1
            break
        if subdiag == 0.0:
            j += 1
            break
        Q[:, j + 1] = w / subdiag
    else:
        j = maxit

    k = j
    y = np.zeros(k)
    for i in range(k - 1, -1, -1):
        y[i] = (g[i] - H[i, i + 1 : k] @ y[i + 1 : k]) / H[i, i]
    x = Q[:, :k] @ y
    if right:
        x = prec(x)
    if x0 is not None:
        x = x + x0
    residuals = np.asarray(history) if cfg.record_history else np.empty(0)
    return SolveReport(x, k, residuals, converged)


def solve_direct_bordered(
    op: StructuredOperator, nu: float, mu: float, b: np.ndarray
) -> np.ndarray:
    """Direct O(m log m) solve of (nu*I - mu*A) x = b for truncated schemes.

    Corner rows are diagonal-only, so x[0] and x[-1] come out scalar-wise;
    their border columns are moved to the right-hand side and the interior
    tau system is solved by sine transforms.  Also accepts the truncated
    Dirichlet operator (pure tau, no border step).
    """
    meta = op.meta
    if "tau_t" not in meta:
        raise ValueError("operator was not assembled in truncated form")
    b = np.asarray(b, dtype=np.float64)
    if b.shape != (op.m,):
        raise ValueError(f"expected vector of length {op.m}, got {b.shape}")

    if not meta.get("bordered", False):
        lam = nu - mu * tau_eigenvalues(meta["tau_t"], op.m)
        return tau_solve(lam, b)

    m = op.m
    corner = nu - mu * meta["corner"]
    if abs(corner) < 1e-300 or not np.isfinite(corner):
        raise ZeroDivisionError("singular corner entry in bordered solve")
    x0 = b[0] / corner
    x1 = b[m - 1] / corner
    col = meta["border_col"]
    rhs = b[1 : m - 1] + mu * (x0 * col[1 : m - 1] + x1 * col[::-1][1 : m - 1])
    lam = nu - mu * tau_eigenvalues(meta["tau_t"], m - 2)
    x = np.empty(m)
    x[0] = x0
    x[m - 1] = x1
    x[1 : m - 1] = tau_solve(lam, rhs)
    return x
