"""Theta-method time integration under any boundary scheme.

One step solves

    (I - mu*theta*A) U(t+dt) = (I + mu*(1-theta)*A) U(t)
                               + dt * (theta*S(t+dt) + (1-theta)*S(t))

with mu = k_coef * dt / dx**alpha and A from the structure module.  Known
physical endpoint values are enforced either by pinning the endpoint
entries after each solve (full-wall schemes, where the endpoints are
unknowns of the numerical boundary rule) or by dropping the endpoint rows
and columns entirely (Dirichlet, where they carry no information).

Inner solves: bordered tau direct solver for the truncated schemes, dense
solves at oracle sizes, tau-preconditioned GMRES otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .krylov import GmresConfig, gmres, solve_direct_bordered
from .precond import natural_tau, lift
from .structure import (
    BoundaryScheme,
    ShiftedOperator,
    StructuredOperator,
    assemble,
    assemble_dirichlet,
)
from .glkernel import validate_alpha

__all__ = ["GridSpec", "StepSystem", "build_step_system", "step", "evolve",
           "SolutionHistory"]

DENSE_SOLVE_LIMIT = 512


@dataclass(frozen=True)
class GridSpec:
    """Uniform space-time grid on [a, b]: nodes x_j = a + j*dx, j = 0..n."""

    a: float
    b: float
    n: int
    dt: float

    def __post_init__(self):
        if self.n < 4:
            raise ValueError("need at least a handful of intervals")
        if self.b <= self.a or self.dt <= 0.0:
            raise ValueError("degenerate grid")

    @property
    def dx(self) -> float:
        return (self.b - self.a) / self.n

    @property
    def nodes(self) -> np.ndarray:
        return self.a + self.dx * np.arange(self.n + 1)


@dataclass
class StepSystem:
    """Frozen one-step data: operator, theta weights, solver and source."""

    scheme: BoundaryScheme
    theta: float
    grid: GridSpec
    alpha: float
    mu: float
    operator: StructuredOperator
    lhs: ShiftedOperator
    rhs_map: ShiftedOperator
    solver: str  # "bordered" | "dense" | "gmres"
    active: slice  # slice of grid nodes carried as unknowns
    source: Callable | None = None
    boundary_values: tuple[float, float] | None = (0.0, 0.0)
    precond: object = None
    lhs_dense: np.ndarray | None = None
    gmres_config: GmresConfig = field(default_factory=lambda: GmresConfig(tol=1e-10))


def build_step_system(
    scheme: BoundaryScheme,
    theta: float,
    grid: GridSpec,
    alpha: float,
    beta: float = 0.0,
    k_coef: float = 1.0,
    source: Callable | None = None,
    truncated: bool = False,
    reduce_endpoints: bool | None = None,
    solver: str | None = None,
    gmres_tol: float = 1e-10,
) -> StepSystem:
    """Assemble the theta-step pair for one boundary scheme.

    ``reduce_endpoints`` defaults to True for the Dirichlet scheme (the
    endpoint unknowns carry nothing) and False elsewhere (the wall rules
    couple through the endpoint values, which are pinned after each solve).
    ``truncated`` switches to the tau-algebra variants (beta = 0 only).
    """
    alpha = validate_alpha(alpha)
    if not 0.0 <= theta <= 1.0:
        raise ValueError("theta must lie in [0, 1]")
    mu = k_coef * grid.dt / grid.dx**alpha

    if reduce_endpoints is None:
        reduce_endpoints = scheme is BoundaryScheme.DIRICHLET
    if scheme is BoundaryScheme.DIRICHLET:
        if not reduce_endpoints:
            raise ValueError("Dirichlet runs drop the endpoint rows")
        m = grid.n - 1
        active = slice(1, grid.n)
        op = assemble_dirichlet(alpha, beta, m, truncated=truncated)
    else:
        if truncated:
            trunc_tag = {
                BoundaryScheme.ANTISYMMETRIC: BoundaryScheme.ANTISYMMETRIC_TRUNC,
                BoundaryScheme.ANTIREFLECTIVE: BoundaryScheme.ANTIREFLECTIVE_TRUNC,
            }.get(scheme, scheme)
            if trunc_tag in (
                BoundaryScheme.ANTISYMMETRIC_TRUNC,
                BoundaryScheme.ANTIREFLECTIVE_TRUNC,
            ):
                scheme = trunc_tag
            else:
                raise ValueError(f"no truncated variant for {scheme}")
        m = grid.n + 1
        active = slice(0, grid.n + 1)
        op = assemble(scheme, alpha, beta, m)

    lhs = ShiftedOperator(op, 1.0, mu * theta)
    rhs_map = ShiftedOperator(op, 1.0, -mu * (1.0 - theta))

    if solver is None:
        if op.meta.get("tau_t") is not None:
            solver = "bordered"
        elif theta == 0.0:
            solver = "explicit"
        elif m <= DENSE_SOLVE_LIMIT:
            solver = "dense"
        else:
            solver = "gmres"

    precond = None
    lhs_dense = None
    if solver == "gmres" and theta > 0.0:
        precond = lift(natural_tau(op.meta["t"], m), 1.0, mu * theta)
    elif solver == "dense" and theta > 0.0:
        lhs_dense = lhs.dense()

    return StepSystem(
        scheme=scheme,
        theta=theta,
        grid=grid,
        alpha=alpha,
        mu=mu,
        operator=op,
        lhs=lhs,
        rhs_map=rhs_map,
        solver=solver,
        active=active,
        source=source,
        precond=precond,
        lhs_dense=lhs_dense,
        gmres_config=GmresConfig(tol=gmres_tol, record_history=False),
    )


def _solve_lhs(sys: StepSystem, rhs: np.ndarray) -> np.ndarray:
    if sys.theta == 0.0 or sys.solver == "explicit":
        return rhs
    if sys.solver == "bordered":
        return solve_direct_bordered(sys.operator, 1.0, sys.mu * sys.theta, rhs)
    if sys.solver == "dense":
        return np.linalg.solve(sys.lhs_dense, rhs)
    report = gmres(sys.lhs, rhs, sys.precond, sys.gmres_config)
    if not report.converged:
        raise RuntimeError(
            f"inner GMRES stalled at residual {report.residuals[-1] if len(report.residuals) else float('nan'):.3e}"
        )
    return report.solution


def step(sys: StepSystem, state: np.ndarray, t: float) -> np.ndarray:
    """Advance the active unknowns from t to t + dt."""
    state = np.asarray(state, dtype=np.float64)
    rhs = sys.rhs_map.apply(state)
    if sys.source is not None:
        x = sys.grid.nodes[sys.active]
        dt = sys.grid.dt
        s_new = sys.source(sys.alpha, x, t + dt)
        if sys.theta == 1.0:
            rhs = rhs + dt * s_new
        else:
            s_old = sys.source(sys.alpha, x, t)
            rhs = rhs + dt * (sys.theta * s_new + (1.0 - sys.theta) * s_old)
    out = _solve_lhs(sys, rhs)
    if sys.boundary_values is not None and sys.active == slice(0, sys.grid.n + 1):
        out[0], out[-1] = sys.boundary_values
    return out


@dataclass
class SolutionHistory:
    times: list[float]
    states: list[np.ndarray]
    errors: list[float] | None = None


def evolve(
    sys: StepSystem,
    state0: np.ndarray,
    t_end: float,
    snapshot_times: list[float] | None = None,
    exact: Callable | None = None,
) -> SolutionHistory:
    """Repeated stepping with snapshots at requested times.

    ``t_end`` must be a whole number of steps (to 1e-12 relative); snapshot
    times are matched to the nearest step boundary at the same tolerance.
    If ``exact(x, t)`` is given, the recorded error is the max-norm error
    over the full node set at each snapshot.
    """
    dt = sys.grid.dt
    n_steps = int(round(t_end / dt))
    if abs(n_steps * dt - t_end) > 1e-12 * max(1.0, abs(t_end)):
        raise ValueError("t_end is not a whole number of steps")
    snap_idx = {}
    for ts in snapshot_times or [t_end]:
        k = int(round(ts / dt))
        if abs(k * dt - ts) > 1e-9 * max(1.0, abs(ts)):
            raise ValueError(f"snapshot time {ts} off the step grid")
        snap_idx[k] = ts

    state = np.asarray(state0, dtype=np.float64).copy()
    hist = SolutionHistory([], [], [] if exact is not None else None)

    def record(k: int):
        ts = snap_idx[k]
        full = embed_full(sys, state)
        hist.times.append(ts)
        hist.states.append(full)
        if exact is not None:
            hist.errors.append(float(np.max(np.abs(full - exact(sys.grid.nodes, ts)))))

    if 0 in snap_idx:
        record(0)
    for k in range(1, n_steps + 1):
        state = step(sys, state, (k - 1) * dt)
        if k in snap_idx:
            record(k)
    return hist


def embed_full(sys: StepSystem, state: np.ndarray) -> np.ndarray:
    """Embed the active unknowns into the full node set (endpoints filled)."""
    if sys.active == slice(0, sys.grid.n + 1):
        return state.copy()
    full = np.zeros(sys.grid.n + 1)
    full[sys.active] = state
    if sys.boundary_values is not None:
        full[0], full[-1] = sys.boundary_values
    return full
