"""Assembly of the boundary-scheme matrices as sums of structured parts.

Every scheme matrix is represented as a list of scaled parts (Toeplitz,
Hankel, single columns, sparse border entries, embedded tau blocks), each
with an O(m log m) matrix-free apply and an exact dense form.  The grid
convention is x_j = a + j*dx for j = 0..N, so a full-wall operator has
m = N + 1 rows including both endpoints.

Sign convention: the matrices are assembled exactly as they act in the
one-step systems, with negative diagonal t0 = g1 = -alpha; the factor 1/2
of the beta = 0 combinations lives in the part scales, never inside the
weight arrays.  Spectral routines that want a positive-definite operator
negate at their level.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .glkernel import gl_coefficients, tail_sums, toeplitz_coefficients, validate_alpha
from .transforms import tau_apply, tau_dense, tau_eigenvalues

__all__ = [
    "BoundaryScheme",
    "StructuredOperator",
    "ShiftedOperator",
    "assemble",
    "assemble_open",
    "assemble_dirichlet",
    "assemble_reflective",
    "assemble_antisymmetric",
    "assemble_antireflective",
    "assemble_truncated",
    "toeplitz_dense",
    "hankel_dense",
]

DENSE_LIMIT = 4096  # 128 MB of float64 at the default cap


class BoundaryScheme(Enum):
    OPEN = "open"
    DIRICHLET = "dirichlet"
    REFLECTIVE = "reflective"
    ANTISYMMETRIC = "antisymmetric"
    ANTIREFLECTIVE = "antireflective"
    ANTISYMMETRIC_TRUNC = "antisymmetric-trunc"
    ANTIREFLECTIVE_TRUNC = "antireflective-trunc"


def toeplitz_dense(col: np.ndarray, row: np.ndarray) -> np.ndarray:
    """Dense Toeplitz matrix from first column and first row."""
    m = len(col)
    i = np.arange(m)
    d = i[:, None] - i[None, :]
    return np.where(d >= 0, col[np.abs(d)], row[np.abs(d)])


def hankel_dense(anti: np.ndarray) -> np.ndarray:
    """Dense Hankel matrix with antidiagonal entries anti[i + j]."""
    m = (len(anti) + 1) // 2
    i = np.arange(m)
    return anti[i[:, None] + i[None, :]]


class _ToeplitzPart:
    """General Toeplitz block; applies through a cached circulant embedding."""

    def __init__(self, col: np.ndarray, row: np.ndarray, scale: float):
        if len(col) != len(row):
            raise ValueError("column and row lengths differ")
        self.col = np.asarray(col, dtype=np.float64)
        self.row = np.asarray(row, dtype=np.float64)
        self.scale = float(scale)
        m = len(col)
        circ = np.concatenate((self.col, [0.0], self.row[1:][::-1]))
        self._spec = np.fft.fft(circ)
        self._m = m

    def apply(self, v: np.ndarray) -> np.ndarray:
        vv = np.fft.fft(v, n=2 * self._m)
        return self.scale * np.fft.ifft(self._spec * vv).real[: self._m]

    def dense(self) -> np.ndarray:
        return self.scale * toeplitz_dense(self.col, self.row)


class _HankelPart:
    """Full Hankel block, applied as Toeplitz acting on the flipped vector."""

    def __init__(self, anti: np.ndarray, scale: float):
        anti = np.asarray(anti, dtype=np.float64)
        m = (len(anti) + 1) // 2
        if len(anti) != 2 * m - 1:
            raise ValueError("antidiagonal length must be odd (2m-1)")
        self.anti = anti
        self.scale = float(scale)
        self._flip_toep = _ToeplitzPart(anti[m - 1 :], anti[: m][::-1], 1.0)

    def apply(self, v: np.ndarray) -> np.ndarray:
        return self.scale * self._flip_toep.apply(v[::-1])

    def dense(self) -> np.ndarray:
        return self.scale * hankel_dense(self.anti)


class _ColumnPart:
    """Rank-one block values * e_index^T."""

    def __init__(self, index: int, values: np.ndarray, scale: float):
        self.index = int(index)
        self.values = np.asarray(values, dtype=np.float64)
        self.scale = float(scale)

    def apply(self, v: np.ndarray) -> np.ndarray:
        return (self.scale * v[self.index]) * self.values

    def dense(self) -> np.ndarray:
        m = len(self.values)
        out = np.zeros((m, m))
        out[:, self.index] = self.scale * self.values
        return out


class _SparsePart:
    """A handful of explicit (row, col, value) border entries."""

    def __init__(self, m: int, entries: list[tuple[int, int, float]], scale: float):
        self.m = int(m)
        self.entries = [(int(i), int(j), float(v)) for i, j, v in entries]
        self.scale = float(scale)

    def apply(self, v: np.ndarray) -> np.ndarray:
        out = np.zeros(self.m)
        for i, j, val in self.entries:
            out[i] += self.scale * val * v[j]
        return out

    def dense(self) -> np.ndarray:
        out = np.zeros((self.m, self.m))
        for i, j, val in self.entries:
            out[i, j] += self.scale * val
        return out


class _TauPart:
    """Tau-algebra block embedded with a row/column offset."""

    def __init__(self, t: np.ndarray, m: int, offset: int, scale: float):
        self.t = np.asarray(t, dtype=np.float64)
        self.m = int(m)
        self.offset = int(offset)
        self.scale = float(scale)
        self.size = self.m - 2 * self.offset
        if self.size < 1:
            raise ValueError("offset leaves no interior block")
        self.lam = tau_eigenvalues(self.t, self.size)

    def apply(self, v: np.ndarray) -> np.ndarray:
        out = np.zeros(self.m)
        o = self.offset
        sl = slice(o, self.m - o)
        out[sl] = self.scale * tau_apply(self.lam, v[sl])
        return out

    def dense(self) -> np.ndarray:
        out = np.zeros((self.m, self.m))
        o = self.offset
        sl = slice(o, self.m - o)
        out[sl, sl] = self.scale * tau_dense(self.t, self.size)
        return out


@dataclass(frozen=True)
class StructuredOperator:
    """A boundary-scheme matrix as a sum of structured parts.

    Immutable after assembly; ``apply`` is re-entrant.  ``meta`` carries the
    scheme-specific data (Toeplitz coefficients, border columns, corner
    values) consumed by preconditioners and the bordered direct solver.
    """

    m: int
    scheme: BoundaryScheme
    alpha: float
    beta: float
    parts: tuple = ()
    meta: dict = field(default_factory=dict)

    def apply(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=np.float64)
        if v.shape != (self.m,):
            raise ValueError(f"expected vector of length {self.m}, got {v.shape}")
        out = np.zeros(self.m)
        for part in self.parts:
            out += part.apply(v)
        return out

    def dense(self, limit: int = DENSE_LIMIT) -> np.ndarray:
        if self.m > limit:
            raise ValueError(f"size {self.m} above dense limit {limit}")
        out = np.zeros((self.m, self.m))
        for part in self.parts:
            out += part.dense()
        return out


@dataclass(frozen=True)
class ShiftedOperator:
    """The one-step map nu*I - mu*A on top of a structured operator."""

    op: StructuredOperator
    nu: float = 1.0
    mu: float = 0.0

    @property
    def m(self) -> int:
        return self.op.m

    def apply(self, v: np.ndarray) -> np.ndarray:
        return self.nu * v - self.mu * self.op.apply(v)

    def dense(self, limit: int = DENSE_LIMIT) -> np.ndarray:
        return self.nu * np.eye(self.op.m) - self.mu * self.op.dense(limit)


def _weights_for(alpha: float, m: int, full_wall: bool) -> np.ndarray:
    # full-wall schemes need g[0 .. 2N+1] with N = m - 1
    return gl_coefficients(alpha, 2 * m - 1 if full_wall else m)


def _check_beta(beta: float) -> float:
    beta = float(beta)
    if not -1.0 < beta < 1.0:
        raise ValueError(f"beta must lie in (-1, 1), got {beta}")
    return beta


def assemble_open(alpha: float, beta: float, m: int) -> StructuredOperator:
    """Zero-exterior (open / numerical Dirichlet) Toeplitz operator.

    Convex combination of the lower-Hessenberg weight Toeplitz (first
    column g1..gm, first row g1, g0, 0, ...) and its transpose with weights
    (1 +- beta)/2; beta = 0 gives the symmetric Toeplitz with diagonal
    coefficients t.
    """
    alpha = validate_alpha(alpha)
    beta = _check_beta(beta)
    if m < 2:
        raise ValueError("need m >= 2")
    g = gl_coefficients(alpha, m)
    col = g[1 : m + 1]
    row = np.zeros(m)
    row[0], row[1] = g[1], g[0]
    w_l, w_r = 0.5 * (1.0 + beta), 0.5 * (1.0 - beta)
    parts = (_ToeplitzPart(col, row, w_l), _ToeplitzPart(row, col, w_r))
    t = toeplitz_coefficients(g, m - 1)
    return StructuredOperator(
        m, BoundaryScheme.OPEN, alpha, beta, parts, {"t": t, "g": g}
    )


def _wall_parts(g: np.ndarray, m: int, hankel_sign: float, w_l: float, w_r: float,
                antireflective: bool, z: np.ndarray | None):
    """Shared part list for the reflect-type schemes on a full wall.

    ``hankel_sign`` is -1 when the exterior is reflected with negation
    (anti-symmetric / anti-reflective) and +1 for plain reflection.  The
    de-Hankel column restores the zero first/last Hankel column, and the
    sparse entries carry the across-the-wall g0 corrections of the first
    and last rows.
    """
    n = m - 1
    col = g[1 : m + 1]
    row = np.zeros(m)
    row[0], row[1] = g[1], g[0]
    h_left = g[1 : 2 * m]           # antidiagonals g[i+j+1]
    h_right = h_left[::-1]          # antidiagonals g[2N+1-i-j]
    gvec = g[1 : m + 1].copy()

    parts = [
        _ToeplitzPart(col, row, w_l),
        _HankelPart(h_left, hankel_sign * w_l),
        _ColumnPart(0, -hankel_sign * gvec, w_l),
        _ToeplitzPart(row, col, w_r),
        _HankelPart(h_right, hankel_sign * w_r),
        _ColumnPart(m - 1, -hankel_sign * gvec[::-1], w_r),
    ]
    if antireflective:
        # row N, exterior point one step past the wall: g0*(2*U_N - U_{N-1})
        parts += [
            _SparsePart(m, [(n, n - 1, -g[0]), (n, n, 2.0 * g[0])], w_l),
            _SparsePart(m, [(0, 1, -g[0]), (0, 0, 2.0 * g[0])], w_r),
            _ColumnPart(0, z[1 : n + 2], w_l),
            _ColumnPart(m - 1, z[1 : n + 2][::-1], w_r),
        ]
    else:
        # across-the-wall g0 term reflects like the rest of the exterior
        parts += [
            _SparsePart(m, [(n, n - 1, hankel_sign * g[0])], w_l),
            _SparsePart(m, [(0, 1, hankel_sign * g[0])], w_r),
        ]
    return parts


def assemble_antisymmetric(alpha: float, beta: float, m: int) -> StructuredOperator:
    """Anti-symmetric wall scheme: exterior values reflected and negated.

    The exterior sums are cut one wall-width out (N terms), which is what
    confines the Hankel corrections to the printed band.
    """
    alpha = validate_alpha(alpha)
    beta = _check_beta(beta)
    if m < 3:
        raise ValueError("need m >= 3 to host the border pattern")
    g = _weights_for(alpha, m, full_wall=True)
    w_l, w_r = 0.5 * (1.0 + beta), 0.5 * (1.0 - beta)
    parts = tuple(_wall_parts(g, m, -1.0, w_l, w_r, antireflective=False, z=None))
    t = toeplitz_coefficients(g, m - 1)
    return StructuredOperator(
        m, BoundaryScheme.ANTISYMMETRIC, alpha, beta, parts, {"t": t, "g": g}
    )


def assemble_antireflective(alpha: float, beta: float, m: int) -> StructuredOperator:
    """Anti-reflective wall scheme: exterior values 2*u(wall) - u(mirror).

    Same Hankel structure as the anti-symmetric scheme plus the first/last
    column tail-sum corrections and the doubled-corner entries.
    """
    alpha = validate_alpha(alpha)
    beta = _check_beta(beta)
    if m < 3:
        raise ValueError("need m >= 3 to host the border pattern")
    n = m - 1
    g = _weights_for(alpha, m, full_wall=True)
    z, z_trunc = tail_sums(g, n)
    w_l, w_r = 0.5 * (1.0 + beta), 0.5 * (1.0 - beta)
    parts = tuple(_wall_parts(g, m, -1.0, w_l, w_r, antireflective=True, z=z))
    t = toeplitz_coefficients(g, m - 1)
    return StructuredOperator(
        m,
        BoundaryScheme.ANTIREFLECTIVE,
        alpha,
        beta,
        parts,
        {"t": t, "g": g, "z": z, "z_trunc": z_trunc},
    )


def assemble_reflective(alpha: float, beta: float, m: int) -> StructuredOperator:
    """Reflective (Neumann-type) wall scheme: exterior mirrored, no negation."""
    alpha = validate_alpha(alpha)
    beta = _check_beta(beta)
    if m < 3:
        raise ValueError("need m >= 3 to host the border pattern")
    g = _weights_for(alpha, m, full_wall=True)
    w_l, w_r = 0.5 * (1.0 + beta), 0.5 * (1.0 - beta)
    parts = tuple(_wall_parts(g, m, +1.0, w_l, w_r, antireflective=False, z=None))
    t = toeplitz_coefficients(g, m - 1)
    return StructuredOperator(
        m, BoundaryScheme.REFLECTIVE, alpha, beta, parts, {"t": t, "g": g}
    )


def assemble_dirichlet(
    alpha: float, beta: float, m: int, truncated: bool = False
) -> StructuredOperator:
    """Numerical Dirichlet scheme: alias of the open assembly.

    With ``truncated=True`` the operator is the pure tau matrix with the
    same Toeplitz coefficients (the boundary rows and columns are gone and
    the system is solvable by sine transforms alone).
    """
    if not truncated:
        op = assemble_open(alpha, beta, m)
        return StructuredOperator(
            m, BoundaryScheme.DIRICHLET, alpha, beta, op.parts, op.meta
        )
    alpha = validate_alpha(alpha)
    if float(beta) != 0.0:
        raise ValueError("truncated variants are defined for beta = 0 only")
    g = gl_coefficients(alpha, m + 1)
    t = toeplitz_coefficients(g, m)
    parts = (_TauPart(t[:m], m, 0, 1.0),)
    meta = {"t": t, "g": g, "tau_t": t[:m], "bordered": False}
    return StructuredOperator(m, BoundaryScheme.DIRICHLET, alpha, 0.0, parts, meta)


def assemble_truncated(
    scheme: BoundaryScheme, alpha: float, m: int
) -> StructuredOperator:
    """Bordered tau-algebra form of the wall schemes with cut weight sums.

    Rows 0 and m-1 are diagonal-only; the interior block is the tau matrix
    of the Toeplitz coefficients; the interior rows of columns 0 and m-1
    carry the wall couplings (with truncated tail sums for the
    anti-reflective case).  Defined for beta = 0; solvable directly by a
    scalar corner step plus one tau solve.
    """
    if scheme not in (
        BoundaryScheme.ANTISYMMETRIC_TRUNC,
        BoundaryScheme.ANTIREFLECTIVE_TRUNC,
    ):
        raise ValueError(f"not a truncated wall scheme: {scheme}")
    alpha = validate_alpha(alpha)
    if m < 3:
        raise ValueError("need m >= 3 to host the border pattern")
    n = m - 1
    g = gl_coefficients(alpha, max(2 * n + 1, n + 2))
    t = toeplitz_coefficients(g, n)
    _, z_trunc = tail_sums(g, n)

    # interior rows j = 1..n-1 of the (doubled) border columns
    border = np.zeros(m)
    border[1] = g[0] + g[2]
    border[2:n] = g[3 : n + 1]
    if scheme is BoundaryScheme.ANTIREFLECTIVE_TRUNC:
        corner = 2.0 * g[1] + 2.0 * g[0] + z_trunc[1]
        border[1 : n - 1] += z_trunc[2:n]
    else:
        corner = 2.0 * g[1]

    parts = (
        _TauPart(t[:n], m, 1, 1.0),
        _SparsePart(m, [(0, 0, corner), (n, n, corner)], 0.5),
        _ColumnPart(0, border, 0.5),
        _ColumnPart(m - 1, border[::-1], 0.5),
    )
    meta = {
        "t": t,
        "g": g,
        "z_trunc": z_trunc,
        "bordered": True,
        "tau_t": t[:n],
        "corner": 0.5 * corner,
        "border_col": 0.5 * border.copy(),
    }
    return StructuredOperator(m, scheme, alpha, 0.0, parts, meta)


def assemble(
    scheme: BoundaryScheme, alpha: float, beta: float, m: int
) -> StructuredOperator:
    """Assemble any scheme by tag (truncated tags require beta = 0)."""
    if scheme is BoundaryScheme.OPEN:
        return assemble_open(alpha, beta, m)
    if scheme is BoundaryScheme.DIRICHLET:
        return assemble_dirichlet(alpha, beta, m)
    if scheme is BoundaryScheme.REFLECTIVE:
        return assemble_reflective(alpha, beta, m)
    if scheme is BoundaryScheme.ANTISYMMETRIC:
        return assemble_antisymmetric(alpha, beta, m)
    if scheme is BoundaryScheme.ANTIREFLECTIVE:
        return assemble_antireflective(alpha, beta, m)
    if float(beta) != 0.0:
        raise ValueError("truncated variants are defined for beta = 0 only")
    return assemble_truncated(scheme, alpha, m)
