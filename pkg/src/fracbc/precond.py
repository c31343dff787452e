"""Circulant and tau preconditioners built from the symmetric Toeplitz part.

Four families: Strang circulant (copy the central diagonals), Frobenius
optimal circulant, natural tau (same coefficients), Frobenius optimal tau
(diagonal of the sine-transformed Toeplitz part).  Every preconditioner is
stored as the spectrum of its algebra representative; ``lift`` maps the
spectrum onto the one-step matrix nu*I - mu*P, and ``apply_inverse`` is an
exact O(m log m) solve inside the algebra.

The base Toeplitz coefficients are always those of the symmetric part of
the open scheme, regardless of which wall scheme is being preconditioned:
border and Hankel corrections are never projected.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .transforms import (
    SingularSpectrumError,
    circulant_solve,
    dst1,
    tau_eigenvalues,
    tau_solve,
)

__all__ = [
    "Preconditioner",
    "strang_circulant",
    "optimal_circulant",
    "natural_tau",
    "optimal_tau",
    "lift",
    "apply_inverse",
    "from_name",
    "PRECONDITIONER_NAMES",
]

PRECONDITIONER_NAMES = ("none", "strang", "circ-opt", "tau", "tau-opt")


@dataclass(frozen=True)
class Preconditioner:
    """Algebra preconditioner held as (kind, spectrum of the representative)."""

    kind: str  # "circulant" | "tau" | "none"
    name: str
    spectrum: np.ndarray | None
    m: int

    def is_identity(self) -> bool:
        return self.kind == "none"


def strang_circulant(t: np.ndarray, m: int) -> Preconditioner:
    """Circulant copying the central Toeplitz diagonals (symmetric input)."""
    if m < 2:
        raise ValueError("need m >= 2")
    t = np.asarray(t, dtype=np.float64)
    c = np.zeros(m)
    half = m // 2
    top = min(half, len(t) - 1)
    c[: top + 1] = t[: top + 1]
    j = np.arange(half + 1, m)
    idx = m - j
    mask = idx < len(t)
    c[j[mask]] = t[idx[mask]]
    spectrum = np.fft.fft(c)
    return Preconditioner("circulant", "strang", spectrum, m)


def optimal_circulant(t: np.ndarray, m: int) -> Preconditioner:
    """Frobenius-closest circulant to the symmetric Toeplitz: diagonal averaging."""
    if m < 2:
        raise ValueError("need m >= 2")
    t = np.asarray(t, dtype=np.float64)
    full = np.zeros(m)
    k = min(len(t), m)
    full[:k] = t[:k]
    j = np.arange(m, dtype=np.float64)
    mirrored = np.roll(full[::-1], 1)  # mirrored[j] = t_{m-j} for j >= 1
    c = ((m - j) * full + j * mirrored) / m
    spectrum = np.fft.fft(c)
    return Preconditioner("circulant", "circ-opt", spectrum, m)


def natural_tau(t: np.ndarray, m: int) -> Preconditioner:
    """Tau matrix with the Toeplitz coefficients themselves."""
    if m < 2:
        raise ValueError("need m >= 2")
    lam = tau_eigenvalues(np.asarray(t, dtype=np.float64)[:m], m)
    return Preconditioner("tau", "tau", lam, m)


def optimal_tau(apply_toeplitz, m: int, chunk: int = 256) -> Preconditioner:
    """Frobenius-optimal tau approximation of the symmetric Toeplitz part.

    Spectrum = diagonal of S T S, computed by transforming batches of sine
    basis vectors through the matrix-free Toeplitz apply (O(m^2 log m) at
    the sizes used here).  ``apply_toeplitz`` must accept (m, k) blocks.
    """
    if m < 2:
        raise ValueError("need m >= 2")
    j = np.arange(1, m + 1)
    norm = np.sqrt(2.0 / (m + 1))
    lam = np.empty(m)
    for start in range(0, m, chunk):
        cols = j[start : start + chunk]
        s_block = norm * np.sin(np.outer(j, cols) * np.pi / (m + 1))
        ts_block = apply_toeplitz(s_block)
        lam[start : start + chunk] = np.einsum("ij,ij->j", s_block, ts_block)
    return Preconditioner("tau", "tau-opt", lam, m)


def lift(p: Preconditioner, nu: float, mu: float) -> Preconditioner:
    """Map the base spectrum onto the one-step matrix nu*I - mu*P."""
    if p.is_identity():
        return p
    spectrum = nu - mu * p.spectrum
    if np.abs(spectrum).min() < 1e-13:
        idx = int(np.argmin(np.abs(spectrum)))
        raise SingularSpectrumError(idx, np.abs(spectrum)[idx])
    return replace(p, spectrum=spectrum)


def apply_inverse(p: Preconditioner, v: np.ndarray) -> np.ndarray:
    """Exact solve inside the preconditioner's algebra."""
    if p.is_identity():
        return v
    if p.kind == "circulant":
        return circulant_solve(p.spectrum, v)
    return tau_solve(p.spectrum, v)


def from_name(
    name: str, t: np.ndarray, m: int, apply_toeplitz=None
) -> Preconditioner:
    """Build a preconditioner by CLI name (see PRECONDITIONER_NAMES)."""
    if name == "none":
        return Preconditioner("none", "none", None, m)
    if name == "strang":
        return strang_circulant(t, m)
    if name == "circ-opt":
        return optimal_circulant(t, m)
    if name == "tau":
        return natural_tau(t, m)
    if name == "tau-opt":
        if apply_toeplitz is None:
            raise ValueError("optimal tau needs the matrix-free Toeplitz apply")
        return optimal_tau(apply_toeplitz, m)
    raise ValueError(f"unknown preconditioner {name!r}")
