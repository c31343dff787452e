"""Fractional-order kernel quantities.

Everything downstream (matrix assembly, symbols, preconditioners) is built
from the Grunwald-Letnikov weights of a fractional order ``alpha`` in the
open interval (1, 2):

    g[0] = 1,   g[k+1] = -(alpha - k) / (k + 1) * g[k].

The weights alternate in sign only at the start: g[0] = 1, g[1] = -alpha,
and g[k] > 0, strictly decreasing, for k >= 2.  Their generating function
has a single zero of order exactly ``alpha`` at frequency 0, which drives
the m**(-alpha) decay of the smallest eigenvalues of the assembled
operators.

This module also houses the symmetric-Toeplitz coefficient sequence derived
from the weights, the tail sums entering the anti-reflective boundary
corrections, the generating symbol, and a self-contained gamma function
used by the manufactured source term.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "validate_alpha",
    "gl_coefficients",
    "toeplitz_coefficients",
    "tail_sums",
    "generating_symbol",
    "kappa_coefficient",
    "gamma_fn",
    "ScalingConstants",
]


def validate_alpha(alpha: float) -> float:
    """Check that the fractional order lies strictly inside (1, 2)."""
    alpha = float(alpha)
    if not 1.0 < alpha < 2.0:
        raise ValueError(f"fractional order must satisfy 1 < alpha < 2, got {alpha}")
    return alpha


def gl_coefficients(alpha: float, k_max: int) -> np.ndarray:
    """Grunwald-Letnikov weights g[0..k_max] for fractional order alpha.

    Evaluated by the forward recurrence in float64, term by term; the terms
    decay like k**(-1-alpha) so plain accumulation is accurate enough
    (cross-checked against a high-precision binomial oracle in the tests).
    """
    alpha = validate_alpha(alpha)
    if k_max < 1:
        raise ValueError(f"need at least one recurrence step, got k_max={k_max}")
    k = np.arange(k_max, dtype=np.float64)
    factors = np.empty(k_max + 1, dtype=np.float64)
    factors[0] = 1.0
    factors[1:] = -(alpha - k) / (k + 1.0)
    return np.cumprod(factors)


def toeplitz_coefficients(g: np.ndarray, n: int) -> np.ndarray:
    """Diagonal coefficients t[0..n] of the symmetric Toeplitz part.

    t[0] = g[1], t[1] = (g[0] + g[2]) / 2, t[i] = g[i+1] / 2 for i >= 2.
    Requires weights up to g[n+1].
    """
    if len(g) < n + 2:
        raise ValueError(f"need {n + 2} weights for {n + 1} coefficients, got {len(g)}")
    t = np.empty(n + 1, dtype=np.float64)
    t[0] = g[1]
    if n >= 1:
        t[1] = 0.5 * (g[0] + g[2])
    if n >= 2:
        t[2:] = 0.5 * g[3 : n + 2]
    return t


def tail_sums(g: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Boundary tail sums (z, z_trunc) for an interior resolution ``n``.

    Both arrays are 1-indexed with slot 0 unused (kept zero):

    * ``z[r] = 2 * sum(g[r+1 .. n+r])`` for r = 1 .. n+1, used by the
      nontruncated anti-reflective corrections; needs weights up to
      g[2n+1].
    * ``z_trunc[r] = 2 * sum(g[r+1 .. n])`` for r = 1 .. n-1 (zero from
      r = n on), the truncated counterpart.

    Computed from one cumulative-sum pass over the weights.
    """
    if len(g) < 2 * n + 2:
        raise ValueError(f"need {2 * n + 2} weights for tail sums, got {len(g)}")
    c = np.concatenate(([0.0], np.cumsum(g[: 2 * n + 2])))  # c[i] = sum(g[0..i-1])
    r = np.arange(1, n + 2)
    z = np.zeros(n + 2, dtype=np.float64)
    z[1:] = 2.0 * (c[n + r + 1] - c[r + 1])
    z_trunc = np.zeros(n + 1, dtype=np.float64)
    rt = np.arange(1, n)
    if n >= 2:
        z_trunc[1:n] = 2.0 * (c[n + 1] - c[rt + 1])
    return z, z_trunc


def generating_symbol(alpha: float, theta) -> np.ndarray | float:
    """Generating symbol of the (sign-flipped) symmetric Toeplitz part.

    Nonnegative on [-pi, pi] with a zero of order exactly alpha at 0;
    value 2**alpha at +-pi.  Principal branch of the complex power.
    """
    alpha = validate_alpha(alpha)
    th = np.asarray(theta, dtype=np.float64)
    base = 1.0 + np.exp(1j * (th + np.pi))
    f = -np.real(np.exp(-1j * th) * np.power(base, alpha))
    if np.ndim(theta) == 0:
        return float(f)
    return f


def kappa_coefficient(alpha: float) -> float:
    """Physical scaling 1 / cos(pi * alpha / 2); negative on (1, 2)."""
    alpha = validate_alpha(alpha)
    return 1.0 / np.cos(np.pi * alpha / 2.0)


# Lanczos approximation, order 7 with 9 coefficients; relative error is
# below 1e-13 for the positive arguments used here.
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def gamma_fn(x) -> np.ndarray | float:
    """Gamma function for positive arguments (Lanczos approximation)."""
    xs = np.asarray(x, dtype=np.float64)
    if np.any(xs <= 0.0):
        raise ValueError("gamma_fn requires positive arguments")
    y = xs - 1.0
    a = np.full_like(y, _LANCZOS_COEF[0])
    for i, c in enumerate(_LANCZOS_COEF[1:], start=1):
        a = a + c / (y + i)
    t = y + _LANCZOS_G + 0.5
    out = np.sqrt(2.0 * np.pi) * t ** (y + 0.5) * np.exp(-t) * a
    if np.ndim(x) == 0:
        return float(out)
    return out


@dataclass(frozen=True)
class ScalingConstants:
    """Scalars tying a space-time grid to the assembled operators.

    ``mu = k_coef * dt / dx**alpha`` is the weight in the one-step systems
    ``nu*I - mu*theta*A``; ``kappa`` is the physical prefactor
    1/cos(pi*alpha/2) (applied only when explicitly requested).
    """

    alpha: float
    kappa: float
    mu: float
    k_coef: float = 1.0
    nu: float = 1.0

    @classmethod
    def from_grid(
        cls,
        alpha: float,
        dx: float,
        dt: float,
        k_coef: float = 1.0,
        nu: float = 1.0,
    ) -> "ScalingConstants":
        alpha = validate_alpha(alpha)
        if dx <= 0.0 or dt <= 0.0:
            raise ValueError("grid spacings must be positive")
        return cls(
            alpha=alpha,
            kappa=kappa_coefficient(alpha),
            mu=k_coef * dt / dx**alpha,
            k_coef=k_coef,
            nu=nu,
        )
