"""Fast transforms and algebra solves: FFT, DST-I, circulant and tau kernels.

The FFT entry points wrap numpy's pocketfft backend, which supports every
transform length without padding; the sine transform is reduced to a real
FFT of length 2(n+1) through the classical odd extension.  The tau algebra
(matrices diagonalized by the symmetric, involutory DST-I) gets eigenvalue,
apply, solve and dense kernels here; the structured assemblies and the
bordered direct solver build on them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "fft",
    "ifft",
    "Dst1Plan",
    "dst1",
    "tau_eigenvalues",
    "tau_apply",
    "tau_solve",
    "tau_dense",
    "circulant_eigenvalues",
    "circulant_apply",
    "circulant_solve",
    "SingularSpectrumError",
    "spectrum_solve",
]


class SingularSpectrumError(ValueError):
    """Raised when an algebra solve meets a numerically singular spectrum."""

    def __init__(self, index: int, value: float):
        self.index = int(index)
        self.value = float(value)
        super().__init__(f"near-zero eigenvalue {value:.3e} at index {index}")


def fft(v: np.ndarray) -> np.ndarray:
    """Unnormalized forward DFT, any length >= 1."""
    v = np.asarray(v)
    if v.shape[-1] < 1:
        raise ValueError("empty transform")
    return np.fft.fft(v)


def ifft(v: np.ndarray) -> np.ndarray:
    """Inverse of :func:`fft` (1/n-normalized backward DFT)."""
    return np.fft.ifft(np.asarray(v))


@dataclass(frozen=True)
class Dst1Plan:
    """Length tag for the symmetric-orthogonal DST-I (S @ S = I)."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("transform length must be >= 1")

    def matrix(self) -> np.ndarray:
        """Dense transform matrix, for oracle tests and small projections."""
        j = np.arange(1, self.n + 1)
        return np.sqrt(2.0 / (self.n + 1)) * np.sin(np.outer(j, j) * np.pi / (self.n + 1))


def dst1(v: np.ndarray, plan: Dst1Plan | None = None) -> np.ndarray:
    """Symmetric-orthogonal DST-I along the last axis (involution).

    y[j] = sqrt(2/(n+1)) * sum_k v[k] sin(jk pi/(n+1)), via the odd
    extension of length 2(n+1) and one real FFT.
    """
    v = np.asarray(v, dtype=np.float64)
    n = v.shape[-1]
    if plan is not None and plan.n != n:
        raise ValueError(f"plan length {plan.n} does not match input length {n}")
    w = np.zeros(v.shape[:-1] + (2 * (n + 1),), dtype=np.float64)
    w[..., 1 : n + 1] = v
    w[..., n + 2 :] = -v[..., ::-1]
    spec = np.fft.rfft(w)
    return -0.5 * np.sqrt(2.0 / (n + 1)) * spec.imag[..., 1 : n + 1]


def tau_eigenvalues(t: np.ndarray, m: int) -> np.ndarray:
    """Eigenvalues of the size-m tau matrix with coefficients t[0..].

    lam[j] = t[0] + 2*sum_k t[k] cos(k j pi/(m+1)), j = 1..m: the
    coefficient cosine series sampled on the DST-I frequency grid.  The
    series is folded modulo the 2(m+1)-periodic grid and evaluated with a
    single real FFT.
    """
    t = np.asarray(t, dtype=np.float64)
    if m < 1:
        raise ValueError("matrix size must be >= 1")
    period = 2 * (m + 1)
    coef = np.concatenate(([t[0]], 2.0 * t[1:])) if len(t) > 1 else np.array([t[0]])
    b = np.zeros(period, dtype=np.float64)
    np.add.at(b, np.arange(len(coef)) % period, coef)
    return np.fft.rfft(b).real[1 : m + 1]


def tau_apply(lam: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Apply the tau matrix with eigenvalues ``lam`` (two DST-I passes)."""
    return dst1(lam * dst1(v))


def _check_spectrum(lam: np.ndarray, rel_floor: float = 1e-14) -> None:
    mags = np.abs(lam)
    floor = rel_floor * mags.max()
    idx = int(np.argmin(mags))
    if mags[idx] <= floor:
        raise SingularSpectrumError(idx, lam[idx])


def tau_solve(lam: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve the tau system diagonalized by DST-I with eigenvalues lam."""
    _check_spectrum(lam)
    return dst1(dst1(b) / lam)


def tau_dense(t: np.ndarray, m: int) -> np.ndarray:
    """Dense size-m tau matrix from coefficients t[0..] (exact entries).

    Entry (p, q), 1-indexed, is the even coefficient extension summed over
    the sine-reflection images of p-q and p+q modulo 2(m+1), with the p+q
    images entering negatively.
    """
    t = np.asarray(t, dtype=np.float64)

    def lookup(s: np.ndarray) -> np.ndarray:
        s = np.abs(s)
        out = np.zeros(s.shape, dtype=np.float64)
        mask = s < len(t)
        out[mask] = t[s[mask]]
        return out

    p = np.arange(1, m + 1)
    diff = p[:, None] - p[None, :]
    summ = p[:, None] + p[None, :]
    period = 2 * (m + 1)
    reach = int(np.ceil((len(t) + 2 * m) / period)) + 1
    mat = np.zeros((m, m), dtype=np.float64)
    for j in range(-reach, reach + 1):
        mat += lookup(diff + j * period) - lookup(summ + j * period)
    return mat


def circulant_eigenvalues(col: np.ndarray) -> np.ndarray:
    """Circulant spectrum: DFT of the first column."""
    return np.fft.fft(np.asarray(col, dtype=np.float64))


def circulant_apply(spectrum: np.ndarray, v: np.ndarray) -> np.ndarray:
    out = np.fft.ifft(spectrum * np.fft.fft(v))
    return out.real if np.isrealobj(v) else out


def circulant_solve(spectrum: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve the circulant system with the given spectrum."""
    _check_spectrum(spectrum)
    out = np.fft.ifft(np.fft.fft(b) / spectrum)
    return out.real if np.isrealobj(b) else out


def spectrum_solve(kind: str, spectrum: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Dispatch an exact algebra solve by spectrum kind (tau or circulant)."""
    if kind == "tau":
        return tau_solve(spectrum, b)
    if kind == "circulant":
        return circulant_solve(spectrum, b)
    raise ValueError(f"unknown algebra kind {kind!r}")
