"""Univariate polynomial roots by Aberth-Ehrlich simultaneous iteration."""

from __future__ import annotations

import numpy as np

from .errors import NonConvergence


def _trim(coeffs) -> np.ndarray:
    """Drop vanishing leading coefficients (ascending order input)."""
    c = np.asarray(coeffs, dtype=complex)
    scale = np.max(np.abs(c)) if c.size else 0.0
    n = c.size
    while n > 0 and abs(c[n - 1]) <= 1e-15 * scale:
        n -= 1
    return c[:n]


def _initial_guesses(c: np.ndarray) -> np.ndarray:
    # Points on a circle whose radius is the geometric-mean root modulus.
    deg = c.size - 1
    radius = abs(c[0] / c[-1]) ** (1.0 / deg) if c[0] != 0 else 1.0
    if not np.isfinite(radius) or radius == 0:
        radius = 1.0
    angles = 2 * np.pi * np.arange(deg) / deg + 0.4
    return radius * np.exp(1j * angles)


def polyroots(coeffs, tol: float = 1e-14, max_iter: int = 500) -> np.ndarray:
    """Roots of sum_k coeffs[k] z^k.

    Coefficients are in ascending order. Raises NonConvergence if the Aberth
    corrections have not dropped below ``tol`` (relative) after ``max_iter``
    sweeps. Leading zeros are removed; a nonzero constant has no roots.
    """
    c = _trim(coeffs)
    if c.size == 0:
        raise ValueError("zero polynomial has no isolated roots")
    deg = c.size - 1
    if deg == 0:
        return np.empty(0, dtype=complex)
    if deg == 1:
        return np.array([-c[0] / c[1]])

    desc = c[::-1]
    ddesc = np.polyder(desc)
    z = _initial_guesses(c)
    for _ in range(max_iter):
        pz = np.polyval(desc, z)
        dpz = np.polyval(ddesc, z)
        ratio = np.divide(pz, dpz, out=np.zeros_like(pz), where=dpz != 0)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        repulse = (1.0 / diff).sum(axis=1) - 1.0  # remove the diagonal's 1/1
        denom = 1.0 - ratio * repulse
        step = np.divide(ratio, denom, out=ratio.copy(), where=denom != 0)
        z = z - step
        if np.all(np.abs(step) <= tol * np.maximum(1.0, np.abs(z))):
            return z
    raise NonConvergence(f"Aberth iteration did not converge in {max_iter} sweeps")
