"""Nelder-Mead simplex minimization."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import NonConvergence


@dataclass(frozen=True)
class SimplexResult:
    x: np.ndarray
    fun: float
    iterations: int
    evaluations: int
    diameter: float


def _diameter(pts: np.ndarray) -> float:
    diffs = pts[:, None, :] - pts[None, :, :]
    return float(np.max(np.linalg.norm(diffs, axis=-1)))


def nelder_mead(
    func: Callable[[np.ndarray], float],
    x0,
    step=0.1,
    tol: float = 1e-12,
    max_evals: int = 10_000,
    reflect: float = 1.0,
    expand: float = 2.0,
    contract: float = 0.5,
    shrink: float = 0.5,
) -> SimplexResult:
    """Minimize ``func`` from ``x0`` until the simplex diameter is below ``tol``.

    The initial simplex is x0 plus ``step`` along each coordinate axis.
    Non-finite function values are treated as +inf. Raises NonConvergence
    once ``max_evals`` evaluations are spent.
    """
    x0 = np.asarray(x0, dtype=float)
    dim = x0.size
    evals = 0

    def f(x):
        nonlocal evals
        if evals >= max_evals:
            raise NonConvergence(f"simplex search exceeded {max_evals} evaluations")
        evals += 1
        v = float(func(x))
        return v if np.isfinite(v) else np.inf

    steps = np.broadcast_to(np.asarray(step, dtype=float), (dim,))
    pts = np.vstack([x0] + [x0 + steps[i] * np.eye(dim)[i] for i in range(dim)])
    vals = np.array([f(p) for p in pts])

    it = 0
    while True:
        order = np.argsort(vals, kind="stable")
        pts, vals = pts[order], vals[order]
        diam = _diameter(pts)
        if diam < tol:
            return SimplexResult(pts[0].copy(), float(vals[0]), it, evals, diam)
        it += 1

        centroid = pts[:-1].mean(axis=0)
        worst = pts[-1]
        xr = centroid + reflect * (centroid - worst)
        fr = f(xr)
        if fr < vals[0]:
            xe = centroid + expand * (xr - centroid)
            fe = f(xe)
            if fe < fr:
                pts[-1], vals[-1] = xe, fe
            else:
                pts[-1], vals[-1] = xr, fr
            continue
        if fr < vals[-2]:
            pts[-1], vals[-1] = xr, fr
            continue
        if fr < vals[-1]:
            xc = centroid + contract * (xr - centroid)  # outside contraction
            fc = f(xc)
            if fc <= fr:
                pts[-1], vals[-1] = xc, fc
                continue
        else:
            xc = centroid + contract * (worst - centroid)  # inside contraction
            fc = f(xc)
            if fc < vals[-1]:
                pts[-1], vals[-1] = xc, fc
                continue
        for i in range(1, dim + 1):
            pts[i] = pts[0] + shrink * (pts[i] - pts[0])
            vals[i] = f(pts[i])
