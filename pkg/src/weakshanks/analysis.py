"""Root criterion for the degree-1 OPA, (alpha, r) scans and quotient minimization.

The symmetric degree-1 OPA p0 + p1 (z1 + z2) has a zero in the open bidisk
exactly when 2|p1| > |p0|, and |p0| / (2|p1|) = (a + c) / (2b) where
a = c_{0,0}, b = c_{0,1}, c = c_{1,-1}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericalError
from .hypergeom import DEFAULT_MAX_TERMS, DEFAULT_TOL
from .moments import FunctionParams, abc
from .simplex import nelder_mead

R_BARRIER = 2.0 + 1e-9


@dataclass(frozen=True)
class CriterionReport:
    params: FunctionParams
    a: float
    b: float
    c: float
    lhs: float  # 2b
    rhs: float  # a + c
    quotient: float  # (a + c) / (2b); +inf when b = 0
    has_root: bool


def check_criterion(
    params: FunctionParams, tol: float = DEFAULT_TOL, max_terms: int = DEFAULT_MAX_TERMS
) -> CriterionReport:
    a, b, c = abc(params, tol, max_terms)
    lhs, rhs = 2 * b, a + c
    q = rhs / lhs if lhs > 0 else math.inf
    return CriterionReport(params, a, b, c, lhs, rhs, q, lhs > rhs)


def quotient(
    params: FunctionParams, tol: float = DEFAULT_TOL, max_terms: int = DEFAULT_MAX_TERMS
) -> float:
    """(a + c) / (2b); below 1 iff the degree-1 OPA vanishes somewhere in the bidisk."""
    return check_criterion(params, tol, max_terms).quotient


@dataclass(frozen=True, eq=False)
class ScanResult:
    alphas: np.ndarray
    rs: np.ndarray
    verdicts: np.ndarray  # bool, shape (len(alphas), len(rs))
    quotients: np.ndarray  # NaN where the evaluation failed


def scan_region(
    alpha_range: tuple[float, float, int],
    r_range: tuple[float, float, int],
    tol: float = DEFAULT_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> ScanResult:
    """Evaluate the quotient on a Cartesian (alpha, r) grid.

    Ranges are (lo, hi, steps) and include both endpoints. Cells whose
    evaluation fails hold NaN with verdict False; the scan itself never aborts.
    """
    a_lo, a_hi, a_n = alpha_range
    r_lo, r_hi, r_n = r_range
    if a_n < 2 or r_n < 2:
        raise ValueError("each range needs at least 2 steps")
    if r_lo <= 2:
        raise ValueError("r grid must lie strictly above 2")
    alphas = np.linspace(a_lo, a_hi, int(a_n))
    rs = np.linspace(r_lo, r_hi, int(r_n))
    quotients = np.full((alphas.size, rs.size), np.nan)
    for i, al in enumerate(alphas):
        for j, r in enumerate(rs):
            try:
                quotients[i, j] = quotient(FunctionParams(float(al), float(r)), tol, max_terms)
            except (NumericalError, ValueError):
                pass
    verdicts = np.where(np.isnan(quotients), False, quotients < 1.0)
    return ScanResult(alphas, rs, verdicts, quotients)


@dataclass(frozen=True)
class MinimizeResult:
    alpha_star: float
    r_star: float
    quotient_star: float
    iterations: int
    converged: bool
    evaluations: int = 0


def _objective(x, tol, max_terms) -> float:
    alpha, r = float(x[0]), float(x[1])
    if alpha <= 0 or r <= R_BARRIER:
        return math.inf
    try:
        return quotient(FunctionParams(alpha, r), tol, max_terms)
    except NumericalError:
        return math.inf


def minimize_quotient(
    alpha0: float,
    r0: float,
    tol: float = 1e-12,
    step: float = 0.1,
    max_evals: int = 10_000,
    series_tol: float = DEFAULT_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> MinimizeResult:
    """Nelder-Mead minimization of the quotient over (alpha, r).

    Points with alpha <= 0 or r <= 2 + 1e-9 evaluate to +inf. Stops when the
    simplex diameter falls below ``tol``; raises NonConvergence after
    ``max_evals`` evaluations.
    """
    if alpha0 <= 0 or r0 <= 2:
        raise ValueError("start needs alpha0 > 0 and r0 > 2")
    res = nelder_mead(
        lambda x: _objective(x, series_tol, max_terms),
        [alpha0, r0],
        step=step,
        tol=tol,
        max_evals=max_evals,
    )
    return MinimizeResult(
        alpha_star=float(res.x[0]),
        r_star=float(res.x[1]),
        quotient_star=res.fun,
        iterations=res.iterations,
        converged=True,
        evaluations=res.evaluations,
    )
