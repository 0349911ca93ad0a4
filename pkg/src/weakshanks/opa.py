"""Optimal polynomial approximants (OPAs) of 1/f on the bidisk.

The degree-n OPA p minimizes ||1 - p f|| in H^2 of the bidisk over
polynomials of total degree <= n. Its coefficients solve the normal
equations M p = e_0 with the moment matrix M[k, l] = c_{k-l} indexed by
exponent pairs k, l of total degree <= n (f(0,0) = 1 for our family).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np
import scipy.linalg

from .errors import (
    ConsistencyError,
    DegenerateSystem,
    InvalidParameters,
    NonConvergence,
    SingularMatrix,
)
from .hypergeom import DEFAULT_MAX_TERMS, DEFAULT_TOL
from .moments import CoeffGrid, FunctionParams, MomentFunction, abc, series_moments
from .roots import polyroots

ORTHOGONALITY_TOL = 1e-10
PIVOT_TOL = 1e-13


@dataclass(frozen=True)
class IndexSet:
    """Exponent pairs of total degree <= n in graded lexicographic order.

    (0,0) comes first; within each total degree d the pairs run
    (0,d), (1,d-1), ..., (d,0). For n = 1 this is (0,0), (0,1), (1,0).
    """

    degree: int
    members: tuple[tuple[int, int], ...]

    @classmethod
    def of_degree(cls, n: int) -> "IndexSet":
        if n < 0:
            raise InvalidParameters(f"degree must be >= 0, got {n}")
        members = tuple((k1, d - k1) for d in range(n + 1) for k1 in range(d + 1))
        return cls(n, members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def index(self, k: tuple[int, int]) -> int:
        return self.members.index(tuple(k))


@dataclass(frozen=True, eq=False)
class MomentMatrix:
    index_set: IndexSet
    entries: np.ndarray


@dataclass(frozen=True, eq=False)
class OpaSolution:
    index_set: IndexSet
    coeffs: np.ndarray
    residual_norm_sq: float
    params: FunctionParams | None = None
    solver: str = "cholesky"
    max_orthogonality_residual: float = 0.0
    matrix: MomentMatrix | None = field(default=None, repr=False)

    def as_dict(self) -> dict[tuple[int, int], float]:
        return {k: float(v) for k, v in zip(self.index_set, self.coeffs)}

    def __getitem__(self, k: tuple[int, int]) -> float:
        return float(self.coeffs[self.index_set.index(k)])


def build_moment_matrix(
    params: FunctionParams | None,
    n: int,
    *,
    moments: MomentFunction | None = None,
    tol: float = DEFAULT_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> MomentMatrix:
    """Matrix (c_{k-l})_{k,l} over the degree-n index set.

    ``moments`` overrides where the c's come from (for example the exact
    moments of a Taylor truncation); by default they come from the 4F3
    formulas for ``params``.
    """
    if moments is None:
        if params is None:
            raise InvalidParameters("need params or a moment function")
        moments = series_moments(params, tol, max_terms)
    idx = IndexSet.of_degree(n)
    size = len(idx)
    m = np.empty((size, size))
    for i, k in enumerate(idx):
        for j, l in enumerate(idx):
            if j < i:
                continue
            m[i, j] = moments((k[0] - l[0], k[1] - l[1]))
            m[j, i] = m[i, j] if i == j else moments((l[0] - k[0], l[1] - k[1]))
    return MomentMatrix(idx, m)


def _solve_spd(m: np.ndarray, rhs: np.ndarray) -> tuple[np.ndarray, str]:
    try:
        factor = scipy.linalg.cho_factor(m, lower=True, check_finite=True)
        return scipy.linalg.cho_solve(factor, rhs), "cholesky"
    except np.linalg.LinAlgError:
        pass
    lu, piv = scipy.linalg.lu_factor(m)
    if np.min(np.abs(np.diag(lu))) <= PIVOT_TOL * abs(m[0, 0]):
        raise SingularMatrix("moment matrix is numerically singular")
    return scipy.linalg.lu_solve((lu, piv), rhs), "lu"


def solve_from_matrix(matrix: MomentMatrix, params: FunctionParams | None = None) -> OpaSolution:
    m = matrix.entries
    rhs = np.zeros(len(matrix.index_set))
    rhs[0] = 1.0  # conj(f_{0,0}) = 1
    p, solver = _solve_spd(m, rhs)
    resid = float(np.max(np.abs(m @ p - rhs)))
    if resid > ORTHOGONALITY_TOL * abs(m[0, 0]):
        raise ConsistencyError(f"normal-equation residual {resid:.3e} too large")
    return OpaSolution(
        index_set=matrix.index_set,
        coeffs=p,
        residual_norm_sq=1.0 - float(p[0]),
        params=params,
        solver=solver,
        max_orthogonality_residual=resid,
        matrix=matrix,
    )


def solve_opa(
    params: FunctionParams,
    n: int,
    *,
    tol: float = DEFAULT_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> OpaSolution:
    """Degree-n OPA of 1/f for f = (1 - (z1+z2)/r)^(-alpha)."""
    return solve_from_matrix(build_moment_matrix(params, n, tol=tol, max_terms=max_terms), params)


def opa_degree1(
    params: FunctionParams, tol: float = DEFAULT_TOL, max_terms: int = DEFAULT_MAX_TERMS
) -> tuple[float, float]:
    """(p0, p1) of the symmetric degree-1 OPA p0 + p1 (z1 + z2).

    Symmetry collapses the 3x3 system to [[a, 2b], [b, a+c]] (p0, p1) = (1, 0).
    """
    a, b, c = abc(params, tol, max_terms)
    det = a * (a + c) - 2 * b * b
    if det <= 0:
        raise DegenerateSystem(f"a(a+c) - 2b^2 = {det} <= 0")
    return (a + c) / det, -b / det


def residual_norm_sq(params: FunctionParams | None, sol: OpaSolution, coeffs=None) -> float:
    """||1 - p f||^2 = p^T M p - 2 p_{0,0} + 1 for ``coeffs`` (default: sol.coeffs)."""
    p = np.asarray(sol.coeffs if coeffs is None else coeffs, dtype=float)
    if params is not None:
        m = build_moment_matrix(params, sol.index_set.degree).entries
    elif sol.matrix is not None:
        m = sol.matrix.entries
    else:
        raise InvalidParameters("need params or a solution carrying its moment matrix")
    return float(p @ m @ p - 2 * p[0] + 1.0)


# --- root search -----------------------------------------------------------


def _as_dense(poly) -> np.ndarray:
    if isinstance(poly, OpaSolution):
        poly = poly.as_dict()
    if isinstance(poly, CoeffGrid):
        return np.array(poly.entries, dtype=complex)
    if isinstance(poly, Mapping):
        n = max((j + k for j, k in poly), default=0)
        arr = np.zeros((n + 1, n + 1), dtype=complex)
        for (j, k), v in poly.items():
            arr[j, k] += v
        return arr
    arr = np.asarray(poly, dtype=complex)
    if arr.ndim != 2:
        raise InvalidParameters("polynomial must be a mapping, CoeffGrid or 2-D array")
    return arr


def poly_eval(P: np.ndarray, z1: complex, z2: complex) -> complex:
    """sum P[j, k] z1^j z2^k."""
    return complex(np.polynomial.polynomial.polyval2d(z1, z2, P))


def _partials(P: np.ndarray, z1: complex, z2: complex) -> tuple[complex, complex]:
    d1 = np.polynomial.polynomial.polyder(P, axis=0)
    d2 = np.polynomial.polynomial.polyder(P, axis=1)
    return poly_eval(d1, z1, z2), poly_eval(d2, z1, z2)


def _slice_coeffs(P: np.ndarray, z1: complex) -> np.ndarray:
    """Coefficients in z2 (ascending) of p(z1, .)."""
    powers = z1 ** np.arange(P.shape[0])
    return powers @ P


def _newton_z2(P: np.ndarray, z1: complex, z2: complex, steps: int = 30) -> complex:
    q = _slice_coeffs(P, z1)
    dq = np.polynomial.polynomial.polyder(q)
    for _ in range(steps):
        val = np.polynomial.polynomial.polyval(z2, q)
        der = np.polynomial.polynomial.polyval(z2, dq)
        if der == 0:
            break
        step = val / der
        z2 = z2 - step
        if abs(step) <= 1e-15 * max(1.0, abs(z2)):
            break
    return complex(z2)


@dataclass(frozen=True)
class RootWitness:
    z1: complex
    z2: complex
    value: complex  # p(z1, z2) after polishing


def _verified(P, z1, z2, scale) -> RootWitness | None:
    if max(abs(z1), abs(z2)) >= 1.0:
        return None
    val = poly_eval(P, z1, z2)
    if abs(val) <= 1e-8 * scale:
        return RootWitness(complex(z1), complex(z2), val)
    return None


def _refine(P, z1, z2, scale, steps=100, m=8) -> RootWitness | None:
    """Damped descent of |z1|^m + |z2|^m along the zero set p(z1, z2) = 0.

    z2 follows z1 holomorphically, so the Wirtinger gradient in z1 is
    (m/2)(|z1|^(m-2) z1 + |z2|^(m-2) z2 conj(dz2/dz1)) with
    dz2/dz1 = -p_{z1}/p_{z2}. Stops as soon as both moduli drop below 1.
    """

    def phi(u, v):
        return abs(u) ** m + abs(v) ** m

    t = None
    cur = phi(z1, z2)
    for _ in range(steps):
        w = _verified(P, z1, z2, scale)
        if w is not None:
            return w
        p1, p2 = _partials(P, z1, z2)
        if p2 == 0:
            return None
        dz2 = -p1 / p2
        grad = m * (abs(z1) ** (m - 2) * z1 + abs(z2) ** (m - 2) * z2 * np.conj(dz2))
        gnorm = abs(grad)
        if gnorm == 0:
            return None
        if t is None:
            t = 0.1 * max(abs(z1), 1e-3) / gnorm
        else:
            t *= 2.0
        for _ in range(60):
            u = z1 - t * grad
            v = _newton_z2(P, u, z2 + dz2 * (u - z1))
            new = phi(u, v)
            if new < cur:
                break
            t *= 0.5
        else:
            return None
        z1, z2, cur = u, v, new
    return _verified(P, z1, z2, scale)


def find_bidisk_root(poly, grid_size: int = 16) -> RootWitness | None:
    """Search for a zero of a bivariate polynomial inside the open bidisk.

    ``poly`` is a mapping {(j, k): coeff of z1^j z2^k}, a CoeffGrid, an
    OpaSolution or a dense 2-D array. z1 is sampled on a polar grid of the
    closed unit disk (``grid_size`` radii by ``grid_size`` angles); for each
    sample the roots in z2 come from Aberth iteration. The first pair inside
    the open bidisk is returned; failing that, the best candidate is refined
    by a damped descent along the zero set. Every returned witness satisfies
    |p(z1, z2)| <= 1e-8 * sum |coeffs|. ``None`` means no witness was found,
    which is not a proof that none exists.
    """
    if grid_size < 8:
        raise InvalidParameters("grid_size must be >= 8")
    P = _as_dense(poly)
    scale = float(np.sum(np.abs(P)))
    if scale == 0:
        raise InvalidParameters("zero polynomial")

    best = None  # (score, z1, z2)
    failures = 0
    radii = np.linspace(0.0, 1.0, grid_size)
    angles = 2 * np.pi * np.arange(grid_size) / grid_size
    for rho in radii:
        for theta in angles if rho > 0 else angles[:1]:
            z1 = rho * np.exp(1j * theta)
            q = _slice_coeffs(P, z1)
            if np.all(np.abs(q[1:]) <= 1e-15 * scale):
                if abs(q[0]) <= 1e-12 * scale:
                    w = _verified(P, z1, 0j, scale)
                    if w is not None:
                        return w
                continue
            try:
                roots = polyroots(q)
            except NonConvergence:
                failures += 1
                continue
            for z2 in roots:
                score = max(abs(z1), abs(z2))
                if score < 1.0:
                    w = _verified(P, z1, _newton_z2(P, z1, z2), scale)
                    if w is not None:
                        return w
                if best is None or score < best[0]:
                    best = (score, z1, z2)
    if best is None:
        return None
    _, z1, z2 = best
    return _refine(P, complex(z1), _newton_z2(P, z1, z2), scale)


def diagonal_roots(poly) -> np.ndarray:
    """Roots t of p(t, t), sorted by modulus."""
    P = _as_dense(poly)
    n = P.shape[0] + P.shape[1] - 1
    q = np.zeros(n, dtype=complex)
    for j in range(P.shape[0]):
        for k in range(P.shape[1]):
            q[j + k] += P[j, k]
    roots = polyroots(q)
    return roots[np.argsort(np.abs(roots))]


def degree1_has_root(p0: float, p1: float) -> bool:
    """Exact test for p0 + p1 (z1 + z2): a zero in the open bidisk iff 2|p1| > |p0|."""
    return 2 * abs(p1) > abs(p0)


def degree1_diagonal_root(p0: float, p1: float) -> float:
    """The zero z1 = z2 = -p0 / (2 p1) on the diagonal."""
    if p1 == 0:
        return math.inf
    return -p0 / (2 * p1)
