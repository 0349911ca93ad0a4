"""Fourier coefficients of |f|^2 for f(z1, z2) = (1 - (z1 + z2)/r)^(-alpha).

Two independent routes are provided:

* closed forms in terms of 4F3 series (``coeff_pp``, ``coeff_pm``, ``coeff``);
* brute-force coefficient matching on a Taylor truncation of f
  (``taylor_truncate`` + ``coeff_oracle``), which also gives the exact
  moments of |f_N|^2 for the truncated polynomial f_N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator, NamedTuple

import numpy as np

from .errors import ConsistencyError, InvalidParameters
from .hypergeom import DEFAULT_MAX_TERMS, DEFAULT_TOL, factorial, hyp, pochhammer

DEFAULT_ORACLE_DEGREE = 80


@dataclass(frozen=True)
class FunctionParams:
    """Exponent ``alpha >= 0`` and radius ``r > 2``."""

    alpha: float
    r: float

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and math.isfinite(self.r)):
            raise InvalidParameters(f"non-finite parameters alpha={self.alpha}, r={self.r}")
        if self.alpha < 0:
            raise InvalidParameters(f"alpha must be >= 0, got {self.alpha}")
        if self.r <= 2:
            raise InvalidParameters(f"r must be > 2, got {self.r}")

    @property
    def x(self) -> float:
        """Series argument 4/r^2."""
        return 4.0 / (self.r * self.r)


class MomentKey(NamedTuple):
    k1: int
    k2: int


MomentFunction = Callable[[MomentKey], float]


def coeff_pp(
    params: FunctionParams,
    k1: int,
    k2: int,
    tol: float = DEFAULT_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> float:
    """c_{k1,k2} for k1, k2 >= 0."""
    if k1 < 0 or k2 < 0:
        raise InvalidParameters(f"coeff_pp needs k1, k2 >= 0, got ({k1}, {k2})")
    a, r = params.alpha, params.r
    n = k1 + k2
    pref = pochhammer(a, n) / (factorial(k1) * factorial(k2) * r**n)
    if pref == 0.0:
        return 0.0
    series = hyp(
        (a, a + n, n / 2 + 1, (n + 1) / 2), (n + 1, k1 + 1, k2 + 1), params.x, tol, max_terms
    )
    return pref * series


def coeff_pm(
    params: FunctionParams,
    k1: int,
    k2: int,
    tol: float = DEFAULT_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> float:
    """c_{k1,-k2} for k1, k2 >= 0."""
    if k1 < 0 or k2 < 0:
        raise InvalidParameters(f"coeff_pm needs k1, k2 >= 0, got ({k1}, {k2})")
    a, r = params.alpha, params.r
    n = k1 + k2
    pref = pochhammer(a, k1) * pochhammer(a, k2) / (factorial(k1) * factorial(k2) * r**n)
    if pref == 0.0:
        return 0.0
    series = hyp(
        (a + k1, a + k2, (n + 1) / 2, n / 2 + 1), (k1 + 1, k2 + 1, n + 1), params.x, tol, max_terms
    )
    return pref * series


def coeff(
    params: FunctionParams,
    key: tuple[int, int],
    tol: float = DEFAULT_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> float:
    """c_{k1,k2} for any (k1, k2) in Z^2.

    f has real Taylor coefficients, so c_{-k} = c_k; the remaining sign
    quadrant is reached through that reflection:

        k1 >= 0, k2 >= 0  ->  coeff_pp(k1, k2)
        k1 <= 0, k2 <= 0  ->  coeff_pp(-k1, -k2)
        k1 >  0, k2 <  0  ->  coeff_pm(k1, -k2)
        k1 <  0, k2 >  0  ->  coeff_pm(-k1, k2)
    """
    k1, k2 = int(key[0]), int(key[1])
    # both closed forms are symmetric in their two indices; sorting makes
    # c_{k1,k2} == c_{k2,k1} hold bit for bit
    if k1 >= 0 and k2 >= 0:
        return coeff_pp(params, *sorted((k1, k2)), tol, max_terms)
    if k1 <= 0 and k2 <= 0:
        return coeff_pp(params, *sorted((-k1, -k2)), tol, max_terms)
    if k1 > 0:
        return coeff_pm(params, *sorted((k1, -k2)), tol, max_terms)
    return coeff_pm(params, *sorted((-k1, k2)), tol, max_terms)


@dataclass(frozen=True, eq=False)
class CoeffGrid:
    """Taylor coefficients f_{j,k} of z1^j z2^k for j + k <= N.

    ``entries`` is an (N+1, N+1) array that is zero for j + k > N.
    """

    max_total_degree: int
    entries: np.ndarray

    def __post_init__(self):
        n = self.max_total_degree
        if self.entries.shape != (n + 1, n + 1):
            raise InvalidParameters(f"entries must have shape {(n + 1, n + 1)}")
        self.entries.setflags(write=False)

    @classmethod
    def from_mapping(cls, coeffs: dict[tuple[int, int], float]) -> "CoeffGrid":
        n = max((j + k for j, k in coeffs), default=0)
        arr = np.zeros((n + 1, n + 1))
        for (j, k), v in coeffs.items():
            if j < 0 or k < 0:
                raise InvalidParameters(f"negative exponent ({j}, {k})")
            arr[j, k] = v
        return cls(n, arr)

    def __getitem__(self, jk: tuple[int, int]) -> float:
        j, k = jk
        if j < 0 or k < 0 or j + k > self.max_total_degree:
            return 0.0
        return float(self.entries[j, k])

    def items(self) -> Iterator[tuple[tuple[int, int], float]]:
        n = self.max_total_degree
        for j in range(n + 1):
            for k in range(n + 1 - j):
                yield (j, k), float(self.entries[j, k])

    def __len__(self) -> int:
        n = self.max_total_degree
        return (n + 1) * (n + 2) // 2


def taylor_truncate(params: FunctionParams, N: int) -> CoeffGrid:
    """Taylor coefficients (alpha)_{j+k} / (j! k! r^{j+k}) of f for j + k <= N."""
    if N < 0:
        raise InvalidParameters(f"N must be >= 0, got {N}")
    a, r = params.alpha, params.r
    e = np.zeros((N + 1, N + 1))
    e[0, 0] = 1.0
    for k in range(1, N + 1):
        e[0, k] = e[0, k - 1] * (a + k - 1) / (k * r)
    for j in range(1, N + 1):
        for k in range(N + 1 - j):
            e[j, k] = e[j - 1, k] * (a + j + k - 1) / (j * r)
    return CoeffGrid(N, e)


def coeff_oracle(grid: CoeffGrid, key: tuple[int, int]) -> float:
    """sum_{j,k} f_{j,k} f_{j-k1,k-k2} over indices present in the grid.

    For a truncated grid this is exactly the (k1, k2) Fourier coefficient of
    |f_N|^2; as N grows it converges to c_{k1,k2} of the full function.
    """
    k1, k2 = int(key[0]), int(key[1])
    n = grid.max_total_degree
    if abs(k1) > n or abs(k2) > n:
        return 0.0
    f = grid.entries
    j0, j1 = max(0, k1), min(n, n + k1)
    i0, i1 = max(0, k2), min(n, n + k2)
    a = f[j0 : j1 + 1, i0 : i1 + 1]
    b = f[j0 - k1 : j1 - k1 + 1, i0 - k2 : i1 - k2 + 1]
    return float(np.sum(a * b))


def series_moments(
    params: FunctionParams, tol: float = DEFAULT_TOL, max_terms: int = DEFAULT_MAX_TERMS
) -> MomentFunction:
    """Memoized ``key -> coeff(params, key)``."""
    cache: dict[tuple[int, int], float] = {}

    def moment(key):
        k = (int(key[0]), int(key[1]))
        if k not in cache:
            cache[k] = coeff(params, k, tol, max_terms)
        return cache[k]

    return moment


def grid_moments(grid: CoeffGrid) -> MomentFunction:
    """Memoized exact moments of |f_N|^2 for the polynomial held in ``grid``."""
    cache: dict[tuple[int, int], float] = {}

    def moment(key):
        k = (int(key[0]), int(key[1]))
        if k not in cache:
            cache[k] = coeff_oracle(grid, k)
        return cache[k]

    return moment


def abc(
    params: FunctionParams,
    tol: float = DEFAULT_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
    check: bool = True,
) -> tuple[float, float, float]:
    """(a, b, c) = (c_{0,0}, c_{0,1}, c_{1,-1}).

    With ``check`` the 4F3 values are compared with the reduced 3F2 forms

        a = 3F2(alpha, alpha, 1/2; 1, 1; x)
        b = (alpha/r) 3F2(alpha, alpha+1, 3/2; 2, 2; x)
        c = (alpha/r)^2 3F2(alpha+1, alpha+1, 3/2; 2, 3; x)

    and a ConsistencyError is raised if any pair differs by more than
    ``2 * tol * max(1, |value|)``.
    """
    a_ = coeff_pp(params, 0, 0, tol, max_terms)
    b_ = coeff_pp(params, 0, 1, tol, max_terms)
    c_ = coeff_pm(params, 1, 1, tol, max_terms)
    if check:
        for name, full, reduced in zip("abc", (a_, b_, c_), abc_reduced(params, tol, max_terms)):
            if abs(full - reduced) > 2 * tol * max(1.0, abs(full)):
                raise ConsistencyError(
                    f"{name}: 4F3 form {full!r} and 3F2 form {reduced!r} disagree"
                )
    return a_, b_, c_


def abc_reduced(
    params: FunctionParams, tol: float = DEFAULT_TOL, max_terms: int = DEFAULT_MAX_TERMS
) -> tuple[float, float, float]:
    """(a, b, c) from the 3F2 forms only."""
    al, r, x = params.alpha, params.r, params.x
    a_ = hyp((al, al, 0.5), (1, 1), x, tol, max_terms)
    b_ = al / r * hyp((al, al + 1, 1.5), (2, 2), x, tol, max_terms)
    c_ = (al / r) ** 2 * hyp((al + 1, al + 1, 1.5), (2, 3), x, tol, max_terms)
    return a_, b_, c_
