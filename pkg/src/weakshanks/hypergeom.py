"""Pochhammer symbols and generalized hypergeometric series pFq.

Everything here works in double precision with real parameters. The series
is summed term by term from the ratio of consecutive terms, so no gamma
functions are involved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import DivergentArgument, InvalidParameters, NonConvergence

DEFAULT_TOL = 1e-14
DEFAULT_MAX_TERMS = 100_000

# p = q + 1 series converge too slowly to be worth summing this close to |z| = 1.
BOUNDARY_GUARD = 0.999


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0 and float(x).is_integer()


def pochhammer(alpha: float, n: int) -> float:
    """Rising factorial (alpha)_n = alpha (alpha+1) ... (alpha+n-1).

    Integer ``alpha`` is multiplied out exactly in integer arithmetic before
    conversion, so e.g. ``pochhammer(1, n) == n!`` exactly while it fits in a
    double. Overflow shows up as an infinite result.
    """
    if n < 0:
        raise InvalidParameters(f"pochhammer needs n >= 0, got {n}")
    if float(alpha).is_integer():
        a = int(alpha)
        prod = 1
        for i in range(n):
            prod *= a + i
            if prod == 0:
                return 0.0
        try:
            return float(prod)
        except OverflowError:
            return math.inf if prod > 0 else -math.inf
    prod = 1.0
    for i in range(n):
        prod *= alpha + i
    return prod


def factorial(n: int) -> float:
    return pochhammer(1, n)


@dataclass(frozen=True)
class HypergeomSpec:
    """Parameters ``upper`` (a_1..a_p), ``lower`` (b_1..b_q) and argument ``arg``."""

    upper: tuple[float, ...]
    lower: tuple[float, ...]
    arg: float

    def __init__(self, upper: Sequence[float], lower: Sequence[float], arg: float):
        object.__setattr__(self, "upper", tuple(float(a) for a in upper))
        object.__setattr__(self, "lower", tuple(float(b) for b in lower))
        object.__setattr__(self, "arg", float(arg))
        for b in self.lower:
            if _is_nonpositive_integer(b):
                raise InvalidParameters(f"lower parameter {b} is a nonpositive integer")

    @property
    def p(self) -> int:
        return len(self.upper)

    @property
    def q(self) -> int:
        return len(self.lower)

    @property
    def terminating(self) -> bool:
        return any(_is_nonpositive_integer(a) for a in self.upper)


@dataclass(frozen=True)
class SeriesResult:
    value: float
    terms_used: int
    converged: bool
    last_term_magnitude: float


def pfq_terms(spec: HypergeomSpec) -> Iterator[float]:
    """Yield the terms of the series, starting with the n = 0 term (which is 1)."""
    z = spec.arg
    term = 1.0
    n = 0
    while True:
        yield term
        num = z
        for a in spec.upper:
            num *= a + n
        den = float(n + 1)
        for b in spec.lower:
            den *= b + n
        term *= num / den
        n += 1


def _check_argument(spec: HypergeomSpec) -> None:
    if spec.terminating or spec.arg == 0.0:
        return
    if spec.p > spec.q + 1:
        raise DivergentArgument(f"{spec.p}F{spec.q} diverges for nonzero argument")
    if spec.p == spec.q + 1 and abs(spec.arg) > BOUNDARY_GUARD:
        raise DivergentArgument(
            f"|z| = {abs(spec.arg)} exceeds {BOUNDARY_GUARD} for a {spec.p}F{spec.q}"
        )


def pfq(
    spec: HypergeomSpec, tol: float = DEFAULT_TOL, max_terms: int = DEFAULT_MAX_TERMS
) -> SeriesResult:
    """Sum the generalized hypergeometric series described by ``spec``.

    Summation stops once two consecutive terms both have magnitude at most
    ``tol * max(1, |partial sum|)``, or immediately after an exactly zero term
    (terminating series). Raises NonConvergence when ``max_terms`` terms have
    been summed without the rule firing.
    """
    if tol <= 0:
        raise InvalidParameters("tol must be positive")
    _check_argument(spec)

    total = 0.0
    small_run = 0
    used = 0
    last = 0.0
    for term in pfq_terms(spec):
        if used >= max_terms:
            raise NonConvergence(
                f"{spec.p}F{spec.q} at z={spec.arg} not converged after {max_terms} terms"
            )
        if term == 0.0 and used > 0:
            # every later term is zero as well
            return SeriesResult(total, used, True, abs(last))
        total += term
        used += 1
        last = term
        if not math.isfinite(total):
            raise NonConvergence(f"{spec.p}F{spec.q} overflowed at term {used}")
        if abs(term) <= tol * max(1.0, abs(total)):
            small_run += 1
            if small_run >= 2:
                return SeriesResult(total, used, True, abs(term))
        else:
            small_run = 0
    raise AssertionError("unreachable")


def hyp(
    upper: Sequence[float],
    lower: Sequence[float],
    z: float,
    tol: float = DEFAULT_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> float:
    """Shorthand returning only the value of ``pfq``."""
    return pfq(HypergeomSpec(upper, lower, z), tol, max_terms).value


def chu_vandermonde_lhs(i: int, k1: int, k2: int) -> float:
    """sum_{j=0}^{i} (-i)_j (-k1-i)_j / ((1)_j (k2+1)_j)."""
    return sum(
        pochhammer(-i, j) * pochhammer(-k1 - i, j) / (pochhammer(1, j) * pochhammer(k2 + 1, j))
        for j in range(i + 1)
    )


def chu_vandermonde_rhs(i: int, k1: int, k2: int) -> float:
    """(k1+k2+i+1)_i / (k2+1)_i."""
    return pochhammer(k1 + k2 + i + 1, i) / pochhammer(k2 + 1, i)


def f01_recurrence_residual(
    z: float, tol: float = DEFAULT_TOL, max_terms: int = DEFAULT_MAX_TERMS
) -> float:
    """0F1(;1;z) - 0F1(;2;z) - (z/2) 0F1(;3;z); zero up to series error."""
    f1 = hyp((), (1,), z, tol, max_terms)
    f2 = hyp((), (2,), z, tol, max_terms)
    f3 = hyp((), (3,), z, tol, max_terms)
    return f1 - f2 - 0.5 * z * f3


def hyp0f1_array(
    b: float, z, tol: float = DEFAULT_TOL, max_terms: int = DEFAULT_MAX_TERMS
) -> np.ndarray:
    """0F1(;b;z) evaluated elementwise on an array.

    Same term recurrence and two-small-terms stopping rule as ``pfq``; the
    loop ends once every element has met it.
    """
    if _is_nonpositive_integer(b):
        raise InvalidParameters(f"lower parameter {b} is a nonpositive integer")
    z = np.asarray(z, dtype=float)
    total = np.zeros_like(z)
    term = np.ones_like(z)
    small_run = np.zeros(z.shape, dtype=np.int8)
    for n in range(max_terms):
        total += term
        small = np.abs(term) <= tol * np.maximum(1.0, np.abs(total))
        small_run = np.where(small, np.minimum(small_run + 1, 2), 0)
        if np.all(small_run >= 2):
            return total
        term = term * z / ((b + n) * (n + 1))
    raise NonConvergence(f"0F1 not converged after {max_terms} terms")
