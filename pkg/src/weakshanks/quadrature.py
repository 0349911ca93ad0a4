"""Gauss rules and the triple-integral form of the degree-1 root criterion.

With x = 4/r^2 the criterion 2b > a + c is equivalent to LHS > RHS where

    LHS = int e^{-t-y} t^{alpha-1} y^{alpha-1} ((4/r) y w^{1/2} + w^{-1/2}) (1-w)^{-1/2}
              0F1(;2; x t y w) dt dy dw
    RHS = 2 int e^{-t-y} t^{alpha-1} y^{alpha-1} w^{-1/2} (1-w)^{-1/2}
              0F1(;1; x t y w) dt dy dw

over t, y in (0, inf), w in (0, 1). In closed form

    LHS = pi Gamma(alpha)^2 (2b + d),   RHS = pi Gamma(alpha)^2 (a + c + d)

with d = 3F2(alpha, alpha, 1/2; 1, 2; x). The shared d comes from the
0F1(;2) integral that the recurrence 0F1(;1) - 0F1(;2) = (z/2) 0F1(;3)
moves onto both sides; pi is the Beta(1/2, 1/2) mass of the w-weight.
So LHS - RHS = pi Gamma(alpha)^2 (2b - a - c).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import EigFailure, InvalidParameters
from .hypergeom import DEFAULT_TOL, hyp, hyp0f1_array
from .moments import FunctionParams, abc

QUAD_MAX_TERMS = 1_000_000
# Beyond this product e^{-t-y} 0F1(;b; x t y w) <= e^{-2 (1 - sqrt(x)) sqrt(ty)}
# <= e^{-200 (1 - sqrt(x))}; negligible unless r is very close to 2.
NODE_PRODUCT_CUTOFF = 1e4


@dataclass(frozen=True, eq=False)
class QuadRule:
    """Gauss rule: ``kind`` is "laguerre" (weight t^s e^{-t} on [0, inf),
    exponents = (s, 0)) or "jacobi" (weight w^a (1-w)^b on [0, 1],
    exponents = (a, b))."""

    kind: str
    nodes: np.ndarray
    weights: np.ndarray
    exponents: tuple[float, float] = (0.0, 0.0)

    @property
    def mass(self) -> float:
        """Exact integral of the weight function."""
        if self.kind == "laguerre":
            return math.gamma(self.exponents[0] + 1)
        a, b = self.exponents
        return math.exp(math.lgamma(a + 1) + math.lgamma(b + 1) - math.lgamma(a + b + 2))

    def integrate(self, g) -> float:
        return float(np.dot(self.weights, g(self.nodes)))


def _golub_welsch(diag: np.ndarray, offdiag: np.ndarray, mass: float):
    try:
        nodes, vecs = scipy.linalg.eigh_tridiagonal(diag, offdiag)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise EigFailure(str(exc)) from exc
    weights = mass * vecs[0, :] ** 2
    return nodes, weights


def _jacobi_recurrence(n: int, al: float, be: float):
    """Monic recurrence for weight (1-x)^al (1+x)^be on [-1, 1]."""
    s = al + be
    k = np.arange(n, dtype=float)
    diag = np.empty(n)
    diag[0] = (be - al) / (s + 2)
    kk = k[1:]
    diag[1:] = (be * be - al * al) / ((2 * kk + s) * (2 * kk + s + 2))
    beta = np.empty(max(n - 1, 0))
    if n > 1:
        beta[0] = 4 * (1 + al) * (1 + be) / ((2 + s) ** 2 * (3 + s))
        kk = np.arange(2, n, dtype=float)
        beta[1:] = (
            4 * kk * (kk + al) * (kk + be) * (kk + s)
            / ((2 * kk + s) ** 2 * (2 * kk + s + 1) * (2 * kk + s - 1))
        )
    return diag, np.sqrt(beta)


def make_rule(
    kind: str, order: int, exponents: tuple[float, float] | None = None
) -> QuadRule:
    """Gauss nodes and weights from the symmetric tridiagonal Jacobi matrix.

    For ``kind="laguerre"`` the weight is t^s e^{-t} with s = exponents[0]
    (default 0). For ``kind="jacobi"`` it is w^a (1-w)^b on [0, 1] with
    (a, b) = exponents (default (-1/2, -1/2)).
    """
    if order < 1:
        raise InvalidParameters("order must be >= 1")
    if kind == "laguerre":
        s = float(exponents[0]) if exponents else 0.0
        if s <= -1:
            raise InvalidParameters("laguerre exponent must exceed -1")
        k = np.arange(order, dtype=float)
        kk = k[1:]
        nodes, weights = _golub_welsch(2 * k + 1 + s, np.sqrt(kk * (kk + s)), math.gamma(s + 1))
        return QuadRule("laguerre", nodes, weights, (s, 0.0))
    if kind == "jacobi":
        a, b = map(float, exponents or (-0.5, -0.5))
        if a <= -1 or b <= -1:
            raise InvalidParameters("jacobi exponents must exceed -1")
        # w = (1 + x)/2 turns w^a (1-w)^b into 2^{-a-b} (1+x)^a (1-x)^b
        diag, off = _jacobi_recurrence(order, b, a)
        mass = 2.0 ** (a + b + 1) * math.exp(
            math.lgamma(a + 1) + math.lgamma(b + 1) - math.lgamma(a + b + 2)
        )
        x, wx = _golub_welsch(diag, off, mass)
        return QuadRule("jacobi", (1 + x) / 2, wx * 2.0 ** (-a - b - 1), (a, b))
    raise InvalidParameters(f"unknown rule kind {kind!r}")


def criterion_integral_sides(
    params: FunctionParams,
    orders: tuple[int, int, int] = (64, 64, 64),
    tol: float = DEFAULT_TOL,
    max_terms: int = QUAD_MAX_TERMS,
    fold_powers: bool = False,
) -> tuple[float, float]:
    """(LHS, RHS) of the triple-integral criterion by tensor Gauss rules.

    By default the t and y rules are generalized Gauss-Laguerre rules for
    t^{alpha-1} e^{-t}, which keeps the rule exact on the polynomial part for
    every alpha > 0. With ``fold_powers`` the powers t^{alpha-1} y^{alpha-1}
    go into the integrand instead and plain e^{-t} rules are used; that
    converges slowly unless alpha is an integer. The w rule carries
    w^{-1/2} (1-w)^{-1/2}, and the w^{1/2} term is written as w * w^{-1/2}.
    Node pairs with t*y above NODE_PRODUCT_CUTOFF are dropped.
    """
    al = params.alpha
    if al <= 0:
        raise InvalidParameters("integral form needs alpha > 0")
    n_t, n_y, n_w = orders
    s = 0.0 if fold_powers else al - 1
    rt, ry = make_rule("laguerre", n_t, (s,)), make_rule("laguerre", n_y, (s,))
    rw = make_rule("jacobi", n_w, (-0.5, -0.5))

    t = rt.nodes[:, None]
    y = ry.nodes[None, :]
    ty = t * y
    keep = ty <= NODE_PRODUCT_CUTOFF
    base = rt.weights[:, None] * ry.weights[None, :]
    if fold_powers:
        base = base * ty ** (al - 1)
    base = np.where(keep, base, 0.0)
    ty_kept = np.where(keep, ty, 0.0)
    y_full = np.broadcast_to(y, ty.shape)

    lhs = rhs = 0.0
    for w, ww in zip(rw.nodes, rw.weights):
        z = params.x * ty_kept * w
        f1 = hyp0f1_array(1.0, z, tol, max_terms)
        f2 = hyp0f1_array(2.0, z, tol, max_terms)
        lhs += ww * float(np.sum(base * ((4.0 / params.r) * y_full * w + 1.0) * f2))
        rhs += ww * 2.0 * float(np.sum(base * f1))
    return lhs, rhs


def series_sides(params: FunctionParams, tol: float = DEFAULT_TOL) -> tuple[float, float]:
    """Closed forms of (LHS, RHS): pi Gamma(alpha)^2 times (2b + d, a + c + d)."""
    al = params.alpha
    if al <= 0:
        raise InvalidParameters("integral form needs alpha > 0")
    a, b, c = abc(params, tol)
    d = hyp((al, al, 0.5), (1, 2), params.x, tol)
    scale = math.pi * math.gamma(al) ** 2
    return scale * (2 * b + d), scale * (a + c + d)
