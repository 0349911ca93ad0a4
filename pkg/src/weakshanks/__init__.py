"""Optimal polynomial approximants of 1/f on the bidisk for f = (1 - (z1+z2)/r)^(-alpha)."""

from .analysis import (
    CriterionReport,
    MinimizeResult,
    ScanResult,
    check_criterion,
    minimize_quotient,
    quotient,
    scan_region,
)
from .hypergeom import HypergeomSpec, SeriesResult, pfq, pochhammer
from .moments import (
    CoeffGrid,
    FunctionParams,
    MomentKey,
    abc,
    coeff,
    coeff_oracle,
    coeff_pm,
    coeff_pp,
    taylor_truncate,
)
from .opa import IndexSet, OpaSolution, find_bidisk_root, opa_degree1, solve_opa

__version__ = "0.1.0"
