"""Midpoint grids, kernels and dense Nystrom matrices for operator expressions.

Every matrix carries its quadrature weight ``h``, so its singular values
approximate those of the continuous operator directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgument, UnsupportedKernel
from .operators import Cesaro, Compose, J, Jkappa, Mult, is_cesaro_after_j


@dataclass(frozen=True)
class Grid:
    """Uniform midpoint grid with ``ell`` cells on [0, 1]."""

    ell: int
    h: float
    nodes: np.ndarray

    def __post_init__(self):
        self.nodes.setflags(write=False)


def build_grid(ell):
    """Midpoint grid s_i = (i - 1/2) h, i = 1..ell."""
    if isinstance(ell, bool) or int(ell) != ell or ell < 2:
        raise InvalidArgument(f"grid needs ell >= 2 cells, got {ell!r}")
    ell = int(ell)
    h = 1.0 / ell
    nodes = (np.arange(1, ell + 1, dtype=float) - 0.5) * h
    return Grid(ell, h, nodes)


# Lanczos approximation with g = 671/128 and fourteen terms.
_LANCZOS_G = 671.0 / 128.0
_LANCZOS_LEAD = 0.999999999999997092
_LANCZOS_COEF = (
    57.1562356658629235,
    -59.5979603554754912,
    14.1360979747417471,
    -0.491913816097620199,
    0.339946499848118887e-4,
    0.465236289270485756e-4,
    -0.983744753048795646e-4,
    0.158088703224912494e-3,
    -0.210264441724104883e-3,
    0.217439618115212643e-3,
    -0.164318106536763890e-3,
    0.844182239838527433e-4,
    -0.261908384015814087e-4,
    0.368991826595316234e-5,
)
_SQRT_2PI = 2.5066282746310005


def _log_gamma(x):
    series = _LANCZOS_LEAD
    for k, c in enumerate(_LANCZOS_COEF, start=1):
        series += c / (x + k)
    t = x + _LANCZOS_G
    return (x + 0.5) * math.log(t) - t + math.log(_SQRT_2PI * series / x)


def gamma_fn(x):
    """Gamma function on (0, 30], relative error below 1e-12."""
    if not x > 0:
        raise InvalidArgument(f"gamma_fn needs x > 0, got {x!r}")
    if x > 30:
        raise InvalidArgument(f"gamma_fn is validated on (0, 30], got {x!r}")
    return math.exp(_log_gamma(x))


def kernel_value(expr, s, t):
    """Pointwise kernel k(s, t) of a Volterra leaf, or of C o J.

    >>> kernel_value(Cesaro(), 0.5, 0.1)
    2.0
    """
    if isinstance(expr, Mult):
        raise UnsupportedKernel("multiplication operators have no integral kernel")
    if not 0 < s <= 1:
        raise InvalidArgument(f"need 0 < s <= 1, got s={s!r}")
    if t < 0:
        raise InvalidArgument(f"need t >= 0, got t={t!r}")
    if t > s:
        raise InvalidArgument(f"Volterra kernel needs t <= s, got s={s!r}, t={t!r}")
    if isinstance(expr, J):
        return 1.0
    if isinstance(expr, Cesaro):
        return 1.0 / s
    if isinstance(expr, Jkappa):
        if s == t and expr.kappa < 1:
            return math.inf
        return (s - t) ** (expr.kappa - 1.0) / gamma_fn(expr.kappa)
    if is_cesaro_after_j(expr):
        return (s - t) / s
    raise UnsupportedKernel(f"no closed-form kernel for {expr}")


@dataclass(frozen=True)
class DiscreteOperator:
    grid: Grid
    entries: np.ndarray
    expr: object

    def __post_init__(self):
        if not np.all(np.isfinite(self.entries)):
            raise InvalidArgument(f"non-finite entries in discretization of {self.expr}")
        self.entries.setflags(write=False)

    @property
    def ell(self):
        return self.grid.ell


def _lower(grid):
    s = grid.nodes[:, None]
    t = grid.nodes[None, :]
    return s, t, t < s


def _leaf_matrix(expr, grid):
    h = grid.h
    s, t, below = _lower(grid)
    n = grid.ell
    if isinstance(expr, J):
        return np.tril(np.full((n, n), h))
    if isinstance(expr, Cesaro):
        m = np.where(below, h / s, 0.0)
        # only the left half of the diagonal cell lies under the support t <= s
        m[np.diag_indices(n)] = 0.5 * h / grid.nodes
        return m
    if isinstance(expr, Jkappa):
        kappa = expr.kappa
        g = gamma_fn(kappa)
        gap = np.where(below, s - t, 1.0)
        m = np.where(below, gap ** (kappa - 1.0) / g * h, 0.0)
        if kappa < 1:
            # cell average of the singular kernel over one full cell
            diag = h ** (kappa - 1.0) / (kappa * g)
        elif kappa == 1:
            diag = 1.0 / g
        else:
            diag = 0.0
        m[np.diag_indices(n)] = diag * h
        return m
    if isinstance(expr, Mult):
        return np.diag(grid.nodes ** expr.eta)
    raise InvalidArgument(f"not an operator leaf: {expr!r}")


def _a_matrix(grid):
    s, t, below = _lower(grid)
    return np.where(below, (s - t) / s * grid.h, 0.0)


def discretize(expr, grid):
    """Dense ell x ell matrix realizing ``expr`` on ``grid``.

    ``Compose(Cesaro(), J())`` is assembled from its exact kernel (s - t)/s;
    every other composition is the matrix product of its factors.
    """
    if is_cesaro_after_j(expr):
        entries = _a_matrix(grid)
    elif isinstance(expr, Compose):
        entries = discretize(expr.outer, grid).entries @ discretize(expr.inner, grid).entries
    else:
        entries = _leaf_matrix(expr, grid)
    return DiscreteOperator(grid, entries, expr)


def kernel_AstarA(t, s):
    """Symmetric kernel of A*A for A = C o J, closed form.

    Equals the integral over tau in [max(t, s), 1] of
    ((tau - t)/tau) * ((tau - s)/tau). Accepts scalars or broadcastable arrays.
    """
    t_arr = np.asarray(t, dtype=float)
    s_arr = np.asarray(s, dtype=float)
    if np.any(t_arr <= 0) or np.any(s_arr <= 0):
        raise InvalidArgument("kernel of A*A has a pole at the origin; need t, s > 0")
    if np.any(t_arr > 1) or np.any(s_arr > 1):
        raise InvalidArgument("kernel of A*A is defined on (0, 1]^2")
    lo = np.minimum(t_arr, s_arr)
    hi = np.maximum(t_arr, s_arr)
    log_hi = np.log(hi)
    value = 1.0 - lo * hi - hi + lo * log_hi + hi * log_hi + lo
    if value.ndim == 0:
        return float(value)
    return value
