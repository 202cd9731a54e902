"""Finite-difference eigenvalues of A*A for A = C o J.

Twice differentiating A*A w = lambda w turns the eigenproblem into

    integral_0^t (t - tau)/t**2 w(tau) dtau = lambda w''(t),   w(1) = w'(1) = 0.

On the nodes w_i = w(i h), i = 0..ell, with a left rectangle rule and the
three-point second difference, equation j (j = 1..ell-1) multiplied by h**2
reads

    sum_{i<j} (j - i)/j**2 h**2 w_i - lambda (w_{j+1} - 2 w_j + w_{j-1}) = 0,

closed by the rows w_ell = 0 and w_{ell-1} - w_ell = 0. Eigenvalues are the
lambda where the (ell+1) x (ell+1) determinant vanishes.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_triangular
from scipy.optimize import bisect

from .errors import InvalidArgument, NumericFailure
from .spectral import SingularSpectrum

DEFAULT_LAMBDA_RANGE = (1e-9, 0.25)
DEFAULT_SCAN_POINTS = 2000
BISECT_RTOL = 1e-10


def _check_ell(ell):
    if isinstance(ell, bool) or int(ell) != ell or ell < 4:
        raise InvalidArgument(f"finite-difference scheme needs ell >= 4, got {ell!r}")
    return int(ell)


@dataclass(frozen=True)
class FdScheme:
    ell: int

    def __post_init__(self):
        object.__setattr__(self, "ell", _check_ell(self.ell))

    @property
    def h(self):
        return 1.0 / self.ell

    def kernel_block(self):
        """(ell-1) x ell block of quadrature weights, rows j=1..ell-1, columns i=0..ell-1."""
        ell = self.ell
        j = np.arange(1, ell, dtype=float)[:, None]
        i = np.arange(0, ell, dtype=float)[None, :]
        return np.where(i < j, (j - i) / j**2 * self.h**2, 0.0)

    def matrix(self, lam):
        """Full (ell+1) x (ell+1) matrix at ``lam``; row 1 starts h**2 - lam, 2 lam, -lam."""
        ell = self.ell
        m = np.zeros((ell + 1, ell + 1))
        m[: ell - 1, :ell] = self.kernel_block()
        rows = np.arange(ell - 1)
        # row index r holds equation j = r + 1, stencil on columns j-1, j, j+1
        m[rows, rows] -= lam
        m[rows, rows + 1] += 2.0 * lam
        m[rows, rows + 2] -= lam
        m[ell - 1, ell] = 1.0
        m[ell, ell - 1] = 1.0
        m[ell, ell] = -1.0
        return m

    def determinant_sign(self, lam):
        m = self.matrix(lam)
        # positive row scaling keeps the sign and keeps the LU away from underflow
        scale = np.max(np.abs(m), axis=1)
        sign, _ = np.linalg.slogdet(m / scale[:, None])
        return float(sign)

    def reduced_pencil(self):
        """(L, T) with w_ell = w_{ell-1} = 0 eliminated: L w = lambda T w on w_0..w_{ell-2}."""
        ell = self.ell
        size = ell - 1
        lmat = self.kernel_block()[:, :size]
        tmat = np.zeros((size, size))
        r = np.arange(size)
        tmat[r, r] = 1.0
        tmat[r[:-1], r[:-1] + 1] = -2.0
        tmat[r[:-2], r[:-2] + 2] = 1.0
        return lmat, tmat


def fd_generalized_eigenvalues(ell, imag_tol=1e-9):
    """Real eigenvalues of the reduced pencil via T^{-1} L, non-increasing.

    T is unit upper triangular, so the reduction is an exact triangular solve.
    """
    lmat, tmat = FdScheme(ell).reduced_pencil()
    mat = solve_triangular(tmat, lmat, unit_diagonal=True)
    try:
        ev = np.linalg.eigvals(mat)
    except np.linalg.LinAlgError as exc:
        raise NumericFailure(f"eigensolver failed on the reduced pencil: {exc}") from exc
    scale = np.max(np.abs(ev)) if ev.size else 1.0
    real = np.sort(ev[np.abs(ev.imag) <= imag_tol * scale].real)[::-1]
    return SingularSpectrum(values=real, kind="eigen", source="fd-pencil", ell=int(ell))


def fd_eigenvalues(ell, lambda_range=DEFAULT_LAMBDA_RANGE, scan_points=DEFAULT_SCAN_POINTS):
    """Eigenvalues of the scheme as sign changes of its determinant.

    The determinant sign is sampled on ``scan_points`` log-spaced values
    covering ``lambda_range``; every sign change is refined by bisection to
    relative width 1e-10. Roots closer together than the scan spacing are
    missed; when nothing is bracketed the result is empty and flagged.
    """
    scheme = FdScheme(ell)
    lo, hi = (float(v) for v in lambda_range)
    if not 0 < lo < hi <= 1:
        raise InvalidArgument(f"need 0 < lambda_min < lambda_max <= 1, got {lambda_range}")
    if int(scan_points) != scan_points or scan_points < 2:
        raise InvalidArgument(f"need at least 2 scan points, got {scan_points!r}")

    grid = np.geomspace(lo, hi, int(scan_points))
    signs = np.array([scheme.determinant_sign(lam) for lam in grid])
    roots = [lam for lam, sg in zip(grid, signs) if sg == 0.0]
    for k in np.nonzero(signs[:-1] * signs[1:] < 0)[0]:
        a, b = grid[k], grid[k + 1]
        roots.append(bisect(scheme.determinant_sign, a, b, xtol=a * 1e-14, rtol=BISECT_RTOL))

    flags = ()
    if not roots:
        flags = ("no-roots-bracketed",)
        warnings.warn(
            f"determinant scan over [{lo:g}, {hi:g}] with {scan_points} points bracketed no root",
            RuntimeWarning,
            stacklevel=2,
        )
    return SingularSpectrum(
        values=np.sort(np.array(roots, dtype=float))[::-1],
        kind="eigen",
        source="fd-scheme",
        ell=scheme.ell,
        flags=flags,
    )
