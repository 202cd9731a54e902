"""Singular/eigen spectra of dense matrices and power-law decay fits.

The production routines call LAPACK through numpy. The Jacobi routines at
the bottom are slow, self-contained reference methods used to cross-check
them on small matrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidArgument, NumericFailure

MAX_ELL = 5000
EIGEN_CLIP = 1e-12


@dataclass(frozen=True)
class SingularSpectrum:
    """Non-increasing singular values (``kind="singular"``) or eigenvalues."""

    values: np.ndarray
    kind: str
    source: object
    ell: int
    flags: tuple = field(default=())

    def __post_init__(self):
        if self.kind not in ("singular", "eigen"):
            raise InvalidArgument(f"unknown spectrum kind {self.kind!r}")
        values = np.array(self.values, dtype=float)
        if values.ndim != 1:
            raise InvalidArgument("spectrum values must be one-dimensional")
        if np.any(np.diff(values) > 0):
            raise InvalidArgument("spectrum values must be non-increasing")
        if self.kind == "singular" and values.size and values[-1] < 0:
            raise InvalidArgument("singular values must be non-negative")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, n):
        """1-based access: ``spec[1]`` is the largest value."""
        if not 1 <= n <= len(self.values):
            raise IndexError(n)
        return self.values[n - 1]


def singular_values(op):
    """All singular values of a discretized operator (or a bare matrix)."""
    matrix = np.asarray(getattr(op, "entries", op), dtype=float)
    if matrix.ndim != 2:
        raise InvalidArgument("expected a two-dimensional matrix")
    if max(matrix.shape) > MAX_ELL:
        raise InvalidArgument(f"dense SVD is limited to size {MAX_ELL}")
    if not np.all(np.isfinite(matrix)):
        raise NumericFailure("matrix has non-finite entries")
    try:
        sigma = np.linalg.svd(matrix, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NumericFailure(f"SVD did not converge for {matrix.shape} matrix: {exc}") from exc
    return SingularSpectrum(
        values=sigma,
        kind="singular",
        source=getattr(op, "expr", "matrix"),
        ell=max(matrix.shape),
    )


def _check_symmetric(matrix, tol=1e-12):
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise InvalidArgument("expected a square matrix")
    scale = max(1.0, float(np.max(np.abs(matrix)))) if matrix.size else 1.0
    if np.max(np.abs(matrix - matrix.T), initial=0.0) > tol * scale:
        raise InvalidArgument("matrix is not symmetric")


def symmetric_eigenvalues(matrix, source="matrix"):
    """Eigenvalues of a real symmetric matrix, non-increasing.

    Negatives within ``1e-12 * lambda_1`` of zero are roundoff on
    semidefinite input and are clipped to 0.
    """
    matrix = np.asarray(matrix, dtype=float)
    _check_symmetric(matrix)
    if matrix.shape[0] > MAX_ELL:
        raise InvalidArgument(f"dense eigensolver is limited to size {MAX_ELL}")
    try:
        lam = np.linalg.eigvalsh(matrix)[::-1]
    except np.linalg.LinAlgError as exc:
        raise NumericFailure(f"symmetric eigensolver did not converge: {exc}") from exc
    if lam.size:
        tiny = EIGEN_CLIP * max(abs(lam[0]), 0.0)
        lam = np.where((lam < 0) & (lam >= -tiny), 0.0, lam)
    return SingularSpectrum(values=lam, kind="eigen", source=source, ell=matrix.shape[0])


@dataclass(frozen=True)
class DecayFit:
    exponent_hat: float
    intercept: float
    residual_rms: float
    window: tuple
    interval_hat: tuple


def default_window(ell):
    """Fit window that drops the head and the discretization-dominated tail."""
    return max(8, ell // 200), ell // 10


def loglog_slope(values, n_lo, n_hi):
    """Least-squares slope and intercept of log(values_n) against log(n).

    ``values`` is 0-based storage of a 1-based sequence; the window is
    inclusive.
    """
    v = np.asarray(values, dtype=float)[n_lo - 1 : n_hi]
    if np.any(v <= 0):
        raise InvalidArgument("log-log fit needs positive values in the window")
    x = np.log(np.arange(n_lo, n_hi + 1, dtype=float))
    y = np.log(v)
    xm, ym = x.mean(), y.mean()
    slope = float(np.dot(x - xm, y - ym) / np.dot(x - xm, x - xm))
    intercept = float(ym - slope * xm)
    resid = y - (intercept + slope * x)
    return slope, intercept, float(np.sqrt(np.mean(resid**2)))


def _dyadic_chords(n_lo, n_hi):
    if 2 * n_lo > n_hi:
        return [(n_lo, n_hi)]
    chords = []
    n = n_lo
    while 2 * n <= n_hi:
        chords.append((n, 2 * n))
        n *= 2
    if chords[-1][1] < n_hi:
        chords.append((n_hi // 2, n_hi))
    return chords


def fit_decay(spectrum, window=None):
    """Fit value_n ~ c * n**(-mu) over an inclusive 1-based window.

    ``interval_hat`` spans the local exponents on dyadic chords [n, 2n]
    inside the window, widened if needed so it contains ``exponent_hat``.
    """
    values = np.asarray(getattr(spectrum, "values", spectrum), dtype=float)
    if window is None:
        window = default_window(getattr(spectrum, "ell", len(values)))
    n_lo, n_hi = (int(w) for w in window)
    if n_lo < 2 or n_hi <= n_lo or n_hi > len(values):
        raise InvalidArgument(f"window {window} must satisfy 2 <= lo < hi <= {len(values)}")
    if np.any(values[n_lo - 1 : n_hi] <= 0):
        raise InvalidArgument("spectrum has non-positive values inside the fit window")
    slope, intercept, rms = loglog_slope(values, n_lo, n_hi)
    mu = -slope
    local = [
        -(math.log(values[b - 1]) - math.log(values[a - 1])) / math.log(b / a)
        for a, b in _dyadic_chords(n_lo, n_hi)
    ]
    return DecayFit(
        exponent_hat=mu,
        intercept=intercept,
        residual_rms=rms,
        window=(n_lo, n_hi),
        interval_hat=(min(min(local), mu), max(max(local), mu)),
    )


# Reference methods: cyclic Jacobi, O(n^3) per sweep, for cross-checks only.


def jacobi_singular_values(matrix, tol=1e-15, max_sweeps=100):
    """Singular values by one-sided (Hestenes) Jacobi rotations."""
    u = np.array(matrix, dtype=float)
    if u.shape[0] < u.shape[1]:
        u = u.T.copy()
    n = u.shape[1]
    for _ in range(max_sweeps):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                alpha = float(u[:, p] @ u[:, p])
                beta = float(u[:, q] @ u[:, q])
                gamma = float(u[:, p] @ u[:, q])
                if abs(gamma) <= tol * math.sqrt(alpha * beta) or gamma == 0.0:
                    continue
                rotated = True
                zeta = (beta - alpha) / (2.0 * gamma)
                t = math.copysign(1.0, zeta) / (abs(zeta) + math.sqrt(1.0 + zeta * zeta))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = c * t
                up = u[:, p].copy()
                u[:, p] = c * up - s * u[:, q]
                u[:, q] = s * up + c * u[:, q]
        if not rotated:
            return np.sort(np.linalg.norm(u, axis=0))[::-1]
    raise NumericFailure(f"one-sided Jacobi did not converge in {max_sweeps} sweeps")


def jacobi_eigenvalues(matrix, tol=1e-15, max_sweeps=100):
    """Eigenvalues of a symmetric matrix by classical cyclic Jacobi."""
    a = np.array(matrix, dtype=float)
    _check_symmetric(a)
    n = a.shape[0]
    for _ in range(max_sweeps):
        off = math.sqrt(float(np.sum(np.tril(a, -1) ** 2)))
        if off <= tol * max(1.0, float(np.linalg.norm(a))):
            return np.sort(np.diag(a))[::-1]
        for p in range(n - 1):
            for q in range(p + 1, n):
                if a[p, q] == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * a[p, q])
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(1.0 + theta * theta))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                ap, aq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap, aq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                a[p, q] = a[q, p] = 0.0
    raise NumericFailure(f"cyclic Jacobi did not converge in {max_sweeps} sweeps")
