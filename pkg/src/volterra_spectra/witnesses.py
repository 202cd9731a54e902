"""Finite-n certificates that the Cesaro operator is non-compact and has an
unbounded inverse.

* ``chi``: x_n = sqrt(n) on (0, 1/n], zero elsewhere. Unit norm, tends to 0
  weakly, yet ||C x_n||**2 = 2 - 1/n stays away from 0.
* ``cosine``: x_n = sqrt(n) cos(n t). ||x_n||**2 grows like n/2 while
  ||C x_n||**2 = integral_0^n sin(u)**2 / u**2 du stays below pi/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .discretize import build_grid, discretize
from .errors import InvalidArgument
from .quadrature import gauss_rule
from .spectral import singular_values

N_TEST_FUNCTIONS = 5


@dataclass(frozen=True)
class WitnessResult:
    kind: str
    n: int
    input_norm_sq: float
    image_norm_sq: float
    weak_pairings: tuple

    @property
    def ratio(self):
        return self.input_norm_sq / self.image_norm_sq


def _check_n(n, upper=None):
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise InvalidArgument(f"witness index must be a positive integer, got {n!r}")
    if upper is not None and n > upper:
        raise InvalidArgument(f"witness index limited to {upper}, got {n}")
    return int(n)


def _test_frequencies():
    # phi_k(t) = sqrt(2) sin((k - 1/2) pi t), the right singular functions of J
    return [(k - 0.5) * math.pi for k in range(1, N_TEST_FUNCTIONS + 1)]


def chi_witness(n):
    n = _check_n(n)
    # <x_n, phi_k> = sqrt(2n) (1 - cos(w/n)) / w, written with sin**2 to avoid cancellation
    pairings = tuple(
        math.sqrt(2.0 * n) * 2.0 * math.sin(0.5 * w / n) ** 2 / w for w in _test_frequencies()
    )
    return WitnessResult(
        kind="chi",
        n=n,
        input_norm_sq=1.0,
        # integral_0^{1/n} n ds + integral_{1/n}^1 ds / (n s**2) = 1 + (1 - 1/n)
        image_norm_sq=2.0 - 1.0 / n,
        weak_pairings=pairings,
    )


def _sinc_squared(u):
    small = u < 1e-3
    us = np.where(small, 1.0, u)
    u2 = u * u
    series = 1.0 - u2 / 6.0 + u2 * u2 / 120.0
    return np.where(small, series, np.sin(us) / us) ** 2


def sinc_squared_integral(upper, nodes=12, chunk=200_000):
    """integral_0^upper (sin u / u)**2 du by composite Gauss on unit-width panels."""
    panels = max(64, math.ceil(upper))
    x, w = gauss_rule(nodes)
    width = upper / panels
    total = 0.0
    for start in range(0, panels, chunk):
        left = (np.arange(start, min(start + chunk, panels)) * width)[:, None]
        pts = left + 0.5 * width * (x[None, :] + 1.0)
        total += float(np.sum(_sinc_squared(pts) * w[None, :]))
    return 0.5 * width * total


def cosine_witness(n):
    n = _check_n(n, upper=10**6)
    pairings = []
    for w in _test_frequencies():
        # sqrt(2n) integral_0^1 cos(n t) sin(w t) dt
        if abs(w - n) < 1e-12:
            val = (1.0 - math.cos(2.0 * n)) / (4.0 * n)
        else:
            val = 0.5 * ((1 - math.cos((w + n))) / (w + n) + (1 - math.cos(w - n)) / (w - n))
        pairings.append(math.sqrt(2.0 * n) * val)
    return WitnessResult(
        kind="cosine",
        n=n,
        input_norm_sq=(n + math.sin(n) * math.cos(n)) / 2.0,
        # substitute u = n s in integral_0^1 sin(n s)**2 / (n s**2) ds
        image_norm_sq=sinc_squared_integral(float(n)),
        weak_pairings=tuple(pairings),
    )


def estimate_operator_norm(expr, ell):
    """Largest singular value of the discretization of ``expr`` on ``ell`` cells."""
    return float(singular_values(discretize(expr, build_grid(ell))).values[0])
