"""Shifted Legendre machinery for the n**-2 upper bound on sigma_n(C o J).

Conventions: ``L_j`` is the Legendre polynomial on [-1, 1]; the orthonormal
basis of L2(0, 1) is P_{i+1}(t) = sqrt(2i+1) L_i(2t - 1), i >= 0. The image
a_i = A P_{i+1} is a polynomial with an exact Legendre expansion, which gives
||A P_i||**2 in closed form and the tail sum over i > n as 1/(8n**3 - 2n).

The closed forms for ||A P_i||**2 hold from i = 3 and the tail formula from
n = 2; the first two norms are 1/12 and 1/15 and are returned separately.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
import numpy as np
from numpy.polynomial import legendre as npleg

from .errors import InvalidArgument, NumericFailure
from .quadrature import composite_gauss, gauss_nodes, gauss_rule, nodes_for_degree

HS_NORM_SQ = 1.0 / 6.0


# --- Legendre polynomials ------------------------------------------------


def _legendre_table(n, x):
    """Rows L_0(x)..L_n(x) by the three-term recurrence."""
    x = np.asarray(x, dtype=float)
    table = np.empty((n + 1,) + x.shape)
    table[0] = 1.0
    if n >= 1:
        table[1] = x
    for i in range(1, n):
        table[i + 1] = ((2 * i + 1) * x * table[i] - i * table[i - 1]) / (i + 1)
    return table


def legendre_L(j, x):
    """L_j(x) via (i+1) L_{i+1} = (2i+1) x L_i - i L_{i-1}."""
    if j < 0:
        raise InvalidArgument(f"degree must be >= 0, got {j}")
    xa = np.asarray(x, dtype=float)
    if np.any(np.abs(xa) > 1 + 1e-12):
        raise InvalidArgument("Legendre evaluation is restricted to [-1, 1]")
    value = _legendre_table(j, xa)[j]
    return float(value) if value.ndim == 0 else value


def legendre_series(coeffs, x):
    """Sum_j coeffs[j] L_j(x)."""
    coeffs = np.asarray(coeffs, dtype=float)
    xa = np.asarray(x, dtype=float)
    if coeffs.size == 0:
        return 0.0 * xa if xa.ndim else 0.0
    table = _legendre_table(coeffs.size - 1, xa)
    value = np.tensordot(coeffs, table, axes=1)
    return float(value) if np.ndim(value) == 0 else value


def shifted_P(i, t):
    """Orthonormal shifted Legendre P_i(t) = sqrt(2i - 1) L_{i-1}(2t - 1), i >= 1."""
    if i < 1:
        raise InvalidArgument(f"shifted basis index starts at 1, got {i}")
    ta = np.asarray(t, dtype=float)
    if np.any(ta < -1e-12) or np.any(ta > 1 + 1e-12):
        raise InvalidArgument("shifted Legendre evaluation is restricted to [0, 1]")
    return math.sqrt(2 * i - 1) * legendre_L(i - 1, 2.0 * ta - 1.0)


# --- harmonic numbers, q_j, f_i --------------------------------------------


def harmonic(j):
    """H_j = sum_{k=1}^j 1/k, with H_0 = 0."""
    if j < 0 or j > 10**6:
        raise InvalidArgument(f"harmonic number index must be in [0, 1e6], got {j}")
    return math.fsum(1.0 / k for k in range(1, j + 1))


def legendre_q(j):
    """Legendre coefficients of q_j(x) = integral_{-1}^{1} (L_j(x) - L_j(tau))/(x - tau) dtau.

    q_0 = 0, q_1 = 2, and q_j obeys the same three-term recurrence as L_j.
    The returned array has length j (degree j - 1).
    """
    if j < 0 or j > 200:
        raise InvalidArgument(f"q_j is provided for 0 <= j <= 200, got {j}")
    if j == 0:
        return np.zeros(0)
    prev, cur = np.zeros(0), np.array([2.0])
    for k in range(1, j):
        nxt = (2 * k + 1) * npleg.legmulx(cur)
        nxt[: prev.size] -= k * prev
        prev, cur = cur, nxt / (k + 1)
    return cur


def f_direct(i, t):
    """f_i(t) = (L_i(2t - 1) - (-1)**i) / (2t), t > 0."""
    t = np.asarray(t, dtype=float)
    return (legendre_L(i, 2.0 * t - 1.0) - (-1.0) ** i) / (2.0 * t)


def f_coefficients(i):
    """Legendre coefficients of f_i: (-1)**(i+j-1) (2j+1) (H_i - H_j), j < i."""
    h_i = harmonic(i)
    return np.array([(-1.0) ** (i + j - 1) * (2 * j + 1) * (h_i - harmonic(j)) for j in range(i)])


def f_expansion(i, t):
    """f_i(t) from its finite Legendre expansion; finite at t = 0."""
    if i < 1:
        raise InvalidArgument(f"f_i is defined for i >= 1, got {i}")
    return legendre_series(f_coefficients(i), 2.0 * np.asarray(t, dtype=float) - 1.0)


# --- images under C and A -------------------------------------------------


def c_func(i, s):
    """c_i(s) = [C P_{i+1}](s) in closed form, i >= 1."""
    if i < 1:
        raise InvalidArgument(f"c_i is defined for i >= 1, got {i}")
    x = 2.0 * np.asarray(s, dtype=float) - 1.0
    root = math.sqrt(2 * i + 1)
    alt = np.array([(-1.0) ** j * (2 * j + 1) for j in range(i)])
    coeffs = np.zeros(i + 1)
    coeffs[:i] = (-1.0) ** i * root / (i * (i + 1)) * alt
    coeffs[i] = root / (i + 1)
    return legendre_series(coeffs, x)


@dataclass(frozen=True)
class LegendreImage:
    """a_i = A P_{i+1} as coefficients over L_0..L_{i+1} in the variable 2s - 1."""

    i: int
    coeffs: np.ndarray

    def __call__(self, s):
        return legendre_series(self.coeffs, 2.0 * np.asarray(s, dtype=float) - 1.0)

    def norm_squared(self):
        # (1/2) integral_{-1}^{1} L_j**2 = 1/(2j+1)
        j = np.arange(self.coeffs.size)
        return float(np.sum(self.coeffs**2 / (2 * j + 1)))


def image_constants(i):
    """(k1, k2, k3, k4) of the expansion of a_i."""
    r = math.sqrt(2 * i + 1)
    k1 = (-1.0) ** i * r / ((i - 1) * i * (i + 1) * (i + 2))
    k2 = (i * i - 4 * i - 2) / (2 * i * (i + 1) * (i + 2) * r)
    k3 = r / (2 * (i + 1) * (i + 2))
    k4 = 1.0 / (2 * (i + 2) * r)
    return k1, k2, k3, k4


def a_image(i):
    """Exact Legendre expansion of A P_{i+1}, i >= 2."""
    if i < 2:
        raise InvalidArgument(f"the a_i expansion needs i >= 2, got {i}")
    k1, k2, k3, k4 = image_constants(i)
    coeffs = np.zeros(i + 2)
    coeffs[: i - 1] = [k1 * (-1.0) ** j * (2 * j + 1) for j in range(i - 1)]
    coeffs[i - 1] += k2
    coeffs[i] -= k3
    coeffs[i + 1] += k4
    return LegendreImage(i, coeffs)


def a_from_c(i, s):
    """a_i(s) assembled from c_{i+1} and c_{i-1} (the J-then-C route)."""
    return (
        c_func(i + 1, s) / math.sqrt(2 * i + 3) - c_func(i - 1, s) / math.sqrt(2 * i - 1)
    ) / (2.0 * math.sqrt(2 * i + 1))


def apply_A(i, s):
    """[A P_i](s) from exact polynomial forms, i >= 1."""
    s = np.asarray(s, dtype=float)
    if i == 1:
        return 0.5 * s
    if i == 2:
        return math.sqrt(3.0) * (s * s / 3.0 - 0.5 * s)
    return a_image(i - 1)(s)


def apply_A_quadrature(i, s):
    """[A P_i](s) = (1/s) integral_0^s (s - t) P_i(t) dt by Gauss quadrature."""
    s = np.atleast_1d(np.asarray(s, dtype=float))
    x, w = gauss_rule(nodes_for_degree(i))
    t = 0.5 * s[:, None] * (x[None, :] + 1.0)
    vals = (s[:, None] - t) * shifted_P(i, t)
    return np.sum(0.5 * s[:, None] * w[None, :] * vals, axis=1) / s


def norm_AP_squared_quadrature(i):
    """||A P_i||**2 by nested Gauss quadrature of the A kernel."""
    s, w = gauss_nodes(nodes_for_degree(2 * i))
    return float(np.sum(w * apply_A_quadrature(i, s) ** 2))


def closed_form_norm_sq(i):
    """3 / (2i (i-1) (2i-3) (2i+1)): exact only for i >= 3."""
    return 3.0 / (2 * i * (i - 1) * (2 * i - 3) * (2 * i + 1))


def norm_AP_squared(i):
    """||A P_i||**2: 1/12, 1/15, then the closed form from i = 3."""
    if i < 1:
        raise InvalidArgument(f"basis index starts at 1, got {i}")
    if i == 1:
        return 1.0 / 12.0
    if i == 2:
        return 1.0 / 15.0
    return closed_form_norm_sq(i)


def tail_formula(n):
    """1 / (8 n**3 - 2 n), without index guard."""
    return 1.0 / (8.0 * n**3 - 2.0 * n)


def legendre_tail(n):
    """Sum_{i > n} ||A P_i||**2 = 1 / (2n (2n-1) (2n+1)) for n >= 2."""
    if n < 2:
        raise InvalidArgument(f"tail identity holds for n >= 2, got {n}")
    return 1.0 / (2.0 * n * (2 * n - 1) * (2 * n + 1))


def galerkin_singular_values(size):
    """Singular values of A restricted to span{P_1..P_size}.

    A maps P_i into span{P_1..P_{i+1}}, so the (size+1) x size coefficient
    matrix is exact; its singular values increase to sigma_n(A) with
    sigma_n(A)**2 - sigma_n(A Q)**2 <= legendre_tail(size).
    """
    s, w = gauss_nodes(size + 6)
    basis = np.array([shifted_P(k, s) for k in range(1, size + 2)])
    images = np.array([apply_A(i, s) for i in range(1, size + 1)])
    gram = (basis * w) @ images.T
    return np.linalg.svd(gram, compute_uv=False)


# --- cosine basis ---------------------------------------------------------


def _one_minus_cos_over_x(x):
    small = x < 1e-3
    xs = np.where(small, 1.0, x)
    x2 = x * x
    series = x * (0.5 - x2 / 24.0 + x2 * x2 / 720.0)
    direct = 2.0 * np.sin(0.5 * xs) ** 2 / xs
    return np.where(small, series, direct)


def cosine_basis_norm_squared(i):
    """||A e_i||**2 for e_i(t) = sqrt(2) cos((i - 1/2) pi t).

    A e_i(s) = sqrt(2) (1 - cos(w s)) / (w**2 s) with w = (i - 1/2) pi, so the
    squared norm integrates (2 / w**2) g(w s)**2 with g(x) = (1 - cos x)/x.
    Composite Gauss with max(32, 4i) panels; g switches to its Taylor series
    below x = 1e-3.
    """
    if i < 1 or i > 10**4:
        raise InvalidArgument(f"cosine basis index must be in [1, 1e4], got {i}")
    omega = (i - 0.5) * math.pi
    value = composite_gauss(
        lambda s: 2.0 / omega**2 * _one_minus_cos_over_x(omega * s) ** 2,
        0.0,
        1.0,
        panels=max(32, 4 * i),
    )
    if not math.isfinite(value) or value <= 0:
        raise NumericFailure(f"quadrature for ||A e_{i}||^2 returned {value}")
    return value


def cosine_tail_remainder(n_terms):
    """Leading-order sum_{i > N} ||A e_i||**2 ~ 1 / (2 pi**2 N**2)."""
    return 1.0 / (2.0 * math.pi**2 * n_terms**2)


# --- tail bounds ------------------------------------------------------------


def tail_to_pointwise(K, omega):
    """Pointwise constant K_hat = 2**(1 + 2 omega) K from a tail bound K n**(-2 omega).

    Doubling: n s_{2n}**2 <= sum_{i=n+1}^{2n} s_i**2 <= K n**(-2 omega), so
    s_i**2 <= K_hat i**(-(1 + 2 omega)) at even i. Odd i inherit the bound
    from i - 1 up to a factor (i / (i - 1))**(1 + 2 omega); use
    ``verify_pointwise_bound`` on concrete sequences.
    """
    if not K > 0 or not omega > 0:
        raise InvalidArgument("tail_to_pointwise needs K > 0 and omega > 0")
    return 2.0 ** (1.0 + 2.0 * omega) * K


@dataclass(frozen=True)
class TailCheck:
    ok: bool
    first_violation: int | None
    worst_ratio: float

    def __bool__(self):
        return self.ok


def verify_tail_bound(sq_norms, K, omega, n_max, remainder=0.0):
    """Check sum_{i=n+1}^{len} sq_norms_i + remainder <= K n**(-2 omega), n = 1..n_max."""
    sq = np.asarray(sq_norms, dtype=float)
    if np.any(~np.isfinite(sq)) or np.any(sq < 0):
        raise InvalidArgument("squared norms must be finite and non-negative")
    # suffix[n] = sum of sq[n:], i.e. the tail after the first n terms
    suffix = np.concatenate([np.cumsum(sq[::-1])[::-1], [0.0]])
    worst, first = 0.0, None
    for n in range(1, n_max + 1):
        tail = (suffix[n] if n < suffix.size else 0.0) + remainder
        bound = K * n ** (-2.0 * omega)
        if tail > 0:
            worst = max(worst, tail / bound if bound > 0 else math.inf)
        if tail > bound and first is None:
            first = n
    return TailCheck(first is None, first, worst)


def verify_pointwise_bound(sq_values, K_hat, omega, start=2):
    """Check sq_values_i <= K_hat i**(-(1 + 2 omega)) for i >= ``start``."""
    sq = np.asarray(sq_values, dtype=float)
    i = np.arange(1, sq.size + 1, dtype=float)
    bound = K_hat * i ** (-(1.0 + 2.0 * omega))
    sq, bound = sq[start - 1 :], bound[start - 1 :]
    if sq.size == 0:
        return TailCheck(True, None, 0.0)
    bad = np.nonzero(sq > bound)[0]
    first = int(bad[0]) + start if bad.size else None
    return TailCheck(bad.size == 0, first, float(np.max(sq / bound)))


def tail_constant(tails, omega):
    """Smallest K with tails[n-1] <= K n**(-2 omega) over the given range."""
    tails = np.asarray(tails, dtype=float)
    n = np.arange(1, tails.size + 1, dtype=float)
    return float(np.max(tails * n ** (2.0 * omega)))


@dataclass(frozen=True)
class TailReport:
    basis: str
    n: np.ndarray
    sq_norms: np.ndarray
    tail_sum: np.ndarray
    fitted_tail_exponent: float
    tail_constant: float
    pointwise_constant: float


def tail_report(basis, n_max):
    """Tails of ||A e_i||**2 for the Legendre or cosine basis, n = 1..n_max."""
    if n_max < 4:
        raise InvalidArgument(f"need n_max >= 4, got {n_max}")
    n = np.arange(1, n_max + 1)
    if basis == "legendre":
        sq = np.array([norm_AP_squared(i) for i in n])
        tails = np.array([HS_NORM_SQ - sq[0] if k == 1 else legendre_tail(k) for k in n])
        two_omega = 3.0
    elif basis == "cosine":
        total = max(2 * n_max, 1000)
        all_sq = np.array([cosine_basis_norm_squared(i) for i in range(1, total + 1)])
        suffix = np.cumsum(all_sq[::-1])[::-1]
        sq = all_sq[:n_max]
        tails = suffix[n] + cosine_tail_remainder(total)
        two_omega = 2.0
    else:
        raise InvalidArgument(f"unknown basis {basis!r}")
    lo = max(2, n_max // 2)
    x = np.log(n[lo - 1 :].astype(float))
    y = np.log(tails[lo - 1 :])
    slope = np.polyfit(x, y, 1)[0]
    K = tail_constant(tails, two_omega / 2.0)
    return TailReport(
        basis=basis,
        n=n,
        sq_norms=sq,
        tail_sum=tails,
        fitted_tail_exponent=float(-slope),
        tail_constant=K,
        pointwise_constant=tail_to_pointwise(K, two_omega / 2.0),
    )
