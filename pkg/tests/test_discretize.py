import importlib
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate, special

from volterra_spectra.discretize import build_grid, discretize, gamma_fn, kernel_AstarA, kernel_value
from volterra_spectra.errors import InvalidArgument, UnsupportedKernel
from volterra_spectra.operators import A, Cesaro, Compose, J, Jkappa, Mult

# the package re-exports the function discretize, which hides the submodule attribute
dz = importlib.import_module("volterra_spectra.discretize")


def test_grid_examples():
    g = build_grid(2)
    assert g.h == 0.5
    np.testing.assert_array_equal(g.nodes, [0.25, 0.75])
    np.testing.assert_array_equal(build_grid(4).nodes, [0.125, 0.375, 0.625, 0.875])
    with pytest.raises(InvalidArgument):
        build_grid(1)
    with pytest.raises(InvalidArgument):
        build_grid(2.5)


def test_grid_nodes_read_only():
    with pytest.raises(ValueError):
        build_grid(3).nodes[0] = 1.0


def test_kernel_examples():
    assert kernel_value(A, 0.75, 0.25) == pytest.approx(2 / 3, rel=1e-15)
    assert kernel_value(Jkappa(2), 1.0, 0.0) == pytest.approx(1.0, rel=1e-13)
    assert kernel_value(Cesaro(), 0.5, 0.1) == 2.0
    assert kernel_value(J(), 0.3, 0.1) == 1.0


def test_kernel_errors():
    with pytest.raises(InvalidArgument):
        kernel_value(J(), 0.2, 0.5)
    with pytest.raises(UnsupportedKernel):
        kernel_value(Mult(1), 0.5, 0.1)
    with pytest.raises(InvalidArgument):
        kernel_value(J(), 0.0, 0.0)


@pytest.mark.parametrize("x, expected", [(1.0, 1.0), (0.5, math.sqrt(math.pi)), (5.0, 24.0)])
def test_gamma_examples(x, expected):
    assert gamma_fn(x) == pytest.approx(expected, rel=1e-13)


def test_gamma_against_scipy_on_range():
    xs = np.concatenate([np.geomspace(1e-3, 1, 200), np.linspace(1, 30, 400)])
    rel = max(abs(gamma_fn(x) / special.gamma(x) - 1) for x in xs)
    assert rel <= 1e-12


@pytest.mark.parametrize("x", [0.0, -1.0, 30.5])
def test_gamma_domain(x):
    with pytest.raises(InvalidArgument):
        gamma_fn(x)


def test_discretize_examples():
    np.testing.assert_allclose(discretize(A, build_grid(2)).entries, [[0, 0], [1 / 3, 0]], rtol=1e-15)
    m = discretize(J(), build_grid(4)).entries
    np.testing.assert_array_equal(m, np.tril(np.full((4, 4), 0.25)))


@pytest.mark.parametrize("ell", [2, 7, 50, 300])
def test_squared_integral_equals_multiplier_times_a(ell):
    # k_{J^2}(s, t) = s - t = s * (s - t)/s
    grid = build_grid(ell)
    j2 = discretize(Jkappa(2), grid).entries
    a = discretize(A, grid).entries
    ma = grid.nodes[:, None] * a
    np.testing.assert_allclose(j2, ma, rtol=1e-14, atol=0)
    np.testing.assert_allclose(j2, discretize(Compose(Mult(1), A), grid).entries, rtol=1e-14, atol=0)


@pytest.mark.parametrize("expr", [J(), Jkappa(0.5), Jkappa(1.5), Cesaro(), A, Compose(Cesaro(), Jkappa(2))])
@pytest.mark.parametrize("ell", [2, 9, 64])
def test_volterra_structure(expr, ell):
    m = discretize(expr, build_grid(ell)).entries
    assert np.all(np.triu(m, 1) == 0)
    assert np.all(np.isfinite(m))


def test_a_matrix_has_zero_diagonal():
    assert np.all(np.diag(discretize(A, build_grid(40)).entries) == 0)


@pytest.mark.parametrize("ell", [10, 100, 1000])
def test_product_form_close_to_direct_kernel(ell):
    grid = build_grid(ell)
    direct = discretize(A, grid).entries
    product = discretize(Cesaro(), grid).entries @ discretize(J(), grid).entries
    assert np.max(np.abs(product - direct)) <= grid.h**2 / grid.nodes[0]


@pytest.mark.parametrize("ell", [100, 400, 1000])
def test_frobenius_near_hs_norm(ell):
    h = 1.0 / ell
    fro = float(np.sum(discretize(A, build_grid(ell)).entries ** 2))
    assert 1 / 6 - 3 * h <= fro <= 1 / 6 + 3 * h


def test_fractional_diagonal_cell_average():
    grid = build_grid(10)
    kappa = 0.5
    m = discretize(Jkappa(kappa), grid).entries
    # integral over one cell of gap**(kappa-1)/Gamma(kappa), i.e. h**kappa / Gamma(kappa+1)
    assert m[3, 3] == pytest.approx(grid.h**kappa / special.gamma(kappa + 1), rel=1e-12)


def test_jkappa_one_matches_j():
    grid = build_grid(30)
    np.testing.assert_allclose(discretize(Jkappa(1), grid).entries, discretize(J(), grid).entries, rtol=1e-13)


def test_mult_is_diagonal_of_nodes():
    grid = build_grid(8)
    np.testing.assert_array_equal(discretize(Mult(2), grid).entries, np.diag(grid.nodes**2))


def test_discretize_deterministic():
    a = discretize(Compose(Mult(1), Compose(Cesaro(), Jkappa(0.5))), build_grid(64)).entries
    b = discretize(Compose(Mult(1), Compose(Cesaro(), Jkappa(0.5))), build_grid(64)).entries
    assert a.tobytes() == b.tobytes()


def test_kernel_AstarA_examples():
    assert kernel_AstarA(0.5, 0.5) == pytest.approx(0.75 + math.log(0.5), abs=1e-15)
    assert kernel_AstarA(1.0, 0.5) == pytest.approx(0.0, abs=1e-15)
    with pytest.raises(InvalidArgument):
        kernel_AstarA(0.0, 0.5)
    with pytest.raises(InvalidArgument):
        kernel_AstarA(0.5, 1.5)


def test_kernel_AstarA_against_quadrature():
    pts = np.linspace(0.05, 0.95, 10)
    for t in pts:
        for s in pts:
            ref, _ = integrate.quad(lambda u: (u - t) / u * (u - s) / u, max(t, s), 1.0, epsabs=1e-14, epsrel=1e-13)
            assert abs(kernel_AstarA(t, s) - ref) <= 1e-10


@settings(max_examples=40)
@given(st.floats(1e-6, 1.0), st.floats(1e-6, 1.0))
def test_kernel_AstarA_symmetric(t, s):
    assert kernel_AstarA(t, s) == pytest.approx(kernel_AstarA(s, t), abs=1e-14)


def test_kernel_AstarA_is_gram_of_a_kernel():
    # A*A kernel from the Nystrom matrix tends to the closed form
    ell = 400
    grid = build_grid(ell)
    a = discretize(A, grid).entries
    gram = a.T @ a / grid.h
    i, j = 100, 250
    assert gram[i, j] == pytest.approx(kernel_AstarA(grid.nodes[i], grid.nodes[j]), abs=5e-3)


def test_gamma_tampering_changes_values(monkeypatch):
    before = gamma_fn(2.5)
    monkeypatch.setattr(dz, "_LANCZOS_COEF", tuple(c * 1.01 for c in dz._LANCZOS_COEF))
    assert abs(gamma_fn(2.5) / before - 1) > 1e-4
