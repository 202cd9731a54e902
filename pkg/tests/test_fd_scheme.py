import numpy as np
import pytest

from volterra_spectra.discretize import build_grid, discretize
from volterra_spectra.errors import InvalidArgument
from volterra_spectra.fd_scheme import FdScheme, fd_eigenvalues, fd_generalized_eigenvalues
from volterra_spectra.operators import A
from volterra_spectra.spectral import loglog_slope, singular_values


def test_small_scheme_matches_pencil():
    scan = fd_eigenvalues(8).values
    oracle = fd_generalized_eigenvalues(8).values
    assert len(scan) == len(oracle) == 7
    np.testing.assert_allclose(scan, oracle, rtol=1e-8)


def test_figure_scale_scheme():
    spec = fd_eigenvalues(20, (1e-7, 0.2), 2000)
    assert len(spec) >= 8
    assert spec.source == "fd-scheme" and spec.kind == "eigen"
    slope = loglog_slope(spec.values, 1, 8)[0]
    assert -4.6 <= slope <= -3.4
    np.testing.assert_allclose(spec.values, fd_generalized_eigenvalues(20).values[: len(spec)], rtol=1e-8)
    sigma1 = singular_values(discretize(A, build_grid(2000))).values[0]
    assert spec.values[0] == pytest.approx(sigma1**2, rel=0.10)


def test_matrix_layout():
    ell, lam = 6, 0.3
    scheme = FdScheme(ell)
    h2 = scheme.h**2
    m = scheme.matrix(lam)
    assert m.shape == (ell + 1, ell + 1)
    # first equation merges the i = 0 kernel weight with the stencil
    np.testing.assert_allclose(m[0, :4], [h2 - lam, 2 * lam, -lam, 0.0])
    # equation j = 3: kernel weights (3 - i)/9 h**2 for i < 3, stencil on columns 2, 3, 4
    np.testing.assert_allclose(m[2, :5], [3 / 9 * h2, 2 / 9 * h2, 1 / 9 * h2 - lam, 2 * lam, -lam])
    np.testing.assert_array_equal(m[ell - 1], np.eye(ell + 1)[ell])
    np.testing.assert_array_equal(m[ell], np.eye(ell + 1)[ell - 1] - np.eye(ell + 1)[ell])


def test_matrix_at_zero_is_triangular_plus_boundary():
    m = FdScheme(10).matrix(0.0)
    assert np.all(np.triu(m[:-2], 1) == 0)
    assert set(np.unique(m[-2:])) <= {0.0, 1.0, -1.0}


def test_pencil_shapes():
    lmat, tmat = FdScheme(9).reduced_pencil()
    assert lmat.shape == tmat.shape == (8, 8)
    np.testing.assert_array_equal(np.diag(tmat), 1.0)
    assert np.all(np.tril(tmat, -1) == 0)


def test_determinant_changes_sign_at_roots():
    scheme = FdScheme(8)
    for lam in fd_generalized_eigenvalues(8).values:
        assert scheme.determinant_sign(lam * (1 - 1e-6)) != scheme.determinant_sign(lam * (1 + 1e-6))


@pytest.mark.parametrize("ell", [3, 0, 2.5])
def test_small_ell_rejected(ell):
    with pytest.raises(InvalidArgument):
        FdScheme(ell)
    with pytest.raises(InvalidArgument):
        fd_eigenvalues(ell)


@pytest.mark.parametrize("rng", [(0.0, 0.1), (0.2, 0.1), (0.1, 1.5)])
def test_bad_lambda_range(rng):
    with pytest.raises(InvalidArgument):
        fd_eigenvalues(8, rng)


def test_empty_scan_flags_and_warns():
    with pytest.warns(RuntimeWarning):
        spec = fd_eigenvalues(8, (0.5, 0.9), 50)
    assert len(spec) == 0
    assert "no-roots-bracketed" in spec.flags
