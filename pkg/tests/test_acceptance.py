"""The 13 acceptance criteria at full scale (ell = 2000 / 1000).

Each criterion prints one PASS/FAIL line; the lines are also collected into
an "acceptance criteria" section at the end of the pytest run. Running this
file directly prints the same lines without pytest.
"""

import time

import pytest

from volterra_spectra import verify

CRITERIA = [
    (1, "sigma_n(J) closed form, ell=2000, n<=50, rel err <= 1%"),
    (2, "Frobenius^2 of A at ell=1000 within 0.01 of 1/6"),
    (3, "decay exponent of sigma_n(A) over [10,100] in [1.9,2.1], interval inside [1.8,2.2]"),
    (4, "sigma_n(J^2) <= sigma_n(A) <= sigma_1(C) sigma_n(J) at ell=1000, slack 1e-10"),
    (5, "1/12 + 1/15 + closed-form sum + remainder = 1/6 to 1e-8; quadrature oracle i=3..40 to 1e-10"),
    (6, "tail identity 1/(8n^3-2n) for n=2..10 to 1e-8"),
    (7, "FD scheme at ell=20: >= 8 roots, pencil match 1e-8, slope in [-4.6,-3.4], lambda_1 within 10%"),
    (8, "J^kappa exponents within 0.1 of kappa for kappa in {0.5, 1.5}"),
    (9, "cosine-basis slope of ||A e_i||^2 over [20,200] in [-3.15,-2.85]"),
    (10, "M o J and J exponents differ by <= 0.05"),
    (11, "q_j(-1), f-expansion and orthonormality identities"),
    (12, "chi image 2 - 1/n; cosine image within 1/(2n)+1e-6 of pi/2; ratio monotone"),
    (13, "discrete sigma-tail <= 1/(8n^3-2n) + 0.02/ell for n=2..20"),
]


def test_criteria_cover_every_check():
    assert len(CRITERIA) == len(verify.CHECKS) == 13


@pytest.fixture(scope="module")
def full_scale():
    verify.clear_caches()
    yield verify.Scale.full()
    verify.clear_caches()


def _line(number, statement, result, seconds):
    status = "PASS" if result.passed else "FAIL"
    return f"[{number:2d}] {status}  {statement} | {result.detail} ({seconds:.1f}s)"


@pytest.mark.parametrize(
    "number, statement, check",
    [(n, s, c) for (n, s), c in zip(CRITERIA, verify.CHECKS)],
    ids=[f"criterion_{n:02d}_{c.__name__.removeprefix('check_')}" for (n, _), c in zip(CRITERIA, verify.CHECKS)],
)
def test_acceptance(number, statement, check, full_scale, acceptance_log):
    start = time.perf_counter()
    result = check(full_scale)
    line = _line(number, statement, result, time.perf_counter() - start)
    print(line)
    acceptance_log.append(line)
    assert result.status == "PASS", line


if __name__ == "__main__":
    scale = verify.Scale.full()
    for (number, statement), check in zip(CRITERIA, verify.CHECKS):
        t0 = time.perf_counter()
        print(_line(number, statement, check(scale), time.perf_counter() - t0))
