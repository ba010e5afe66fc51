import mpmath
import pytest

from omegaxi import zeta_ref as zr
from omegaxi.numerics import DomainError
from omegaxi.xi_engine import xi_integral

from conftest import close


def _dirichlet_zeta2(n_terms=2000):
    """Partial sum plus the integral tail with two Euler-Maclaurin corrections."""
    n = n_terms
    s = sum(mpmath.mpf(1) / (k * k) for k in range(1, n + 1))
    return s + mpmath.mpf(1) / n - mpmath.mpf(1) / (2 * n * n) + mpmath.mpf(1) / (6 * n ** 3)


def test_zeta_half(work):
    assert close(zr.zeta(mpmath.mpf(1) / 2, work).value, "-1.4603545088", "1e-9")


def test_zeta_two_against_dirichlet_sum(work):
    assert close(zr.zeta(2, work).value, _dirichlet_zeta2(), "1e-15")
    assert close(zr.zeta(2, work).value, "1.644934066", "1e-9")


@pytest.mark.parametrize("n", [2, 4, 10])
def test_trivial_zeros(work, n):
    assert zr.zeta(-n, work).value == 0


def test_pole(ctx):
    with pytest.raises(DomainError):
        zr.zeta(1, ctx)


@pytest.mark.parametrize("s", ["0.5+14.134725141734693790457j", "2+3j", "-1.5+4j", "0.25+60j", "3",
                               "1+9.064720283654387j"])
def test_zeta_against_mpmath(work, s):
    # the last point has 2^(1-s) = 1, where the alternating series degenerates
    s = mpmath.mpmathify(s)
    ref = mpmath.zeta(s)
    got = zr.zeta(s, work)
    assert abs(got.value - ref) <= mpmath.mpf(10) ** -45 * max(1, abs(ref))
    assert got.err.converged


def test_xi_normalisation(work):
    assert zr.xi_from_zeta(0, work) == mpmath.mpf(1) / 2
    assert close(zr.xi_from_zeta(1, work), mpmath.mpf(1) / 2, mpmath.mpf(10) ** -50)
    assert close(zr.xi_from_zeta(mpmath.mpf(1) / 2, work), "0.4971207782", "1e-10")


def test_xi_at_negative_even_integer(work):
    assert close(zr.xi_from_zeta(-2, work), zr.xi_from_zeta(3, work), mpmath.mpf(10) ** -45)


def test_cross_module_at_twenty(work):
    a = zr.xi_from_zeta(mpmath.mpc(0.5, 20), work)
    b = xi_integral(mpmath.mpc(0, 20), work).value
    assert abs(a - b) < mpmath.mpf(10) ** -(work.digits - 10) * max(1, abs(a))


def test_functional_equation(work):
    s = mpmath.mpc("0.3", "7")
    assert zr.functional_equation_residual(s, work) < mpmath.mpf(10) ** -(work.digits - 12) * abs(zr.zeta(s, work).value)
    assert zr.xi_functional_residual(mpmath.mpc("0.2", "3"), work) < mpmath.mpf(10) ** -(work.digits - 12)


def test_borwein_depth_grows_with_height():
    assert zr.borwein_depth(100, 65) > zr.borwein_depth(0, 65) > 0
