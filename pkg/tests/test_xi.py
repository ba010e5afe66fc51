import mpmath
import pytest

from omegaxi import xi_engine as xe
from omegaxi.numerics import DomainError
from omegaxi.zeta_ref import xi_from_zeta, zeta

from conftest import close


def test_integral_normalisation(work):
    assert close(xe.xi_integral(0, work).value, "0.4971207782", "1e-10")
    for z in (mpmath.mpf(1) / 2, -mpmath.mpf(1) / 2):
        assert close(xe.xi_integral(z, work).value, mpmath.mpf(1) / 2, mpmath.mpf(10) ** -45)


def test_integral_against_mpmath_xi(work):
    # mpmath.zeta is an independent implementation of the completed function
    for z in (mpmath.mpc(0, 14), mpmath.mpc("0.3", "0.4"), mpmath.mpc("-0.5", "27")):
        s = mpmath.mpf(1) / 2 + z
        ref = s * (s - 1) / 2 * mpmath.pi ** (-s / 2) * mpmath.gamma(s / 2) * mpmath.zeta(s)
        assert abs(xe.xi_integral(z, work).value - ref) < mpmath.mpf(10) ** -45


@pytest.mark.parametrize("m,odd", [(0, True), (0, False), (1, True), (1, False), (2, True), (2, False)])
def test_deriv_kernel_forms(work, m, odd):
    for z in (mpmath.mpf(1) / 2, mpmath.mpc(0, 10), mpmath.mpc("0.2", "-3")):
        a = xe.xi_deriv_kernel(z, m, odd, work).value
        b = xe.xi_integral(z, work).value
        assert abs(a - b) < mpmath.mpf(10) ** -(work.digits - 10)


def test_deriv_kernel_limit_at_origin(work):
    assert close(xe.xi_deriv_kernel(0, 0, True, work).value, "0.4971207782", "1e-10")
    assert abs(xe.xi_deriv_kernel(0, 0, True, work).value - xe.xi_integral(0, work).value) < mpmath.mpf(10) ** -45
    with pytest.raises(DomainError):
        xe.xi_deriv_kernel(0, 1, True, work)


def test_moment_series(work):
    assert close(xe.xi_moment_series(0, K=0, ctx=work).value, "0.497121", "1e-6")
    assert close(xe.xi_moment_series(mpmath.mpf(1) / 2, K=8, ctx=work).value, mpmath.mpf(1) / 2, "1e-10")
    z = mpmath.mpc("1.2", "0.7")
    assert abs(xe.xi_moment_series(z, ctx=work).value - xe.xi_integral(z, work).value) < mpmath.mpf(10) ** -40


def test_incomplete_gamma_route(work):
    assert close(xe.xi_incomplete_gamma(0, N=6, ctx=work).value, "0.4971207782", "1e-10")
    assert close(xe.xi_incomplete_gamma(mpmath.mpf(1) / 2, N=6, ctx=work).value, "0.5", "1e-10")
    z = mpmath.mpc("0.3", "0.4")
    assert abs(xe.xi_incomplete_gamma(z, ctx=work).value - xe.xi_integral(z, work).value) < mpmath.mpf(10) ** -40


def test_dispatch_and_unknown_route(work):
    z = mpmath.mpc("0.1", "5")
    vals = [xe.xi(z, r, work).value for r in xe.applicable_routes(z)]
    assert max(abs(v - vals[0]) for v in vals) < mpmath.mpf(10) ** -40
    with pytest.raises(ValueError):
        xe.xi(z, "nonsense", work)


def test_applicable_routes():
    assert "deriv_kernel" in xe.applicable_routes(0)
    assert "moment_series" not in xe.applicable_routes(mpmath.mpc(0, 14))
    assert set(xe.applicable_routes(mpmath.mpf("0.5"))) == set(xe.ROUTES)


def test_parts(work):
    p = xe.xi_parts(mpmath.mpf("0.7"), 0, work)
    assert p.U > 0 and p.V == 0
    p = xe.xi_parts(mpmath.mpf("0.25"), 10, work)
    v = xe.xi_integral(mpmath.mpc("0.25", 10), work).value
    assert close(p.U, v.real, mpmath.mpf(10) ** -45) and close(p.V, v.imag, mpmath.mpf(10) ** -45)


def test_amplification(work):
    assert close(xe.amplification(0, work), 2 * mpmath.pi ** 0.25 / mpmath.gamma(mpmath.mpf(5) / 4), mpmath.mpf(10) ** -50)
    assert close(xe.amplification(0, work), "2.9376251665", "1e-10")
    y = mpmath.mpf(6)
    lhs = xe.amplification(y, work) * abs(xe.xi_integral(mpmath.mpc(0, y), work).value)
    rhs = abs(zeta(mpmath.mpc(0.5, y), work).value)
    assert abs(lhs - rhs) < mpmath.mpf(10) ** -(work.digits - 12) * rhs


def test_via_zeta_route(work):
    z = mpmath.mpc(0, 14)
    assert close(xe.xi_via_zeta(z, work).value, xi_from_zeta(mpmath.mpf(1) / 2 + z, work), mpmath.mpf(10) ** -50)
