import mpmath
import pytest

from omegaxi import kernel_family as kf
from omegaxi.numerics import DomainError
from omegaxi.xi_engine import xi_integral

from conftest import close


def j1_power_series(x, terms=60):
    x = mpmath.mpf(x)
    return sum((-1) ** k * (x / 2) ** (2 * k + 1) / (mpmath.factorial(k) * mpmath.factorial(k + 1))
               for k in range(terms))


def j1_first_root():
    """Secant iteration on the ascending series; no library Bessel routine involved."""
    a, b = mpmath.mpf("3.8"), mpmath.mpf("3.85")
    fa, fb = j1_power_series(a), j1_power_series(b)
    for _ in range(60):
        if fb == fa:
            break
        a, b = b, b - fb * (b - a) / (fb - fa)
        fa, fb = fb, j1_power_series(b)
    return b


def test_riemann_kernel_transform_is_xi(work):
    z = mpmath.mpc("0.2", "3")
    assert close(kf.kernel_xi(kf.RIEMANN, z, work).value, xi_integral(z, work).value, mpmath.mpf(10) ** -55)


def test_step_zero_and_origin(work):
    k = kf.StepKernel(1, 1)
    assert abs(kf.kernel_xi(k, mpmath.mpc(0, mpmath.pi), work).value) < mpmath.mpf(10) ** -55
    k2 = kf.StepKernel(mpmath.mpf("1.5"), mpmath.mpf("0.7"))
    assert close(kf.kernel_xi(k2, 0, work).value, mpmath.mpf("1.5") * mpmath.mpf("0.7"), mpmath.mpf(10) ** -55)


def test_step_closed_form_agrees_with_quadrature(work):
    k = kf.StepKernel(1, mpmath.mpf("1.3"))
    z = mpmath.mpc("0.3", "2")
    a = kf.step_xi_closed(k, z, work)
    b = kf.kernel_xi(k, z, work).value
    assert abs(a - b) < mpmath.mpf(10) ** -(work.digits - 10)
    assert close(kf.step_modulus_sq(k, z.real, z.imag, work), abs(a) ** 2, mpmath.mpf(10) ** -50)


def test_step_closed_zeros(work):
    k = kf.StepKernel(1, 2)
    for n in (1, 2, 5):
        assert abs(kf.step_xi_closed(k, mpmath.mpc(0, n * mpmath.pi / 2), work)) < mpmath.mpf(10) ** -55


def test_bessel_half_is_sinh_form(work):
    z = mpmath.mpf(2)
    v = kf.bessel_xi(mpmath.mpf(1) / 2, z, work)
    assert close(v, mpmath.sinh(z) / z, mpmath.mpf(10) ** -55)
    assert abs(kf.bessel_xi(mpmath.mpf(1) / 2, mpmath.mpc(0, mpmath.pi), work)) < mpmath.mpf(10) ** -55


@pytest.mark.parametrize("nu", ["0.5", "0.75", "1", "2.5"])
def test_bessel_against_besseli(work, nu):
    for z in (mpmath.mpc("0.4", "3"), mpmath.mpc(0, 7)):
        a = kf.bessel_xi(mpmath.mpf(nu), z, work)
        b = kf.bessel_xi_closed(mpmath.mpf(nu), z, work)
        assert abs(a - b) < mpmath.mpf(10) ** -45


def test_bessel_one_zero_is_j1_root(work):
    root = j1_first_root()
    assert abs(kf.bessel_xi(1, mpmath.mpc(0, root), work)) < mpmath.mpf(10) ** -40
    assert close(root, "3.8317059702075123156", "1e-18")


def test_bessel_domain():
    with pytest.raises(DomainError):
        kf.BesselKernel(mpmath.mpf("0.4"))


@pytest.mark.parametrize("knots,values,fragment", [
    ((0, 1, 1), (1, 0.5, 0), "strictly ascending"),
    ((0.1, 1), (1, 0), "first knot"),
    ((0, 1, 2), (1, 1.2, 0), "row 1"),
    ((0, 1), (1, -0.1), "nonnegative"),
    ((0, 1), (0, 0), "positive at u = 0"),
])
def test_tabulated_validation_names_violation(knots, values, fragment):
    with pytest.raises(kf.KernelValidationError, match=fragment):
        kf.TabulatedKernel(knots, values)


def test_tabulated_step_matches_closed_form(work, tmp_path):
    # a two-knot table 1 -> 1 followed by a near-vertical drop approximates the step
    p = tmp_path / "k.txt"
    p.write_text("# u omega\n0, 1\n1, 1\n1.000001, 0\n")
    k = kf.load_tabulated(p)
    assert k.omega(mpmath.mpf("0.5")) == 1 and k.omega(2) == 0
    z = mpmath.mpc("0.3", "1.1")
    exact = kf.step_xi_closed(kf.StepKernel(1, 1), z, work)
    assert abs(kf.kernel_xi(k, z, work).value - exact) < mpmath.mpf("1e-5")


def test_tabulated_linear_ramp_closed_form(work):
    # Omega = 1 - u on [0, 1]: transform (ch z - 1) / z^2
    k = kf.TabulatedKernel((0, 1), (1, 0))
    z = mpmath.mpc("0.5", "4")
    assert abs(kf.kernel_xi(k, z, work).value - (mpmath.cosh(z) - 1) / z ** 2) < mpmath.mpf(10) ** -50


@pytest.mark.parametrize("spec,kind", [("riemann", kf.RiemannKernel), ("step:1,2", kf.StepKernel),
                                       ("bessel:1.5", kf.BesselKernel)])
def test_parse_spec(spec, kind):
    assert isinstance(kf.parse_kernel_spec(spec), kind)


@pytest.mark.parametrize("spec", ["gauss", "step:1", "bessel:x", "tabulated:", "riemann:3"])
def test_parse_spec_rejects(spec):
    with pytest.raises((kf.KernelValidationError, DomainError)):
        kf.parse_kernel_spec(spec)


def test_kernel_moment_step(work):
    k = kf.StepKernel(2, 3)
    assert close(kf.kernel_moment(k, 0, work), 6, mpmath.mpf(10) ** -55)
    assert close(kf.kernel_moment(k, 2, work), 18, mpmath.mpf(10) ** -55)
