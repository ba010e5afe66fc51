"""Randomised invariants."""

import mpmath
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from omegaxi import numerics as nx
from omegaxi import omega_kernel as ok
from omegaxi.kernel_family import RIEMANN, StepKernel, TabulatedKernel, kernel_transform
from omegaxi.meanvalue import u0_on_imaginary_axis
from omegaxi.numerics import DEFAULT_CONTEXT as CTX
from omegaxi.xi_engine import xi_integral
from omegaxi.zeta_ref import xi_functional_residual

SLOW = settings(max_examples=15, deadline=None, suppress_health_check=[HealthCheck.too_slow])
FAST = settings(max_examples=40, deadline=None)

small = st.floats(min_value=-3, max_value=3, allow_nan=False)
height = st.floats(min_value=-40, max_value=40, allow_nan=False)
positive_u = st.floats(min_value=0, max_value=2.5, allow_nan=False)


def tol(k):
    return mpmath.mpf(10) ** -k


@FAST
@given(positive_u)
def test_omega_even(u):
    with CTX.workdps():
        assert abs(ok.omega(u, CTX) - ok.omega(-u, CTX)) <= tol(55) * max(1, abs(ok.omega(u, CTX)))


@FAST
@given(positive_u)
def test_omega_nonnegative(u):
    with CTX.workdps():
        assert ok.omega(u, CTX) >= 0


@FAST
@given(positive_u, st.floats(min_value=1e-3, max_value=0.5))
def test_omega_nonincreasing(u, du):
    with CTX.workdps():
        assert ok.omega(u + du, CTX) <= ok.omega(u, CTX)


@FAST
@given(st.floats(min_value=0.05, max_value=20))
def test_psi_inversion(q):
    with CTX.workdps():
        q = mpmath.mpf(q)
        assert abs(ok.psi(q, CTX) - ok.psi(1 / q, CTX)) <= tol(55) * ok.psi(q, CTX)


@FAST
@given(st.floats(min_value=0.1, max_value=30), st.floats(min_value=-20, max_value=20))
def test_log_gamma_recurrence(x, y):
    with CTX.workdps():
        z = mpmath.mpc(x, y)
        lhs = mpmath.exp(nx.log_gamma(z + 1, CTX) - nx.log_gamma(z, CTX))
        assert abs(lhs - z) <= tol(50) * abs(z)


@FAST
@given(st.floats(min_value=0.1, max_value=6), st.floats(min_value=0.05, max_value=25))
def test_incomplete_gamma_complement(a, x):
    with CTX.workdps():
        a, x = mpmath.mpf(a), mpmath.mpf(x)
        total = nx.incomplete_gamma_upper(a, x, CTX) + nx.incomplete_gamma_lower(a, x, CTX)
        assert abs(total - mpmath.gamma(a)) <= tol(50) * mpmath.gamma(a)


@SLOW
@given(st.floats(min_value=-0.5, max_value=0.5), height)
def test_xi_even_and_real_symmetric(x, y):
    with CTX.workdps():
        z = mpmath.mpc(x, y)
        a = xi_integral(z, CTX).value
        assert abs(a - xi_integral(-z, CTX).value) <= tol(55)
        assert abs(mpmath.conj(a) - xi_integral(mpmath.conj(z), CTX).value) <= tol(55)


@SLOW
@given(height)
def test_xi_real_on_imaginary_axis(y):
    with CTX.workdps():
        assert xi_integral(mpmath.mpc(0, y), CTX).value.imag == 0


@SLOW
@given(st.floats(min_value=0, max_value=120))
def test_axis_bounds(y):
    with CTX.workdps():
        v = abs(kernel_transform(RIEMANN, mpmath.mpc(0, y), CTX)[0])
        assert v <= ok.omega_moment(0, CTX) * (1 + tol(10))
        assert v * y <= ok.omega(0, CTX) * (1 + tol(10))


@SLOW
@given(st.floats(min_value=-2, max_value=3), height)
def test_xi_functional_equation(sigma, t):
    with CTX.workdps():
        assert xi_functional_residual(mpmath.mpc(sigma, t), CTX) <= tol(38)


@SLOW
@given(st.floats(min_value=0.01, max_value=30))
def test_u0_even_on_axis(y):
    a = u0_on_imaginary_axis(y, 0, ctx=CTX).u0
    b = u0_on_imaginary_axis(-y, 0, ctx=CTX).u0
    assert a == b


@FAST
@given(st.lists(st.floats(min_value=0.01, max_value=1), min_size=2, max_size=6, unique=True))
def test_tabulated_kernels_accept_monotone_tables(vals):
    vals = sorted(vals, reverse=True)
    knots = [i / 2 for i in range(len(vals))]
    k = TabulatedKernel(knots, vals)
    with CTX.workdps():
        # the transform at 0 is the trapezoid area of the table
        area = sum((mpmath.mpf(vals[i]) + mpmath.mpf(vals[i + 1])) / 4 for i in range(len(vals) - 1))
        assert abs(kernel_transform(k, 0, CTX)[0] - area) <= tol(50)


@SLOW
@given(st.floats(min_value=0.1, max_value=3), st.floats(min_value=0.1, max_value=3), small, height)
def test_step_transform_modulus(h, u0, x, y):
    k = StepKernel(h, u0)
    with CTX.workdps():
        z = mpmath.mpc(x, y / 4)
        v = kernel_transform(k, z, CTX)[0]
        closed = mpmath.mpf(h) * (mpmath.sinh(mpmath.mpf(u0) * z) / z if z != 0 else mpmath.mpf(u0))
        assert abs(v - closed) <= tol(45) * max(1, abs(closed))


@SLOW
@given(st.floats(min_value=-30, max_value=30))
def test_evaluation_is_deterministic(y):
    with CTX.workdps():
        z = mpmath.mpc("0.1", y)
        assert xi_integral(z, CTX).value == xi_integral(z, CTX).value
