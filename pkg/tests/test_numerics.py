import mpmath
import pytest

from omegaxi import numerics as nx
from omegaxi import omega_kernel as ok
from omegaxi.numerics import DomainError, PrecisionContext


def test_context_defaults():
    c = PrecisionContext()
    assert c.digits == 50 and c.panel_order == 24
    with mpmath.workdps(80):
        assert abs(c.tail_tol / mpmath.mpf(10) ** -60 - 1) < mpmath.mpf(10) ** -60
    assert c.work_dps > c.digits


@pytest.mark.parametrize("kw", [{"digits": 20}, {"panel_order": 4}, {"tail_tol": mpmath.mpf(-1)}])
def test_context_rejects_bad_values(kw):
    with pytest.raises(DomainError):
        PrecisionContext(**kw)


def test_log_gamma_five_quarters_against_product_oracle(work):
    # Gauss product n! n^z / (z (z+1) ... (z+n)), accelerated with Richardson extrapolation
    z = mpmath.mpf(5) / 4

    def partial(n):
        n = int(n)
        p = mpmath.mpf(1)
        for k in range(1, n + 1):
            p *= mpmath.mpf(k) / (z + k)
        return p * mpmath.mpf(n) ** z / z

    # error expands in powers of 1/n; eliminate them by repeated halving
    table = [partial(100 * 2 ** j) for j in range(8)]
    for k in range(1, len(table)):
        table = [(2 ** k * table[i + 1] - table[i]) / (2 ** k - 1) for i in range(len(table) - 1)]
    oracle = table[0]
    got = mpmath.exp(nx.log_gamma(z, work).real)
    assert abs(got - oracle) < mpmath.mpf("1e-9")
    assert abs(got - mpmath.mpf("0.9064024771")) < mpmath.mpf("1e-10")


def test_log_gamma_pole_raises(ctx):
    with pytest.raises(DomainError):
        nx.log_gamma(-3, ctx)


def test_log_gamma_half(work):
    assert abs(nx.log_gamma(mpmath.mpf(1) / 2, work) - mpmath.log(mpmath.sqrt(mpmath.pi))) < work.eps


def test_incomplete_gamma_against_quadrature(work):
    a, x = mpmath.mpf(9) / 4, mpmath.pi
    oracle = mpmath.quad(lambda t: t ** (a - 1) * mpmath.exp(-t), [x, x + 10, x + 40, mpmath.inf])
    got = nx.incomplete_gamma_upper(a, x, work)
    assert abs(got - oracle) < mpmath.mpf(10) ** -45
    assert abs(got - mpmath.mpf("0.257449467036099614515929672472")) < mpmath.mpf(10) ** -28


@pytest.mark.parametrize("a,x", [("0.3", "0.1"), ("2.5", "7"), ("5.25", "2"), ("1.5+2j", "3")])
def test_incomplete_gamma_pieces_sum_to_gamma(work, a, x):
    a, x = mpmath.mpmathify(a), mpmath.mpf(x)
    total = nx.incomplete_gamma_upper(a, x, work) + nx.incomplete_gamma_lower(a, x, work)
    assert abs(total - mpmath.gamma(a)) < mpmath.mpf(10) ** -45 * abs(mpmath.gamma(a))


def test_incomplete_gamma_rejects_nonpositive_x(ctx):
    with pytest.raises(DomainError):
        nx.incomplete_gamma_upper(1, 0, ctx)


def test_gauss_legendre_exact_for_polynomials(work):
    nodes, weights = nx.gauss_legendre(24, work.work_dps)
    for k in range(0, 47, 2):
        q = sum(w * x ** k for x, w in zip(nodes, weights))
        assert abs(q - mpmath.mpf(2) / (k + 1)) < mpmath.mpf(10) ** -60


def test_oscillatory_integral_matches_refined_panels(work):
    f = lambda u: ok.omega(u, work) * mpmath.cos(30 * u)
    coarse, err = nx.integrate_panels(f, 0, 3, 30, work)
    fine, _ = nx.integrate_panels(f, 0, 3, 300, work)
    assert err.converged
    assert abs(coarse - fine) < mpmath.mpf(10) ** -(work.digits - 8)


def test_semi_infinite_integral_needs_decay(ctx):
    with pytest.raises(DomainError):
        nx.integrate_panels(lambda u: mpmath.exp(-u), 0, mpmath.inf, 0, ctx)


def test_semi_infinite_integral(work):
    val, err = nx.integrate_panels(lambda u: mpmath.exp(-u * u), 0, mpmath.inf, 0, work,
                                   decay=lambda u: mpmath.exp(-u * u))
    assert abs(val - mpmath.sqrt(mpmath.pi) / 2) < mpmath.mpf(10) ** -55
    assert err.converged
