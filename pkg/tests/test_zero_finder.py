import mpmath
import pytest

from omegaxi import zero_finder as zf
from omegaxi.kernel_family import RIEMANN, BesselKernel, StepKernel
from omegaxi.numerics import DomainError

from conftest import close

# frozen from mpmath.zetazero at 45 digits
with mpmath.workdps(60):
    ZETA_ZEROS = {
        1: mpmath.mpf("14.1347251417346937904572519835624702707842571"),
        2: mpmath.mpf("21.0220396387715549926284795938969027773343405"),
        3: mpmath.mpf("25.0108575801456887632137909925628218186595497"),
        29: mpmath.mpf("98.8311942181936922333244201386223278206580391"),
    }
# sign changes of mpmath.siegelz on a 0.01 grid over (0, 100]
SIGN_CHANGE_COUNT_100 = 29


def test_riemann_scan_matches_oracles(riemann_zeros_100):
    zs, _ = riemann_zeros_100
    assert len(zs) == SIGN_CHANGE_COUNT_100
    for k, ref in ZETA_ZEROS.items():
        assert abs(zs[k - 1].y_k - ref) < mpmath.mpf(10) ** -40
    assert [z.k for z in zs] == list(range(1, 30))
    assert all(z.residual < mpmath.mpf(10) ** -30 for z in zs)
    assert all(z.bracket[0] <= z.y_k <= z.bracket[1] for z in zs)
    assert all(a.y_k < b.y_k for a, b in zip(zs, zs[1:]))


def test_count_vs_density(riemann_zeros_100, work):
    zs, _ = riemann_zeros_100
    n, nf, delta = zf.count_vs_density(100, zs, work)
    assert n == 29
    assert close(nf, "28.127", "1e-3")
    assert abs(delta) <= 2


def test_density_formula(work):
    y = mpmath.mpf(100)
    # the count function differentiates to the density
    assert close(mpmath.diff(zf.density_count, y), zf.density(y), "1e-8")


def test_step_zeros(work):
    zs = zf.scan_zeros(StepKernel(1, 1), 10, ctx=work)
    assert len(zs) == 3
    for n, z in enumerate(zs, 1):
        assert abs(z.y_k - n * mpmath.pi) < mpmath.mpf(10) ** -35


def test_step_zeros_scale_with_support(work):
    zs = zf.scan_zeros(StepKernel(2, mpmath.mpf("0.5")), 13, ctx=work)
    assert [mpmath.nint(z.y_k / (2 * mpmath.pi)) for z in zs] == [1, 2]


def test_bessel_half_zeros(work):
    zs = zf.scan_zeros(BesselKernel(mpmath.mpf(1) / 2), 10, ctx=work)
    assert len(zs) == 3
    for n, z in enumerate(zs, 1):
        assert abs(z.y_k - n * mpmath.pi) < mpmath.mpf(10) ** -30


def test_refine_zero_rejects_bracket_without_sign_change(ctx):
    with pytest.raises(DomainError):
        zf.refine_zero(RIEMANN, mpmath.mpf(10), mpmath.mpf(11), ctx)


def test_scan_is_deterministic(work):
    a = zf.scan_zeros(RIEMANN, 22, ctx=work)
    b = zf.scan_zeros(RIEMANN, 22, ctx=work)
    assert [z.y_k for z in a] == [z.y_k for z in b]


def test_scan_with_workers_matches_serial(work):
    a = zf.scan_zeros(RIEMANN, 26, ctx=work)
    b = zf.scan_zeros(RIEMANN, 26, ctx=work, workers=2)
    assert [z.y_k for z in a] == [z.y_k for z in b]


def test_hadamard_at_origin(riemann_zeros_100, work):
    zs, _ = riemann_zeros_100
    for k in (1, 10, 29):
        assert close(zf.hadamard_partial_product(zs[:k], 0, ctx=work), "0.497121", "1e-6")


def test_hadamard_real_argument_bounded(riemann_zeros_100, work):
    zs, _ = riemann_zeros_100
    seq = zf.hadamard_sequence(zs, mpmath.mpf("0.3"), ctx=work)
    from omegaxi.xi_engine import xi_integral
    bound = xi_integral(mpmath.mpf("0.3"), work).value.real
    assert all(a.real <= b.real for a, b in zip(seq, seq[1:]))
    assert all(p.real < bound for p in seq)


def test_hadamard_needs_zeros(ctx):
    with pytest.raises(DomainError):
        zf.hadamard_partial_product([], 0, ctx=ctx)


def test_step_offaxis_minimum_matches_closed_form(work):
    k = StepKernel(1, 1)
    rep = zf.theorem2_scan(k, grid=(4, 30), Y_max=10, ctx=work)
    xs = [mpmath.mpf("0.05") + (mpmath.mpf("0.45")) * i / 3 for i in range(4)]
    ys = [mpmath.mpf(10) * j / 29 for j in range(30)]
    ref = min((mpmath.cosh(2 * x) - mpmath.cos(2 * y)) / (2 * (x * x + y * y)) for x in xs for y in ys)
    assert rep.min_offaxis > 0
    assert close(rep.min_offaxis, ref, mpmath.mpf(10) ** -40)


def test_csv_round_trip(tmp_path, work):
    zs = zf.scan_zeros(StepKernel(1, 1), 7, ctx=work)
    p = tmp_path / "z.csv"
    zf.write_zeros_csv(p, zs, 50)
    lines = p.read_text().splitlines()
    assert lines[0] == ",".join(zf.CSV_COLUMNS)
    back = zf.read_zeros_csv(p)
    assert [z.k for z in back] == [1, 2]
    assert all(abs(a.y_k - b.y_k) < mpmath.mpf(10) ** -48 for a, b in zip(zs, back))
