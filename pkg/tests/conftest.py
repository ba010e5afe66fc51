import time

import mpmath
import pytest

from omegaxi import RIEMANN, PrecisionContext, scan_zeros


@pytest.fixture(scope="session")
def ctx():
    return PrecisionContext(digits=50)


@pytest.fixture
def work(ctx):
    """Run the test body at working precision so literals are not rounded to 15 digits."""
    with ctx.workdps():
        yield ctx


@pytest.fixture(scope="session")
def riemann_zeros_100(ctx):
    """Zeros below Y=100 together with the wall time of the scan."""
    t0 = time.perf_counter()
    zs = scan_zeros(RIEMANN, 100, ctx=ctx)
    return zs, time.perf_counter() - t0


def close(a, b, tol):
    return abs(mpmath.mpmathify(a) - mpmath.mpmathify(b)) <= mpmath.mpf(tol)
