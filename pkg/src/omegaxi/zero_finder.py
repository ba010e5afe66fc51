"""Zeros of Xi(iy): scanning, refinement, counting and product reconstruction."""

from __future__ import annotations

import csv
import math
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

import mpmath

from .kernel_family import RIEMANN, Kernel, RiemannKernel, kernel_transform
from .numerics import DEFAULT_CONTEXT, DomainError, PrecisionContext
from .xi_engine import amplification

__all__ = [
    "ZeroRecord",
    "ScanReport",
    "Theorem2Report",
    "signal_scale",
    "amplified_signal",
    "density",
    "density_count",
    "scan_step",
    "refine_zero",
    "scan_zeros",
    "scan_report",
    "count_vs_density",
    "hadamard_partial_product",
    "hadamard_sequence",
    "theorem2_scan",
    "write_zeros_csv",
    "read_zeros_csv",
]

BISECT_WIDTH = mpmath.mpf("1e-3")
MAX_SECANT = 80
MAX_RESCANS = 4


@dataclass(frozen=True)
class ZeroRecord:
    k: int
    y_k: mpmath.mpf
    bracket: tuple
    residual: mpmath.mpf
    sign_change: bool = True
    status: str = "refined"
    branch: int = 0


@dataclass(frozen=True)
class ScanReport:
    Y_max: mpmath.mpf
    zeros: tuple
    count: int
    density_prediction: mpmath.mpf
    theorem2_min_offaxis: mpmath.mpf | None = None


@dataclass(frozen=True)
class Theorem2Report:
    min_offaxis: mpmath.mpf
    argmin: tuple
    max_onaxis_residual: mpmath.mpf
    ratio: mpmath.mpf
    evaluated: int
    excluded: int


# -- signal --------------------------------------------------------------------


def signal_scale(kernel: Kernel, y, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Positive factor that lifts Xi(iy) to order one."""
    if isinstance(kernel, RiemannKernel):
        return amplification(y, ctx)
    return 1 + abs(mpmath.mpf(y))


def amplified_signal(kernel: Kernel, y, ctx: PrecisionContext = DEFAULT_CONTEXT):
    with ctx.workdps():
        y = mpmath.mpf(y)
        val, _ = kernel_transform(kernel, mpmath.mpc(0, y), ctx)
        return val.real * signal_scale(kernel, y, ctx)


def density(y):
    """Zero density log(y / 2 pi) / (2 pi)."""
    return mpmath.log(mpmath.mpf(y) / (2 * mpmath.pi)) / (2 * mpmath.pi)


def density_count(Y):
    """(Y/2pi) log(Y/2pi) - Y/2pi."""
    a = mpmath.mpf(Y) / (2 * mpmath.pi)
    return a * mpmath.log(a) - a


def scan_step(y, step_min=mpmath.mpf("0.05"), step_max=mpmath.mpf("0.5")):
    """0.2 over the local density, clamped."""
    y = mpmath.mpf(y)
    if y <= 2 * mpmath.pi:
        return step_max
    d = density(y)
    if d <= 0:
        return step_max
    return min(max(mpmath.mpf("0.2") / d, step_min), step_max)


def _refine_ctx(ctx: PrecisionContext, y) -> PrecisionContext:
    # Xi(iy) decays like exp(-pi y / 4); add that many digits, rounded up to tens
    extra = int(math.ceil(math.pi * float(abs(y)) / 4 / math.log(10) / 10)) * 10
    return replace(ctx, digits=ctx.digits + extra, tail_tol=None) if extra else ctx


def refine_zero(kernel: Kernel, lo, hi, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Bisect a sign-change bracket down to width 1e-3, then safeguarded secant.

    Returns ``(y, residual, lo, hi, status)``.  Evaluation happens in a context
    whose precision is raised to compensate for the decay of Xi along the
    axis, so the residual is measured well below the local envelope.
    """
    rctx = _refine_ctx(ctx, hi)
    with rctx.workdps():
        lo, hi = mpmath.mpf(lo), mpmath.mpf(hi)
        f = lambda y: amplified_signal(kernel, y, rctx)
        flo, fhi = f(lo), f(hi)
        if flo == 0:
            return lo, mpmath.mpf(0), lo, hi, "exact"
        if fhi == 0:
            return hi, mpmath.mpf(0), lo, hi, "exact"
        if flo * fhi > 0:
            raise DomainError("bracket does not contain a sign change")
        while hi - lo > BISECT_WIDTH:
            mid = (lo + hi) / 2
            fm = f(mid)
            if fm == 0:
                lo = hi = mid
                break
            if (fm < 0) == (flo < 0):
                lo, flo = mid, fm
            else:
                hi, fhi = mid, fm
        tol = mpmath.mpf(10) ** (-ctx.digits) * max(1, abs(hi))
        a, fa, b, fb = lo, flo, hi, fhi
        x0, f0, x1, f1 = a, fa, b, fb
        status = "refined"
        for it in range(MAX_SECANT):
            if f1 == f0:
                break
            x2 = x1 - f1 * (x1 - x0) / (f1 - f0)
            if not (a < x2 < b):
                x2 = (a + b) / 2
            f2 = f(x2)
            if f2 == 0:
                x1, f1 = x2, f2
                break
            if (f2 < 0) == (fa < 0):
                a, fa = x2, f2
            else:
                b, fb = x2, f2
            step = abs(x2 - x1)
            x0, f0, x1, f1 = x1, f1, x2, f2
            if step < tol or b - a < tol:
                break
        else:
            status = "max_iterations"
        y = x1
        residual = abs(f1) / signal_scale(kernel, y, rctx)
        with ctx.workdps():
            return +y, +residual, +lo, +hi, status


def _refine_job(args):
    kernel, lo, hi, ctx = args
    return refine_zero(kernel, lo, hi, ctx)


def _quadratic_dip(y0, y1, y2, g0, g1, g2):
    """Parabola through three same-sign samples: does it cross zero between y0 and y2?"""
    h = y1 - y0
    a = (g2 - 2 * g1 + g0) / (2 * h * h)
    b = (g2 - g0) / (2 * h)
    if a == 0:
        return False
    t = -b / (2 * a)
    if abs(t) > h:
        return False
    vmin = g1 + b * t + a * t * t
    return (vmin < 0) != (g1 < 0) or vmin == 0


def scan_zeros(kernel: Kernel = RIEMANN, Y_max=30, step_init=None, ctx: PrecisionContext = DEFAULT_CONTEXT,
               y_min=0, workers: int = 1, tangential_tol=None) -> list:
    """Zeros of Xi(iy) for y in (y_min, Y_max], sorted by height.

    The Riemann kernel is sampled with step 0.2/density(y) clamped to
    [0.05, 0.5]; other kernels use ``step_init`` (default 0.1).  Every sign
    change of the amplified signal is refined.  A dip in three same-sign
    samples whose parabola crosses zero triggers a local rescan at half step;
    a persistent dip reaching the residual tolerance without a sign change is
    recorded as tangential.
    """
    with ctx.workdps():
        Y_max, y_min = mpmath.mpf(Y_max), mpmath.mpf(y_min)
        if not Y_max > y_min:
            raise DomainError("Y_max must exceed the scan start")
        riemann = isinstance(kernel, RiemannKernel)

        def next_step(y):
            if step_init is not None:
                return mpmath.mpf(step_init)
            return scan_step(y) if riemann else mpmath.mpf("0.1")

        g = lambda y: amplified_signal(kernel, y, ctx)
        ys = [y_min]
        gs = [g(y_min)]
        while ys[-1] < Y_max:
            y = min(ys[-1] + next_step(ys[-1]), Y_max)
            ys.append(y)
            gs.append(g(y))

        brackets = []
        dips = []
        for i in range(1, len(ys)):
            if gs[i] == 0:
                continue
            if gs[i - 1] == 0 and i > 1:
                brackets.append((ys[i - 2], ys[i]))
            elif gs[i - 1] * gs[i] < 0:
                brackets.append((ys[i - 1], ys[i]))
            elif i >= 2 and gs[i - 2] * gs[i - 1] > 0 and _quadratic_dip(ys[i - 2], ys[i - 1], ys[i], gs[i - 2], gs[i - 1], gs[i]):
                dips.append((ys[i - 2], ys[i]))

        tangential = []
        for lo, hi in dips:
            found, tang = _resolve_dip(kernel, lo, hi, ctx, g, tangential_tol)
            brackets.extend(found)
            tangential.extend(tang)
        brackets = sorted(set(brackets))

        jobs = [(kernel, lo, hi, ctx) for lo, hi in brackets]
        if workers > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=workers) as ex:
                results = list(ex.map(_refine_job, jobs))
        else:
            results = [_refine_job(j) for j in jobs]

        records = [(y, res, lo, hi, st, True) for (y, res, lo, hi, st) in results]
        records += [(y, res, lo, hi, "tangential", False) for (y, res, lo, hi) in tangential]
        records.sort(key=lambda r: r[0])
        return [ZeroRecord(k + 1, r[0], (r[2], r[3]), r[1], r[5], r[4]) for k, r in enumerate(records)]


def _resolve_dip(kernel, lo, hi, ctx, g, tangential_tol):
    """Rescan [lo, hi] at successively halved steps; fall back to a minimum search."""
    n = 4
    for _ in range(MAX_RESCANS):
        ys = [lo + (hi - lo) * j / n for j in range(n + 1)]
        gs = [g(y) for y in ys]
        found = [(ys[j], ys[j + 1]) for j in range(n) if gs[j] * gs[j + 1] < 0]
        if found:
            return found, []
        n *= 2
    # no sign change: golden-section search on |Xi| for a touching zero
    f = lambda y: abs(kernel_transform(kernel, mpmath.mpc(0, y), ctx)[0].real)
    a, b = mpmath.mpf(lo), mpmath.mpf(hi)
    gr = (mpmath.sqrt(5) - 1) / 2
    for _ in range(120):
        c, d = b - gr * (b - a), a + gr * (b - a)
        if f(c) < f(d):
            b = d
        else:
            a = c
    y = (a + b) / 2
    res = f(y)
    tol = tangential_tol
    if tol is None:
        tol = mpmath.mpf(10) ** (-(ctx.digits - 15)) / signal_scale(kernel, y, ctx)
    if res <= tol:
        return [], [(y, res, mpmath.mpf(lo), mpmath.mpf(hi))]
    return [], []


def count_vs_density(Y, zeros, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """(zeros found up to Y, density-law count, their difference)."""
    with ctx.workdps():
        Y = mpmath.mpf(Y)
        n = sum(1 for z in zeros if _height(z) <= Y)
        nf = density_count(Y)
        return n, nf, n - nf


def scan_report(kernel: Kernel, Y_max, ctx: PrecisionContext = DEFAULT_CONTEXT, **kw) -> ScanReport:
    zs = scan_zeros(kernel, Y_max, ctx=ctx, **kw)
    with ctx.workdps():
        return ScanReport(mpmath.mpf(Y_max), tuple(zs), len(zs), density_count(Y_max))


def _height(z):
    return z.y_k if isinstance(z, ZeroRecord) else mpmath.mpf(z)


def hadamard_partial_product(zeros, z, omega0=None, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Omega_0 * prod_{n <= K} (1 + z^2 / y_n^2) over the supplied zeros."""
    if not zeros:
        raise DomainError("need at least one zero")
    with ctx.workdps():
        z = mpmath.mpc(z)
        if omega0 is None:
            omega0 = kernel_transform(RIEMANN, 0, ctx)[0].real
        p = mpmath.mpc(omega0)
        z2 = z * z
        for y in zeros:
            y = _height(y)
            p *= 1 + z2 / (y * y)
        return p


def hadamard_sequence(zeros, z, omega0=None, ctx: PrecisionContext = DEFAULT_CONTEXT) -> list:
    """Partial products for K = 1, ..., len(zeros)."""
    with ctx.workdps():
        z = mpmath.mpc(z)
        if omega0 is None:
            omega0 = kernel_transform(RIEMANN, 0, ctx)[0].real
        out = []
        p = mpmath.mpc(omega0)
        for y in zeros:
            y = _height(y)
            p *= 1 + z * z / (y * y)
            out.append(p)
        return out


def theorem2_scan(kernel: Kernel = RIEMANN, x_range=("0.05", "0.5"), Y_max=30,
                  grid=(10, 120), zeros=None, ctx: PrecisionContext = DEFAULT_CONTEXT) -> Theorem2Report:
    """Smallest |Xi|^2 on an off-axis grid against the largest on-axis zero residual.

    The grid has nx points spanning x_range (both ends included) and ny points
    on [0, Y_max].  Evaluations whose quadrature did not converge are left out
    and counted.
    """
    with ctx.workdps():
        x0, x1 = (mpmath.mpf(v) for v in x_range)
        if not x0 > 0:
            raise DomainError("off-axis grid must start at x > 0")
        nx, ny = grid
        Y_max = mpmath.mpf(Y_max)
        xs = [x0 + (x1 - x0) * i / max(nx - 1, 1) for i in range(nx)]
        ys = [Y_max * j / max(ny - 1, 1) for j in range(ny)]
        best = None
        excluded = 0
        for x in xs:
            for y in ys:
                val, err = kernel_transform(kernel, mpmath.mpc(x, y), ctx)
                if not err.converged:
                    excluded += 1
                    continue
                m = abs(val) ** 2
                if best is None or m < best[0]:
                    best = (m, (x, y))
        if zeros is None:
            zeros = scan_zeros(kernel, Y_max, ctx=ctx)
        max_res = max((z.residual for z in zeros), default=mpmath.mpf(0))
        ratio = best[0] / max_res ** 2 if max_res > 0 else mpmath.inf
        return Theorem2Report(best[0], best[1], max_res, ratio, nx * ny - excluded, excluded)


# -- CSV ------------------------------------------------------------------------

CSV_COLUMNS = ("k", "y_k", "residual", "bracket_lo", "bracket_hi")


def _atomic_write(path: Path, write):
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            write(fh)
        umask = os.umask(0)
        os.umask(umask)
        os.chmod(tmp, 0o666 & ~umask)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_zeros_csv(path, zeros, digits: int = 50):
    def write(fh):
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for z in zeros:
            w.writerow([z.k, mpmath.nstr(z.y_k, digits), mpmath.nstr(z.residual, digits),
                        mpmath.nstr(z.bracket[0], digits), mpmath.nstr(z.bracket[1], digits)])

    _atomic_write(Path(path), write)


def read_zeros_csv(path, dps: int = 65) -> list:
    out = []
    with mpmath.workdps(dps), open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            out.append(ZeroRecord(int(row["k"]), mpmath.mpf(row["y_k"]),
                                  (mpmath.mpf(row["bracket_lo"]), mpmath.mpf(row["bracket_hi"])),
                                  mpmath.mpf(row["residual"])))
    return out
