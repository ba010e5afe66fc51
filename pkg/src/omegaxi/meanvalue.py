"""Second-mean-value parameter w0(z) = u0 + i v0 with Xi(z) = Omega(0) sh(w0 z) / z.

On the imaginary axis w0 is real and follows from an arcsine, which is
multivalued; ``u0_on_imaginary_axis`` takes the branch index explicitly and
``track_branches`` picks branches that keep u0*y continuous on a grid.
Off the axis, ``continuation_by_operator`` extends u0(0, y) with the series
cos(x d/dy) u0 and -sin(x d/dy) u0, using derivatives of a Chebyshev
interpolant of u0(0, .) around y.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

import mpmath
from mpmath import mp

from .kernel_family import RIEMANN, Kernel, kernel_transform
from .numerics import DEFAULT_CONTEXT, DomainError, ErrorEstimate, PrecisionContext

__all__ = [
    "MeanValueSample",
    "BranchTrack",
    "ContinuationField",
    "BoundViolation",
    "w0_direct",
    "w0_asymptotic",
    "u0_on_imaginary_axis",
    "u0_on_real_axis",
    "u0_taylor_coefficients",
    "track_branches",
    "chebyshev_derivatives",
    "continuation_by_operator",
    "cauchy_riemann_residual",
    "zero_condition_residuals",
]

ASINH_TAYLOR_RADIUS = mpmath.mpf("1e-3")


class BoundViolation(ArithmeticError):
    """|y Xi(iy)| exceeded Omega(0) beyond the numerical allowance."""


@dataclass(frozen=True)
class MeanValueSample:
    y: mpmath.mpf
    s: mpmath.mpf
    u0: mpmath.mpf
    branch: int
    continuous_flag: bool = True
    err: ErrorEstimate = field(default_factory=lambda: ErrorEstimate(mpmath.mpf(0), True))


@dataclass(frozen=True)
class BranchTrack:
    grid: tuple
    branches: tuple
    samples: tuple
    max_jump: mpmath.mpf
    continuous: bool


@dataclass(frozen=True)
class ContinuationField:
    x: mpmath.mpf
    y: mpmath.mpf
    u0_xy: mpmath.mpf
    v0_xy: mpmath.mpf
    order: int
    err: ErrorEstimate


def _omega_at_0(kernel: Kernel, ctx):
    return kernel.omega_at_0(ctx)


def _asinh_over(a):
    """asinh(a) / a, by its Taylor series for small |a|."""
    if abs(a) >= ASINH_TAYLOR_RADIUS:
        return mpmath.asinh(a) / a
    a2 = a * a
    total = mpmath.mpc(1)
    c = mpmath.mpf(1)
    p = mpmath.mpc(1)
    k = 0
    tol = mpmath.mpf(10) ** (-mp.dps)
    while True:
        k += 1
        c *= -mpmath.mpf(2 * k - 1) / (2 * k)
        p *= a2
        term = c * p / (2 * k + 1)
        total += term
        if abs(term) < tol:
            return total


def w0_direct(z, kernel: Kernel = RIEMANN, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpmath.mpc:
    """w0(z) = asinh(z Xi(z) / Omega(0)) / z on the principal branch; Omega_0/Omega(0) at z = 0."""
    with ctx.workdps():
        z = mpmath.mpc(z)
        om0 = _omega_at_0(kernel, ctx)
        xi_val, _ = kernel_transform(kernel, z, ctx)
        a = z * xi_val / om0
        return xi_val / om0 * _asinh_over(a)


def w0_asymptotic(z, kernel: Kernel = RIEMANN, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpmath.mpc:
    """Two-term large-argument form (log(2a) + 1/(4a^2)) / z, diagnostic only."""
    with ctx.workdps():
        z = mpmath.mpc(z)
        if z == 0:
            raise DomainError("asymptotic form needs z != 0")
        xi_val, _ = kernel_transform(kernel, z, ctx)
        a = z * xi_val / _omega_at_0(kernel, ctx)
        return (mpmath.log(2 * a) + 1 / (4 * a * a)) / z


def _arcsin(s):
    # near |s| = 1 use the complement form, which keeps full relative accuracy
    if abs(s) <= mpmath.mpf("0.9"):
        return mpmath.asin(s)
    comp = 2 * mpmath.asin(mpmath.sqrt((1 - abs(s)) / 2))
    return mpmath.sign(s) * (mpmath.pi / 2 - comp)


def _axis_ratio(y, kernel, ctx):
    xi_val, err = kernel_transform(kernel, mpmath.mpc(0, y), ctx)
    om0 = _omega_at_0(kernel, ctx)
    return xi_val.real * y / om0, err.abs_err * abs(y) / om0, err


def u0_on_imaginary_axis(y, branch: int = 0, kernel: Kernel = RIEMANN,
                         ctx: PrecisionContext = DEFAULT_CONTEXT, tol=None) -> MeanValueSample:
    """u0(0, y) on the requested arcsine branch: u0 y = n pi + (-1)^n asin(s), s = y Xi(iy)/Omega(0)."""
    with ctx.workdps():
        y = abs(mpmath.mpf(y))
        if y == 0:
            xi0, err = kernel_transform(kernel, 0, ctx)
            if branch != 0:
                return MeanValueSample(y, mpmath.mpf(0), mpmath.inf, branch, False, err)
            return MeanValueSample(y, mpmath.mpf(0), xi0.real / _omega_at_0(kernel, ctx), 0, True, err)
        s, s_err, err = _axis_ratio(y, kernel, ctx)
        allowance = (mpmath.mpf(10) ** -10 if tol is None else tol) + s_err
        if abs(s) > 1 + allowance:
            raise BoundViolation(f"|y Xi(iy)/Omega(0)| = {mpmath.nstr(abs(s), 15)} > 1 at y = {mpmath.nstr(y, 15)}")
        s = max(min(s, mpmath.mpf(1)), mpmath.mpf(-1))
        sign = -1 if branch % 2 else 1
        phase = branch * mpmath.pi + sign * _arcsin(s)
        return MeanValueSample(y, s, phase / y, branch, True, ErrorEstimate(s_err / y, err.converged))


def u0_on_real_axis(x, kernel: Kernel = RIEMANN, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpmath.mpf:
    """asinh(x Xi(x)/Omega(0)) / x, with the limit Omega_0/Omega(0) at x = 0."""
    with ctx.workdps():
        return w0_direct(abs(mpmath.mpf(x)), kernel, ctx).real


def u0_taylor_coefficients(kernel: Kernel = RIEMANN, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """(u0(0,0), second y-derivative of u0(0,y) at 0) from the kernel moments.

    Expanding asin(y Xi(iy)/Omega(0))/y with Xi(iy) = m0 - m2 y^2/2 + ...
    gives u0 = m0/Omega(0) and u0'' = -m2/Omega(0) + (m0/Omega(0))^3/3.
    """
    from .kernel_family import kernel_moment

    with ctx.workdps():
        om0 = _omega_at_0(kernel, ctx)
        m0 = kernel_moment(kernel, 0, ctx)
        m2 = kernel_moment(kernel, 2, ctx)
        r = m0 / om0
        return r, -m2 / om0 + r ** 3 / 3


def track_branches(grid, kernel: Kernel = RIEMANN, ctx: PrecisionContext = DEFAULT_CONTEXT,
                   start_branch: int = 0) -> BranchTrack:
    """Walk the grid choosing, at each point, the branch closest in u0*y to the previous one."""
    with ctx.workdps():
        ys = [mpmath.mpf(y) for y in grid]
        samples = []
        branches = []
        prev_phase = None
        n = start_branch
        max_jump = mpmath.mpf(0)
        for y in ys:
            base = u0_on_imaginary_axis(y, 0, kernel, ctx)
            if y == 0:
                samples.append(base)
                branches.append(0)
                prev_phase = mpmath.mpf(0)
                continue
            a = base.u0 * y  # principal arcsine
            best = None
            for cand in (n - 1, n, n + 1):
                phase = cand * mpmath.pi + (-1 if cand % 2 else 1) * a
                d = abs(phase - prev_phase) if prev_phase is not None else abs(cand - n)
                if best is None or d < best[0]:
                    best = (d, cand, phase)
            d, n, phase = best
            if prev_phase is not None:
                max_jump = max(max_jump, d)
            ok = prev_phase is None or d < mpmath.pi / 2
            samples.append(MeanValueSample(y, base.s, phase / y, n, ok, base.err))
            branches.append(n)
            prev_phase = phase
        cont = all(s.continuous_flag for s in samples)
        return BranchTrack(tuple(ys), tuple(branches), tuple(samples), max_jump, cont)


# -- operator continuation -----------------------------------------------------


def _cheb_coeffs(values):
    n = len(values)
    out = []
    for k in range(n):
        s = mpmath.fsum(values[j] * mpmath.cos(mpmath.pi * k * (j + mpmath.mpf(1) / 2) / n) for j in range(n))
        out.append(2 * s / n)
    out[0] /= 2
    return out


def _cheb_diff(c):
    # derivative coefficients of sum c_k T_k
    n = len(c)
    if n == 1:
        return [mpmath.mpf(0)]
    d = [mpmath.mpf(0)] * (n + 1)
    for k in range(n - 1, 0, -1):
        d[k - 1] = d[k + 1] + 2 * k * c[k]
    d[0] /= 2
    return d[: n - 1]


def _cheb_eval(c, t):
    b1 = b2 = mpmath.mpf(0)
    for ck in reversed(c[1:]):
        b1, b2 = 2 * t * b1 - b2 + ck, b1
    return t * b1 - b2 + c[0]


@functools.lru_cache(maxsize=64)
def _interpolant(kernel: Kernel, y, window, degree: int, branch: int, ctx: PrecisionContext):
    with ctx.workdps():
        n = degree + 1
        ts = [mpmath.cos(mpmath.pi * (j + mpmath.mpf(1) / 2) / n) for j in range(n)]
        vals = [u0_on_imaginary_axis(y + window * t, branch, kernel, ctx).u0 for t in ts]
        return tuple(_cheb_coeffs(vals))


def chebyshev_derivatives(y, max_order: int, window=1, kernel: Kernel = RIEMANN, branch: int = 0,
                          ctx: PrecisionContext = DEFAULT_CONTEXT, degree: int | None = None, at=None):
    """Derivatives d^k u0(0, .)/dy^k, k = 0..max_order, from a Chebyshev fit on [y - window, y + window].

    ``at`` evaluates the same interpolant at another point of the window.
    """
    with ctx.workdps():
        y, window = mpmath.mpf(y), mpmath.mpf(window)
        degree = 2 * max_order + 8 if degree is None else degree
        c = list(_interpolant(kernel, y, window, degree, branch, ctx))
        t = mpmath.mpf(0) if at is None else (mpmath.mpf(at) - y) / window
        out = []
        for k in range(max_order + 1):
            out.append(_cheb_eval(c, t) / window ** k)
            c = _cheb_diff(c)
        return out


def _series(x, derivs, order):
    u = mpmath.mpf(0)
    v = mpmath.mpf(0)
    last_u = last_v = mpmath.mpf(0)
    for m in range(order + 1):
        sgn = -1 if m % 2 else 1
        tu = sgn * x ** (2 * m) / mpmath.factorial(2 * m) * derivs[2 * m]
        tv = -sgn * x ** (2 * m + 1) / mpmath.factorial(2 * m + 1) * derivs[2 * m + 1]
        u += tu
        v += tv
        last_u, last_v = tu, tv
    return u, v, abs(last_u) + abs(last_v)


def continuation_by_operator(x, y, order: int = 10, window=1, kernel: Kernel = RIEMANN, branch: int = 0,
                             ctx: PrecisionContext = DEFAULT_CONTEXT, tol=None) -> ContinuationField:
    """u0(x, y) and v0(x, y) from the even and odd parts of the shift series in x d/dy.

    The error estimate is the magnitude of the last included terms; it is
    flagged when above ``tol`` (default 1e-6).
    """
    with ctx.workdps():
        x, y = mpmath.mpf(x), mpmath.mpf(y)
        if x == 0:
            s = u0_on_imaginary_axis(y, branch, kernel, ctx)
            return ContinuationField(x, y, s.u0, mpmath.mpf(0), order, ErrorEstimate(mpmath.mpf(0), True))
        derivs = chebyshev_derivatives(y, 2 * order + 1, window, kernel, branch, ctx, degree=2 * order + 8)
        u, v, last = _series(x, derivs, order)
        tol = mpmath.mpf("1e-6") if tol is None else tol
        return ContinuationField(x, y, u, v, order, ErrorEstimate(last, bool(last <= tol)))


def _field_at(x, eta, y, order, window, kernel, branch, ctx):
    derivs = chebyshev_derivatives(y, 2 * order + 1, window, kernel, branch, ctx, degree=2 * order + 8, at=eta)
    u, v, _ = _series(x, derivs, order)
    return u, v


def cauchy_riemann_residual(x, y, h, order: int = 10, window=1, kernel: Kernel = RIEMANN, branch: int = 0,
                            ctx: PrecisionContext = DEFAULT_CONTEXT):
    """max(|u_x - v_y|, |u_y + v_x|) by central differences of step h.

    All shifted evaluations use one interpolant centred at y, so the only
    h-dependence is the finite-difference truncation.
    """
    with ctx.workdps():
        x, y, h = mpmath.mpf(x), mpmath.mpf(y), mpmath.mpf(h)
        f = lambda a, b: _field_at(a, b, y, order, window, kernel, branch, ctx)
        up, vp = f(x + h, y)
        um, vm = f(x - h, y)
        uq, vq = f(x, y + h)
        un, vn = f(x, y - h)
        ux, vx = (up - um) / (2 * h), (vp - vm) / (2 * h)
        uy, vy = (uq - un) / (2 * h), (vq - vn) / (2 * h)
        return max(abs(ux - vy), abs(uy + vx))


def zero_condition_residuals(x, y, branch: int = 0, kernel: Kernel = RIEMANN,
                             ctx: PrecisionContext = DEFAULT_CONTEXT, order: int = 10, window=1):
    """(u0 x - v0 y, u0 y + v0 x - n pi, Cauchy-Riemann residual) at (x, y)."""
    with ctx.workdps():
        x, y = mpmath.mpf(x), mpmath.mpf(y)
        if x == 0 and y == 0:
            raise DomainError("zero conditions are undefined at the origin")
        fld = continuation_by_operator(x, y, order, window, kernel, branch, ctx)
        re_cond = fld.u0_xy * x - fld.v0_xy * y
        im_cond = fld.u0_xy * y + fld.v0_xy * x - branch * mpmath.pi
        h = mpmath.mpf("1e-4") * max(1, abs(y))
        cr = cauchy_riemann_residual(x, y, h, order, window, kernel, branch, ctx)
        return re_cond, im_cond, cr
