"""Invariant suites shared by the command line and the test-suite."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

import mpmath

from . import omega_kernel as om
from .kernel_family import RIEMANN, BesselKernel, StepKernel, kernel_transform
from .meanvalue import cauchy_riemann_residual, continuation_by_operator, w0_direct
from .numerics import DEFAULT_CONTEXT, PrecisionContext
from .parallel import pmap
from .xi_engine import applicable_routes, xi, xi_deriv_kernel
from .zeta_ref import functional_equation_residual, xi_functional_residual, zeta
from .zero_finder import theorem2_scan

__all__ = ["Check", "SUITES", "run_suite", "route_grid", "strip_points", "bounds_grid_values"]


@dataclass(frozen=True)
class Check:
    name: str
    residual: mpmath.mpf
    tolerance: mpmath.mpf
    passed: bool

    def line(self) -> str:
        verdict = "pass" if self.passed else "FAIL"
        return f"{self.name}\t{mpmath.nstr(self.residual, 6)}\t{mpmath.nstr(self.tolerance, 3)}\t{verdict}"


def _check(name, residual, tol) -> Check:
    return Check(name, residual, tol, bool(residual <= tol))


def identities(ctx: PrecisionContext, workers: int = 1) -> list:
    tol = mpmath.mpf(10) ** -(ctx.digits - 10)
    rep = om.verify_appendix_identities(ctx)
    out = [_check(k, v, tol) for k, v in rep.items()]
    with ctx.workdps():
        grid = [mpmath.mpf(i) / 4 for i in range(-8, 9)]
        r = max(abs(om.omega(u, ctx) - (2 * om.phi_deriv(u, 2, ctx) - om.phi(u, ctx) / 2)) for u in grid)
    out.append(_check("omega_from_phi", r, mpmath.mpf(10) ** -(ctx.digits - 6)))
    return out


def _axis_point(args):
    y, ctx = args
    with ctx.workdps():
        v, err = kernel_transform(RIEMANN, mpmath.mpc(0, y), ctx)
        return abs(v.real), err.abs_err


def bounds_grid_values(ctx: PrecisionContext, y_max=120, step="0.1", workers: int = 1):
    with ctx.workdps():
        step = mpmath.mpf(step)
        n = int(mpmath.nint(mpmath.mpf(y_max) / step))
        ys = [step * j for j in range(n + 1)]
    vals = pmap(_axis_point, [(y, ctx) for y in ys], workers)
    return ys, vals


def bounds(ctx: PrecisionContext, workers: int = 1, y_max=120) -> list:
    ys, vals = bounds_grid_values(ctx, y_max, workers=workers)
    with ctx.workdps():
        m0 = om.omega_moment(0, ctx)
        o0 = om.omega(0, ctx)
        slack = mpmath.mpf(10) ** -10
        r1 = max(v / m0 for v, _ in vals) - 1
        r2 = max(v * y / o0 for y, (v, _) in zip(ys, vals)) - 1
        v1 = sum(1 for v, _ in vals if v > m0 * (1 + slack))
        v2 = sum(1 for y, (v, _) in zip(ys, vals) if v * y > o0 * (1 + slack))
    return [
        Check("abs_xi_below_m0", max(r1, mpmath.mpf(0)), slack, v1 == 0),
        Check("abs_y_xi_below_omega0", max(r2, mpmath.mpf(0)), slack, v2 == 0),
    ]


def route_grid() -> list:
    """40 points with |x| <= 1/2 and |y| <= 30."""
    xs = [mpmath.mpf(v) for v in ("-0.5", "-0.25", "0", "0.3", "0.5")]
    ys = [mpmath.mpf(v) for v in ("-30", "-17.5", "-6", "0", "0.75", "9", "21", "30")]
    return [mpmath.mpc(x, y) for x, y in itertools.product(xs, ys)]


def _route_point(args):
    z, ctx = args
    vals = {}
    for r in applicable_routes(z):
        if r == "deriv_kernel":
            vals["deriv_kernel(0,sh)"] = xi_deriv_kernel(z, 0, True, ctx).value
            if z != 0:
                vals["deriv_kernel(1,ch)"] = xi_deriv_kernel(z, 1, False, ctx).value
        else:
            vals[r] = xi(z, r, ctx).value
    with ctx.workdps():
        spread = max(abs(a - b) for a, b in itertools.combinations(vals.values(), 2))
    return spread


def routes(ctx: PrecisionContext, workers: int = 1) -> list:
    spreads = pmap(_route_point, [(z, ctx) for z in route_grid()], workers, chunksize=1)
    tol = mpmath.mpf(10) ** -(ctx.digits - 10)
    return [_check("cross_route_max", max(spreads), tol)]


def strip_points(seed: int = 20240601, count: int = 20) -> list:
    rng = random.Random(seed)
    return [mpmath.mpc(0.5 + rng.uniform(-2, 2), rng.uniform(-40, 40)) for _ in range(count)]


def functional_eq(ctx: PrecisionContext, workers: int = 1) -> list:
    pts = strip_points()
    r_xi = max(xi_functional_residual(s, ctx) for s in pts)
    r_zeta = max(functional_equation_residual(s, ctx) / abs(zeta(s, ctx).value) for s in pts[:5])
    return [
        _check("xi_symmetry_strip", r_xi, mpmath.mpf(10) ** -(ctx.digits - 12)),
        _check("zeta_functional_equation", r_zeta, mpmath.mpf(10) ** -(ctx.digits - 12)),
    ]


def _continuation_point(args):
    x, y, ctx = args
    f = continuation_by_operator(x, y, 10, 1, ctx=ctx)
    w = w0_direct(mpmath.mpc(x, y), ctx=ctx)
    with ctx.workdps():
        return max(abs(f.u0_xy - w.real), abs(f.v0_xy - w.imag))


def cr_order(ctx: PrecisionContext, x="0.1", y=3, h="1e-3"):
    with ctx.workdps():
        h = mpmath.mpf(h)
        r1 = cauchy_riemann_residual(mpmath.mpf(x), y, h, ctx=ctx)
        r2 = cauchy_riemann_residual(mpmath.mpf(x), y, h / 2, ctx=ctx)
        return mpmath.log(r1 / r2, 2), r1, r2


def continuation(ctx: PrecisionContext, workers: int = 1) -> list:
    pts = [(mpmath.mpf(x), mpmath.mpf(y), ctx) for x in ("-0.4", "-0.2", "0.1", "0.4")
           for y in (2, 5, 8, 11, 14, 17, 20)]
    diff = max(pmap(_continuation_point, pts, workers, chunksize=4))
    order, _, _ = cr_order(ctx)
    return [
        _check("continuation_vs_direct", diff, mpmath.mpf("1e-6")),
        Check("cauchy_riemann_order", order, mpmath.mpf("1.9"), bool(order >= mpmath.mpf("1.9"))),
    ]


def theorem2(ctx: PrecisionContext, workers: int = 1) -> list:
    out = []
    for name, k in (("riemann", RIEMANN), ("step", StepKernel(1, 1)), ("bessel", BesselKernel(1))):
        rep = theorem2_scan(k, ctx=ctx)
        out.append(Check(f"theorem2_min_offaxis_{name}", rep.min_offaxis, mpmath.mpf(0),
                         bool(rep.min_offaxis > 0 and rep.excluded == 0)))
        out.append(Check(f"theorem2_ratio_{name}", rep.ratio, mpmath.mpf(1000), bool(rep.ratio > 1000)))
    return out


SUITES = {
    "identities": identities,
    "bounds": bounds,
    "routes": routes,
    "functional_eq": functional_eq,
    "continuation": continuation,
    "theorem2": theorem2,
}


def run_suite(name: str, ctx: PrecisionContext = DEFAULT_CONTEXT, workers: int = 1) -> list:
    return SUITES[name](ctx, workers=workers)
