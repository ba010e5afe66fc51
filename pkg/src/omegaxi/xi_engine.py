"""Xi(z) = xi(1/2 + z) by several independent routes.

``xi_integral`` is the production route (cosh transform of the Riemann
kernel); the others exist to cross-check it:

* ``xi_deriv_kernel``: the same transform after moving derivatives onto the
  kernel by partial integration,
* ``xi_moment_series``: the even power series whose coefficients are the
  kernel moments,
* ``xi_incomplete_gamma``: term-by-term integration of the theta series,
* ``xi_via_zeta``: the zeta-function definition.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import NamedTuple

import mpmath

from .kernel_family import RIEMANN, kernel_rule, kernel_transform
from .numerics import (
    DEFAULT_CONTEXT,
    DomainError,
    ErrorEstimate,
    PrecisionContext,
    incomplete_gamma_upper,
    log_gamma,
)

__all__ = [
    "ROUTES",
    "XiValue",
    "XiParts",
    "xi",
    "xi_integral",
    "xi_deriv_kernel",
    "xi_moment_series",
    "xi_incomplete_gamma",
    "xi_via_zeta",
    "xi_parts",
    "amplification",
    "applicable_routes",
    "MOMENT_SERIES_RADIUS",
]

ROUTES = ("cosh_integral", "deriv_kernel", "moment_series", "incomplete_gamma", "via_zeta")
MOMENT_SERIES_RADIUS = 2
MAX_MOMENT_TERMS = 64


@dataclass(frozen=True)
class XiValue:
    value: mpmath.mpc
    err: ErrorEstimate
    route: str

    def __complex__(self):
        return complex(self.value)


class XiParts(NamedTuple):
    U: mpmath.mpf
    V: mpmath.mpf
    err: ErrorEstimate


def xi_integral(z, ctx: PrecisionContext = DEFAULT_CONTEXT) -> XiValue:
    """int_0^inf Omega(u) ch(u z) du on oscillation-aware panels."""
    val, err = kernel_transform(RIEMANN, z, ctx)
    return XiValue(val, err, "cosh_integral")


def xi_deriv_kernel(z, m: int = 0, odd: bool = True, ctx: PrecisionContext = DEFAULT_CONTEXT) -> XiValue:
    """Xi after 2m (or 2m+1 if ``odd``) partial integrations.

    odd:  -z^-(2m+1) int Omega^(2m+1)(u) sh(u z) du
    even:  z^-(2m)   int Omega^(2m)(u)   ch(u z) du
    The boundary terms vanish because odd derivatives of Omega vanish at 0.
    """
    if m not in (0, 1, 2):
        raise DomainError("derivative form is provided for m = 0, 1, 2")
    with ctx.workdps():
        z = mpmath.mpc(z)
        k = 2 * m + 1 if odd else 2 * m
        if z == 0:
            return _deriv_kernel_at_origin(k, ctx)
        val, err = kernel_transform(RIEMANN, z, ctx, order=k, odd=odd)
        scale = z ** k
        val = (-val if odd else val) / scale
        e = err.abs_err / abs(scale)
        return XiValue(val, ErrorEstimate(e, err.converged), f"deriv_kernel({m},{'sh' if odd else 'ch'})")


def _deriv_kernel_at_origin(k: int, ctx: PrecisionContext) -> XiValue:
    # limit z -> 0: sh(uz)/z -> u, so the one-fold form becomes -int u Omega'(u) du
    if k > 1:
        raise DomainError("derivative form with m >= 1 is singular at z = 0; use m = 0")
    kr = kernel_rule(RIEMANN, 0, 0, ctx, order=k, growth=1)
    r = kr.rule
    if k == 0:
        val, err, _ = r.apply([mpmath.mpf(1)] * len(r.lo_nodes), [mpmath.mpf(1)] * len(r.hi_nodes))
    else:
        val, err, _ = r.apply(list(r.lo_nodes), list(r.hi_nodes))
        val = -val
    err += kr.tail
    ok = err <= ctx.tail_tol * max(abs(val), mpmath.mpf(1))
    return XiValue(mpmath.mpc(val), ErrorEstimate(err, bool(ok)), f"deriv_kernel(0,{'sh' if k else 'ch'})")


@functools.lru_cache(maxsize=8)
def _moments(ctx: PrecisionContext) -> tuple:
    # (value, error) pairs for int Omega u^(2k) du, k = 0..MAX_MOMENT_TERMS
    with ctx.workdps():
        kr = kernel_rule(RIEMANN, 0, 0, ctx, growth=2 * MAX_MOMENT_TERMS)
        r = kr.rule
        out = []
        lo = [mpmath.mpf(1)] * len(r.lo_nodes)
        hi = [mpmath.mpf(1)] * len(r.hi_nodes)
        lo2 = [u * u for u in r.lo_nodes]
        hi2 = [u * u for u in r.hi_nodes]
        for _ in range(MAX_MOMENT_TERMS + 1):
            val, err, _ = r.apply(lo, hi)
            out.append((val, err + kr.tail))
            lo = [a * b for a, b in zip(lo, lo2)]
            hi = [a * b for a, b in zip(hi, hi2)]
        return tuple(out)


def xi_moment_series(z, K: int | None = None, ctx: PrecisionContext = DEFAULT_CONTEXT) -> XiValue:
    """sum_{k<=K} m_2k z^2k / (2k)! with m_2k the even kernel moments.

    Without ``K`` terms are added until the next one drops below tail_tol
    relative to the partial sum.  The attached error is the first omitted
    term plus the propagated moment errors; the result is flagged as not
    converged when that exceeds tail_tol.
    """
    with ctx.workdps():
        z = mpmath.mpc(z)
        mom = _moments(ctx)
        limit = MAX_MOMENT_TERMS - 1 if K is None else K
        if limit >= MAX_MOMENT_TERMS:
            raise DomainError(f"at most {MAX_MOMENT_TERMS - 1} moment terms are available")
        z2 = z * z
        power = mpmath.mpc(1)
        fact = mpmath.mpf(1)
        total = mpmath.mpc(0)
        prop = mpmath.mpf(0)
        k = 0
        while True:
            c = power / fact
            total += mom[k][0] * c
            prop += mom[k][1] * abs(c)
            power *= z2
            fact *= (2 * k + 1) * (2 * k + 2)
            nxt = abs(mom[k + 1][0] * power / fact)
            k += 1
            if k > limit or (K is None and nxt <= ctx.tail_tol * abs(total)):
                break
        err = nxt + prop
        ok = err <= ctx.tail_tol * max(abs(total), mpmath.mpf(1))
        return XiValue(total, ErrorEstimate(err, bool(ok)), "moment_series")


def _incgamma_terms_needed(x, ctx: PrecisionContext) -> int:
    # term n is of size (pi n^2)^(2 + |x|/2) exp(-pi n^2)
    n = 1
    target = ctx.tail_tol * mpmath.mpf(10) ** -5
    while True:
        a = mpmath.pi * (n + 1) ** 2
        if 10 * a ** (2 + abs(x) / 2) * mpmath.exp(-a) < target:
            return n
        n += 1


def xi_incomplete_gamma(z, N: int | None = None, ctx: PrecisionContext = DEFAULT_CONTEXT) -> XiValue:
    """Theta-series terms integrated in closed form with upper incomplete Gammas.

    With a = pi n^2, each n contributes
    a^(-1/4) sum_{+-} a^(-+z/2) [2 Gamma(9/4 +- z/2, a) - 3 Gamma(5/4 +- z/2, a)].
    """
    with ctx.workdps():
        z = mpmath.mpc(z)
        x = z.real
        if N is None:
            N = _incgamma_terms_needed(x, ctx)
        if N < 1:
            raise DomainError("need at least one series term")
        half = z / 2
        q = mpmath.mpf(1) / 4
        total = mpmath.mpc(0)
        for n in range(1, N + 1):
            a = mpmath.pi * n * n
            la = mpmath.log(a)
            for sgn in (1, -1):
                w = sgn * half
                g9 = incomplete_gamma_upper(9 * q + w, a, ctx)
                g5 = incomplete_gamma_upper(5 * q + w, a, ctx)
                total += mpmath.exp(-(q + w) * la) * (2 * g9 - 3 * g5)
        a = mpmath.pi * (N + 1) ** 2
        tail = 20 * a ** (2 + abs(x) / 2) * mpmath.exp(-a)
        err = tail + abs(total) * mpmath.mpf(10) ** (-ctx.work_dps + 3)
        ok = err <= ctx.tail_tol * max(abs(total), mpmath.mpf(1)) * 10 ** 5
        return XiValue(total, ErrorEstimate(err, bool(ok)), "incomplete_gamma")


def xi_via_zeta(z, ctx: PrecisionContext = DEFAULT_CONTEXT) -> XiValue:
    """Xi(z) = xi(1/2 + z) from the reference zeta evaluator."""
    from .zeta_ref import xi_from_zeta

    with ctx.workdps():
        v = xi_from_zeta(mpmath.mpf(1) / 2 + mpmath.mpc(z), ctx)
        err = abs(v) * mpmath.mpf(10) ** (-ctx.work_dps + 8)
        return XiValue(v, ErrorEstimate(err, True), "via_zeta")


def xi(z, route: str = "cosh_integral", ctx: PrecisionContext = DEFAULT_CONTEXT, **kw) -> XiValue:
    if route == "cosh_integral":
        return xi_integral(z, ctx)
    if route == "deriv_kernel":
        return xi_deriv_kernel(z, kw.get("m", 0), kw.get("odd", True), ctx)
    if route == "moment_series":
        return xi_moment_series(z, kw.get("K"), ctx)
    if route == "incomplete_gamma":
        return xi_incomplete_gamma(z, kw.get("N"), ctx)
    if route == "via_zeta":
        return xi_via_zeta(z, ctx)
    raise DomainError(f"unknown route {route!r}")


def applicable_routes(z) -> tuple:
    """Routes that are meaningful at z (the moment series needs small |z|)."""
    z = mpmath.mpc(z)
    out = ["cosh_integral", "incomplete_gamma", "via_zeta", "deriv_kernel"]
    if abs(z) <= MOMENT_SERIES_RADIUS:
        out.append("moment_series")
    return tuple(out)


def xi_parts(x, y, ctx: PrecisionContext = DEFAULT_CONTEXT) -> XiParts:
    """U = int Omega ch(ux) cos(uy) du and V = int Omega sh(ux) sin(uy) du."""
    with ctx.workdps():
        x, y = mpmath.mpf(x), mpmath.mpf(y)
        kr = kernel_rule(RIEMANN, x, y, ctx)
        r = kr.rule

        def samples(nodes, f, g):
            return [f(u * x) * g(u * y) for u in nodes]

        U, eu, su = r.apply(samples(r.lo_nodes, mpmath.cosh, mpmath.cos), samples(r.hi_nodes, mpmath.cosh, mpmath.cos))
        V, ev, sv = r.apply(samples(r.lo_nodes, mpmath.sinh, mpmath.sin), samples(r.hi_nodes, mpmath.sinh, mpmath.sin))
        err = eu + ev + 2 * kr.tail
        ok = err <= ctx.tail_tol * max(su + sv, abs(U) + abs(V))
        return XiParts(U, V, ErrorEstimate(err, bool(ok)))


def amplification(y, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Envelope alpha(y) with alpha(y) |Xi(iy)| = |zeta(1/2 + iy)|."""
    with ctx.workdps():
        y = mpmath.mpf(y)
        lg = log_gamma(mpmath.mpc(mpmath.mpf(5) / 4, y / 2), ctx)
        return 2 * mpmath.pi ** (mpmath.mpf(1) / 4) * mpmath.exp(-lg.real) / mpmath.sqrt(1 + 4 * y * y)
