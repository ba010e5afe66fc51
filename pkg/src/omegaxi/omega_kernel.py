"""Theta-series machinery behind the Riemann kernel Omega(u).

With ``t_n = pi n^2 exp(2u)`` every derivative of

    Phi(u) = exp(u/2) (1/2 + sum_n exp(-t_n))

has the form ``exp(u/2) (c_k + sum_n P_k(t_n) exp(-t_n))`` because d/du acts
on functions of t as ``2t d/dt``.  The polynomials are built exactly with
rational coefficients, which gives Phi, Omega = 2 Phi'' - Phi/2 and all of
their derivatives from a single summation routine.  The direct series is
only used for u >= 0; negative arguments go through the even/odd symmetry.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import mpmath
from mpmath import mp

from .numerics import (
    DEFAULT_CONTEXT,
    DomainError,
    ErrorEstimate,
    PrecisionContext,
    integrate_panels,
)

__all__ = [
    "ThetaSeriesParams",
    "OmegaMoments",
    "psi",
    "phi",
    "phi_deriv",
    "omega",
    "omega_deriv",
    "omega_deriv1",
    "omega_cutoff",
    "omega_breakpoints",
    "omega_moment",
    "omega_moment_by_parts",
    "omega_moments",
    "omega_deriv1_minimum",
    "verify_appendix_identities",
    "mellin_omega",
]

MAX_DERIV = 8


# -- exact polynomial bookkeeping ---------------------------------------------

def _poly_step(p: tuple) -> tuple:
    # p(t) e^-t  ->  2t (p'(t) - p(t)) e^-t
    dp = [i * c for i, c in enumerate(p)][1:] + [Fraction(0)]
    diff = [a - b for a, b in zip(dp, p)]
    return tuple([Fraction(0)] + [2 * c for c in diff])


@functools.lru_cache(maxsize=None)
def _g_poly(j: int) -> tuple:
    p = (Fraction(1),)
    for _ in range(j):
        p = _poly_step(p)
    return p


def _padd(a, b, sa=1, sb=1):
    n = max(len(a), len(b))
    a = tuple(a) + (Fraction(0),) * (n - len(a))
    b = tuple(b) + (Fraction(0),) * (n - len(b))
    return tuple(sa * x + sb * y for x, y in zip(a, b))


@functools.lru_cache(maxsize=None)
def _phi_poly(k: int) -> tuple[Fraction, tuple]:
    """(constant, polynomial) with Phi^(k) = e^{u/2} (const + sum P(t_n) e^{-t_n})."""
    poly: tuple = (Fraction(0),)
    for j in range(k + 1):
        c = Fraction(comb(k, j), 2 ** (k - j))
        poly = _padd(poly, _g_poly(j), 1, c)
    return Fraction(1, 2 ** (k + 1)), poly


@functools.lru_cache(maxsize=None)
def _omega_poly(k: int) -> tuple:
    _, hi = _phi_poly(k + 2)
    _, lo = _phi_poly(k)
    return _padd(hi, lo, 2, Fraction(-1, 2))


def _theta_sum(poly: tuple, u, ctx: PrecisionContext):
    """sum_{n>=1} poly(t_n) exp(-t_n) for u >= 0, truncated at tail_tol."""
    coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in poly]
    deg = len(coeffs) - 1
    base = mpmath.pi * mpmath.exp(2 * u)
    total = mpmath.mpf(0)
    n = 1
    while True:
        t = base * n * n
        term = mpmath.polyval(coeffs[::-1], t) * mpmath.exp(-t)
        total += term
        if t > 2 * deg + 2 and abs(term) <= ctx.tail_tol * abs(total):
            return total
        n += 1


# -- Psi, Phi, Omega -------------------------------------------------------------

@dataclass(frozen=True)
class ThetaSeriesParams:
    """Truncation data for the theta sums at a given point."""

    n_max: int
    u_max: mpmath.mpf

    @classmethod
    def at(cls, u, ctx: PrecisionContext = DEFAULT_CONTEXT) -> "ThetaSeriesParams":
        with ctx.workdps():
            u = abs(mpmath.mpf(u))
            # exp(-pi n^2 e^{2u}) < tail_tol  <=>  n^2 > -log(tail_tol) e^{-2u} / pi
            n = int(mpmath.sqrt(-mpmath.log(ctx.tail_tol) * mpmath.exp(-2 * u) / mpmath.pi)) + 1
            return cls(n_max=n, u_max=omega_cutoff(0, ctx))


def psi(q, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Psi(q) = sqrt(q) (1/2 + sum_n exp(-pi n^2 q^2)), evaluated directly for any q > 0."""
    with ctx.workdps():
        q = mpmath.mpf(q)
        if not q > 0:
            raise DomainError("psi requires q > 0")
        base = mpmath.pi * q * q
        total = mpmath.mpf(0)
        n = 1
        while True:
            term = mpmath.exp(-base * n * n)
            total += term
            if term <= ctx.tail_tol * (total + mpmath.mpf(1) / 2):
                break
            n += 1
        return mpmath.sqrt(q) * (mpmath.mpf(1) / 2 + total)


def phi_deriv(u, order: int, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Derivative of Phi(u) = Psi(e^u) of the given order (0 gives Phi itself)."""
    if order < 0 or order > MAX_DERIV:
        raise DomainError(f"phi derivative order must be in 0..{MAX_DERIV}")
    with ctx.workdps():
        u = mpmath.mpf(u)
        if not mpmath.isfinite(u):
            raise DomainError("phi requires a finite argument")
        sign = -1 if (u < 0 and order % 2) else 1
        a = abs(u)
        const, poly = _phi_poly(order)
        val = mpmath.exp(a / 2) * (mpmath.mpf(const.numerator) / const.denominator + _theta_sum(poly, a, ctx))
        return sign * val


def phi(u, ctx: PrecisionContext = DEFAULT_CONTEXT):
    return phi_deriv(u, 0, ctx)


def omega_deriv(u, order: int, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """order-th derivative of Omega(u) from its explicit series (u >= 0) and symmetry."""
    if order < 0 or order > MAX_DERIV - 2:
        raise DomainError(f"omega derivative order must be in 0..{MAX_DERIV - 2}")
    with ctx.workdps():
        u = mpmath.mpf(u)
        if not mpmath.isfinite(u):
            raise DomainError("omega requires a finite argument")
        sign = -1 if (u < 0 and order % 2) else 1
        a = abs(u)
        # the polynomial coefficients grow quickly with the order; pay for it in guard digits
        with mp.workdps(ctx.work_dps + 3 * order):
            val = mpmath.exp(a / 2) * _theta_sum(_omega_poly(order), a, ctx)
        return sign * val


def omega(u, ctx: PrecisionContext = DEFAULT_CONTEXT):
    return omega_deriv(u, 0, ctx)


def omega_deriv1(u, ctx: PrecisionContext = DEFAULT_CONTEXT):
    return omega_deriv(u, 1, ctx)


# -- quadrature support -----------------------------------------------------------

@functools.lru_cache(maxsize=None)
def _cutoff(growth_q: int, dps: int, tol_exp: int, order: int):
    # First u on a 1/64 grid where the bound on |Omega^(order)(u)| e^{growth u}
    # drops below tol * 1e-5; the bound also dominates the tail integral.
    growth = mpmath.mpf(growth_q) / 4
    poly = _omega_poly(order)
    csum = sum(abs(c) for c in poly)
    deg = len(poly) - 1
    with mp.workdps(dps):
        target = mpmath.mpf(10) ** (-(tol_exp + 5))
        csum = mpmath.mpf(csum.numerator) / csum.denominator
        u = mpmath.mpf(1)
        while True:
            t = mpmath.pi * mpmath.exp(2 * u)
            bound = 2 * csum * mpmath.exp(u / 2 + growth * u) * t ** deg * mpmath.exp(-t)
            if bound < target:
                return u
            u += mpmath.mpf(1) / 64


def omega_cutoff(growth, ctx: PrecisionContext = DEFAULT_CONTEXT, order: int = 0):
    """Support truncation for integrals of Omega^(order)(u) e^{growth*u} on [0, inf).

    Beyond the returned point the integrand is below ``1e-5 tail_tol`` and
    so is the discarded tail integral.
    """
    g = int(mpmath.ceil(abs(mpmath.mpf(growth)) * 4))
    tol_exp = int(-mpmath.log10(ctx.tail_tol))
    return _cutoff(g, ctx.work_dps, tol_exp, order)


def omega_breakpoints(u_max, ctx: PrecisionContext = DEFAULT_CONTEXT, refine=1) -> tuple:
    """Panel boundaries on [0, u_max] resolving the double-exponential decay.

    exp(-pi e^{2u}) varies on the scale 1/(2t); panels are kept to a few of
    those scales.  ``refine`` divides every width (used for derivative kernels,
    whose polynomial factors are of higher degree).
    """
    with ctx.workdps():
        u_max = mpmath.mpf(u_max)
        pts = [mpmath.mpf(0)]
        u = mpmath.mpf(0)
        while u < u_max:
            t = mpmath.pi * mpmath.exp(2 * u)
            h = min(mpmath.mpf(1) / 8, 9 / (2 * t + 1)) * (ctx.panel_order / mpmath.mpf(24)) / refine
            u = min(u + h, u_max)
            pts.append(u)
        return tuple(pts)


def _omega_integral(weight, growth, ctx: PrecisionContext, order: int = 0):
    with ctx.workdps():
        u_max = omega_cutoff(growth, ctx)
        brk = omega_breakpoints(u_max, ctx)
        val, err = integrate_panels(
            lambda u: omega_deriv(u, order, ctx) * weight(u), 0, u_max, 0, ctx,
            max_width=mpmath.mpf(1) / 4, breakpoints=brk,
        )
        return val, err


def omega_moment(k: int, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """int_0^inf Omega(u) u^k du for even k >= 0."""
    if k < 0 or k % 2:
        raise DomainError("omega_moment supports nonnegative even k only")
    return omega_moments(k // 2, ctx)[k // 2]


def omega_moment_by_parts(ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Zeroth moment via -int_0^inf Omega'(u) u du."""
    val, _ = _omega_integral(lambda u: u, 1, ctx, order=1)
    return -val


def omega_moments(kmax_half: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> tuple:
    """Even moments (m_0, m_2, ..., m_{2*kmax_half}) of Omega."""
    from .kernel_family import RIEMANN, kernel_moment

    return tuple(kernel_moment(RIEMANN, 2 * j, ctx) for j in range(kmax_half + 1))


@dataclass(frozen=True)
class OmegaMoments:
    m0: mpmath.mpf
    m2_scaled: mpmath.mpf
    omega_at_0: mpmath.mpf

    @classmethod
    def compute(cls, ctx: PrecisionContext = DEFAULT_CONTEXT) -> "OmegaMoments":
        m = omega_moments(1, ctx)
        return cls(m0=m[0], m2_scaled=m[1], omega_at_0=omega(0, ctx))


def omega_deriv1_minimum(ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Location and value of the minimum of Omega'(u) on (0, 1).

    Coarse grid, then golden-section refinement on the bracketing cell, then
    a few Newton steps on Omega'' for full precision.
    """
    with ctx.workdps():
        grid = [mpmath.mpf(i) / 100 for i in range(1, 100)]
        vals = [omega_deriv(u, 1, ctx) for u in grid]
        i = min(range(len(vals)), key=lambda j: vals[j])
        a, b = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
        gr = (mpmath.sqrt(5) - 1) / 2
        c = b - gr * (b - a)
        d = a + gr * (b - a)
        fc, fd = omega_deriv(c, 1, ctx), omega_deriv(d, 1, ctx)
        for _ in range(40):
            if fc < fd:
                b, d, fd = d, c, fc
                c = b - gr * (b - a)
                fc = omega_deriv(c, 1, ctx)
            else:
                a, c, fc = c, d, fd
                d = a + gr * (b - a)
                fd = omega_deriv(d, 1, ctx)
        u = (a + b) / 2
        for _ in range(30):
            step = omega_deriv(u, 2, ctx) / omega_deriv(u, 3, ctx)
            u -= step
            if abs(step) < ctx.tail_tol:
                break
        return u, omega_deriv(u, 1, ctx)


def verify_appendix_identities(ctx: PrecisionContext = DEFAULT_CONTEXT, q_grid=None) -> dict:
    """Residuals of the two special theta sums and of Psi(q) = Psi(1/q)."""
    with ctx.workdps():
        def sum_with(poly):
            total = mpmath.mpf(0)
            n = 1
            while True:
                a = 4 * mpmath.pi * n * n
                term = poly(a) * mpmath.exp(-mpmath.pi * n * n)
                total += term
                if n > 3 and abs(term) < ctx.tail_tol * abs(total):
                    return total
                n += 1

        half = mpmath.mpf(1) / 2
        r1 = abs(sum_with(lambda a: a - 1) - half)
        r2 = abs(sum_with(lambda a: a ** 3 - 15 * a ** 2 + 31 * a - 1) - half)
        if q_grid is None:
            q_grid = [mpmath.mpf(1) / 3, half, 1, 2, 3]
        r3 = max(abs(psi(q, ctx) - psi(1 / mpmath.mpf(q), ctx)) for q in q_grid)
        return {"sum_identity_1": r1, "sum_identity_2": r2, "theta_symmetry": r3}


def mellin_omega(s, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Mellin transform int_0^inf Omega(u) u^{s-1} du for re(s) > 0.

    Returns ``(value, ErrorEstimate)``.  For non-integer s the factor u^{s-1}
    is singular at 0, so panels are graded geometrically towards the origin
    and the remainder on [0, u_0] is bounded by Omega(0) u_0^{re s} / re s.
    """
    with ctx.workdps():
        s = mpmath.mpc(s)
        if not s.real > 0:
            raise DomainError("mellin_omega requires re(s) > 0")
        u_max = omega_cutoff(0, ctx)
        brk = list(omega_breakpoints(u_max, ctx))
        smooth = s.imag == 0 and s.real == int(s.real)
        lo_end = mpmath.mpf(0)
        rem = mpmath.mpf(0)
        if not smooth:
            sr = s.real
            om0 = omega(0, ctx)
            u0 = (ctx.tail_tol * sr / om0) ** (1 / sr)
            g = brk[1]
            while g > u0:
                g /= 2
                brk.append(g)
            lo_end = g
            rem = om0 * g ** sr / sr
        sm1 = s - 1
        if smooth:
            f = lambda u: omega(u, ctx) * u ** int(sm1.real)
        else:
            f = lambda u: omega(u, ctx) * mpmath.exp(sm1 * mpmath.log(u))
        val, err = integrate_panels(f, lo_end, u_max, 0, ctx, max_width=mpmath.mpf(1) / 4, breakpoints=brk)
        if smooth:
            val = mpmath.mpc(val)
        return val, ErrorEstimate(err.abs_err + rem, err.converged)
