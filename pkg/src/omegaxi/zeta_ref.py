"""Reference zeta and xi values independent of the Omega kernel.

For re(s) > 0 the alternating eta series is summed with the Chebyshev-type
binomial weights of Borwein (error ~ (3 + sqrt 8)^-n), and zeta follows from
eta / (1 - 2^(1-s)).  The factor (s - 1)/(1 - 2^(1-s)) is formed with expm1 so
the pole at s = 1 cancels analytically, which makes xi(s) exact at s = 1.
Left of the line re(s) = 0 the functional equation is used.  Where
1 - 2^(1-s) is tiny away from s = 1 an Euler-Maclaurin sum takes over.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import mpmath
from mpmath import mp

from .numerics import DEFAULT_CONTEXT, DomainError, ErrorEstimate, PrecisionContext, log_gamma

__all__ = [
    "ZetaValue",
    "zeta",
    "xi_from_zeta",
    "functional_equation_residual",
    "xi_functional_residual",
    "borwein_depth",
]

ETA_FACTOR_FLOOR = mpmath.mpf("1e-3")


@dataclass(frozen=True)
class ZetaValue:
    value: mpmath.mpc
    err: ErrorEstimate


def borwein_depth(t, dps: int) -> int:
    """Number of eta terms for about ``dps`` correct digits at height |t|."""
    t = abs(float(t))
    import math

    num = dps * math.log(10) + math.pi * t / 2 + math.log(1 + 2 * t) + 5
    return int(math.ceil(num / math.log(3 + math.sqrt(8))))


@functools.lru_cache(maxsize=64)
def _borwein_weights(n: int, dps: int) -> tuple:
    # d_k = n sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!), returned as (d_n - d_k)/d_n
    with mp.workdps(dps):
        acc = mpmath.mpf(0)
        d = []
        term = mpmath.mpf(mpmath.factorial(n - 1)) / mpmath.factorial(n)
        for i in range(n + 1):
            if i > 0:
                term *= mpmath.mpf(4 * (n + i - 1) * (n - i + 1)) / ((2 * i) * (2 * i - 1))
            acc += term
            d.append(n * acc)
        dn = d[n]
        return tuple((dn - dk) / dn for dk in d[:n])


def _eta(s, ctx: PrecisionContext):
    """Alternating zeta sum_{k>=1} (-1)^(k-1) k^-s for re(s) > 0, with error bound."""
    t = s.imag
    extra = int(0.7 * abs(float(t))) + 5
    dps = ctx.work_dps + extra
    n = borwein_depth(t, dps)
    with mp.workdps(dps):
        w = _borwein_weights(n, dps)
        total = mpmath.fsum((-1) ** k * w[k] * mpmath.power(k + 1, -s) for k in range(n))
        bound = 3 * (1 + 2 * abs(t)) * mpmath.exp(mpmath.pi * abs(t) / 2) / (3 + mpmath.sqrt(8)) ** n
    return total, bound


def _one_minus_two_pow(s):
    # 1 - 2^(1-s) = -expm1((1-s) log 2)
    return -mpmath.expm1((1 - s) * mpmath.ln2)


def _euler_maclaurin(s, ctx: PrecisionContext):
    """Plain Euler-Maclaurin zeta for re(s) > 0 and s != 1."""
    with mp.workdps(ctx.work_dps + 10):
        N = int(abs(s)) + ctx.work_dps
        head = mpmath.fsum(mpmath.power(k, -s) for k in range(1, N))
        Nf = mpmath.mpf(N)
        total = head + Nf ** (1 - s) / (s - 1) + Nf ** (-s) / 2
        rising = s  # s (s+1) ... (s+2j-2)
        tol = mpmath.mpf(10) ** (-ctx.work_dps - 5)
        err = mpmath.inf
        for j in range(1, 4 * ctx.work_dps):
            term = mpmath.bernoulli(2 * j) / mpmath.factorial(2 * j) * rising * Nf ** (-s - 2 * j + 1)
            total += term
            err = abs(term)
            if err < tol * abs(total):
                break
            rising *= (s + 2 * j - 1) * (s + 2 * j)
        return total, err


def _sm1_zeta_right(s, ctx: PrecisionContext):
    """(s - 1) zeta(s) for re(s) > 0; analytic through s = 1."""
    with ctx.workdps():
        if s == 1:
            return mpmath.mpc(1), mpmath.mpf(0)
        den = _one_minus_two_pow(s)
        if abs(den) < ETA_FACTOR_FLOOR and abs(s - 1) > ETA_FACTOR_FLOOR:
            z, err = _euler_maclaurin(s, ctx)
            return (s - 1) * z, abs(s - 1) * err
        eta, err = _eta(s, ctx)
        factor = (s - 1) / den
        return factor * eta, abs(factor) * err


def _zeta_left(s, ctx: PrecisionContext):
    # zeta(s) = 2^s pi^(s-1) Gamma(1-s) * [sin(pi s/2)/(-s)] * [(-s) zeta(1-s)]
    r = 1 - s
    m, err = _sm1_zeta_right(r, ctx)  # (r - 1) zeta(r) = (-s) zeta(1-s)
    half = mpmath.pi / 2
    sin_ratio = -half * mpmath.sinc(half * s)  # sin(pi s / 2) / (-s)
    pref = mpmath.power(2, s) * mpmath.power(mpmath.pi, s - 1) * mpmath.exp(log_gamma(r, ctx))
    return pref * sin_ratio * m, abs(pref * sin_ratio) * err


def zeta(s, ctx: PrecisionContext = DEFAULT_CONTEXT) -> ZetaValue:
    """Riemann zeta at complex s != 1."""
    with ctx.workdps():
        s = mpmath.mpc(s)
        if s == 1:
            raise DomainError("zeta has a pole at s = 1")
        if s.real > 0:
            m, err = _sm1_zeta_right(s, ctx)
            val, err = m / (s - 1), err / abs(s - 1)
        else:
            if s.imag == 0 and s.real <= 0 and s.real == int(s.real) and int(s.real) % 2 == 0 and s.real < 0:
                return ZetaValue(mpmath.mpc(0), ErrorEstimate(mpmath.mpf(0), True))
            val, err = _zeta_left(s, ctx)
        err += abs(val) * mpmath.mpf(10) ** (-ctx.work_dps + 3)
        ok = err <= mpmath.mpf(10) ** (-(ctx.digits - 8)) * max(abs(val), mpmath.mpf(10) ** -ctx.digits)
        return ZetaValue(+val, ErrorEstimate(err, bool(ok)))


def xi_from_zeta(s, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpmath.mpc:
    """xi(s) = (s - 1) Gamma(s/2 + 1) pi^(-s/2) zeta(s); entire, xi(0) = xi(1) = 1/2."""
    with ctx.workdps():
        s = mpmath.mpc(s)
        g = mpmath.exp(log_gamma(s / 2 + 1, ctx)) if not _gamma_pole(s / 2 + 1) else None
        if s.real > 0:
            m, _ = _sm1_zeta_right(s, ctx)
        else:
            if g is None:
                # s/2 + 1 at a pole means s = -2, -4, ...; Gamma pole meets a trivial zero
                return _xi_at_even_negative(s, ctx)
            z, _ = _zeta_left(s, ctx)
            m = (s - 1) * z
        return g * mpmath.power(mpmath.pi, -s / 2) * m


def _gamma_pole(w) -> bool:
    return w.imag == 0 and w.real <= 0 and w.real == int(w.real)


def _xi_at_even_negative(s, ctx):
    # xi(s) = xi(1 - s), and 1 - s has positive real part
    return xi_from_zeta(1 - s, ctx)


def functional_equation_residual(s, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """|zeta(s) - (2 pi)^s zeta(1-s) / (2 Gamma(s) cos(pi s / 2))|."""
    with ctx.workdps():
        s = mpmath.mpc(s)
        lhs = zeta(s, ctx).value
        rhs = mpmath.power(2 * mpmath.pi, s) * zeta(1 - s, ctx).value
        rhs /= 2 * mpmath.exp(log_gamma(s, ctx)) * mpmath.cos(mpmath.pi * s / 2)
        return abs(lhs - rhs)


def xi_functional_residual(s, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """|xi(s) - xi(1 - s)|."""
    with ctx.workdps():
        s = mpmath.mpc(s)
        return abs(xi_from_zeta(s, ctx) - xi_from_zeta(1 - s, ctx))
