"""Extended-precision primitives shared by the rest of the package.

All arithmetic runs on :mod:`mpmath`.  A :class:`PrecisionContext` fixes the
number of trusted decimal digits; every routine evaluates internally at
``ctx.work_dps`` (trusted digits plus guard digits) so that rounding stays
well below the truncation tolerance.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Callable, Sequence

import mpmath
from mpmath import mp

__all__ = [
    "PrecisionContext",
    "ErrorEstimate",
    "DomainError",
    "ConvergenceError",
    "DEFAULT_CONTEXT",
    "to_mpc",
    "log_gamma",
    "incomplete_gamma_upper",
    "incomplete_gamma_lower",
    "gauss_legendre",
    "PanelRule",
    "panel_rule",
    "integrate_panels",
]

GUARD_DIGITS = 15


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class ConvergenceError(ArithmeticError):
    """An iterative method failed to converge."""

    def __init__(self, message: str, iterations: int):
        super().__init__(f"{message} (after {iterations} iterations)")
        self.iterations = iterations


@dataclass(frozen=True)
class PrecisionContext:
    """Immutable evaluation environment.

    digits
        Significant decimal digits the caller wants to trust (>= 30).
    panel_order
        Gauss-Legendre nodes per quadrature panel (>= 8).  The error
        estimate uses a second rule with twice as many nodes.
    tail_tol
        Relative truncation tolerance for series and quadrature tails.
        Defaults to ``10**-(digits + 10)``.
    """

    digits: int = 50
    panel_order: int = 24
    tail_tol: mpmath.mpf | None = field(default=None)

    def __post_init__(self):
        if int(self.digits) != self.digits or self.digits < 30:
            raise DomainError(f"digits must be an integer >= 30, got {self.digits}")
        if int(self.panel_order) != self.panel_order or self.panel_order < 8:
            raise DomainError(f"panel_order must be an integer >= 8, got {self.panel_order}")
        if self.tail_tol is None:
            with mp.workdps(self.digits + GUARD_DIGITS):
                object.__setattr__(self, "tail_tol", mpmath.mpf(10) ** (-(self.digits + 10)))
        elif not self.tail_tol > 0:
            raise DomainError("tail_tol must be positive")

    @property
    def work_dps(self) -> int:
        return self.digits + GUARD_DIGITS

    @property
    def eps(self):
        """Relative size of the last trusted digit."""
        return mpmath.mpf(10) ** (-self.digits)

    def workdps(self):
        return mp.workdps(self.work_dps)


DEFAULT_CONTEXT = PrecisionContext()


@dataclass(frozen=True)
class ErrorEstimate:
    abs_err: mpmath.mpf
    converged: bool

    def __add__(self, other: "ErrorEstimate") -> "ErrorEstimate":
        return ErrorEstimate(self.abs_err + other.abs_err, self.converged and other.converged)


def to_mpc(z) -> mpmath.mpc:
    return mpmath.mpc(z)


def _is_nonpositive_integer(z) -> bool:
    z = mpmath.mpc(z)
    return z.imag == 0 and z.real <= 0 and z.real == mpmath.floor(z.real)


def log_gamma(z, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpmath.mpc:
    """Principal branch of log Gamma(z)."""
    with ctx.workdps():
        z = mpmath.mpc(z)
        if _is_nonpositive_integer(z):
            raise DomainError(
                f"log_gamma has a pole at the nonpositive integer {mpmath.nstr(z.real, 5)}; "
                "apply the reflection formula explicitly"
            )
        return mpmath.mpc(mpmath.loggamma(z))


# -- incomplete Gamma ----------------------------------------------------------

_MAX_ITER = 20000


def _upper_gamma_contfrac(a, x, tol):
    # Modified Lentz evaluation of x^a e^-x / (x + 1 - a - 1(1-a)/(x + 3 - a - ...)).
    tiny = mpmath.mpf(10) ** (-(mp.dps * 2))
    b = x + 1 - a
    c = 1 / tiny
    d = 1 / b
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - a)
        b += 2
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1 / d
        delta = d * c
        h *= delta
        if abs(delta - 1) < tol:
            return mpmath.exp(a * mpmath.log(x) - x) * h
    raise ConvergenceError("incomplete gamma continued fraction did not converge", _MAX_ITER)


def _lower_gamma_series(a, x, tol):
    # gamma(a, x) = x^a e^-x sum_k x^k / (a (a+1) ... (a+k))
    term = 1 / a
    total = term
    for k in range(1, _MAX_ITER):
        term *= x / (a + k)
        total += term
        if abs(term) < tol * abs(total):
            return mpmath.exp(a * mpmath.log(x) - x) * total
    raise ConvergenceError("incomplete gamma series did not converge", _MAX_ITER)


def incomplete_gamma_upper(alpha, x, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpmath.mpc:
    """Upper incomplete Gamma function Gamma(alpha, x) for real x > 0.

    Continued fraction for ``x >= |alpha| + 4``, otherwise Gamma(alpha) minus
    the lower series.
    """
    with ctx.workdps():
        a = mpmath.mpc(alpha)
        x = mpmath.mpf(x)
        if not x > 0:
            raise DomainError("incomplete_gamma_upper requires x > 0")
        tol = mpmath.mpf(10) ** (-mp.dps)
        if x >= abs(a) + 4:
            return mpmath.mpc(_upper_gamma_contfrac(a, x, tol))
        if _is_nonpositive_integer(a):
            raise DomainError("series complement needs Gamma(alpha); alpha is a pole")
        # Cancellation in the complement is bounded by |Gamma(a)| / |result|;
        # raise the working precision accordingly.
        full = mpmath.exp(log_gamma(a, ctx))
        lower = _lower_gamma_series(a, x, tol)
        res = full - lower
        lost = int(mpmath.log10(abs(full) / abs(res))) + 2 if res != 0 else 0
        if lost > 0:
            with mp.extradps(lost):
                full = mpmath.exp(mpmath.loggamma(a))
                res = full - _lower_gamma_series(a, x, tol * mpmath.mpf(10) ** (-lost))
        return mpmath.mpc(res)


def incomplete_gamma_lower(alpha, x, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpmath.mpc:
    """Lower incomplete Gamma function gamma(alpha, x) by its power series."""
    with ctx.workdps():
        a = mpmath.mpc(alpha)
        x = mpmath.mpf(x)
        if not x > 0:
            raise DomainError("incomplete_gamma_lower requires x > 0")
        return mpmath.mpc(_lower_gamma_series(a, x, mpmath.mpf(10) ** (-mp.dps)))


# -- Gauss-Legendre panels -----------------------------------------------------

def _legendre(n, x):
    p0, p1 = mpmath.mpf(1), x
    for k in range(2, n + 1):
        p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
    return p1, n * (x * p1 - p0) / (x * x - 1)


@functools.lru_cache(maxsize=None)
def gauss_legendre(n: int, dps: int) -> tuple[tuple, tuple]:
    """Nodes and weights of the n-point rule on [-1, 1] at ``dps`` digits.

    Newton iteration on P_n started from the Tricomi approximation.  Only
    the positive roots are iterated; the rule is mirrored so that the node
    set is exactly antisymmetric.
    """
    with mp.workdps(dps + 10):
        tol = mpmath.mpf(10) ** (-(dps + 5))
        pos = []
        for i in range(n // 2, 0, -1):
            x = mpmath.cos(mpmath.pi * (i - mpmath.mpf(1) / 4) / (n + mpmath.mpf(1) / 2))
            for _ in range(100):
                p1, dp = _legendre(n, x)
                dx = p1 / dp
                x -= dx
                if abs(dx) < tol:
                    break
            _, dp = _legendre(n, x)
            pos.append((x, 2 / ((1 - x * x) * dp * dp)))
        mid = []
        if n % 2:
            _, dp = _legendre(n, mpmath.mpf(0))
            mid = [(mpmath.mpf(0), 2 / (dp * dp))]
    with mp.workdps(dps):
        rule = [(-x, w) for x, w in reversed(pos)] + mid + pos
        return tuple(+x for x, _ in rule), tuple(+w for _, w in rule)


@dataclass(frozen=True)
class PanelRule:
    """A composite pair of Gauss-Legendre rules over a fixed partition.

    ``lo`` uses ``panel_order`` nodes per panel and ``hi`` twice as many; the
    per-panel difference is the error estimate.  Node tuples are flat, with
    ``order`` (resp. ``2*order``) consecutive nodes per panel.  ``affine``
    records that each panel's nodes are the reference nodes scaled into it.
    """

    breaks: tuple
    order: int
    lo_nodes: tuple
    lo_weights: tuple
    hi_nodes: tuple
    hi_weights: tuple
    affine: bool = True

    @property
    def n_panels(self) -> int:
        return len(self.breaks) - 1

    def apply(self, lo_values: Sequence, hi_values: Sequence):
        """Return (value, abs_err, l1_scale) given integrand samples on both node sets."""
        n, m = self.order, 2 * self.order
        total = 0
        err = 0
        scale = 0
        lw, hw = self.lo_weights, self.hi_weights
        for p in range(self.n_panels):
            ql = mpmath.fsum(lw[i] * lo_values[i] for i in range(p * n, (p + 1) * n))
            hv = [hw[i] * hi_values[i] for i in range(p * m, (p + 1) * m)]
            qh = mpmath.fsum(hv)
            total += qh
            err += abs(qh - ql)
            scale += mpmath.fsum(abs(v) for v in hv)
        return total, err, scale


def _partition(a, b, lam, max_width, breakpoints=()):
    a = mpmath.mpf(a)
    b = mpmath.mpf(b)
    width = mpmath.mpf(max_width)
    if lam:
        width = min(width, mpmath.pi / (2 * abs(mpmath.mpf(lam))))
    cuts = sorted({a, b, *(mpmath.mpf(c) for c in breakpoints if a < c < b)})
    out = [cuts[0]]
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        k = int(mpmath.ceil((hi - lo) / width))
        k = max(k, 1)
        step = (hi - lo) / k
        out.extend(lo + step * j for j in range(1, k))
        out.append(hi)
    return tuple(out)


def panel_rule(breaks: Sequence, ctx: PrecisionContext = DEFAULT_CONTEXT) -> PanelRule:
    """Build the paired composite rule on the given panel boundaries."""
    n = ctx.panel_order
    with ctx.workdps():
        xl, wl = gauss_legendre(n, ctx.work_dps)
        xh, wh = gauss_legendre(2 * n, ctx.work_dps)
        ln, lw, hn, hw = [], [], [], []
        for lo, hi in zip(breaks[:-1], breaks[1:]):
            c = (hi + lo) / 2
            h = (hi - lo) / 2
            ln.extend(c + h * x for x in xl)
            lw.extend(h * w for w in wl)
            hn.extend(c + h * x for x in xh)
            hw.extend(h * w for w in wh)
        return PanelRule(tuple(breaks), n, tuple(ln), tuple(lw), tuple(hn), tuple(hw))


def integrate_panels(
    f: Callable,
    a,
    b,
    lam=0,
    ctx: PrecisionContext = DEFAULT_CONTEXT,
    *,
    max_width=0.25,
    decay: Callable | None = None,
    breakpoints: Sequence = (),
):
    """Integrate ``f`` over [a, b] with oscillation-aware Gauss-Legendre panels.

    Panels are no wider than ``pi / (2 lam)`` (a quarter period of an
    oscillation with angular frequency ``lam``) and no wider than
    ``max_width``.  For ``b = +inf`` a ``decay(u)`` callback bounding
    ``int_u^inf |f|`` is required; the range is cut where the bound drops
    below ``tail_tol`` times the running scale and the bound is added to the
    error.

    Returns ``(value, ErrorEstimate)``.  A non-converged estimate is flagged,
    not raised.
    """
    with ctx.workdps():
        a = mpmath.mpf(a)
        tail = mpmath.mpf(0)
        if b == mpmath.inf or b == float("inf"):
            if decay is None:
                raise DomainError("an infinite upper limit needs a decay bound callback")
            b = a + 1
            while decay(b) > ctx.tail_tol * mpmath.mpf(10) ** -5:
                b = a + 2 * (b - a)
                if b - a > mpmath.mpf(10) ** 6:
                    raise ConvergenceError("decay bound never fell below tolerance", 20)
            tail = mpmath.mpf(decay(b))
        b = mpmath.mpf(b)
        rule = panel_rule(_partition(a, b, lam, max_width, breakpoints), ctx)
        lo_vals = [f(u) for u in rule.lo_nodes]
        hi_vals = [f(u) for u in rule.hi_nodes]
        value, err, scale = rule.apply(lo_vals, hi_vals)
        err += tail
        converged = err <= ctx.tail_tol * max(scale, abs(value))
        return value, ErrorEstimate(err, bool(converged))
