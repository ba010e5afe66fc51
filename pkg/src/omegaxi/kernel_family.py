"""Nonincreasing weights Omega(u) on [0, inf) and their cosh transforms.

A kernel is turned into a reusable quadrature rule whose weights already
contain Omega (and any change-of-variables Jacobian).  Evaluating the
transform at a new z then costs only the ch/sh evaluations at the nodes.
Rules are cached per kernel, context, quantised oscillation level and
support cut, so a scan along the imaginary axis reuses a handful of rules.
"""

from __future__ import annotations

import bisect
import functools
import math
import operator
from abc import ABC, abstractmethod
from dataclasses import dataclass
from pathlib import Path

import mpmath

from . import omega_kernel as _om
from .numerics import (
    DEFAULT_CONTEXT,
    DomainError,
    ErrorEstimate,
    PanelRule,
    PrecisionContext,
    _partition,
    gauss_legendre,
)

__all__ = [
    "Kernel",
    "RiemannKernel",
    "StepKernel",
    "BesselKernel",
    "TabulatedKernel",
    "KernelValidationError",
    "RIEMANN",
    "KernelRule",
    "kernel_rule",
    "kernel_transform",
    "kernel_xi",
    "kernel_moment",
    "step_xi_closed",
    "step_modulus_sq",
    "bessel_xi",
    "bessel_xi_closed",
    "load_tabulated",
    "parse_kernel_spec",
]

BASE_WIDTH = mpmath.mpf(1) / 4
LEVELS_PER_OCTAVE = 4


class KernelValidationError(ValueError):
    """A kernel violates positivity, monotonicity or the knot layout."""


class Kernel(ABC):
    """Nonnegative nonincreasing weight on [0, inf)."""

    name: str = "kernel"

    @abstractmethod
    def omega(self, u, ctx: PrecisionContext = DEFAULT_CONTEXT): ...

    @abstractmethod
    def derivative(self, u, ctx: PrecisionContext = DEFAULT_CONTEXT): ...

    @abstractmethod
    def support_end(self, growth, ctx: PrecisionContext = DEFAULT_CONTEXT, order: int = 0):
        """Upper integration limit for integrands bounded by |Omega^(order)(u)| e^{growth u}."""

    def tail_bound(self, u_max, growth, ctx: PrecisionContext = DEFAULT_CONTEXT):
        return mpmath.mpf(0)

    def breakpoints(self, u_max, ctx: PrecisionContext) -> tuple:
        return ()

    def omega_at_0(self, ctx: PrecisionContext = DEFAULT_CONTEXT):
        with ctx.workdps():
            return self.omega(0, ctx)

    def spec(self) -> str:
        return self.name

    def _masses(self, nodes, weights, order: int, ctx: PrecisionContext):
        if order == 0:
            f = lambda u: self.omega(u, ctx)
        elif order == 1:
            f = lambda u: self.derivative(u, ctx)
        else:
            raise DomainError(f"{self.name} kernel has no derivative rule of order {order}")
        return tuple(w * f(u) for u, w in zip(nodes, weights))

    def build_rule(self, u_max, width, order: int, ctx: PrecisionContext) -> PanelRule:
        """Composite rule on [0, u_max] whose weights carry Omega^(order)."""
        breaks = _partition(0, u_max, 0, width, self.breakpoints(u_max, ctx))
        return _weighted_rule(breaks, ctx, lambda n, w: self._masses(n, w, order, ctx))


def _weighted_rule(breaks, ctx: PrecisionContext, masses, node_map=None) -> PanelRule:
    n = ctx.panel_order
    xl, wl = gauss_legendre(n, ctx.work_dps)
    xh, wh = gauss_legendre(2 * n, ctx.work_dps)

    def expand(xs, ws):
        nodes, weights = [], []
        for a, b in zip(breaks[:-1], breaks[1:]):
            h = (b - a) / 2
            c = (a + b) / 2
            nodes.extend(c + h * x for x in xs)
            weights.extend(h * w for w in ws)
        return nodes, weights

    ln, lw = expand(xl, wl)
    hn, hw = expand(xh, wh)
    lm, hm = masses(ln, lw), masses(hn, hw)
    if node_map is not None:
        ln = [node_map(t) for t in ln]
        hn = [node_map(t) for t in hn]
    return PanelRule(tuple(breaks), n, tuple(ln), tuple(lm), tuple(hn), tuple(hm), node_map is None)


# -- variants ---------------------------------------------------------------------


@dataclass(frozen=True)
class RiemannKernel(Kernel):
    """The theta-series kernel whose transform is the Riemann Xi function."""

    name: str = "riemann"

    def omega(self, u, ctx=DEFAULT_CONTEXT):
        return _om.omega(u, ctx)

    def derivative(self, u, ctx=DEFAULT_CONTEXT):
        return _om.omega_deriv1(u, ctx)

    def support_end(self, growth, ctx=DEFAULT_CONTEXT, order=0):
        return _om.omega_cutoff(growth, ctx, order)

    def tail_bound(self, u_max, growth, ctx=DEFAULT_CONTEXT):
        # omega_cutoff guarantees this bound on the discarded tail
        return ctx.tail_tol * mpmath.mpf(10) ** -5 * 2

    def breakpoints(self, u_max, ctx):
        return _om.omega_breakpoints(u_max, ctx)

    def _masses(self, nodes, weights, order, ctx):
        return tuple(w * _om.omega_deriv(u, order, ctx) for u, w in zip(nodes, weights))

    def build_rule(self, u_max, width, order, ctx):
        refine = 1 + mpmath.mpf(order) / 2
        brk = _om.omega_breakpoints(u_max, ctx, refine)
        breaks = _partition(0, u_max, 0, width / refine, brk)
        return _weighted_rule(breaks, ctx, lambda n, w: self._masses(n, w, order, ctx))


RIEMANN = RiemannKernel()


@dataclass(frozen=True)
class StepKernel(Kernel):
    """height on [0, u0), zero beyond."""

    height: mpmath.mpf = mpmath.mpf(1)
    u0: mpmath.mpf = mpmath.mpf(1)
    name: str = "step"

    def __post_init__(self):
        h, u0 = mpmath.mpf(self.height), mpmath.mpf(self.u0)
        if not (h > 0 and u0 > 0):
            raise KernelValidationError("step kernel needs positive height and positive u0")
        object.__setattr__(self, "height", h)
        object.__setattr__(self, "u0", u0)

    def omega(self, u, ctx=DEFAULT_CONTEXT):
        return +self.height if abs(mpmath.mpf(u)) < self.u0 else mpmath.mpf(0)

    def derivative(self, u, ctx=DEFAULT_CONTEXT):
        return mpmath.mpf(0)

    def support_end(self, growth, ctx=DEFAULT_CONTEXT, order=0):
        return self.u0

    def spec(self):
        return f"step:{mpmath.nstr(self.height, 20)},{mpmath.nstr(self.u0, 20)}"


@dataclass(frozen=True)
class BesselKernel(Kernel):
    """c (1 - u^2)^(nu - 1/2) on [0, 1], normalised so the transform is 1 at z = 0.

    The transform is Gamma(nu + 1) (2/z)^nu I_nu(z).  Quadrature runs in the
    angle u = sin(phi), where the weight becomes c cos(phi)^(2 nu); for
    non-integer 2 nu the panels are graded geometrically towards phi = pi/2.
    """

    nu: mpmath.mpf = mpmath.mpf(1) / 2
    name: str = "bessel"

    def __post_init__(self):
        nu = mpmath.mpf(self.nu)
        if not nu >= mpmath.mpf(1) / 2:
            raise DomainError("bessel kernel requires nu >= 1/2")
        object.__setattr__(self, "nu", nu)

    def norm(self, ctx=DEFAULT_CONTEXT):
        with ctx.workdps():
            nu = self.nu
            return mpmath.gamma(nu + 1) / (mpmath.gamma(nu + mpmath.mpf(1) / 2) * mpmath.gamma(mpmath.mpf(3) / 2))

    def omega(self, u, ctx=DEFAULT_CONTEXT):
        with ctx.workdps():
            u = abs(mpmath.mpf(u))
            if u >= 1:
                return mpmath.mpf(0)
            return self.norm(ctx) * (1 - u * u) ** (self.nu - mpmath.mpf(1) / 2)

    def derivative(self, u, ctx=DEFAULT_CONTEXT):
        with ctx.workdps():
            u = mpmath.mpf(u)
            if abs(u) >= 1 or self.nu == mpmath.mpf(1) / 2:
                return mpmath.mpf(0)
            e = self.nu - mpmath.mpf(1) / 2
            return -self.norm(ctx) * 2 * e * u * (1 - u * u) ** (e - 1)

    def support_end(self, growth, ctx=DEFAULT_CONTEXT, order=0):
        return mpmath.mpf(1)

    def spec(self):
        return f"bessel:{mpmath.nstr(self.nu, 20)}"

    def _smooth(self) -> bool:
        return 2 * self.nu == int(2 * self.nu)

    def build_rule(self, u_max, width, order, ctx):
        if order != 0:
            raise DomainError("bessel kernel rules are built for order 0 only")
        half_pi = mpmath.pi / 2
        cuts = []
        if not self._smooth():
            # geometric grading; the skipped end piece is below tail_tol
            d = BASE_WIDTH
            p = 2 * self.nu + 1
            while self.norm(ctx) * d ** p / p > ctx.tail_tol * mpmath.mpf(10) ** -5:
                cuts.append(half_pi - d)
                d *= mpmath.mpf(4) / 5
            end = half_pi - d
        else:
            end = half_pi
        breaks = _partition(0, end, 0, width, cuts)
        c = self.norm(ctx)
        e = 2 * self.nu

        def masses(nodes, weights):
            return tuple(w * c * mpmath.cos(t) ** e for t, w in zip(nodes, weights))

        return _weighted_rule(breaks, ctx, masses, node_map=mpmath.sin)

    def tail_bound(self, u_max, growth, ctx=DEFAULT_CONTEXT):
        if self._smooth():
            return mpmath.mpf(0)
        return ctx.tail_tol * mpmath.mpf(10) ** -5 * mpmath.exp(abs(growth))


@dataclass(frozen=True)
class TabulatedKernel(Kernel):
    """Piecewise-linear kernel through (knots, values); zero beyond the last knot."""

    knots: tuple = ()
    values: tuple = ()
    name: str = "tabulated"
    source: str = ""

    def __post_init__(self):
        knots = tuple(mpmath.mpf(k) for k in self.knots)
        values = tuple(mpmath.mpf(v) for v in self.values)
        if len(knots) != len(values) or len(knots) < 2:
            raise KernelValidationError("tabulated kernel needs at least two (u, omega) rows")
        if knots[0] != 0:
            raise KernelValidationError(f"first knot must be u = 0, got {knots[0]}")
        for i in range(1, len(knots)):
            if not knots[i] > knots[i - 1]:
                raise KernelValidationError(
                    f"knots must be strictly ascending: row {i} has u = {knots[i]} after {knots[i - 1]}"
                )
        for i, v in enumerate(values):
            if v < 0:
                raise KernelValidationError(f"kernel must be nonnegative: row {i} (u = {knots[i]}) has value {v}")
        for i in range(1, len(values)):
            if values[i] > values[i - 1]:
                raise KernelValidationError(
                    f"kernel must be nonincreasing: row {i} (u = {knots[i]}) rises from {values[i - 1]} to {values[i]}"
                )
        if not values[0] > 0:
            raise KernelValidationError("kernel must be positive at u = 0")
        object.__setattr__(self, "knots", knots)
        object.__setattr__(self, "values", values)

    def _segment(self, u):
        i = bisect.bisect_right(self.knots, u) - 1
        return min(max(i, 0), len(self.knots) - 2)

    def omega(self, u, ctx=DEFAULT_CONTEXT):
        u = abs(mpmath.mpf(u))
        if u > self.knots[-1]:
            return mpmath.mpf(0)
        i = self._segment(u)
        k0, k1 = self.knots[i], self.knots[i + 1]
        v0, v1 = self.values[i], self.values[i + 1]
        return v0 + (v1 - v0) * ((u - k0) / (k1 - k0))

    def derivative(self, u, ctx=DEFAULT_CONTEXT):
        u = mpmath.mpf(u)
        if abs(u) > self.knots[-1]:
            return mpmath.mpf(0)
        i = self._segment(abs(u))
        s = (self.values[i + 1] - self.values[i]) / (self.knots[i + 1] - self.knots[i])
        return s if u >= 0 else -s

    def support_end(self, growth, ctx=DEFAULT_CONTEXT, order=0):
        return self.knots[-1]

    def breakpoints(self, u_max, ctx):
        return self.knots

    def spec(self):
        return f"tabulated:{self.source}" if self.source else "tabulated"


def load_tabulated(path) -> TabulatedKernel:
    """Read a two-column ``u omega`` text table ('#' comments, comma or whitespace separated)."""
    rows = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.replace(",", " ").split()
        if len(parts) != 2:
            raise KernelValidationError(f"{path}:{lineno}: expected two columns, got {len(parts)}")
        try:
            rows.append((mpmath.mpf(parts[0]), mpmath.mpf(parts[1])))
        except ValueError as exc:
            raise KernelValidationError(f"{path}:{lineno}: {exc}") from None
    return TabulatedKernel(tuple(r[0] for r in rows), tuple(r[1] for r in rows), source=str(path))


def parse_kernel_spec(spec: str) -> Kernel:
    """riemann | step:HEIGHT,U0 | bessel:NU | tabulated:PATH"""
    kind, _, arg = spec.strip().partition(":")
    kind = kind.lower()
    try:
        if kind == "riemann" and not arg:
            return RIEMANN
        if kind == "step":
            h, u0 = arg.split(",")
            return StepKernel(mpmath.mpf(h), mpmath.mpf(u0))
        if kind == "bessel":
            return BesselKernel(mpmath.mpf(arg))
    except (ValueError, TypeError) as exc:
        if isinstance(exc, (KernelValidationError, DomainError)):
            raise
        raise KernelValidationError(f"malformed kernel spec {spec!r}") from None
    if kind == "tabulated" and arg:
        return load_tabulated(arg)
    raise KernelValidationError(f"unknown kernel spec {spec!r}")


# -- cached rules -----------------------------------------------------------------


@dataclass(frozen=True)
class FixedWeights:
    """Per-panel rule weights as integers scaled by 2**bits, plus per-panel L1 sums."""

    bits: int
    lo: tuple
    hi: tuple
    panel_l1: tuple


@dataclass(frozen=True)
class KernelRule:
    rule: PanelRule
    u_max: mpmath.mpf
    tail: mpmath.mpf
    l1_norm: mpmath.mpf
    fixed: FixedWeights | None = None


def _fixed_weights(rule: PanelRule) -> FixedWeights:
    bits = mpmath.mp.prec + 32
    to_fixed = mpmath.libmp.to_fixed
    n, m = rule.order, 2 * rule.order
    lo = tuple(tuple(to_fixed(w._mpf_, bits) for w in rule.lo_weights[p * n:(p + 1) * n])
               for p in range(rule.n_panels))
    hi = tuple(tuple(to_fixed(w._mpf_, bits) for w in rule.hi_weights[p * m:(p + 1) * m])
               for p in range(rule.n_panels))
    l1 = tuple(mpmath.fsum(abs(w) for w in rule.hi_weights[p * m:(p + 1) * m]) for p in range(rule.n_panels))
    return FixedWeights(bits, lo, hi, l1)


def _level(lam) -> int:
    lam = abs(mpmath.mpf(lam))
    if lam * BASE_WIDTH <= mpmath.pi / 2:
        return 0
    return max(1, math.ceil(LEVELS_PER_OCTAVE * math.log2(float(lam * BASE_WIDTH * 2 / mpmath.pi))))


@functools.lru_cache(maxsize=128)
def _cached_rule(kernel: Kernel, ctx: PrecisionContext, level: int, growth_q: int, order: int) -> KernelRule:
    with ctx.workdps():
        growth = mpmath.mpf(growth_q) / 4
        width = BASE_WIDTH / mpmath.mpf(2) ** (mpmath.mpf(level) / LEVELS_PER_OCTAVE)
        u_max = kernel.support_end(growth, ctx, order)
        rule = kernel.build_rule(u_max, width, order, ctx)
        l1 = mpmath.fsum(abs(m) for m in rule.hi_weights)
        fixed = _fixed_weights(rule) if rule.affine else None
        return KernelRule(rule, u_max, kernel.tail_bound(u_max, growth, ctx), l1, fixed)


def kernel_rule(kernel: Kernel, x, y, ctx: PrecisionContext = DEFAULT_CONTEXT, order: int = 0,
                growth=None) -> KernelRule:
    """Rule for integrands Omega^(order)(u) g(u) with |g| <= e^{|x| u} oscillating at rate |y|."""
    g = abs(mpmath.mpf(x)) if growth is None else abs(mpmath.mpf(growth))
    growth_q = int(mpmath.ceil(g * 4))
    return _cached_rule(kernel, ctx, _level(y), growth_q, order)


def _hyperbolic(nodes, z, odd: bool):
    x, y = z.real, z.imag
    if x == 0:
        if odd:
            return [mpmath.mpc(0, mpmath.sin(u * y)) for u in nodes]
        return [mpmath.cos(u * y) for u in nodes]
    if y == 0:
        f = mpmath.sinh if odd else mpmath.cosh
        return [f(u * x) for u in nodes]
    f = mpmath.sinh if odd else mpmath.cosh
    return [f(u * z) for u in nodes]


def _ch_sh(z):
    """t -> (ch(z t), sh(z t)); on the imaginary axis (cos(y t), sin(y t)) instead."""
    x, y = z.real, z.imag
    if x == 0:
        return lambda t: mpmath.cos_sin(y * t)
    if y == 0:
        return lambda t: (mpmath.cosh(x * t), mpmath.sinh(x * t))
    return lambda t: (mpmath.cosh(z * t), mpmath.sinh(z * t))


def _fixed_transform(kr: KernelRule, z, odd: bool, ctx: PrecisionContext):
    """Sum over panels by the addition theorem ch(z(c + h t)) = ch(zc) ch(zht) + sh(zc) sh(zht).

    Each panel contributes ch(zc) <w, ch(zht)> + sh(zc) <w, sh(zht)>, with the
    inner products taken exactly in scaled integers.  Panels of equal width
    share their tables.  Returns (value, abs_err, l1_bound).
    """
    r, fw = kr.rule, kr.fixed
    bits = fw.bits
    xl, _ = gauss_legendre(r.order, ctx.work_dps)
    xh, _ = gauss_legendre(2 * r.order, ctx.work_dps)
    pair = _ch_sh(z)
    axis = z.real == 0
    real_z = axis or z.imag == 0
    parts = (lambda v: v,) if real_z else (lambda v: v.real, lambda v: v.imag)
    unit = mpmath.ldexp(mpmath.mpf(1), -2 * bits)
    tables = {}
    total = 0
    err = 0
    bound = 0
    breaks = r.breaks
    for p in range(r.n_panels):
        a, b = breaks[p], breaks[p + 1]
        c, h = (a + b) / 2, (b - a) / 2
        with mpmath.workprec(mpmath.mp.prec - 16):
            key = +h  # widths equal up to rounding share a table
        tab = tables.get(key)
        if tab is None:
            tab = tables[key] = (_table(pair, h, xl, bits, parts), _table(pair, h, xh, bits, parts))
        cc, sc = pair(c)
        sums = []
        for weights, (cos_parts, sin_parts, mag) in zip((fw.lo[p], fw.hi[p]), tab):
            pc = [sum(map(operator.mul, weights, t)) for t in cos_parts]
            ps = [sum(map(operator.mul, weights, t)) for t in sin_parts]
            pc = _combine(pc, unit)
            ps = _combine(ps, unit)
            if axis:
                v = sc * pc + cc * ps if odd else cc * pc - sc * ps
            else:
                v = sc * pc + cc * ps if odd else cc * pc + sc * ps
            sums.append(v)
        ql, qh = sums
        total += qh
        err += abs(qh - ql)
        growth = 1 if axis else (abs(cc) + abs(sc)) * tab[1][2]
        bound += fw.panel_l1[p] * growth
    if axis and odd:
        total = mpmath.mpc(0, total)
    return total, err, bound


def _combine(parts, unit):
    if len(parts) == 1:
        return mpmath.mpf(parts[0]) * unit
    return mpmath.mpc(mpmath.mpf(parts[0]) * unit, mpmath.mpf(parts[1]) * unit)


def _table(pair, h, ref_nodes, bits, parts):
    """Scaled-integer tables of ch(z h t) and sh(z h t) over the reference nodes.

    The nodes are antisymmetric, so only the nonnegative half is evaluated;
    ch is even in t and sh odd.  Also returns max(|ch|, |sh|) over the nodes.
    """
    to_fixed = mpmath.libmp.to_fixed
    n = len(ref_nodes)
    vals = [pair(h * ref_nodes[k]) for k in range(n // 2, n)]
    mag = max(max(abs(a), abs(b)) for a, b in vals)
    mirror = 1 if n % 2 else 0  # the zero node is not repeated
    cos_parts, sin_parts = [], []
    for part in parts:
        ch = [to_fixed(part(a)._mpf_, bits) for a, _ in vals]
        sh = [to_fixed(part(b)._mpf_, bits) for _, b in vals]
        cos_parts.append(ch[mirror:][::-1] + ch)
        sin_parts.append([-v for v in sh[mirror:][::-1]] + sh)
    return cos_parts, sin_parts, mag


def kernel_transform(kernel: Kernel, z, ctx: PrecisionContext = DEFAULT_CONTEXT, *, order: int = 0,
                     odd: bool = False):
    """int_0^inf Omega^(order)(u) ch(u z) du (sh if ``odd``) with its error estimate."""
    with ctx.workdps():
        z = mpmath.mpc(z)
        kr = kernel_rule(kernel, z.real, z.imag, ctx, order)
        r = kr.rule
        if kr.fixed is not None:
            total, err, scale = _fixed_transform(kr, z, odd, ctx)
        else:
            total, err, scale = r.apply(_hyperbolic(r.lo_nodes, z, odd), _hyperbolic(r.hi_nodes, z, odd))
        # accumulated rounding in the weighted sum, relative to its L1 size
        err += kr.tail + scale * mpmath.mpf(10) ** (3 - ctx.work_dps)
        ok = err <= ctx.tail_tol * max(scale, abs(total))
        return mpmath.mpc(total), ErrorEstimate(err, bool(ok))


def kernel_xi(kernel: Kernel, z, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Cosh transform of the kernel, returned as an XiValue."""
    from .xi_engine import XiValue

    val, err = kernel_transform(kernel, z, ctx)
    return XiValue(val, err, "cosh_integral")


def kernel_moment(kernel: Kernel, k: int, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """int_0^inf Omega(u) u^k du."""
    if k < 0:
        raise DomainError("moment order must be nonnegative")
    with ctx.workdps():
        kr = kernel_rule(kernel, 0, 0, ctx, growth=max(1, k))
        r = kr.rule
        val, _, _ = r.apply([u ** k for u in r.lo_nodes], [u ** k for u in r.hi_nodes])
        return val


# -- closed forms -----------------------------------------------------------------


def step_xi_closed(kernel: StepKernel, z, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """height * sh(u0 z) / z, with value height*u0 at z = 0."""
    with ctx.workdps():
        z = mpmath.mpc(z)
        if z == 0:
            return mpmath.mpc(kernel.height * kernel.u0)
        return kernel.height * mpmath.sinh(kernel.u0 * z) / z


def step_modulus_sq(kernel: StepKernel, x, y, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """|Xi(x+iy)|^2 for the step kernel in its real (cosh minus cos) form."""
    with ctx.workdps():
        x, y = mpmath.mpf(x), mpmath.mpf(y)
        r2 = x * x + y * y
        if r2 == 0:
            return (kernel.height * kernel.u0) ** 2
        num = mpmath.cosh(2 * kernel.u0 * x) - mpmath.cos(2 * kernel.u0 * y)
        return kernel.height ** 2 * num / (2 * r2)


def bessel_xi(nu, z, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Gamma(nu+1) (2/z)^nu I_nu(z) by quadrature of the Bessel kernel."""
    return kernel_transform(BesselKernel(mpmath.mpf(nu)), z, ctx)[0]


def bessel_xi_closed(nu, z, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Same quantity from mpmath's modified Bessel function (reference value)."""
    with ctx.workdps():
        nu, z = mpmath.mpf(nu), mpmath.mpc(z)
        if z == 0:
            return mpmath.mpc(1)
        return mpmath.gamma(nu + 1) * (2 / z) ** nu * mpmath.besseli(nu, z)
