"""Command line: tables, invariant suites and zero scans.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage error,
3 a numerical result did not converge.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import mpmath

from . import __version__
from .kernel_family import RIEMANN, KernelValidationError, kernel_transform, parse_kernel_spec
from .meanvalue import BoundViolation, u0_on_imaginary_axis, u0_on_real_axis
from .numerics import DomainError, PrecisionContext
from .parallel import pmap
from .verify import SUITES, run_suite
from .xi_engine import amplification
from .zero_finder import (
    _atomic_write,
    count_vs_density,
    hadamard_sequence,
    scan_zeros,
    write_zeros_csv,
)
from .zeta_ref import zeta

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NONCONV = 0, 1, 2, 3

TABLES = {
    "omega": ("u", "omega", "Omega(u) on the positive axis"),
    "omega1": ("u", "omega_deriv1", "first derivative of Omega(u)"),
    "xi_imag": ("y", "xi", "Xi(iy) on the imaginary axis"),
    "xi_real": ("x", "xi", "Xi(x) on the real axis"),
    "zeta_critical": ("t", "abs_zeta", "|zeta(1/2 + it)| on the critical line"),
    "u0_imag": ("y", "u0", "mean-value parameter u0(0, y)"),
    "u0_real": ("x", "u0", "mean-value parameter u0(x, 0)"),
    "alpha": ("y", "alpha", "amplification envelope alpha(y)"),
}

DEFAULTS = {"digits": 50, "tol": None, "out": None, "threads": 1, "branch": 0, "kernel": "riemann"}


class UsageError(Exception):
    pass


@dataclass
class RunManifest:
    command_line: list
    digits: int
    tolerances: dict
    wall_time: float = 0.0
    outputs: list = field(default_factory=list)
    library_version: str = __version__

    def write(self, path: Path):
        data = {
            "command_line": self.command_line,
            "digits": self.digits,
            "tolerances": self.tolerances,
            "wall_time_s": round(self.wall_time, 3),
            "outputs": self.outputs,
            "library_version": self.library_version,
        }
        _atomic_write(path, lambda fh: fh.write(json.dumps(data, indent=2) + "\n"))


# -- configuration ---------------------------------------------------------------


def read_config(path) -> dict:
    """key = value lines; '#' starts a comment."""
    out = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror}") from None
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if not sep or key not in DEFAULTS:
            raise UsageError(f"{path}:{lineno}: expected one of {', '.join(DEFAULTS)} as key=value")
        out[key] = value.strip()
    return out


def resolve_options(args: argparse.Namespace) -> dict:
    """Flags override the config file, which overrides the defaults."""
    opts = dict(DEFAULTS)
    if args.config:
        opts.update(read_config(args.config))
    for key in DEFAULTS:
        v = getattr(args, key, None)
        if v is not None:
            opts[key] = v
    try:
        opts["digits"] = int(opts["digits"])
        opts["threads"] = max(1, int(opts["threads"]))
        opts["branch"] = int(opts["branch"])
        if opts["tol"] is not None:
            opts["tol"] = mpmath.mpf(opts["tol"])
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad option value: {exc}") from None
    return opts


def make_context(opts) -> PrecisionContext:
    try:
        return PrecisionContext(digits=opts["digits"], tail_tol=opts["tol"])
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from None


# -- table ---------------------------------------------------------------------


def _table_row(args):
    name, x, ctx, branch, kernel_spec = args
    kernel = parse_kernel_spec(kernel_spec)
    ok = True
    with ctx.workdps():
        if name == "omega":
            val = kernel.omega(x, ctx)
        elif name == "omega1":
            val = kernel.derivative(x, ctx)
        elif name in ("xi_imag", "xi_real"):
            z = mpmath.mpc(0, x) if name == "xi_imag" else mpmath.mpc(x, 0)
            v, err = kernel_transform(kernel, z, ctx)
            val, ok = v.real, err.converged
        elif name == "zeta_critical":
            zv = zeta(mpmath.mpc(mpmath.mpf(1) / 2, x), ctx)
            val, ok = abs(zv.value), zv.err.converged
        elif name == "u0_imag":
            s = u0_on_imaginary_axis(x, branch, kernel, ctx)
            val, ok = s.u0, s.err.converged
        elif name == "u0_real":
            val = u0_on_real_axis(x, kernel, ctx)
        elif name == "alpha":
            val = amplification(x, ctx)
        else:
            raise UsageError(f"unknown table {name}")
        return val, ok


def _grid(start, stop, step):
    start, stop, step = mpmath.mpf(start), mpmath.mpf(stop), mpmath.mpf(step)
    if not step > 0 or stop < start:
        raise UsageError("range must satisfy start <= stop and step > 0")
    n = int(mpmath.floor((stop - start) / step + mpmath.mpf("1e-9")))
    return [start + step * j for j in range(n + 1)]


PLOT_TEMPLATE = '''"""Plot {csv_name}; generated alongside the data file."""
import csv
import matplotlib.pyplot as plt

with open({csv_path!r}) as fh:
    rows = [r for r in csv.reader(line for line in fh if not line.startswith("#"))]
header, rows = rows[0], rows[1:]
xs = [float(r[0]) for r in rows]
ys = [float(r[1]) for r in rows]
plt.plot(xs, ys)
plt.xlabel(header[0])
plt.ylabel(header[1])
plt.title({title!r})
plt.axhline(0, color="grey", linewidth=0.5)
plt.savefig({png!r}, dpi=150)
'''


def cmd_table(args, opts, ctx) -> tuple:
    name = args.function
    xcol, ycol, title = TABLES[name]
    with ctx.workdps():
        xs = _grid(args.start, args.stop, args.step)
        rows = pmap(_table_row, [(name, x, ctx, opts["branch"], opts["kernel"]) for x in xs], opts["threads"])
    out = Path(opts["out"] or f"{name}.csv")
    digits = ctx.digits

    def write(fh):
        fh.write(f"# {title}; kernel={opts['kernel']}; digits={digits}\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([xcol, ycol])
        with mpmath.workdps(ctx.work_dps):
            for x, (v, _) in zip(xs, rows):
                w.writerow([mpmath.nstr(x, digits), mpmath.nstr(v, digits)])

    _atomic_write(out, write)
    outputs = [str(out)]
    if args.plot:
        script = out.with_suffix(".plot.py")
        text = PLOT_TEMPLATE.format(csv_name=out.name, csv_path=str(out), title=title,
                                    png=str(out.with_suffix(".png")))
        _atomic_write(script, lambda fh: fh.write(text))
        outputs.append(str(script))
    print(f"wrote {len(rows)} rows to {out}")
    code = EXIT_OK if all(ok for _, ok in rows) else EXIT_NONCONV
    return code, outputs


# -- verify ----------------------------------------------------------------------


def cmd_verify(args, opts, ctx) -> tuple:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    checks = []
    for n in names:
        checks.extend(run_suite(n, ctx, opts["threads"]))
    lines = [c.line() for c in checks]
    print("name\tresidual\ttolerance\tverdict")
    print("\n".join(lines))
    outputs = []
    if opts["out"]:
        out = Path(opts["out"])
        _atomic_write(out, lambda fh: fh.write("name\tresidual\ttolerance\tverdict\n" + "\n".join(lines) + "\n"))
        outputs.append(str(out))
    return (EXIT_OK if all(c.passed for c in checks) else EXIT_FAIL), outputs


# -- zeros -----------------------------------------------------------------------


def cmd_zeros(args, opts, ctx) -> tuple:
    kernel = parse_kernel_spec(opts["kernel"])
    zs = scan_zeros(kernel, args.Y_max, ctx=ctx, workers=opts["threads"])
    out = Path(opts["out"] or "zeros.csv")
    write_zeros_csv(out, zs, ctx.digits)
    outputs = [str(out)]
    n, nf, delta = count_vs_density(args.Y_max, zs, ctx)
    print(f"kernel {kernel.spec()}: {n} zeros up to {args.Y_max}")
    if kernel is RIEMANN:
        print(f"density law {mpmath.nstr(nf, 8)}, difference {mpmath.nstr(delta, 6)}")
    if args.hadamard and zs:
        seq = hadamard_sequence(zs, mpmath.mpf(1) / 2, ctx=ctx)
        hpath = out.with_name(out.stem + "_hadamard.csv")

        def write(fh):
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["K", "partial_product", "gap"])
            with mpmath.workdps(ctx.work_dps):
                for k, p in enumerate(seq, 1):
                    w.writerow([k, mpmath.nstr(p.real, ctx.digits), mpmath.nstr(mpmath.mpf(1) / 2 - p.real, 10)])

        _atomic_write(hpath, write)
        outputs.append(str(hpath))
    bad = [z for z in zs if z.status == "max_iterations"]
    return (EXIT_NONCONV if bad else EXIT_OK), outputs


# -- entry point -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--digits", type=int, help="working precision in decimal digits (default 50)")
    common.add_argument("--tol", help="relative truncation tolerance (default 10^-(digits+10))")
    common.add_argument("--out", help="output file")
    common.add_argument("--config", help="key=value file with defaults for the flags above")
    common.add_argument("--threads", type=int, help="worker processes")
    common.add_argument("--branch", type=int, help="arcsine branch for u0 tables")
    common.add_argument("--kernel", help="riemann | step:H,U0 | bessel:NU | tabulated:PATH")

    p = argparse.ArgumentParser(prog="omegaxi", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", parents=[common], help="tabulate a function on a grid")
    t.add_argument("function", choices=sorted(TABLES))
    t.add_argument("--start", default="0")
    t.add_argument("--stop", default="4")
    t.add_argument("--step", default="0.05")
    t.add_argument("--plot", action="store_true", help="also write a matplotlib script")

    v = sub.add_parser("verify", parents=[common], help="run an invariant suite")
    v.add_argument("suite", choices=sorted(SUITES) + ["all"])

    z = sub.add_parser("zeros", parents=[common], help="scan the imaginary axis for zeros")
    z.add_argument("Y_max", type=float)
    z.add_argument("--hadamard", action="store_true", help="also write partial products at z = 1/2")
    return p


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    t0 = time.perf_counter()
    try:
        opts = resolve_options(args)
        ctx = make_context(opts)
        handler = {"table": cmd_table, "verify": cmd_verify, "zeros": cmd_zeros}[args.command]
        code, outputs = handler(args, opts, ctx)
    except (UsageError, KernelValidationError, DomainError) as exc:
        print(f"omegaxi: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"omegaxi: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BoundViolation as exc:
        print(f"omegaxi: check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ArithmeticError as exc:
        print(f"omegaxi: no convergence: {exc}", file=sys.stderr)
        return EXIT_NONCONV
    if outputs:
        tolerances = {"tail_tol": mpmath.nstr(ctx.tail_tol, 5)}
        man = RunManifest(["omegaxi", *argv], ctx.digits, tolerances, time.perf_counter() - t0, outputs)
        man.write(Path(outputs[0] + ".manifest.json"))
    return code


if __name__ == "__main__":
    sys.exit(main())
