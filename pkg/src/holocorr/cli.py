"""``holocorr`` command line.

Exit status is 0 on success, 1 when a computation fails (or a check does
not pass) and 2 on a usage error. Text output prints floats with 17
significant digits; JSON output has sorted keys.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .errors import HolocorrError

DEFAULT_WINDOWS = {
    "mgamma": "1,7,-3,3",
    "m1": "-12,4,-8,8",
    "mandelbrot": "-2,1,-1.5,1.5",
    "limit-set": "-2,2,-2,2",
    "julia": "-3,3,-3,3",
}

# options whose values may start with '-' (e.g. "--seed -1,0")
_VALUE_OPTIONS = {"--a", "--B", "--seed", "--window"}


class UsageError(Exception):
    pass


def parse_complex(text: str) -> complex:
    """``RE,IM`` or a bare real number."""
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected RE,IM but got {text!r}")


def parse_size(text: str) -> tuple[int, int]:
    try:
        w, h = (int(p) for p in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected WxH but got {text!r}") from None
    if w <= 0 or h <= 0:
        raise argparse.ArgumentTypeError("size must be positive")
    return w, h


def positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer but got {text!r}") from None
    if n <= 0:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return n


def fmt_float(x: float) -> str:
    return f"{x:.17g}"


def fmt_complex(z: complex) -> str:
    return f"{z.real:.17g}{z.imag:+.17g}j"


def _pair(z: complex) -> list[float]:
    return [z.real, z.imag]


def _dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _write_json(obj, path: str | None) -> None:
    text = _dump_json(obj)
    if path:
        Path(path).write_text(text + "\n", encoding="utf-8")
    print(text)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="holocorr", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("render", help="escape-time raster of a locus, limit set or Julia set")
    r.add_argument("kind", choices=sorted(DEFAULT_WINDOWS))
    r.add_argument("--window", help="xmin,xmax,ymin,ymax")
    r.add_argument("--size", type=parse_size, default=(200, 200), help="WxH")
    r.add_argument("--max-iter", type=int, default=1000)
    r.add_argument("--theta", type=float, help="parameter lune angle (radians)")
    r.add_argument("--theta-hat", type=float, help="dynamical lune angle (radians)")
    r.add_argument("--a", type=parse_complex, help="parameter a for limit-set")
    r.add_argument("--B", type=parse_complex, help="parameter B for julia")
    r.add_argument("--side", choices=("minus", "plus"), default="minus")
    r.add_argument("--petal-threshold", type=float)
    r.add_argument("--threads", type=positive_int)
    r.add_argument("--out", required=True, help="PPM output")
    r.add_argument("--csv", help="CSV dump of the escape data")
    r.add_argument("--png", help="matplotlib figure of the raster")

    v = sub.add_parser("verify", help="exact certificate or randomised invariant suite")
    vsub = v.add_subparsers(dest="target", required=True)
    va = vsub.add_parser("appendix")
    va.add_argument("--json", help="also write the report here")
    vp = vsub.add_parser("properties")
    vp.add_argument("--samples", type=positive_int, default=100)
    vp.add_argument("--seed", type=int, default=0)
    vp.add_argument("--json")

    c = sub.add_parser("centers", help="Newton solve for a superattracting centre")
    c.add_argument("--family", choices=("mgamma", "per11"), required=True)
    c.add_argument("--period", type=positive_int, required=True)
    c.add_argument("--seed", type=parse_complex, required=True)
    c.add_argument("--json", action="store_true")

    ch = sub.add_parser("chi", help="multiplier-matching image of a hyperbolic a")
    ch.add_argument("--a", type=parse_complex, required=True)
    ch.add_argument("--theta", type=float)
    ch.add_argument("--theta-hat", type=float)
    ch.add_argument("--json", action="store_true")

    m = sub.add_parser("milnor", help="Milnor model coordinate of B outside M_1")
    m.add_argument("--B", type=parse_complex, required=True)
    m.add_argument("--depth", type=positive_int, default=2000)
    m.add_argument("--json", action="store_true")

    e = sub.add_parser("entry-time", help="steps for the critical value to reach the croissant")
    e.add_argument("--a", type=parse_complex, required=True)
    e.add_argument("--max-iter", type=int, default=1000)
    e.add_argument("--theta", type=float)
    e.add_argument("--theta-hat", type=float)

    t = sub.add_parser("tile", help="images of the fundamental-domain boundary")
    t.add_argument("--a", type=parse_complex, required=True)
    t.add_argument("--depth", type=int, default=3)
    t.add_argument("--samples", type=positive_int, default=200)
    t.add_argument("--radius", type=float, default=20.0)
    t.add_argument("--out", help="CSV of polyline points")
    t.add_argument("--png", help="matplotlib figure of the tiling")
    return p


def _lune_config(args):
    from .lunes import DEFAULT_THETA, DEFAULT_THETA_HAT, LuneConfig

    theta = DEFAULT_THETA if args.theta is None else args.theta
    theta_hat = DEFAULT_THETA_HAT if args.theta_hat is None else args.theta_hat
    try:
        return LuneConfig(theta=theta, theta_hat=theta_hat)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_render(args) -> int:
    from . import loci, ppm

    try:
        window = loci.Window.parse(args.window or DEFAULT_WINDOWS[args.kind])
    except ValueError as exc:
        raise UsageError(f"bad --window: {exc}") from None
    if args.max_iter < 0:
        raise UsageError("--max-iter must be non-negative")
    width, height = args.size
    cfg = _lune_config(args)
    kind = args.kind
    if kind in ("mgamma", "m1", "mandelbrot"):
        raster = loci.render_parameter_locus(kind, window, width, height, args.max_iter, cfg,
                                             args.petal_threshold, args.threads)
    elif kind == "limit-set":
        if args.a is None:
            raise UsageError("render limit-set needs --a")
        raster = loci.render_limit_set(args.a, window, width, height, args.max_iter, cfg,
                                       args.side, args.threads)
    else:
        if args.B is None:
            raise UsageError("render julia needs --B")
        raster = loci.render_filled_julia(args.B, window, width, height, args.max_iter,
                                          args.petal_threshold, threads=args.threads)
    ppm.write_ppm(raster, args.out)
    if args.csv:
        ppm.write_csv(raster, args.csv)
    if args.png:
        from .plotting import save_raster_png

        save_raster_png(raster, args.png, title=kind)
    w = raster.window
    print(f"kind: {kind}")
    print(f"window: {fmt_float(w.xmin)},{fmt_float(w.xmax)},{fmt_float(w.ymin)},{fmt_float(w.ymax)}")
    print(f"size: {width}x{height}")
    print(f"max_iter: {args.max_iter}")
    print(f"bounded: {raster.interior_count}")
    print(f"ppm: {args.out}")
    if args.csv:
        print(f"csv: {args.csv}")
    if args.png:
        print(f"png: {args.png}")
    return 0


def cmd_verify(args) -> int:
    if args.target == "appendix":
        from .exact import appendix_certificate

        report = appendix_certificate()
        _write_json(report, args.json)
        return 0 if report["all_pass"] else 1
    from .properties import run_suite

    results = run_suite(args.samples, args.seed)
    print("name\tsamples\tworst\ttolerance\tdiscarded\tpass")
    for r in results:
        print(f"{r.name}\t{r.samples}\t{fmt_float(r.worst)}\t{fmt_float(r.tolerance)}"
              f"\t{r.discarded}\t{'pass' if r.passed else 'FAIL'}")
    ok = all(r.passed for r in results)
    if args.json:
        Path(args.json).write_text(
            _dump_json({"results": [r.as_record() for r in results], "all_pass": ok}) + "\n",
            encoding="utf-8")
    return 0 if ok else 1


def cmd_centers(args) -> int:
    from .cycles import Family, attracting_cycle, center_newton, pa_attracting_cycle

    param = center_newton(Family(args.family), args.period, args.seed)
    label = "a" if args.family == "mgamma" else "B"
    if args.json:
        cyc = attracting_cycle(param) if args.family == "mgamma" else pa_attracting_cycle(param)
        rec = {"family": args.family, "period": args.period, "param": _pair(param)}
        if cyc is not None:
            rec = cyc.as_record(args.family, param)
        print(_dump_json(rec))
    else:
        print(f"{label} = {fmt_complex(param)}")
    return 0


def cmd_chi(args) -> int:
    from .cycles import attracting_cycle, chi_hat

    cfg = _lune_config(args)
    B = chi_hat(args.a, cfg)
    cyc = attracting_cycle(args.a, cfg)
    if args.json:
        print(_dump_json({"a": _pair(args.a), "B": _pair(B), "period": cyc.period,
                          "multiplier": _pair(cyc.multiplier)}))
    else:
        print(f"B = {fmt_complex(B)}")
        print(f"period = {cyc.period}")
        print(f"multiplier = {fmt_complex(cyc.multiplier)}")
    return 0


def cmd_milnor(args) -> int:
    from .fatou import milnor_coordinate

    pt = milnor_coordinate(args.B, args.depth)
    if args.json:
        print(_dump_json(pt.as_record()))
    else:
        print(f"A = {fmt_complex(pt.A)}")
        print(f"entry_index = {pt.entry_index}")
        print(f"fatou_value = {fmt_complex(pt.fatou_value)}")
        print(f"model_point = {fmt_complex(pt.model_point)}")
    return 0


def cmd_entry_time(args) -> int:
    from .loci import entry_time

    n = entry_time(args.a, _lune_config(args), args.max_iter)
    print(f"entry_time = {'none' if n is None else n}")
    return 0


def cmd_tile(args) -> int:
    from .loci import MAX_TILE_DEPTH, tile_regular_set

    if not 0 <= args.depth <= MAX_TILE_DEPTH:
        raise UsageError(f"--depth must lie in [0, {MAX_TILE_DEPTH}]")
    lines = tile_regular_set(args.a, args.depth, args.samples, args.radius)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write("curve,arc,word,index,re,im\n")
            for k, line in enumerate(lines):
                word = "".join(line.word) or "-"
                for i, z in enumerate(line.points):
                    if math.isfinite(z.real) and math.isfinite(z.imag):
                        fh.write(f"{k},{line.arc},{word},{i},{z.real:.17g},{z.imag:.17g}\n")
    if args.png:
        from .plotting import save_tiling_png

        save_tiling_png(lines, args.png, title=f"a = {fmt_complex(args.a)}")
    print(f"curves = {len(lines)}")
    print(f"truncated = {sum(1 for line in lines if line.truncated)}")
    return 0


COMMANDS = {
    "render": cmd_render,
    "verify": cmd_verify,
    "centers": cmd_centers,
    "chi": cmd_chi,
    "milnor": cmd_milnor,
    "entry-time": cmd_entry_time,
    "tile": cmd_tile,
}


def _join_negative_values(argv: list[str]) -> list[str]:
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_OPTIONS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def run(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_negative_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"holocorr: error: {exc}", file=sys.stderr)
        return 2
    except (HolocorrError, ValueError, ArithmeticError) as exc:
        print(f"holocorr: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())
