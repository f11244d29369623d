"""Command-line front end: verify, show-rep, apply, twistor, mv-io.

Exit codes: 0 success, 1 a check or computation failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import conformal as cf
from . import reps
from .algebra import CL13, CL30, CL41, DIRAC, AlgebraError, Signature, exp, from_json, gamma5, random_mv, to_json_obj
from .suites import SUITE_NAMES, run_suites

MAPS = ("translation", "dilation", "rotation", "inversion", "transvection")
REPS = ("cl30", "cl13", "dirac-std", "dirac-weyl")


class UsageError(Exception):
    pass


def _csv(n: int | tuple[int, ...]):
    sizes = (n,) if isinstance(n, int) else n

    def parse(text: str) -> list[float]:
        try:
            vals = [float(v) for v in text.split(",")] if text.strip() else []
        except ValueError:
            raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")
        if len(vals) not in sizes:
            want = " or ".join(map(str, sizes))
            raise argparse.ArgumentTypeError(f"expected {want} numbers, got {len(vals)}")
        return vals
    return parse


def _dump(obj) -> None:
    sys.stdout.write(json.dumps(obj, ensure_ascii=False, indent=2, sort_keys=False) + "\n")


# -- verify ------------------------------------------------------------------------------

def cmd_verify(args) -> int:
    names = SUITE_NAMES if args.suite == "all" else (args.suite,)
    reports = run_suites(names, seed=args.seed, tol_scale=args.tol)
    ok = all(r.passed for r in reports)
    if args.json:
        _dump({"seed": args.seed, "tol_scale": args.tol, "pass": ok,
               "suites": [r.to_json_obj(timing=args.timing) for r in reports]})
    else:
        for r in reports:
            status = "PASS" if r.passed else "FAIL"
            print(f"{status} {r.suite:<10} {len(r.checks):3d} checks  {r.wall_time:6.2f} s")
            for c in r.checks:
                if not c.passed or args.verbose:
                    mark = "ok  " if c.passed else "FAIL"
                    print(f"    {mark} {c.name:<48} {c.residual:.3e} (tol {c.tol:.1e})")
    return 0 if ok else 1


# -- show-rep ----------------------------------------------------------------------------

def _fmt_complex(z: complex) -> str:
    re, im = round(z.real, 12) + 0.0, round(z.imag, 12) + 0.0
    if im == 0:
        return f"{re:g}"
    if re == 0:
        return {1.0: "i", -1.0: "-i"}.get(im, f"{im:g}i")
    return f"{re:g}{im:+g}i"


def _fmt_quat(q: reps.Quaternion) -> str:
    parts = []
    for v, unit in zip((q.q0, q.q1, q.q2, q.q3), ("", "i", "j", "k")):
        if v == 0:
            continue
        mag = "" if abs(v) == 1 and unit else f"{abs(v):g}"
        parts.append(("-" if v < 0 else "+") + mag + unit)
    if not parts:
        return "0"
    s = "".join(parts)
    return s[1:] if s[0] == "+" else s


def _rep_table(name: str) -> list[tuple[str, list[list[str]], list]]:
    """(generator label, formatted rows, raw JSON matrix) for each generator image."""
    out = []
    if name == "cl30":
        for k in range(1, 4):
            M = reps.pauli_rep(CL30.gen(k))
            out.append((f"e{k}", [[_fmt_complex(z) for z in row] for row in M],
                        [[[z.real, z.imag] for z in row] for row in M]))
    elif name == "cl13":
        for mu in range(4):
            m = reps.quat_rep(CL13.gen(mu))
            rows = [[_fmt_quat(m.a), _fmt_quat(m.b)], [_fmt_quat(m.c), _fmt_quat(m.d)]]
            out.append((f"γ{mu}", rows, rows))
    else:
        kind = "standard" if name == "dirac-std" else "weyl"
        gens = [(f"γ{mu}", DIRAC.gen(mu)) for mu in range(4)] + [("γ5", gamma5())]
        for lab, g in gens:
            M = reps.dirac_rep(g, kind)
            out.append((lab, [[_fmt_complex(z) for z in row] for row in M],
                        [[[z.real + 0.0, z.imag + 0.0] for z in row] for row in M]))
    return out


def cmd_show_rep(args) -> int:
    table = _rep_table(args.algebra)
    if args.json:
        _dump([{"generator": lab, "matrix": raw} for lab, _, raw in table])
        return 0
    for lab, rows, _ in table:
        width = max(len(s) for row in rows for s in row)
        print(f"{lab} =")
        for row in rows:
            print("  [ " + "  ".join(s.rjust(width) for s in row) + " ]")
    return 0


# -- apply -------------------------------------------------------------------------------

def _build_map(name: str, param):
    if name in ("translation", "transvection"):
        if param is None or len(param) != 4:
            raise UsageError(f"--param: {name} needs 4 numbers (a paravector)")
        h = cf.paravector(param)
        return cf.Translation(h) if name == "translation" else cf.Transvection(h)
    if name == "dilation":
        if param is None or len(param) != 1:
            raise UsageError("--param: dilation needs 1 number (rho > 0)")
        if not param[0] > 0:
            raise UsageError(f"--param: dilation factor must be positive, got {param[0]:g}")
        return cf.Dilation(param[0])
    if name == "rotation":
        if param is None or len(param) != 6:
            raise UsageError("--param: rotation needs 6 numbers v1,v2,v3,b23,b31,b12 (exponentiated)")
        v1, v2, v3, b23, b31, b12 = param
        gen = CL30.from_labels({"1": v1, "2": v2, "3": v3, "23": b23, "13": -b31, "12": b12})
        return cf.Rotation(exp(gen))
    if param:
        raise UsageError("--param: inversion takes no parameter")
    return cf.Inversion()


def cmd_apply(args) -> int:
    m = _build_map(args.map, args.param)
    x = cf.paravector(args.x)
    try:
        xp, delta = cf.act(cf.make_map(m), x)
    except cf.MapUndefinedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _dump({"map": args.map, "x": [float(v) for v in args.x],
           "x_prime": [float(v) + 0.0 for v in cf.coords(xp)], "delta": delta + 0.0})
    return 0


# -- twistor -----------------------------------------------------------------------------

def cmd_twistor(args) -> int:
    from .twistor import reference_twistor
    xi = np.array([args.xi[0] + 1j * args.xi[1], args.xi[2] + 1j * args.xi[3]])
    t = reference_twistor(args.x, xi)
    res = t.penrose_residual()
    _dump({"x": [float(v) for v in args.x],
           "xi": [[z.real, z.imag] for z in xi],
           "components": [[float(z.real) + 0.0, float(z.imag) + 0.0] for z in t.components],
           "penrose_residual": res})
    return 0 if res <= 1e-12 else 1


# -- mv-io -------------------------------------------------------------------------------

def cmd_mv_io(args) -> int:
    if args.random is not None:
        p, q = (int(v) for v in args.random)
        try:
            sig = Signature(p, q)
        except AlgebraError as exc:
            raise UsageError(f"--random: {exc}")
        a = random_mv(args.seed, sig, range(sig.n + 1), complex_coeffs=args.complex)
    else:
        text = sys.stdin.read() if args.input in (None, "-") else _read(args.input)
        try:
            a = from_json(text)
        except AlgebraError as exc:
            raise UsageError(f"input: {exc}")
    _dump(to_json_obj(a))
    return 0


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"--input: {exc}")


# -- parser ------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="vahlen", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", default="all", choices=("all",) + SUITE_NAMES)
    v.add_argument("--seed", type=int, default=42)
    v.add_argument("--tol", type=float, default=1.0, help="scale every tolerance by this factor")
    v.add_argument("--json", action="store_true")
    v.add_argument("--timing", action="store_true", help="include wall time in JSON (not deterministic)")
    v.add_argument("-v", "--verbose", action="store_true")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("show-rep", help="print generator images of a matrix representation")
    s.add_argument("algebra", choices=REPS)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_show_rep)

    a = sub.add_parser("apply", help="apply a conformal map to a paravector x0,x1,x2,x3")
    a.add_argument("--map", required=True, choices=MAPS)
    a.add_argument("--param", type=_csv((1, 4, 6)))
    a.add_argument("--x", required=True, type=_csv(4))
    a.set_defaults(func=cmd_apply)

    t = sub.add_parser("twistor", help="reference twistor of a point and a Weyl spinor")
    t.add_argument("--x", required=True, type=_csv(4))
    t.add_argument("--xi", required=True, type=_csv(4))
    t.set_defaults(func=cmd_twistor)

    m = sub.add_parser("mv-io", help="read, validate and re-emit multivector JSON")
    m.add_argument("--input", help="file to read ('-' or omitted: stdin)")
    m.add_argument("--random", type=_csv(2), metavar="P,Q",
                   help="emit a random element of Cl(P,Q) instead of reading")
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--complex", action="store_true")
    m.set_defaults(func=cmd_mv_io)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
