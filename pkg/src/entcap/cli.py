"""Command line front end.

Exit codes: 0 success, 1 verification failed, 2 usage error, 3 parse error,
4 gate not unitary, 5 reconstruction failure, 6 conflicting inputs,
7 unknown measure, 8 I/O error, 9 other numerical failure.
"""
from __future__ import annotations

import argparse
import io
import json
import math
import re
import sys
from pathlib import Path

import numpy as np

from . import ancilla, canonical, capability
from .errors import NotUnitary, NumericalFailure, ReconstructionFailure, UnknownMeasure
from .magic import concurrence
from .numerics import random_unitary
from .states import Measure, PureState

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_NOT_UNITARY = 4
EXIT_RECONSTRUCTION = 5
EXIT_CONFLICT = 6
EXIT_MEASURE = 7
EXIT_IO = 8
EXIT_NUMERICAL = 9


class ParseError(ValueError):
    pass


class ConflictingInputs(ValueError):
    pass


class _Exit(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


_ANGLE = re.compile(r"^([+-]?)(\d*\.?\d*)\s*\*?\s*pi(?:\s*/\s*(\d+(?:\.\d*)?))?$")


def parse_angle(text: str) -> float:
    """Decimal radians, or a multiple of pi such as ``pi/4``, ``3pi/8``, ``-pi``."""
    t = text.strip().lower()
    m = _ANGLE.match(t)
    if m:
        sign, coef, den = m.groups()
        val = (float(coef) if coef not in ("", ".") else 1.0) * math.pi
        if den:
            val /= float(den)
        return -val if sign == "-" else val
    try:
        return float(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an angle: {text!r}") from None


def fmt(x: float) -> str:
    """12 significant digits, positional notation."""
    x = float(x)
    if x == 0:
        return "0"
    return np.format_float_positional(x, precision=12, unique=False, fractional=False, trim="-")


def num(x: float) -> float:
    return float(fmt(x))


def cmatrix(m) -> list:
    m = np.asarray(m)
    if m.ndim == 1:
        return [[num(z.real), num(z.imag)] for z in m]
    return [cmatrix(row) for row in m]


def read_gate(path) -> tuple[np.ndarray, str | None]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise _Exit(EXIT_IO, f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
        rows = doc["matrix"] if isinstance(doc, dict) else doc
        gate = np.array([[complex(float(re_), float(im)) for re_, im in row] for row in rows])
    except (ValueError, KeyError, TypeError) as exc:
        raise ParseError(f"{path}: not a gate file ({exc})") from None
    if gate.shape != (4, 4):
        raise ParseError(f"{path}: matrix must be 4x4, got {gate.shape}")
    name = doc.get("name") if isinstance(doc, dict) else None
    return gate, name


def write_gate(path, gate, name: str | None = None):
    doc = {"name": name, "matrix": cmatrix(gate)} if name else {"matrix": cmatrix(gate)}
    Path(path).write_text(json.dumps(doc, indent=1) + "\n")


def capability_section(rep: capability.CapabilityReport) -> dict:
    a, b = rep.best_input
    return {
        "alpha_chamber": [num(v) for v in rep.alpha],
        "c_max": num(rep.c_max),
        "perfect_entangler": bool(rep.perfect_entangler),
        "achieving_pair": list(rep.achieving_pair) if rep.achieving_pair else None,
        "best_input": {"a": cmatrix(a), "b": cmatrix(b), "state": cmatrix(np.kron(a, b))},
        "output_state": cmatrix(rep.output_state.amplitudes),
    }


def gate_report(gate, name: str | None = None) -> dict:
    rep = capability.capability_of_gate(gate)
    dec = rep.decomposition
    doc = {"name": name} if name else {}
    doc.update(
        {
            "alpha_raw": [num(v) for v in dec.alpha],
            "symmetries": [[s.kind, s.i, s.j] for s in rep.symmetries],
            "global_phase": num(dec.phase),
            "locals": {k: cmatrix(getattr(dec, k)) for k in ("ua", "ub", "va", "vb")},
            "residual": num(dec.residual(gate)),
        }
    )
    doc.update(capability_section(rep))
    return doc


def _complex(arr) -> np.ndarray:
    a = np.asarray(arr, dtype=float)
    return a[..., 0] + 1j * a[..., 1]


def check_report(doc: dict, gate) -> dict:
    """Rebuild the decomposition and best input from a report; return residuals."""
    loc = {k: _complex(v) for k, v in doc["locals"].items()}
    rec = (
        np.exp(1j * doc["global_phase"])
        * np.kron(loc["ua"], loc["ub"])
        @ canonical.build_ud(doc["alpha_raw"])
        @ np.kron(loc["va"], loc["vb"])
    )
    inp = _complex(doc["best_input"]["state"])
    out = PureState.normalized(np.asarray(gate) @ inp)
    return {
        "reconstruction": float(np.abs(rec - gate).max()),
        "c_max": abs(concurrence(out) - doc["c_max"]),
    }


def _dump(doc: dict, out) -> str:
    text = json.dumps(doc, indent=1) + "\n"
    if out:
        try:
            Path(out).write_text(text)
        except OSError as exc:
            raise _Exit(EXIT_IO, f"cannot write {out}: {exc.strerror}") from None
    else:
        sys.stdout.write(text)
    return text


def cmd_decompose(args) -> int:
    gate, name = read_gate(args.path)
    doc = gate_report(gate, name)
    _dump(doc, args.out)
    return EXIT_OK if doc["residual"] < 1e-8 else EXIT_RECONSTRUCTION


def cmd_capability(args) -> int:
    if (args.path is None) == (args.alphas is None):
        raise ConflictingInputs("give exactly one of a gate file or --alphas")
    if args.path is not None:
        gate, name = read_gate(args.path)
        doc = gate_report(gate, name)
        target = gate
    else:
        point, steps = canonical.canonicalize_capability(
            [canonical._reduce(a) for a in args.alphas]
        )
        doc = {"alpha_input": [num(a) for a in args.alphas]}
        doc.update(capability_section(capability.best_input(point)))
        target = point
    if args.oracle:
        val, _ = capability.brute_force_max_concurrence(target, args.oracle)
        doc["oracle"] = {"n_grid": args.oracle, "value": num(val), "discrepancy": num(abs(val - doc["c_max"]))}
    _dump(doc, args.out)
    return EXIT_OK


def fig1_csv(steps: int, alpha_max: float) -> str:
    buf = io.StringIO()
    buf.write("alpha,e_renyi_me,e_renyi_pv\n")
    for row in ancilla.fig1_scan(alpha_max, steps):
        buf.write(f"{fmt(row.alpha)},{fmt(row.e_me)},{fmt(row.e_pv)}\n")
    buf.write(f"# crossover_alpha = {fmt(ancilla.example2_crossover())}\n")
    return buf.getvalue()


def cmd_fig1(args) -> int:
    if args.steps < 2:
        raise _Exit(EXIT_USAGE, "--steps must be at least 2")
    text = fig1_csv(args.steps, args.alpha_max)
    if args.out:
        try:
            Path(args.out).write_text(text)
        except OSError as exc:
            raise _Exit(EXIT_IO, f"cannot write {args.out}: {exc.strerror}") from None
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_optimize(args) -> int:
    measure = Measure.parse(args.measure)
    if measure.kind == "concurrence":
        raise UnknownMeasure("concurrence is not defined for the 4x4 ancilla bipartition")
    if args.budget < ancilla.MIN_BUDGET:
        raise _Exit(EXIT_USAGE, f"--budget must be at least {ancilla.MIN_BUDGET}")
    res = ancilla.optimize_measure(args.alphas, measure, args.budget)
    names = ("ta", "tb", "theta_a", "phi_a", "theta_b", "phi_b")
    doc = {
        "alpha": [num(a) for a in args.alphas],
        "measure": str(measure),
        "budget": args.budget,
        "value": num(res.value),
        "sa": num(res.best.sa),
        "sb": num(res.best.sb),
        "params": {k: num(v) for k, v in zip(names, res.params)},
    }
    _dump(doc, args.out)
    return EXIT_OK


def verify_summary(seed: int, trials: int, oracle_trials: int = 20, n_grid: int = 48) -> tuple[str, bool]:
    """Random round-trip and oracle-agreement checks; deterministic text summary."""
    rng = np.random.default_rng(seed)
    ok_rt = 0
    worst_res = 0.0
    for _ in range(trials):
        g = random_unitary(4, rng)
        try:
            dec = canonical.decompose(g)
        except NumericalFailure:
            continue
        res = dec.residual(g)
        worst_res = max(worst_res, res)
        a = dec.alpha
        if res < 1e-8 and math.pi / 2 > a[0] >= a[1] >= a[2] >= 0:
            ok_rt += 1
    ok_or = 0
    worst_gap = 0.0
    for _ in range(oracle_trials):
        a = sorted(rng.uniform(0.0, math.pi / 4, 3), reverse=True)
        gap = abs(capability.max_concurrence(a) - capability.brute_force_max_concurrence(a, n_grid)[0])
        worst_gap = max(worst_gap, gap)
        ok_or += gap < 1e-3
    lines = [
        f"seed {seed}",
        f"round_trip {ok_rt}/{trials} pass (max residual {worst_res:.3e})",
        f"oracle {ok_or}/{oracle_trials} pass (max |delta| {worst_gap:.3e})",
    ]
    passed = ok_rt == trials and ok_or == oracle_trials
    lines.append("PASS" if passed else "FAIL")
    return "\n".join(lines) + "\n", passed


def cmd_verify(args) -> int:
    if args.trials < 1:
        raise _Exit(EXIT_USAGE, "--trials must be at least 1")
    text, passed = verify_summary(args.seed, args.trials, args.oracle_trials, args.n_grid)
    sys.stdout.write(text)
    return EXIT_OK if passed else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="entcap", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("decompose", help="canonical decomposition report for a gate file")
    d.add_argument("path")
    d.add_argument("--out")
    d.set_defaults(func=cmd_decompose)

    c = sub.add_parser("capability", help="maximal concurrence from product inputs")
    c.add_argument("path", nargs="?")
    c.add_argument("--alphas", nargs=3, type=parse_angle, metavar=("AX", "AY", "AZ"))
    c.add_argument("--oracle", type=int, metavar="N", help="also run the brute-force oracle on an N grid")
    c.add_argument("--out")
    c.set_defaults(func=cmd_capability)

    f = sub.add_parser("fig1", help="Renyi curves of the (a, a, a) example as CSV")
    f.add_argument("--steps", type=int, default=101)
    f.add_argument("--alpha-max", type=parse_angle, default=math.pi / 4)
    f.add_argument("--out")
    f.set_defaults(func=cmd_fig1)

    o = sub.add_parser("optimize", help="ancilla-assisted input search")
    o.add_argument("--alphas", nargs=3, type=parse_angle, required=True, metavar=("AX", "AY", "AZ"))
    o.add_argument("--measure", required=True, help="entropy, schmidt, monotone:n or renyi")
    o.add_argument("--budget", type=int, default=ancilla.MIN_BUDGET)
    o.add_argument("--out")
    o.set_defaults(func=cmd_optimize)

    v = sub.add_parser("verify", help="random round-trip and oracle agreement checks")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--oracle-trials", type=int, default=20)
    v.add_argument("--n-grid", type=int, default=48)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Exit as exc:
        print(f"entcap: {exc}", file=sys.stderr)
        return exc.code
    except ParseError as exc:
        print(f"entcap: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NotUnitary as exc:
        print(f"entcap: not unitary: {exc}", file=sys.stderr)
        return EXIT_NOT_UNITARY
    except ReconstructionFailure as exc:
        print(f"entcap: reconstruction failure: {exc}", file=sys.stderr)
        return EXIT_RECONSTRUCTION
    except ConflictingInputs as exc:
        print(f"entcap: conflicting inputs: {exc}", file=sys.stderr)
        return EXIT_CONFLICT
    except UnknownMeasure as exc:
        print(f"entcap: unknown measure: {exc}", file=sys.stderr)
        return EXIT_MEASURE
    except NumericalFailure as exc:
        print(f"entcap: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
