"""Command-line interface.

Usage: ``rationaldiff COMMAND --eq EQ [flags]``. Complex flag values use the
same grammar as :func:`parse_complex` (``1.5-2i``, ``-i``, ``3``). CSV splits
each complex value into ``_re``/``_im`` columns; JSON writes ``[re, im]``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Any, Iterable, Sequence, TextIO

from .errors import EmptyGrid, InvalidInstance, SingularStep, Undefined, ZeroEntry
from .numerics import ComplexParseError, Tolerances, format_complex, format_real, parse_complex
from .oracle import (
    invariant_drift,
    iterate_orbit,
    lyness_invariant,
    lyness_stepper,
    riccati_orbit,
    so_orbit,
    verify_closed_form,
)
from .riccati import (
    Forbidden,
    RiccatiParams,
    classify_riccati,
    riccati_closed_orbit,
    riccati_forbidden_contains,
    riccati_forbidden_point,
)
from .sampling import RICCATI_CASES, SamplePlan, riccati_samples, so_samples
from .second_order import (
    SUBCASES,
    Equation,
    InitialPair,
    SecondOrderInstance,
    so_classify,
    so_closed_orbit,
    so_forbidden_contains,
    so_forbidden_lines,
    so_forbidden_sample,
    so_invariant,
)

COMMANDS = ("classify", "orbit", "solve", "forbidden-list", "forbidden-check", "verify", "invariant")
EQUATIONS = ("riccati", "eq4", "eq5", "eq6", "eq7", "eq8", "eq9", "lyness")
VALUE_FLAGS = {
    "--eq", "--alpha", "--beta", "--A", "--B", "--z0", "--zm1", "--x0", "--n", "--n-max",
    "--C-grid", "--format", "--rtol", "--atol", "--seed", "--samples", "--k", "--window",
}

EXIT_OK, EXIT_VERIFY_FAILED, EXIT_USAGE, EXIT_SINGULAR = 0, 1, 2, 3


class UsageError(Exception):
    pass


class Free:
    """Placeholder for a complex coordinate that ranges over all of C."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def _complex_arg(text: str) -> complex:
    try:
        return parse_complex(text)
    except ComplexParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _complex_list(text: str) -> list[complex]:
    parts = [p for p in text.split(",") if p.strip()]
    return [_complex_arg(p) for p in parts]


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rationaldiff", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--eq", required=True, choices=EQUATIONS, type=str.lower)
    for name in ("alpha", "beta", "A", "B", "z0", "zm1", "x0"):
        p.add_argument(f"--{name}", type=_complex_arg)
    p.add_argument("--n", type=int, help="last index for orbit/solve")
    p.add_argument("--n-max", dest="n_max", type=int, help="horizon for forbidden sets, verify and drift")
    p.add_argument("--C-grid", dest="c_grid", type=_complex_list, help="comma-separated invariant levels")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--rtol", type=float)
    p.add_argument("--atol", type=float)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--k", type=int, default=1, help="Lyness order")
    p.add_argument("--window", type=_complex_list, help="Lyness initial window, oldest first")
    return p


def _join_values(argv: Sequence[str]) -> list[str]:
    """Glue each value flag to its value so values like ``-1-2i`` are not read as flags."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


# -- output ------------------------------------------------------------------


class Emitter:
    """Writes records as CSV (header once) or line-delimited JSON."""

    def __init__(self, fmt: str, out: TextIO):
        self.fmt = fmt
        self.out = out
        self._writer = csv.writer(out, lineterminator="\n") if fmt == "csv" else None
        self._header: tuple[str, ...] | None = None

    def record(self, rec: dict[str, Any]) -> None:
        if self.fmt == "json":
            self.out.write(json.dumps({k: _json_value(v) for k, v in rec.items()}) + "\n")
            return
        cols: list[str] = []
        vals: list[str] = []
        for k, v in rec.items():
            if isinstance(v, complex):
                cols += [f"{k}_re", f"{k}_im"]
                vals += [format_real(v.real), format_real(v.imag)]
            elif v is Free:
                cols += [f"{k}_re", f"{k}_im"]
                vals += ["", ""]
            elif v is None:
                cols.append(k)
                vals.append("")
            elif isinstance(v, float):
                cols.append(k)
                vals.append(format_real(v))
            else:
                cols.append(k)
                vals.append(str(v))
        if self._header is None:
            self._header = tuple(cols)
            self._writer.writerow(cols)
        self._writer.writerow(vals)

    def line(self, text: str) -> None:
        self.out.write(text + "\n")


def _json_value(v: Any) -> Any:
    if isinstance(v, complex):
        return [_json_value(v.real), _json_value(v.imag)]
    if isinstance(v, float) and not math.isfinite(v):
        return str(v)
    if v is Free:
        return None
    return v


def _value_record(n: int, z: complex) -> dict[str, Any]:
    return {"n": n, "z": complex(z)}


# -- argument helpers ----------------------------------------------------------


def _need(args: argparse.Namespace, *names: str) -> None:
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command} --eq {args.eq} requires {', '.join(missing)}")


def _tol(args: argparse.Namespace) -> Tolerances:
    kw = {}
    if args.rtol is not None:
        kw["rel"] = args.rtol
    if args.atol is not None:
        kw["abs"] = args.atol
    try:
        return Tolerances(**kw)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _riccati(args: argparse.Namespace) -> RiccatiParams:
    _need(args, "alpha", "beta", "A", "B")
    return RiccatiParams(args.alpha, args.beta, args.A, args.B)


def _instance(args: argparse.Namespace) -> SecondOrderInstance:
    _need(args, "B")
    return SecondOrderInstance(Equation.parse(args.eq), args.B)


def _pair(args: argparse.Namespace) -> InitialPair:
    _need(args, "z0", "zm1")
    return InitialPair(args.z0, args.zm1)


def _lyness(args: argparse.Namespace) -> tuple[int, complex, list[complex]]:
    _need(args, "alpha", "window")
    if args.k < 1:
        raise UsageError("--k must be >= 1")
    if len(args.window) != args.k + 1:
        raise UsageError(f"--window needs k + 1 = {args.k + 1} values")
    return args.k, args.alpha, args.window


def _unsupported(args: argparse.Namespace) -> None:
    raise UsageError(f"{args.command} is not available for --eq {args.eq}")


# -- commands --------------------------------------------------------------------


def cmd_classify(args, em: Emitter) -> int:
    tol = _tol(args)
    if args.eq == "lyness":
        _unsupported(args)
    if args.eq == "riccati":
        c = classify_riccati(_riccati(args), tol)
        fields: dict[str, Any] = {}
        if c.R is not None:
            fields["R"] = c.R
        if c.phi is not None:
            fields["phi"] = c.phi
        if c.w_minus is not None:
            fields["w_minus"] = c.w_minus
            fields["w_plus"] = c.w_plus
        tag = c.tag
    else:
        c2 = so_classify(_instance(args), _pair(args), tol)
        tag = c2.tag
        names = {"C": "C", "lam1": "lambda1", "lam2": "lambda2", "M1": "M1", "M2": "M2",
                 "D": "D", "rho": "rho", "w0": "w0"}
        fields = {out: getattr(c2, attr) for attr, out in names.items() if getattr(c2, attr) is not None}
    if em.fmt == "json":
        em.record({"tag": tag, **fields})
    else:
        parts = [tag] + [f"{k}={_fmt_scalar(v)}" for k, v in fields.items()]
        em.line(" ".join(parts))
    return EXIT_OK


def _fmt_scalar(v: complex | float) -> str:
    if isinstance(v, complex):
        return format_real(v.real) if v.imag == 0 else format_complex(v)
    return format_real(v)


def _emit_values(em: Emitter, values: Iterable[complex], first_index: int) -> None:
    for i, z in enumerate(values):
        if first_index + i >= 0:
            em.record(_value_record(first_index + i, z))


def _singular_exit(step: int) -> int:
    print(f"orbit singular at step {step}", file=sys.stderr)
    return EXIT_SINGULAR


def cmd_orbit(args, em: Emitter) -> int:
    tol = _tol(args)
    _need(args, "n")
    if args.eq == "riccati":
        _need(args, "x0")
        traj = riccati_orbit(_riccati(args), args.x0, args.n, tol)
    elif args.eq == "lyness":
        k, alpha, window = _lyness(args)
        traj = iterate_orbit(lyness_stepper(k, alpha), window, args.n, tol)
    else:
        traj = so_orbit(_instance(args), _pair(args), args.n, tol)
    _emit_values(em, traj.values, 1 - traj.order)
    if traj.singular_at is not None:
        return _singular_exit(traj.singular_at)
    return EXIT_OK


def cmd_solve(args, em: Emitter) -> int:
    tol = _tol(args)
    _need(args, "n")
    if args.eq == "lyness":
        _unsupported(args)
    if args.eq == "riccati":
        _need(args, "x0")
        values, step = riccati_closed_orbit(classify_riccati(_riccati(args), tol), args.x0, args.n, tol)
        first = 0
    else:
        values, step = so_closed_orbit(so_classify(_instance(args), _pair(args), tol), args.n, tol)
        first = -1
    _emit_values(em, values, first)
    if step is not None:
        return _singular_exit(step)
    return EXIT_OK


def cmd_forbidden_list(args, em: Emitter) -> int:
    tol = _tol(args)
    n_max = args.n_max if args.n_max is not None else 10
    if args.eq == "lyness":
        _unsupported(args)
    if args.eq == "riccati":
        c = classify_riccati(_riccati(args), tol)
        last = 1 if c.case in (3, 4) else n_max
        for n in range(1, last + 1):
            pt = riccati_forbidden_point(c, n)
            if pt is Forbidden.WHOLE_PLANE:
                em.record({"branch": "whole-plane", "n": None, "step": 1, "x0": Free})
                break
            if pt is Forbidden.EMPTY:
                break
            if isinstance(pt, Forbidden):
                continue
            em.record({"branch": c.tag, "n": n, "step": n, "x0": pt})
        return EXIT_OK
    inst = _instance(args)
    grid = args.c_grid if args.c_grid is not None else [2 + 0j]
    points = so_forbidden_sample(inst, n_max, grid, tol)
    for line in so_forbidden_lines(inst):
        z0 = line.value if line.fixed == "z0" else Free
        zm1 = line.value if line.fixed == "zm1" else Free
        em.record({"branch": f"line-{line.branch}", "n": None, "step": line.step, "z0": z0, "zm1": zm1})
    for p in points:
        em.record({"branch": p.branch, "n": p.n, "step": p.step, "z0": p.z0, "zm1": p.zm1})
    return EXIT_OK


def cmd_forbidden_check(args, em: Emitter) -> int:
    tol = _tol(args)
    n_max = args.n_max if args.n_max is not None else 30
    if args.eq == "lyness":
        _unsupported(args)
    if args.eq == "riccati":
        _need(args, "x0")
        c = classify_riccati(_riccati(args), tol)
        n = riccati_forbidden_contains(c, args.x0, n_max, tol)
        hit = None if n is None else (c.tag, n, n)
    else:
        h = so_forbidden_contains(_instance(args), _pair(args), n_max, tol)
        hit = None if h is None else (h.branch, h.n, h.step)
    if em.fmt == "json":
        if hit is None:
            em.record({"member": False})
        else:
            em.record({"member": True, "branch": hit[0], "n": hit[1], "step": hit[2]})
    elif hit is None:
        em.line("not-member")
    else:
        text = f"member branch={hit[0]} n={hit[1]}"
        if hit[2] != hit[1]:
            text += f" step={hit[2]}"
        em.line(text)
    return EXIT_OK


def cmd_verify(args, em: Emitter) -> int:
    tol = _tol(args)
    rtol = args.rtol if args.rtol is not None else 1e-8
    n_max = args.n_max if args.n_max is not None else 25
    if args.samples < 1:
        raise UsageError("--samples must be >= 1")
    plan = SamplePlan(count=args.samples, seed=args.seed, n_max=n_max)
    total = failed = 0

    def report(label: str, index: int, rep) -> None:
        nonlocal total, failed
        total += 1
        failed += not rep.passed
        em.record({
            "subcase": label,
            "sample": index,
            "max_rel_error": rep.max_rel_error,
            "first_disagreement": rep.first_disagreement,
            "oracle_singular_at": rep.oracle_outcome,
            "closed_form_singular_at": rep.closed_form_outcome,
        })

    if args.eq == "lyness":
        return _verify_lyness(args, em, tol, rtol, n_max)
    if args.eq == "riccati":
        for case in RICCATI_CASES:
            for i, (p, x0) in enumerate(riccati_samples(case, plan)):
                report(f"case{case}", i, verify_closed_form(classify_riccati(p, tol), n_max, tol, x0=x0, rtol=rtol))
    else:
        eq = Equation.parse(args.eq)
        for sub in SUBCASES[eq]:
            for i, (inst, init) in enumerate(so_samples(eq, sub, plan)):
                c = so_classify(inst, init, tol)
                report(c.tag, i, verify_closed_form(c, n_max, tol, rtol=rtol))
    return _verdict(em, total, failed)


def _verify_lyness(args, em: Emitter, tol: Tolerances, rtol: float, n_max: int) -> int:
    import numpy as np

    _need(args, "alpha")
    k = args.k
    rng = np.random.default_rng([args.seed, 6, k])
    total = failed = 0
    for i in range(args.samples):
        window = [complex(v) for v in rng.uniform(0.1, 3.0, k + 1)]
        c0 = lyness_invariant(k, args.alpha, window)
        traj = iterate_orbit(lyness_stepper(k, args.alpha), window, n_max, tol)
        vals = traj.values
        drift = max(
            abs(lyness_invariant(k, args.alpha, vals[j : j + k + 1]) - c0) for j in range(len(vals) - k)
        ) / max(1.0, abs(c0))
        ok = drift <= rtol and traj.completed
        total += 1
        failed += not ok
        em.record({"subcase": f"lyness-k{k}", "sample": i, "rel_drift": drift, "singular_at": traj.singular_at})
    return _verdict(em, total, failed)


def _verdict(em: Emitter, total: int, failed: int) -> int:
    passed = total - failed
    if em.fmt == "json":
        em.record({"result": "PASS" if failed == 0 else "FAIL", "passed": passed, "total": total})
    else:
        em.line(f"{'PASS' if failed == 0 else 'FAIL'} {passed}/{total}")
    return EXIT_OK if failed == 0 else EXIT_VERIFY_FAILED


def cmd_invariant(args, em: Emitter) -> int:
    tol = _tol(args)
    n_max = args.n_max if args.n_max is not None else 40
    if args.eq == "riccati":
        _unsupported(args)
    if args.eq == "lyness":
        k, alpha, window = _lyness(args)
        value = lyness_invariant(k, alpha, window)
        traj = iterate_orbit(lyness_stepper(k, alpha), window, n_max, tol)
        vals = traj.values
        drift = max(abs(lyness_invariant(k, alpha, vals[j : j + k + 1]) - value) for j in range(len(vals) - k))
    else:
        inst, pair = _instance(args), _pair(args)
        try:
            value = so_invariant(inst, pair.z0, pair.zm1)
        except Undefined as exc:
            raise UsageError(f"invariant undefined at this pair: {exc}") from None
        drift = invariant_drift(inst, pair, n_max, tol)
    em.record({"invariant": value, "drift": drift})
    return EXIT_OK


HANDLERS = {
    "classify": cmd_classify,
    "orbit": cmd_orbit,
    "solve": cmd_solve,
    "forbidden-list": cmd_forbidden_list,
    "forbidden-check": cmd_forbidden_check,
    "verify": cmd_verify,
    "invariant": cmd_invariant,
}


def run(argv: Sequence[str], out: TextIO | None = None, err: TextIO | None = None) -> int:
    """Execute one command; returns the exit code."""
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    try:
        args = build_parser().parse_args(_join_values(list(argv)))
    except UsageError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    buf = io.StringIO()
    em = Emitter(args.format, buf)
    old_err = sys.stderr
    sys.stderr = err
    try:
        code = HANDLERS[args.command](args, em)
    except (UsageError, InvalidInstance, EmptyGrid, ZeroEntry, ValueError) as exc:
        print(f"error: {exc}", file=err)
        code = EXIT_USAGE
    except (Undefined, SingularStep) as exc:
        print(f"error: {exc}", file=err)
        code = EXIT_SINGULAR
    finally:
        sys.stderr = old_err
    out.write(buf.getvalue())
    return code


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
