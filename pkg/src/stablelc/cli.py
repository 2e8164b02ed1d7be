"""Command-line interface.

Verbs::

    validate PATH                   check AB = BA = f*I and homogeneity
    hilbert  PATH --object OBJ      Hilbert table of slc, toplc or coker
    slc      PATH [--basis]         stable local cohomology at the maximal ideal
    toplc    PATH [--basis]         classical top local cohomology
    reduce   PATH                   strip unit entries, print the minimal .mf
    verify   [PATH] --suite NAME    run a property suite (or all of them)
    oracle   PATH                   kernel dims on E vs the polynomial-side oracle

Exit status: 0 on success or pass, 1 when a verification fails, 2 on input
errors (unreadable file, format violation, invalid factorization, bad window).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import inverse_system as inv
from .mf import InvalidFactorization, cokernel_hilbert, is_minimal, reduce_mf_log, validate_mf
from .mfio import FormatError, dump_mf, load_mf
from .report import VerifyReport
from .stable import gamma_stab_max, kernel_position, top_local_cohomology
from .verification import SUITES, InstanceSpec, generate_instance, run_suite_on, transpose_cokernel_dim

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
DEFAULT_CAP = 512


class InputError(Exception):
    pass


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _load(path: str):
    try:
        return load_mf(path, validate=False)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    except FormatError as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_valid(path: str):
    mf = _load(path)
    rep = validate_mf(mf)
    if not rep.valid:
        raise InputError(f"{path}: invalid matrix factorization: " + "; ".join(rep.messages()))
    return mf


def _window(args, n: int, obj: str = "slc") -> tuple:
    if obj == "coker":
        lo_d, hi_d = 0, 2 * n + 10
    else:
        lo_d, hi_d = -2 * n - 10, 0
    lo = lo_d if args.lo is None else args.lo
    hi = hi_d if args.hi is None else args.hi
    if lo > hi:
        raise InputError(f"empty window: --from {lo} is above --to {hi}")
    if hi - lo + 1 > args.max_width:
        raise InputError(f"window [{lo}, {hi}] has {hi - lo + 1} degrees, cap is {args.max_width}")
    return lo, hi


def _print_table(title: str, h, out) -> None:
    print(title, file=out)
    print(f"{'degree':>8}  dim", file=out)
    for j in h.degrees():
        print(f"{j:>8}  {h[j]}", file=out)


def _view(mf, obj: str, lo: int, hi: int, basis: bool):
    if obj == "slc":
        return gamma_stab_max(mf, lo, hi, basis=basis)
    if obj == "toplc":
        return top_local_cohomology(mf, lo, hi, basis=basis)
    return None


def _emit_object(args, obj: str, out) -> int:
    mf = _load_valid(args.path)
    lo, hi = _window(args, mf.n, obj)
    if obj == "coker":
        h = cokernel_hilbert(mf, lo, hi)
        if args.json:
            print(_dumps({"object": "coker", "instance": mf.describe(), "hilbert": h.to_json()}), file=out)
        else:
            _print_table(f"coker(A) for {mf.describe()}", h, out)
        return EXIT_OK
    view = _view(mf, obj, lo, hi, args.basis)
    if args.json:
        body = {"object": obj, "instance": mf.describe()}
        body.update(view.to_json(with_basis=args.basis))
        print(_dumps(body), file=out)
        return EXIT_OK
    _print_table(f"{obj} ({view.tag}) for {mf.describe()}", view.hilbert, out)
    if view.meta.get("reduced_first"):
        print("note: input was not minimal and was reduced first", file=out)
    if args.basis and view.slices is not None:
        for j in view.hilbert.degrees():
            sl = view.slices[j]
            if sl.dim:
                print(f"degree {j}: " + ", ".join(sl.vector_strings()), file=out)
    return EXIT_OK


def cmd_validate(args, out) -> int:
    mf = _load(args.path)
    rep = validate_mf(mf)
    if args.json:
        print(_dumps({"path": args.path, **rep.to_json()}), file=out)
    elif rep.valid:
        print("valid, minimal" if rep.minimal else "valid, not minimal", file=out)
    else:
        print("invalid", file=out)
        for m in rep.messages():
            print(f"  {m}", file=out)
    return EXIT_OK if rep.valid else EXIT_INPUT


def cmd_hilbert(args, out) -> int:
    return _emit_object(args, args.object or "coker", out)


def cmd_slc(args, out) -> int:
    return _emit_object(args, "slc", out)


def cmd_toplc(args, out) -> int:
    return _emit_object(args, "toplc", out)


def cmd_reduce(args, out) -> int:
    mf = _load_valid(args.path)
    red, log = reduce_mf_log(mf)
    if args.json:
        body = {
            "input_r": mf.r,
            "r": red.r,
            "minimal": is_minimal(red),
            "eliminations": [{"matrix": x.matrix, "s": x.s, "t": x.t} for x in log],
            "mf": dump_mf(red),
        }
        print(_dumps(body), file=out)
    else:
        print(f"# reduced from r = {mf.r} to r = {red.r}", file=out)
        for x in log:
            kind = "(1, f) block" if x.matrix == "A" else "free summand"
            print(f"# removed {kind} at s = {x.s}, t = {x.t}", file=out)
        out.write(dump_mf(red))
    return EXIT_OK


def cmd_verify(args, out) -> int:
    suites = [args.suite] if args.suite else list(SUITES)
    if args.path:
        mf = _load_valid(args.path)
        label = f"file:{args.path}"
    elif args.seed is not None:
        spec = InstanceSpec("random", seed=args.seed)
        mf = generate_instance(spec)
        label = spec.describe()
    else:
        raise InputError("verify needs an input path or --seed")
    lo, hi = _window(args, mf.n)
    reports = [run_suite_on(s, mf, lo, hi, label) for s in suites]
    ok = all(r.passed for r in reports)
    if args.json:
        print(_dumps({"verdict": "pass" if ok else "fail", "reports": [r.to_json() for r in reports]}), file=out)
    else:
        for r in reports:
            print(r.summary(), file=out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_oracle(args, out) -> int:
    mf = _load_valid(args.path)
    lo, hi = _window(args, mf.n)
    rep = VerifyReport("oracle", f"file:{args.path}", (lo, hi))
    rows = []
    if mf.r:
        red = mf if is_minimal(mf) else reduce_mf_log(mf)[0]
        which, M, src, tgt, _ = kernel_position(red)
        for j in range(lo, hi + 1):
            lhs = inv.matrix_kernel_dim(M, src, j, tgt)
            rhs = transpose_cokernel_dim(M, src, tgt, -j - red.n)
            rep.add(f"ker_{which}_vs_transpose_coker", lhs == rhs, j, f"{lhs} vs {rhs}")
            rows.append((j, lhs, -j - red.n, rhs))
    if args.json:
        body = rep.to_json()
        body["rows"] = [{"degree": j, "kernel": a, "reflected": d, "oracle": b} for j, a, d, b in rows]
        print(_dumps(body), file=out)
    else:
        print(f"{'degree':>8}  {'ker on E':>8}  {'reflected':>9}  {'oracle':>6}", file=out)
        for j, a, d, b in rows:
            flag = "" if a == b else "  MISMATCH"
            print(f"{j:>8}  {a:>8}  {d:>9}  {b:>6}{flag}", file=out)
        print("pass" if rep.passed else "fail", file=out)
    return EXIT_OK if rep.passed else EXIT_FAIL


COMMANDS = {
    "validate": cmd_validate,
    "hilbert": cmd_hilbert,
    "slc": cmd_slc,
    "toplc": cmd_toplc,
    "reduce": cmd_reduce,
    "verify": cmd_verify,
    "oracle": cmd_oracle,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="stablelc", description="Stable local cohomology of matrix factorizations.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    for verb in COMMANDS:
        sp = sub.add_parser(verb)
        sp.add_argument("path", nargs="?" if verb == "verify" else None)
        sp.add_argument("--from", dest="lo", type=int)
        sp.add_argument("--to", dest="hi", type=int)
        sp.add_argument("--json", action="store_true")
        sp.add_argument("--seed", type=int)
        sp.add_argument("--suite", choices=SUITES)
        sp.add_argument("--object", choices=("slc", "toplc", "coker"))
        sp.add_argument("--basis", action="store_true")
        sp.add_argument("--max-width", type=int, default=DEFAULT_CAP)
    return p


def cmd_run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.verb](args, out)
    except InputError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    except (FormatError, InvalidFactorization, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT


def main() -> None:
    sys.exit(cmd_run())


if __name__ == "__main__":
    main()
