"""Command-line front end.

Every subcommand prints JSON lines on stdout.  JSON arguments are either
inline text or ``@path``.  Exit codes: 0 success (for ``verify``, all checks
pass), 1 a check failed, 2 malformed input, 3 a precondition violation; on
2 and 3 a JSON error object naming the offending field goes to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Any, Sequence

from . import codec, verify
from .base_field import Mu8, PlaceError, hilbert, weil_index_rank1
from .codec import InputError, PreconditionError
from .cyclotomic import CycNum
from .etale import ParamError
from .quadratic_forms import FormError, QForm, weil_index, witt_class
from .symplectic import J, Lagrangian, SymplecticError, maslov_chain_form, maslov_dim
from .transfer import EndoDatum, TransferError, check_splitting, correspond, delta0, full_delta, full_delta_matrix
from .weil_character import ThetaError, theta_lattice, theta_ratio_sides, theta_via_cayley

# library errors that mean "the input is well formed but violates a precondition"
_PRECONDITION = (PlaceError, ParamError, FormError, SymplecticError, ThetaError, TransferError)


def _load(arg: str, path: str) -> Any:
    text = arg
    if arg.startswith("@"):
        try:
            text = Path(arg[1:]).read_text()
        except OSError as e:
            raise InputError(path, f"cannot read {arg[1:]}: {e.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(path, f"invalid JSON: {e.msg} at line {e.lineno}") from None


def _scalar(text: str, path: str):
    try:
        return codec.frac(int(text) if text.lstrip("-").isdigit() else text, path)
    except InputError:
        raise
    except ValueError:
        raise InputError(path, f"not a rational: {text!r}") from None


def _place_arg(text: str):
    return codec.place(text if text in ("real", "R", "inf") else _int(text, "p"), "p")


def _int(text: str, path: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise InputError(path, f"not an integer: {text!r}") from None


def cyc_json(x: CycNum):
    """A rational value prints as a number, anything else as a CycNum object."""
    if x.is_rational():
        return codec.fmt(x.to_rational())
    return x.to_json()


def mu8_json(m: Mu8) -> dict:
    return {"zeta8_exponent": m.k}


def _emit(obj: dict) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=False) + "\n")


# --- subcommands ---------------------------------------------------------------


def cmd_hilbert(args) -> int:
    pl = _place_arg(args.p)
    a, b = _scalar(args.a, "a"), _scalar(args.b, "b")
    if a == 0 or b == 0:
        raise PreconditionError("a" if a == 0 else "b", "must be nonzero")
    _emit({"value": hilbert(a, b, pl)})
    return 0


def _form(args, pl) -> QForm:
    if args.diag is not None:
        entries = [_scalar(t, f"diag[{i}]") for i, t in enumerate(args.diag.split(","))]
        if any(e == 0 for e in entries):
            raise PreconditionError("diag", "entries must be nonzero")
        return QForm.diagonal(pl, entries)
    if args.form is None:
        raise InputError("form", "give --diag or --form")
    obj = _load(args.form, "form")
    if not isinstance(obj, dict) or not ({"diag", "gram"} & obj.keys()):
        raise InputError("form", "expected {'diag': [...]} or {'gram': [[...]]}")
    if "diag" in obj:
        if not isinstance(obj["diag"], list) or not obj["diag"]:
            raise InputError("form.diag", "expected a nonempty list")
        return QForm.diagonal(pl, [codec.frac(x, f"form.diag[{i}]") for i, x in enumerate(obj["diag"])])
    return QForm(pl, codec.matrix(obj["gram"], "form.gram"))


def cmd_weil(args) -> int:
    pl = _place_arg(args.p)
    q = _form(args, pl)
    out = {"value": mu8_json(weil_index(q))}
    if q.rank == 1:
        out["rank1_table"] = mu8_json(weil_index_rank1(q.diag[0], pl))
    out["witt"] = witt_class(q).to_json()
    _emit(out)
    return 0


def cmd_maslov(args) -> int:
    pl = _place_arg(args.p)
    obj = _load(args.lagrangians, "lagrangians")
    if not isinstance(obj, list) or len(obj) < 3:
        raise InputError("lagrangians", "expected a list of at least three bases")
    ls = []
    for i, b in enumerate(obj):
        basis = codec.matrix(b, f"lagrangians[{i}]")
        try:
            ls.append(Lagrangian(basis, J(len(basis) // 2)))
        except SymplecticError as e:
            raise PreconditionError(f"lagrangians[{i}]", str(e)) from None
    q = maslov_chain_form(ls, pl)
    _emit({"dim": maslov_dim(ls), "witt": witt_class(q).to_json(), "gamma": mu8_json(weil_index(q))})
    return 0


def cmd_theta(args) -> int:
    p = _int(args.p, "p")
    codec.place(p, "p")
    x = codec.matrix(_load(args.matrix, "matrix"), "matrix")
    if len(x) != 2 * args.n or any(len(r) != 2 * args.n for r in x):
        raise PreconditionError("matrix", f"expected a {2 * args.n} x {2 * args.n} matrix")
    if args.mode == "ratio":
        lhs, rhs = theta_ratio_sides(x, p)
        _emit({"theta": cyc_json(lhs), "closed_form": cyc_json(rhs), "equal": lhs == rhs})
        return 0
    t = theta_lattice(x, p) if args.mode == "lattice" else theta_via_cayley(x, p)
    _emit({"value": cyc_json(t.value), "terms": t.terms, "det_minus_val": t.det_minus_val})
    return 0


def cmd_delta0(args) -> int:
    gamma, c = codec.pair(_load(args.pair, "pair"))
    delta = correspond(gamma, c)
    d = EndoDatum(gamma.g1.n if gamma.g1 else 0, gamma.g2.n if gamma.g2 else 0)
    _emit({"value": delta0(gamma), "datum": [d.n1, d.n2], "delta": codec.param_to_json(delta)})
    return 0


def cmd_transfer(args) -> int:
    gamma, c = codec.pair(_load(args.pair, "pair"))
    p = _int(args.p, "p")
    if gamma.place.p != p:
        raise PreconditionError("p", "does not match pair.place")
    if args.matrix is None:
        val = full_delta(gamma, p, c)
    else:
        obj = _load(args.matrix, "matrix")
        if not isinstance(obj, dict):
            raise InputError("matrix", "expected {'x1': matrix or null, 'x2': matrix or null}")
        x1 = None if obj.get("x1") is None else codec.matrix(obj["x1"], "matrix.x1")
        x2 = None if obj.get("x2") is None else codec.matrix(obj["x2"], "matrix.x2")
        try:
            check_splitting(gamma, x1, x2, p)
        except TransferError as e:
            raise PreconditionError("matrix", str(e)) from None
        val = full_delta_matrix(gamma, x1, x2, p)
    out = {"value": cyc_json(val.value)}
    out.update(val.to_json())
    _emit(out)
    return 0


def cmd_verify(args) -> int:
    names = verify.suite_names() if args.suite == "all" else [args.suite]
    if args.trials < 1:
        raise InputError("trials", "must be positive")
    ok = True
    for name in names:
        for check in verify.SUITES[name]:
            t0 = time.perf_counter()
            rep = verify.run_check(check, args.trials, args.seed)
            ok &= rep.passed
            obj = rep.to_json()
            if args.timing:
                obj["wall_time"] = round(time.perf_counter() - t0, 3)
            if args.json:
                _emit(obj)
            else:
                status = "PASS" if rep.passed else f"FAIL ({len(rep.failures)})"
                extra = f"  {obj['wall_time']:.2f}s" if args.timing else ""
                sys.stdout.write(f"{status:10s} {rep.name:28s} {rep.trials:5d}  {rep.anchor}{extra}\n")
    return 0 if ok else 1


# --- entry point --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="metaplectic", description="Exact invariants for metaplectic endoscopic transfer.")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("hilbert", help="Hilbert symbol (a, b) at a place")
    s.add_argument("--p", required=True, help="odd prime or 'real'")
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.set_defaults(func=cmd_hilbert, error_path="p")

    s = sub.add_parser("weil", help="Weil index of a quadratic form")
    s.add_argument("--p", required=True)
    s.add_argument("--diag", help="comma separated diagonal entries")
    s.add_argument("--form", help="JSON {'diag': [...]} or {'gram': [[...]]}, inline or @file")
    s.set_defaults(func=cmd_weil, error_path="form")

    s = sub.add_parser("maslov", help="Maslov index of a tuple of lagrangians in (Q^{2n}, J)")
    s.add_argument("--p", required=True)
    s.add_argument("--lagrangians", required=True, help="JSON list of 2n x n column bases")
    s.set_defaults(func=cmd_maslov, error_path="lagrangians")

    s = sub.add_parser("theta", help="metaplectic character on the lattice stabilizer")
    s.add_argument("--p", required=True)
    s.add_argument("--n", required=True, type=int)
    s.add_argument("--matrix", required=True)
    s.add_argument("--mode", choices=("lattice", "cayley", "ratio"), default="lattice")
    s.set_defaults(func=cmd_theta, error_path="matrix")

    s = sub.add_parser("delta0", help="the sign factor Delta_0 of a pair")
    s.add_argument("--pair", required=True)
    s.set_defaults(func=cmd_delta0, error_path="pair")

    s = sub.add_parser("transfer", help="the transfer factor on the lattice stabilizer")
    s.add_argument("--p", required=True)
    s.add_argument("--pair", required=True)
    s.add_argument("--matrix", help="JSON {'x1': ..., 'x2': ...} realizing delta', delta''")
    s.set_defaults(func=cmd_transfer, error_path="pair")

    s = sub.add_parser("verify", help="seeded verification suites")
    s.add_argument("suite", choices=verify.suite_names() + ["all"])
    s.add_argument("--trials", type=int, default=20)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--json", action="store_true", help="one JSON object per check")
    s.add_argument("--timing", action="store_true", help="add wall time (breaks byte determinism)")
    s.set_defaults(func=cmd_verify, error_path="suite")
    return ap


def run(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        sys.stderr.write(json.dumps({"error": "input", "path": e.path, "message": str(e)}) + "\n")
        return 2
    except PreconditionError as e:
        sys.stderr.write(json.dumps({"error": "precondition", "path": e.path, "message": str(e)}) + "\n")
        return 3
    except _PRECONDITION as e:
        sys.stderr.write(json.dumps({"error": "precondition", "path": args.error_path, "message": str(e)}) + "\n")
        return 3


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
