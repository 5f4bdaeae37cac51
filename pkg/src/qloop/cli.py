"""Batch front end: datum loading, task execution and verification suites
with reproducible JSON reports.

Exit codes: 0 success, 1 usage or configuration error, 2 identity failure,
3 uncertified computation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .serialize import (canonical_json, shuffle_from_obj,
                        shuffle_to_obj, slope_from_obj, word_from_obj)
from .shuffle import (MINUS, PLUS, SlopeWindow, basis_window,
                      shuffle_mul, wheel_check)
from .zetadata import datum_from_json, datum_to_json, DatumError

EXIT_OK, EXIT_USAGE, EXIT_FAIL, EXIT_UNCERTIFIED = 0, 1, 2, 3


class Uncertified(Exception):
    pass


def _load_datum(path_or_obj):
    if isinstance(path_or_obj, dict):
        return datum_from_json(path_or_obj)
    with open(path_or_obj) as fh:
        return datum_from_json(json.load(fh))


def _window_from_obj(obj):
    lo = slope_from_obj(obj["lo"]) if obj.get("lo") is not None else None
    hi = slope_from_obj(obj["hi"]) if obj.get("hi") is not None else None
    return SlopeWindow(lo, hi, bool(obj.get("lo_strict", False)),
                       bool(obj.get("hi_strict", False)))


def run_task(task):
    """Execute one task spec; returns the report dict."""
    datum = _load_datum(task["datum"])
    cmd = task["command"]
    params = task.get("params", {})
    report = {"command": cmd, "datum": datum_to_json(datum),
              "params": params, "version": __version__}
    if cmd == "mul":
        a = shuffle_from_obj(datum, params["a"])
        b = shuffle_from_obj(datum, params["b"])
        report["result"] = shuffle_to_obj(shuffle_mul(a, b))
    elif cmd == "wheel":
        E = shuffle_from_obj(datum, params["element"])
        report["result"] = wheel_check(E)
    elif cmd == "basis":
        win = _window_from_obj(params["window"])
        side = PLUS if params.get("side", "+") == "+" else MINUS
        basis = basis_window(datum, side, tuple(params["n"]), params["d"],
                             win)
        report["result"] = [shuffle_to_obj(e) for e in basis]
        report["dimension"] = len(basis)
    elif cmd == "pair":
        from .pairing import pair
        E = shuffle_from_obj(datum, params["E"])
        F = shuffle_from_obj(datum, params["F"])
        report["result"] = str(pair(E, F))
    elif cmd == "pair-residue":
        from .pairing import pair, pair_residue
        E = shuffle_from_obj(datum, params["E"])
        F = shuffle_from_obj(datum, params["F"])
        a = pair(E, F)
        b = pair_residue(datum, E, F)
        report["result"] = {"pair": str(a), "residue": str(b),
                            "agree": a == b}
        if a != b:
            report["identity_failure"] = True
    elif cmd == "coproduct":
        from .ualg import delta_term_components, ckey_one
        word = word_from_obj(params["eword"])
        term = (word, ckey_one(datum.ncolors), ())
        comps = delta_term_components(datum, term,
                                      tuple(params["left_hdeg"]),
                                      params["left_vdeg"])
        report["result"] = [[str(c), _term_obj(t1), _term_obj(t2)]
                            for (c, t1, t2) in comps]
    elif cmd == "newnew":
        from .coprod import newnew_component_plus, newnew_component_minus
        from .ualg import ckey_one
        p = slope_from_obj(params["p"])
        one = ckey_one(datum.ncolors)
        unit = ((), one, ())
        if params.get("side", "plus") == "plus":
            E = (word_from_obj(params.get("eword", [])), one, ())
            F = ((), one, word_from_obj(params.get("fword", [])))
            from .scalars import RATQ_ONE
            comps = newnew_component_plus(
                datum, [(E, F, RATQ_ONE)], p,
                tuple(params["left_hdeg"]), params["left_vdeg"])
        else:
            Fp = ((), one, word_from_obj(params.get("fword", [])))
            Ep = (word_from_obj(params.get("eword", [])), one, ())
            from .scalars import RATQ_ONE
            comps = newnew_component_minus(
                datum, [(Fp, Ep, RATQ_ONE)], p,
                tuple(params["left_hdeg"]), params["left_vdeg"])
        report["result"] = [
            [str(c), [_term_obj(k[0][0]), _term_obj(k[0][1])],
             [_term_obj(k[1][0]), _term_obj(k[1][1])]]
            for k, c in sorted(comps.items(), key=str)]
    elif cmd == "double-check":
        from .coprod import double_check
        from .ualg import ckey_one
        from .scalars import RATQ_ONE
        one = ckey_one(datum.ncolors)
        unit = ((), one, ())
        p = slope_from_obj(params["p"])
        a = [((word_from_obj(params.get("a_eword", [])), one, ()),
              ((), one, word_from_obj(params.get("a_fword", []))), RATQ_ONE)]
        b = [(((), one, word_from_obj(params.get("b_fword", []))),
              (word_from_obj(params.get("b_eword", [])), one, ()), RATQ_ONE)]
        ok, _l, _r = double_check(datum, a, b, p,
                                  hwidth=params.get("hwidth", 1),
                                  vmargin=params.get("vmargin", 2))
        report["result"] = bool(ok)
        if not ok:
            report["identity_failure"] = True
    elif cmd == "rmatrix":
        from .rmatrix import R_window
        p2 = slope_from_obj(params["p2"])
        p1 = slope_from_obj(params["p1"])
        R = R_window(datum, p2, p1, params.get("hmax", 2))
        out = {}
        for (h, v), pairs in sorted(R.comps.items(), key=str):
            out[str((list(h), v))] = [[_uelt_obj(a), _uelt_obj(b)]
                                      for (a, b) in pairs]
        report["result"] = out
    elif cmd == "qchar":
        from .omodule import OModule, qchar_by_piece
        from .pairing import LoopWeight
        psi = _psi_from_obj(datum, params["psi"])
        p = slope_from_obj(params["p"])
        module = OModule(datum, psi, p, params.get("depth", 2))
        chi, certified = qchar_by_piece(module, params.get("depth", 2))
        report["certified"] = certified
        report["result"] = {str(n): {str(k): m for k, m in slot.items()}
                            for n, slot in chi.items()}
        if not certified:
            raise Uncertified("eigen splitting not certified")
    elif cmd == "dims":
        from .repmod import simple_weight_dims
        psi = _psi_from_obj(datum, params["psi"])
        p = slope_from_obj(params["p"])
        dims = simple_weight_dims(datum, psi, p, params.get("depth", 2))
        report["result"] = {str(list(n)): v for n, v in sorted(dims.items())}
    elif cmd == "kernel":
        from .repmod import kernels_equal
        psi = _psi_from_obj(datum, params["psi"])
        ok, info = kernels_equal(datum, psi, tuple(params["n"]),
                                 col_box=tuple(params.get("col_box",
                                                          (-2, 2))),
                                 row_width=params.get("row_width", 3))
        report["result"] = {"equal": bool(ok), "ranks": list(info)}
        if not ok:
            report["identity_failure"] = True
    elif cmd == "verify":
        from .suites import run_suite
        results = run_suite(params["suite"])
        report["result"] = results
        if not all(entry["passed"] for entry in results.values()):
            report["identity_failure"] = True
    else:
        raise ValueError("unknown command %r" % cmd)
    return report


def _term_obj(term):
    ew, ck, fw = term
    return {"e": [list(x) for x in ew], "cartan": _ckey_obj(ck),
            "f": [list(x) for x in fw]}


def _ckey_obj(ck):
    return {"kplus": list(ck[0]), "kminus": list(ck[1]),
            "pplus": [list(x) for x in ck[2]],
            "pminus": [list(x) for x in ck[3]]}


def _uelt_obj(elt):
    return [[_term_obj(t), str(c)] for t, c in
            sorted(elt.items(), key=str)]


def _psi_from_obj(datum, obj):
    from .pairing import LoopWeight
    from .scalars import parse_ratq
    from .urat import URat
    comps = []
    for entry in obj:
        num = {int(e): parse_ratq(s) for e, s in entry["num"]}
        den = {int(e): parse_ratq(s) for e, s in entry["den"]} \
            if entry.get("den") else None
        comps.append(URat(num, den))
    return LoopWeight(datum, comps)


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="qloop",
        description="Exact shuffle-algebra computations for quantum loop "
                    "algebras over Q(q).")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="mode", required=True)

    p_task = sub.add_parser("task", help="run a JSON task file")
    p_task.add_argument("--task", required=True)
    p_task.add_argument("--datum", help="override the task's datum file")
    p_task.add_argument("--out", help="report output path (default stdout)")
    p_task.add_argument("--truncation",
                        help="JSON object merged over the task parameters "
                             "(window and depth overrides)")
    p_task.add_argument("--threads", type=int, default=1,
                        help="accepted for interface compatibility")

    p_verify = sub.add_parser("verify", help="run a named verification suite")
    p_verify.add_argument("--suite", required=True)
    p_verify.add_argument("--datum", help="unused; suites fix their data")
    p_verify.add_argument("--out", help="report output path")
    p_verify.add_argument("--checkpoint",
                          help="JSON file for per-check resume state")
    p_verify.add_argument("--threads", type=int, default=1,
                          help="accepted for interface compatibility")

    args = parser.parse_args(argv)
    try:
        if args.mode == "task":
            with open(args.task) as fh:
                task = json.load(fh)
            if args.datum:
                task["datum"] = args.datum
            if args.truncation:
                task.setdefault("params", {}).update(
                    json.loads(args.truncation))
            report = run_task(task)
        else:
            from .suites import run_suite, SUITES
            if args.suite not in SUITES:
                print("unknown suite %r; available: %s"
                      % (args.suite, ", ".join(sorted(SUITES))),
                      file=sys.stderr)
                return EXIT_USAGE
            checkpoint = {}
            if args.checkpoint and os.path.exists(args.checkpoint):
                with open(args.checkpoint) as fh:
                    checkpoint = json.load(fh)
            results = run_suite(args.suite, checkpoint)
            if args.checkpoint:
                with open(args.checkpoint, "w") as fh:
                    fh.write(canonical_json(checkpoint))
            report = {"suite": args.suite, "version": __version__,
                      "result": results}
            for check, entry in results.items():
                print("%-24s %s" % (check,
                                    "pass" if entry["passed"] else "FAIL"))
            if not all(e["passed"] for e in results.values()):
                report["identity_failure"] = True
    except Uncertified as exc:
        print("uncertified: %s" % exc, file=sys.stderr)
        return EXIT_UNCERTIFIED
    except (DatumError, ValueError, KeyError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE

    text = canonical_json(_jsonable(report))
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_FAIL if report.get("identity_failure") else EXIT_OK


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    if isinstance(obj, (str, int, float, bool)) or obj is None:
        return obj
    return str(obj)


if __name__ == "__main__":
    sys.exit(main())
