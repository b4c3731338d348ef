"""Command-line interface: ``quiverinv <subcommand> [options]``.

Exit status is 0 on success, 2 on invalid input and 3 when a size cap is hit.
JSON reports carry a schema tag and the normalized request that produced
them, so ``quiverinv replay REPORT`` regenerates the same bytes.
"""
from __future__ import annotations

import argparse
import csv as csvlib
import io
import json
import sys
from fractions import Fraction

from .fields import QQ, Field, parse_field
from .harness import (
    BOUND_KINDS, BoundRequest, ResourceLimitError, block_coefficient_family, bound_value,
    standard_generators, generation_profile, separate,
)
from .hilbert import (
    cauchy_dimensions, hilbert_truncation, matrix_invariants, matrix_semi_invariants,
    quiver_invariants, quiver_semi_invariants,
)
from .invariants import char_coeffs, word_product
from .linalg import ExactMatrix
from .nullcone import EXACT_MAX_M, EXACT_MAX_N, nullcone_member
from .quiver import MatrixTuple, Quiver, check_dimension, rep_from_json

SCHEMA = "quiver-invariants/v1"
COMMANDS = ("hilbert", "sigma", "gens", "nullcone", "beta", "bounds", "separate", "cauchy-check", "replay")


class UsageError(ValueError):
    def __init__(self, flag, message):
        super().__init__(f"{flag}: {message}" if flag else message)
        self.flag = flag


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(None, message)


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), default=_default)


def _default(x):
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    raise TypeError(f"cannot serialize {type(x).__name__}")


# --- parsing ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="quiverinv", description="Invariants of quivers and matrix tuples.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp, ring=True):
        if ring:
            sp.add_argument("--ring", choices=["S", "R", "I", "SI"])
            sp.add_argument("--n", type=int)
            sp.add_argument("--m", type=int)
            sp.add_argument("--quiver", metavar="FILE")
            sp.add_argument("--sigma", help="JSON object vertex -> weight")
        sp.add_argument("--field", default="Q")
        sp.add_argument("--seed", default="0")
        sp.add_argument("--output", choices=["json", "csv"], default="json")

    sp = sub.add_parser("hilbert", help="truncated Hilbert series")
    common(sp)
    sp.add_argument("--max-degree", type=int)

    sp = sub.add_parser("sigma", help="characteristic coefficients of a word in given matrices")
    common(sp, ring=False)
    sp.add_argument("--matrices")
    sp.add_argument("--word", default="1")

    sp = sub.add_parser("gens", help="list generators up to a degree")
    common(sp)
    sp.add_argument("--max-degree", type=int)

    sp = sub.add_parser("nullcone", help="null-cone membership of a matrix tuple")
    common(sp)
    sp.add_argument("--matrices")
    sp.add_argument("--trials", type=int, default=40)
    sp.add_argument("--exact", action="store_true")

    sp = sub.add_parser("beta", help="degree-by-degree generation profile")
    common(sp)
    sp.add_argument("--max-degree", type=int)

    sp = sub.add_parser("bounds", help="degree-bound formulas")
    common(sp)
    sp.add_argument("--kind", choices=list(BOUND_KINDS))
    sp.add_argument("--N", type=int)
    sp.add_argument("--M", type=int)
    sp.add_argument("--r", type=int)
    sp.add_argument("--alpha", help="JSON list or object")
    sp.add_argument("--d", help="comma-separated generator degrees")

    sp = sub.add_parser("separate", help="search a separating word invariant")
    common(sp, ring=False)
    sp.add_argument("--x")
    sp.add_argument("--y")
    sp.add_argument("--max-degree", type=int)
    sp.add_argument("--mode", choices=["direct", "reduced"], default="direct")

    sp = sub.add_parser("cauchy-check", help="dimension form of the Cauchy filtration")
    sp.add_argument("--t", type=int)
    sp.add_argument("--p", type=int)
    sp.add_argument("--q", type=int)
    sp.add_argument("--output", choices=["json", "csv"], default="json")

    sp = sub.add_parser("replay", help="re-run the request embedded in a JSON report")
    sp.add_argument("report")
    return p


def _load_json(text, flag):
    try:
        return json.loads(text)
    except (TypeError, json.JSONDecodeError) as e:
        raise UsageError(flag, f"malformed JSON ({e.msg if hasattr(e, 'msg') else e})")


def _read_file(path, flag):
    try:
        with open(path) as fh:
            return _load_json(fh.read(), flag)
    except OSError as e:
        raise UsageError(flag, f"cannot read {path} ({e.strerror})")


def normalize(args) -> dict:
    """Validated request dict with defaults filled in; quiver files are inlined."""
    opts = {k: v for k, v in vars(args).items() if v is not None and v is not False}
    cmd = opts.get("command")
    if cmd is None:
        raise UsageError(None, "missing subcommand")
    if "field" in opts:
        try:
            parse_field(opts["field"])
        except ValueError:
            raise UsageError("--field", f"{opts['field']!r} is not Q or Fp:<prime>")
    if "trials" in opts and opts["trials"] < 1:
        raise UsageError("--trials", "must be >= 1")
    if opts.get("max_degree") is not None and opts["max_degree"] < 0:
        raise UsageError("--max-degree", "must be >= 0")
    for flag in ("n", "m", "N", "M"):
        if flag in opts and opts[flag] < 1:
            raise UsageError(f"--{flag}", "must be positive")
    if "quiver" in opts and isinstance(opts["quiver"], str):
        opts["quiver"] = _read_file(opts["quiver"], "--quiver")
    if "sigma" in opts and isinstance(opts["sigma"], str):
        opts["sigma"] = _load_json(opts["sigma"], "--sigma")
    for key in ("matrices", "x", "y", "alpha"):
        if key in opts and isinstance(opts[key], str):
            opts[key] = _load_json(opts[key], f"--{key}")
    return opts


def _require(opts, *keys):
    for k in keys:
        if opts.get(k) is None:
            raise UsageError("--" + k.replace("_", "-"), "is required")


def _field(opts) -> Field:
    return parse_field(opts.get("field", "Q"))


def _ring(opts):
    kind = opts.get("ring")
    if kind is None:
        raise UsageError("--ring", "is required (S, R, I or SI)")
    if kind in ("S", "R"):
        _require(opts, "n", "m")
        return (matrix_invariants if kind == "S" else matrix_semi_invariants)(opts["n"], opts["m"])
    if "quiver" not in opts:
        raise UsageError("--quiver", f"ring {kind} needs a quiver file")
    q = opts["quiver"]
    try:
        Q = Quiver(q["vertices"], [(a["name"], a["tail"], a["head"]) for a in q["arrows"]])
        alpha = check_dimension(Q, q["dimension"])
    except (KeyError, TypeError, ValueError) as e:
        raise UsageError("--quiver", f"invalid quiver description ({e})")
    if kind == "I":
        return quiver_invariants(Q, alpha)
    sigma = opts.get("sigma", q.get("sigma"))
    if sigma is None:
        raise UsageError("--sigma", "ring SI needs a weight")
    try:
        return quiver_semi_invariants(Q, alpha, sigma)
    except ValueError as e:
        raise UsageError("--sigma", str(e))


def _matrices(raw, field: Field, flag) -> MatrixTuple:
    if not isinstance(raw, list) or not raw:
        raise UsageError(flag, "expected a nonempty JSON list of matrices")
    try:
        mats = []
        for M in raw:
            rows = []
            for r in M:
                row = []
                for x in r:
                    if isinstance(x, bool) or not isinstance(x, (str, int)):
                        raise ValueError(f"entry {x!r} is not an exact number string")
                    row.append(field.parse(str(x)))
                rows.append(row)
            mats.append(ExactMatrix.from_rows(rows, field))
        return MatrixTuple(mats)
    except (ValueError, TypeError, ZeroDivisionError) as e:
        raise UsageError(flag, str(e))


# --- subcommands ------------------------------------------------------------------

def cmd_hilbert(opts):
    _require(opts, "max_degree")
    R = _ring(opts)
    H = hilbert_truncation(R, opts["max_degree"])
    return H.to_json(), H.to_csv()


def cmd_sigma(opts):
    F = _field(opts)
    _require(opts, "matrices")
    X = _matrices(opts["matrices"], F, "--matrices")
    try:
        word = [int(w) for w in str(opts.get("word", "1")).split(",")]
        P = word_product(word, X.matrices)
    except (ValueError, IndexError) as e:
        raise UsageError("--word", str(e))
    cs = char_coeffs(P)
    out = {"word": word, "field": F.to_json(), "sigma": [F.format(c) for c in cs]}
    csv = "j,sigma\n" + "".join(f"{j},{F.format(c)}\n" for j, c in enumerate(cs))
    return out, csv


def _generators(R, D):
    if R.kind in ("matrix-invariants", "quiver-invariants"):
        return standard_generators(R, D)
    if R.kind == "matrix-semi-invariants":
        gens = []
        for d in range(1, max(1, R.n - 1) + 1):
            if d * R.n <= D:
                gens += block_coefficient_family(R.n, R.m, d)
        return gens
    raise UsageError("--ring", "generator lists are available for S, R and I")


def cmd_gens(opts):
    _require(opts, "max_degree")
    R = _ring(opts)
    gens = _generators(R, opts["max_degree"])
    items = [dict(g.to_json(), degree=g.degree) for g in gens]
    out = {"ring": R.to_json(), "max_degree": opts["max_degree"], "generators": items}
    buf = io.StringIO()
    w = csvlib.writer(buf, lineterminator="\n")
    w.writerow(["index", "degree", "generator"])
    for i, g in enumerate(gens):
        w.writerow([i, g.degree, getattr(g, "label", None) or str(g)])
    csv = buf.getvalue()
    return out, csv


def _tuple_from_opts(opts, F):
    inline = opts.get("matrices")
    q = opts.get("quiver")
    if inline is not None and q is not None and q.get("matrices"):
        print("warning: --matrices given inline; ignoring matrices in --quiver", file=sys.stderr)
    if inline is not None:
        return _matrices(inline, F, "--matrices")
    if q is not None:
        try:
            V = rep_from_json(dict(q, field=F.to_json()) if "field" not in q else q)
        except (KeyError, TypeError, ValueError) as e:
            raise UsageError("--quiver", str(e))
        mats = [V[a.name] for a in V.quiver.arrows]
        try:
            return MatrixTuple(mats)
        except ValueError as e:
            raise UsageError("--quiver", f"null-cone tests need square matrices ({e})")
    raise UsageError("--matrices", "is required (or --quiver with matrices)")


def cmd_nullcone(opts):
    F = _field(opts)
    X = _tuple_from_opts(opts, F)
    for flag in ("n", "m"):
        want = opts.get(flag)
        have = X.n if flag == "n" else X.m
        if want is not None and want != have:
            raise UsageError(f"--{flag}", f"is {want} but the matrices give {have}")
    if opts.get("exact"):
        if X.n > EXACT_MAX_N or X.m > EXACT_MAX_M:
            raise UsageError("--exact", f"supports n <= {EXACT_MAX_N} and m <= {EXACT_MAX_M}")
        v = nullcone_member(X, exact=True)
    else:
        if F != QQ:
            raise UsageError("--field", "randomized mode takes rational matrices; use --exact for Fp")
        v = nullcone_member(X, trials=opts.get("trials", 40), seed=opts.get("seed", "0"))
    out = v.to_json()
    csv = "member,mode\n" + f"{str(v.member).lower()},{v.mode}\n"
    return out, csv


def cmd_beta(opts):
    _require(opts, "max_degree")
    R = _ring(opts)
    if R.kind == "quiver-semi-invariants":
        raise UsageError("--ring", "beta profiles are available for S, R and I")
    F = _field(opts)
    D = opts["max_degree"]
    P = generation_profile(R, _generators(R, D), D, F)
    return P.to_json(), P.to_csv()


def _quiver_obj(opts):
    q = opts.get("quiver")
    if q is None:
        return None, None
    try:
        Q = Quiver(q["vertices"], [(a["name"], a["tail"], a["head"]) for a in q["arrows"]])
    except (KeyError, TypeError, ValueError) as e:
        raise UsageError("--quiver", f"invalid quiver description ({e})")
    return Q, q


def cmd_bounds(opts):
    kind = opts.get("kind")
    if kind is None:
        raise UsageError("--kind", "is required")
    Q, q = _quiver_obj(opts)
    params = {k: opts.get(k) for k in ("n", "m", "N", "M", "r")}
    alpha = opts.get("alpha", q.get("dimension") if q else None)
    sigma = opts.get("sigma", q.get("sigma") if q else None)
    params.update(alpha=alpha, sigma=sigma, quiver=Q)
    if "d" in opts:
        try:
            params["d"] = [int(x) for x in str(opts["d"]).split(",")]
        except ValueError:
            raise UsageError("--d", "expected comma-separated integers")
    flags = {"alpha": "--alpha", "sigma": "--sigma", "quiver": "--quiver", "d": "--d"}
    try:
        req = BoundRequest(kind, params)
    except ValueError as e:
        missing = str(e).split("needs ")[-1].split(",")[0].strip()
        raise UsageError(flags.get(missing, "--" + missing), str(e))
    try:
        val = bound_value(req)
    except (ValueError, KeyError) as e:
        raise UsageError("--kind", str(e))
    out = {"bound": val}
    csv = "kind,bound\n" + f"{kind},{_default(val) if isinstance(val, Fraction) else val}\n"
    return out, csv


def cmd_separate(opts):
    F = _field(opts)
    _require(opts, "x", "y", "max_degree")
    X = _matrices(opts["x"], F, "--x")
    Y = _matrices(opts["y"], F, "--y")
    if (X.n, X.m) != (Y.n, Y.m):
        raise UsageError("--y", "tuples have different shapes")
    if opts["max_degree"] < 1:
        raise UsageError("--max-degree", "must be >= 1")
    w = separate(X, Y, opts["max_degree"], opts.get("mode", "direct"), seed=opts.get("seed", "0"))
    if w is None:
        out = {"witness": None, "summary": f"no witness up to degree {opts['max_degree']}"}
        csv = "separated\nfalse\n"
    else:
        out = {"witness": w.to_json(F)}
        csv = "separated,word,j,degree\n" + f"true,{'-'.join(map(str, w.invariant.word))},{w.invariant.j},{w.invariant.degree}\n"
    return out, csv


def cmd_cauchy(opts):
    _require(opts, "t", "p", "q")
    t, p, q = opts["t"], opts["p"], opts["q"]
    if t < 0:
        raise UsageError("--t", "must be >= 0")
    if p < 1 or q < 1:
        raise UsageError("--p" if p < 1 else "--q", "must be >= 1")
    lhs, rhs = cauchy_dimensions(t, p, q)
    out = {"t": t, "p": p, "q": q, "sym_dimension": lhs, "filtration_dimension": rhs, "holds": lhs == rhs}
    return out, f"t,p,q,lhs,rhs,holds\n{t},{p},{q},{lhs},{rhs},{str(lhs == rhs).lower()}\n"


HANDLERS = {
    "hilbert": cmd_hilbert, "sigma": cmd_sigma, "gens": cmd_gens, "nullcone": cmd_nullcone,
    "beta": cmd_beta, "bounds": cmd_bounds, "separate": cmd_separate, "cauchy-check": cmd_cauchy,
}


def run_request(opts: dict) -> str:
    """Execute a normalized request; returns the report text."""
    cmd = opts["command"]
    out, csv = HANDLERS[cmd](opts)
    if opts.get("output", "json") == "csv":
        return csv
    report = dict(out)
    report["schema"] = SCHEMA
    report["request"] = opts
    return _dumps(report) + "\n"


def _replay(path):
    report = _read_file(path, "report")
    if not isinstance(report, dict) or report.get("schema") != SCHEMA or "request" not in report:
        raise UsageError("report", "not a quiver-invariants/v1 JSON report")
    req = report["request"]
    if req.get("command") not in HANDLERS:
        raise UsageError("report", "embedded request has an unknown command")
    return run_request(req)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = build_parser().parse_args(argv)
        if args.command == "replay":
            text = _replay(args.report)
        else:
            text = run_request(normalize(args))
    except UsageError as e:
        print(f"quiverinv: error: {e}", file=sys.stderr)
        return 2
    except ResourceLimitError as e:
        print(f"quiverinv: resource limit: {e}", file=sys.stderr)
        return 3
    except (ValueError, ArithmeticError) as e:
        print(f"quiverinv: error: {e}", file=sys.stderr)
        return 2
    sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
