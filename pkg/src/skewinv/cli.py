"""Command-line front end.

Every command prints one JSON report (or CSV for tabular payloads) with the
echoed command, library version, seed, result payload and discrepancy notes.
Exit status: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from pathlib import Path

from . import __version__
from .canonical import canonical_from_string, sigma_profile
from .checks import discrepancy_notes, identities_suite, n3_generating_set, run_all
from .corealg.scalars import format_scalar
from .errors import SkewInvError
from .genmat import Assignment, Invariant, evaluate
from .hspverify import builtin_certificates, certificate_by_name, check_certificate, verify_hsp
from .invbase import inv, minimal_generators, verify_generation
from .words import format_word, parse_word

VERBS = ("sigma", "trace", "mingens", "generation", "hsp", "certificate", "canon", "eval",
         "identities", "report")
TABULAR = {"mingens", "report"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="skewinv", description="Exact O(n)-invariants of skew-symmetric matrix tuples.")
    p.add_argument("verb", choices=VERBS)
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--word", help="comma-separated letters, 1-based, e.g. 1,2,2")
    p.add_argument("--maxdeg", type=int, default=8)
    p.add_argument("--case", choices=["A", "B", "C", "D"])
    p.add_argument("--blocks", help='canonical block grammar, e.g. "K3;0:1"')
    p.add_argument("--matrices", help="JSON file with the matrices of an assignment")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--retries", type=int, default=5)
    p.add_argument("--backend", choices=["exact", "modular"], default="exact")
    p.add_argument("--prime", type=int, default=1000003)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out")
    p.add_argument("--name", help="certificate name (certificate verb)")
    p.add_argument("--check-sigma", action="store_true")
    p.add_argument("--all", action="store_true", help="report: run every acceptance criterion")
    p.add_argument("--criteria", help="report: comma list of criterion numbers")
    return p


def _need(args, *names):
    missing = [f"--{x.replace('_', '-')}" for x in names if getattr(args, x) is None]
    if missing:
        raise UsageError(f"{args.verb} needs {', '.join(missing)}")


def _word(args):
    try:
        return parse_word(args.word if args.word is not None else "1")
    except ValueError as e:
        raise UsageError(str(e)) from None


def _poly_payload(f: Invariant) -> dict:
    p = f.value
    return {"invariant": f.label, "n": f.n, "word": format_word(f.word), "t": f.t,
            "mdeg": list(f.mdeg) if p else None, "terms": len(p), "polynomial": str(p)}


NOTE_TRACE_SIGN = "trace_sign"
NOTE_HR = "h_r_range"
NOTE_SIGMA_INDEX = "sigma_index"


def _notes(keys, seed: int) -> list[dict]:
    records = dict(zip((NOTE_TRACE_SIGN, NOTE_HR, NOTE_SIGMA_INDEX), discrepancy_notes(seed)))
    return [records[k] for k in keys]


# verbs -------------------------------------------------------------------------------------
# each returns (ok, payload, note keys)


def cmd_sigma(args):
    _need(args, "n", "t")
    return True, _poly_payload(Invariant(args.t, _word(args), args.n)), []


def cmd_trace(args):
    _need(args, "n")
    f = Invariant(1, _word(args), args.n)
    return True, _poly_payload(f), [NOTE_TRACE_SIGN] if args.n == 2 and len(f.word) % 2 == 0 else []


def cmd_mingens(args):
    _need(args, "n", "d")
    rep = minimal_generators(args.n, args.d, args.maxdeg, args.backend, args.prime)
    return True, rep, []


def generation_candidates(n: int, d: int) -> list[Invariant]:
    if n == 2:
        return ([inv(2, (i,), 2, d) for i in range(1, d + 1)]
                + [inv(1, (i, j), 2, d) for i in range(1, d + 1) for j in range(i + 1, d + 1)])
    if n == 3:
        return n3_generating_set(d)
    if d == 1:
        return [inv(2 * k, (1,), n, 1) for k in range(1, n // 2 + 1)]
    raise UsageError(f"no known generating set for n={n}, d={d}; supported: n=2, n=3, or d=1")


def cmd_generation(args):
    _need(args, "n", "d")
    cands = generation_candidates(args.n, args.d)
    ok, where = verify_generation(cands, args.n, args.d, args.maxdeg, args.backend, args.prime)
    return ok, {"n": args.n, "d": args.d, "max_total_degree": args.maxdeg,
                "candidates": [c.label for c in cands], "generates": ok,
                "first_failure_mdeg": list(where) if where else None,
                "degree_bound_note": f"checked in total degrees <= {args.maxdeg} only"}, []


def cmd_hsp(args):
    _need(args, "case")
    rep = verify_hsp(args.case, args.d, seed=args.seed, retries=args.retries)
    return rep.passed, rep.to_json(), [NOTE_HR] if args.case == "A" else []


def cmd_certificate(args):
    certs = [certificate_by_name(args.name)] if args.name else builtin_certificates()
    results = [check_certificate(c) for c in certs]
    return all(r.passed for r in results), {"certificates": [r.to_json() for r in results]}, []


def cmd_canon(args):
    _need(args, "blocks")
    cm = canonical_from_string(args.blocks)
    payload = cm.to_json()
    ok = True
    if args.check_sigma:
        prof = sigma_profile(cm.matrix)
        payload["sigma"] = {str(t): format_scalar(s) for t, s in enumerate(prof, start=1)}
        ok = all(not s for s in prof)
        payload["all_sigma_zero"] = ok
    return ok, payload, []


def cmd_eval(args):
    _need(args, "matrices", "t")
    try:
        a = Assignment.load(args.matrices)
    except (OSError, ValueError, KeyError, TypeError) as e:
        raise UsageError(f"cannot read matrices file: {e}") from None
    w = _word(args)
    if max(w) > a.d:
        raise UsageError(f"word uses Y{max(w)} but the file has {a.d} matrices")
    f = Invariant(args.t, w, a.n, a.d)
    return True, {"invariant": f.label, "n": a.n, "value": format_scalar(evaluate(f, a))}, []


def cmd_identities(args):
    res = identities_suite()
    return all(r.passed for r in res), {"checks": [r.to_json() for r in res]}, []


def cmd_report(args):
    numbers = None
    if args.criteria:
        try:
            numbers = [int(x) for x in args.criteria.split(",") if x]
        except ValueError:
            raise UsageError(f"bad --criteria {args.criteria!r}") from None
        if not numbers or any(k not in range(1, 11) for k in numbers):
            raise UsageError("criteria are numbered 1..10")
    elif not args.all:
        raise UsageError("report needs --all or --criteria")
    res = run_all(args.seed, numbers)
    return all(r.passed for r in res), res, [NOTE_TRACE_SIGN, NOTE_HR, NOTE_SIGMA_INDEX]


COMMANDS = {
    "sigma": cmd_sigma, "trace": cmd_trace, "mingens": cmd_mingens, "generation": cmd_generation,
    "hsp": cmd_hsp, "certificate": cmd_certificate, "canon": cmd_canon, "eval": cmd_eval,
    "identities": cmd_identities, "report": cmd_report,
}


# output ------------------------------------------------------------------------------------


def _echo(args) -> dict:
    return {k: v for k, v in vars(args).items() if v not in (None, False)}


def _payload_json(verb: str, payload):
    if verb == "mingens":
        return payload.to_json()
    if verb == "report":
        return {"criteria": [r.to_json() for r in payload],
                "passed": sum(r.passed for r in payload), "total": len(payload)}
    return payload


def _payload_csv(verb: str, payload) -> str:
    if verb == "mingens":
        return payload.to_csv()
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["criterion", "title", "verdict", "seconds"])
    for r in payload:
        w.writerow([r.number, r.title, "pass" if r.passed else "fail", f"{r.seconds:.3f}"])
    return buf.getvalue()


def make_report(args, ok: bool, payload, notes: list[dict], seconds: float) -> dict:
    out = {"command": _echo(args), "version": __version__, "seed": args.seed,
           "status": "pass" if ok else "fail", "result": _payload_json(args.verb, payload),
           "notes": notes, "wall_time_seconds": round(seconds, 3)}
    if args.verb == "report":
        out["timings"] = {str(r.number): round(r.seconds, 3) for r in payload}
    return out


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _error_report(argv, message: str) -> str:
    return json.dumps({"command": {"argv": list(argv)}, "version": __version__, "status": "error",
                       "error": message}, indent=2, ensure_ascii=False) + "\n"


def run(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = None
    try:
        args = build_parser().parse_args(argv)
        if args.format == "csv" and args.verb not in TABULAR:
            raise UsageError(f"--format csv is available for {', '.join(sorted(TABULAR))} only")
        t0 = time.perf_counter()
        ok, payload, note_keys = COMMANDS[args.verb](args)
        seconds = time.perf_counter() - t0
    except (UsageError, SkewInvError, ValueError) as e:
        msg = str(e).splitlines()[0] if str(e) else type(e).__name__
        print(f"skewinv: error: {msg}", file=sys.stderr)
        sys.stdout.write(_error_report(argv, msg))
        return 2
    if args.format == "csv":
        _emit(_payload_csv(args.verb, payload), args.out)
    else:
        report = make_report(args, ok, payload, _notes(note_keys, args.seed), seconds)
        _emit(json.dumps(report, indent=2, ensure_ascii=False) + "\n", args.out)
    return 0 if ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
