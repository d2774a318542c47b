"""Command line interface: ``apolar-kit <verb> [options]``.

Exit codes: 0 success, 1 a check failed, 2 invalid input, 3 budget exceeded.
Reports are deterministic; ``--timing`` adds wall-clock time (which breaks
byte-identity between runs, so it is off by default).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import constructs, suites
from .apolar import ZeroForm, dual_socle_generator, hilbert_function, perp_piece
from .betti import MAX_P, OutOfRange, TruncationTooDeep, apolar_betti, betti_difference, gamma
from .exact import FieldSpec
from .parser import FormInputError, format_form, parse_form
from .points import (
    BudgetExceeded,
    NoneFound,
    NotRepresentable,
    check_apolarity_lemma,
    read_points,
    span_dim,
    waring_coefficients,
    waring_rank_bruteforce,
)
from .ring import GradedPiece

EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

SCHEMA_VERSION = 1


class InputError(Exception):
    pass


def _jsonable(v):
    if isinstance(v, bool) or v is None or isinstance(v, (int, float, str)):
        return v
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return str(v)


# -- input helpers --------------------------------------------------------------------------


def _field(args) -> FieldSpec:
    try:
        return FieldSpec.parse(args.field)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _read_form_text(args) -> str:
    if args.form is not None:
        return args.form
    if args.form_file is not None:
        try:
            with open(args.form_file) as fh:
                return fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {args.form_file}: {exc}") from exc
    if sys.stdin is None or sys.stdin.isatty():
        raise InputError("no form given: use --form, --form-file or standard input")
    return sys.stdin.read()


def _unwrap(text: str) -> str:
    """Accept either a bare expression or a JSON report carrying a ``form`` field."""
    s = text.strip()
    if s.startswith("{"):
        try:
            data = json.loads(s)
        except json.JSONDecodeError as exc:
            raise InputError(f"input looks like JSON but does not parse: {exc}") from exc
        form = data.get("result", {}).get("form") if isinstance(data.get("result"), dict) else None
        if form is None:
            raise InputError("JSON input has no result.form field")
        return form
    return s


def _lambda(args, spec: FieldSpec, g: int) -> list | None:
    if args.lam is None:
        return None
    try:
        vals = [spec.coerce(v.strip()) for v in args.lam.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad --lambda: {exc}") from exc
    if len(vals) != g - 2:
        raise InputError(f"--lambda needs g-2 = {g - 2} values, got {len(vals)}")
    return vals


def _subject_form(args, spec: FieldSpec, kind: str = "y"):
    """The form under study: from --g (Fermat, or almost-minimal with --lambda) or from text."""
    if getattr(args, "g", None) is not None and args.form is None and args.form_file is None:
        g = args.g
        lam = _lambda(args, spec, g)
        if lam is None:
            return constructs.fermat(g, spec), {"g": g, "family": "fermat"}
        return constructs.almost_minimal_form(g, lam, spec), {"g": g, "family": "almost-minimal",
                                                              "lambda": [str(v) for v in lam]}
    text = _unwrap(_read_form_text(args))
    f = parse_form(text, spec, nvars=args.nvars, kind=kind)
    return f, {"form": text}


def _piece_json(piece: GradedPiece) -> dict:
    return {"degree": piece.degree, "dim": piece.dim, "basis": [format_form(q) for q in piece.forms()]}


# -- verbs --------------------------------------------------------------------------------------


def cmd_perp(args, spec):
    f, echo = _subject_form(args, spec)
    cap = args.degree_cap if args.degree_cap is not None else f.degree + 1
    pieces = [_piece_json(perp_piece(f, e)) for e in range(1, cap + 1)]
    text = []
    for p in pieces:
        text.append(f"degree {p['degree']}: dim {p['dim']}")
        text.extend(f"  {b}" for b in p["basis"])
    return echo, {"form": format_form(f), "pieces": pieces}, [], "\n".join(text)


def cmd_hilbert(args, spec):
    f, echo = _subject_form(args, spec)
    hf = hilbert_function(f)
    return echo, {"form": format_form(f), "hilbert": hf.as_list(), "symmetric": hf.is_symmetric()}, [], \
        "(" + ",".join(map(str, hf.as_list())) + ")"


def cmd_betti(args, spec):
    f, echo = _subject_form(args, spec)
    q_max = args.degree_cap if args.degree_cap is not None else f.degree + 1
    table = apolar_betti(f, p_max=args.pmax, q_max=q_max)
    checks = []
    g = echo.get("g")
    if g is not None and echo.get("family") == "almost-minimal" and g >= 5:
        m = g - 2
        for (p, q), want, anchor in (
                ((1, 2), m * (m - 1) // 2, "almost-minimal Betti pattern: beta_1,2 = C(g-2,2)"),
                ((1, 3), 0, "almost-minimal Betti pattern: beta_1,3 = 0"),
                ((2, 3), (g - 1) * (g - 3) * (g - 5) // 3, "almost-minimal Betti pattern: beta_2,3 = (g-1)(g-3)(g-5)/3"),
                ((2, 4), gamma(g, 1), "almost-minimal Betti pattern: beta_2,4 = C(g-2,2)-1")):
            if p <= table.p_max and q <= table.q_max:
                checks.append(suites.check(f"beta_{p},{q}", anchor, want, table.get(p, q, 0)))
        for p in (1, 2):
            if p <= table.p_max and p + 1 <= table.q_max:
                got = table.get(p, p + 1, 0) - table.get(p - 1, p + 1, 0)
                checks.append(suites.check(f"difference p={p}", "linear-strand difference formula",
                                           betti_difference(g, p), got))
    flat = {f"beta_{p},{q}": b for (p, q), b in sorted(table.nonzero().items())}
    return echo, {"form": format_form(f), "table": table.to_json(), "betti": flat}, checks, table.display()


def _points(args, spec):
    if args.points is None:
        raise InputError("--points is required")
    try:
        with open(args.points) as fh:
            return read_points(fh.read(), spec)
    except OSError as exc:
        raise InputError(f"cannot read {args.points}: {exc}") from exc


def cmd_check_apolar(args, spec):
    f, echo = _subject_form(args, spec)
    pts = _points(args, spec)
    echo["points"] = [[str(a) for a in l.coeffs] for l in pts]
    ok = check_apolarity_lemma(pts, f)
    result = {"form": format_form(f), "contained": ok, "span_dim": span_dim(list(pts))}
    if ok:
        result["lambda"] = [str(v) for v in waring_coefficients(f, list(pts))]
    text = f"I_Gamma inside f^perp: {'yes' if ok else 'no'}"
    if ok:
        text += "\nlambda: " + ", ".join(result["lambda"])
    return echo, result, [], text


def cmd_waring(args, spec):
    f, echo = _subject_form(args, spec)
    if args.points is not None:
        pts = _points(args, spec)
        lam = waring_coefficients(f, list(pts))
        res = {"form": format_form(f), "lambda": [str(v) for v in lam]}
        return echo, res, [], "lambda: " + ", ".join(res["lambda"])
    t_max = args.tmax if args.tmax is not None else f.nvars + 2
    echo["tmax"] = t_max
    try:
        t, dec = waring_rank_bruteforce(f, t_max, budget=args.budget)
    except NoneFound as exc:
        return echo, {"form": format_form(f), "rank": None, "message": str(exc)}, [], str(exc)
    res = {"form": format_form(f), "rank": t, "decomposition": dec.to_json(), "span_dim": dec.span_dim}
    lines = [f"rank over {spec.name}: {t}"]
    lines += [f"  {lam} * ({l})^[{f.degree}]" for lam, l in dec.terms]
    return echo, res, [], "\n".join(lines)


CONSTRUCTS = ("fermat", "almost-minimal", "q-prime", "frame", "fermat-perp-generators", "cubic-syzygy-matrix")


def cmd_construct(args, spec):
    what = args.target
    g = args.g
    if g is None:
        raise InputError("construct needs --g")
    echo = {"object": what, "g": g}
    if what in ("almost-minimal", "q-prime"):
        lam = _lambda(args, spec, g)
        if lam is None:
            raise InputError(f"{what} needs --lambda")
        echo["lambda"] = [str(v) for v in lam]
    if what == "fermat":
        f = constructs.fermat(g, spec)
        return echo, {"form": format_form(f)}, [], format_form(f)
    if what == "almost-minimal":
        f = constructs.almost_minimal_form(g, lam, spec)
        return echo, {"form": format_form(f)}, [], format_form(f)
    if what == "q-prime":
        q = constructs.q_prime(g, lam, spec)
        f = constructs.almost_minimal_form(g, lam, spec)
        res = {"form": format_form(q), "annihilates": constructs.is_apolar(q, f),
               "value_at_E0": str(q.evaluate([1] + [0] * (g - 3)))}
        checks = [suites.check("q' in f^perp", "q' annihilates the almost-minimal form", True, res["annihilates"]),
                  suites.check("q'(E_0)", "q'(E_0) = -lambda_0", str(-lam[0]), res["value_at_E0"])]
        return echo, res, checks, format_form(q)
    if what == "frame":
        pts = constructs.frame_points(g, spec, include_unit=not args.no_unit)
        rows = [[str(a) for a in l.coeffs] for l in pts]
        return echo, {"points": rows}, [], "\n".join(",".join(r) for r in rows)
    if what == "fermat-perp-generators":
        gens = [format_form(q) for q in constructs.fermat_perp_generators(g, spec)]
        return echo, {"generators": gens}, [], "\n".join(gens)
    mat = constructs.cubic_syzygy_matrix(g, spec)
    rows = [[format_form(e) for e in row] for row in mat]
    return echo, {"matrix": rows}, [], "\n".join("  ".join(f"{c:>4}" for c in r) for r in rows)


VERIFY_TARGETS = tuple(suites.SUITES)


def cmd_verify(args, spec):
    name = args.target
    fn = suites.SUITES[name]
    kwargs = {"seed": args.seed}
    if args.g is not None:
        if name in ("cubic-syzygies",):
            kwargs["genera"] = (args.g,)
            kwargs["tails"] = (args.g,) if 5 <= args.g <= MAX_P + 3 else ()
        elif name in ("hilbert", "betti-pattern", "quadric-lift", "product-intersection", "dropped-variable",
                      "fermat-perp"):
            kwargs["genera"] = (args.g,)
        elif name == "closed-forms":
            kwargs["genera"] = (args.g,)
            kwargs["measured"] = (args.g,) if args.g <= 10 else ()
    if args.trials is not None and name in ("apolarity-lemma", "macaulay"):
        kwargs["trials"] = args.trials
    if name == "oracle":
        kwargs["budget"] = args.budget
    rep = fn(**kwargs)
    echo = {"suite": name, "g": args.g}
    lines = [f"{'PASS' if c['passed'] else 'FAIL'}  {c['name']}: expected {c['expected']}, got {c['observed']}"
             for c in rep["checks"]]
    return echo, rep, rep["checks"], "\n".join(lines)


def cmd_classify(args, spec):
    f, echo = _subject_form(args, spec)
    rep = constructs.classify_form(f, budget=args.budget)
    lines = [f"verdict: {rep.verdict}"] + [f"  {e}" for e in rep.evidence]
    return echo, {"form": format_form(f), **rep.to_json()}, [], "\n".join(lines)


def cmd_dual_socle(args, spec):
    text = _read_form_text(args)
    lines = [s.strip() for s in text.replace(";", "\n").splitlines() if s.strip() and not s.strip().startswith("#")]
    if not lines:
        raise InputError("no generators given")
    gens = [parse_form(s, spec, nvars=args.nvars, kind="x") for s in lines]
    nvars = args.nvars or max(q.nvars for q in gens)
    gens = [q if q.nvars == nvars else parse_form(s, spec, nvars=nvars, kind="x") for q, s in zip(gens, lines)]
    if args.degree_cap is None:
        raise InputError("dual-socle needs --degree-cap (the socle degree d)")
    d = args.degree_cap
    from .ring import ideal_piece_from_generators

    pieces = {e: ideal_piece_from_generators(gens, e, nvars, spec) for e in range(1, d + 1)}
    f = dual_socle_generator(pieces, nvars, d, spec)
    return {"generators": lines, "degree": d}, {"form": format_form(f)}, [], format_form(f)


VERBS = {
    "perp": cmd_perp,
    "hilbert": cmd_hilbert,
    "betti": cmd_betti,
    "check-apolar": cmd_check_apolar,
    "waring": cmd_waring,
    "construct": cmd_construct,
    "verify": cmd_verify,
    "classify": cmd_classify,
    "dual-socle": cmd_dual_socle,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="q", help="q for the rationals, f<p> for the prime field F_p")
    common.add_argument("--g", type=int, help="genus parameter of a standard family")
    common.add_argument("--lambda", dest="lam", help="comma-separated nonzero lambda values")
    common.add_argument("--points", help="file with one point per line, comma-separated")
    src = common.add_mutually_exclusive_group()
    src.add_argument("--form", help="form expression (y-variables for R, x-variables for T)")
    src.add_argument("--form-file", help="file holding the form expression")
    common.add_argument("--nvars", type=int, help="number of variables (default: from the expression)")
    common.add_argument("--tmax", type=int, help="largest decomposition length to try")
    common.add_argument("--budget", type=int, default=2_000_000, help="cap on enumerated point subsets")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, help="number of random trials for randomized suites")
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("--timing", action="store_true", help="include wall time in the report")
    common.add_argument("--degree-cap", type=int, help="top degree for perp/betti; socle degree for dual-socle")
    common.add_argument("--pmax", type=int, default=2, help="homological degree bound for betti")
    common.add_argument("--no-unit", action="store_true", help="frame without the all-ones point")

    ap = argparse.ArgumentParser(prog="apolar-kit", description="Apolar ideals, Betti tables and Waring "
                                 "decompositions of forms in divided powers.")
    sub = ap.add_subparsers(dest="verb", required=True)
    for verb in VERBS:
        p = sub.add_parser(verb, parents=[common])
        if verb == "construct":
            p.add_argument("target", choices=CONSTRUCTS)
        elif verb == "verify":
            p.add_argument("target", choices=VERIFY_TARGETS)
    return ap


def _emit(report: dict, text: str, as_json: bool, out):
    if as_json:
        out.write(json.dumps(_jsonable(report), sort_keys=True, indent=2) + "\n")
    elif text:
        out.write(text + "\n")


def main(argv=None, stdout=None, stderr=None) -> int:
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    report = {"schema": SCHEMA_VERSION, "command": args.verb, "field": args.field, "seed": args.seed}
    start = time.perf_counter()
    try:
        spec = _field(args)
        report["field"] = spec.name
        echo, result, checks, text = VERBS[args.verb](args, spec)
    except BudgetExceeded as exc:
        report.update(status="budget_exceeded", error=str(exc))
        _emit(report, "", args.json, out)
        err.write(f"budget exceeded: {exc}\n")
        return EXIT_BUDGET
    except (InputError, FormInputError, ZeroForm, OutOfRange, TruncationTooDeep, NotRepresentable,
            ValueError, ZeroDivisionError) as exc:
        report.update(status="input_error", error=f"{type(exc).__name__}: {exc}")
        _emit(report, "", args.json, out)
        err.write(f"input invalid: {type(exc).__name__}: {exc}\n")
        return EXIT_INPUT
    failed = [c for c in checks if not c["passed"]]
    report.update(input=echo, result=result, checks=checks,
                  status="check_failed" if failed else "ok")
    if args.timing:
        report["wall_time"] = round(time.perf_counter() - start, 6)
    _emit(report, text, args.json, out)
    if failed:
        for c in failed:
            err.write(f"identity falsified: {c['anchor']} ({c['name']}): expected {c['expected']}, "
                      f"got {c['observed']}\n")
        return EXIT_CHECK
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
