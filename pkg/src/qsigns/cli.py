"""Command-line interface.

Subcommands: build, lift, hecke, signs, verify.  Exit codes: 0 on
success, 1 when a requested verification fails, 2 for usage or parse
errors.  Coefficient files are the plain-text format of coeffio; tables
are CSV with header "X,R_tot,R_fund"; verification reports are JSON with
a versioned schema, and every witness carries the index and the
coefficient value.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import coeffio, formspec, hecke, signs
from .arith import DirichletCharacter
from .forms import (delta_form, g_form, plus_space_check, ramanujan_delta,
                    x0_11_form)
from . import qseries as qs

DEFAULT_PREC = 100_000
LARGE_PREC_CAP = 1_000_000
JSON_SCHEMA = 1


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qsigns",
                                description="Exact q-expansion toolkit: build "
                                            "forms, lift and transform them, "
                                            "and measure coefficient signs.")
    sub = p.add_subparsers(required=True, metavar="command")

    b = sub.add_parser("build", help="build a form or expression to a file")
    b.add_argument("--form", required=True,
                   help="delta, g, Delta, G11, E4, or an expression string")
    b.add_argument("--prec", type=int, default=DEFAULT_PREC)
    b.add_argument("--allow-large", action="store_true",
                   help="permit prec above %d (slow, memory heavy)" % DEFAULT_PREC)
    b.add_argument("--out", required=True)
    b.set_defaults(func=cmd_build)

    l = sub.add_parser("lift", help="Shimura lift at a square-free index")
    l.add_argument("--in", dest="infile", required=True)
    l.add_argument("--t", type=int, required=True)
    l.add_argument("--out", required=True)
    l.set_defaults(func=cmd_lift)

    h = sub.add_parser("hecke", help="apply T(p^2), T(p) or U_m")
    h.add_argument("--in", dest="infile", required=True)
    h.add_argument("--op", choices=("tsq", "tp", "u"), required=True)
    h.add_argument("--p", type=int, required=True,
                   help="the prime (or the index m for --op u)")
    h.add_argument("--out", help="write the transformed sequence here")
    h.add_argument("--verify-eigen", action="store_true")
    h.add_argument("--json", dest="jsonfile",
                   help="write the eigen report here (default stdout)")
    h.set_defaults(func=cmd_hecke)

    s = sub.add_parser("signs", help="positivity tables and sign-change reports")
    s.add_argument("--in", dest="infile", required=True)
    s.add_argument("--stats", default="tot,fund",
                   help="comma list from {tot, fund}")
    s.add_argument("--X-list", dest="xlist", default="10,100,1000,10000,100000")
    s.add_argument("--csv", help="write the table here (default stdout)")
    s.add_argument("--t", type=int, help="also report signs along a(t n^2)")
    s.add_argument("--powers-p", dest="powers_p", type=int,
                   help="with --t: report signs along a(t p^(2m))")
    s.add_argument("--dprime", help="restrict the square-free survey, "
                                    "e.g. \"3:+1,5:-1\"")
    s.add_argument("--json", dest="jsonfile",
                   help="write subsequence reports here (default stdout)")
    s.set_defaults(func=cmd_signs)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--in", dest="infile", required=True)
    v.add_argument("--suite", required=True,
                   choices=("plus-space", "recurrence", "bounds", "prop2"))
    v.add_argument("--t", default="1", help="comma list of square-free t")
    v.add_argument("--p", default="3,5,7", help="comma list of primes")
    v.add_argument("--limit", type=int, default=10_000,
                   help="search bound for prop2 witnesses")
    v.add_argument("--json", dest="jsonfile",
                   help="write the report here (default stdout)")
    v.set_defaults(func=cmd_verify)
    return p


def _check_prec(args):
    if args.prec < 1:
        raise ValueError("prec must be positive")
    if args.prec > LARGE_PREC_CAP:
        raise ValueError("prec above %d is not supported" % LARGE_PREC_CAP)
    if args.prec > DEFAULT_PREC and not args.allow_large:
        raise ValueError("prec %d needs --allow-large" % args.prec)
    if args.prec > DEFAULT_PREC:
        print("warning: prec %d will take minutes and hundreds of MB"
              % args.prec, file=sys.stderr)


def cmd_build(args) -> int:
    _check_prec(args)
    prec = args.prec
    name = args.form
    if name == "delta":
        f = delta_form(prec)
        cf = coeffio.from_table("delta", f.weight_num, f.level, f.character,
                                f.coeffs, prec, offset=1)
    elif name == "g":
        f = g_form(prec)
        cf = coeffio.from_table("g", f.weight_num, f.level, f.character,
                                f.coeffs, prec, offset=1)
    elif name == "Delta":
        f = ramanujan_delta(prec)
        cf = coeffio.from_table("Delta", 2 * f.weight, f.level, f.character,
                                f.coeffs, prec, offset=1)
    elif name == "G11":
        f = x0_11_form(prec)
        cf = coeffio.from_table("G11", 2 * f.weight, f.level, f.character,
                                f.coeffs, prec, offset=1)
    elif name == "E4":
        series = qs.eisenstein_e4(prec + 1)
        cf = _series_file("E4", series, Fraction(4), 1, prec)
    else:
        ast = formspec.parse_formspec(name)
        series = formspec.evaluate(ast, prec + 1)
        cf = _series_file(name, series, formspec.formal_weight(ast),
                          formspec.level_hint(ast), prec)
    cf.write(args.out)
    return 0


def _series_file(form_id, series, weight, level, prec) -> coeffio.CoefficientFile:
    if series.offset.denominator != 1:
        raise ValueError("cannot write a series with fractional offset %s"
                         % series.offset)
    off = int(series.offset)
    if off < 0:
        raise ValueError("cannot write a series with negative offset")
    weight2 = 2 * Fraction(weight)
    if weight2.denominator != 1:
        raise ValueError("expression weight %s is not half-integral" % weight)
    pairs = []
    for i, c in series.pairs():
        n = off + i
        if n > prec:
            break
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise ValueError("non-integral coefficient %s at q^%d" % (c, n))
            c = int(c)
        pairs.append((n, c))
    return coeffio.CoefficientFile(form_id=form_id, weight_num=int(weight2),
                                   level=level,
                                   character=coeffio.format_character(
                                       DirichletCharacter.trivial(level)),
                                   prec=prec, offset=off, pairs=pairs)


def cmd_lift(args) -> int:
    cf = coeffio.read(args.infile)
    f = cf.to_half_integral_form()
    lift = hecke.shimura_lift(f, args.t)
    out = coeffio.from_table("lift_t%d(%s)" % (args.t, cf.form_id),
                             2 * lift.weight, lift.level,
                             DirichletCharacter.trivial(lift.level),
                             lift.series, lift.prec, offset=1, t=args.t)
    out.write(args.out)
    return 0


def cmd_hecke(args) -> int:
    cf = coeffio.read(args.infile)
    p = args.p
    if args.op == "u":
        if p < 1:
            raise ValueError("index must be positive")
        table = cf.coefficient_table()
        prec = cf.prec // p
        seq = [0] + [table[p * n] for n in range(1, prec + 1)]
        out_id = "u%d(%s)" % (p, cf.form_id)
        report = None
    elif args.op == "tsq":
        f = cf.to_half_integral_form()
        seq = hecke.t_square_half(p, f)
        prec = len(seq) - 1
        out_id = "tsq_p%d(%s)" % (p, cf.form_id)
        report = hecke.extract_eigenvalue(f.coeffs[:prec + 1], seq, p=p, k=f.k)
    else:
        F = cf.to_integral_form()
        seq = hecke.t_integral(p, F)
        prec = len(seq) - 1
        out_id = "tp%d(%s)" % (p, cf.form_id)
        report = hecke.extract_eigenvalue(F.coeffs[:prec + 1], seq, p=p, k=F.k)

    if args.out:
        coeffio.from_table(out_id, cf.weight_num, cf.level,
                           coeffio.parse_character(cf.character),
                           seq, prec, offset=1).write(args.out)
    if args.verify_eigen:
        if report is None:
            raise ValueError("--verify-eigen needs --op tsq or tp")
        doc = _eigen_json(cf.form_id, args.op, report,
                          (cf.weight_num - 1) // 2 if cf.is_half_integral
                          else cf.weight_num // 4)
        _emit_json(doc, args.jsonfile)
        return 0 if report.is_eigen else 1
    return 0


def _eigen_json(form_id, op, rep: hecke.EigenReport, k: int) -> dict:
    doc = {"schema": JSON_SCHEMA, "kind": "eigen-report", "form": form_id,
           "op": op, "p": rep.p, "lambda": rep.lam, "is_eigen": rep.is_eigen,
           "checked_up_to": rep.checked_up_to,
           "first_violation": rep.first_violation}
    if rep.note:
        doc["note"] = rep.note
    if rep.satake is not None:
        trace, norm, disc_sign = rep.satake
        doc["satake"] = {"trace": trace, "norm": norm, "disc_sign": disc_sign}
    if rep.lam is not None:
        doc["deligne_ok"] = hecke.deligne_check(rep.lam, rep.p, k)
        doc["elementary_bound_ok"] = hecke.elementary_bound_check(rep.lam,
                                                                  rep.p, k)
    return doc


def _table_decimals(X: int) -> int:
    return 3 if X <= 1000 else 6


def cmd_signs(args) -> int:
    cf = coeffio.read(args.infile)
    if cf.is_half_integral:
        form = cf.to_half_integral_form()
    else:
        form = cf.to_integral_form()
    stats = [s for s in args.stats.split(",") if s]
    for s in stats:
        if s not in ("tot", "fund"):
            raise ValueError("unknown stat %r" % s)
    if "fund" in stats and not cf.is_half_integral:
        raise ValueError("fund statistics need a half-integral form")

    xs = [int(x) for x in args.xlist.split(",") if x]
    rows = []
    header = ["X"] + ["R_%s" % s for s in stats]
    for X in xs:
        cells = ["%d" % X]
        for s in stats:
            rep = (signs.r_plus_tot(form, X) if s == "tot"
                   else signs.r_plus_fund(form, X))
            cells.append(rep.ratio_rendered(_table_decimals(X)))
        rows.append(cells)
    csv_text = "\n".join([",".join(header)] + [",".join(r) for r in rows]) + "\n"
    if args.csv:
        with open(args.csv, "w") as fp:
            fp.write(csv_text)
    else:
        sys.stdout.write(csv_text)

    reports = []
    if args.t is not None:
        X = _largest_square_index(form.prec, args.t)
        seq = signs.subseq_t_n2(form, args.t, X)
        count, positions = signs.sign_changes(seq)
        reports.append({"kind": "square-class", "t": args.t, "X": X,
                        "sign_changes": count, "change_positions": positions,
                        "witnesses": _seq_witnesses(seq, lambda n: args.t * n * n)})
        if args.powers_p:
            seq = hecke.local_power_sequence(form, args.t, args.powers_p)
            count, positions = signs.sign_changes(seq)
            reports.append({"kind": "prime-power", "t": args.t,
                            "p": args.powers_p, "entries": len(seq),
                            "sign_changes": count,
                            "change_positions": positions})
    if args.dprime:
        primes, eps = _parse_dprime(args.dprime)
        allowed = set(signs.dprime_filter(range(1, form.prec + 1), primes, eps))
        entries = []
        for t in range(1, form.prec + 1):
            if t in allowed and signs.is_squarefree(t):
                hit = signs.first_nonzero_in_square_class(form, t)
                if hit is not None:
                    entries.append((t, hit[1]))
        count, positions = signs.sign_changes([v for _, v in entries])
        reports.append({"kind": "dprime-survey",
                        "primes": list(primes), "eps": list(eps),
                        "entries": len(entries), "sign_changes": count,
                        "t_values": [t for t, _ in entries][:50]})
    if reports:
        _emit_json({"schema": JSON_SCHEMA, "kind": "sign-reports",
                    "form": cf.form_id, "reports": reports}, args.jsonfile)
    return 0


def _largest_square_index(prec: int, t: int) -> int:
    X = 1
    while t * (X + 1) * (X + 1) <= prec:
        X += 1
    return X


def _seq_witnesses(seq, index_of, cap: int = 10) -> list[dict]:
    out = []
    for i, v in enumerate(seq, start=1):
        if v != 0:
            out.append({"n": index_of(i), "a": v})
            if len(out) == cap:
                break
    return out


def _parse_dprime(text: str):
    primes, eps = [], []
    for part in text.split(","):
        ptxt, _, etxt = part.partition(":")
        primes.append(int(ptxt))
        e = int(etxt)
        if e not in (1, -1):
            raise ValueError("eps must be +1 or -1, got %r" % etxt)
        eps.append(e)
    return primes, eps


def cmd_verify(args) -> int:
    cf = coeffio.read(args.infile)
    ts = [int(t) for t in args.t.split(",") if t]
    ps = [int(p) for p in args.p.split(",") if p]
    if args.suite == "plus-space":
        doc, ok = _suite_plus_space(cf)
    elif args.suite == "recurrence":
        doc, ok = _suite_recurrence(cf, ts, ps)
    elif args.suite == "bounds":
        doc, ok = _suite_bounds(cf, ps)
    else:
        doc, ok = _suite_prop2(cf, ps, args.limit)
    _emit_json(doc, args.jsonfile)
    return 0 if ok else 1


def _suite_plus_space(cf):
    f = cf.to_half_integral_form()
    bad = plus_space_check(f)
    doc = {"schema": JSON_SCHEMA, "suite": "plus-space", "form": cf.form_id,
           "pass": not bad,
           "violations": [{"n": n, "a": f.a(n)} for n in bad[:10]]}
    return doc, not bad


def _suite_recurrence(cf, ts, ps):
    f = cf.to_half_integral_form()
    checks = []
    ok = True
    for t in ts:
        for p in ps:
            rep = hecke.recurrence_check(f, t, p)
            checks.append({"t": t, "p": p, "pass": rep.ok, "lambda": rep.lam,
                           "max_m": rep.max_m, "violation_m": rep.violation_m,
                           "witnesses": [{"n": t * p ** (2 * m),
                                          "a": f.a(t * p ** (2 * m))}
                                         for m in range(min(rep.max_m, 2) + 1)]})
            ok = ok and rep.ok
    return {"schema": JSON_SCHEMA, "suite": "recurrence", "form": cf.form_id,
            "pass": ok, "checks": checks}, ok


def _suite_bounds(cf, ps):
    checks = []
    ok = True
    if cf.is_half_integral:
        f = cf.to_half_integral_form()
        k = f.k
        reports = [hecke.eigen_report(f, p) for p in ps]
    else:
        F = cf.to_integral_form()
        k = F.k
        reports = []
        for p in ps:
            seq = hecke.t_integral(p, F)
            reports.append(hecke.extract_eigenvalue(
                F.coeffs[:len(seq)], seq, p=p, k=k))
    for rep in reports:
        entry = {"p": rep.p, "is_eigen": rep.is_eigen, "lambda": rep.lam}
        if rep.is_eigen:
            entry["deligne_ok"] = hecke.deligne_check(rep.lam, rep.p, k)
            entry["elementary_bound_ok"] = hecke.elementary_bound_check(
                rep.lam, rep.p, k)
            entry["pass"] = entry["deligne_ok"] and entry["elementary_bound_ok"]
        else:
            entry["pass"] = False
        checks.append(entry)
        ok = ok and entry["pass"]
    return {"schema": JSON_SCHEMA, "suite": "bounds", "form": cf.form_id,
            "pass": ok, "checks": checks}, ok


def _suite_prop2(cf, ps, limit):
    form = (cf.to_half_integral_form() if cf.is_half_integral
            else cf.to_integral_form())
    checks = []
    ok = True
    for p in ps:
        found = signs.prop2_witnesses(form, p, limit)
        witnesses = [{"eps": e, "sign": s, "n": n,
                      "a": None if n is None else form.a(n)}
                     for (e, s), n in sorted(found.items(), reverse=True)]
        complete = all(n is not None for n in found.values())
        checks.append({"p": p, "pass": complete, "witnesses": witnesses})
        ok = ok and complete
    return {"schema": JSON_SCHEMA, "suite": "prop2", "form": cf.form_id,
            "pass": ok, "limit": limit, "checks": checks}, ok


def _emit_json(doc: dict, path: str | None):
    text = json.dumps(doc, indent=2) + "\n"
    if path:
        with open(path, "w") as fp:
            fp.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    sys.exit(main())
