"""Command-line front end.

Exit codes: 0 when every claim certifies (or a search finds only the
trivial solution), 1 for a certified failure or anomalous finding, 2 for
usage and validation errors.

Defaults may come from a flat ``key = value`` file named by the
``JESCERT_CONFIG`` environment variable; keys mirror the long flag names
with dashes replaced by underscores.  Command-line flags win.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import chain, jesmanowicz as jes, laurent, rigor
from .report import FALSE, TRUE, CertificationReport, ClaimRecord, ReportEnvelope, decimal_text

CONFIG_ENV = "JESCERT_CONFIG"
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def read_config(path: str) -> dict:
    out = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            key, value = (s.strip() for s in line.split("=", 1))
            out[key.replace("-", "_")] = value
    return out


def _rational(text: str) -> Fraction:
    try:
        return rigor.exact(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact decimal or fraction: {text!r}") from None


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=rigor.DEFAULT_BITS, help="working precision in bits")
    common.add_argument("--max-bits", type=int, default=rigor.DEFAULT_MAX_BITS, help="refinement cap in bits")
    common.add_argument("--format", choices=("human", "jsonl", "csv"), default="human")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--workers", type=_positive_int, default=os.cpu_count() or 1)

    parser = argparse.ArgumentParser(prog="jescert", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-constants", parents=[common], help="certify the specialized-bound constants")
    p.add_argument("--coefficient", type=_rational, default=laurent.A_COEFF,
                   help="coefficient c in A_j = c log a_j (default 5.8314)")
    p.add_argument("--f-coefficient", type=_rational, default=laurent.BOUND_COEFF)

    p = sub.add_parser("bound", parents=[common], help="evaluate lower bounds for one linear form")
    for name in ("a1", "a2", "b1", "b2"):
        p.add_argument(name, type=int)
    p.add_argument("--rho-exponent", type=_rational, default=laurent.RHO_EXPONENT, help="rho = exp(q)")
    p.add_argument("--rho", type=_rational, default=None, help="rational rho, overrides --rho-exponent")
    p.add_argument("--mu", type=_rational, default=laurent.MU)

    p = sub.add_parser("search", parents=[common], help="exhaustive exponent search")
    p.add_argument("m", type=int, nargs="?")
    p.add_argument("n", type=int, nargs="?")
    p.add_argument("--m-max", type=int, default=None, help="sweep every mn = 2 mod 4 pair with m <= M")
    p.add_argument("--max-z", type=int, default=jes.DEFAULT_CAP)
    p.add_argument("--max-y", type=int, default=jes.DEFAULT_CAP)
    p.add_argument("--bit-budget", type=int, default=jes.DEFAULT_BIT_BUDGET)

    p = sub.add_parser("threshold", parents=[common], help="run the full contradiction chain")
    p.add_argument("--k-floor", type=_rational, default=chain.K_FLOOR)
    p.add_argument("--f-coefficient", type=_rational, default=laurent.BOUND_COEFF)
    p.add_argument("--coefficient", type=_rational, default=laurent.A_COEFF)
    p.add_argument("--root-tolerance", type=_rational, default=chain.ROOT_TOL)
    p.add_argument("--granularity", type=_rational, default=chain.GRANULARITY)

    p = sub.add_parser("survey", parents=[common], help="apply the criteria to all pairs up to m-max")
    p.add_argument("--m-max", type=int, required=False, default=100)
    return parser


def _precision(args) -> rigor.Precision:
    try:
        return rigor.Precision(args.precision, max(args.max_bits, args.precision))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _config_snapshot(args) -> dict:
    return {k: (decimal_text(v) if isinstance(v, Fraction) else v) for k, v in sorted(vars(args).items())
            if k not in ("command", "out")}


def _emit(text: str, args) -> None:
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            raise UsageError(f"cannot write {args.out}: {exc}") from None
    else:
        sys.stdout.write(text)


def _finish(envelope: ReportEnvelope, args, ok: bool) -> int:
    _emit(envelope.render(args.format), args)
    return EXIT_OK if ok else EXIT_FAIL


# -- commands -----------------------------------------------------------------

def cmd_verify_constants(args) -> int:
    prec = _precision(args)
    cfg = laurent.ChainConfig(a_coeff=args.coefficient, coefficient=args.f_coefficient)
    consts = chain.FConstants(coefficient=args.f_coefficient)
    rep = CertificationReport("verify-constants")
    rep.extend(laurent.verify_lemma_2_8_chain(cfg, prec))
    rep.extend(chain.verify_inequality_3_16(chain.ProofContext(), prec))
    rep.extend(chain.verify_f_monotone(chain.T_MONOTONE, consts, prec))
    try:
        lo, hi = chain.find_f_root(consts=consts, precision=prec)
        rep.check("3.18", "root-bracket", f"root of f in [{chain.dt(lo)}, {chain.dt(hi)}]", hi <= chain.T_CLAIM, hi, chain.T_CLAIM)
    except chain.RootNotBracketed as exc:
        rep.check("3.18", "root-bracket", str(exc), False)
    env = ReportEnvelope("verify-constants", _config_snapshot(args), rep.records)
    env.summary = {"records": len(rep.records), "certified": sum(r.verdict == TRUE for r in rep.records)}
    return _finish(env, args, rep.ok)


def cmd_bound(args) -> int:
    try:
        inst = laurent.LinearForm(args.a1, args.a2, args.b1, args.b2)
        if args.rho is not None:
            params = laurent.LaurentParams(mu=args.mu, rho=args.rho)
        else:
            params = laurent.LaurentParams(mu=args.mu, log_rho=args.rho_exponent)
    except laurent.HypothesisError as exc:
        raise UsageError(str(exc)) from None
    bits = _precision(args).bits
    direct = inst.log_abs(2 * bits)
    rep = CertificationReport("bound")
    d_lo, d_hi = direct.format()
    rep.add(ClaimRecord("direct:log-abs-lambda", "direct", "log|b1 log a1 - b2 log a2|",
                        d_lo, d_hi, "", TRUE, 2 * bits))
    for eq, slug, label, fn in (
        ("2.4", "general-bound", "general lower bound for log|Lambda|",
         lambda: laurent.laurent_lower_bound(inst, params, bits)),
        ("2.10", "specialized-bound", "specialized lower bound for log|Lambda|",
         lambda: laurent.specialized_bound(inst, bits)),
    ):
        try:
            L = fn()
        except laurent.HypothesisError as exc:
            rep.add(ClaimRecord(f"{eq}:{slug}", eq, f"{label}: hypotheses not met ({exc})",
                                "", "", "", FALSE, bits, blocking=False))
            continue
        lo, hi = L.format()
        below = L.lo <= direct.lo
        rep.add(ClaimRecord(f"{eq}:{slug}", eq, f"{label} lies below the direct value", lo, hi,
                            d_lo, TRUE if below else FALSE, bits))
    env = ReportEnvelope("bound", _config_snapshot(args), rep.records)
    return _finish(env, args, rep.ok)


def _search_records(results) -> tuple[list[ClaimRecord], bool]:
    records, ok = [], True
    for p, sols in results:
        only_trivial = sols == [jes.TRIVIAL]
        ok &= only_trivial
        text = " ".join(f"({x},{y},{z})" for x, y, z in sols)
        records.append(ClaimRecord(f"1.1:search-{p.m}-{p.n}", "1.1",
                                   f"solutions for (m, n) = ({p.m}, {p.n}) are exactly (2,2,2)",
                                   text, text, "(2,2,2)", TRUE if only_trivial else FALSE))
    return records, ok


def cmd_search(args) -> int:
    if args.max_z < 2 or args.max_y < 2:
        raise UsageError("caps must be at least 2")
    if args.m is not None:
        if args.n is None:
            raise UsageError("give both m and n")
        try:
            pairs = [jes.make_pair(args.m, args.n)]
        except jes.InvalidPair as exc:
            raise UsageError(f"invalid pair: {exc}") from None
    elif args.m_max is not None:
        pairs = list(jes.survey_pairs(args.m_max))
    else:
        raise UsageError("give m n, or --m-max for a sweep")
    try:
        results = list(jes.search_many(pairs, args.max_z, args.max_y, args.bit_budget, args.workers))
    except jes.SearchBudgetExceeded as exc:
        rec = ClaimRecord("1.1:search-budget", "1.1", f"search stopped: {exc}", str(exc.z), str(exc.z),
                          str(args.bit_budget), FALSE)
        env = ReportEnvelope("search", _config_snapshot(args), [rec])
        return _finish(env, args, False)
    records, ok = _search_records(results)
    env = ReportEnvelope("search", _config_snapshot(args), records)
    env.summary = {"pairs": len(results), "only_trivial": sum(r.verdict == TRUE for r in records)}
    return _finish(env, args, ok)


def cmd_threshold(args) -> int:
    prec = _precision(args)
    if args.root_tolerance <= 0 or args.granularity <= 0:
        raise UsageError("tolerance and granularity must be positive")
    consts = chain.FConstants(coefficient=args.f_coefficient)
    res = chain.verify_full_chain(args.k_floor, consts, args.coefficient, args.root_tolerance,
                                  args.granularity, prec)
    env = ReportEnvelope("threshold", _config_snapshot(args), res.records)
    env.summary = {"k_star": str(res.k_star) if res.k_star is None else chain.dt(res.k_star),
                   "root_bracket": [chain.dt(t) for t in res.f_root_bracket],
                   "verdict": res.verdict}
    ok = res.verdict and res.k_star is not None and res.k_star <= chain.K_FLOOR
    return _finish(env, args, ok)


def render_survey(records, fmt: str) -> str:
    buf = io.StringIO()
    if fmt == "csv":
        w = csv.DictWriter(buf, fieldnames=jes.SURVEY_FIELDS, lineterminator="\n")
        w.writeheader()
        for r in records:
            w.writerow(r.to_dict())
    elif fmt == "jsonl":
        for r in records:
            buf.write(json.dumps(r.to_dict()) + "\n")
    else:
        for r in records:
            d = r.to_dict()
            flags = " ".join(("+" if d[c] else "-") + c for c in jes.CRITERIA)
            buf.write(f"({d['m']}, {d['n']})  {flags}  first={d['first_settling_criterion']}\n")
    return buf.getvalue()


def survey_summary(records) -> dict:
    counts = {c: 0 for c in jes.CRITERIA}
    first = {c: 0 for c in jes.CRITERIA}
    unsettled = 0
    for r in records:
        for v in r.verdicts:
            counts[v.criterion] += v.settled
        f = r.first_settling_criterion
        if f is None:
            unsettled += 1
        else:
            first[f] += 1
    return {"records": len(records), "settled_by": counts, "first_settling": first, "unsettled": unsettled}


def cmd_survey(args) -> int:
    if args.m_max < 2:
        raise UsageError("--m-max must be at least 2")
    records = list(jes.survey(args.m_max, workers=args.workers))
    text = render_survey(records, args.format)
    summary = survey_summary(records)
    _emit(text, args)
    lines = [f"records: {summary['records']}"]
    lines += [f"  {c}: settles {summary['settled_by'][c]}, first for {summary['first_settling'][c]}"
              for c in jes.CRITERIA]
    lines.append(f"  unsettled: {summary['unsettled']}")
    lines.append("  survey items not implemented as filters: "
                 + ", ".join(k for k, v in jes.SURVEY_ITEMS.items() if v.startswith("not implemented")))
    print("\n".join(lines), file=sys.stdout if args.out else sys.stderr)
    return EXIT_OK


COMMANDS = {
    "verify-constants": cmd_verify_constants,
    "bound": cmd_bound,
    "search": cmd_search,
    "threshold": cmd_threshold,
    "survey": cmd_survey,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        path = os.environ.get(CONFIG_ENV)
        if path:
            defaults = read_config(path)
            for sp in parser._subparsers._group_actions[0].choices.values():
                known = {a.dest for a in sp._actions}
                sp.set_defaults(**{k: v for k, v in defaults.items() if k in known})
        args = parser.parse_args(argv)
        # defaults taken from the config file arrive as strings
        for action in parser._subparsers._group_actions[0].choices[args.command]._actions:
            v = getattr(args, action.dest, None)
            if isinstance(v, str) and action.type is not None and action.dest not in ("out",):
                setattr(args, action.dest, action.type(v))
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"jescert: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, argparse.ArgumentTypeError, ValueError) as exc:
        print(f"jescert: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
