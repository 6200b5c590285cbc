"""Command-line interface.

Verbs: construct, verify, optimality, anova, catalog.  Every invocation
prints one JSON document (or writes it with --out) and exits with

    0  all verified claims hold,
    1  a verified claim failed,
    2  usage or input error (diagnostic on stderr).

Reports are deterministic: keys sorted, two-space indent, no timestamps,
so identical invocations are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys

from .arrays import hadamard, hadamard_to_oa, oa_rao_hamming, q_extend
from .constructions import (
    asym_report,
    construct_asym,
    construct_potb2,
    construct_potb3,
    construct_potp,
    seed_plans,
)
from .errors import NoBlocks, UnknownFactor
from .gf import field_new
from .optimality import universal_ledger
from .orthogonality import OrthReport, is_potb, is_potp, orth_through
from .plan import (
    BLOCK,
    GENERAL,
    plan_dumps,
    plan_loads,
    plan_to_csv,
    plan_to_json,
)

__all__ = ["main"]


def _dump(doc):
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _emit(text, out_path):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_plan(path):
    with open(path) as fh:
        return plan_loads(fh.read())


def _claim(label, passed, expect=True):
    return {"label": label, "pass": bool(passed), "expect": expect}


def _pair_claims(name, plan):
    """Verification report + claim list for a named built-in plan."""
    if name == "potp_3_4":
        rep = is_potp(plan, ("A1", "A2"))
        claims = [_claim("potp-3-4-orthogonal-through-leading-pair", rep.passed)]
    elif name == "potb_2_7":
        rep = is_potb(plan)
        ok, val = rep.c_matrix.scalar_identity()
        claims = [
            _claim("potb-2-7-all-pairs-through-block", rep.passed),
            _claim("potb-2-7-contrast-scalar-4", ok and val == 4),
            _claim("potb-2-7-leading-pair-pfc-fails",
                   not rep.pair("A1", "A2").pfc),
        ]
    elif name == "ico_2_6":
        rep = is_potb(plan)
        classes = {"A1": 1, "B1": 1, "C1": 1, "A2": 2, "B2": 2, "C2": 2}
        cross = [p for p in rep.pairs if classes[p.a] != classes[p.b]]
        within = [p for p in rep.pairs if classes[p.a] == classes[p.b]]
        claims = [
            _claim("ico-2-6-cross-class-pairs-through-block",
                   all(p.passed for p in cross)),
            _claim("ico-2-6-within-class-pairs-fail",
                   not any(p.passed for p in within)),
            _claim("ico-2-6-not-potb-overall", rep.passed, expect=False),
        ]
    elif name == "potb_3_3":
        rep = is_potb(plan)
        ok, val = rep.c_matrix.scalar_identity()
        claims = [
            _claim("potb-3-3-all-pairs-through-block", rep.passed),
            _claim("potb-3-3-contrast-scalar-3", ok and val == 3),
        ]
    else:
        raise UnknownFactor(f"no built-in plan called {name!r}")
    return rep, claims


def _construct_family(args):
    """Build the requested plan (or matrix) and its claims."""
    fam = args.family
    if fam == "hadamard":
        h = hadamard(_require(args, "order"))
        return None, h.tolist(), {"kind": "hadamard", "order": int(h.shape[0])}, []
    if fam in ("oa", "qarray"):
        if args.order is not None:
            oa = hadamard_to_oa(hadamard(args.order))
        else:
            oa = oa_rao_hamming(field_new(_require(args, "s")))
        if fam == "qarray":
            oa = q_extend(oa)
        meta = {"kind": fam, "rows": oa.rows, "columns": oa.columns,
                "symbols": oa.symbols, "zero_row": oa.zero_row}
        return None, oa.grid.tolist(), meta, []

    if fam == "seed":
        name = _require(args, "name")
        plans = seed_plans()
        if name not in plans:
            raise UnknownFactor(
                f"unknown seed plan {name!r}; have {sorted(plans)}")
        plan = plans[name]
        rep, claims = _pair_claims(name, plan)
    elif fam == "potp":
        plan = construct_potp(_require(args, "h"), _require(args, "s"))
        rep = is_potp(plan, ("A1", "A2"))
        claims = [_claim(f"potp-{args.s}-{2 * args.h}-orthogonal-through-leading-pair",
                         rep.passed)]
    elif fam == "potb2":
        h = _require(args, "h")
        plan = construct_potb2(h)
        rep = is_potb(plan)
        ok, val = rep.c_matrix.scalar_identity()
        claims = [
            _claim(f"potb-2-{7 * h}-all-pairs-through-block", rep.passed),
            _claim(f"potb-2-{7 * h}-contrast-scalar-{4 * h}", ok and val == 4 * h),
        ]
    elif fam == "potb3":
        plan = construct_potb3()
        rep = is_potb(plan)
        ok, val = rep.c_matrix.scalar_identity()
        claims = [
            _claim("potb-3-15-all-pairs-through-block", rep.passed),
            _claim("potb-3-15-contrast-scalar-27", ok and val == 27),
        ]
    elif fam == "asym":
        s = _require(args, "s")
        plan = construct_asym(s)
        rep = asym_report(plan)
        ext = [p for p in rep.pairs if p.informational]
        claims = [
            _claim(f"asym-{s}-level-pairs-through-block", rep.passed),
            _claim(f"asym-{s}-extended-pairs-proportional",
                   all(p.pfc for p in ext)),
            _claim(f"asym-{s}-extended-pairs-blocked-identity",
                   any(p.passed for p in ext), expect=False),
        ]
    else:
        raise UnknownFactor(f"unknown family {fam!r}")
    return plan, None, None, (rep, claims)


def _require(args, attr):
    val = getattr(args, attr, None)
    if val is None:
        raise ValueError(f"--{attr.replace('_', '-')} is required for family {args.family!r}")
    return val


def _matrix_csv(rows):
    return "".join(",".join(str(x) for x in row) + "\n" for row in rows)


def _cmd_construct(args):
    plan, grid, meta, verification = _construct_family(args)
    if plan is None:
        doc = dict(meta)
        doc["grid"] = grid
        if args.csv:
            _emit(_matrix_csv(grid), args.csv)
        _emit(_dump(doc), args.out)
        return 0
    rep, claims = verification
    doc = {"plan": plan_to_json(plan), "report": rep.to_json(), "claims": claims}
    if plan.blocked:
        doc["optimality"] = universal_ledger(plan).to_json()
    if args.csv:
        _emit(plan_to_csv(plan), args.csv)
    if args.out:
        _emit(plan_dumps(plan), args.out)
        if args.report:
            _emit(_dump(doc), args.report)
    else:
        _emit(_dump(doc), args.report)
    return 0 if all(c["pass"] == c["expect"] for c in claims) else 1


def _split_idents(text):
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        out.append({"block": BLOCK, "G": GENERAL}.get(tok, tok))
    return out


def _cmd_verify(args):
    plan = _load_plan(args.plan)
    if args.check == "potb":
        rep = is_potb(plan)
    elif args.check == "potp":
        if not args.through:
            raise ValueError("--through is required for --check potp")
        rep = is_potp(plan, _split_idents(args.through))
    elif args.check == "pfc":
        pairs = []
        names = plan.factor_names
        for i, a in enumerate(names):
            for b in names[i + 1:]:
                pairs.append(orth_through(plan, a, b, (GENERAL,)))
        rep = OrthReport(plan_name=plan.name, check="pfc", pairs=tuple(pairs))
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(f"unknown check {args.check!r}")
    _emit(_dump(rep.to_json()), args.out)
    return 0 if rep.passed else 1


def _cmd_optimality(args):
    plan = _load_plan(args.plan)
    ledger = universal_ledger(plan)
    _emit(_dump(ledger.to_json()), args.out)
    return 0


def _cmd_anova(args):
    from .anova import estssq_equivalence

    plan = _load_plan(args.plan)
    adjust = tuple(_split_idents(args.adjust))
    report = estssq_equivalence(plan, args.target, adjust,
                                trials=args.trials, seed=args.seed)
    _emit(_dump(report.to_json()), args.out)
    return 0 if report.biconditional_observed else 1


def _cmd_catalog(args):
    plans = {}
    reports = {}
    ledgers = {}
    claims = []

    for name, plan in sorted(seed_plans().items()):
        rep, cl = _pair_claims(name, plan)
        plans[name] = plan_to_json(plan)
        reports[name] = rep.to_json()
        claims.extend(cl)
        if plan.blocked:
            ledgers[name] = universal_ledger(plan).to_json()

    built = [
        ("potp_3_8", lambda: construct_potp(4, 3)),
        ("potb_2_14", lambda: construct_potb2(2)),
        ("potb_3_15", construct_potb3),
        ("asym_3", lambda: construct_asym(3)),
        ("asym_7", lambda: construct_asym(7)),
    ]
    for name, build in built:
        plan = build()
        plans[name] = plan_to_json(plan)
        if name.startswith("potp"):
            rep = is_potp(plan, ("A1", "A2"))
            claims.append(_claim(f"{name}-orthogonal-through-leading-pair", rep.passed))
        elif name.startswith("asym"):
            rep = asym_report(plan)
            ext = [p for p in rep.pairs if p.informational]
            claims.append(_claim(f"{name}-level-pairs-through-block", rep.passed))
            claims.append(_claim(f"{name}-extended-pairs-proportional",
                                 all(p.pfc for p in ext)))
        else:
            rep = is_potb(plan)
            ok, val = rep.c_matrix.scalar_identity()
            claims.append(_claim(f"{name}-all-pairs-through-block", rep.passed))
            claims.append(_claim(f"{name}-contrast-scalar", ok))
        reports[name] = rep.to_json()
        if plan.blocked:
            ledgers[name] = universal_ledger(plan).to_json()

    overall = all(c["pass"] == c["expect"] for c in claims)
    doc = {"plans": plans, "reports": reports, "optimality": ledgers,
           "claims": claims, "pass": overall}
    _emit(_dump(doc), args.out)
    return 0 if overall else 1


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="orthoplan",
        description="Construct and verify main-effect plans orthogonal "
                    "through a factor (block or otherwise).")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("construct", help="build a plan or matrix family")
    p.add_argument("--family", required=True,
                   choices=["potp", "potb2", "potb3", "asym", "seed",
                            "hadamard", "oa", "qarray"])
    p.add_argument("--h", type=int, default=None, help="Hadamard order parameter")
    p.add_argument("--s", type=int, default=None, help="level count / field order")
    p.add_argument("--order", type=int, default=None, help="matrix order")
    p.add_argument("--name", default=None, help="seed plan name")
    p.add_argument("--out", default=None, help="write the plan JSON here")
    p.add_argument("--report", default=None, help="write the report JSON here")
    p.add_argument("--csv", default=None, help="write a CSV rendering here")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("verify", help="check orthogonality claims on a plan file")
    p.add_argument("--check", required=True, choices=["potb", "potp", "pfc"])
    p.add_argument("--plan", required=True)
    p.add_argument("--through", default=None,
                   help="comma-separated conditioning set for --check potp")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("optimality", help="evaluate the optimality conditions")
    p.add_argument("--plan", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_optimality)

    p = sub.add_parser("anova", help="adjusted-SS equivalence experiment")
    p.add_argument("--plan", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--adjust", required=True,
                   help="comma-separated adjusting set ('block', 'G', factor names)")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_anova)

    p = sub.add_parser("catalog", help="rebuild every built-in plan with reports")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_catalog)
    return parser


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:  # a self-verification failed
        print(f"claim failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
