"""Command-line entry point: ``cubenerve <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import categories, chains, factorization, identities, omega, pcs, precubical, signs
from .counterexample import counterexample

FIXTURES = {
    "counterexample": categories.counterexample_category,
    "interval": categories.interval_category,
}


def _emit(args, data, text):
    if getattr(args, "json", False):
        print(json.dumps(data, indent=2, default=str))
    else:
        print(text)


def cmd_factorize(args):
    pp = factorization.ProjectionPair(args.n, args.k, args.sign)
    tree = factorization.factorize(pp)
    report = factorization.verify(pp)
    parts = {f"A_{q}^{b}": str(a) for (q, b), a in sorted(factorization.factors(pp).items())}
    lines = [
        f"d_{args.n - 1}^{pp.face_sign} <u_{args.n}> through the box missing {pp.sigma}:",
        f"  tree:  {tree}",
        f"  faces: {omega.face_str(tree)}",
    ]
    lines += [f"  {name} = {value}" for name, value in parts.items()]
    lines += [f"  {key}: {value}" for key, value in report.items()]
    _emit(args, {"n": args.n, "k": args.k, "sign": args.sign, "sigma": pp.sigma,
                 "tree": omega.tree_to_json(tree), "tree_text": str(tree),
                 "factors": parts, "checks": report}, "\n".join(lines))
    return 0 if all(report.values()) else 1


def _suite_abs(args):
    rows = []
    for name in args.fixture:
        target = FIXTURES[name]()
        for eq, res in identities.identity_suite(target, args.max_dim, args.samples, args.seed).items():
            rows.append({"nerve": target.name, "equation": eq, "instances": res.instances,
                         "failures": res.failures, "by_dim": res.by_dim,
                         "witnesses": [str(w) for w in res.witnesses]})
    return rows


def _suite_round_trips(args):
    rows = []
    for name in args.fixture:
        target = FIXTURES[name]()
        res = identities.round_trips(target, args.max_dim)
        rows.append({"nerve": target.name, "equation": "thinness recomputed from Psi",
                     "instances": res.cubes, "failures": res.stratification_mismatches})
        rows.append({"nerve": target.name,
                     "equation": "G_k(x, y) = Gamma_k^- x o_{k+1} eps_k y",
                     "instances": res.pairs, "failures": res.composer_mismatches})
    return rows


def _suite_homotopy(args):
    rows = []
    for n in range(1, args.max_dim + 1):
        for k in range(1, n + 1):
            for s in signs.SIGNS:
                bad = factorization.homotopy_defects(factorization.ProjectionPair(n, k, s))
                rows.append({"equation": f"dD + Dd = id - f, n={n} k={k} sign={s}",
                             "instances": len(chains.basis(n)), "failures": len(bad)})
    return rows


def _suite_factorization(args):
    rows = []
    for n in range(1, args.max_dim + 1):
        for k in range(1, n + 1):
            for s in signs.SIGNS:
                report = factorization.verify(factorization.ProjectionPair(n, k, s))
                rows.append({"equation": f"factorization n={n} k={k} sign={s}",
                             "instances": len(report),
                             "failures": sum(1 for v in report.values() if not v)})
    return rows


def _suite_combinatorics(args):
    rows = []
    for n in range(1, args.max_dim + 1):
        for k in range(1, n + 1):
            for s in signs.SIGNS:
                found = len(precubical.complementary_ops(n, k, s))
                rows.append({"equation": f"complementary to d{k}{s} on {n}-cubes",
                             "instances": 1, "failures": int(found != 2 ** (n - 1))})
    return rows


SUITES = {
    "abs-identities": _suite_abs,
    "round-trips": _suite_round_trips,
    "homotopy": _suite_homotopy,
    "factorization": _suite_factorization,
    "combinatorics": _suite_combinatorics,
}


def cmd_verify(args):
    start = time.perf_counter()
    rows = SUITES[args.suite](args)
    failures = sum(r["failures"] for r in rows)
    lines = []
    for r in rows:
        tag = "ok  " if not r["failures"] else "FAIL"
        where = f"[{r['nerve']}] " if "nerve" in r else ""
        lines.append(f"{tag} {r['instances']:5d} {where}{r['equation']}")
    lines.append(f"{len(rows)} checks, {failures} failures, "
                 f"{time.perf_counter() - start:.1f}s")
    _emit(args, {"suite": args.suite, "rows": rows, "failures": failures}, "\n".join(lines))
    return 0 if failures == 0 else 1


def cmd_counterexample(args):
    C, shell, filler, report = counterexample()
    data = report.to_json()
    lines = [
        f"category: {len(C.cells)} cells, problems: {categories.validate_category(C) or 'none'}",
        f"shell composites d_2^-<u_3>, d_2^+<u_3>: {report.shell_values[0]}, {report.shell_values[1]}",
        f"filler top: {report.filler_top} (thin: {report.filler_thin})",
    ]
    for f in data["faces"]:
        lines.append(f"  {f['face']}: {f['top']:3s} {'thin' if f['thin'] else 'not thin'}")
    lines.append(f"box opposite d2- admissible: {report.box_admissible}")
    lines.append(f"holds: {report.holds}")
    _emit(args, data, "\n".join(lines))
    return 0 if report.holds else 1


def cmd_check_pcs(args):
    try:
        X = pcs.FinitePCS.load(args.file)
    except (OSError, ValueError, KeyError) as exc:
        print(f"cannot load {args.file}: {exc}", file=sys.stderr)
        return 2
    problems = pcs.validate_pcs(X)
    if problems:
        _emit(args, {"valid": False, "problems": problems},
              "invalid precubical set:\n" + "\n".join(f"  {p}" for p in problems))
        return 1
    rep = pcs.completeness_check(X, args.max_dim)
    data = rep.to_json()
    lines = [
        f"{len(X)} cubes, dimensions {rep.checked_dims} checked",
        f"boxes {rep.boxes_seen} (admissible {rep.admissible_boxes}), "
        f"shells {rep.shells_seen} (admissible {rep.admissible_shells}), skipped {rep.skipped}",
    ]
    for key in ("existence_failures", "uniqueness_failures", "thin_face_failures"):
        for item in data[key]:
            lines.append(f"  {key[:-9]} failure: {item['kind']} {item['structure']} "
                         f"fillers={item['fillers']}")
    lines.append("complete" if rep.complete else "NOT complete")
    _emit(args, data, "\n".join(lines))
    return 0 if rep.complete else 1


def cmd_export_pcs(args):
    X = pcs.export_nerve(FIXTURES[args.fixture](), args.max_dim)
    if args.seed_failure == "duplicate":
        X, _ = pcs.seeded_duplicate(X, args.max_dim)
    elif args.seed_failure == "remove":
        X, _ = pcs.seeded_removal(X, args.max_dim)
    X.dump(args.output)
    print(f"wrote {len(X)} cubes to {args.output}")
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="cubenerve")
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("factorize", help="factor an (n-1)-face of <u_n> through a box")
    f.add_argument("--n", type=int, required=True)
    f.add_argument("--k", type=int, required=True)
    f.add_argument("--sign", choices=signs.SIGNS, required=True)
    f.add_argument("--json", action="store_true")
    f.set_defaults(func=cmd_factorize)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", choices=sorted(SUITES), required=True)
    v.add_argument("--max-dim", type=int, default=3)
    v.add_argument("--samples", type=int, default=200)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--fixture", choices=sorted(FIXTURES), action="append")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("counterexample", help="thin filler with one non-thin face")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_counterexample)

    k = sub.add_parser("check-pcs", help="completeness of a stratified precubical set")
    k.add_argument("file")
    k.add_argument("--max-dim", type=int, required=True)
    k.add_argument("--json", action="store_true")
    k.set_defaults(func=cmd_check_pcs)

    e = sub.add_parser("export-pcs", help="write a truncated nerve as JSON")
    e.add_argument("--fixture", choices=sorted(FIXTURES), default="counterexample")
    e.add_argument("--max-dim", type=int, default=2)
    e.add_argument("--seed-failure", choices=("duplicate", "remove"))
    e.add_argument("-o", "--output", required=True)
    e.set_defaults(func=cmd_export_pcs)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    if getattr(args, "fixture", None) is None and args.command == "verify":
        args.fixture = sorted(FIXTURES)
    return args.func(args)
