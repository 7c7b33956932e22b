"""Command-line interface.

Exit codes: 0 success, 1 oracle inconsistency, 2 bad parameters, 3 enumeration or field budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

from . import exceptional as exc
from . import gfmat
from .classify import classify_classical, classify_exceptional, degenerate_census, verdict_record
from .errors import BudgetError, ParameterError, UnsupportedError
from .rootsys import RootSystemType, build_root_system, expected_root_count, q_bound, weight_lattice_min_norm
from .torus import algebraic_normaliser_order, torus_factor_orders
from .weylclass import CLASSICAL_FAMILIES, enumerate_torus_classes, make_descriptor

CSV_HEADER = ["family", "n", "q", "class", "status", "clauses", "torus_order", "algebraic_normaliser_order"]


@dataclass
class CommandConfig:
    subcommand: str
    family: str | None = None
    group: str | None = None
    n: list | None = None
    q: list | None = None
    cls: str | None = None
    label: str | None = None
    fmt: str = "json"
    budget: int | None = None
    simple_filter: bool = True
    exceptional: bool = False
    all_groups: bool = False
    route: str = "auto"
    derived: bool = False


def parse_range(text):
    """'4', '2..5' or '2,3,5' -> sorted list of ints."""
    out = set()
    for part in str(text).split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..")
            out.update(range(int(lo), int(hi) + 1))
        elif part:
            out.add(int(part))
    if not out:
        raise ParameterError(f"empty range {text!r}")
    return sorted(out)


def build_parser():
    ap = argparse.ArgumentParser(prog="lietori", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="subcommand", required=True)

    def common(p, cls=True, ranges=False):
        p.add_argument("--family", choices=CLASSICAL_FAMILIES)
        p.add_argument("--n", required=not ranges and cls, help="rank parameter" + (" or range 2..5" if ranges else ""))
        p.add_argument("--q", required=not ranges and cls, help="prime power" + (" or range" if ranges else ""))
        if cls:
            p.add_argument("--class", dest="cls", help='class string such as "(2)(1)(1-)" or "(2)(2)#2"')
        p.add_argument("--format", dest="fmt", choices=("json", "csv", "md"), default="json")
        p.add_argument("--no-simple-filter", dest="simple_filter", action="store_false")

    p = sub.add_parser("rootsys", help="root system data for a type such as A3 or E8")
    p.add_argument("--type", required=True)
    p.add_argument("--format", dest="fmt", choices=("json", "csv", "md"), default="json")

    common(sub.add_parser("classes", help="list torus classes"))
    common(sub.add_parser("classify", help="verdict for one class"))
    common(sub.add_parser("torus", help="torus structure for one class"))

    p = sub.add_parser("census", help="degenerate classes over ranges, or the exceptional tables")
    common(p, cls=False, ranges=True)
    p.add_argument("--exceptional", action="store_true")
    p.add_argument("--all", dest="all_groups", action="store_true", help="with --exceptional: every group")
    p.add_argument("--group", choices=exc.EXCEPTIONAL_GROUPS)

    p = sub.add_parser("verify", help="check classifier verdicts against the matrix oracle")
    common(p)
    p.add_argument("--budget", type=int)
    p.add_argument("--route", choices=("auto", "brute-force", "witness"), default="auto")
    p.add_argument("--derived", action="store_true", help="brute force inside the derived subgroup")

    p = sub.add_parser("exceptional", help="verdict for an exceptional class label")
    p.add_argument("--group", required=True, choices=exc.EXCEPTIONAL_GROUPS)
    p.add_argument("--label", required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--format", dest="fmt", choices=("json", "csv", "md"), default="json")
    return ap


def config_from_args(ns) -> CommandConfig:
    d = vars(ns)
    cfg = CommandConfig(subcommand=ns.subcommand)
    for key in ("family", "group", "cls", "label", "fmt", "budget", "simple_filter", "exceptional",
                "all_groups", "route", "derived"):
        if d.get(key) is not None:
            setattr(cfg, key, d[key])
    if ns.subcommand == "rootsys":
        cfg.family = ns.type
    for key in ("n", "q"):
        if d.get(key) is not None:
            setattr(cfg, key, parse_range(d[key]))
    return cfg


# --- output --------------------------------------------------------------

def _csv_row(record):
    desc = record["descriptor"]
    return [desc["family"], desc["n"], desc["q"], desc["class"], record["status"],
            ";".join(record["clauses"]), record.get("torus", {}).get("intersected_order", ""),
            "" if record.get("normaliser_orders", {}).get("algebraic") is None
            else record["normaliser_orders"]["algebraic"]]


def emit_records(records, fmt, out):
    if fmt == "json":
        for r in records:
            out.write(json.dumps(r) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in records:
            w.writerow(_csv_row(r))
        out.write(buf.getvalue())
    else:
        out.write("| " + " | ".join(CSV_HEADER) + " |\n")
        out.write("|" + "---|" * len(CSV_HEADER) + "\n")
        for r in records:
            out.write("| " + " | ".join(str(x) for x in _csv_row(r)) + " |\n")


def _exceptional_record(group, q, label, verdict):
    return {
        "descriptor": {"family": group, "n": exc.GROUP_RANK.get(group, ""), "q": q, "class": label},
        "status": verdict.status,
        "clauses": list(verdict.clauses),
        "witness_roots": list(verdict.witness_roots),
    }


# --- commands ------------------------------------------------------------

def _single(cfg):
    if not cfg.family or not cfg.cls:
        raise ParameterError("--family, --n, --q and --class are required")
    return make_descriptor(cfg.family, cfg.n[0], cfg.q[0], cfg.cls, simple_filter=cfg.simple_filter)


def cmd_rootsys(cfg, out):
    t = RootSystemType.parse(cfg.family)
    rs = build_root_system(t)
    data = rs.to_json()
    data["root_count"] = len(rs.roots)
    data["expected_root_count"] = expected_root_count(t)
    data["weights"] = [[str(x) for x in w] for w in rs.weights]
    data["q_bound"] = q_bound(t)
    data["min_norm"] = str(weight_lattice_min_norm(t))
    out.write(json.dumps(data) + "\n")


def cmd_classes(cfg, out):
    if not cfg.family:
        raise ParameterError("--family is required")
    for d in enumerate_torus_classes(cfg.family, cfg.n[0], cfg.q[0], cfg.simple_filter):
        if cfg.fmt == "json":
            out.write(json.dumps(d.to_json()) + "\n")
        else:
            out.write(d.class_string + "\n")


def cmd_classify(cfg, out):
    d = _single(cfg)
    emit_records([verdict_record(d, classify_classical(d, cfg.simple_filter))], cfg.fmt, out)


def cmd_torus(cfg, out):
    d = _single(cfg)
    data = {"descriptor": d.to_json(), **torus_factor_orders(d).to_json()}
    try:
        data["algebraic_normaliser_order"] = algebraic_normaliser_order(d)
    except ParameterError:
        data["algebraic_normaliser_order"] = None
    out.write(json.dumps(data) + "\n")


def cmd_census(cfg, out):
    if cfg.exceptional or cfg.group:
        groups = exc.EXCEPTIONAL_GROUPS if (cfg.all_groups or not cfg.group) else [cfg.group]
        records = []
        for group in groups:
            census = degenerate_census(group, q_range=cfg.q)
            records += [_exceptional_record(g, q, label, v) for (g, q, label), v in census.rows]
        degenerate = [r for r in records if r["status"] == "Degenerate"]
        emit_records(degenerate, cfg.fmt, out)
        summary = out if cfg.fmt != "csv" else sys.stderr
        summary.write(f"total degenerate classes: {len(degenerate)}\n")
        return
    if not cfg.family or not cfg.n or not cfg.q:
        raise ParameterError("census needs --family, --n and --q (or --exceptional)")
    census = degenerate_census(cfg.family, cfg.n, cfg.q, cfg.simple_filter)
    records = [verdict_record(d, v) for d, v in census.rows]
    emit_records(records, cfg.fmt, out)
    summary = out if cfg.fmt != "csv" else sys.stderr
    summary.write(f"total degenerate classes: {len(census.degenerate)} of {census.total}\n")


def verify_record(d, route="auto", budget=None, derived=False):
    """One JSON-ready oracle record, falling back from brute force to the witness route."""
    from . import verify as vf

    verdict = classify_classical(d, simple_filter=False)
    record = {"descriptor": d.to_json(), "status": verdict.status}
    if route in ("auto", "brute-force"):
        try:
            rep = vf.brute_force_normalizer_report(d, derived=derived, budget=budget)
            record.update(rep.to_json())
            record["consistent"] = rep.degenerate == verdict.degenerate
            return record
        except (BudgetError, UnsupportedError):
            if route == "brute-force":
                raise
    record["route"] = "witness"
    record["full_normalizer_order"] = "not computed"
    try:
        vanishing = vf.vanishing_roots(d)
    except BudgetError as e:
        record["vanishing_roots"] = "not computed"
        record["note"] = str(e)
        record["consistent"] = None
        return record
    record["vanishing_roots"] = vanishing
    consistent = bool(vanishing) == verdict.degenerate and set(verdict.witness_roots) <= set(vanishing)
    if verdict.degenerate:
        rep = vf.verify_witness(d)
        record["witness_checks"] = rep.to_json()["checks"]
        consistent = consistent and rep.ok
    record["consistent"] = consistent
    return record


def cmd_verify(cfg, out):
    if not cfg.family:
        raise ParameterError("--family is required")
    budget = cfg.budget if cfg.budget is not None else gfmat.default_budget()
    if cfg.cls:
        descriptors = [_single(cfg)]
    else:
        descriptors = enumerate_torus_classes(cfg.family, cfg.n[0], cfg.q[0], cfg.simple_filter)
    ok = True
    for d in descriptors:
        record = verify_record(d, cfg.route, budget, cfg.derived)
        ok = ok and record["consistent"] is not False
        out.write(json.dumps(record) + "\n")
    return 0 if ok else 1


def cmd_exceptional(cfg, out):
    q = cfg.q[0]
    verdict = classify_exceptional(cfg.group, cfg.label, q)
    emit_records([_exceptional_record(cfg.group, q, exc.normalize_label(cfg.label), verdict)], cfg.fmt, out)


COMMANDS = {
    "rootsys": cmd_rootsys, "classes": cmd_classes, "classify": cmd_classify, "torus": cmd_torus,
    "census": cmd_census, "verify": cmd_verify, "exceptional": cmd_exceptional,
}


def run(cfg: CommandConfig, out=None) -> int:
    out = out or sys.stdout
    try:
        return COMMANDS[cfg.subcommand](cfg, out) or 0
    except BudgetError as e:
        sys.stderr.write(f"budget exceeded: {e}\n")
        return 3
    except (ParameterError, ValueError) as e:
        sys.stderr.write(f"error: {e}\n")
        return 2


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
        cfg = config_from_args(ns)
    except ParameterError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    except SystemExit as e:  # argparse usage errors
        return 2 if e.code else 0
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
