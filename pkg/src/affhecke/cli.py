"""
Command-line interface.

    affhecke describe --datum A2
    affhecke xq --datum examples/a2_swap.yaml --format json
    affhecke hh --datum A2 --max-degree 4 --verify
    affhecke hp --datum A1 --flavor affine
    affhecke verify --datum B2 --suite hecke --seed 3
    affhecke reps --datum A1 --point 1/2

Exit status is 0 iff every requested check passed and no size guard tripped;
configuration errors exit with status 2.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from affhecke import __version__
from affhecke.config import ConfigError, DatumConfig, load_datum
from affhecke.hecke import SizeGuardExceeded
from affhecke.homology import SCHEMA_VERSION, FLAVORS, homology_report, hp_betti
from affhecke.parameters import ParameterError, ParamFunction, convert_parameters
from affhecke.quotient import extended_quotient
from affhecke.reps import (
    artin_basis_check,
    clifford_count,
    fiber_count,
    orbit_representatives,
    torsion_points_up_to,
    torus_point,
    trace_matrix,
)
from affhecke.root_datum import RootDatumError, nonreduced_roots
from affhecke.weyl import ExtendedAffineWeyl, GroupTooLarge, diagram_automorphisms, extended_group

__all__ = ["main", "build_parser"]

JOBS_ENV = "AFFHECKE_JOBS"
VERBS = ("describe", "xq", "hh", "hp", "verify", "reps")


def _positive(value: str) -> int:
    n = int(value)
    if n <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return n


def _nonnegative(value: str) -> int:
    n = int(value)
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {value}")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="affhecke", description="Affine and graded Hecke algebra computations.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--datum", required=True, help="datum YAML file, or an inline spec like A2 or B2:sc")
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--output", help="write the report to this file instead of stdout")
    default_jobs = int(os.environ.get(JOBS_ENV, "1") or 1)
    common.add_argument("--jobs", type=_positive, default=default_jobs,
                        help=f"worker processes (default ${JOBS_ENV} or 1)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")

    sub.add_parser("describe", parents=[common], help="root datum summary")
    sub.add_parser("xq", parents=[common], help="extended quotient strata")
    hh = sub.add_parser("hh", parents=[common], help="Hochschild homology series of the graded algebra")
    hh.add_argument("--max-degree", type=_nonnegative, default=6)
    hh.add_argument("--verify", action="store_true", help="compare with the Reynolds-operator oracle")
    hp = sub.add_parser("hp", parents=[common], help="periodic cyclic homology Betti numbers")
    hp.add_argument("--flavor", choices=FLAVORS, default="affine")
    hp.add_argument("--verify", action="store_true", help="compare with the exterior-algebra brute force")
    hp.add_argument("--max-degree", type=_nonnegative, default=4)
    ver = sub.add_parser("verify", parents=[common], help="run verification suites")
    ver.add_argument("--suite", choices=("hecke", "graded", "xq", "reps", "homology", "all"), default="all")
    ver.add_argument("--max-degree", type=_nonnegative, default=6)
    ver.add_argument("--triples", type=_positive, default=50, help="random triples for associativity")
    rp = sub.add_parser("reps", parents=[common], help="q = 1 representations at torsion points")
    rp.add_argument("--point", help="torus point as comma-separated rationals, e.g. 1/2,0")
    rp.add_argument("--exponent", type=_positive, default=6, help="largest order of torsion points")
    rp.add_argument("--verify", action="store_true", help="exit nonzero unless every check holds")
    return p


# -- commands -------------------------------------------------------------------------------

def cmd_describe(cfg: DatumConfig, args) -> tuple[dict, bool]:
    rd = cfg.rd
    nr = nonreduced_roots(rd)
    E = ExtendedAffineWeyl(rd)
    omega = E.omega_order()
    params = ParamFunction.from_spec(E, cfg.parameters)
    try:
        qR = {str(list(k)): str(v) for k, v in sorted(convert_parameters(params, "R").items())}
    except ParameterError as exc:
        qR = {"error": str(exc)}
    report = {
        "schema_version": SCHEMA_VERSION,
        "datum": cfg.label,
        "rank": rd.rank,
        "semisimple_rank": rd.semisimple_rank,
        "n_roots": len(rd.roots),
        "n_roots_nr": len(nr.nr_roots),
        "n_roots_nr_extra": len(nr.nr_roots) - len(rd.roots),
        "weyl_order": len(E.W),
        "omega_order": omega if omega is not None else "infinite",
        "simple_affine_reflections": list(E.S_labels),
        "parameter_classes": params.describe(),
        "parameters_R": qR,
        "gamma_candidates": [list(g.perm) for g in diagram_automorphisms(rd)],
        "gamma": [list(g.perm) for g in cfg.gammas],
        "simple_roots": [list(a) for a in rd.simple_roots],
        "simple_coroots": [list(a) for a in rd.simple_coroots],
    }
    return report, True


def cmd_xq(cfg: DatumConfig, args) -> tuple[dict, bool]:
    xq = extended_quotient(cfg.rd, cfg.gammas)
    report = {"schema_version": SCHEMA_VERSION, "datum": cfg.label, **xq.to_json()}
    return report, True


def cmd_hh(cfg: DatumConfig, args) -> tuple[dict, bool]:
    report = homology_report(cfg.rd, cfg.gammas, args.max_degree, verify=args.verify, label=cfg.label)
    ok = True
    if args.verify:
        ok = all(v == "match" for v in report["verification"].values())
        report["verification"]["oracle"] = "match" if ok else "MISMATCH"
    return report, ok


def cmd_hp(cfg: DatumConfig, args) -> tuple[dict, bool]:
    G = extended_group(cfg.rd, cfg.gammas)
    b = hp_betti(group=G, flavor=args.flavor)
    report = {
        "schema_version": SCHEMA_VERSION,
        "datum": cfg.label,
        "flavor": args.flavor,
        "even": b.even,
        "odd": b.odd,
        "n_classes": len(G.conjugacy_classes()),
        "per_stratum": [list(p) for p in b.per_stratum],
    }
    ok = True
    if args.verify:
        from affhecke.homology import hp_betti_brute_force
        if args.flavor == "graded":
            ok = b.as_tuple() == (len(G.conjugacy_classes()), 0)
        else:
            ok = b.as_tuple() == hp_betti_brute_force(group=G).as_tuple()
        report["verification"] = "match" if ok else "MISMATCH"
    return report, ok


def cmd_verify(cfg: DatumConfig, args) -> tuple[dict, bool]:
    from affhecke.verify import run_suite
    reports = run_suite(cfg, args.suite, seed=args.seed, triples=args.triples,
                        max_degree=args.max_degree, jobs=args.jobs)
    ok = all(r.ok for r in reports)
    return {"schema_version": SCHEMA_VERSION, "datum": cfg.label, "ok": ok,
            "suites": [r.to_json() for r in reports]}, ok


def _point_report(G, tau) -> dict:
    tm = trace_matrix(G, tau)
    art = artin_basis_check(G, tau)
    cc = clifford_count(G, tau)
    fc = fiber_count(G, tau)
    entry = tm.to_json(G)
    entry.update({
        "artin": art.to_json(),
        "clifford_count": list(cc),
        "fiber_count": list(fc),
    })
    entry["ok"] = bool(entry["invertible"] and art.ok and cc[0] == cc[1] and fc[0] == fc[1])
    return entry


def cmd_reps(cfg: DatumConfig, args) -> tuple[dict, bool]:
    G = extended_group(cfg.rd, cfg.gammas)
    if args.point:
        vals = [Fraction(v) for v in args.point.split(",")] if args.point.strip() else []
        if len(vals) != cfg.rd.rank:
            raise ConfigError(f"--point needs {cfg.rd.rank} coordinates, got {len(vals)}")
        points = [torus_point(vals)]
    else:
        points = orbit_representatives(G, torsion_points_up_to(cfg.rd.rank, args.exponent))
    if args.jobs > 1 and len(points) > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            entries = list(ex.map(_point_report, [G] * len(points), points))
    else:
        entries = [_point_report(G, t) for t in points]
    ok = all(e["ok"] for e in entries)
    return {"schema_version": SCHEMA_VERSION, "datum": cfg.label, "group_order": len(G),
            "points": entries, "ok": ok}, ok or not args.verify


COMMANDS = {"describe": cmd_describe, "xq": cmd_xq, "hh": cmd_hh, "hp": cmd_hp,
            "verify": cmd_verify, "reps": cmd_reps}


# -- table rendering ----------------------------------------------------------------------------

def _table(rows: list, header: list) -> str:
    cells = [[str(c) for c in header]] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _mat(m) -> str:
    return "[" + ";".join(" ".join(str(x) for x in row) for row in m) + "]"


def render_table(command: str, report: dict) -> str:
    out = [f"datum: {report.get('datum', '')}"]
    if command == "describe":
        for k in ("rank", "semisimple_rank", "n_roots", "n_roots_nr", "n_roots_nr_extra", "weyl_order",
                  "omega_order"):
            out.append(f"{k}: {report[k]}")
        out.append("S^aff: " + " ".join(report["simple_affine_reflections"]))
        out.append("parameters: " + ", ".join(f"{k} -> {v}" for k, v in report["parameter_classes"].items()))
        out.append("Γ candidates: " + str(report["gamma_candidates"]))
    elif command == "xq":
        rows = [(_mat(s["class_rep"]), s["class_size"], s["d_w"], s["n_components"], s["c_w"],
                 s["torsion"]) for s in report["strata"]]
        out.append(_table(rows, ["w", "|class|", "d_w", "#components", "c(w)", "torsion"]))
        out.append(f"total components: {report['total_components']}")
    elif command == "hh":
        rows = []
        for s in report["strata"]:
            rows.append((_mat(s["class_rep"]), s["d_w"], f"({s['series']['num']})/({s['series']['den']})"))
        out.append(_table(rows, ["w", "dim t^w", "series in u (forms), s (degree)"]))
        out.append("total HH table (rows p, columns d):")
        for p, row in enumerate(report["totals"]["hh_table"]):
            out.append(f"  p={p}: " + " ".join(str(v) for v in row))
        for f, b in report["totals"]["betti"].items():
            out.append(f"HP {f}: ({b['even']}, {b['odd']})")
        if "verification" in report:
            out.append("oracle: " + report["verification"]["oracle"])
    elif command == "hp":
        out.append(f"HP {report['flavor']}: ({report['even']}, {report['odd']})")
        if "verification" in report:
            out.append("oracle: " + report["verification"])
    elif command == "verify":
        for s in report["suites"]:
            for c in s["checks"]:
                mark = "PASS" if c["ok"] else "FAIL"
                line = f"[{mark}] {s['suite']}: {c['name']}"
                if not c["ok"] and c["detail"]:
                    line += f" ({c['detail']})"
                out.append(line)
        out.append("all checks passed" if report["ok"] else "some checks FAILED")
    elif command == "reps":
        rows = []
        for e in report["points"]:
            rows.append(("(" + ", ".join(e["t"]) + ")", e["isotropy_order"], f"{e['rank']}/{len(e['class_reps'])}",
                         f"{e['artin']['rank']}/{e['artin']['n_classes']}", tuple(e["clifford_count"]),
                         tuple(e["fiber_count"]), "ok" if e["ok"] else "FAIL"))
        out.append(_table(rows, ["t", "|W'_t|", "trace rank", "Artin rank", "clifford", "fiber", ""]))
    return "\n".join(out)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_datum(args.datum)
        report, ok = COMMANDS[args.command](cfg, args)
    except (ConfigError, RootDatumError, ParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (GroupTooLarge, SizeGuardExceeded) as exc:
        print(f"guard tripped: {exc}", file=sys.stderr)
        return 3
    if args.format == "json":
        text = json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False)
    else:
        text = render_table(args.command, report)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
