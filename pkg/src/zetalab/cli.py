"""Command-line front door: orchestration, caching, JSON/CSV reports.

Subcommands cover the pipeline stages: factorize (certificates and their
independent re-verification), hybrid (exact and asymptotic crossbred
identities), graft (strip-root searches with doubled-order rechecks),
meta (the full grafted identity set), and scan (meta across every
configured L, plus a residual-vs-L trend table for plots).

Exit codes: 0 when everything gated passed, 2 on a numerical failure,
3 on a configuration error, 4 when a strip search found no root.  When
several apply, 3 beats 2 beats 4.  The _LITERAL reports record known
misprint variants and never influence the exit code.

Written artifacts are deterministic: JSON is key-sorted with a trailing
newline and CSV columns are fixed, so a warm-cache rerun is byte
identical.  Wall-clock timing goes to a .meta.json sidecar next to the
JSON report, never into the report itself.
"""

import argparse
import csv
import dataclasses
import io
import json
import os
import statistics
import sys
import time

from . import meta
from .bohr import verify_graft
from .config import load_config
from .errors import ConfigError, NotFoundError, ZetaLabError
from .factorization import COS2, COS2T, SIN2, factorize, verify_certificate
from .identity import EquationId

EXIT_OK = 0
EXIT_NUMERICAL = 2
EXIT_CONFIG = 3
EXIT_NOTFOUND = 4

UNGATED = {EquationId.THM2_LITERAL.value, EquationId.SEC_LITERAL.value}

CSV_COLUMNS = (
    "L",
    "U",
    "k1",
    "k2",
    "k3",
    "equation_id",
    "lhs",
    "rhs",
    "residual",
    "tolerance",
    "verdict",
)

COMMANDS = ("factorize", "hybrid", "graft", "meta", "scan")


def _build_parser():
    p = argparse.ArgumentParser(
        prog="zetalab",
        description="certificate, hybrid-identity, and graft pipeline runner",
    )
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", default=None, help="sectioned key=value config file")
    p.add_argument("--cache", default=None, help="ladder table cache file")
    p.add_argument("--json", dest="json_path", default=None, help="report JSON path")
    p.add_argument("--csv", dest="csv_path", default=None, help="report CSV path")
    p.add_argument(
        "--jobs",
        type=int,
        default=1,
        help="worker budget; accepted for interface stability, execution is serial",
    )
    p.add_argument(
        "--seedless",
        action="store_true",
        default=True,
        help="reserved; the pipeline uses no randomness anywhere",
    )
    return p


def _apply_flags(cfg, args):
    if args.jobs < 1:
        raise ConfigError("--jobs must be >= 1")
    out = cfg.output
    if args.json_path is not None or args.csv_path is not None:
        out = dataclasses.replace(
            out,
            json_path=args.json_path if args.json_path is not None else out.json_path,
            csv_path=args.csv_path if args.csv_path is not None else out.csv_path,
        )
    kw = {"output": out}
    if args.cache is not None:
        kw["cache_path"] = args.cache
    return dataclasses.replace(cfg, **kw)


# -- deterministic writers --------------------------------------------


def _atomic_write(path, text):
    tmp = "%s.tmp.%d" % (path, os.getpid())
    with open(tmp, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _write_json(path, payload):
    _atomic_write(path, json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _write_csv(path, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    w.writerows(rows)
    _atomic_write(path, buf.getvalue())


def _write_sidecar(json_path, command, elapsed):
    meta_path = json_path + ".meta.json"
    payload = {
        "command": command,
        "elapsed_seconds": elapsed,
        "written_at_unix": time.time(),
    }
    _atomic_write(meta_path, json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _csv_rows(bundles):
    rows = []
    for b in bundles:
        for r in b.get("reports", ()):
            rows.append(
                (
                    b["L"],
                    b["U_n"],
                    b["k1"],
                    b["k2"],
                    b["k3"],
                    r["equation_id"],
                    r["lhs"],
                    r["rhs"],
                    r["residual"],
                    r["tolerance"],
                    r["verdict"],
                )
            )
    return rows


def _trend_rows(bundles):
    """Median residual per (equation_id, L) for plot-ready trend tables."""
    groups = {}
    for b in bundles:
        for r in b.get("reports", ()):
            groups.setdefault((r["equation_id"], b["L"]), []).append(r["residual"])
    rows = []
    for (eq, L), residuals in sorted(groups.items()):
        rows.append((eq, L, statistics.median(residuals), len(residuals)))
    return rows


def _write_trend_csv(path, bundles):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("equation_id", "L", "median_residual", "count"))
    w.writerows(_trend_rows(bundles))
    _atomic_write(path, buf.getvalue())


# -- stage runners ----------------------------------------------------


def _cert_triple(cfg, lt, L, U):
    k1, k2, k3 = cfg.grid.k_triple
    c1 = factorize(SIN2, L, U, k1, lt)
    c2 = factorize(COS2, L, U, k2, lt)
    c3 = factorize(COS2T, L, U, k3, lt)
    return c1, c2, c3


def _new_bundle(cfg, L, U):
    k1, k2, k3 = cfg.grid.k_triple
    return {
        "L": int(L),
        "U_n": float(U),
        "k1": int(k1),
        "k2": int(k2),
        "k3": int(k3),
        "certificates": [],
        "grafts": [],
        "reports": [],
    }


def _run_factorize(cfg, engine, lt, flags):
    cert_tol = cfg.tolerances.cert_tol
    bundles = []
    for L in cfg.grid.l_values:
        for U in cfg.grid.u_values:
            bundle = _new_bundle(cfg, L, U)
            try:
                certs = _cert_triple(cfg, lt, L, U)
                bundle["certificates"] = [c.to_dict() for c in certs]
                reports = []
                for c in certs:
                    if c.residual > cert_tol:
                        flags["numerical"] = True
                    rep = verify_certificate(c, lt, cert_tol=cert_tol)
                    reports.append(rep)
                    if rep.verdict != "PASS":
                        flags["numerical"] = True
                bundle["reports"] = [r.to_dict() for r in reports]
            except ZetaLabError as exc:
                bundle["error"] = "%s: %s" % (type(exc).__name__, exc)
                flags["numerical"] = True
            bundles.append(bundle)
    return bundles


def _run_hybrid(cfg, engine, lt, flags):
    exact_tol = cfg.tolerances.cert_tol
    envelope = cfg.tolerances.meta_envelope
    bundles = []
    for L in cfg.grid.l_values:
        for U in cfg.grid.u_values:
            bundle = _new_bundle(cfg, L, U)
            try:
                c1, c2, c3 = _cert_triple(cfg, lt, L, U)
                bundle["certificates"] = [c.to_dict() for c in (c1, c2, c3)]
                reports = [
                    meta.assemble_echf1(c1, c2, tol=exact_tol),
                    meta.assemble_diff(c1, c2, tol=exact_tol),
                    meta.assemble_echf2(c1, c2, c3, tol=exact_tol),
                    meta.assemble_achf(
                        (c1, c2), EquationId.ACHF1, engine, envelope=envelope
                    ),
                    meta.assemble_achf(
                        (c1, c2, c3), EquationId.ACHF2, engine, envelope=envelope
                    ),
                ]
                bundle["reports"] = [r.to_dict() for r in reports]
            except ZetaLabError as exc:
                bundle["error"] = "%s: %s" % (type(exc).__name__, exc)
                flags["numerical"] = True
            bundles.append(bundle)
    return bundles


def _run_graft(cfg, engine, lt, flags):
    b = cfg.bohr
    bundles = []
    for L in cfg.grid.l_values:
        for U in cfg.grid.u_values:
            bundle = _new_bundle(cfg, L, U)
            try:
                certs = _cert_triple(cfg, lt, L, U)
                bundle["certificates"] = [c.to_dict() for c in certs]
                a_values = meta.graft_targets(certs)
                bundle["a_values"] = [float(a) for a in a_values]
                points, failures = meta.attempt_grafts(
                    a_values,
                    cfg.strips,
                    engine,
                    t_start=b.t_start,
                    t_max=b.t_max,
                    h_w=b.h_w,
                    root_tol=b.root_tol_bohr,
                )
                grafts = []
                for gp in points:
                    if gp is None:
                        continue
                    d = gp.to_dict()
                    d["recheck_residual"] = verify_graft(engine, gp)
                    grafts.append(d)
                bundle["grafts"] = grafts
                missing = [str(exc) for exc in failures if exc is not None]
                if missing:
                    bundle["graft_errors"] = missing
                    flags["notfound"] = True
            except ZetaLabError as exc:
                bundle["error"] = "%s: %s" % (type(exc).__name__, exc)
                flags["numerical"] = True
            bundles.append(bundle)
    return bundles


def _run_meta(cfg, engine, lt, flags):
    b = cfg.bohr
    bundles = []
    for L in cfg.grid.l_values:
        bundles.extend(
            meta.scan_u_grid(
                cfg.u_grid(),
                L=L,
                k_triple=cfg.grid.k_triple,
                layout=cfg.strips,
                lt=lt,
                exact_tol=cfg.tolerances.cert_tol,
                envelope=cfg.tolerances.meta_envelope,
                t_start=b.t_start,
                t_max=b.t_max,
                h_w=b.h_w,
                root_tol=b.root_tol_bohr,
                include_secondary=True,
            )
        )
    for bundle in bundles:
        if bundle.get("graft_errors"):
            flags["notfound"] = True
        if "error" in bundle:
            flags["numerical"] = True
    return bundles


def _gate_reports(bundles, flags):
    for b in bundles:
        for r in b.get("reports", ()):
            if r["equation_id"] in UNGATED:
                continue
            if r["verdict"] != "PASS":
                flags["numerical"] = True


def _run(command, cfg):
    engine = cfg.make_engine()
    lt = cfg.make_ladder(engine)
    flags = {"numerical": False, "notfound": False}

    if command == "factorize":
        bundles = _run_factorize(cfg, engine, lt, flags)
    elif command == "hybrid":
        bundles = _run_hybrid(cfg, engine, lt, flags)
    elif command == "graft":
        bundles = _run_graft(cfg, engine, lt, flags)
    else:
        # meta and scan share the bundle builder; scan adds the trend table
        bundles = _run_meta(cfg, engine, lt, flags)

    _gate_reports(bundles, flags)
    cfg.save_ladder(lt)

    payload = {
        "command": command,
        "config": cfg.to_dict(),
        "bundles": bundles,
        "cache": dict(lt.hardy.cache_stats, path=cfg.cache_path or None),
    }
    return payload, flags


def _exit_code(flags):
    if flags["numerical"]:
        return EXIT_NUMERICAL
    if flags["notfound"]:
        return EXIT_NOTFOUND
    return EXIT_OK


def _summarize(payload, stream):
    for b in payload["bundles"]:
        verdicts = [r["verdict"] for r in b.get("reports", ())]
        line = "L=%d U=%.6f: %d reports, %d FAIL" % (
            b["L"],
            b["U_n"],
            len(verdicts),
            sum(v != "PASS" for v in verdicts),
        )
        if b.get("graft_errors"):
            line += ", %d strip searches empty" % len(b["graft_errors"])
        if "error" in b:
            line += ", error: %s" % b["error"]
        print(line, file=stream)


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        cfg = _apply_flags(cfg, args)
    except ConfigError as exc:
        print("config error: %s" % exc, file=sys.stderr)
        return EXIT_CONFIG

    t0 = time.time()
    try:
        payload, flags = _run(args.command, cfg)
    except ConfigError as exc:
        print("config error: %s" % exc, file=sys.stderr)
        return EXIT_CONFIG
    except NotFoundError as exc:
        payload = {
            "command": args.command,
            "config": cfg.to_dict(),
            "bundles": [],
            "error": {"kind": "NotFoundError", "message": str(exc)},
        }
        flags = {"numerical": False, "notfound": True}
    except ZetaLabError as exc:
        payload = {
            "command": args.command,
            "config": cfg.to_dict(),
            "bundles": [],
            "error": {"kind": type(exc).__name__, "message": str(exc)},
        }
        flags = {"numerical": True, "notfound": False}
    elapsed = time.time() - t0

    code = _exit_code(flags)
    payload["exit_code"] = code

    out = cfg.output
    if out.json_path:
        _write_json(out.json_path, payload)
        _write_sidecar(out.json_path, args.command, elapsed)
        print("wrote %s" % out.json_path)
    if out.csv_path:
        _write_csv(out.csv_path, _csv_rows(payload["bundles"]))
        print("wrote %s" % out.csv_path)
        if args.command == "scan":
            trend_path = out.csv_path + ".trend.csv"
            _write_trend_csv(trend_path, payload["bundles"])
            print("wrote %s" % trend_path)

    _summarize(payload, sys.stdout)
    if "error" in payload:
        print("run error: %s" % payload["error"]["message"], file=sys.stderr)
    print("exit %d" % code)
    return code
