"""Command-line front end.

Four subcommands. analyze runs the full pipeline on one group and prints
a report; verify is analyze with every structural check forced on; scan
walks a list of group sources (family specs, table files, directories,
or the built-in catalog when none are given) and prints one row per
(group, prime) pair plus a summary; construct builds a group from a
family spec and writes its multiplication table.

Exit codes: 0 run completed, 2 at least one consistency failure was
detected (a verification that must hold was falsified), 3 the input was
outside the supported envelope (bad spec, unreadable file, size cap).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .analysis import SCHEMA_VERSION, analyze_group, default_prime
from .catalog import CATALOG_SPECS
from .errors import UnsupportedInputError
from .formats import build_group, format_cayley, write_cayley
from .groups import prime_factors


def _canonical_json(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def _thread_count(n_items: int) -> int:
    raw = os.environ.get("SOCLELAB_THREADS", "")
    if raw.strip():
        try:
            cap = int(raw)
        except ValueError:
            raise UnsupportedInputError(
                f"SOCLELAB_THREADS must be an integer, got {raw!r}")
        if cap < 1:
            raise UnsupportedInputError("SOCLELAB_THREADS must be >= 1")
    else:
        cap = min(4, os.cpu_count() or 1)
    return max(1, min(cap, n_items))


def _fmt_bool(v) -> str:
    if v is None:
        return "-"
    return "yes" if v else "no"


def _report_table(r: dict) -> str:
    lines = []
    g = r["group"]
    lines.append(f"group    {g['descriptor']}  (order {g['order']}, "
                 f"{g['class_count']} classes)")
    lines.append(f"p        {r['p']}")
    d = r["dims"]
    lines.append(f"dims     center={d['center']} radical={d['radical']} "
                 f"socle={d['socle']}")
    if r["socle_blocks"] is not None:
        blk = "  ".join(f"coset {rep}: {dim}" for rep, dim in r["socle_blocks"])
        lines.append(f"blocks   {blk}")
    i = r["ideal"]
    lines.append(f"ideal    direct={_fmt_bool(i['direct'])} "
                 f"criterion={_fmt_bool(i['criterion'])}")
    shape = " ".join(f"{k}={_fmt_bool(v)}" for k, v in sorted(r["shape"].items()))
    lines.append(f"shape    {shape}")
    if r["radical_basis_match"] is not None:
        lines.append(f"radical basis match  {_fmt_bool(r['radical_basis_match'])}")
    for name in sorted(r["theorems"]):
        entry = r["theorems"][name]
        extra = ""
        if entry["status"] == "inapplicable":
            extra = f"  ({entry['reason']})"
        elif name == "ideal_characterization" and entry["status"] == "passed":
            extra = (f"  predicted={_fmt_bool(entry['predicted'])}"
                     f" direct={_fmt_bool(entry['direct'])}"
                     + (" witness" if entry["witness"] else ""))
        lines.append(f"check    {name}: {entry['status']}{extra}")
    if r["consistency_failures"]:
        lines.append("CONSISTENCY FAILURES:")
        for msg in r["consistency_failures"]:
            lines.append(f"  - {msg}")
    else:
        lines.append("consistency failures: none")
    lines.append(f"time     {r['timing']['seconds']:.3f}s")
    return "\n".join(lines) + "\n"


def _scan_table(result: dict) -> str:
    header = f"{'source':<40} {'order':>6} {'p':>3} {'ideal':>6} {'socle':>6} " \
             f"{'standing':>8} {'status':>8}"
    lines = [header, "-" * len(header)]
    for row in result["rows"]:
        ideal = "-" if row["ideal"] is None else _fmt_bool(row["ideal"]["direct"])
        socle = "-" if row["socle_dim"] is None else str(row["socle_dim"])
        lines.append(f"{row['source']:<40} {row['order'] or '-':>6} "
                     f"{row['p'] or '-':>3} {ideal:>6} {socle:>6} "
                     f"{_fmt_bool(row['standing']):>8} {row['status']:>8}")
        if row["status"] == "error":
            lines.append(f"    error: {row['error']}")
        for msg in row["consistency_failures"]:
            lines.append(f"    CONSISTENCY FAILURE: {msg}")
    s = result["summary"]
    lines.append("")
    lines.append(f"rows={s['rows']} ideal={s['ideal']} non_ideal={s['non_ideal']} "
                 f"inapplicable={s['inapplicable']} witnesses={s['witnesses']} "
                 f"consistency_failures={s['consistency_failures']}")
    return "\n".join(lines) + "\n"


def cmd_analyze(args, force_all: bool = False) -> int:
    group, file_p = build_group(args.source, max_order=args.max_order)
    p = args.p if args.p is not None else (
        file_p if file_p is not None else default_prime(group))
    mode = "all" if force_all else args.theorems
    report = analyze_group(group, p, descriptor=args.source, theorems=mode)
    if args.format == "json":
        sys.stdout.write(_canonical_json(report))
    else:
        sys.stdout.write(_report_table(report))
    return 2 if report["consistency_failures"] else 0


def _expand_sources(items: list[str]) -> list[str]:
    """Positional scan arguments; a directory stands for the files inside."""
    if not items:
        return list(CATALOG_SPECS)
    out = []
    for item in items:
        if os.path.isdir(item):
            names = sorted(os.listdir(item))
            found = [os.path.join(item, n) for n in names
                     if os.path.isfile(os.path.join(item, n))]
            if not found:
                raise UnsupportedInputError(f"directory {item!r} has no files")
            out.extend(found)
        else:
            out.append(item)
    return out


def _scan_row(source: str, group, p: int, theorems: str) -> dict:
    row = {
        "source": source,
        "order": int(group.order),
        "p": int(p),
        "status": "ok",
        "error": None,
        "ideal": None,
        "socle_dim": None,
        "standing": None,
        "witness": None,
        "consistency_failures": [],
    }
    try:
        r = analyze_group(group, p, descriptor=source, theorems=theorems)
    except UnsupportedInputError as e:
        row["status"] = "error"
        row["error"] = str(e)
        return row
    row["ideal"] = r["ideal"]
    row["socle_dim"] = r["dims"]["socle"]
    row["standing"] = r["shape"]["reduced"]
    row["consistency_failures"] = r["consistency_failures"]
    ch = r["theorems"].get("ideal_characterization")
    if ch and ch.get("witness"):
        row["witness"] = {
            "checks": ch["witness"]["checks"],
            "commutator_core_order": ch["witness"]["commutator_core_order"],
            "second_derived_order": ch["witness"]["second_derived_order"],
        }
    return row


def cmd_scan(args) -> int:
    sources = _expand_sources(args.sources)

    jobs = []
    error_rows = {}
    for idx, source in enumerate(sources):
        try:
            group, file_p = build_group(source, max_order=args.max_order)
        except UnsupportedInputError as e:
            error_rows[idx] = {
                "source": source, "order": None,
                "p": args.p, "status": "error", "error": str(e),
                "ideal": None, "socle_dim": None, "standing": None,
                "witness": None, "consistency_failures": [],
            }
            continue
        if args.p is not None:
            primes = [args.p]
        elif file_p is not None:
            primes = [file_p]
        else:
            primes = prime_factors(group.order) or [2]
        for p in primes:
            jobs.append((idx, source, group, p))

    workers = _thread_count(max(1, len(jobs)))
    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            computed = list(pool.map(
                lambda j: _scan_row(j[1], j[2], j[3], args.theorems), jobs))
    else:
        computed = [_scan_row(s, g, p, args.theorems) for _, s, g, p in jobs]

    # reassemble in input order: error rows at their source position,
    # job rows already ordered by (source index, prime)
    rows = []
    job_iter = iter(computed)
    job_idx_iter = iter(j[0] for j in jobs)
    pending = list(zip(job_idx_iter, job_iter))
    cursor = 0
    for idx in range(len(sources)):
        if idx in error_rows:
            rows.append(error_rows[idx])
        while cursor < len(pending) and pending[cursor][0] == idx:
            rows.append(pending[cursor][1])
            cursor += 1

    n_ideal = sum(1 for r in rows if r["ideal"] and r["ideal"]["direct"] is True)
    n_non = sum(1 for r in rows
                if r["ideal"] and r["ideal"]["direct"] is False)
    n_inapp = sum(1 for r in rows
                  if not r["ideal"] or r["ideal"]["direct"] is None)
    n_wit = sum(1 for r in rows if r["witness"] is not None)
    n_fail = sum(len(r["consistency_failures"]) for r in rows)

    result = {
        "schema_version": SCHEMA_VERSION,
        "rows": rows,
        "summary": {
            "sources": len(sources),
            "rows": len(rows),
            "ideal": n_ideal,
            "non_ideal": n_non,
            "inapplicable": n_inapp,
            "witnesses": n_wit,
            "consistency_failures": n_fail,
        },
    }
    if args.format == "json":
        sys.stdout.write(_canonical_json(result))
    else:
        sys.stdout.write(_scan_table(result))
    return 2 if n_fail else 0


def cmd_construct(args) -> int:
    group, _ = build_group(args.spec, max_order=args.max_order)
    if args.out:
        write_cayley(group, args.out)
        sys.stdout.write(f"wrote {group.name} (order {group.order}) "
                         f"to {args.out}\n")
    else:
        sys.stdout.write(format_cayley(group))
    return 0


def _add_common(sub, with_theorems: bool = True) -> None:
    sub.add_argument("--p", type=int, default=None,
                     help="prime of the coefficient field (default: smallest "
                          "prime dividing |G'|, or |G| when G is abelian)")
    sub.add_argument("--format", choices=("json", "table"), default="json")
    sub.add_argument("--max-order", type=int, default=2000,
                     help="refuse groups larger than this (default 2000)")
    if with_theorems:
        sub.add_argument("--theorems", choices=("all", "none", "auto"),
                         default="auto",
                         help="which structural checks to run (auto skips "
                              "checks whose preconditions fail; all also "
                              "lifts the exhaustive-check size cap)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="soclelab",
        description="Center, radical and socle of modular group algebras.")
    subs = ap.add_subparsers(dest="command", required=True)

    a = subs.add_parser("analyze", help="analyze one group at one prime")
    a.add_argument("source", help="family spec or group table file")
    _add_common(a)

    v = subs.add_parser("verify",
                        help="analyze with every structural check forced on")
    v.add_argument("source", help="family spec or group table file")
    _add_common(v, with_theorems=False)

    s = subs.add_parser("scan", help="analyze many groups, one row per "
                                     "(group, prime)")
    s.add_argument("sources", nargs="*",
                   help="family specs, table files, or directories of table "
                        "files; the built-in catalog when omitted")
    _add_common(s)

    c = subs.add_parser("construct", help="build a group and write its table")
    c.add_argument("spec", help="family spec")
    c.add_argument("--out", default=None, help="output path (default stdout)")
    c.add_argument("--max-order", type=int, default=2000)
    return ap


def run(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.command == "analyze":
            return cmd_analyze(args)
        if args.command == "verify":
            args.theorems = "all"
            return cmd_analyze(args, force_all=True)
        if args.command == "scan":
            return cmd_scan(args)
        if args.command == "construct":
            return cmd_construct(args)
    except UnsupportedInputError as e:
        sys.stderr.write(f"error: {e}\n")
        return 3
    raise AssertionError("unreachable")


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
