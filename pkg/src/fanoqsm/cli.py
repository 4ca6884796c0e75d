"""Command-line front end: ``fanoqsm {verify,classify,det,dump-db}``."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .conditions import restricted_determinant
from .familydb import KLASSES, FamilyRecord, SchemaError, dumps_family_db, load_family_db, validate_db
from .genericity import fano_index, rationality_classify, rationality_clause
from .poly import as_nonzero_monomial
from .verify import OracleConfig, verify_many
from .wps import VAR_NAMES, WeightSystem, parse_monomial

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    """Bad command-line input; maps to exit code 2."""


@dataclass(frozen=True)
class RunConfig:
    families: tuple[int, ...] | None
    klass: str | None
    fmt: str
    oracle: OracleConfig | None
    db: Path | None
    jobs: int = 1
    timings: bool = True


def _parse_families(text: str) -> tuple[int, ...] | None:
    if text.strip().lower() == "all":
        return None
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        lo, sep, hi = part.partition("-")
        try:
            if sep:
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
        except ValueError:
            raise InputError(f"bad family selector {part!r}") from None
    return tuple(out)


def _config(args) -> RunConfig:
    oracle = OracleConfig(args.samples, args.seed) if args.oracle else None
    return RunConfig(_parse_families(args.families), args.klass, args.format, oracle, args.db,
                     args.jobs, not args.no_timings)


def _load(cfg: RunConfig) -> list[FamilyRecord]:
    try:
        records = load_family_db(cfg.db)
    except (OSError, SchemaError) as exc:
        raise InputError(f"cannot load family data: {exc}") from None
    findings = validate_db(records)
    for f in findings:
        print(f"finding: {f}", file=sys.stderr)
    if findings:
        raise InputError(f"family data has {len(findings)} finding(s)")
    return records


def _select(records: list[FamilyRecord], cfg: RunConfig) -> list[FamilyRecord]:
    by_no = {r.no: r for r in records}
    if cfg.families is None:
        chosen = list(records)
    else:
        unknown = [n for n in cfg.families if n not in by_no]
        if unknown:
            raise InputError(f"unknown family {', '.join(map(str, unknown))}")
        chosen = [by_no[n] for n in sorted(set(cfg.families))]
    if cfg.klass is not None:
        chosen = [r for r in chosen if r.klass == cfg.klass]
    if not chosen:
        raise InputError("empty selection")
    return chosen


def _weights_label(r: FamilyRecord) -> str:
    return f"X_{r.d} in P({','.join(map(str, r.weights))})"


def cmd_verify(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    chosen = _select(_load(cfg), cfg)
    reports = verify_many(chosen, cfg.oracle, cfg.jobs)
    if cfg.fmt == "json":
        json.dump([rep.to_json(cfg.timings) for rep in reports], out, indent=1)
        out.write("\n")
    else:
        for rep, rec in zip(reports, chosen):
            head = f"family {rep.family:3d} {rep.klass:9s} {_weights_label(rec)}"
            if cfg.timings:
                head += f"  {rep.millis:.1f} ms"
            print(f"{head}  {'PASS' if rep.passed else 'FAIL'}", file=out)
            for ph in rep.phases:
                line = f"    [{'ok' if ph.passed else 'FAIL'}] {ph.name}"
                if ph.certificate is not None and "xi" in ph.certificate:
                    c = ph.certificate
                    line += f"  {{{', '.join(c['xi'])}}}_{{{','.join(c['j'])}}}"
                if ph.determinant is not None:
                    line += f"  det = {ph.determinant}"
                if ph.note:
                    line += f"  ({ph.note})"
                print(line, file=out)
        failed = [rep.family for rep in reports if not rep.passed]
        print(f"{len(reports) - len(failed)}/{len(reports)} families pass"
              + (f"; failing: {', '.join(map(str, failed))}" if failed else ""), file=out)
    return EXIT_OK if all(rep.passed for rep in reports) else EXIT_FAIL


def _classify_row(r: FamilyRecord) -> dict:
    w = sorted(r.weights)
    verdict = rationality_classify(w, r.d)
    row = {"family": r.no, "d": r.d, "weights": list(r.weights), "index": fano_index(r.weights, r.d),
           "verdict": verdict.value, "clause": rationality_clause(w, r.d), "class": r.klass}
    if r.klass == "EXCLUDED":
        row["note"] = "excluded: cubic threefold"
    return row


def cmd_classify(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    rows = [_classify_row(r) for r in _select(_load(cfg), cfg)]
    if cfg.fmt == "json":
        json.dump(rows, out, indent=1)
        out.write("\n")
        return EXIT_OK
    for row in rows:
        sign = "+" if row["verdict"] == "RATIONAL_BY_CRITERION" else "--"
        line = (f"{row['family']:3d}  X_{row['d']} in P({','.join(map(str, row['weights']))})"
                f"  ind {row['index']}  {sign:2s}  {row['verdict']}")
        if row["clause"]:
            line += f"  [{row['clause']}]"
        if "note" in row:
            line += f"  {row['note']}"
        print(line, file=out)
    return EXIT_OK


def _vars(text: str, names: Sequence[str]) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    tokens = [t.strip() for t in text.split(",")] if "," in text else (
        [text] if text.startswith("x") and text[1:].isdigit() else list(text))
    out = []
    for tok in tokens:
        if tok in names:
            out.append(names.index(tok))
        elif tok.startswith("x") and tok[1:].isdigit() and int(tok[1:]) < len(names):
            out.append(int(tok[1:]))
        else:
            raise InputError(f"unknown variable {tok!r}")
    return tuple(out)


def cmd_det(args, out=None) -> int:
    out = out or sys.stdout
    nvars = 5
    if args.weights:
        try:
            weights = tuple(int(a) for a in args.weights.split(","))
            ws = WeightSystem(weights)
        except ValueError as exc:
            raise InputError(f"bad weights: {exc}") from None
        nvars = len(weights)
    names = VAR_NAMES[:nvars]
    try:
        xi = [parse_monomial(m, names, nvars) for m in args.xi.split(",") if m.strip()]
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if not xi:
        raise InputError("no monomials given")
    j_vars = _vars(args.j, names)
    stratum = _vars(args.stratum, names) if args.stratum else tuple(range(nvars))
    if args.weights:
        degrees = {ws.degree(m) for m in xi}
        if len(degrees) > 1:
            raise InputError(f"monomials have different weighted degrees {sorted(degrees)}")
    want = len(xi) - 1 if args.bordered else len(xi)
    if len(j_vars) != want:
        raise InputError(f"need {want} differentiation variables for {len(xi)} monomials, got {len(j_vars)}")
    if not args.bordered and not j_vars:
        raise InputError("plain minors need at least one variable")
    det = restricted_determinant(xi, j_vars, stratum, args.p, args.bordered)
    print(det.to_string(names), file=out)
    return EXIT_OK if as_nonzero_monomial(det) is not None else EXIT_FAIL


def cmd_dump_db(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    out.write(dumps_family_db(_load(cfg)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fanoqsm", description=__doc__)
    sub = parser.add_subparsers(dest="verb", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--families", default="all", help="'all' or a list such as 22,74-76")
    common.add_argument("--class", dest="klass", choices=KLASSES)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--db", type=Path, default=None, help="family data file (default: $FANOQSM_DB or packaged)")

    v = sub.add_parser("verify", parents=[common], help="run the verification phases")
    v.add_argument("--oracle", action="store_true", help="add pointwise rank checks over a finite field")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--samples", type=int, default=50)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--no-timings", action="store_true", help="omit timings so reports are reproducible byte for byte")

    sub.add_parser("classify", parents=[common], help="rationality table")
    sub.add_parser("dump-db", parents=[common], help="print the canonical family data")

    d = sub.add_parser("det", help="restricted determinant of a Jacobian minor")
    d.add_argument("--weights", help="comma-separated weights; checks that xi is homogeneous")
    d.add_argument("-p", type=int, required=True, help="characteristic")
    d.add_argument("--xi", required=True, help="comma-separated monomials, e.g. 't^3z,z^7y,y^12x'")
    d.add_argument("--j", default="", help="differentiation variables, e.g. xyz or x0,x1")
    d.add_argument("--stratum", default="", help="variables kept nonzero (default: all)")
    d.add_argument("--bordered", action="store_true", help="prepend the row of monomials")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        if args.verb == "det":
            return cmd_det(args)
        cfg = _config(args) if args.verb == "verify" else RunConfig(
            _parse_families(args.families), args.klass, args.format, None, args.db)
        if args.verb == "verify":
            return cmd_verify(cfg)
        if args.verb == "classify":
            return cmd_classify(cfg)
        return cmd_dump_db(cfg)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
