"""The vendored data set of the 130 families and its consistency checks."""

from __future__ import annotations

import io
import json
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import IO, Iterable

import jsonschema

from .genericity import Rationality, fano_index, rationality_classify
from .gf import is_prime

DB_ENV = "FANOQSM_DB"
KLASSES = ("RATIONAL", "TYPE1", "TYPE2", "SPECIAL", "KNOWN", "EXCLUDED")
TABLES = ("T3", "T4", "T5", "S19", "S103", "S122")
EXPECTED_COUNTS = {"TYPE1": 65, "TYPE2": 37, "SPECIAL": 3, "RATIONAL": 20, "KNOWN": 4, "EXCLUDED": 1}
EXPECTED_ROWS = {"T3": 32, "T4": 36, "T5": 23}
RATIONAL_NUMBERS = frozenset([104, 105, 106, 111, 112, 113, 114, 115, 118, 119, 120, 121,
                              123, 124, 125, 126, 127, 128, 129, 130])

_INTS = {"type": "array", "items": {"type": "integer", "minimum": 0}}
_CERT = {
    "type": "object",
    "required": ["kind", "stratum", "xi", "j", "expected", "table", "case"],
    "properties": {
        "kind": {"enum": ["STAR", "STAR_PRIME", "STAR_K", "Z_CASE"]},
        "stratum": _INTS,
        "xi": {"type": "array", "items": _INTS, "minItems": 1},
        "j": _INTS,
        "expected": {"anyOf": [_INTS, {"type": "null"}]},
        "table": {"enum": list(TABLES)},
        "case": {"anyOf": [{"type": "integer", "minimum": 1, "maximum": 5}, {"type": "null"}]},
        "k": {"type": "integer", "minimum": 0},
        "ambient": {"enum": ["X", "Z"]},
        "residual": {"type": "array", "items": _INTS},
        "note": {"type": "string"},
        "xi_printed": {"type": "string"},
        "j_printed": _INTS,
        "expected_printed": _INTS,
    },
    "additionalProperties": False,
}
SCHEMA = {
    "type": "object",
    "required": ["schema_version", "families"],
    "properties": {
        "schema_version": {"const": 1},
        "families": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["no", "d", "weights", "w_pos", "klass", "p", "cover", "certs", "notes"],
                "properties": {
                    "no": {"type": "integer", "minimum": 1, "maximum": 130},
                    "d": {"type": "integer", "minimum": 1},
                    "weights": {"type": "array", "items": {"type": "integer", "minimum": 1},
                                "minItems": 5, "maxItems": 5},
                    "w_pos": {"anyOf": [{"type": "integer", "minimum": 0, "maximum": 4}, {"type": "null"}]},
                    "klass": {"enum": list(KLASSES)},
                    "p": {"anyOf": [{"type": "integer", "minimum": 2}, {"type": "null"}]},
                    "cover": {"anyOf": [{"type": "null"}, {
                        "type": "object",
                        "required": ["m", "k"],
                        "properties": {
                            "m": {"type": "integer", "minimum": 1},
                            "k": {"anyOf": [{"type": "integer", "minimum": 0, "maximum": 3}, {"type": "null"}]},
                            "extra": {"type": "string"},
                            "delta": {"type": "integer"},
                        },
                        "additionalProperties": False,
                    }]},
                    "certs": {"type": "array", "items": _CERT},
                    "notes": {"type": "array", "items": {"type": "string"}},
                    "table_rat": {"enum": ["+", "-", "--"]},
                    "table_ind": {"type": "integer"},
                },
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}


class SchemaError(ValueError):
    """The data document does not match the schema."""


@dataclass(frozen=True)
class Cover:
    m: int
    k: int | None = None
    extra: str | None = None
    delta: int | None = None


@dataclass(frozen=True)
class CertRecord:
    kind: str
    stratum: tuple[int, ...]
    xi: tuple[tuple[int, ...], ...]
    j: tuple[int, ...]
    expected: tuple[int, ...] | None
    table: str
    case: int | None = None
    k: int | None = None
    ambient: str | None = None
    residual: tuple[tuple[int, ...], ...] | None = None
    note: str | None = None
    xi_printed: str | None = None
    j_printed: tuple[int, ...] | None = None
    expected_printed: tuple[int, ...] | None = None


@dataclass(frozen=True)
class FamilyRecord:
    no: int
    d: int
    weights: tuple[int, ...]
    w_pos: int | None
    klass: str
    p: int | None
    cover: Cover | None
    certs: tuple[CertRecord, ...] = ()
    notes: tuple[str, ...] = ()
    table_rat: str | None = None
    table_ind: int | None = None

    @property
    def base(self) -> tuple[int, ...]:
        """Weights of the four coordinates other than the cover variable."""
        if self.w_pos is None:
            raise ValueError(f"family {self.no} has no cover variable")
        return tuple(a for i, a in enumerate(self.weights) if i != self.w_pos)

    @property
    def cover_weight(self) -> int:
        return self.weights[self.w_pos]

    def certs_from(self, table: str) -> list[CertRecord]:
        return [c for c in self.certs if c.table == table]


def _tup(v):
    if v is None:
        return None
    return tuple(_tup(x) if isinstance(x, list) else x for x in v)


def _cert_from(obj: dict) -> CertRecord:
    return CertRecord(
        kind=obj["kind"], stratum=_tup(obj["stratum"]), xi=_tup(obj["xi"]), j=_tup(obj["j"]),
        expected=_tup(obj["expected"]), table=obj["table"], case=obj["case"], k=obj.get("k"),
        ambient=obj.get("ambient"), residual=_tup(obj.get("residual")), note=obj.get("note"),
        xi_printed=obj.get("xi_printed"), j_printed=_tup(obj.get("j_printed")),
        expected_printed=_tup(obj.get("expected_printed")),
    )


def _family_from(obj: dict) -> FamilyRecord:
    cov = obj["cover"]
    return FamilyRecord(
        no=obj["no"], d=obj["d"], weights=tuple(obj["weights"]), w_pos=obj["w_pos"], klass=obj["klass"],
        p=obj["p"], cover=None if cov is None else Cover(cov["m"], cov["k"], cov.get("extra"), cov.get("delta")),
        certs=tuple(_cert_from(c) for c in obj["certs"]), notes=tuple(obj["notes"]),
        table_rat=obj.get("table_rat"), table_ind=obj.get("table_ind"),
    )


def default_db_path() -> Path | None:
    env = os.environ.get(DB_ENV)
    return Path(env) if env else None


def _read_default() -> str:
    path = default_db_path()
    if path is not None:
        return path.read_text(encoding="utf-8")
    return resources.files("fanoqsm").joinpath("data/families.json").read_text(encoding="utf-8")


def load_family_db(source: str | bytes | Path | IO | None = None) -> list[FamilyRecord]:
    """Parse and schema-check the data document; records come back sorted by number.

    ``source`` may be a path, raw JSON text/bytes, or a readable stream.  With
    no argument the file named by ``$FANOQSM_DB`` or the packaged copy is used.
    """
    if source is None:
        text = _read_default()
    elif isinstance(source, Path):
        text = source.read_text(encoding="utf-8")
    elif isinstance(source, bytes):
        text = source.decode("utf-8")
    elif isinstance(source, str):
        text = source
    else:
        text = source.read()
        if isinstance(text, bytes):
            text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    errors = sorted(jsonschema.Draft202012Validator(SCHEMA).iter_errors(doc), key=lambda e: list(e.path))
    if errors:
        err = errors[0]
        where = "/".join(str(x) for x in err.absolute_path) or "<root>"
        raise SchemaError(f"{where}: {err.message}")
    seen: set[int] = set()
    for i, fam in enumerate(doc["families"]):
        if fam["no"] in seen:
            raise SchemaError(f"families/{i}/no: duplicate family number {fam['no']}")
        seen.add(fam["no"])
        if fam["p"] is not None and not is_prime(fam["p"]):
            raise SchemaError(f"families/{i}/p: {fam['p']} is not prime")
    return sorted((_family_from(f) for f in doc["families"]), key=lambda r: r.no)


def _cert_to(c: CertRecord) -> dict:
    out = {"kind": c.kind, "stratum": list(c.stratum), "xi": [list(m) for m in c.xi], "j": list(c.j),
           "expected": None if c.expected is None else list(c.expected), "table": c.table, "case": c.case}
    for name in ("k", "ambient", "note", "xi_printed"):
        v = getattr(c, name)
        if v is not None:
            out[name] = v
    for name in ("j_printed", "expected_printed"):
        v = getattr(c, name)
        if v is not None:
            out[name] = list(v)
    if c.residual is not None:
        out["residual"] = [list(m) for m in c.residual]
    return out


def _family_to(r: FamilyRecord) -> dict:
    cover = None
    if r.cover is not None:
        cover = {"m": r.cover.m, "k": r.cover.k}
        if r.cover.extra is not None:
            cover["extra"] = r.cover.extra
        if r.cover.delta is not None:
            cover["delta"] = r.cover.delta
    out = {"no": r.no, "d": r.d, "weights": list(r.weights), "w_pos": r.w_pos, "klass": r.klass, "p": r.p,
           "cover": cover, "certs": [_cert_to(c) for c in r.certs], "notes": list(r.notes)}
    if r.table_rat is not None:
        out["table_rat"] = r.table_rat
    if r.table_ind is not None:
        out["table_ind"] = r.table_ind
    return out


def dumps_family_db(records: Iterable[FamilyRecord]) -> str:
    """Canonical serialisation (sorted keys, one-space indent, trailing newline)."""
    doc = {"schema_version": 1, "families": [_family_to(r) for r in sorted(records, key=lambda r: r.no)]}
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def dump_family_db(records: Iterable[FamilyRecord], stream: IO[str]) -> None:
    stream.write(dumps_family_db(records))


@dataclass(frozen=True)
class Finding:
    severity: str
    family: int | None
    message: str

    def __str__(self) -> str:
        where = f"family {self.family}: " if self.family is not None else ""
        return f"[{self.severity}] {where}{self.message}"


def validate_db(records: list[FamilyRecord]) -> list[Finding]:
    """Cross-consistency checks; an empty list means the data set is coherent."""
    out: list[Finding] = []

    def err(no, msg):
        out.append(Finding("error", no, msg))

    nos = [r.no for r in records]
    if sorted(nos) != list(range(1, 131)):
        missing = sorted(set(range(1, 131)) - set(nos))
        err(None, f"family numbers are not exactly 1..130 (missing {missing})")
    counts = {k: 0 for k in KLASSES}
    for r in records:
        counts[r.klass] += 1
    for k, want in EXPECTED_COUNTS.items():
        if counts[k] != want:
            err(None, f"{counts[k]} families of class {k}, expected {want}")
    rows = {t: 0 for t in EXPECTED_ROWS}
    for r in records:
        for c in r.certs:
            if c.table in rows:
                rows[c.table] += 1
    for t, want in EXPECTED_ROWS.items():
        if rows[t] != want:
            err(None, f"{rows[t]} certificate rows from {t}, expected {want}")

    for r in records:
        try:
            iota = fano_index(r.weights, r.d)
        except ValueError as exc:
            err(r.no, str(exc))
            iota = None
        if r.table_ind is not None and iota != r.table_ind:
            err(r.no, f"index {iota} disagrees with tabulated index {r.table_ind}")
        verdict = rationality_classify(sorted(r.weights), r.d)
        rational = verdict is Rationality.RATIONAL_BY_CRITERION
        if r.klass == "RATIONAL" and not rational or r.klass != "RATIONAL" and rational:
            err(r.no, f"classifier says {verdict.value} but class is {r.klass}")
        if r.table_rat is not None and (r.table_rat == "+") != rational:
            err(r.no, "classifier disagrees with tabulated rationality sign")
        if r.table_rat is not None and (r.table_rat == "+") != (r.klass == "RATIONAL"):
            err(r.no, f"class {r.klass} disagrees with tabulated rationality sign {r.table_rat}")
        if r.klass == "RATIONAL" and r.no not in RATIONAL_NUMBERS:
            err(r.no, "marked RATIONAL but not in the list of rational families")

        certified = r.klass in ("TYPE1", "TYPE2", "SPECIAL")
        if certified != (r.p is not None):
            err(r.no, "p must be present exactly for TYPE1, TYPE2 and SPECIAL families")
        if not certified:
            continue
        if r.cover is None or r.w_pos is None:
            err(r.no, "missing cover data")
            continue
        a_w = r.cover_weight
        m = r.cover.m
        if r.p is not None and m % r.p:
            err(r.no, f"p does not divide m (p = {r.p}, m = {m})")
        if r.klass == "TYPE2" or r.cover.k is not None:
            if r.cover.k is None:
                err(r.no, "type II family without k")
            elif r.d != m * a_w + r.base[r.cover.k]:
                err(r.no, f"d = {r.d} is not m*a_w + a_k")
        elif r.d != m * a_w:
            err(r.no, f"d = {r.d} is not m*a_w = {m * a_w}")
    return out
