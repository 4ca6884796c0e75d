"""Per-family verification pipelines.

Each family yields a :class:`VerificationReport` made of named phases.  Strata
of size <= 2 try the shortcut clauses before the generic search; size-3
strata try the stored certificate first and fall back to search, so a
misprinted certificate shows up as a note rather than a failure.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .conditions import (
    CertKind,
    ConditionVerdict,
    WitnessCertificate,
    check_witness,
    holds_star,
    holds_star_k,
    oracle_rank_at_points,
    shortcut_star,
    shortcut_star_k,
    shortcut_Z_qsm,
)
from .familydb import CertRecord, FamilyRecord
from .genericity import Rationality, check_cdgen_arithmetic, check_condition_crit, rationality_classify
from .wps import WeightSystem, enumerate_monomials, format_monomial, parse_monomial

BASE_NAMES = ("x", "y", "z", "t")
COVER_NAMES = ("x", "y", "z", "t", "w")


@dataclass
class PhaseResult:
    name: str
    passed: bool
    certificate: dict | None = None
    determinant: str | None = None
    note: str | None = None
    millis: float = 0.0

    def to_json(self) -> dict:
        out: dict = {"name": self.name, "pass": self.passed}
        if self.certificate is not None:
            out["certificate"] = self.certificate
        if self.determinant is not None:
            out["determinant"] = self.determinant
        if self.note is not None:
            out["note"] = self.note
        return out


@dataclass
class VerificationReport:
    family: int
    klass: str
    phases: list[PhaseResult] = field(default_factory=list)
    millis: float = 0.0

    @property
    def passed(self) -> bool:
        return all(ph.passed for ph in self.phases)

    def phase(self, name: str) -> PhaseResult:
        for ph in self.phases:
            if ph.name == name:
                return ph
        raise KeyError(name)

    def to_json(self, timings: bool = True) -> dict:
        out = {"family": self.family, "phases": [ph.to_json() for ph in self.phases], "pass": self.passed}
        if timings:
            out["millis"] = round(self.millis, 1)
        return out


@dataclass(frozen=True)
class OracleConfig:
    samples: int = 50
    seed: int = 0

    def extension(self, p: int) -> int:
        """Smallest ``e <= 3`` with ``p^e >= 8`` so that points vary enough."""
        e = 1
        while p ** e < 8 and e < 3:
            e += 1
        return e


# -- helpers ------------------------------------------------------------------


def _stratum_name(on: Iterable[int], names: Sequence[str]) -> str:
    return "".join(names[i] for i in sorted(on))


def _cert_json(cert: WitnessCertificate, names: Sequence[str]) -> dict:
    out = {
        "kind": cert.kind.value,
        "stratum": _stratum_name(cert.stratum, names),
        "xi": [format_monomial(m, names) for m in cert.xi],
        "j": [names[j] for j in cert.j_vars],
    }
    if cert.k is not None:
        out["k"] = names[cert.k]
    return out


def _phase_from(name: str, v: ConditionVerdict, names, note: str | None = None) -> PhaseResult:
    if not v.holds:
        return PhaseResult(name, False, None, None, note or "no certificate found")
    det = format_monomial(v.determinant, names)
    return PhaseResult(name, True, _cert_json(v.certificate, names), det, note)


def _subsets(on: Iterable[int]) -> list[tuple[int, ...]]:
    items = sorted(on)
    return [s for r in range(1, len(items) + 1) for s in combinations(items, r)]


def _timed(fn: Callable[[], PhaseResult]) -> PhaseResult:
    t0 = time.perf_counter()
    ph = fn()
    ph.millis = (time.perf_counter() - t0) * 1000
    return ph


def _stored_then_search(lam, on, p, stored: CertRecord | None, make_cert, search, names) -> tuple[ConditionVerdict, str | None]:
    """Try a stored certificate; on any defect fall back to ``search``."""
    if stored is None:
        return search(), None
    try:
        cert = make_cert(stored)
        v = check_witness(lam, cert, p)
    except ValueError as exc:
        reason = str(exc)
        v = None
    else:
        reason = "stored minor is not a single nonzero term"
    if v is not None and v.holds:
        if v.matches_expected is False:
            return v, f"determinant differs from the stored value {format_monomial(stored.expected, names)}"
        return v, stored.note
    found = search()
    status = "search succeeded" if found.holds else "search failed"
    return found, f"certificate mismatch ({reason}), {status}"


def _oracle_phases(lam, verdicts: list[tuple[tuple[int, ...], ConditionVerdict]], p: int,
                   cfg: OracleConfig, names) -> list[PhaseResult]:
    e = cfg.extension(p)
    out = []
    for on, v in verdicts:
        if not v.holds:
            continue

        def run(on=on):
            r = oracle_rank_at_points(lam, on, p, e, cfg.samples, cfg.seed)
            return PhaseResult(f"oracle:{_stratum_name(on, names)}", r >= len(on),
                               note=f"min rank {r} over {cfg.samples} points of F_{p}^{e}")

        out.append(_timed(run))
    return out


def _common_phases(rec: FamilyRecord) -> list[PhaseResult]:
    verdict = rationality_classify(sorted(rec.weights), rec.d)
    expect_rational = rec.klass == "RATIONAL"
    ok = (verdict is Rationality.RATIONAL_BY_CRITERION) == expect_rational
    return [PhaseResult("classification", ok, note=verdict.value)]


def _crit_phase(base, d, p) -> PhaseResult:
    c = check_condition_crit(base, d, p)
    flags = f"weight-one={c.has_weight_one} d>=2a={c.degree_at_least_twice_each} char-two={c.two_small_for_char_two}"
    return PhaseResult("crit-condition", c.ok, note=flags)


def _cdgen_phase(base, d, cover_weight) -> PhaseResult:
    c = check_cdgen_arithmetic(base, d, cover_weight)
    return PhaseResult("cdgen", c.ok, note=f"delta={c.delta} section={c.section_exists} well-formed={c.wf}")


def _cover_gap(lam, on: tuple[int, ...], m: int, p: int, samples: int = 20) -> str:
    """Explain a failed plain condition by the rank of the cover Jacobian."""
    cover = [tuple(mono) + (0,) for mono in lam] + [(0,) * len(lam[0]) + (m,)]
    top = tuple(on) + (len(lam[0]),)
    r = oracle_rank_at_points(cover, top, p, OracleConfig().extension(p), samples)
    return (f"no certificate found; bordered Jacobian of w^{m} + f reaches rank at most {r} < {len(top)} "
            f"on sampled points of the stratum with w")


# -- type I -------------------------------------------------------------------


def verify_typeI_family(z_weights: Sequence[int], d: int, p: int, cover_weight: int,
                        stored: Sequence[CertRecord] = (), oracle: OracleConfig | None = None) -> list[PhaseResult]:
    """Plain condition on every non-empty stratum of the weight > 1 coordinates."""
    if d % cover_weight:
        raise ValueError(f"degree {d} not divisible by the cover weight {cover_weight}")
    m = d // cover_weight
    if m % p:
        raise ValueError(f"p = {p} does not divide m = {m}")
    ws = WeightSystem(tuple(z_weights))
    lam = enumerate_monomials(ws, d)
    names = BASE_NAMES
    by_stratum = {tuple(c.stratum): c for c in stored}
    phases, verdicts = [], []
    for on in _subsets(ws.weight_gt_one):
        def run(on=on):
            name = f"X-boundary-qsm:{_stratum_name(on, names)}"
            if len(on) <= 2:
                sc = shortcut_star(lam, on, p)
                if sc is not None:
                    v = check_witness(lam, sc.certificate, p)
                    return _phase_from(name, v, names, f"shortcut {sc.rule}"), v
                v = holds_star(lam, on, p)
                return _phase_from(name, v, names, None if v.holds else _cover_gap(lam, on, m, p)), v
            v, note = _stored_then_search(
                lam, on, p, by_stratum.get(on),
                lambda c: WitnessCertificate(CertKind.STAR, c.stratum, c.xi, c.j, c.expected),
                lambda: holds_star(lam, on, p), names)
            return _phase_from(name, v, names, note), v

        t0 = time.perf_counter()
        ph, v = run()
        ph.millis = (time.perf_counter() - t0) * 1000
        phases.append(ph)
        verdicts.append((on, v))
    if oracle is not None:
        phases.extend(_oracle_phases(lam, verdicts, p, oracle, names))
    return phases


def _typeI_report(rec: FamilyRecord, oracle: OracleConfig | None) -> list[PhaseResult]:
    base = rec.base
    phases = _common_phases(rec)
    phases.append(_crit_phase(base, rec.d, rec.p))
    phases.append(_cdgen_phase(base, rec.d, None))
    phases.extend(verify_typeI_family(base, rec.d, rec.p, rec.cover_weight, rec.certs_from("T3"), oracle))
    return phases


# -- type II ------------------------------------------------------------------


def verify_typeII_family(rec: FamilyRecord, oracle: OracleConfig | None = None) -> list[PhaseResult]:
    """Quasi-smoothness of the quotient ``Z`` and of the cover along the boundary."""
    if rec.cover is None or rec.cover.k is None:
        raise ValueError(f"family {rec.no} carries no cover monomial w^m x_k")
    k, m, p = rec.cover.k, rec.cover.m, rec.p
    if not 0 <= k < 4:
        raise ValueError(f"k = {k} out of range")
    if m % p:
        raise ValueError(f"p = {p} does not divide m = {m}")
    base = rec.base
    ws = WeightSystem(base)
    lam = enumerate_monomials(ws, rec.d)
    names = BASE_NAMES
    phases: list[PhaseResult] = []

    def z_phase():
        t4 = rec.certs_from("T4")
        table_case = t4[0].case if t4 else None
        sc = shortcut_Z_qsm(lam, k, p)
        if sc is not None:
            note = f"case {sc.case} with {', '.join(format_monomial(w, names) for w in sc.witness)}"
            if sc.residual:
                note += "; residual " + ", ".join(_stratum_name(s, names) for s, _ in sc.residual)
            if table_case is not None and table_case != sc.case:
                note += f"; stored case {table_case} differs"
            return PhaseResult("Z-qsm", True, {"case": sc.case, "roles": [names[i] for i in sc.roles]}, None, note)
        rest = [i for i in range(4) if i != k]
        failed = [s for s in _subsets(rest) if not holds_star_k(lam, s, k, p).holds]
        if failed:
            return PhaseResult("Z-qsm", False, note="no certificate on " + ", ".join(_stratum_name(s, names) for s in failed))
        return PhaseResult("Z-qsm", True, note="generic search on every stratum avoiding x_k")

    phases.append(_timed(z_phase))

    if base[k] == 1:
        phases.append(PhaseResult("X-boundary-qsm", True, note="x_k has weight 1; the boundary lies in (x_k = 0)"))
        return phases
    by_stratum = {tuple(c.stratum): c for c in rec.certs_from("T5")}
    verdicts = []
    for on in _subsets(ws.weight_gt_one):
        def run(on=on):
            name = f"X-boundary-qsm:{_stratum_name(on, names)}"
            if len(on) <= 2:
                sc = shortcut_star_k(lam, on, k, p)
                if sc is not None:
                    v = check_witness(lam, sc.certificate, p)
                    return _phase_from(name, v, names, f"shortcut {sc.rule}"), v
                v = holds_star_k(lam, on, k, p)
                return _phase_from(name, v, names), v
            v, note = _stored_then_search(
                lam, on, p, by_stratum.get(on),
                lambda c: WitnessCertificate(CertKind.STAR_K, c.stratum, c.xi, c.j, c.expected, k),
                lambda: holds_star_k(lam, on, k, p), names)
            return _phase_from(name, v, names, note), v

        t0 = time.perf_counter()
        ph, v = run()
        ph.millis = (time.perf_counter() - t0) * 1000
        phases.append(ph)
        verdicts.append((on, v))
    if oracle is not None:
        phases.extend(_oracle_phases(lam, verdicts, p, oracle, names))
    return phases


def _typeII_report(rec: FamilyRecord, oracle: OracleConfig | None) -> list[PhaseResult]:
    base = rec.base
    phases = _common_phases(rec)
    phases.append(_crit_phase(base, rec.d, rec.p))
    phases.append(_cdgen_phase(base, rec.d, rec.cover.m * rec.cover_weight))
    phases.extend(verify_typeII_family(rec, oracle))
    return phases


# -- special families -----------------------------------------------------------


def special_systems(rec: FamilyRecord) -> dict[str, tuple[list, Sequence[str]]]:
    """Monomial systems (and coordinate names) the scripted identities live in."""
    base = rec.base
    lam = enumerate_monomials(WeightSystem(base), rec.d)
    if rec.no != 19:
        return {"X": (lam, BASE_NAMES)}
    lam5 = [m + (0,) for m in lam]
    extra = parse_monomial(rec.cover.extra, COVER_NAMES, 5)
    m = rec.cover.m
    # quotient: the weight-4 coordinate takes the slot of w
    z_sys = lam5 + [(0, 0, 0, 0, m // 2), (0, 0, 0, extra[3], extra[4] // 2)]
    x_sys = lam5 + [extra, (0, 0, 0, 0, m)]
    return {"Z": (z_sys, ("x", "y", "z", "t", "v")), "X": (x_sys, COVER_NAMES)}


def check_scripted(rec: FamilyRecord, cert: CertRecord) -> ConditionVerdict:
    lam, _ = special_systems(rec)[cert.ambient or "X"]
    kind = CertKind.STAR_PRIME if cert.kind == "STAR_PRIME" else CertKind.STAR
    return check_witness(lam, WitnessCertificate(kind, cert.stratum, cert.xi, cert.j, cert.expected), rec.p)


def verify_special_family(rec: FamilyRecord, oracle: OracleConfig | None = None) -> list[PhaseResult]:
    if rec.no not in (19, 103, 122):
        raise ValueError(f"family {rec.no} has no scripted verification")
    systems = special_systems(rec)
    phases: list[PhaseResult] = []
    for cert in rec.certs:
        lam, names = systems[cert.ambient or "X"]

        def run(cert=cert, names=names):
            name = f"{cert.ambient or 'X'}-identity:{_stratum_name(cert.stratum, names)}"
            try:
                v = check_scripted(rec, cert)
            except ValueError as exc:
                return PhaseResult(name, False, note=str(exc))
            ok = v.holds and v.matches_expected is not False
            ph = _phase_from(name, v, names, cert.note)
            ph.passed = ok
            return ph

        phases.append(_timed(run))
    if rec.no in (103, 122):
        lam, names = systems["X"]
        scripted = {tuple(c.stratum) for c in rec.certs}
        strata = sorted({s for top in ((1, 2, 3), (0, 2, 3)) for s in _subsets(top)}, key=lambda s: (len(s), s))
        verdicts = []
        for on in strata:
            if on in scripted:
                continue

            def run(on=on):
                name = f"X-boundary-qsm:{_stratum_name(on, names)}"
                sc = shortcut_star(lam, on, rec.p)
                if sc is not None:
                    v = check_witness(lam, sc.certificate, rec.p)
                    return _phase_from(name, v, names, f"shortcut {sc.rule}")
                return _phase_from(name, holds_star(lam, on, rec.p), names)

            phases.append(_timed(run))
        if oracle is not None:
            for on in [(1, 2, 3), (0, 2, 3)]:
                verdicts.append((on, holds_star(lam, on, rec.p)))
            phases.extend(_oracle_phases(lam, verdicts, rec.p, oracle, names))
    return phases


def _special_report(rec: FamilyRecord, oracle: OracleConfig | None) -> list[PhaseResult]:
    base = rec.base
    phases = _common_phases(rec)
    if rec.no == 19:
        phases.append(_crit_phase(base, rec.d, rec.p))
        # the quotient coordinate is w^2
        phases.append(_cdgen_phase(base, rec.d, 2 * rec.cover_weight))
    else:
        phases.append(_cdgen_phase(base, rec.d, None))
    phases.extend(verify_special_family(rec, oracle))
    return phases


# -- dispatch -----------------------------------------------------------------


def verify_family(rec: FamilyRecord, oracle: OracleConfig | None = None) -> VerificationReport:
    t0 = time.perf_counter()
    if rec.klass == "TYPE1":
        phases = _typeI_report(rec, oracle)
    elif rec.klass == "TYPE2":
        phases = _typeII_report(rec, oracle)
    elif rec.klass == "SPECIAL":
        phases = _special_report(rec, oracle)
    else:
        phases = _common_phases(rec)
        if rec.klass == "EXCLUDED":
            phases[0].note += "; excluded: cubic threefold"
        elif rec.klass == "KNOWN":
            phases[0].note += "; settled by earlier work, certificate phases skipped"
    return VerificationReport(rec.no, rec.klass, phases, (time.perf_counter() - t0) * 1000)


def verify_many(records: Sequence[FamilyRecord], oracle: OracleConfig | None = None,
                jobs: int = 1) -> list[VerificationReport]:
    """Verify families, possibly on a thread pool; output keeps input order."""
    if jobs <= 1:
        return [verify_family(r, oracle) for r in records]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda r: verify_family(r, oracle), records))
