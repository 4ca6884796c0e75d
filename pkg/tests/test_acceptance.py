"""Acceptance suite.  Each criterion prints one ``ACCEPTANCE n: PASS|FAIL`` line.

Criteria that do not hold as literally stated are strict xfails: the line says
FAIL, the test is reported as xfailed, and an unexpected pass would turn red.
Companion tests pin the exact set of deviations so regressions still surface.
"""

import dataclasses
import random
import time
from itertools import combinations

import pytest

from fanoqsm.conditions import (
    CertKind,
    WitnessCertificate,
    check_witness,
    holds_star,
    holds_star_k,
    shortcut_star,
    shortcut_star_k,
    shortcut_Z_qsm,
)
from fanoqsm.familydb import RATIONAL_NUMBERS, load_family_db
from fanoqsm.genericity import (
    Rationality,
    check_cdgen_arithmetic,
    check_condition_crit,
    fano_index,
    rationality_classify,
)
from fanoqsm.poly import PolyMatrix, SparsePoly, matrix_determinant, partial_derivative, restrict_to_stratum
from fanoqsm.verify import OracleConfig, check_scripted, verify_many, verify_typeI_family
from fanoqsm.wps import WeightSystem, enumerate_monomials, parse_monomial

# rows whose printed monomials are not of the family's degree
T3_NOT_IN_SYSTEM = {63, 64, 65, 68, 73, 74, 93, 95}
T5_NOT_IN_SYSTEM = {37, 42}
# type I families where no certificate exists on one stratum
TYPE1_GAPS = {74: ((1, 2),), 76: ((1, 2),), 92: ((1,),)}
T4_CASE_DIFFERS = {90: (2, 5)}


@pytest.fixture(scope="module")
def db():
    return {r.no: r for r in load_family_db()}


@pytest.fixture
def say(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\nACCEPTANCE {n}: {'PASS' if ok else 'FAIL'}  {detail}")
    return emit


def base_system(rec):
    return enumerate_monomials(WeightSystem(rec.base), rec.d)


def m4(text):
    return parse_monomial(text, "xyzt", 4)


# -- 1, 2 ---------------------------------------------------------------------


def test_1_table_rationality(db, say):
    t0 = time.perf_counter()
    rows = [r for r in db.values() if fano_index(r.weights, r.d) > 1]
    plus = {r.no for r in rows if rationality_classify(sorted(r.weights), r.d) is Rationality.RATIONAL_BY_CRITERION}
    marked = {r.no for r in rows if r.table_rat == "+"}
    secs = time.perf_counter() - t0
    ok = len(rows) == 35 and plus == marked == set(RATIONAL_NUMBERS) and secs < 1
    say(1, ok, f"{len(rows)} index>1 rows, {len(plus)} '+' rows, matches table and list: {plus == marked == set(RATIONAL_NUMBERS)}, {secs:.3f}s")
    assert ok


def test_2_fano_index(db, say):
    t0 = time.perf_counter()
    rows = [r for r in db.values() if r.table_ind is not None]
    bad = [r.no for r in rows if fano_index(r.weights, r.d) != r.table_ind]
    secs = time.perf_counter() - t0
    ok = len(rows) == 35 and not bad and secs < 1
    say(2, ok, f"{len(rows) - len(bad)}/{len(rows)} index values match, {secs:.3f}s")
    assert ok


# -- 3 ------------------------------------------------------------------------


def test_3_family_22_determinants(db, say):
    lam = base_system(db[22])
    y, z, t = 1, 2, 3
    cases = [
        ([m4("y^7"), m4("z^7")], [y, z], (y, z), "y^6z^6"),
        ([m4("y^7"), m4("ty^5x")], [0, y], (y, t), "ty^11"),
        # printed with y^7 and stratum (y,t), which gives zero; z^7 on (z,t) is the reading that yields tz^11
        ([m4("z^7"), m4("tz^5x")], [0, z], (z, t), "tz^11"),
        ([m4("y^7"), m4("z^7"), m4("ty^5x")], [0, y, z], (y, z, t), "ty^11z^6"),
    ]
    got = []
    for xi, j, on, want in cases:
        v = check_witness(lam, WitnessCertificate(CertKind.STAR, on, xi, j, m4(want)), 2)
        got.append(v.holds and v.matches_expected)
    row = db[22].certs_from("T3")[0]
    v = check_witness(lam, WitnessCertificate(CertKind.STAR, row.stratum, row.xi, row.j, m4("ty^11z^6")), 2)
    got.append(v.holds and v.matches_expected)
    printed = check_witness(lam, WitnessCertificate(CertKind.STAR, (y, t), [m4("y^7"), m4("tz^5x")], [0, z]), 2)
    ok = all(got) and not printed.holds
    say(3, ok, f"{sum(got)}/5 determinants reproduce at p=2 (third read on the (z,t) stratum)")
    assert ok


# -- 4 ------------------------------------------------------------------------


def _t3_status(db):
    literal, failing = 0, set()
    for r in db.values():
        lam = base_system(r) if r.w_pos is not None else None
        for c in r.certs_from("T3"):
            try:
                v = check_witness(lam, WitnessCertificate(CertKind.STAR, c.stratum, c.xi, c.j, c.expected), r.p)
                good = v.holds and v.matches_expected is not False
            except ValueError:
                good = False
            literal += 1
            if not good:
                failing.add(r.no)
    return literal, failing


@pytest.fixture(scope="module")
def type1_sweep(db):
    t0 = time.perf_counter()
    out = {}
    for r in db.values():
        if r.klass == "TYPE1":
            out[r.no] = verify_typeI_family(r.base, r.d, r.p, r.cover_weight, r.certs_from("T3"))
    return out, time.perf_counter() - t0


@pytest.mark.xfail(strict=True, reason="8 printed rows are off-degree; 74, 76, 92 have a stratum with no certificate")
def test_4_type_one(db, type1_sweep, say):
    rows, bad_rows = _t3_status(db)
    results, secs = type1_sweep
    failed = sorted(n for n, phases in results.items() if not all(ph.passed for ph in phases))
    ok = rows == 32 and not bad_rows and len(results) == 65 and not failed and secs <= 60
    say(4, ok, f"T3 rows {rows - len(bad_rows)}/{rows} check (bad: {sorted(bad_rows)}); "
               f"type I sweep {len(results) - len(failed)}/{len(results)} (fail: {failed}), {secs:.1f}s")
    assert ok


def test_4_deviations_are_exactly_the_known_ones(db, type1_sweep):
    rows, bad_rows = _t3_status(db)
    assert rows == 32 and bad_rows == T3_NOT_IN_SYSTEM
    results, secs = type1_sweep
    assert len(results) == 65 and secs <= 60
    for no, phases in results.items():
        failed = {tuple("yzt".index(ch) + 1 for ch in ph.name.split(":")[1]) for ph in phases if not ph.passed}
        assert failed == set(TYPE1_GAPS.get(no, ())), no
    # the off-degree rows are replaced by search results wherever a certificate exists
    for no in T3_NOT_IN_SYSTEM - set(TYPE1_GAPS):
        top = [ph for ph in results[no] if len(ph.name.split(":")[1]) == 3]
        assert top and all(ph.passed and "search succeeded" in ph.note for ph in top)


# -- 5 ------------------------------------------------------------------------


def _t4_status(db):
    rows, differs = 0, {}
    for r in db.values():
        for c in r.certs_from("T4"):
            if c.case is None:
                continue
            rows += 1
            sc = shortcut_Z_qsm(base_system(r), r.cover.k, r.p)
            got = sc.case if sc else None
            if got != c.case:
                differs[r.no] = (c.case, got)
    return rows, differs


def _residual_status(db):
    """Does the quoted residual set alone certify each residual stratum?"""
    out = {}
    for no in (18, 23, 44):
        r = db[no]
        lam, k = base_system(r), r.cover.k
        sc = shortcut_Z_qsm(lam, k, r.p)
        quoted = list(r.certs_from("T4")[0].residual)
        assert all(m in lam for m in quoted)
        out[no] = (sc.case, {s: holds_star_k(quoted, s, k, r.p).holds for s, _ in sc.residual},
                   all(v.holds for _, v in sc.residual))
    return out


@pytest.mark.xfail(strict=True, reason="row 90 prints case 2; y^7, yz^3 do not certify (y,z) for family 23 at p=3")
def test_5_z_cases(db, say):
    rows, differs = _t4_status(db)
    res = _residual_status(db)
    quoted_ok = all(all(v.values()) for _, v, _ in res.values())
    generic_ok = all(case == 5 and full for case, _, full in res.values())
    ok = not differs and quoted_ok and generic_ok
    say(5, ok, f"{rows - len(differs)}/{rows} cases match (differs: {differs}); case 5 via full system: {generic_ok}; "
               f"quoted residuals suffice: {{{', '.join(f'{n}: {all(v.values())}' for n, (_, v, _) in res.items())}}}")
    assert ok


def test_5_deviations_are_exactly_the_known_ones(db):
    rows, differs = _t4_status(db)
    assert rows == 36 and differs == T4_CASE_DIFFERS
    res = _residual_status(db)
    assert all(case == 5 and full for case, _, full in res.values())
    assert res[18][1] == {(1,): True, (3,): True, (1, 3): True}
    assert res[44][1] == {(1,): True, (2,): True, (1, 2): True}
    assert res[23][1] == {(1,): True, (2,): True, (1, 2): False}
    lam = base_system(db[23])
    assert holds_star_k([m4("yz^3"), m4("y^3z^2")], (1, 2), 3, 3).holds and m4("y^3z^2") in lam


# -- 6 ------------------------------------------------------------------------


def _t5_status(db):
    rows, failing = 0, set()
    for r in db.values():
        for c in r.certs_from("T5"):
            rows += 1
            try:
                v = check_witness(base_system(r), WitnessCertificate(
                    CertKind.STAR_K, c.stratum, c.xi, c.j, c.expected, r.cover.k), r.p)
                good = v.holds and v.matches_expected is not False
            except ValueError:
                good = False
            if not good:
                failing.add(r.no)
    return rows, failing


@pytest.fixture(scope="module")
def type2_sweep(db):
    t0 = time.perf_counter()
    reports = verify_many([r for r in db.values() if r.klass == "TYPE2"])
    return reports, time.perf_counter() - t0


@pytest.mark.xfail(strict=True, reason="rows 37 and 42 print monomials outside the family's degree")
def test_6_type_two(db, type2_sweep, say):
    rows, bad = _t5_status(db)
    reports, secs = type2_sweep
    passed = sum(rep.passed for rep in reports)
    ok = rows == 23 and not bad and passed == len(reports) == 37 and secs <= 60
    say(6, ok, f"T5 rows {rows - len(bad)}/{rows} check (bad: {sorted(bad)}); "
               f"type II sweep {passed}/{len(reports)}, {secs:.1f}s")
    assert ok


def test_6_deviations_are_exactly_the_known_ones(db, type2_sweep):
    rows, bad = _t5_status(db)
    assert rows == 23 and bad == T5_NOT_IN_SYSTEM
    reports, secs = type2_sweep
    assert len(reports) == 37 and all(rep.passed for rep in reports) and secs <= 60


# -- 7 ------------------------------------------------------------------------


def test_7_special_identities(db, say):
    groups = {"S122": (db[122], None), "S19-Z": (db[19], "Z"), "S19-X": (db[19], "X"), "S103": (db[103], None)}
    counts, good = {}, {}
    for label, (rec, amb) in groups.items():
        certs = [c for c in rec.certs if amb is None or c.ambient == amb]
        verdicts = [check_scripted(rec, c) for c in certs]
        counts[label] = len(certs)
        good[label] = sum(v.holds and v.matches_expected is True for v in verdicts)
    ok = all(good[k] == counts[k] for k in counts) and all(db[n].p == 2 for n in (19, 103, 122))
    say(7, ok, "reproduced at p=2: " + ", ".join(f"{k} {good[k]}/{counts[k]}" for k in counts)
        + " (the Z list displays 15 identities; 4 read through noted misprints)")
    assert ok


def test_7_misprint_readings(db):
    """The printed variants of the four corrected identities do fail."""
    rec = db[19]
    noted = [c for c in rec.certs if c.note]
    assert len(noted) == 4
    for c in noted:
        if c.j_printed is not None:
            v = check_scripted(rec, dataclasses.replace(c, j=c.j_printed))
            assert not v.holds
        if c.expected_printed is not None:
            v = check_scripted(rec, dataclasses.replace(c, expected=c.expected_printed))
            assert v.holds and v.matches_expected is False


# -- 8 ------------------------------------------------------------------------


def test_8_genericity_arithmetic(db, say):
    crit_fail, cd_fail = [], []
    for r in db.values():
        if r.klass in ("TYPE1", "TYPE2") and not check_condition_crit(r.base, r.d, r.p).ok:
            crit_fail.append(r.no)
        if r.klass in ("TYPE1", "TYPE2", "SPECIAL"):
            cw = {"TYPE2": r.cover.m * r.cover_weight if r.cover else None}.get(r.klass)
            if r.no == 19:
                cw = 2 * r.cover_weight
            rep = check_cdgen_arithmetic(r.base, r.d, cw)
            if not (rep.delta >= 0 and rep.section_exists):
                cd_fail.append(r.no)
    clause1 = []
    for n in (103, 122):
        c = check_condition_crit(db[n].base, db[n].d, db[n].p)
        clause1.append(not c.has_weight_one and c.degree_at_least_twice_each and c.two_small_for_char_two)
    ok = not crit_fail and not cd_fail and all(clause1)
    say(8, ok, f"crit failures {crit_fail}; 103/122 fail clause 1 only: {all(clause1)}; cdgen failures {cd_fail}")
    assert ok


# -- 9 ------------------------------------------------------------------------


def _random_system(rng, whole):
    weights = tuple(rng.randint(1, 5) for _ in range(4))
    full = enumerate_monomials(WeightSystem(weights), rng.randint(4, 16))
    if not full or whole:
        return full or None
    return rng.sample(full, rng.randint(1, min(len(full), 8)))


def _shortcut_violations(n, seed):
    rng = random.Random(seed)
    bad = checked = 0
    while checked < n:
        lam = _random_system(rng, checked % 2 == 1)
        if lam is None:
            continue
        p = rng.choice([2, 3, 5])
        on = tuple(sorted(rng.sample(range(4), rng.randint(1, 2))))
        k = rng.choice([i for i in range(4) if i not in on] + [on[-1]])
        sc = shortcut_star(lam, on, p)
        if sc is not None and not (check_witness(lam, sc.certificate, p).holds and holds_star(lam, on, p).holds):
            bad += 1
        sk = shortcut_star_k(lam, on, k, p)
        if sk is not None and not (check_witness(lam, sk.certificate, p).holds and holds_star_k(lam, on, k, p).holds):
            bad += 1
        if shortcut_Z_qsm(lam, k, p) is not None:
            rest = [i for i in range(4) if i != k]
            bad += sum(not holds_star_k(lam, s, k, p).holds for r in (1, 2, 3) for s in combinations(rest, r))
        checked += 1
    return bad


def test_9_oracle_suite(db, say):
    t0 = time.perf_counter()
    cfg = OracleConfig(samples=50, seed=0)
    reports = verify_many([r for r in db.values() if r.klass == "TYPE1"], cfg, jobs=4)
    oracle = [ph for rep in reports for ph in rep.phases if ph.name.startswith("oracle:")]
    violations = [(rep.family, ph.name) for rep in reports for ph in rep.phases
                  if ph.name.startswith("oracle:") and not ph.passed]
    shortcut_bad = _shortcut_violations(500, 9)
    secs = time.perf_counter() - t0
    ok = not violations and shortcut_bad == 0 and len(oracle) > 0 and secs <= 120
    say(9, ok, f"{len(oracle)} oracle checks, {len(violations)} violations; "
               f"500 shortcut instances, {shortcut_bad} violations; {secs:.1f}s")
    assert ok


# -- 10 -----------------------------------------------------------------------

PRIMES = (2, 3, 5, 7, 11)


def _poly(rng, nv, p, terms=3, exp=3):
    return SparsePoly([(tuple(rng.randint(0, exp) for _ in range(nv)), rng.randint(1, 50))
                       for _ in range(rng.randint(0, terms))], nv, p)


def _euler(rng):
    nv = rng.randint(2, 4)
    weights = [rng.randint(1, 6) for _ in range(nv)]
    d = rng.randint(1, 18)
    p = rng.choice(PRIMES)
    lam = enumerate_monomials(WeightSystem(tuple(weights)), d)
    f = SparsePoly([(rng.choice(lam), rng.randint(1, 50)) for _ in range(rng.randint(0, 5))] if lam else [], nv, p)
    lhs = SparsePoly.zero(nv, p)
    for i, a in enumerate(weights):
        xi = SparsePoly.monomial(tuple(int(t == i) for t in range(nv)), p)
        lhs = lhs + xi * partial_derivative(f, i) * a
    return lhs == f * d


def _freshman(rng):
    p = rng.choice(PRIMES)
    f, g = _poly(rng, 3, p, exp=2), _poly(rng, 3, p, exp=2)
    return (f + g) ** p == f ** p + g ** p


def _pth_derivative(rng):
    f = _poly(rng, 3, rng.choice(PRIMES), terms=4, exp=4)
    return partial_derivative(f ** f.p, rng.randrange(3)).is_zero()


def _commutation(rng):
    p = rng.choice(PRIMES)
    m = PolyMatrix([[_poly(rng, 3, p) for _ in range(3)] for _ in range(3)])
    on = rng.sample(range(3), rng.randint(1, 3))
    return restrict_to_stratum(matrix_determinant(m), on) == matrix_determinant(m.restrict(on))


def test_10_algebra_suite(say):
    props = {"euler": _euler, "freshman": _freshman, "d(f^p)": _pth_derivative, "restrict/det": _commutation}
    rng = random.Random(10)
    failures = {name: sum(not fn(rng) for _ in range(1000)) for name, fn in props.items()}
    ok = not any(failures.values())
    say(10, ok, "1000 cases each, violations " + ", ".join(f"{k} {v}" for k, v in failures.items()))
    assert ok
