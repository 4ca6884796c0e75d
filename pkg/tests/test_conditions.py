import random
from itertools import combinations

import pytest

from fanoqsm.conditions import (
    CertKind,
    WitnessCertificate,
    build_bordered_jacobian,
    build_jacobian,
    check_witness,
    holds_dagger,
    holds_star,
    holds_star_k,
    holds_star_prime,
    oracle_rank_at_points,
    restricted_determinant,
    shortcut_star,
    shortcut_star_k,
    shortcut_Z_qsm,
)
from fanoqsm.poly import SparsePoly, as_nonzero_monomial, matrix_determinant, restrict_to_stratum
from fanoqsm.wps import WeightSystem, enumerate_monomials, parse_monomial

X, Y, Z, T = range(4)


def m4(text):
    return parse_monomial(text, "xyzt", 4)


def lam_of(weights, d):
    return enumerate_monomials(WeightSystem(weights), d)


LAM22 = lam_of((1, 2, 2, 3), 14)


def test_certificate_shapes():
    WitnessCertificate(CertKind.STAR, (1, 2), [m4("y^7"), m4("z^7")], [1, 2])
    WitnessCertificate(CertKind.STAR_PRIME, (0,), [m4("x^3")], [])
    WitnessCertificate(CertKind.STAR_K, (1, 2), [m4("y^7"), m4("z^7")], [1], k=0)
    with pytest.raises(ValueError):
        WitnessCertificate(CertKind.STAR, (1, 2), [m4("y^7")], [1])
    with pytest.raises(ValueError):
        WitnessCertificate(CertKind.STAR_PRIME, (1, 2), [m4("y^7"), m4("z^7")], [1, 2])
    with pytest.raises(ValueError):
        WitnessCertificate(CertKind.STAR_K, (1,), [m4("y^7")], [1])
    with pytest.raises(ValueError):
        WitnessCertificate(CertKind.STAR_K, (1,), [m4("xy^7")], [0], k=0)
    with pytest.raises(ValueError):
        WitnessCertificate(CertKind.STAR, (), [], [])
    with pytest.raises(ValueError):
        WitnessCertificate(CertKind.STAR, (1, 2), [m4("y^7"), m4("z^7")], [1, 1])


def test_build_jacobian_examples():
    jm = build_jacobian([m4("y^7"), m4("z^7")], [Y, Z], 2)
    assert as_nonzero_monomial(jm[0, 0]) == m4("y^6") and jm[0, 1].is_zero()
    assert jm[1, 0].is_zero() and as_nonzero_monomial(jm[1, 1]) == m4("z^6")
    assert build_jacobian([(2, 0)], [0], 2)[0, 0].is_zero()
    jm = build_jacobian([m4("t^3z"), m4("z^7y"), m4("y^12x")], [X, Y, Z], 2)
    assert jm[0, 2] == SparsePoly.monomial(m4("y^12"), 2)
    assert jm[1, 2].is_zero() and jm[1, 1] == SparsePoly.monomial(m4("z^7"), 2)
    assert jm[2, 0] == SparsePoly.monomial(m4("t^3"), 2)
    with pytest.raises(ValueError):
        build_jacobian([m4("y^7")], [], 2)


def test_bordered_examples():
    b = build_bordered_jacobian([m4("y^5")], [], 3)
    assert b.shape == (1, 1) and as_nonzero_monomial(b[0, 0]) == m4("y^5")
    det = restricted_determinant([m4("x^9z"), m4("y^4")], [Z], (X, Y), 2, True)
    assert as_nonzero_monomial(det) == m4("x^9y^4")
    w6, t3 = (0, 0, 0, 0, 6), (0, 0, 0, 3, 0)
    det = restricted_determinant([w6, t3], [3], (3, 4), 2, True)
    assert as_nonzero_monomial(det) == (0, 0, 0, 2, 6)


def test_check_witness_examples():
    cert = WitnessCertificate(CertKind.STAR, (Y, Z, T), [m4("y^7"), m4("z^7"), m4("ty^5x")], [X, Y, Z],
                              expected=m4("ty^11z^6"))
    v = check_witness(LAM22, cert, 2)
    assert v.holds and v.determinant == m4("ty^11z^6") and v.matches_expected
    bad = WitnessCertificate(CertKind.STAR, (Y, Z), [m4("y^7"), m4("z^7")], [Y, Z])
    assert not check_witness(None, bad, 7).holds
    odd = WitnessCertificate(CertKind.STAR, (Y,), [m4("y^7")], [Y])
    assert check_witness(None, odd, 2).holds
    with pytest.raises(ValueError):
        check_witness([m4("y^7")], cert, 2)


def test_monomial_minors_are_single_terms():
    # every Leibniz term of a monomial Jacobian has the same exponent vector
    rng = random.Random(9)
    for _ in range(300):
        r = rng.randint(1, 3)
        xi = [tuple(rng.randint(0, 4) for _ in range(4)) for _ in range(r)]
        bordered = rng.random() < 0.5
        j = rng.sample(range(4), r - 1 if bordered else r)
        if not j and not bordered:
            continue
        det = restricted_determinant(xi, j, range(4), rng.choice([2, 3, 5]), bordered)
        assert len(det) <= 1


def test_holds_examples():
    v = holds_star(LAM22, (Y, Z), 2)
    assert v.holds
    assert holds_star([m4("x^2")], (X,), 2).holds is False
    assert holds_star_prime([m4("x^2")], (X,), 2).holds
    assert holds_dagger([m4("x^2")], (X,), 2).holds
    assert not holds_dagger([m4("x^2y^2")], (X,), 2).holds
    assert not holds_star([m4("y^7"), m4("z^7")], (Y, Z), 7).holds
    assert not holds_star([], (X,), 2).holds


def test_holds_star_k_examples():
    lam = lam_of((1, 2, 3, 4), 12)
    assert holds_star_k(lam, (Y,), 0, 2).holds
    lam = [m4("t^3"), m4("y^2t")]
    v = holds_star_k(lam, (Y, T), T, 3)
    assert v.holds and T not in v.certificate.j_vars
    assert not holds_star_k([], (Y,), 0, 2).holds


def test_shortcut_star_examples():
    assert shortcut_star([m4("y^7")], (Y,), 2).rule == "1"
    assert shortcut_star([m4("y^7"), m4("z^7")], (Y, Z), 2).rule == "2a"
    assert shortcut_star([m4("y^7"), m4("z^7")], (Y, Z), 7) is None
    assert not holds_star([m4("y^7"), m4("z^7")], (Y, Z), 7).holds
    assert shortcut_star([], (Y,), 2) is None
    with pytest.raises(ValueError):
        shortcut_star(LAM22, (X, Y, Z), 2)


def test_shortcut_star_k_clauses():
    # 3c: x_k^a, x_i^b x_k^c with p not dividing b; determinant b x_k^(a+c) x_i^(b-1)
    sc = shortcut_star_k([m4("t^3"), m4("y^2t")], (Y, T), T, 3)
    assert sc.rule == "3c"
    v = check_witness(None, sc.certificate, 3)
    assert v.holds and v.determinant == m4("y t^4")
    # 3d needs p not dividing b - 1
    assert shortcut_star_k([m4("t y"), m4("y^4")], (Y, T), T, 3) is None
    assert shortcut_star_k([m4("t y"), m4("y^5")], (Y, T), T, 3).rule == "3d"
    assert shortcut_star_k([], (Y,), 0, 2) is None


def test_shortcut_Z_examples():
    sc = shortcut_Z_qsm(lam_of((1, 1, 2, 4), 8), X, 7)
    assert sc is not None and sc.case == 1
    lam40 = [m4("t^2z"), m4("z^3y"), m4("y^3t")]
    assert shortcut_Z_qsm(lam40, X, 3).case == 4
    assert shortcut_Z_qsm(lam_of((1, 4, 5, 7), 19), X, 3).case == 4
    assert shortcut_Z_qsm([m4("x^5")], X, 2) is None
    assert shortcut_Z_qsm([], X, 2) is None
    with pytest.raises(ValueError):
        shortcut_Z_qsm([(1, 0, 0)], 0, 2)


def _random_system(rng, whole=False):
    nv = 4
    weights = tuple(rng.randint(1, 5) for _ in range(nv))
    d = rng.randint(4, 16)
    full = enumerate_monomials(WeightSystem(weights), d)
    if not full or whole:
        return full or None
    return rng.sample(full, rng.randint(1, min(len(full), 8)))


def test_shortcut_soundness_randomized():
    rng = random.Random(2024)
    checked = 0
    fired = {"star": 0, "star_k": 0, "Z": 0}
    while checked < 500:
        lam = _random_system(rng, whole=checked % 2 == 1)
        if lam is None:
            continue
        p = rng.choice([2, 3, 5])
        on = tuple(sorted(rng.sample(range(4), rng.randint(1, 2))))
        k = rng.choice([i for i in range(4) if i not in on] + [on[-1]])
        sc = shortcut_star(lam, on, p)
        if sc is not None:
            fired["star"] += 1
            assert check_witness(lam, sc.certificate, p).holds
            assert holds_star(lam, on, p).holds
        sk = shortcut_star_k(lam, on, k, p)
        if sk is not None:
            fired["star_k"] += 1
            assert check_witness(lam, sk.certificate, p).holds
            assert holds_star_k(lam, on, k, p).holds
        sz = shortcut_Z_qsm(lam, k, p)
        if sz is not None:
            fired["Z"] += 1
            rest = [i for i in range(4) if i != k]
            for r in range(1, 4):
                for sub in combinations(rest, r):
                    assert holds_star_k(lam, sub, k, p).holds
        checked += 1
    assert min(fired.values()) >= 25, fired


def test_certificate_soundness_against_oracle():
    rng = random.Random(5)
    hits = 0
    for _ in range(150):
        lam = _random_system(rng)
        if lam is None:
            continue
        p = rng.choice([2, 3])
        on = tuple(sorted(rng.sample(range(4), rng.randint(1, 3))))
        v = holds_dagger(lam, on, p)
        if v.holds:
            hits += 1
            assert oracle_rank_at_points(lam, on, p, 2, samples=10, seed=1) >= len(on)
    assert hits > 20


def test_oracle_examples():
    assert oracle_rank_at_points(LAM22, (Y, Z, T), 2, 3, 50, 0) >= 3
    assert oracle_rank_at_points([(2, 2)], (0,), 2, 1, 10) == 0
    assert oracle_rank_at_points([], (0,), 2) == 0
    with pytest.raises(ValueError):
        oracle_rank_at_points(LAM22, (Y,), 2, samples=0)


def test_monotonicity_of_dagger():
    rng = random.Random(11)
    for _ in range(150):
        full = lam_of(tuple(rng.randint(1, 4) for _ in range(4)), rng.randint(4, 12))
        if len(full) < 2:
            continue
        lam = rng.sample(full, rng.randint(1, len(full) - 1))
        bigger = lam + rng.sample([m for m in full if m not in lam], 1)
        on = tuple(sorted(rng.sample(range(4), rng.randint(1, 3))))
        p = rng.choice([2, 3, 5])
        if holds_dagger(lam, on, p).holds:
            assert holds_dagger(bigger, on, p).holds


def test_search_determinism_and_commutation():
    for on in [(Y,), (Y, Z), (Y, Z, T), (X, Y, Z, T)]:
        a = holds_dagger(LAM22, on, 2)
        b = holds_dagger(LAM22, on, 2)
        assert a == b
        cert = a.certificate
        full = (build_bordered_jacobian if cert.bordered else build_jacobian)(cert.xi, cert.j_vars, 2)
        late = matrix_determinant(full)
        assert restrict_to_stratum(late, on) == restricted_determinant(cert.xi, cert.j_vars, on, 2, cert.bordered)
