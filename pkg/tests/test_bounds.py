import dataclasses
import math
import random
from fractions import Fraction

import pytest

from ovoidcodes import bounds as bo


def test_rational_poly_basics():
    f = bo.RationalPoly([1, 0, -2])
    g = bo.RationalPoly([0, 3])
    assert f.degree == 2 and g.degree == 1
    assert bo.RationalPoly([]).degree == -1
    assert bo.RationalPoly([0, 0]).degree == -1
    assert (f + g).coeffs == (1, 3, -2)
    assert (f - f).degree == -1
    assert (f * g).coeffs == (0, 3, 0, -6)
    assert f(2) == 1 - 8
    assert f.scale(Fraction(1, 2)).coeffs == (Fraction(1, 2), 0, -1)
    h = bo.RationalPoly.from_roots([1, 2])
    assert h.coeffs == (2, -3, 1)
    assert h(1) == h(2) == 0


def test_krawtchouk_values():
    # K_0 = 1, K_1(x) = n(q-1) - qx, K_i(0) = C(n,i)(q-1)^i
    for n, q in ((9, 2), (12, 3), (10, 4)):
        for x in range(n + 1):
            assert bo.krawtchouk(n, q, 0, x) == 1
            assert bo.krawtchouk(n, q, 1, x) == n * (q - 1) - q * x
        for i in range(5):
            assert bo.krawtchouk(n, q, i, 0) == math.comb(n, i) * (q - 1) ** i
    with pytest.raises(ValueError):
        bo.krawtchouk(5, 2, 6, 0)
    with pytest.raises(ValueError):
        bo.krawtchouk(5, 2, -1, 0)


def test_krawtchouk_poly_matches_pointwise():
    for n, q in ((9, 2), (27, 3)):
        for i in range(5):
            p = bo.krawtchouk_poly(n, q, i)
            assert p.degree == i
            for x in range(n + 1):
                assert p(x) == bo.krawtchouk(n, q, i, x)


def test_orthogonality_all_small_lengths():
    for q in (2, 3, 4, 5):
        for n in range(1, 31):
            top = min(4, n)
            for i in range(top + 1):
                for j in range(top + 1):
                    tot = sum(
                        bo.krawtchouk(n, q, i, x) * bo.krawtchouk(n, q, x, j)
                        for x in range(n + 1)
                    )
                    assert tot == (q**n if i == j else 0)


def _random_quartic(rng):
    coeffs = [Fraction(rng.randint(-40, 40), rng.randint(1, 7)) for _ in range(4)]
    coeffs.append(Fraction(rng.randint(1, 40), rng.randint(1, 7)))
    return bo.RationalPoly(coeffs)


def test_expansion_round_trip_100():
    rng = random.Random(101)
    for trial in range(100):
        n, q = ((27, 3), (20, 4), (14, 2))[trial % 3]
        f = _random_quartic(rng)
        coeffs = bo.krawtchouk_expand(f, n, q)
        assert len(coeffs) == 5
        back = bo.RationalPoly([])
        for i, fi in enumerate(coeffs):
            back = back + bo.krawtchouk_poly(n, q, i).scale(fi)
        assert back == f


def test_expansion_matches_orthogonality_transform():
    # second route: f_j = q^-n sum_x f(x) K_x(j)
    rng = random.Random(55)
    n, q = 12, 3
    for _ in range(10):
        f = _random_quartic(rng)
        direct = bo.krawtchouk_expand(f, n, q)
        via_orth = [
            sum(f(x) * bo.krawtchouk(n, q, x, j) for x in range(n + 1)) / q**n
            for j in range(5)
        ]
        assert list(direct) == via_orth


def test_expansion_rejects_high_degree():
    f = bo.RationalPoly([0, 0, 0, 1])
    with pytest.raises(ValueError):
        bo.krawtchouk_expand(f, 2, 2)


def test_quartic_roots_frozen():
    assert bo.quartic_roots(3, 0) == (15, 19, 20, 27)
    assert bo.quartic_roots(5, 1) == (94, 102, 103, 124)
    for q in range(3, 17):
        for t in range((q - 3) // 2 + 1):
            z1, z2, z3, n = bo.quartic_roots(q, t)
            assert n == q**3 - t
            assert z1 < z2 < z3 < n
            assert z1 == q**3 - q**2 - q - t
            assert z3 == z2 + 1


def test_certificate_q3_frozen():
    cert = bo.ovoid_lp_certificate(3, 0)
    assert cert.n == 27 and cert.d == 15
    assert cert.f_kraw == (
        Fraction(28),
        Fraction(964, 27),
        Fraction(74, 9),
        Fraction(22, 9),
        Fraction(8, 27),
    )
    assert cert.bound == Fraction(38475, 7)
    assert cert.f(0) == 153900
    d = cert.to_json_dict()
    assert set(d) == {"q", "t", "n", "d", "roots", "f_monomial", "f_krawtchouk", "bound", "verdict"}
    assert d["bound"] == "38475/7"
    assert d["verdict"] == "valid"
    assert d["f_krawtchouk"][0] == "28"


def test_certificates_full_range():
    for q in range(3, 17):
        cert = bo.ovoid_lp_certificate(q, 0)
        assert cert.f_kraw == bo.closed_form_kraw_coeffs(q)
        assert cert.bound == bo.closed_form_bound(q)
        assert cert.bound < q**8
        assert bo.lp_bound(cert) == cert.bound
        # sign condition, checked directly on every integer point
        z1 = q**3 - q**2 - q
        for x in range(z1, q**3 + 1):
            assert cert.f(x) <= 0
        assert cert.f(0) > 0
        assert all(fi >= 0 for fi in cert.f_kraw)


def test_certificate_rejects_bad_inputs():
    with pytest.raises(ValueError):
        bo.ovoid_lp_certificate(2, 0)
    with pytest.raises(ValueError):
        bo.ovoid_lp_certificate(3, 1)
    with pytest.raises(ValueError):
        bo.ovoid_lp_certificate(4, 1)
    with pytest.raises(ValueError):
        bo.ovoid_lp_certificate(5, 2)
    with pytest.raises(ValueError):
        bo.ovoid_lp_certificate(16, 7)
    assert bo.ovoid_lp_certificate(16, 6).bound < 16**8


def test_check_certificate_catches_tampering():
    cert = bo.ovoid_lp_certificate(3, 0)
    bo.check_certificate(cert)
    bad_kraw = dataclasses.replace(
        cert, f_kraw=(cert.f_kraw[0], -cert.f_kraw[1]) + cert.f_kraw[2:]
    )
    with pytest.raises(bo.CertificateError):
        bo.check_certificate(bad_kraw)
    bad_f = dataclasses.replace(cert, f=bo.RationalPoly([1]))
    with pytest.raises(bo.CertificateError):
        bo.check_certificate(bad_f)


def test_shifted_certificates():
    for q, t in ((5, 1), (7, 1), (7, 2), (9, 3)):
        cert = bo.ovoid_lp_certificate(q, t)
        assert cert.n == q**3 - t
        assert cert.d == q**3 - q**2 - q - t
        assert cert.bound < q**8


def test_sphere_size():
    assert bo.sphere_size(10, 3, 0) == 1
    assert bo.sphere_size(64, 4, 2) == 18337
    with pytest.raises(ValueError):
        bo.sphere_size(4, 2, 5)
    with pytest.raises(ValueError):
        bo.sphere_size(4, 2, -1)
    for q in range(2, 13):
        n = q**3
        poly = (
            Fraction(q**8, 2)
            - q**7
            + Fraction(q**6, 2)
            - Fraction(q**5, 2)
            + 2 * q**4
            - Fraction(3 * q**3, 2)
            + 1
        )
        assert bo.sphere_size(n, q, 2) == poly
        if q >= 4:
            assert bo.sphere_size(n, q, 2) > q**7


def test_dual_sphere_packing():
    cert = bo.dual_sphere_packing_certificate(4)
    assert cert.sphere == 18337 and cert.threshold == 16384
    assert cert.valid
    assert cert.to_json_dict()["verdict"] == "valid"
    with pytest.raises(ValueError):
        bo.dual_sphere_packing_certificate(3)
    for q in (5, 7, 8, 9):
        assert bo.dual_sphere_packing_certificate(q).valid


def test_optimality_reports():
    r2 = bo.n_optimality_report(2)
    assert r2.primal_method == "mds" and r2.primal_certified
    assert r2.dual_method == "trivial" and r2.dual_certified
    r3 = bo.n_optimality_report(3)
    assert r3.primal_method == "lp" and r3.primal_certified
    assert r3.dual_method == "external" and not r3.dual_certified
    r4 = bo.n_optimality_report(4)
    assert r4.primal_method == "lp" and r4.primal_certified
    assert r4.dual_method == "sphere-packing" and r4.dual_certified
    d = r4.to_json_dict()
    assert d["primal"]["certified"] and d["dual"]["certified"]
