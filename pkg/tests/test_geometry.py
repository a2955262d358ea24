import random

import pytest

from ovoidcodes import geometry as ge
from ovoidcodes.fields import GuardExceeded

from helpers import ctx, orbit_report, sections


def rand_vec(c, rng):
    return (rng.randrange(c.q), rng.randrange(c.q3), rng.randrange(c.q3), rng.randrange(c.q))


def test_flatten_round_trip():
    rng = random.Random(3)
    for q in (2, 3, 4, 5):
        c = ctx(q)
        for _ in range(80):
            v = rand_vec(c, rng)
            assert ge.unflatten(c, ge.flatten(c, v)) == v


def test_point_rank_round_trip():
    for q in (2, 3, 5):
        c = ctx(q)
        n = ge.num_points(q)
        assert ge.point_from_rank(c, 0) == (1, 0, 0, 0)
        assert ge.point_from_rank(c, n - 1) == (0, 0, 0, 1)
        rng = random.Random(17)
        for _ in range(200):
            r = rng.randrange(n)
            P = ge.point_from_rank(c, r)
            assert ge.canonicalize(c, P) == P
            assert ge.point_rank(c, P) == r


def test_num_points():
    for q in (2, 3, 4, 5, 7):
        assert ge.num_points(q) == (q**8 - 1) // (q - 1)


def test_form_values():
    c = ctx(2)
    assert ge.alternating_form(c, (1, 0, 0, 0), (0, 0, 0, 1)) == 1
    assert ge.alternating_form(c, (0, 0, 0, 1), (1, 0, 0, 0)) == 1  # char 2
    assert ge.quadratic_form(c, (1, 0, 0, 1)) == 1
    assert ge.quadratic_form(c, (1, 0, 0, 0)) == 0
    c = ctx(3)
    assert ge.alternating_form(c, (0, 0, 0, 1), (1, 0, 0, 0)) == 2


def test_alternating_and_polarization():
    rng = random.Random(23)
    for q in (2, 3, 4, 5):
        c = ctx(q)
        for _ in range(150):
            u, v = rand_vec(c, rng), rand_vec(c, rng)
            assert ge.alternating_form(c, u, u) == 0
            a_uv = ge.alternating_form(c, u, v)
            assert a_uv == c.negq(ge.alternating_form(c, v, u))
            s = tuple(
                c.add3(x, y) if i in (1, 2) else c.addq(x, y)
                for i, (x, y) in enumerate(zip(u, v))
            )
            pol = c.subq(
                c.subq(ge.quadratic_form(c, s), ge.quadratic_form(c, u)),
                ge.quadratic_form(c, v),
            )
            if q % 2 == 0:
                assert pol == a_uv
            else:
                x2, _, _, w1 = u
                x1, y1, z1, _ = v
                cross = c.addq(c.mulq(x1, w1), c.trace(c.mul3(u[1], z1)))
                assert pol == c.addq(a_uv, c.addq(cross, cross))


def test_ovoid_enumeration():
    for q in (2, 3, 4, 5):
        c = ctx(q)
        O = ge.ovoid(c)
        assert len(O) == q**3 + 1
        assert O[0] == ge.ovoid_point(c, 0) == (1, 0, 0, 0)
        assert O[-1] == ge.ovoid_point(c, None) == (0, 0, 0, 1)
        assert len(set(O)) == q**3 + 1
        for x in range(c.q3):
            P = ge.ovoid_point(c, x)
            assert P == (1, x, c.frob_product(x), c.norm(x))


def test_ovoid_properties_small():
    for q in (2, 3, 4):
        c = ctx(q)
        rep = ge.partial_ovoid_check(c)
        assert rep.size_ok and rep.pairwise_ok and rep.complete
        assert rep.min_section == 1
        if q % 2 == 0:
            assert rep.quadric_ok
        else:
            assert rep.quadric_ok is None
        assert rep.ok


def test_mobius_shift():
    for q in (2, 3):
        c = ctx(q)
        g = ge.group_element(c, 1, 1, 0, 1)  # z -> z + 1
        assert ge.mobius(c, g, None) is None
        for x in range(c.q3):
            assert ge.mobius(c, g, x) == c.add3(x, 1)
        swap = ge.group_element(c, 0, 1, 1, 0)  # z -> 1/z
        assert ge.mobius(c, swap, 0) is None
        assert ge.mobius(c, swap, None) == 0
        for x in range(1, c.q3):
            assert ge.mobius(c, swap, x) == c.inv3(x)


def test_action_matches_mobius():
    rng = random.Random(31)
    for q in (2, 3, 4):
        c = ctx(q)
        xs = list(range(c.q3)) + [None]
        for _ in range(12):
            g = ge.random_group_element(c, rng)
            for x in xs:
                assert ge.act(c, g, ge.ovoid_point(c, x)) == ge.ovoid_point(c, ge.mobius(c, g, x))


def test_group_enumeration_q2():
    c = ctx(2)
    elems = list(ge.enumerate_group(c))
    assert len(elems) == ge.group_order(2) == 504
    assert len(set(elems)) == 504
    for g in elems[:40]:
        a, b, cc, d = g
        assert c.sub3(c.mul3(a, d), c.mul3(b, cc)) != 0


def test_group_matrix_matches_act_vector():
    import numpy as np

    rng = random.Random(41)
    for q in (2, 3, 4):
        c = ctx(q)
        tb = c.gf_tables()
        for _ in range(10):
            g = ge.random_group_element(c, rng)
            M = ge.group_matrix(c, g)
            v = rand_vec(c, rng)
            flat = ge.flatten(c, v)
            out = [0] * 8
            for i in range(8):
                acc = 0
                for j in range(8):
                    acc = int(tb.add[acc, tb.mul[M[i, j], flat[j]]])
                out[i] = acc
            assert tuple(out) == ge.flatten(c, ge.act_vector(c, g, v))


def test_orbit_formulas():
    for q in (2, 3, 4, 5, 7):
        sizes = ge.orbit_size_formulas(q)
        assert sizes[0] == q**3 + 1
        assert sizes[1] == q * (q * q + q + 1) * (q**3 + 1)
        assert sizes[2] == q**3 * (q**3 + 1) * (q - 1) // 2
        assert sizes[3] == q**3 * (q**3 - 1) * (q + 1) // 2
        assert sum(sizes) == ge.num_points(q)
        assert ge.section_formulas(q) == (1, q * q + 1, q * q + q + 1, q * q - q + 1)
        stabs = ge.stabilizer_order_formulas(q)
        assert stabs == (
            q**3 * (q**3 - 1),
            q * q * (q - 1),
            2 * (q * q + q + 1),
            2 * (q * q - q + 1),
        )
        for s, t in zip(sizes, stabs):
            assert s * t == ge.group_order(q)


def test_orbit_decompose_small():
    for q in (2, 3):
        rep = orbit_report(q)
        assert rep.sizes == ge.orbit_size_formulas(q)
        assert rep.sections == ge.section_formulas(q)
        assert rep.stabilizer_orders == ge.stabilizer_order_formulas(q)
        secs = sections(q)
        for lab in range(4):
            vals = {int(s) for s in secs[rep.labels == lab]}
            assert vals == {rep.sections[lab]}


def test_orbit_guard():
    with pytest.raises(GuardExceeded):
        ge.orbit_decompose(ctx(2), guard=10)
    with pytest.raises(GuardExceeded):
        ge.section_sweep(ctx(2), guard=10)


def test_stabilizer_methods_agree():
    c = ctx(2)
    for P in ge.orbit_representatives(c):
        assert ge.stabilizer_order(c, P, method="exhaustive") == ge.stabilizer_order(
            c, P, method="orbit"
        )


def test_special_point_counts():
    for q in (2, 3, 4):
        assert ge.special_point_counts(ctx(q)) == (q * q - q, q * q - q + 1)


def test_hyperplane_section_on_representatives():
    for q in (2, 3):
        c = ctx(q)
        want = ge.section_formulas(q)
        for P, s in zip(ge.orbit_representatives(c), want):
            assert ge.hyperplane_section(c, P) == s


def test_report_json_shape():
    rep = orbit_report(2)
    d = rep.to_json_dict(ctx(2))
    assert d["orbit_sizes"] == [9, 126, 36, 84]
    assert d["sections"] == [1, 5, 7, 3]
    assert len(d["representatives"]) == 4
    assert all(len(p) == 8 for p in d["representatives"])
