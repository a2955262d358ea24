import json
import random

import numpy as np
import pytest

from ovoidcodes import codes as co
from ovoidcodes import geometry as ge

from helpers import DUAL_A5, TABLE1, code, ctx, geo_dist

Q2_GENMATRIX_CSV = """\
1,1,1,1,1,1,1,1,0
0,1,0,1,0,1,0,1,0
0,0,0,0,1,1,1,1,0
0,0,1,1,0,0,1,1,0
0,1,1,0,1,0,1,0,0
0,0,1,1,1,0,0,1,0
0,0,0,1,1,1,1,0,0
0,1,1,1,1,1,1,1,1
"""


def test_generator_matrix_shape_and_rank():
    for q in (2, 3, 4, 5):
        gm = co.build_generator_matrix(ctx(q))
        assert (gm.k, gm.n) == (8, q**3 + 1)
        assert gm.matrix.shape == (8, q**3 + 1)
        assert not (gm.matrix == 0).all(axis=0).any()
        assert code(q).k == 8


def test_generator_matrix_q2_frozen():
    assert co.build_generator_matrix(ctx(2)).to_csv() == Q2_GENMATRIX_CSV


def test_generator_columns_are_point_evaluations():
    for q in (2, 3, 4):
        c = ctx(q)
        gm = co.build_generator_matrix(c)
        th = c.theta
        th2 = c.mulq(th, th) if c.in_subfield(th) else c.mul3(th, th)
        for x in range(c.q3):
            fp = c.frob_product(x)
            col = (
                1,
                c.trace(x),
                c.trace(c.mul3(c.theta, x)),
                c.trace(c.mul3(th2, x)),
                c.trace(fp),
                c.trace(c.mul3(c.theta, fp)),
                c.trace(c.mul3(th2, fp)),
                c.norm(x),
            )
            assert tuple(int(v) for v in gm.matrix[:, x]) == col
        assert tuple(int(v) for v in gm.matrix[:, -1]) == (0, 0, 0, 0, 0, 0, 0, 1)


def test_weight_distribution_three_routes():
    for q in (2, 3):
        formulas = co.weight_distribution_formulas(q)
        geo = geo_dist(q)
        exh = co.weight_distribution_exhaustive(code(q))
        assert formulas == geo == exh
        assert geo.counts == TABLE1[q]


def test_table1_frozen():
    for q in (2, 3, 4, 5):
        assert co.weight_distribution_formulas(q).counts == TABLE1[q]
        assert geo_dist(q).counts == TABLE1[q]


def test_distribution_validate_and_notation():
    d = geo_dist(2)
    d.validate(2, 8)
    assert d.table_notation() == "(0^1 2^36 4^126 6^84 8^9)"
    assert d.min_distance == 2
    assert d.total == 256
    bad = co.WeightDistribution(9, {0: 1, 2: 35, 4: 126, 6: 84, 8: 9})
    with pytest.raises(ValueError):
        bad.validate(2, 8)
    with pytest.raises(ValueError):
        co.WeightDistribution(4, {5: 1})


def test_distribution_json_round_trip():
    d = geo_dist(3)
    blob = json.dumps(d.to_json_dict())
    back = co.WeightDistribution.from_json_dict(3**3 + 1, json.loads(blob))
    assert back == d


def test_codeword_and_membership():
    rng = random.Random(9)
    for q in (2, 3, 4):
        h = code(q)
        for _ in range(40):
            msg = tuple(rng.randrange(q) for _ in range(8))
            word = h.codeword(msg)
            assert len(word) == h.n
            assert h.contains(word)
        outside = list(h.codeword(tuple([1] + [0] * 7)))
        outside[0] = (outside[0] + 1) % q
        # flipping one symbol of a codeword leaves the code (d >= 2)
        assert not h.contains(tuple(outside))


def test_min_distance_small():
    assert co.min_distance(code(2)) == 2
    assert co.min_distance(code(3)) == 15


def test_macwilliams_q2_repetition_dual():
    dual = co.macwilliams(geo_dist(2), 9, 8, 2)
    assert dual.counts == {0: 1, 9: 1}


def test_macwilliams_involution():
    for q in (2, 3, 4):
        n = q**3 + 1
        dist = geo_dist(q)
        dual = co.macwilliams(dist, n, 8, q)
        assert dual.total == q ** (n - 8)
        assert co.macwilliams(dual, n, n - 8, q) == dist


def test_macwilliams_rejects_non_distribution():
    counts = dict(TABLE1[3])
    counts[15] += 1
    with pytest.raises(ValueError):
        co.macwilliams(co.WeightDistribution(28, counts), 28, 8, 3)


def test_dual_low_weights():
    assert co.macwilliams(geo_dist(3), 28, 8, 3, up_to=6).counts[6] == 6552
    for q in (3, 4, 5):
        n = q**3 + 1
        part = co.macwilliams(co.weight_distribution_formulas(q), n, 8, q, up_to=5)
        for j in range(1, 5):
            assert part[j] == 0
        assert part[5] == (0 if q == 3 else DUAL_A5[q])
        assert co.dual_a5_formula(q) == (q - 3) * (q - 2) * (q - 1) * q**3 * (q**6 - 1) // 120


def test_dual_min_distance():
    want = {2: 9, 3: 6, 4: 5, 5: 5}
    for q, d in want.items():
        dist = co.weight_distribution_formulas(q)
        assert co.dual_min_distance(dist, q**3 + 1, 8, q) == d


def test_puncture_and_shorten_q3():
    h = code(3)
    pun = co.puncture_last(h, 1)
    assert (pun.n, pun.k) == (27, 8)
    assert co.min_distance(pun) == 14
    sh = co.shorten(h, [27])
    assert (sh.n, sh.k) == (27, 7)
    assert co.min_distance(sh) == 15
    # every shortened codeword extends by a zero to a codeword of the parent
    rng = random.Random(77)
    for _ in range(25):
        msg = tuple(rng.randrange(3) for _ in range(7))
        assert h.contains(tuple(sh.codeword(msg)) + (0,))
    with pytest.raises(ValueError):
        co.puncture(h, [28])
    with pytest.raises(ValueError):
        co.puncture(h, [-1])
    # duplicate positions collapse to a set
    assert co.puncture(h, [3, 3]).n == 27


def test_puncture_preserves_unhit_columns():
    h = code(2)
    pun = co.puncture(h, [0, 4])
    assert pun.n == 7
    assert 1 <= pun.k <= 7
    word = h.codeword((1, 0, 1, 0, 0, 1, 0, 1))
    expect = tuple(v for i, v in enumerate(word) if i not in (0, 4))
    assert pun.contains(expect)


def test_residual_frozen():
    h2 = code(2)
    c2 = co.find_codeword_of_weight(h2, 2)
    r2 = co.residual(h2, c2)
    assert (r2.n, r2.k) == (7, 7)
    h3 = code(3)
    c3 = co.find_codeword_of_weight(h3, 15)
    r3 = co.residual(h3, c3)
    assert (r3.n, r3.k) == (13, 7)
    assert co.min_distance(r3) == 5
    with pytest.raises(ValueError):
        co.residual(h3, (0,) * 28)


def test_find_codeword_of_weight():
    h = code(3)
    for w in (15, 18, 21, 27):
        word = co.find_codeword_of_weight(h, w)
        assert sum(1 for v in word if v) == w
    with pytest.raises(ValueError):
        co.find_codeword_of_weight(h, 16)


def test_column_dependence_q4_q5():
    for q in (4, 5):
        c = ctx(q)
        gm = co.build_generator_matrix(c)
        cols, coeffs = co.column_dependence_check(c, gm)
        assert len(cols) == 5 and len(set(cols)) == 5
        tb = c.gf_tables()
        acc = [0] * 8
        for pos, lam in zip(cols, coeffs):
            assert lam != 0
            for i in range(8):
                acc[i] = int(tb.add[acc[i], tb.mul[lam, gm.matrix[i, pos]]])
        assert acc == [0] * 8


def test_geometric_matches_exhaustive_q4():
    assert geo_dist(4) == co.weight_distribution_exhaustive(code(4))
