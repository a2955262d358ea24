"""Named verification checks behind the verify subcommand.

Each check is a function of a Session (lazily cached per-q artifacts)
that raises CheckFailure (or any exception) on failure and returns a
one-line detail string on success.  The registry maps check names to
(predicate on q, function); run_checks evaluates the applicable ones in
order and never stops at the first failure.
"""

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import bounds as bo
from . import codes as co
from . import geometry as ge
from .fields import FieldContext


class CheckFailure(AssertionError):
    pass


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str


class Session:
    """Lazily computed artifacts shared by the checks at one q."""

    def __init__(self, ctx: FieldContext, threads: int = 1, guard: int = ge.DEFAULT_POINT_GUARD):
        self.ctx = ctx
        self.q = ctx.q
        self.threads = threads
        self.guard = guard
        self._cache = {}

    def _get(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    @property
    def ovoid(self):
        return self._get("ovoid", lambda: ge.ovoid(self.ctx))

    @property
    def report(self):
        return self._get(
            "report", lambda: ge.orbit_decompose(self.ctx, guard=self.guard, keep_labels=True)
        )

    @property
    def sections(self):
        return self._get(
            "sections",
            lambda: ge.section_sweep(self.ctx, threads=self.threads, guard=self.guard),
        )

    @property
    def genmatrix(self):
        return self._get("genmatrix", lambda: co.build_generator_matrix(self.ctx))

    @property
    def code(self):
        return self._get("code", lambda: co.CodeHandle.from_generator(self.ctx, self.genmatrix))

    @property
    def geo_dist(self):
        return self._get(
            "geo_dist",
            lambda: co.weight_distribution_geometric(
                self.ctx, threads=self.threads, guard=self.guard
            ),
        )

    def rng(self, salt: int) -> random.Random:
        return random.Random(1009 * self.q + salt)


def _require(cond, msg):
    if not cond:
        raise CheckFailure(msg)


# ---------------------------------------------------------------------------
# geometry checks


def check_field_arithmetic(s: Session) -> str:
    ctx, rng = s.ctx, s.rng(1)
    q3 = ctx.q3
    for _ in range(200):
        x, y = rng.randrange(q3), rng.randrange(q3)
        _require(ctx.mul3(x, y) == ctx._mul3_poly(x, y), f"mul mismatch at {x},{y}")
        if x:
            _require(ctx.mul3(x, ctx.inv3(x)) == 1, f"inverse fails at {x}")
        _require(ctx.in_subfield(ctx.trace(x)), f"trace outside subfield at {x}")
        _require(ctx.in_subfield(ctx.norm(x)), f"norm outside subfield at {x}")
        _require(
            ctx.frobenius(ctx.add3(x, y), 1) == ctx.add3(ctx.frobenius(x, 1), ctx.frobenius(y, 1)),
            "Frobenius not additive",
        )
    fiber = sum(1 for x in range(q3) if ctx.trace(x) == 0)
    _require(fiber == ctx.q**2, f"trace zero fiber {fiber} != q^2")
    return f"mul/inv/trace/norm/Frobenius on 200 samples, |Tr=0| = {fiber}"


def check_orbit_partition(s: Session) -> str:
    rep = s.report
    q = s.q
    _require(rep.sizes == ge.orbit_size_formulas(q), f"sizes {rep.sizes}")
    _require(sum(rep.sizes) == ge.num_points(q), "sizes do not sum to |PG(7,q)|")
    _require(rep.sections == ge.section_formulas(q), f"sections {rep.sections}")
    _require(
        rep.stabilizer_orders == ge.stabilizer_order_formulas(q),
        f"stabilizers {rep.stabilizer_orders}",
    )
    for size, stab in zip(rep.sizes, rep.stabilizer_orders):
        _require(size * stab == rep.group_order, "orbit-stabilizer mismatch")
    return f"orbit sizes {rep.sizes}, sections {rep.sections}"


def check_section_constancy(s: Session) -> str:
    rep, secs = s.report, s.sections
    q = s.q
    want = ge.section_formulas(q)
    labels = rep.labels
    if q <= 3:
        for lab in range(4):
            got = set(int(v) for v in np.unique(secs[labels == lab]))
            _require(got == {want[lab]}, f"orbit {lab} sections {got}")
        return f"exhaustive: every orbit has constant section {want}"
    rng = s.rng(2)
    n = ge.num_points(q)
    for _ in range(400):
        r = rng.randrange(n)
        _require(
            int(secs[r]) == want[int(labels[r])],
            f"rank {r}: section {int(secs[r])} != {want[int(labels[r])]}",
        )
    return f"sampled 400 points: sections match orbit labels {want}"


def check_stabilizers_exhaustive(s: Session) -> str:
    ctx = s.ctx
    reps = ge.orbit_representatives(ctx)
    want = ge.stabilizer_order_formulas(s.q)
    got = tuple(ge.stabilizer_order(ctx, P, method="exhaustive") for P in reps[1:])
    _require(got == want[1:], f"stabilizers {got} != {want[1:]}")
    ov = ge.stabilizer_order(ctx, reps[0], method="orbit")
    _require(ov == want[0], f"ovoid stabilizer {ov} != {want[0]}")
    return f"exhaustive orders {got}, ovoid orbit route {ov}"


def check_double_counting(s: Session) -> str:
    q = s.q
    secs = s.sections.astype(object)
    s1 = int(sum(secs))
    s2 = int(sum(secs * (secs - 1)))
    w1 = (q**3 + 1) * (q**7 - 1) // (q - 1)
    w2 = q**3 * (q**3 + 1) * (q**6 - 1) // (q - 1)
    _require(s1 == w1, f"sum of sections {s1} != {w1}")
    _require(s2 == w2, f"sum of section pairs {s2} != {w2}")
    return f"sum {s1} and pair sum {s2} both match"


def check_form_invariance(s: Session) -> str:
    """The vector-level action scales A (and Q, for even q) by the single
    factor N(det g); canonical lifts with N(det g) = 1 preserve the forms
    exactly.  Assert the multiplier law before any canonicalization."""
    ctx, rng = s.ctx, s.rng(3)
    q3 = ctx.q3
    even = ctx.q % 2 == 0

    def rand_vec():
        return (rng.randrange(ctx.q), rng.randrange(q3), rng.randrange(q3), rng.randrange(ctx.q))

    exact = 0
    for _ in range(1000):
        g = ge.random_group_element(ctx, rng)
        a, b, c, d = g
        mult = ctx.norm(ctx.sub3(ctx.mul3(a, d), ctx.mul3(b, c)))
        u, v = rand_vec(), rand_vec()
        gu, gv = ge.act_vector(ctx, g, u), ge.act_vector(ctx, g, v)
        _require(
            ge.alternating_form(ctx, gu, gv) == ctx.mulq(mult, ge.alternating_form(ctx, u, v)),
            f"A multiplier law fails under {g}",
        )
        if even:
            _require(
                ge.quadratic_form(ctx, gu) == ctx.mulq(mult, ge.quadratic_form(ctx, u)),
                f"Q multiplier law fails under {g}",
            )
        if mult == 1:
            _require(
                ge.alternating_form(ctx, gu, gv) == ge.alternating_form(ctx, u, v),
                f"A not preserved by norm-1 lift {g}",
            )
            exact += 1
    forms = "A and Q scale" if even else "A scales"
    return f"{forms} by N(det g) on 1000 triples ({exact} exactly invariant)"


def check_action_homomorphism(s: Session) -> str:
    ctx, rng = s.ctx, s.rng(4)
    q3 = ctx.q3
    for _ in range(200):
        g = ge.random_group_element(ctx, rng)
        h = ge.random_group_element(ctx, rng)
        v = (rng.randrange(ctx.q), rng.randrange(q3), rng.randrange(q3), rng.randrange(ctx.q))
        if not any(v):
            v = (1, 0, 0, 0)
        P = ge.canonicalize(ctx, v)
        lhs = ge.act(ctx, ge.compose(ctx, g, h), P)
        rhs = ge.act(ctx, g, ge.act(ctx, h, P))
        _require(lhs == rhs, f"composition fails for {g}, {h}")
    return "act(gh, P) == act(g, act(h, P)) on 200 random projective triples"


def check_mobius_on_ovoid(s: Session) -> str:
    ctx, rng = s.ctx, s.rng(5)
    xs = list(range(ctx.q3)) + [None]
    for _ in range(40):
        g = ge.random_group_element(ctx, rng)
        for x in xs:
            lhs = ge.act(ctx, g, ge.ovoid_point(ctx, x))
            rhs = ge.ovoid_point(ctx, ge.mobius(ctx, g, x))
            _require(lhs == rhs, f"moebius mismatch at g={g}, x={x}")
    return f"40 random elements agree with the fractional action on all {len(xs)} points"


def check_ovoid_structure(s: Session) -> str:
    rep = ge.partial_ovoid_check(s.ctx, sections=s.sections, threads=s.threads, guard=s.guard)
    _require(rep.size_ok, "wrong number of distinct points")
    _require(rep.pairwise_ok, "two points are perpendicular")
    if s.q % 2 == 0:
        _require(rep.quadric_ok, "a point is off the quadric")
    _require(rep.complete, "a point of PG(7,q) sees no ovoid point")
    kind = "ovoid on the quadric" if s.q % 2 == 0 else "complete partial ovoid"
    return f"{kind}; min section {rep.min_section}"


def check_special_points(s: Session) -> str:
    got = ge.special_point_counts(s.ctx)
    q = s.q
    _require(got == (q**2 - q, q**2 - q + 1), f"counts {got}")
    return f"counts {got} == (q^2-q, q^2-q+1)"


# ---------------------------------------------------------------------------
# code checks


def check_code_distribution(s: Session) -> str:
    q = s.q
    geo = s.geo_dist
    _require(geo == co.weight_distribution_formulas(q), "geometric != closed form")
    geo.validate(q, 8)
    d = geo.min_distance
    _require(d == q**3 - q**2 - q, f"min distance {d}")
    return f"[{geo.n},8,{d}]_{q} {geo.table_notation()}"


def check_codeword_oracle(s: Session) -> str:
    exh = co.weight_distribution_exhaustive(s.code, threads=s.threads)
    _require(exh == s.geo_dist, "exhaustive != geometric")
    return f"all {s.q}^8 codewords agree with the section sweep"


def check_macwilliams_involution(s: Session) -> str:
    q, n = s.q, s.q**3 + 1
    dist = s.geo_dist
    dual = co.macwilliams(dist, n, 8, q)
    back = co.macwilliams(dual, n, n - 8, q)
    _require(back == dist, "double transform is not the identity")
    return f"transform and back over n = {n} is the identity"


def check_dual_weights(s: Session) -> str:
    q, n = s.q, s.q**3 + 1
    dist = co.weight_distribution_formulas(q)
    if q == 2:
        dual = co.macwilliams(dist, n, 8, q)
        _require(dual.counts == {0: 1, 9: 1}, f"dual {dual.counts}")
        return "dual is the length-9 repetition code"
    part = co.macwilliams(dist, n, 8, q, up_to=6)
    for j in range(1, 5):
        _require(part[j] == 0, f"A'_{j} = {part[j]}")
    if q == 3:
        _require(part[5] == 0 and part[6] == 6552, f"A'_5={part[5]}, A'_6={part[6]}")
        return "A'_5 = 0, A'_6 = 6552"
    want = co.dual_a5_formula(q)
    _require(part[5] == want, f"A'_5 = {part[5]} != {want}")
    d = co.dual_min_distance(dist, n, 8, q)
    _require(d == 5, f"dual distance {d}")
    return f"A'_1..A'_4 = 0, A'_5 = {want}, dual distance 5"


def check_dual_column_cross(s: Session) -> str:
    cols, coeffs = co.column_dependence_check(s.ctx, s.genmatrix)
    return f"no 4 columns dependent; 5-column dependency at {cols}"


def check_residual_mechanism(s: Session) -> str:
    q = s.q
    w = q**3 - q**2 - q
    c = co.find_codeword_of_weight(s.code, w)
    r = co.residual(s.code, c)
    d = co.min_distance(r)
    if q == 2:
        _require((r.n, r.k) == (7, 7), f"[{r.n},{r.k}]")
        return f"weight-2 residual is [7,7,{d}]"
    _require((r.n, r.k, d) == (13, 7, 5), f"[{r.n},{r.k},{d}]")
    return "weight-15 residual is [13,7,5]"


def check_punctured_lengths(s: Session) -> str:
    q = s.q
    tmax = (q - 3) // 2
    for t in range(1, tmax + 1):
        cert = bo.ovoid_lp_certificate(q, t)
        _require(cert.bound < q**8, f"t={t} bound {cert.bound}")
    detail = f"shifted certificates valid for t <= {tmax}"
    if q**8 <= co.EXHAUSTIVE_CODEWORD_LIMIT:
        pun = co.puncture_last(s.code, 1)
        d = co.min_distance(pun, threads=s.threads)
        _require((pun.n, pun.k) == (q**3, 8), f"[{pun.n},{pun.k}]")
        _require(d == q**3 - q**2 - q - 1, f"punctured distance {d}")
        detail += f"; punctured code is [{pun.n},8,{d}]_{q} exhaustively"
    return detail


# ---------------------------------------------------------------------------
# bound checks


def check_lp_certificate(s: Session) -> str:
    q = s.q
    cert = bo.ovoid_lp_certificate(q, 0)
    _require(cert.bound < q**8, f"bound {cert.bound}")
    return f"bound {cert.bound} < q^8 = {q**8}"


def check_sphere_packing(s: Session) -> str:
    cert = bo.dual_sphere_packing_certificate(s.q)
    return f"sphere {cert.sphere} > q^7 = {cert.threshold}"


def check_krawtchouk_orthogonality(s: Session) -> str:
    q = s.q
    n = min(q**3 + 1, 16)
    for i in range(5):
        for j in range(5):
            tot = sum(bo.krawtchouk(n, q, i, x) * bo.krawtchouk(n, q, x, j) for x in range(n + 1))
            want = q**n if i == j else 0
            _require(tot == want, f"orthogonality fails at ({i},{j}): {tot}")
    return f"sum_x K_i(x) K_x(j) = q^n delta_ij at n = {n}, i,j <= 4"


def check_expansion_round_trip(s: Session) -> str:
    q, rng = s.q, s.rng(6)
    n = q**3
    for _ in range(20):
        f = bo.RationalPoly(
            [Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(5)]
        )
        coeffs = bo.krawtchouk_expand(f, n, q)
        back = bo.RationalPoly([])
        for i, fi in enumerate(coeffs):
            back = back + bo.krawtchouk_poly(n, q, i).scale(fi)
        _require(back == f, f"round trip changed {f}")
    return "20 random quartics expand and rebuild exactly"


def check_optimality_report(s: Session) -> str:
    rep = bo.n_optimality_report(s.q)
    _require(rep.primal_certified, "primal not certified")
    if s.q == 3:
        _require(not rep.dual_certified, "q=3 dual must stay uncertified")
    else:
        _require(rep.dual_certified, "dual not certified")
    return f"primal via {rep.primal_method}, dual via {rep.dual_method}"


# ---------------------------------------------------------------------------
# registry and runner

_EXH = co.EXHAUSTIVE_CODEWORD_LIMIT

CHECKS = [
    ("field-arithmetic", lambda q: True, check_field_arithmetic),
    ("orbit-partition", lambda q: True, check_orbit_partition),
    ("section-constancy", lambda q: q <= 5, check_section_constancy),
    ("stabilizers-exhaustive", lambda q: q <= 3, check_stabilizers_exhaustive),
    ("double-counting", lambda q: q <= 5, check_double_counting),
    ("form-invariance", lambda q: True, check_form_invariance),
    ("action-homomorphism", lambda q: True, check_action_homomorphism),
    ("mobius-on-ovoid", lambda q: q <= 7, check_mobius_on_ovoid),
    ("ovoid-structure", lambda q: q <= 5, check_ovoid_structure),
    ("special-points", lambda q: True, check_special_points),
    ("code-distribution", lambda q: True, check_code_distribution),
    ("codeword-oracle", lambda q: q <= 5, check_codeword_oracle),
    ("macwilliams-involution", lambda q: q <= 5, check_macwilliams_involution),
    ("dual-weights", lambda q: True, check_dual_weights),
    ("dual-column-cross-check", lambda q: q in (4, 5), check_dual_column_cross),
    ("residual-mechanism", lambda q: q <= 3, check_residual_mechanism),
    ("punctured-lengths", lambda q: q >= 5, check_punctured_lengths),
    ("lp-certificate", lambda q: q >= 3, check_lp_certificate),
    ("sphere-packing", lambda q: q >= 4, check_sphere_packing),
    ("krawtchouk-orthogonality", lambda q: True, check_krawtchouk_orthogonality),
    ("expansion-round-trip", lambda q: True, check_expansion_round_trip),
    ("optimality-report", lambda q: True, check_optimality_report),
]


def check_names(q: int) -> list:
    return [name for name, pred, _ in CHECKS if pred(q)]


def run_checks(ctx: FieldContext, threads: int = 1, guard: int = ge.DEFAULT_POINT_GUARD, names=None):
    """Run the applicable checks; returns a list of CheckResult."""
    s = Session(ctx, threads=threads, guard=guard)
    results = []
    wanted = None if names is None else set(names)
    for name, pred, fn in CHECKS:
        if not pred(ctx.q):
            continue
        if wanted is not None and name not in wanted:
            continue
        try:
            detail = fn(s)
            results.append(CheckResult(name, True, detail))
        except Exception as exc:
            results.append(CheckResult(name, False, f"{type(exc).__name__}: {exc}"))
    return results
