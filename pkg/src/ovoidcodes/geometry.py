"""Geometry of V = F_q x F_{q^3} x F_{q^3} x F_q and the PGL(2,q^3) action.

Vectors are 4-tuples (x, y, z, w) of field indices, with x, w in F_q and
y, z in F_{q^3}.  Flattening maps a vector to its 8 F_q coordinates
(x, y0, y1, y2, z0, z1, z2, w).  Projective points are canonical
vectors: the first nonzero flat coordinate is scaled to 1.  Group
elements are canonical 4-tuples (a, b, c, d) over F_{q^3} modulo
scalars, with the first nonzero entry scaled to 1.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .fields import FieldContext, GuardExceeded

DEFAULT_POINT_GUARD = 10**7
EXHAUSTIVE_GROUP_LIMIT = 25000  # full PGL(2,q^3) scans only below this order

Vector = tuple[int, int, int, int]


# ----------------------------------------------------------------- vectors

def flatten(ctx: FieldContext, v: Vector) -> tuple:
    x, y, z, w = v
    y0, y1, y2 = ctx.digits3(y)
    z0, z1, z2 = ctx.digits3(z)
    return (x, y0, y1, y2, z0, z1, z2, w)


def unflatten(ctx: FieldContext, f) -> Vector:
    return (f[0], ctx.encode3(f[1], f[2], f[3]), ctx.encode3(f[4], f[5], f[6]), f[7])


def scale_vector(ctx, lam, v):
    x, y, z, w = v
    return (ctx.mulq(lam, x), ctx.scalar3(lam, y), ctx.scalar3(lam, z), ctx.mulq(lam, w))


def canonicalize(ctx, v):
    """Canonical projective representative of a nonzero vector."""
    lead = None
    for c in flatten(ctx, v):
        if c:
            lead = c
            break
    if lead is None:
        raise ValueError("the zero vector spans no projective point")
    if lead == 1:
        return v
    return scale_vector(ctx, ctx.invq(lead), v)


projective_point = canonicalize


def num_points(q: int) -> int:
    return (q**8 - 1) // (q - 1)


def point_rank(ctx, v) -> int:
    f = flatten(ctx, canonicalize(ctx, v))
    q = ctx.q
    k = next(i for i, c in enumerate(f) if c)
    off = sum(q ** (7 - i) for i in range(k))
    local = 0
    for idx in range(7, k, -1):
        local = local * q + f[idx]
    return off + local


def point_from_rank(ctx, r: int) -> Vector:
    q = ctx.q
    k, off = 0, 0
    while r >= off + q ** (7 - k):
        off += q ** (7 - k)
        k += 1
    f = [0] * 8
    f[k] = 1
    local = r - off
    for t in range(7 - k):
        f[k + 1 + t] = local % q
        local //= q
    return unflatten(ctx, f)


# ------------------------------------------------------------------- forms

def alternating_form(ctx, u, v) -> int:
    x1, y1, z1, w1 = u
    x2, y2, z2, w2 = v
    t = ctx.trace(ctx.sub3(ctx.mul3(z1, y2), ctx.mul3(y1, z2)))
    return ctx.addq(ctx.subq(ctx.mulq(x1, w2), ctx.mulq(w1, x2)), t)


def quadratic_form(ctx, v) -> int:
    x, y, z, w = v
    return ctx.addq(ctx.mulq(x, w), ctx.trace(ctx.mul3(y, z)))


# ------------------------------------------------------------------- ovoid

def ovoid_point(ctx, x) -> Vector:
    """P(x) for x in F_{q^3}, or P(infinity) for x = None."""
    if x is None:
        return (0, 0, 0, 1)
    return (1, x, ctx.frob_product(x), ctx.norm(x))


def ovoid(ctx) -> list[Vector]:
    pts = [ovoid_point(ctx, x) for x in range(ctx.q3)]
    pts.append(ovoid_point(ctx, None))
    return pts


# ------------------------------------------------------------------- group

def group_element(ctx, a, b, c, d) -> tuple:
    det = ctx.sub3(ctx.mul3(a, d), ctx.mul3(b, c))
    if det == 0:
        raise ValueError("matrix is singular")
    lead = a or b or c or d
    if lead != 1:
        s = ctx.inv3(lead)
        a, b, c, d = (ctx.mul3(s, t) for t in (a, b, c, d))
    return (a, b, c, d)


def compose(ctx, g, h) -> tuple:
    a1, b1, c1, d1 = g
    a2, b2, c2, d2 = h
    m, s = ctx.mul3, ctx.add3
    return group_element(
        ctx,
        s(m(a1, a2), m(b1, c2)),
        s(m(a1, b2), m(b1, d2)),
        s(m(c1, a2), m(d1, c2)),
        s(m(c1, b2), m(d1, d2)),
    )


def generators(ctx) -> list[tuple]:
    return [
        group_element(ctx, ctx.theta, 0, 0, 1),
        group_element(ctx, 1, 1, 0, 1),
        group_element(ctx, 0, 1, 1, 0),
    ]


def group_order(q: int) -> int:
    return q**3 * (q**6 - 1)


def enumerate_group(ctx):
    """All canonical PGL(2,q^3) elements: (1,b,c,d) with d != bc, then
    (0,1,c,d) with c != 0."""
    q3 = ctx.q3
    for b in range(q3):
        for c in range(q3):
            bc = ctx.mul3(b, c)
            for d in range(q3):
                if d != bc:
                    yield (1, b, c, d)
    for c in range(1, q3):
        for d in range(q3):
            yield (0, 1, c, d)


def random_group_element(ctx, rng) -> tuple:
    while True:
        a, b, c, d = (rng.randrange(ctx.q3) for _ in range(4))
        if ctx.sub3(ctx.mul3(a, d), ctx.mul3(b, c)) != 0:
            return group_element(ctx, a, b, c, d)


# ------------------------------------------------------------------ action

def act_vector(ctx, g, v) -> Vector:
    """The linear action of g on V, before canonicalization."""
    a, b, c, d = g
    x, y, z, w = v
    m3, a3, f = ctx.mul3, ctx.add3, ctx.frobenius
    aq, aq2 = f(a, 1), f(a, 2)
    bq, bq2 = f(b, 1), f(b, 2)
    cq, cq2 = f(c, 1), f(c, 2)
    dq, dq2 = f(d, 1), f(d, 2)
    a_pp, b_pp = m3(aq, aq2), m3(bq, bq2)
    c_pp, d_pp = m3(cq, cq2), m3(dq, dq2)
    yq, yq2 = f(y, 1), f(y, 2)
    zq, zq2 = f(z, 1), f(z, 2)
    sc = ctx.scalar3
    na, nb, nc, nd = ctx.norm(a), ctx.norm(b), ctx.norm(c), ctx.norm(d)

    x_new = ctx.addq(
        ctx.addq(ctx.mulq(nd, x), ctx.mulq(nc, w)),
        ctx.trace(a3(m3(m3(c, d_pp), y), m3(m3(d, c_pp), z))),
    )

    y_new = a3(sc(x, m3(b, d_pp)), sc(w, m3(a, c_pp)))
    y_new = a3(y_new, m3(m3(a, d_pp), y))
    y_new = a3(y_new, m3(m3(b, m3(dq2, cq)), yq))
    y_new = a3(y_new, m3(m3(b, m3(dq, cq2)), yq2))
    y_new = a3(y_new, m3(m3(b, c_pp), z))
    y_new = a3(y_new, m3(m3(a, m3(dq, cq2)), zq))
    y_new = a3(y_new, m3(m3(a, m3(dq2, cq)), zq2))

    z_new = a3(sc(x, m3(d, b_pp)), sc(w, m3(c, a_pp)))
    z_new = a3(z_new, m3(m3(c, b_pp), y))
    z_new = a3(z_new, m3(m3(d, m3(bq2, aq)), yq))
    z_new = a3(z_new, m3(m3(d, m3(bq, aq2)), yq2))
    z_new = a3(z_new, m3(m3(d, a_pp), z))
    z_new = a3(z_new, m3(m3(c, m3(bq, aq2)), zq))
    z_new = a3(z_new, m3(m3(c, m3(bq2, aq)), zq2))

    w_new = ctx.addq(
        ctx.addq(ctx.mulq(nb, x), ctx.mulq(na, w)),
        ctx.trace(a3(m3(m3(a, b_pp), y), m3(m3(b, a_pp), z))),
    )
    return (x_new, y_new, z_new, w_new)


def act(ctx, g, P) -> Vector:
    return canonicalize(ctx, act_vector(ctx, g, P))


def mobius(ctx, g, x):
    """Image of x in F_{q^3} (None = infinity) under z -> (az + b)/(cz + d)."""
    a, b, c, d = g
    if x is None:
        if c == 0:
            return None
        return ctx.mul3(a, ctx.inv3(c))
    den = ctx.add3(ctx.mul3(c, x), d)
    if den == 0:
        return None
    return ctx.mul3(ctx.add3(ctx.mul3(a, x), b), ctx.inv3(den))


def group_matrix(ctx, g) -> np.ndarray:
    """The 8x8 matrix over F_q of the linear action of g on flattened V."""
    cols = []
    for j in range(8):
        e = [0] * 8
        e[j] = 1
        cols.append(flatten(ctx, act_vector(ctx, g, unflatten(ctx, e))))
    return np.array(cols, dtype=np.uint16).T


# ------------------------------------------------------- orbits and sweeps

def orbit_representatives(ctx) -> list[Vector]:
    al = ctx.alpha
    return [(1, 0, 0, 0), (0, 0, 1, 0), (1, 0, 0, 1), (1, 0, al, al)]


def orbit_size_formulas(q: int) -> tuple:
    return (
        q**3 + 1,
        q * (q * q + q + 1) * (q**3 + 1),
        q**3 * (q**3 + 1) * (q - 1) // 2,
        q**3 * (q**3 - 1) * (q + 1) // 2,
    )


def stabilizer_order_formulas(q: int) -> tuple:
    return (
        q**3 * (q**3 - 1),
        q * q * (q - 1),
        2 * (q * q + q + 1),
        2 * (q * q - q + 1),
    )


def section_formulas(q: int) -> tuple:
    return (1, q * q + 1, q * q + q + 1, q * q - q + 1)


@dataclass
class OrbitReport:
    q: int
    num_points: int
    group_order: int
    sizes: tuple
    representatives: list
    sections: tuple
    stabilizer_orders: tuple
    labels: np.ndarray | None = None

    def to_json_dict(self, ctx):
        return {
            "q": self.q,
            "orbit_sizes": list(self.sizes),
            "stabilizer_orders": list(self.stabilizer_orders),
            "sections": list(self.sections),
            "representatives": [list(flatten(ctx, r)) for r in self.representatives],
        }


def orbit_decompose(ctx, guard=DEFAULT_POINT_GUARD, keep_labels=True) -> OrbitReport:
    """BFS orbit partition of PG(7,q) under the three standard generators.

    Verifies that the four representative orbits cover every point exactly
    once; any overlap or gap raises, since it would mean broken arithmetic.
    """
    q = ctx.q
    n = num_points(q)
    if n > guard:
        raise GuardExceeded(f"PG(7,{q}) has {n} points, above the guard {guard}")
    reps = orbit_representatives(ctx)
    mats = np.stack([group_matrix(ctx, g) for g in generators(ctx)])
    seeds = np.array([point_rank(ctx, r) for r in reps], dtype=np.int64)
    labels = _kernels.orbit_bfs(mats, ctx.gf_tables(), seeds, n)
    if (labels < 0).any():
        raise RuntimeError("orbit BFS did not cover PG(7,q)")
    sizes = tuple(int(c) for c in np.bincount(labels, minlength=4))
    O = ovoid(ctx)
    sections = tuple(hyperplane_section(ctx, r, O) for r in reps)
    order = group_order(q)
    stabs = []
    for s in sizes:
        if order % s:
            raise RuntimeError("orbit size does not divide the group order")
        stabs.append(order // s)
    return OrbitReport(
        q, n, order, sizes, reps, sections, tuple(stabs), labels if keep_labels else None
    )


def orbit_size(ctx, P, guard=DEFAULT_POINT_GUARD) -> int:
    n = num_points(ctx.q)
    if n > guard:
        raise GuardExceeded(f"PG(7,{ctx.q}) has {n} points, above the guard {guard}")
    mats = np.stack([group_matrix(ctx, g) for g in generators(ctx)])
    seed = np.array([point_rank(ctx, P)], dtype=np.int64)
    labels = _kernels.orbit_bfs(mats, ctx.gf_tables(), seed, n)
    return int((labels == 0).sum())


def stabilizer_order(ctx, P, method="auto") -> int:
    """Order of the stabilizer of P in PGL(2,q^3).

    "exhaustive" scans the whole group (small q only); "orbit" divides the
    group order by the BFS orbit size.
    """
    order = group_order(ctx.q)
    P = canonicalize(ctx, P)
    if method == "auto":
        method = "exhaustive" if order <= EXHAUSTIVE_GROUP_LIMIT else "orbit"
    if method == "exhaustive":
        if order > 20 * EXHAUSTIVE_GROUP_LIMIT:
            raise GuardExceeded(f"group order {order} too large for an exhaustive scan")
        return sum(1 for g in enumerate_group(ctx) if act(ctx, g, P) == P)
    if method == "orbit":
        size = orbit_size(ctx, P)
        if order % size:
            raise RuntimeError("orbit size does not divide the group order")
        return order // size
    raise ValueError(f"unknown method {method!r}")


def hyperplane_section(ctx, v, O=None) -> int:
    """|O ∩ v^perp| for the hyperplane dual to v under the alternating form."""
    v = canonicalize(ctx, v)
    if O is None:
        O = ovoid(ctx)
    return sum(1 for P in O if alternating_form(ctx, P, v) == 0)


def ovoid_dual_matrix(ctx, O=None) -> np.ndarray:
    """Row i holds the F_q functional v -> A(O[i], v) on flat coordinates."""
    if O is None:
        O = ovoid(ctx)
    rows = []
    e = [0] * 8
    for P in O:
        row = []
        for j in range(8):
            e[j] = 1
            row.append(alternating_form(ctx, P, unflatten(ctx, e)))
            e[j] = 0
        rows.append(row)
    return np.array(rows, dtype=np.uint16)


def section_sweep(ctx, O=None, threads=1, guard=DEFAULT_POINT_GUARD) -> np.ndarray:
    """Hyperplane section sizes |O ∩ v^perp| for every point rank of PG(7,q)."""
    n = num_points(ctx.q)
    if n > guard:
        raise GuardExceeded(f"PG(7,{ctx.q}) has {n} points, above the guard {guard}")
    dual = ovoid_dual_matrix(ctx, O)
    return _kernels.sweep_sections_all(dual, ctx.gf_tables(), n, threads=threads)


# --------------------------------------------------------- derived checks

def special_point_counts(ctx) -> tuple[int, int]:
    """Cardinalities of the two alpha-dependent solution sets over F_{q^3}:
    Tr(x) + Tr(x^(q^2+q)) + 1 + alpha = 0 and
    N(x) - Tr(x^(q^2+q)) alpha - alpha^2 = 0."""
    al = ctx.alpha
    one_plus_al = ctx.addq(1, al)
    al_sq = ctx.mulq(al, al)
    c1 = c2 = 0
    for x in range(ctx.q3):
        tp = ctx.trace(ctx.frob_product(x))
        if ctx.addq(ctx.addq(ctx.trace(x), tp), one_plus_al) == 0:
            c1 += 1
        if ctx.subq(ctx.subq(ctx.norm(x), ctx.mulq(tp, al)), al_sq) == 0:
            c2 += 1
    return c1, c2


@dataclass
class OvoidCheckReport:
    q: int
    size_ok: bool
    pairwise_ok: bool
    quadric_ok: bool | None  # even q only
    min_section: int | None
    complete: bool | None

    @property
    def ok(self) -> bool:
        return (
            self.size_ok
            and self.pairwise_ok
            and self.quadric_ok is not False
            and self.complete is not False
        )


def partial_ovoid_check(ctx, sections=None, threads=1, guard=DEFAULT_POINT_GUARD):
    """Pairwise non-perpendicularity of O, the quadric condition for even q,
    and (via the section sweep) completeness: no point of PG(7,q) is
    perpendicular to all of O."""
    O = ovoid(ctx)
    size_ok = len(O) == ctx.q3 + 1 and len(set(O)) == len(O)
    pairwise_ok = all(
        alternating_form(ctx, O[i], O[j]) != 0
        for i in range(len(O))
        for j in range(i + 1, len(O))
    )
    quadric_ok = None
    if ctx.q % 2 == 0:
        quadric_ok = all(quadratic_form(ctx, P) == 0 for P in O)
    if sections is None and num_points(ctx.q) <= guard:
        sections = section_sweep(ctx, O, threads=threads, guard=guard)
    min_section = complete = None
    if sections is not None:
        min_section = int(sections.min())
        complete = min_section >= 1
    return OvoidCheckReport(ctx.q, size_ok, pairwise_ok, quadric_ok, min_section, complete)
