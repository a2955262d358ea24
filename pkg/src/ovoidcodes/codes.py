"""The [q^3+1, 8]_q codes attached to the ovoid.

Generator matrix in trace coordinates, weight distributions by two
independent routes (hyperplane sections vs. exhaustive codeword
enumeration), MacWilliams duals, puncture/shorten/residual
constructions, and a meet-in-the-middle column-dependence search.

Field elements are packed indices as in fields.FieldContext; matrices
and codewords are uint16 numpy arrays.  Multiplicities are Python ints
throughout: their sums reach q^8, which already brushes the 32-bit
range at q = 9, and derived counts grow past it.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from . import geometry as ge
from .bounds import krawtchouk
from .fields import FieldContext, GuardExceeded

# exhaustive codeword enumeration cap: q^8 messages
EXHAUSTIVE_CODEWORD_LIMIT = 1 << 26
# cap for the linear scan in find_codeword_of_weight
_SCAN_LIMIT = 1 << 22


# ---------------------------------------------------------------------------
# small exact linear algebra over F_q (k and n stay tiny here)


def _rref(ctx: FieldContext, rows):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    rows = [list(map(int, r)) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    piv = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        ivl = ctx.invq(rows[r][c])
        if ivl != 1:
            rows[r] = [ctx.mulq(ivl, v) for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                lam = rows[i][c]
                rows[i] = [ctx.subq(a, ctx.mulq(lam, b)) for a, b in zip(rows[i], rows[r])]
        piv.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], piv


def _gf_rank(ctx, rows) -> int:
    return len(_rref(ctx, rows)[0])


def _row_combine(ctx, coeffs, rows):
    """sum_i coeffs[i] * rows[i] over F_q, as a uint16 array."""
    tb = ctx.gf_tables()
    rows = np.asarray(rows, dtype=np.uint16)
    out = np.zeros(rows.shape[1], dtype=np.uint16)
    for lam, row in zip(coeffs, rows):
        if lam:
            out = tb.add[out, tb.mul[int(lam), row]]
    return out


def _solve_membership(ctx, basis, vec):
    """Coefficients m with m @ basis == vec, or None if vec is outside.

    basis rows must be linearly independent.
    """
    basis = np.asarray(basis, dtype=np.uint16)
    k, n = basis.shape
    aug = np.hstack([basis, np.eye(k, dtype=np.uint16)])
    red, piv = _rref(ctx, aug)
    if len(piv) != k or piv[-1] >= n:
        raise ValueError("basis rows are dependent")
    m = [0] * k
    for row, c in zip(red, piv):
        lam = int(vec[c])
        if lam:
            for j in range(k):
                m[j] = ctx.addq(m[j], ctx.mulq(lam, row[n + j]))
    if list(_row_combine(ctx, m, basis)) != [int(v) for v in vec]:
        return None
    return m


# ---------------------------------------------------------------------------
# domain types


@dataclass(eq=False)
class GeneratorMatrix:
    """8 x (q^3+1) matrix over F_q; column x is the evaluation vector of x,
    the final column is e_8."""

    q: int
    k: int
    n: int
    matrix: np.ndarray  # (k, n) uint16

    def to_csv(self) -> str:
        return "\n".join(",".join(str(int(v)) for v in row) for row in self.matrix) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "q": self.q,
            "k": self.k,
            "n": self.n,
            "entries": [[int(v) for v in row] for row in self.matrix],
        }


class WeightDistribution:
    """Map weight -> multiplicity with exact integer multiplicities."""

    def __init__(self, n: int, counts):
        self.n = int(n)
        self.counts = {}
        for w, mult in dict(counts).items():
            w, mult = int(w), int(mult)
            if mult < 0 or not 0 <= w <= self.n:
                raise ValueError(f"bad weight-distribution entry {w}: {mult}")
            if mult:
                self.counts[w] = mult

    def __eq__(self, other):
        return (
            isinstance(other, WeightDistribution)
            and self.n == other.n
            and self.counts == other.counts
        )

    def __getitem__(self, w: int) -> int:
        return self.counts.get(int(w), 0)

    def __repr__(self):
        return f"WeightDistribution(n={self.n}, {self.table_notation()})"

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def weights(self):
        return sorted(self.counts)

    @property
    def min_distance(self) -> int:
        nz = [w for w in self.counts if w > 0]
        if not nz:
            raise ValueError("distribution has no nonzero weight")
        return min(nz)

    def table_notation(self) -> str:
        return "(" + " ".join(f"{w}^{self.counts[w]}" for w in self.weights) + ")"

    def to_json_dict(self) -> dict:
        return {str(w): str(self.counts[w]) for w in self.weights}

    @classmethod
    def from_json_dict(cls, n, mapping):
        return cls(n, {int(w): int(m) for w, m in mapping.items()})

    def validate(self, q: int, k: int):
        """Sum q^k, A_0 = 1, nonzero multiplicities divisible by q - 1."""
        if self[0] != 1:
            raise ValueError(f"A_0 = {self[0]}, expected 1")
        if self.total != q**k:
            raise ValueError(f"multiplicities sum to {self.total}, expected {q**k}")
        for w in self.weights:
            if w and self.counts[w] % (q - 1):
                raise ValueError(f"A_{w} = {self.counts[w]} not divisible by {q - 1}")


@dataclass(eq=False)
class CodeHandle:
    """A linear code given by independent generator rows."""

    ctx: FieldContext
    n: int
    k: int
    basis: np.ndarray  # (k, n) uint16, rows linearly independent

    @property
    def q(self) -> int:
        return self.ctx.q

    @classmethod
    def from_rows(cls, ctx, rows):
        """Row-reduce and keep the canonical (rref) basis."""
        red, _ = _rref(ctx, rows)
        basis = np.asarray(red, dtype=np.uint16)
        if basis.size == 0:
            raise ValueError("code has no nonzero generator row")
        return cls(ctx=ctx, n=basis.shape[1], k=basis.shape[0], basis=basis)

    @classmethod
    def from_generator(cls, ctx, gm: GeneratorMatrix):
        """Keep the generator rows as given; they must be independent."""
        if _gf_rank(ctx, gm.matrix) != gm.k:
            raise ValueError("generator rows are dependent")
        return cls(ctx=ctx, n=gm.n, k=gm.k, basis=np.ascontiguousarray(gm.matrix))

    def codeword(self, message):
        """Encode a message (k field indices) to its codeword."""
        if len(message) != self.k:
            raise ValueError(f"message length {len(message)} != k = {self.k}")
        return _row_combine(self.ctx, [int(v) for v in message], self.basis)

    def contains(self, vec) -> bool:
        return _solve_membership(self.ctx, self.basis, vec) is not None


# ---------------------------------------------------------------------------
# generator matrix and weight distributions


def build_generator_matrix(ctx: FieldContext) -> GeneratorMatrix:
    """Columns (1, Tr(x), Tr(tx), Tr(t^2 x), Tr(y), Tr(ty), Tr(t^2 y), N(x))
    with t the chosen generator and y = x^(q+q^2), for x in enumeration
    order, followed by e_8."""
    q = ctx.q
    n = q**3 + 1
    th = ctx.theta
    th2 = ctx.mul3(th, th)
    cols = []
    for x in range(q**3):
        y = ctx.frob_product(x)
        cols.append(
            (
                1,
                ctx.trace(x),
                ctx.trace(ctx.mul3(th, x)),
                ctx.trace(ctx.mul3(th2, x)),
                ctx.trace(y),
                ctx.trace(ctx.mul3(th, y)),
                ctx.trace(ctx.mul3(th2, y)),
                ctx.norm(x),
            )
        )
    cols.append((0, 0, 0, 0, 0, 0, 0, 1))
    mat = np.array(cols, dtype=np.uint16).T
    if not (mat != 0).any(axis=0).all():
        raise RuntimeError("generator matrix has a zero column")
    if _gf_rank(ctx, mat) != 8:
        raise RuntimeError("generator matrix does not have rank 8")
    return GeneratorMatrix(q=q, k=8, n=n, matrix=mat)


def weight_distribution_formulas(q: int) -> WeightDistribution:
    """The four nonzero weights and multiplicities in closed form."""
    return WeightDistribution(
        q**3 + 1,
        {
            0: 1,
            q * (q**2 - q - 1): q**3 * (q**3 + 1) * (q - 1) ** 2 // 2,
            q**2 * (q - 1): q * (q**6 - 1),
            q * (q**2 - q + 1): q**3 * (q**3 - 1) * (q**2 - 1) // 2,
            q**3: (q**3 + 1) * (q - 1),
        },
    )


def weight_distribution_geometric(
    ctx: FieldContext, points=None, threads: int = 1, guard: int = ge.DEFAULT_POINT_GUARD
) -> WeightDistribution:
    """Weight distribution from hyperplane sections: every projective point
    v gives q-1 codewords of weight n - |v_perp meet points|."""
    points = ge.ovoid(ctx) if points is None else list(points)
    n = len(points)
    secs = ge.section_sweep(ctx, O=points, threads=threads, guard=guard)
    hist = np.bincount(n - secs.astype(np.int64), minlength=n + 1)
    counts = {w: int(c) * (ctx.q - 1) for w, c in enumerate(hist) if c}
    counts[0] = counts.get(0, 0) + 1
    return WeightDistribution(n, counts)


def weight_distribution_exhaustive(code: CodeHandle, threads: int = 1) -> WeightDistribution:
    """Weight distribution by enumerating all q^k codewords."""
    total = code.q**code.k
    if total > EXHAUSTIVE_CODEWORD_LIMIT:
        raise GuardExceeded(
            f"{total} codewords exceed the exhaustive limit {EXHAUSTIVE_CODEWORD_LIMIT}"
        )
    hist = _kernels.codeword_hist_all(code.basis, code.ctx.gf_tables(), threads=threads)
    return WeightDistribution(code.n, {w: int(c) for w, c in enumerate(hist) if c})


def min_distance(code: CodeHandle, threads: int = 1) -> int:
    return weight_distribution_exhaustive(code, threads=threads).min_distance


# ---------------------------------------------------------------------------
# MacWilliams transform


def macwilliams(dist: WeightDistribution, n: int, k: int, q: int, up_to=None) -> WeightDistribution:
    """Dual weight distribution A'_j = q^-k * sum_i K_j(i) A_i.

    All outputs must be nonnegative integers; a fractional or negative
    value signals an inconsistent input distribution.  With up_to set,
    only weights 0..up_to are computed (a truncated distribution).
    """
    if dist.total != q**k:
        raise ValueError(f"distribution sums to {dist.total}, expected {q**k}")
    size = q**k
    items = sorted(dist.counts.items())
    out = {}
    top = n if up_to is None else min(up_to, n)
    for j in range(top + 1):
        s = sum(krawtchouk(n, q, j, i) * mult for i, mult in items)
        val, rem = divmod(s, size)
        if rem or val < 0:
            raise ValueError(f"MacWilliams output at weight {j} is {s}/{size}")
        if val:
            out[j] = val
    dual = WeightDistribution(n, out)
    if up_to is None and dual.total != q ** (n - k):
        raise ValueError(f"dual multiplicities sum to {dual.total}, expected {q**(n-k)}")
    return dual


def dual_min_distance(dist: WeightDistribution, n: int, k: int, q: int) -> int:
    """Smallest j >= 1 with A'_j > 0, computed incrementally."""
    size = q**k
    items = sorted(dist.counts.items())
    for j in range(1, n + 1):
        s = sum(krawtchouk(n, q, j, i) * mult for i, mult in items)
        val, rem = divmod(s, size)
        if rem or val < 0:
            raise ValueError(f"MacWilliams output at weight {j} is {s}/{size}")
        if val:
            return j
    raise ValueError("dual code has no nonzero weight")


def dual_a5_formula(q: int) -> int:
    """Closed form for the number of weight-5 words in the dual code."""
    num = (q - 3) * (q - 2) * (q - 1) * q**3 * (q**6 - 1)
    assert num % 120 == 0
    return num // 120


# ---------------------------------------------------------------------------
# derived codes


def _check_positions(n, positions):
    T = sorted({int(t) for t in positions})
    if T and not (0 <= T[0] and T[-1] < n):
        raise ValueError(f"positions out of range for length {n}")
    return T


def puncture(code: CodeHandle, positions) -> CodeHandle:
    """Delete the given coordinates; the rank is recomputed."""
    T = _check_positions(code.n, positions)
    if len(T) >= code.n:
        raise ValueError("cannot puncture every coordinate")
    keep = [j for j in range(code.n) if j not in set(T)]
    return CodeHandle.from_rows(code.ctx, code.basis[:, keep])


def puncture_last(code: CodeHandle, t: int) -> CodeHandle:
    """Puncture on the last t coordinates (the deterministic choice)."""
    return puncture(code, range(code.n - t, code.n))


def shorten(code: CodeHandle, positions) -> CodeHandle:
    """Restrict to codewords vanishing on the positions, then delete them."""
    T = _check_positions(code.n, positions)
    if len(T) >= code.n:
        raise ValueError("cannot shorten every coordinate")
    ctx = code.ctx
    # left kernel of the k x |T| submatrix
    red, piv = _rref(ctx, code.basis[:, T].T)
    free = [j for j in range(code.k) if j not in piv]
    kern = []
    for f in free:
        v = [0] * code.k
        v[f] = 1
        for row, c in zip(red, piv):
            v[c] = ctx.negq(row[f])
        kern.append(v)
    if not kern:
        raise ValueError("shortened code is trivial")
    keep = [j for j in range(code.n) if j not in set(T)]
    rows = [_row_combine(ctx, v, code.basis)[keep] for v in kern]
    return CodeHandle.from_rows(ctx, rows)


def residual(code: CodeHandle, c) -> CodeHandle:
    """Delete the support of the codeword c from a basis completing c."""
    c = np.asarray(c, dtype=np.uint16)
    if not c.any():
        raise ValueError("residual requires a nonzero codeword")
    if _solve_membership(code.ctx, code.basis, c) is None:
        raise ValueError("vector is not a codeword")
    completed = [list(map(int, c))]
    for row in code.basis:
        cand = completed + [list(map(int, row))]
        if _gf_rank(code.ctx, cand) > len(completed):
            completed = cand
    assert len(completed) == code.k
    keep = [j for j in range(code.n) if not c[j]]
    rows = np.asarray(completed, dtype=np.uint16)[:, keep]
    return CodeHandle.from_rows(code.ctx, rows)


def find_codeword_of_weight(code: CodeHandle, weight: int, limit: int = _SCAN_LIMIT):
    """First codeword of the given weight in message enumeration order."""
    q = code.q
    total = q**code.k
    if total > limit:
        raise GuardExceeded(f"{total} messages exceed the scan limit {limit}")
    tb = code.ctx.gf_tables()
    scaled = [None] + [tb.mul[lam, code.basis] for lam in range(1, q)]
    for msg in range(1, total):
        cw = np.zeros(code.n, dtype=np.uint16)
        rem = msg
        j = 0
        while rem:
            rem, lam = divmod(rem, q)
            if lam:
                cw = tb.add[cw, scaled[lam][j]]
            j += 1
        if int((cw != 0).sum()) == weight:
            return cw
    raise ValueError(f"no codeword of weight {weight}")


# ---------------------------------------------------------------------------
# column-dependence search (dual-distance cross-check)


def column_dependence_check(ctx: FieldContext, gm: GeneratorMatrix):
    """Meet-in-the-middle search over small column combinations.

    Verifies that no 4 or fewer columns of gm are linearly dependent,
    then finds a dependency among 5 columns and returns it as
    (columns, coefficients).  Raises RuntimeError if a small dependency
    exists or no 5-column one is found.

    A dependency on 5 columns splits as pair + triple; normalizing the
    coefficient of the smallest column to 1 puts the pair side into the
    precomputed table, so scanning all coefficient choices on the triple
    side covers every case.
    """
    q = ctx.q
    tb = ctx.gf_tables()
    neg = np.array([ctx.negq(v) for v in range(q)], dtype=np.uint16)
    cols = np.ascontiguousarray(gm.matrix.T)  # (n, 8)
    n = cols.shape[0]
    powq = (q ** np.arange(8)).astype(np.int64)
    nz = np.arange(1, q, dtype=np.uint16)

    def keys_of(vecs):
        return vecs.reshape(-1, 8).astype(np.int64) @ powq

    # size <= 2: columns distinct as projective points
    lead = np.argmax(cols != 0, axis=1)
    ivl = tb.inv[cols[np.arange(n), lead]]
    if len(np.unique(keys_of(tb.mul[ivl[:, None], cols]))) != n:
        raise RuntimeError("two columns are proportional")

    # h2[key(g_a + lam*g_b)] = (a, b, lam) for a < b, lam != 0
    h2 = {}
    for a in range(n - 1):
        vecs = tb.add[cols[a][None, None, :], tb.mul[nz[:, None, None], cols[a + 1 :][None]]]
        keys = keys_of(vecs).reshape(len(nz), -1)
        for li in range(len(nz)):
            for bi in range(keys.shape[1]):
                h2[int(keys[li, bi])] = (a, a + 1 + bi, int(nz[li]))
    h2keys = np.sort(np.fromiter(h2, dtype=np.int64, count=len(h2)))

    def hits_in_h2(vecs):
        """Indices (into the flattened vecs) whose negation lies in h2,
        together with the corresponding keys."""
        keys = keys_of(neg[vecs])
        pos = np.searchsorted(h2keys, keys)
        pos[pos == len(h2keys)] = 0
        return keys, np.nonzero(h2keys[pos] == keys)[0]

    # size 3: -mu*g_c equals some pair combination
    keys, hits = hits_in_h2(tb.mul[nz[:, None, None], cols[None]])
    if len(hits):
        a, b, _ = h2[int(keys[hits[0]])]
        raise RuntimeError(f"columns {a},{b} and {int(hits[0]) % n} are dependent")

    # size 4: -(mu*g_c + nu*g_d) equals some pair combination.  The scan
    # revisits each h2 entry at (c,d) = (a,b) with negated coefficients;
    # those self-cancellations carry no dependency and are skipped.  With
    # sizes 2 and 3 excluded, any other hit is a genuine 4-column one.
    for c in range(n - 1):
        nd = n - c - 1
        mu_c = tb.mul[nz[:, None], cols[c]]  # (q-1, 8)
        nu_d = tb.mul[nz[None, :, None], cols[c + 1 :][:, None, :]]  # (nd, q-1, 8)
        two = tb.add[mu_c[:, None, None, :], nu_d[None]]  # (q-1, nd, q-1, 8)
        keys, hits = hits_in_h2(two)
        for hi in hits:
            hi = int(hi)
            a, b, _ = h2[int(keys[hi])]
            d = c + 1 + (hi % (nd * len(nz))) // len(nz)
            if (a, b) != (c, d):
                raise RuntimeError(f"columns {a},{b},{c},{d} are dependent")

    # size 5: -(mu1*g_c + mu2*g_d + mu3*g_e) equals some pair combination
    for c in range(n - 2):
        base = tb.mul[nz[:, None], cols[c]]  # (q-1, 8)
        for d in range(c + 1, n - 1):
            two = tb.add[base[:, None, :], tb.mul[nz[:, None], cols[d]][None]]
            two = two.reshape(-1, 8)  # ((q-1)^2, 8): mu1*g_c + mu2*g_d
            e_idx = np.arange(d + 1, n)
            three = tb.add[
                two[:, None, None, :],
                tb.mul[nz[None, None, :, None], cols[e_idx][None, :, None, :]],
            ]  # ((q-1)^2, n-d-1, q-1, 8)
            keys, hits = hits_in_h2(three)
            per_e = len(nz)
            per_two = three.shape[1] * per_e
            for hi in hits:
                hi = int(hi)
                a, b, lam = h2[int(keys[hi])]
                e = int(e_idx[(hi % per_two) // per_e])
                columns = (a, b, c, d, e)
                if len(set(columns)) != 5:
                    continue
                two_i = hi // per_two
                coeffs = (
                    1,
                    lam,
                    int(nz[two_i // len(nz)]),
                    int(nz[two_i % len(nz)]),
                    int(nz[hi % per_e]),
                )
                acc = np.zeros(8, dtype=np.uint16)
                for col, co in zip(columns, coeffs):
                    acc = tb.add[acc, tb.mul[co, cols[col]]]
                assert not acc.any()
                return columns, coeffs
    raise RuntimeError("no 5-column dependency found")
