"""Exact arithmetic in the field tower F_p < F_q < F_{q^3}.

Field elements are plain integer indices.  The base-p digits of an F_q
index are the coefficients of its polynomial representative over F_p
(lowest degree first); the base-q digits of an F_{q^3} index are its
coefficients over F_q in the power basis (1, s, s^2) of the cubic
extension.  Index 0 is zero and index 1 is one, so enumeration order
0, 1, 2, ... is odometer order on coefficient vectors with the lowest
coefficient moving fastest.  F_q sits inside F_{q^3} as the indices
below q (pure coefficient-0 elements), so embedding is the identity.
"""

from functools import lru_cache
from typing import NamedTuple

import numpy as np

SIZE_GUARD = 1 << 30  # largest permitted q^3
LOG_TABLE_LIMIT = 4096  # build multiplication (exp/log) tables for q^3 up to this


class GuardExceeded(ValueError):
    """An operation would exceed one of the enumeration guards."""


class GFTables(NamedTuple):
    """F_q arithmetic tables in the packed-index encoding, for the kernels."""

    q: int
    p: int
    m: int
    add: np.ndarray  # (q, q) uint16
    mul: np.ndarray  # (q, q) uint16
    inv: np.ndarray  # (q,)  uint16; inv[0] is unused


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, by trial division."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def factor_prime_power(q: int) -> tuple[int, int]:
    """Return (p, m) with q = p^m and p prime, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = 2
    while q % p:
        p += 1
    m, r = 0, q
    while r % p == 0:
        r //= p
        m += 1
    if r != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, m


def _digits(n: int, base: int, width: int) -> list[int]:
    return [(n // base**t) % base for t in range(width)]


def _poly_mod(a: list[int], mod: list[int], p: int) -> list[int]:
    """Remainder of a modulo a monic polynomial, coefficients low-first."""
    a = list(a)
    dm = len(mod) - 1
    while len(a) > dm:
        c = a.pop()
        if c:
            shift = len(a) - dm
            for i in range(dm):
                a[shift + i] = (a[shift + i] - c * mod[i]) % p
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division by every lower-degree monic polynomial."""
    m = len(poly) - 1
    for df in range(1, m // 2 + 1):
        for enc in range(p**df):
            cand = _digits(enc, p, df) + [1]
            if not _poly_mod(poly, cand, p):
                return False
    return True


def _smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Monic irreducible of degree m over F_p with smallest packed encoding.

    Candidates are ordered by the integer whose base-p digits are the
    non-leading coefficients, lowest degree least significant.
    """
    for enc in range(p**m):
        poly = _digits(enc, p, m) + [1]
        if _poly_is_irreducible(poly, p):
            return tuple(poly)
    raise RuntimeError("no irreducible polynomial found")


class FieldContext:
    """The tower F_p < F_q = F_p[t]/(base) < F_{q^3} = F_q[s]/(cubic).

    Deterministic by construction: both moduli are the irreducible monic
    polynomials with the smallest packed-integer encoding, theta is the
    first multiplicative generator of F_{q^3} in enumeration order, and
    alpha is the first element of F_q making x^2 - x - alpha irreducible.
    """

    def __init__(self, p: int, m: int):
        if not is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if m < 1:
            raise ValueError(f"m = {m} must be >= 1")
        q = p**m
        if q**3 > SIZE_GUARD:
            raise GuardExceeded(f"q^3 = {q**3} exceeds the size guard {SIZE_GUARD}")
        self.p = p
        self.m = m
        self.q = q
        self.q3 = q**3
        self.base_modulus = _smallest_irreducible(p, m)
        self._build_gfq_tables()
        self.cubic_modulus = self._smallest_irreducible_cubic()
        self._build_cubic_reduction()
        self.theta = self._find_theta()
        self.alpha = self._find_alpha()
        self._build_frobenius()

    # ------------------------------------------------------------------ F_q

    def _build_gfq_tables(self):
        p, m, q = self.p, self.m, self.q
        dig = np.empty((q, m), dtype=np.int64)
        ar = np.arange(q)
        for t in range(m):
            dig[:, t] = (ar // p**t) % p
        pw = p ** np.arange(m)

        add = ((dig[:, None, :] + dig[None, :, :]) % p) @ pw

        # x^j mod base_modulus for j = 0 .. 2m-2, as F_p coefficient rows
        red = np.zeros((2 * m - 1, m), dtype=np.int64)
        r = [1]
        for j in range(2 * m - 1):
            red[j, : len(r)] = r
            r = _poly_mod([0] + r, list(self.base_modulus), p)
        mul = np.empty((q, q), dtype=np.int64)
        step = max(1, (1 << 22) // (q * (2 * m - 1) or 1))
        for lo in range(0, q, step):
            hi = min(q, lo + step)
            conv = np.zeros((hi - lo, q, 2 * m - 1), dtype=np.int64)
            for i in range(m):
                for j in range(m):
                    conv[:, :, i + j] += dig[lo:hi, i, None] * dig[None, :, j]
            mul[lo:hi] = ((conv @ red) % p) @ pw

        inv = np.zeros(q, dtype=np.int64)
        pairs = np.argwhere(mul == 1)
        inv[pairs[:, 0]] = pairs[:, 1]
        neg = np.zeros(q, dtype=np.int64)
        pairs = np.argwhere(add == 0)
        neg[pairs[:, 0]] = pairs[:, 1]

        self._add_np = add.astype(np.uint16)
        self._mul_np = mul.astype(np.uint16)
        self._inv_np = inv.astype(np.uint16)
        # list mirrors: faster for scalar use than numpy indexing
        self._addl = add.tolist()
        self._mull = mul.tolist()
        self._invl = inv.tolist()
        self._negl = neg.tolist()

    def addq(self, a: int, b: int) -> int:
        return self._addl[a][b]

    def subq(self, a: int, b: int) -> int:
        return self._addl[a][self._negl[b]]

    def negq(self, a: int) -> int:
        return self._negl[a]

    def mulq(self, a: int, b: int) -> int:
        return self._mull[a][b]

    def invq(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_q")
        return self._invl[a]

    def coeffs_q(self, a: int) -> list[int]:
        """F_p coefficient vector of an F_q index, lowest degree first."""
        return _digits(a, self.p, self.m)

    def gf_tables(self) -> GFTables:
        return GFTables(self.q, self.p, self.m, self._add_np, self._mul_np, self._inv_np)

    # -------------------------------------------------------------- F_{q^3}

    def _eval_cubic(self, c0, c1, c2, x):
        # x^3 + c2 x^2 + c1 x + c0 by Horner
        acc = self.addq(x, c2)
        acc = self.addq(self.mulq(acc, x), c1)
        return self.addq(self.mulq(acc, x), c0)

    def _smallest_irreducible_cubic(self) -> tuple[int, int, int, int]:
        # a cubic is irreducible over F_q iff it has no root in F_q
        for enc in range(self.q3):
            c0, c1, c2 = _digits(enc, self.q, 3)
            if all(self._eval_cubic(c0, c1, c2, x) for x in range(self.q)):
                return (c0, c1, c2, 1)
        raise RuntimeError("no irreducible cubic found")

    def _build_cubic_reduction(self):
        c0, c1, c2, _ = self.cubic_modulus
        r = (self.negq(c0), self.negq(c1), self.negq(c2))  # s^3
        self._red3 = r
        # s^4 = s * s^3 = r0 s + r1 s^2 + r2 s^3
        self._red4 = (
            self.mulq(r[2], r[0]),
            self.addq(r[0], self.mulq(r[2], r[1])),
            self.addq(r[1], self.mulq(r[2], r[2])),
        )

    def digits3(self, x: int) -> tuple[int, int, int]:
        q = self.q
        return (x % q, (x // q) % q, x // (q * q))

    def encode3(self, d0: int, d1: int, d2: int) -> int:
        return d0 + self.q * (d1 + self.q * d2)

    def coeffs_q3(self, x: int) -> list[list[int]]:
        """Coefficient vectors over F_p of the three F_q coordinates of x."""
        return [self.coeffs_q(d) for d in self.digits3(x)]

    def add3(self, x: int, y: int) -> int:
        a0, a1, a2 = self.digits3(x)
        b0, b1, b2 = self.digits3(y)
        al = self._addl
        return self.encode3(al[a0][b0], al[a1][b1], al[a2][b2])

    def neg3(self, x: int) -> int:
        a0, a1, a2 = self.digits3(x)
        nl = self._negl
        return self.encode3(nl[a0], nl[a1], nl[a2])

    def sub3(self, x: int, y: int) -> int:
        return self.add3(x, self.neg3(y))

    def scalar3(self, lam: int, x: int) -> int:
        """Multiply x in F_{q^3} by the F_q scalar lam."""
        a0, a1, a2 = self.digits3(x)
        ml = self._mull[lam]
        return self.encode3(ml[a0], ml[a1], ml[a2])

    def _mul3_poly(self, x: int, y: int) -> int:
        a0, a1, a2 = self.digits3(x)
        b0, b1, b2 = self.digits3(y)
        mq, aq = self.mulq, self.addq
        c0 = mq(a0, b0)
        c1 = aq(mq(a0, b1), mq(a1, b0))
        c2 = aq(aq(mq(a0, b2), mq(a1, b1)), mq(a2, b0))
        c3 = aq(mq(a1, b2), mq(a2, b1))
        c4 = mq(a2, b2)
        r3, r4 = self._red3, self._red4
        return self.encode3(
            aq(c0, aq(mq(c3, r3[0]), mq(c4, r4[0]))),
            aq(c1, aq(mq(c3, r3[1]), mq(c4, r4[1]))),
            aq(c2, aq(mq(c3, r3[2]), mq(c4, r4[2]))),
        )

    def mul3(self, x: int, y: int) -> int:
        if self._log3 is not None:
            if x == 0 or y == 0:
                return 0
            return self._exp3[(self._log3[x] + self._log3[y]) % (self.q3 - 1)]
        return self._mul3_poly(x, y)

    def _pow3_poly(self, x: int, e: int) -> int:
        acc = 1
        base = x
        while e:
            if e & 1:
                acc = self._mul3_poly(acc, base)
            base = self._mul3_poly(base, base)
            e >>= 1
        return acc

    def pow3(self, x: int, e: int) -> int:
        if e < 0:
            return self.pow3(self.inv3(x), -e)
        if self._log3 is not None and x != 0:
            return self._exp3[(self._log3[x] * e) % (self.q3 - 1)]
        if x == 0:
            return 0 if e else 1
        return self._pow3_poly(x, e)

    def inv3(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of zero in F_q^3")
        if self._log3 is not None:
            return self._exp3[(self.q3 - 1 - self._log3[x]) % (self.q3 - 1)]
        return self._pow3_poly(x, self.q3 - 2)

    def _find_theta(self) -> int:
        order = self.q3 - 1
        radicals = prime_factors(order)
        theta = None
        for x in range(2, self.q3):
            if all(self._pow3_poly(x, order // r) != 1 for r in radicals):
                theta = x
                break
        if theta is None:
            raise RuntimeError("no multiplicative generator found")
        if self.q3 <= LOG_TABLE_LIMIT:
            exp = [0] * order
            log = [-1] * self.q3
            e = 1
            for i in range(order):
                exp[i] = e
                log[e] = i
                e = self._mul3_poly(e, theta)
            assert e == 1, "theta does not have order q^3 - 1"
            self._exp3, self._log3 = exp, log
        else:
            self._exp3 = self._log3 = None
        return theta

    def _find_alpha(self) -> int:
        # x^2 - x - alpha has a root iff alpha is a value of x^2 - x
        image = {self.subq(self.mulq(x, x), x) for x in range(self.q)}
        for a in range(self.q):
            if a not in image:
                return a
        raise RuntimeError("no valid alpha; broken field arithmetic")

    def _build_frobenius(self):
        q = self.q
        s = q  # digits (0, 1, 0)
        imgs = []
        for k in (1, 2):
            sk = self.pow3(s, q**k)
            imgs.append((sk, self.mul3(sk, sk)))
        self._frob_imgs = imgs
        tr = []
        for e in (1, s, self.mul3(s, s)):
            t = self.add3(self.add3(e, self.frobenius(e, 1)), self.frobenius(e, 2))
            d = self.digits3(t)
            assert d[1] == 0 and d[2] == 0, "trace landed outside F_q"
            tr.append(d[0])
        self._tr = tuple(tr)

    def frobenius(self, x: int, k: int) -> int:
        """x^(q^k) for k in {0, 1, 2}."""
        if k == 0:
            return x
        if k not in (1, 2):
            raise ValueError(f"frobenius power k = {k} not in {{0, 1, 2}}")
        a0, a1, a2 = self.digits3(x)
        s1, s2 = self._frob_imgs[k - 1]
        return self.add3(a0, self.add3(self.scalar3(a1, s1), self.scalar3(a2, s2)))

    def trace(self, x: int) -> int:
        """Tr(x) = x + x^q + x^(q^2), an element of F_q."""
        a0, a1, a2 = self.digits3(x)
        t0, t1, t2 = self._tr
        mq = self.mulq
        return self.addq(self.addq(mq(a0, t0), mq(a1, t1)), mq(a2, t2))

    def norm(self, x: int) -> int:
        """N(x) = x^(1 + q + q^2), an element of F_q."""
        if x == 0:
            return 0
        n = self.mul3(self.mul3(x, self.frobenius(x, 1)), self.frobenius(x, 2))
        d = self.digits3(n)
        assert d[1] == 0 and d[2] == 0, "norm landed outside F_q"
        return d[0]

    def frob_product(self, x: int) -> int:
        """x^(q + q^2) = x^q * x^(q^2)."""
        return self.mul3(self.frobenius(x, 1), self.frobenius(x, 2))

    def in_subfield(self, x: int) -> bool:
        return x < self.q

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "m": self.m,
            "base_modulus": list(self.base_modulus),
            "cubic_modulus": [self.coeffs_q(c) for c in self.cubic_modulus],
            "theta": self.coeffs_q3(self.theta),
            "alpha": self.coeffs_q(self.alpha),
        }

    def __repr__(self):
        return f"FieldContext(p={self.p}, m={self.m}, q={self.q})"


@lru_cache(maxsize=None)
def make_context(p: int, m: int) -> FieldContext:
    return FieldContext(p, m)


@lru_cache(maxsize=None)
def context_for_order(q: int) -> FieldContext:
    """Context for F_q given the field order q = p^m."""
    p, m = factor_prime_power(q)
    return make_context(p, m)


def trace(ctx: FieldContext, x: int) -> int:
    return ctx.trace(x)


def norm(ctx: FieldContext, x: int) -> int:
    return ctx.norm(x)


def frobenius(ctx: FieldContext, x: int, k: int) -> int:
    return ctx.frobenius(x, k)


def enumerate_field(ctx: FieldContext, which: str) -> range:
    """Elements of F_q ("Fq") or F_{q^3} ("Fq3") in enumeration order."""
    if which == "Fq":
        return range(ctx.q)
    if which == "Fq3":
        return range(ctx.q3)
    raise ValueError(f'which must be "Fq" or "Fq3", got {which!r}')
