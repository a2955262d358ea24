"""Exact Krawtchouk algebra, linear-programming certificates, and
sphere-packing arguments for length optimality.

Everything here is exact: polynomial coefficients and bounds are
fractions.Fraction values, never floats.  A certificate is only
returned after its defining inequalities have been checked pointwise.
"""

import math
from dataclasses import dataclass
from fractions import Fraction


class CertificateError(ValueError):
    """A certificate failed one of its defining inequalities."""


# ---------------------------------------------------------------------------
# rational polynomials in one variable


class RationalPoly:
    """Dense polynomial with Fraction coefficients, low degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def __eq__(self, other):
        return isinstance(other, RationalPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"RationalPoly({list(self.coeffs)})"

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RationalPoly(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __mul__(self, other):
        if not self.coeffs or not other.coeffs:
            return RationalPoly([])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RationalPoly(out)

    def scale(self, lam):
        lam = Fraction(lam)
        return RationalPoly([lam * c for c in self.coeffs])

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    @classmethod
    def from_roots(cls, roots):
        """Monic polynomial with the given roots."""
        poly = cls([1])
        for r in roots:
            poly = poly * cls([-Fraction(r), 1])
        return poly


# ---------------------------------------------------------------------------
# Krawtchouk polynomials


def _check_kraw_range(n, i, x):
    if not 0 <= i <= n:
        raise ValueError(f"index {i} outside [0, {n}]")
    if not 0 <= x <= n:
        raise ValueError(f"argument {x} outside [0, {n}]")


def krawtchouk(n: int, q: int, i: int, x: int) -> int:
    """K_i(x) = sum_j (-1)^j (q-1)^(i-j) C(x,j) C(n-x,i-j), an integer."""
    _check_kraw_range(n, i, x)
    acc = 0
    for j in range(i + 1):
        term = (q - 1) ** (i - j) * math.comb(x, j) * math.comb(n - x, i - j)
        acc += -term if j & 1 else term
    return acc


def _binom_poly(shift: int, sign: int, j: int) -> RationalPoly:
    """C(shift + sign*x, j) as a polynomial in x."""
    poly = RationalPoly([1])
    for t in range(j):
        poly = poly * RationalPoly([Fraction(shift - t), Fraction(sign)])
    return poly.scale(Fraction(1, math.factorial(j)))


def krawtchouk_poly(n: int, q: int, i: int) -> RationalPoly:
    """K_i as a RationalPoly in x (degree exactly i)."""
    if not 0 <= i <= n:
        raise ValueError(f"index {i} outside [0, {n}]")
    acc = RationalPoly([])
    for j in range(i + 1):
        term = (_binom_poly(0, 1, j) * _binom_poly(n, -1, i - j)).scale(
            (-1) ** j * (q - 1) ** (i - j)
        )
        acc = acc + term
    assert acc.degree == i
    return acc


def krawtchouk_expand(f: RationalPoly, n: int, q: int):
    """Coefficients f_0..f_deg with f = sum_i f_i K_i.

    Triangular change of basis: K_i has degree exactly i, so peeling
    from the top degree down terminates with the zero polynomial.
    """
    if f.degree > n:
        raise ValueError(f"degree {f.degree} exceeds n = {n}")
    out = [Fraction(0)] * (f.degree + 1)
    rem = f
    for i in range(f.degree, -1, -1):
        if rem.degree < i:
            continue
        ki = krawtchouk_poly(n, q, i)
        fi = rem.coeffs[i] / ki.coeffs[i]
        out[i] = fi
        rem = rem - ki.scale(fi)
    assert rem.degree == -1
    return out


# ---------------------------------------------------------------------------
# LP certificates


@dataclass(frozen=True)
class LPCertificate:
    """Data for the bound |C| <= f(0)/f_0 on codes of length n and
    minimum distance >= d over a q-ary alphabet."""

    q: int
    n: int
    d: int
    f: RationalPoly
    f_kraw: tuple
    bound: Fraction
    t: int = 0
    roots: tuple = ()

    def to_json_dict(self) -> dict:
        return {
            "q": self.q,
            "t": self.t,
            "n": self.n,
            "d": self.d,
            "roots": list(self.roots),
            "f_monomial": [str(c) for c in self.f.coeffs],
            "f_krawtchouk": [str(c) for c in self.f_kraw],
            "bound": str(self.bound),
            "verdict": "valid",
        }


def check_certificate(cert: LPCertificate):
    """Verify the defining inequalities; raises CertificateError with the
    failing index otherwise."""
    if not cert.f_kraw or cert.f_kraw[0] <= 0:
        raise CertificateError("f_0 must be positive")
    for i, fi in enumerate(cert.f_kraw):
        if fi < 0:
            raise CertificateError(f"Krawtchouk coefficient f_{i} = {fi} is negative")
    for x in range(cert.d, cert.n + 1):
        if cert.f(x) > 0:
            raise CertificateError(f"f({x}) = {cert.f(x)} is positive inside [d, n]")


def lp_bound(cert: LPCertificate) -> Fraction:
    """f(0)/f_0 after re-verifying the certificate."""
    check_certificate(cert)
    return cert.f(0) / cert.f_kraw[0]


def closed_form_kraw_coeffs(q: int):
    """The five displayed Krawtchouk coefficients of the quartic at t=0."""
    return (
        Fraction(2 * (q - 1) * (q**4 - 2 * q**3 - q**2 + 3), q),
        Fraction(2 * (q - 1) * (q**6 + q**5 - 10 * q**3 + 3 * q + 12), q**4),
        Fraction(2 * (q**5 + 5 * q**4 - 9 * q**3 - 6 * q**2 - 18 * q + 36), q**4),
        Fraction(6 * (q**3 + q**2 + 3 * q - 12), q**4),
        Fraction(24, q**4),
    )


def closed_form_bound(q: int) -> Fraction:
    """The displayed bound on |C| for length q^3 and distance q^3-q^2-q."""
    num = q**5 * (q**2 - q - 1) * (q**3 - q**2 + q - 2) * (q**2 + 1)
    return Fraction(num, 2 * (q**4 - 2 * q**3 - q**2 + 3))


def quartic_roots(q: int, t: int = 0):
    """Roots (z1, z2, z3, n) of the certificate quartic."""
    return (
        q**3 - q**2 - q - t,
        q**3 - q**2 + q - 2 - t,
        q**3 - q**2 + q - 1 - t,
        q**3 - t,
    )


def ovoid_lp_certificate(q: int, t: int = 0) -> LPCertificate:
    """Certificate showing no [q^3-t, 8, >= q^3-q^2-q-t]_q code exists.

    Requires q >= 3 and t <= (q-3)//2.  The quartic with the shifted
    roots is expanded exactly; at t = 0 the expansion must match the
    five closed-form coefficients.  The certificate inequalities are
    then checked pointwise and the bound compared against q^8.
    """
    if q < 3:
        raise ValueError(f"certificate requires q >= 3, got {q}")
    if not 0 <= t <= (q - 3) // 2:
        raise ValueError(f"t = {t} exceeds (q-3)//2 = {(q - 3) // 2}")
    z1, z2, z3, n = quartic_roots(q, t)
    if not 0 < z1 < z2 < z3 < n:
        raise CertificateError(f"roots {z1},{z2},{z3},{n} are not increasing positive")
    f = RationalPoly.from_roots([z1, z2, z3, n])
    f_kraw = tuple(krawtchouk_expand(f, n, q))
    if t == 0:
        expected = closed_form_kraw_coeffs(q)
        for i, (got, want) in enumerate(zip(f_kraw, expected)):
            if got != want:
                raise CertificateError(f"f_{i} = {got} does not match closed form {want}")
    cert = LPCertificate(
        q=q, n=n, d=z1, f=f, f_kraw=f_kraw, bound=f(0) / f_kraw[0], t=t, roots=(z1, z2, z3, n)
    )
    check_certificate(cert)
    if t == 0 and cert.bound != closed_form_bound(q):
        raise CertificateError(f"bound {cert.bound} does not match the closed form")
    if cert.bound >= q**8:
        raise CertificateError(f"bound {cert.bound} does not separate q^8 = {q**8}")
    return cert


# ---------------------------------------------------------------------------
# sphere packing and the optimality report


def sphere_size(n: int, q: int, r: int) -> int:
    """Number of words within Hamming distance r of a fixed word."""
    if not 0 <= r <= n:
        raise ValueError(f"radius {r} outside [0, {n}]")
    return sum(math.comb(n, i) * (q - 1) ** i for i in range(r + 1))


@dataclass(frozen=True)
class SpherePackingCertificate:
    """Witness that no [q^3, q^3-7, 5]_q code exists: a radius-2 sphere
    in F_q^(q^3) exceeds q^7, so packing forces |C| < q^(q^3-7)."""

    q: int
    n: int
    radius: int
    sphere: int
    threshold: int

    @property
    def valid(self) -> bool:
        return self.sphere > self.threshold

    def to_json_dict(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "radius": self.radius,
            "sphere_size": str(self.sphere),
            "threshold": str(self.threshold),
            "verdict": "valid" if self.valid else "invalid",
        }


def dual_sphere_packing_certificate(q: int) -> SpherePackingCertificate:
    if q < 4:
        raise ValueError(f"sphere-packing route requires q >= 4, got {q}")
    cert = SpherePackingCertificate(
        q=q, n=q**3, radius=2, sphere=sphere_size(q**3, q, 2), threshold=q**7
    )
    if not cert.valid:
        raise CertificateError(f"sphere size {cert.sphere} does not exceed q^7 = {q**7}")
    return cert


@dataclass(frozen=True)
class OptimalityReport:
    q: int
    primal_method: str
    primal_certified: bool
    primal_note: str
    dual_method: str
    dual_certified: bool
    dual_note: str
    lp: LPCertificate = None
    sphere: SpherePackingCertificate = None

    def to_json_dict(self) -> dict:
        out = {
            "q": self.q,
            "primal": {
                "method": self.primal_method,
                "certified": self.primal_certified,
                "note": self.primal_note,
            },
            "dual": {
                "method": self.dual_method,
                "certified": self.dual_certified,
                "note": self.dual_note,
            },
        }
        if self.lp is not None:
            out["primal"]["certificate"] = self.lp.to_json_dict()
        if self.sphere is not None:
            out["dual"]["certificate"] = self.sphere.to_json_dict()
        return out


def n_optimality_report(q: int) -> OptimalityReport:
    """Length-optimality verdicts for the code and its dual at this q."""
    if q < 2:
        raise ValueError("q must be a prime power >= 2")
    lp = sphere = None
    if q == 2:
        primal = ("mds", True, "[9,8,2] meets the Singleton bound, so no [8,8,2] exists")
    else:
        lp = ovoid_lp_certificate(q, 0)
        primal = ("lp", True, f"LP bound {lp.bound} < q^8 = {q**8}")
    if q == 2:
        dual = ("trivial", True, "dual is the length-9 repetition code; d = n rules out length 8")
    elif q == 3:
        dual = (
            "external",
            False,
            "relies on an external nonexistence result for [17,>=8,>=6]_3; not certified here",
        )
    else:
        sphere = dual_sphere_packing_certificate(q)
        dual = ("sphere-packing", True, f"radius-2 sphere {sphere.sphere} > q^7 = {q**7}")
    return OptimalityReport(
        q=q,
        primal_method=primal[0],
        primal_certified=primal[1],
        primal_note=primal[2],
        dual_method=dual[0],
        dual_certified=dual[1],
        dual_note=dual[2],
        lp=lp,
        sphere=sphere,
    )
