"""Arithmetic in Z[i,phi], the ring of integers of Q(i,phi).

Elements are written w + x*phi + y*i + z*i*phi over the Z-basis
{1, phi, i, i*phi}.  The quartic field norm is nonnegative and the ring
is norm-Euclidean, which is what makes GCDs (and hence the two-squares
machinery built on top) effective.  The norm-Euclidean property itself
is re-verified here by a finite grid computation over exact rationals:
every coset of the unit cube contains a lattice point of norm < 1, as
certified by an effective perturbation bound evaluated at finitely many
grid points.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .errors import MalformedInput
from .golden import ZERO, GoldenInt, exact_div

__all__ = [
    "GaussGoldenInt",
    "quartic_norm",
    "euclid_divmod_ne",
    "exact_div_ne",
    "gcd_ne",
    "canonical_associate_ne",
    "norm_upper_bound",
    "verify_norm_euclidean",
]


class GaussGoldenInt:
    """An element w + x*phi + (y + z*phi)*i of Z[i,phi].

    Stored as a pair of GoldenInt (real and imaginary golden parts),
    which is the shape the two-squares code wants; the w, x, y, z basis
    coordinates stay available as properties.
    """

    __slots__ = ("re", "im")

    def __init__(self, w: int, x: int = 0, y: int = 0, z: int = 0):
        self.re = GoldenInt(w, x)
        self.im = GoldenInt(y, z)

    @classmethod
    def from_golden(cls, re: GoldenInt, im: GoldenInt = ZERO) -> GaussGoldenInt:
        out = cls.__new__(cls)
        out.re = re
        out.im = im
        return out

    @property
    def w(self) -> int:
        return self.re.a

    @property
    def x(self) -> int:
        return self.re.b

    @property
    def y(self) -> int:
        return self.im.a

    @property
    def z(self) -> int:
        return self.im.b

    def coords(self) -> tuple[int, int, int, int]:
        return (self.re.a, self.re.b, self.im.a, self.im.b)

    def __repr__(self) -> str:
        return "GaussGoldenInt({}, {}, {}, {})".format(*self.coords())

    def __hash__(self) -> int:
        return hash(self.coords())

    def __eq__(self, other: object) -> bool:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __neg__(self) -> GaussGoldenInt:
        return GaussGoldenInt.from_golden(-self.re, -self.im)

    def __add__(self, other) -> GaussGoldenInt:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return GaussGoldenInt.from_golden(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other) -> GaussGoldenInt:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return GaussGoldenInt.from_golden(self.re - other.re, self.im - other.im)

    def __rsub__(self, other) -> GaussGoldenInt:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other) -> GaussGoldenInt:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return GaussGoldenInt.from_golden(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def complex_conj(self) -> GaussGoldenInt:
        return GaussGoldenInt.from_golden(self.re, -self.im)

    def golden_conj(self) -> GaussGoldenInt:
        return GaussGoldenInt.from_golden(self.re.conj(), self.im.conj())

    def is_unit(self) -> bool:
        return quartic_norm(self) == 1


I_UNIT = GaussGoldenInt(0, 0, 1, 0)


def _coerce(v) -> GaussGoldenInt | None:
    if isinstance(v, GaussGoldenInt):
        return v
    if isinstance(v, GoldenInt):
        return GaussGoldenInt.from_golden(v, ZERO)
    if isinstance(v, int):
        return GaussGoldenInt(v, 0, 0, 0)
    return None


def quartic_norm(alpha: GaussGoldenInt) -> int:
    """The norm down to Q, as an explicit quartic in the coordinates."""
    w, x, y, z = alpha.coords()
    return (w**4 + 2 * w**3 * x - w**2 * x**2 - 2 * w * x**3 + x**4
            + 2 * w**2 * y**2 + 2 * w * x * y**2 + 3 * x**2 * y**2 + y**4
            + 2 * w**2 * y * z - 8 * w * x * y * z - 2 * x**2 * y * z
            + 2 * y**3 * z + 3 * w**2 * z**2 - 2 * w * x * z**2
            + 2 * x**2 * z**2 - y**2 * z**2 - 2 * y * z**3 + z**4)


def exact_div_ne(alpha: GaussGoldenInt, beta: GaussGoldenInt) -> GaussGoldenInt | None:
    """alpha / beta when beta divides alpha exactly, else None."""
    n = quartic_norm(beta)
    if n == 0:
        raise ZeroDivisionError("division by zero in Z[i,phi]")
    t = _times_conj_tower(alpha, beta)
    coords = t.coords()
    if any(c % n for c in coords):
        return None
    return GaussGoldenInt(*(c // n for c in coords))


def _times_conj_tower(alpha: GaussGoldenInt, beta: GaussGoldenInt) -> GaussGoldenInt:
    # alpha * complex_conj(beta) * golden_conj(beta * complex_conj(beta));
    # dividing the result by quartic_norm(beta) gives alpha/beta in Q(i,phi)
    bc = beta.complex_conj()
    g = beta * bc  # lies in Z[phi], totally nonnegative
    return alpha * bc * g.golden_conj()


def euclid_divmod_ne(alpha: GaussGoldenInt, beta: GaussGoldenInt
                     ) -> tuple[GaussGoldenInt, GaussGoldenInt]:
    """Division with remainder under the quartic norm.

    The exact quotient in Q(i,phi) is rounded componentwise.  When the
    rounded point misses (the unit cube does contain points of norm
    at least 1), shifting a single component of the quotient by one,
    in the direction of that component's fractional part, always
    recovers a remainder of smaller norm; a full 3^4 neighborhood scan
    remains as a defensive last tier.
    """
    n = quartic_norm(beta)
    if n == 0:
        raise ZeroDivisionError("euclid_divmod_ne by zero")
    t = _times_conj_tower(alpha, beta).coords()
    q0 = []
    fsign = []
    for c in t:
        q, rem2 = divmod(2 * c, 2 * n)  # floor at half-integer resolution
        # nearest integer, remembering which side the fraction was on
        if rem2 > n:
            q0.append(q + 1)
            fsign.append(-1)
        elif rem2 == n:
            q0.append(q + 1)  # half-up
            fsign.append(-1)
        else:
            q0.append(q)
            fsign.append(1 if rem2 > 0 else 0)
    candidates = [tuple(q0)]
    for i in range(4):
        if fsign[i]:
            shifted = list(q0)
            shifted[i] += fsign[i]
            candidates.append(tuple(shifted))
    for cand in candidates:
        q = GaussGoldenInt(*cand)
        r = alpha - q * beta
        if quartic_norm(r) < n:
            return q, r
    best = None
    for d0 in (-1, 0, 1):
        for d1 in (-1, 0, 1):
            for d2 in (-1, 0, 1):
                for d3 in (-1, 0, 1):
                    q = GaussGoldenInt(q0[0] + d0, q0[1] + d1,
                                       q0[2] + d2, q0[3] + d3)
                    r = alpha - q * beta
                    nr = quartic_norm(r)
                    if nr < n and (best is None or nr < best[2]):
                        best = (q, r, nr)
    if best is None:
        raise AssertionError("norm-Euclidean division failed; arithmetic bug")
    return best[0], best[1]


_PHI_NE = GaussGoldenInt(0, 1, 0, 0)
_PHI_NE_INV = GaussGoldenInt(-1, 1, 0, 0)


def _assoc_candidates(alpha: GaussGoldenInt):
    for p in (_PHI_NE_INV, GaussGoldenInt(1), _PHI_NE):
        base = alpha * p
        yield base
        yield base * I_UNIT
        yield -base
        yield -(base * I_UNIT)


def canonical_associate_ne(alpha: GaussGoldenInt) -> GaussGoldenInt:
    """Distinguished associate: minimal coordinate max-norm over the
    unit multiples i^a phi^e (e in {-1,0,1}), ties broken
    lexicographically; iterated to a fixed point so the result is
    idempotent even when a longer phi-walk pays off."""
    if not alpha:
        return alpha

    def key(v: GaussGoldenInt):
        c = v.coords()
        return (max(abs(u) for u in c), c)

    current = alpha
    while True:
        best = min(_assoc_candidates(current), key=key)
        if key(best) >= key(current):
            return current
        current = best


def gcd_ne(alpha: GaussGoldenInt, beta: GaussGoldenInt) -> GaussGoldenInt:
    """GCD under the norm-Euclidean division, canonicalized."""
    if not alpha and not beta:
        raise MalformedInput("gcd_ne(0, 0) is undefined")
    while beta:
        _, r = euclid_divmod_ne(alpha, beta)
        alpha, beta = beta, r
    return canonical_associate_ne(alpha)


# --- the effective perturbation bound and the grid verification ---

def _bound_parts(w, x, y, z, r):
    """The five degree-graded pieces of the perturbation bound.

    For any beta with coordinates bounded by r in absolute value,
    N(alpha + beta) <= p0 + p1 + p2 + p3 + p4.  Jointly homogeneous of
    degree 4 in (w, x, y, z, r), so integer inputs give integer output
    (used by the exact verification path).
    """
    p0 = abs(w**4 + 2 * w**3 * x - w**2 * x**2 - 2 * w * x**3 + x**4
             + 2 * w**2 * y**2 + 2 * w * x * y**2 + 3 * x**2 * y**2
             + y**4 + 2 * w**2 * y * z - 8 * w * x * y * z
             - 2 * x**2 * y * z + 2 * y**3 * z + 3 * w**2 * z**2
             - y**2 * z**2 - 2 * y * z**3 + z**4 - 2 * w * x * z**2
             + 2 * x**2 * z**2)
    p1 = 2 * r * (abs(2 * w**3 + 3 * w**2 * x - w * x**2 - x**3
                      + 2 * w * y**2 + x * y**2 + 2 * w * y * z
                      + 3 * w * z**2 - x * z**2 - 4 * x * y * z)
                  + abs(w**3 - w**2 * x - 3 * w * x**2 + 2 * x**3
                        + w * y**2 + 3 * x * y**2 - 4 * w * y * z
                        - 2 * x * y * z - w * z**2 + 2 * x * z**2)
                  + abs(2 * w**2 * y + 2 * w * x * y + 3 * x**2 * y
                        + 2 * y**3 + w**2 * z - 4 * w * x * z - x**2 * z
                        + 3 * y**2 * z - y * z**2 - z**3)
                  + abs(w**2 * y - 4 * w * x * y - x**2 * y + y**3
                        + 3 * w**2 * z - 2 * w * x * z + 2 * x**2 * z
                        - y**2 * z - 3 * y * z**2 + 2 * z**3))
    p2 = r**2 * (abs(6 * w**2 + 6 * w * x - x**2 + 2 * y**2
                     + 2 * y * z + 3 * z**2)
                 + abs(6 * w**2 - 4 * w * x - 6 * x**2 + 2 * y**2
                       - 8 * y * z - 2 * z**2)
                 + abs(-w**2 - 6 * w * x + 6 * x**2 + 3 * y**2
                       - 2 * y * z + 2 * z**2)
                 + abs(2 * w**2 + 2 * w * x + 3 * x**2 + 6 * y**2
                       + 6 * y * z - z**2)
                 + abs(2 * w**2 - 8 * w * x - 2 * x**2 + 6 * y**2
                       - 4 * y * z - 6 * z**2)
                 + abs(3 * w**2 - 2 * w * x + 2 * x**2 - 6 * y * z
                       + 6 * z**2 - y**2)
                 + abs(8 * w * y + 4 * x * y + 4 * w * z - 8 * x * z)
                 + abs(4 * w * y + 12 * x * y - 8 * w * z - 4 * x * z)
                 + abs(4 * w * y - 8 * x * y + 12 * w * z - 4 * x * z)
                 + abs(-8 * w * y - 4 * x * y - 4 * w * z + 8 * x * z))
    p3 = 2 * r**3 * (abs(w + x) + 2 * abs(3 * w - x) + 2 * abs(w + 3 * x)
                     + 2 * abs(2 * x - w) + 3 * abs(2 * w + x)
                     + 2 * abs(w - 2 * x) + 2 * abs(2 * z - y)
                     + 2 * abs(y + 3 * z) + 2 * abs(y - 2 * z)
                     + 2 * abs(3 * y - z) + 4 * abs(2 * y + z))
    p4 = 40 * r**4
    return p0, p1, p2, p3, p4


def norm_upper_bound(alpha, r):
    """Upper bound on N(alpha + beta) over all beta with coordinates
    at most r in absolute value.  Works over any numeric type."""
    w, x, y, z = alpha
    return sum(_bound_parts(w, x, y, z, r))


def _sign(v: int) -> int:
    return (v > 0) - (v < 0)


def verify_norm_euclidean(grid_n: int, r) -> list[tuple[Fraction, ...]]:
    """Replicate the finite check that Z[i,phi] is norm-Euclidean.

    Covers the cube [-1/2, 1/2]^4 with a grid of spacing 1/grid_n and
    balls of radius r around each grid point; a grid point passes if the
    perturbation bound is < 1 there or at one of its four
    single-component sign-shifts.  Returns the failing points (an empty
    list is the interesting outcome).

    All arithmetic is exact: coordinates and r are scaled to integers
    by the common denominator and the homogeneous bound is compared
    against scale^4.
    """
    if grid_n < 1:
        raise MalformedInput("grid_n must be at least 1")
    r = Fraction(r)
    if r < 0:
        raise MalformedInput("r must be nonnegative")
    scale = lcm(2 * grid_n, r.denominator)
    rs = int(r * scale)
    limit = scale**4
    step = scale // grid_n  # spacing in scaled units (2*grid_n | scale)
    half = scale // 2
    axis = [j * step - half for j in range(grid_n + 1)]
    violations = []
    for w in axis:
        for x in axis:
            for y in axis:
                for z in axis:
                    if _grid_point_ok(w, x, y, z, rs, scale, limit):
                        continue
                    violations.append(tuple(Fraction(c, scale)
                                            for c in (w, x, y, z)))
    return violations


def _grid_point_ok(w: int, x: int, y: int, z: int, rs: int,
                   scale: int, limit: int) -> bool:
    if sum(_bound_parts(w, x, y, z, rs)) < limit:
        return True
    pts = ((w - _sign(w) * scale, x, y, z),
           (w, x - _sign(x) * scale, y, z),
           (w, x, y - _sign(y) * scale, z),
           (w, x, y, z - _sign(z) * scale))
    return any(sum(_bound_parts(*p, rs)) < limit for p in pts)
