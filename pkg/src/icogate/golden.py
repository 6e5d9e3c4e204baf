"""Arithmetic in Z[phi], the ring of integers of Q(sqrt 5).

Elements are written a + b*phi with phi^2 = phi + 1.  The two real
embeddings send phi to (1+sqrt5)/2 and (1-sqrt5)/2; we call them "plus"
and "minus" throughout.  The field norm N(a+b*phi) = a^2 + ab - b^2 can
be negative; the ring is Euclidean with respect to |N|, and its units are
+-phi^n.

The compiler leans on one particular element, eta = 7 + 5*phi of norm 59,
so a few eta-specific helpers (valuation, exact division) live here too.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from mpmath import mp, mpf

from .errors import Abandoned, InertPrime, MalformedInput
from .intfactor import (
    PRIME_ABANDON_THRESHOLD,
    factor_int,
    is_probable_prime,
    tonelli_shanks,
)

__all__ = [
    "GoldenInt",
    "GoldenFactorization",
    "PHI",
    "PHI_INV",
    "ETA",
    "ONE",
    "ZERO",
    "SQRT5_IRREDUCIBLE",
    "norm",
    "galois_conj",
    "embed",
    "sign_plus",
    "sign_minus",
    "euclid_divmod",
    "gcd",
    "canonical_associate",
    "unit_decompose",
    "tonelli_shanks",
    "split_prime",
    "InertPrime",
    "factor",
    "eta_valuation",
    "eta_power",
    "phi_power",
]

_PHI_FLOAT = (1.0 + 5.0**0.5) / 2.0


class GoldenInt:
    """An element a + b*phi of Z[phi]."""

    __slots__ = ("a", "b")

    def __init__(self, a: int, b: int = 0):
        self.a = int(a)
        self.b = int(b)

    def __repr__(self) -> str:
        return f"GoldenInt({self.a}, {self.b})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*phi"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a}{sign}{abs(self.b)}*phi"

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def __eq__(self, other: object) -> bool:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def __neg__(self) -> GoldenInt:
        return GoldenInt(-self.a, -self.b)

    def __add__(self, other) -> GoldenInt:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return GoldenInt(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other) -> GoldenInt:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return GoldenInt(self.a - other.a, self.b - other.b)

    def __rsub__(self, other) -> GoldenInt:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return GoldenInt(other.a - self.a, other.b - self.b)

    def __mul__(self, other) -> GoldenInt:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        # (a + b phi)(c + d phi) = ac + bd + (ad + bc + bd) phi
        a, b, c, d = self.a, self.b, other.a, other.b
        bd = b * d
        return GoldenInt(a * c + bd, a * d + b * c + bd)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> GoldenInt:
        if n < 0:
            raise ValueError("negative powers leave the ring")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self) -> GoldenInt:
        """Galois conjugate: phi -> 1 - phi, so a + b*phi -> (a+b) - b*phi."""
        return GoldenInt(self.a + self.b, -self.b)

    def norm(self) -> int:
        return self.a * self.a + self.a * self.b - self.b * self.b

    def divides(self, other: GoldenInt) -> bool:
        return exact_div(other, self) is not None


def _coerce(x) -> GoldenInt | None:
    if isinstance(x, GoldenInt):
        return x
    if isinstance(x, int):
        return GoldenInt(x, 0)
    return None


ZERO = GoldenInt(0, 0)
ONE = GoldenInt(1, 0)
PHI = GoldenInt(0, 1)
PHI_INV = GoldenInt(-1, 1)  # phi^-1 = phi - 1
ETA = GoldenInt(7, 5)  # norm 59
# The representative used for the ramified prime: 5 = (-1 + 2 phi)^2.
SQRT5_IRREDUCIBLE = GoldenInt(-1, 2)


def norm(x: GoldenInt) -> int:
    """Field norm a^2 + ab - b^2 (can be negative)."""
    return x.norm()


def galois_conj(x: GoldenInt) -> GoldenInt:
    return x.conj()


_PHI_EMBED_CACHE: dict[tuple[int, str], object] = {}


def _phi_embedded(which: str, precision_bits: int):
    """phi under the requested embedding, memoized per precision (embed
    sits on the hot path of lattice scans)."""
    key = (precision_bits, which)
    val = _PHI_EMBED_CACHE.get(key)
    if val is None:
        with mp.workprec(precision_bits):
            root = mp.sqrt(5)
            val = (1 + root) / 2 if which == "plus" else (1 - root) / 2
        _PHI_EMBED_CACHE[key] = val
    return val


def embed(x: GoldenInt, which: str = "plus", precision_bits: int = 64):
    """Real embedding of x as an mpf at the requested precision.

    which = "plus" sends phi to (1+sqrt5)/2, "minus" to (1-sqrt5)/2.
    """
    if which not in ("plus", "minus"):
        raise MalformedInput(f"unknown embedding {which!r}")
    p = _phi_embedded(which, precision_bits)
    with mp.workprec(precision_bits):
        return mpf(x.a) + mpf(x.b) * p


def sign_plus(x: GoldenInt) -> int:
    """Exact sign of the plus embedding, by integer arithmetic only."""
    return _sign_of(2 * x.a + x.b, x.b)


def sign_minus(x: GoldenInt) -> int:
    """Exact sign of the minus embedding."""
    return _sign_of(2 * x.a + x.b, -x.b)


def _sign_of(u: int, v: int) -> int:
    # sign of u + v*sqrt(5)
    if u >= 0 and v >= 0:
        return 1 if (u or v) else 0
    if u <= 0 and v <= 0:
        return -1
    if u > 0:  # v < 0
        return 1 if u * u > 5 * v * v else -1
    return 1 if 5 * v * v > u * u else -1


def exact_div(x: GoldenInt, y: GoldenInt) -> GoldenInt | None:
    """x / y when y divides x exactly, else None."""
    n = y.norm()
    if n == 0:
        raise ZeroDivisionError("division by zero in Z[phi]")
    t = x * y.conj()
    if t.a % n or t.b % n:
        return None
    return GoldenInt(t.a // n, t.b // n)


def euclid_divmod(x: GoldenInt, y: GoldenInt) -> tuple[GoldenInt, GoldenInt]:
    """Division with remainder: x = q*y + r and |N(r)| < |N(y)|.

    The quotient in Q(phi) is x * conj(y) / N(y); rounding both rational
    coordinates to nearest usually works, and a small neighborhood search
    covers the exceptional corners (Z[phi] is norm-Euclidean but its
    Euclidean minimum leaves nearest-rounding short now and then).
    """
    n = y.norm()
    if n == 0:
        raise ZeroDivisionError("euclid_divmod by zero")
    t = x * y.conj()
    ny = abs(n)
    qa = _round_div(t.a, n)
    qb = _round_div(t.b, n)
    best: tuple[GoldenInt, GoldenInt] | None = None
    for radius in (1, 2):
        for da in range(-radius, radius + 1):
            for db in range(-radius, radius + 1):
                if radius == 2 and max(abs(da), abs(db)) < 2:
                    continue  # already tried inside radius 1
                q = GoldenInt(qa + da, qb + db)
                r = x - q * y
                if abs(r.norm()) < ny:
                    if best is None or abs(r.norm()) < abs(best[1].norm()):
                        best = (q, r)
        if best is not None:
            return best
    raise AssertionError("norm-Euclidean division failed; arithmetic bug")


def _round_div(num: int, den: int) -> int:
    # nearest integer to num/den, half away from zero, exact in integers
    if den < 0:
        num, den = -num, -den
    if num >= 0:
        return (2 * num + den) // (2 * den)
    return -((-2 * num + den) // (2 * den))


def gcd(x: GoldenInt, y: GoldenInt) -> GoldenInt:
    """Greatest common divisor, canonicalized (see canonical_associate)."""
    if not x and not y:
        raise MalformedInput("gcd(0, 0) is undefined")
    while y:
        _, r = euclid_divmod(x, y)
        x, y = y, r
    return canonical_associate(x)


def _keysize(x: GoldenInt) -> int:
    return max(abs(x.a), abs(x.b))


def _assoc_key(x: GoldenInt) -> tuple:
    # total order implementing: minimal max(|a|,|b|), prefer a > 0, then
    # b >= 0, then plain lexicographic so ties cannot occur
    return (_keysize(x), 0 if x.a > 0 else 1, 0 if x.b >= 0 else 1, x.a, x.b)


def canonical_associate(x: GoldenInt) -> GoldenInt:
    """The distinguished associate of x among +-phi^n multiples.

    Chosen to minimize max(|a|, |b|), preferring a > 0 and then b >= 0
    on ties.  Scanning a window of phi-powers around the
    embedding-balanced point is enough: the coordinates grow
    geometrically in both directions away from it.  One exception by
    convention: the ramified class above 5 gets the representative
    -1 + 2*phi, matching how its square is usually written.
    """
    if not x:
        return ZERO
    n0 = _balance_exponent(x)
    x0 = x * phi_power(n0)
    best = None
    lo, hi = -8, 8
    shifts = {d: x0 * phi_power(d) for d in range(lo, hi + 1)}
    while True:
        for d in sorted(shifts):
            w = shifts[d]
            if w.a < 0 or (w.a == 0 and w.b < 0):
                w = -w
            k = _assoc_key(w)
            if best is None or k < best[0]:
                best = (k, w, d)
        # widen if the optimum sits on the window edge
        _, _, dbest = best
        if dbest > lo and dbest < hi:
            break
        lo -= 8
        hi += 8
        shifts = {d: x0 * phi_power(d) for d in range(lo, hi + 1)}
        if hi > 2000:
            raise AssertionError("canonicalization window runaway")
    out = best[1]
    if out == GoldenInt(2, 1):  # the norm-5 ramified class
        return SQRT5_IRREDUCIBLE
    return out


def phi_power(n: int) -> GoldenInt:
    base = PHI if n >= 0 else PHI_INV
    return base ** abs(n)


def _log_abs(a: int, b: int) -> float:
    # rough log of |a + b*PHI_FLOAT| that survives huge integers
    if a == 0 and b == 0:
        return float("-inf")
    scale = max(abs(a), abs(b)).bit_length() - 53
    if scale > 0:
        a >>= scale
        b >>= scale
    v = abs(a + b * _PHI_FLOAT)
    if v == 0.0:
        v = 0.25  # massive cancellation; caller's window absorbs the slack
    return math.log(v) + max(scale, 0) * math.log(2)


def _balance_exponent(x: GoldenInt) -> int:
    lp = _log_abs(x.a, x.b)
    xc = x.conj()
    lm = _log_abs(xc.a, xc.b)
    if lp == float("-inf") or lm == float("-inf"):
        return 0
    return round((lm - lp) / (2 * math.log(_PHI_FLOAT)))


def unit_decompose(u: GoldenInt) -> tuple[int, int]:
    """Write a unit as sign * phi^n, returning (sign, n)."""
    if abs(u.norm()) != 1:
        raise MalformedInput(f"{u!r} is not a unit")
    n = -_balance_exponent(u)  # phi^n has balanced point at -n
    for d in range(-4, 5):
        cand = phi_power(n + d)
        if u == cand:
            return (1, n + d)
        if u == -cand:
            return (-1, n + d)
    # fall back to an exact walk (huge exponents, off float range)
    n = 0
    w = u
    while _keysize(w) > 1:
        nxt = w * PHI_INV
        if _keysize(nxt) < _keysize(w):
            w, n = nxt, n + 1
            continue
        nxt = w * PHI
        if _keysize(nxt) >= _keysize(w):
            break
        w, n = nxt, n - 1
    for d in range(-2, 3):
        cand = phi_power(d)
        if w == cand:
            return (1, n + d)
        if w == -cand:
            return (-1, n + d)
    raise AssertionError(f"unit decomposition failed for {u!r}")


def split_prime(p: int, rng: random.Random | None = None,
                threshold: int = PRIME_ABANDON_THRESHOLD) -> GoldenInt:
    """An irreducible factor of p in Z[phi].

    Primes p = +-2 (mod 5) are inert (raises InertPrime); p = 5 ramifies
    as (-1 + 2 phi)^2; the rest split, found by solving x^2 - x - 1 = 0
    mod p (complete the square to (x - 1/2)^2 = 5/4) and taking a gcd
    with x - phi.
    """
    if p == 5:
        return SQRT5_IRREDUCIBLE
    if p % 5 in (2, 3):
        raise InertPrime(p)
    inv2 = pow(2, p - 2, p)
    # complete the square: (x - 1/2)^2 = 1 + 1/4 mod p.  Taking the
    # smaller of the two square roots fixes which prime above p we get.
    root = tonelli_shanks((1 + inv2 * inv2) % p, p, rng, threshold)
    root = min(root, p - root)
    x = (inv2 + root) % p
    g = gcd(GoldenInt(p, 0), GoldenInt(x, -1))
    assert abs(g.norm()) == p, "split_prime gcd landed on the wrong divisor"
    return g


@dataclass(frozen=True)
class GoldenFactorization:
    """unit * prod(factors[i] ** multiplicities[i]) = value, exactly."""

    unit: GoldenInt
    factors: tuple[tuple[GoldenInt, int], ...]

    def value(self) -> GoldenInt:
        out = self.unit
        for f, m in self.factors:
            out = out * f**m
        return out


def factor(x: GoldenInt, rng: random.Random | None = None,
           threshold: int = PRIME_ABANDON_THRESHOLD) -> GoldenFactorization:
    """Factor x into canonical irreducibles (plus a unit in front).

    Works through the rational prime factorization of N(x): inert primes
    divide x directly, split primes contribute via split_prime and its
    conjugate.  Raises Abandoned when the integer factorization or a
    needed square root is over budget, which synthesis loops treat as
    "skip this candidate".
    """
    if not x:
        raise MalformedInput("cannot factor 0")
    rng = rng or random.Random(0)
    n = abs(x.norm())
    out: list[tuple[GoldenInt, int]] = []
    rest = x
    if n > 1:
        for p in sorted(factor_int(n, rng)):
            if p == 5:
                pi_list = [SQRT5_IRREDUCIBLE]
            elif p % 5 in (2, 3):
                pi_list = [GoldenInt(p, 0)]
            else:
                pi = split_prime(p, rng, threshold)
                pi_list = [canonical_associate(pi),
                           canonical_associate(pi.conj())]
                if pi_list[0] == pi_list[1]:
                    pi_list = pi_list[:1]
            for pi in pi_list:
                mult = 0
                while True:
                    d = exact_div(rest, pi)
                    if d is None:
                        break
                    rest = d
                    mult += 1
                if mult:
                    out.append((pi, mult))
    if abs(rest.norm()) != 1:
        raise Abandoned(f"leftover non-unit {rest!r} while factoring {x!r}")
    out.sort(key=lambda fm: (abs(fm[0].norm()), fm[0].a, fm[0].b))
    return GoldenFactorization(unit=rest, factors=tuple(out))


def eta_valuation(x: GoldenInt) -> int:
    """Largest k with eta^k | x."""
    if not x:
        raise MalformedInput("eta_valuation(0) is undefined")
    k = 0
    while True:
        d = exact_div(x, ETA)
        if d is None:
            return k
        x = d
        k += 1


def eta_power(m: int) -> GoldenInt:
    """eta^m as an exact element."""
    return ETA**m
