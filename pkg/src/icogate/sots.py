"""Writing elements of Z[phi] as sums of two squares.

The route goes through Z[i,phi]: if s^2 + t^2 = x then (s + ti) is a
factor of x there, so candidates come from GCDs of x with elements of
the form r + i*c.  Per irreducible u the recipe depends on the residue
class of its associated prime p modulo 20; the classes 11 and 19 have
no recipe (and indeed no representation when the multiplicity is odd).
Composing per-irreducible representations uses the two-squares product
identity, and a final unit of the form +-phi^M is absorbed by parity:
phi^even is a square, phi^odd leaves a representation of x*phi instead
of x ("twist").  Callers that need x itself exactly treat the twisted
outcome as failure; no element has both x and x*phi representable.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .errors import MalformedInput, NotRepresentable, UnsupportedResidue
from .gaussgolden import GaussGoldenInt, gcd_ne
from .golden import (
    ONE,
    PHI,
    SQRT5_IRREDUCIBLE,
    ZERO,
    GoldenInt,
    canonical_associate,
    exact_div,
    factor,
    norm,
    tonelli_shanks,
    unit_decompose,
)
from .intfactor import PRIME_ABANDON_THRESHOLD, is_probable_prime

__all__ = [
    "SotsResult",
    "associated_prime",
    "sots_irreducible",
    "sots",
    "sots_exact",
    "GOOD_RESIDUES",
]

# residue classes mod 20 of associated primes we can decompose
GOOD_RESIDUES = frozenset({1, 3, 7, 9, 13, 17})


@dataclass(frozen=True)
class SotsResult:
    s: GoldenInt
    t: GoldenInt
    twist: str  # "plain": s^2+t^2 = x; "phi": s^2+t^2 = x*phi

    def value(self) -> GoldenInt:
        return self.s * self.s + self.t * self.t


def associated_prime(u: GoldenInt) -> int:
    """Least prime factor of norm(u) for irreducible u.

    |norm| is p for split/ramified irreducibles and p^2 for inert
    rational primes, so this is either |norm| or its square root.
    """
    n = abs(norm(u))
    if n <= 1:
        raise MalformedInput(f"{u!r} is a unit or zero, not irreducible")
    r = math.isqrt(n)
    if r * r == n:
        if not is_probable_prime(r):
            raise MalformedInput(f"{u!r} is not irreducible")
        return r
    if not is_probable_prime(n):
        raise MalformedInput(f"{u!r} is not irreducible")
    return n


def _even_root(p: int, a: int, rng, threshold) -> int:
    # even square root of a mod p (p odd, so one of x, p-x is even)
    x = tonelli_shanks(a % p, p, rng, threshold)
    return x if x % 2 == 0 else p - x


def _even_nonquintic_root(p: int, rng, threshold) -> int:
    """A lift x of a square root of -5 mod p with x even and 5 not
    dividing x.  Adding multiples of p preserves the root mod p while
    cycling parity and the residue mod 5, so a suitable lift always
    exists among x0 + j*p for small j."""
    x0 = tonelli_shanks(-5 % p, p, rng, threshold)
    for j in range(10):
        x = x0 + j * p
        if x % 2 == 0 and x % 5:
            return x
        x = (p - x0) + j * p
        if x % 2 == 0 and x % 5:
            return x
    raise AssertionError("no valid lift of sqrt(-5); arithmetic bug")


def _piece(u: GoldenInt, rng, threshold) -> tuple[GoldenInt, GoldenInt]:
    """(s, t) with s^2 + t^2 an associate of u (the exact value is
    whatever the GCD produces; callers reconcile units globally)."""
    p = associated_prime(u)
    if p == 2:
        return (ONE, ONE)
    if p == 5:
        if canonical_associate(u) == SQRT5_IRREDUCIBLE:
            return (PHI, ONE)  # phi^2 + 1 = 2 + phi = sqrt5 * phi
        return (SQRT5_IRREDUCIBLE, ZERO)  # u ~ 5 itself
    cls = p % 20
    if cls in (11, 19):
        raise UnsupportedResidue(
            f"associated prime {p} = {cls} (mod 20) has no decomposition")
    if p % 4 == 1:
        x = _even_root(p, -1, rng, threshold)
        probe = GaussGoldenInt(x, 0, 1, 0)  # x + i
    else:  # cls in (3, 7)
        x = _even_nonquintic_root(p, rng, threshold)
        probe = GaussGoldenInt.from_golden(
            GoldenInt(x, 0), SQRT5_IRREDUCIBLE)  # x + i*sqrt5
    g = gcd_ne(GaussGoldenInt.from_golden(u), probe)
    s, t = g.re, g.im
    v = s * s + t * t
    q = exact_div(u, v) if v else None
    if q is None or abs(norm(q)) != 1:
        raise AssertionError(f"two-squares gcd failed for {u!r} (p={p})")
    return (s, t)


def sots_irreducible(u: GoldenInt, rng: random.Random | None = None,
                     threshold: int = PRIME_ABANDON_THRESHOLD) -> SotsResult:
    """Represent u or u*phi as a sum of two squares, for irreducible u
    (the rational primes 2 and 5 are also accepted).

    The raw GCD output represents some associate of u; multiplying
    through by phi-powers walks that to u itself when the leftover
    exponent is even, and to u*phi when odd.
    """
    rng = rng or random.Random(0)
    s, t = _piece(u, rng, threshold)
    v = s * s + t * t
    ratio = exact_div(u, v)
    if ratio is None or abs(norm(ratio)) != 1:
        raise AssertionError("piece value is not an associate")
    sign, m = unit_decompose(ratio)
    if sign < 0:
        raise NotRepresentable(
            f"{u!r} is not totally nonnegative up to an even phi-power")
    if m % 2 == 0:
        h, twist = m // 2, "plain"
    else:
        h, twist = (m + 1) // 2, "phi"
    shift = _phi_pow(h)
    result = SotsResult(s * shift, t * shift, twist)
    expect = u if twist == "plain" else u * PHI
    assert result.value() == expect
    return result


def _phi_pow(n: int) -> GoldenInt:
    base = PHI if n >= 0 else GoldenInt(-1, 1)
    return base ** abs(n)


def sots(x: GoldenInt, rng: random.Random | None = None,
         threshold: int = PRIME_ABANDON_THRESHOLD) -> SotsResult:
    """Represent x or x*phi as a sum of two squares, if the
    factor-by-factor criteria allow it.

    An irreducible factor passes if its associated prime is 2 or 5, or
    lies in a good class mod 20, or simply occurs with even
    multiplicity.  Odd-multiplicity factors contribute one piece each;
    pieces compose by (s,t)*(s',t') = (ss'-tt', st'+ts').  The leftover
    unit is +-phi^M exactly; a minus sign proves x is not totally
    nonnegative, hence not representable at either twist.
    """
    if not x:
        raise MalformedInput("sots(0): use sots_exact for the zero case")
    rng = rng or random.Random(0)
    fac = factor(x, rng, threshold)
    square = ONE
    s_acc, t_acc = ONE, ZERO
    value = ONE
    for u, mult in fac.factors:
        square = square * u ** (mult // 2)
        if mult % 2 == 0:
            continue
        p = associated_prime(u)
        if p not in (2, 5) and p % 20 not in GOOD_RESIDUES:
            raise UnsupportedResidue(
                f"factor {u!r} (associated prime {p}) with odd multiplicity")
        s, t = _piece(u, rng, threshold)
        s_acc, t_acc = s_acc * s - t_acc * t, s_acc * t + t_acc * s
        value = value * (s * s + t * t)
    ratio = exact_div(x, square * square * value)
    assert ratio is not None and abs(norm(ratio)) == 1
    sign, m = unit_decompose(ratio)
    if sign < 0:
        raise NotRepresentable(f"{x!r} is not totally nonnegative")
    if m % 2 == 0:
        h, twist = m // 2, "plain"
    else:
        h, twist = (m + 1) // 2, "phi"
    scale = square * _phi_pow(h)
    result = SotsResult(s_acc * scale, t_acc * scale, twist)
    expect = x if twist == "plain" else x * PHI
    assert result.value() == expect
    return result


def sots_exact(x: GoldenInt, rng: random.Random | None = None,
               threshold: int = PRIME_ABANDON_THRESHOLD
               ) -> tuple[GoldenInt, GoldenInt]:
    """(s, t) with s^2 + t^2 = x exactly, or NotRepresentable.

    A twisted result means x*phi is representable but x is not, so it
    counts as failure here; synthesis moves on to its next candidate.
    """
    if not x:
        return (ZERO, ZERO)
    result = sots(x, rng, threshold)
    if result.twist != "plain":
        raise NotRepresentable(f"only {x!r}*phi is a sum of two squares")
    return (result.s, result.t)
