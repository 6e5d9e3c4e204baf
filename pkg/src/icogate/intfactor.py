"""Rational integer helpers: primality, factoring, square roots mod p.

Nothing here is specific to the golden ring; these are the standard
building blocks (deterministic Miller-Rabin below 2^64, Brent's variant
of Pollard rho, Tonelli-Shanks) tuned for the moderate sizes produced by
norm computations, with explicit effort budgets so callers can treat a
stuck factorization as a skippable candidate instead of a hang.
"""

from __future__ import annotations

import math
import random

from .errors import Abandoned, NonResidue, PrimeTooLarge

# Verifying these witnesses suffices for all n < 3.3 * 10^24, which covers
# every 64-bit input and then some.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_SMALL_PRIME_BOUND = 100_000
_small_primes: list[int] | None = None

# Default ceiling on primes we are willing to run Tonelli-Shanks against.
# Larger primes abort the surrounding factorization attempt instead.
PRIME_ABANDON_THRESHOLD = 1_000_000

# Iteration budget for a full Pollard rho factorization.
RHO_ITERATION_BUDGET = 2_000_000


def small_primes() -> list[int]:
    """Primes below 10^5 via a cached sieve."""
    global _small_primes
    if _small_primes is None:
        bound = _SMALL_PRIME_BOUND
        sieve = bytearray([1]) * bound
        sieve[0] = sieve[1] = 0
        for i in range(2, int(bound**0.5) + 1):
            if sieve[i]:
                sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
        _small_primes = [i for i in range(bound) if sieve[i]]
    return _small_primes


def is_probable_prime(n: int, rng: random.Random | None = None) -> bool:
    """Miller-Rabin: deterministic below 2^64, 40 random rounds above."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1

    def witness(a: int) -> bool:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            return False
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                return False
        return True

    if n < (1 << 64):
        bases = _MR_WITNESSES
    else:
        rng = rng or random.Random(0)
        bases = tuple(rng.randrange(2, n - 1) for _ in range(40))
    return not any(witness(a) for a in bases)


def _brent_rho(n: int, rng: random.Random, budget: int) -> tuple[int, int]:
    """One Brent cycle hunt. Returns (factor, iterations_used).

    The factor may equal n on failure of this particular (y, c) choice.
    """
    if n % 2 == 0:
        return 2, 0
    y = rng.randrange(1, n)
    c = rng.randrange(1, n)
    m = 128
    g = r = q = 1
    used = 0
    x = ys = y
    while g == 1 and used < budget:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            used += min(m, r - k)
            g = math.gcd(q, n)
            k += m
        r *= 2
    if g == n:
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            used += 1
            if used >= budget:
                break
    return g, used


def factor_int(n: int, rng: random.Random | None = None,
               budget: int = RHO_ITERATION_BUDGET) -> dict[int, int]:
    """Factor a positive integer into {prime: multiplicity}.

    Trial division below 10^5, then Brent-Pollard rho on what remains.
    Raises Abandoned if the rho budget runs out, so norm-level callers
    can simply skip the candidate that produced an unlucky cofactor.
    """
    if n <= 0:
        raise ValueError("factor_int expects a positive integer")
    rng = rng or random.Random(0)
    out: dict[int, int] = {}
    for p in small_primes():
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n == 1:
        return out
    stack = [n]
    remaining = budget
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m, rng):
            out[m] = out.get(m, 0) + 1
            continue
        g = m
        while g == m:
            if remaining <= 0:
                raise Abandoned(f"rho budget exhausted on cofactor {m}")
            g, used = _brent_rho(m, rng, remaining)
            remaining -= max(used, 1)
            if g in (0, 1):
                g = m
        stack.append(g)
        stack.append(m // g)
    return out


def tonelli_shanks(a: int, p: int, rng: random.Random | None = None,
                   threshold: int = PRIME_ABANDON_THRESHOLD) -> int:
    """Square root of a modulo an odd prime p.

    Raises NonResidue when a has no root, and PrimeTooLarge when p exceeds
    the abandonment threshold (the caller treats that as a skip, since a
    huge split prime just means this synthesis candidate is too expensive).
    """
    if p > threshold:
        raise PrimeTooLarge(f"prime {p} exceeds threshold {threshold}")
    if p == 2:
        return a % 2
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        raise NonResidue(f"{a} is not a square mod {p}")
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Write p - 1 = q * 2^s with q odd, then walk the 2-Sylow subgroup.
    q = p - 1
    s = 0
    while q % 2 == 0:
        q //= 2
        s += 1
    rng = rng or random.Random(0)
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z = rng.randrange(2, p)
    m = s
    c = pow(z, q, p)
    t = pow(a, q, p)
    r = pow(a, (q + 1) // 2, p)
    while t != 1:
        i = 0
        t2 = t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
            if i == m:
                raise NonResidue(f"{a} is not a square mod {p}")
        b = pow(c, 1 << (m - i - 1), p)
        m = i
        c = b * b % p
        t = t * c % p
        r = r * b % p
    return r
