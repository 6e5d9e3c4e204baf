"""Tests for the Z[phi] ring layer."""

import random

import pytest

from icogate.errors import InertPrime, MalformedInput, NonResidue
from icogate.golden import (
    ETA,
    PHI,
    GoldenInt,
    canonical_associate,
    embed,
    eta_valuation,
    euclid_divmod,
    exact_div,
    factor,
    gcd,
    galois_conj,
    norm,
    sign_minus,
    sign_plus,
    split_prime,
    tonelli_shanks,
    unit_decompose,
)


def rand_elt(rng, bound=50):
    return GoldenInt(rng.randint(-bound, bound), rng.randint(-bound, bound))


def test_basic_arithmetic():
    x = GoldenInt(2, 3)
    y = GoldenInt(-1, 4)
    assert x + y == GoldenInt(1, 7)
    assert x - y == GoldenInt(3, -1)
    # (2+3phi)(-1+4phi) = -2 + 8phi - 3phi + 12phi^2 = 10 + 17phi
    assert x * y == GoldenInt(10, 17)
    assert x * 1 == x and 1 * x == x
    assert x + 0 == x and 0 + x == x
    assert x**0 == GoldenInt(1, 0)
    assert x**3 == x * x * x
    assert PHI * PHI == PHI + 1


def test_norm_and_conj_examples():
    assert norm(ETA) == 59
    assert norm(GoldenInt(0, 1)) == -1
    assert galois_conj(GoldenInt(7, 5)) == GoldenInt(12, -5)
    x = GoldenInt(3, -2)
    assert x * galois_conj(x) == GoldenInt(norm(x), 0)


def test_norm_multiplicative():
    rng = random.Random(11)
    for _ in range(1000):
        x, y = rand_elt(rng), rand_elt(rng)
        assert norm(x * y) == norm(x) * norm(y)


def test_embed_eta():
    assert float(embed(ETA, "plus")) == pytest.approx(15.0902, abs=1e-3)
    assert float(embed(ETA, "minus")) == pytest.approx(3.9098, abs=1e-3)
    with pytest.raises(MalformedInput):
        embed(ETA, "sideways")


def test_embed_is_ring_hom():
    rng = random.Random(7)
    for _ in range(50):
        x, y = rand_elt(rng), rand_elt(rng)
        for w in ("plus", "minus"):
            lhs = embed(x * y, w, 80)
            rhs = embed(x, w, 80) * embed(y, w, 80)
            assert abs(lhs - rhs) < 1e-12 * (1 + abs(rhs))


def test_exact_signs_match_embedding():
    rng = random.Random(13)
    cases = [rand_elt(rng, 10**9) for _ in range(200)]
    cases += [GoldenInt(0, 0), GoldenInt(1, -1), GoldenInt(-1, 1),
              GoldenInt(10**40, -(10**40)), GoldenInt(5, -8), GoldenInt(-8, 13)]
    for x in cases:
        for sgn, w in ((sign_plus, "plus"), (sign_minus, "minus")):
            v = embed(x, w, 200)
            expected = 0 if v == 0 else (1 if v > 0 else -1)
            assert sgn(x) == expected, (x, w)


def test_euclid_divmod_example():
    q, r = euclid_divmod(GoldenInt(7, 5), GoldenInt(2, 0))
    assert GoldenInt(7, 5) == q * GoldenInt(2, 0) + r
    assert abs(norm(r)) < 4


def test_euclid_divmod_contract():
    rng = random.Random(17)
    for _ in range(1000):
        x = rand_elt(rng, 500)
        y = rand_elt(rng, 500)
        if not y:
            continue
        q, r = euclid_divmod(x, y)
        assert x == q * y + r
        assert abs(norm(r)) < abs(norm(y))
    with pytest.raises(ZeroDivisionError):
        euclid_divmod(GoldenInt(1, 0), GoldenInt(0, 0))


def test_gcd_examples():
    assert gcd(GoldenInt(2, 0), GoldenInt(3, 0)) == GoldenInt(1, 0)
    # gcd with zero is the canonical associate
    assert gcd(GoldenInt(0, 5), GoldenInt(0, 0)) == GoldenInt(5, 0)
    g = gcd(ETA, ETA * ETA)
    assert abs(norm(g)) == 59
    with pytest.raises(MalformedInput):
        gcd(GoldenInt(0, 0), GoldenInt(0, 0))


def _box_divisors(x, bound):
    out = []
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            d = GoldenInt(a, b)
            if d and exact_div(x, d) is not None:
                out.append(d)
    return out


def test_gcd_against_brute_force():
    """gcd matches an exhaustive common-divisor search on small inputs.

    Divisors of an element with |norm| <= 10^4 all have canonical
    representatives within a modest coordinate box, so the box search
    sees every divisor class.
    """
    rng = random.Random(23)
    pairs = []
    while len(pairs) < 8:
        g = rand_elt(rng, 4)
        x = g * rand_elt(rng, 5)
        y = g * rand_elt(rng, 5)
        if x and y and abs(norm(x)) <= 10**4 and abs(norm(y)) <= 10**4:
            pairs.append((x, y))
    for x, y in pairs:
        g = gcd(x, y)
        assert exact_div(x, g) is not None
        assert exact_div(y, g) is not None
        # canonical representatives of divisors of norm <= 10^4 fit in
        # a coordinate box of size ~sqrt(10^4) * (1+phi)/sqrt(5) < 120
        common = [d for d in _box_divisors(x, 120)
                  if exact_div(y, d) is not None]
        for d in common:
            assert exact_div(g, d) is not None, (x, y, g, d)
        assert abs(norm(g)) == max(abs(norm(d)) for d in common)


def test_canonical_associate():
    assert canonical_associate(GoldenInt(0, 0)) == GoldenInt(0, 0)
    assert canonical_associate(GoldenInt(-2, 7)) == ETA  # (-2+7phi) = eta/phi
    assert canonical_associate(GoldenInt(0, 2)) == GoldenInt(2, 0)
    assert canonical_associate(GoldenInt(2, 1)) == GoldenInt(-1, 2)
    rng = random.Random(29)
    for _ in range(200):
        x = rand_elt(rng, 40)
        c = canonical_associate(x)
        assert canonical_associate(c) == c
        if x:
            # same ideal: each divides the other
            assert exact_div(x, c) is not None or exact_div(c, x) is not None
            q = exact_div(x, c)
            assert q is not None and abs(norm(q)) == 1


def test_unit_decompose():
    assert unit_decompose(GoldenInt(1, 0)) == (1, 0)
    assert unit_decompose(GoldenInt(-1, 0)) == (-1, 0)
    assert unit_decompose(PHI**5) == (1, 5)
    s, n = unit_decompose(-(GoldenInt(-1, 1) ** 3))
    assert (s, n) == (-1, -3)
    with pytest.raises(MalformedInput):
        unit_decompose(GoldenInt(2, 0))


def test_tonelli_shanks_examples():
    assert tonelli_shanks(4, 7) in (2, 5)
    assert tonelli_shanks(2, 7) in (3, 4)
    with pytest.raises(NonResidue):
        tonelli_shanks(3, 7)


def test_split_prime_examples():
    with pytest.raises(InertPrime):
        split_prime(2)
    assert split_prime(5) == GoldenInt(-1, 2)
    assert canonical_associate(split_prime(11)) == GoldenInt(3, 1)


def test_split_prime_below_1000():
    from icogate.intfactor import small_primes

    for p in [q for q in small_primes() if q < 1000]:
        if p == 5:
            assert split_prime(p) == GoldenInt(-1, 2)
        elif p % 5 in (1, 4):
            assert abs(norm(split_prime(p))) == p
        else:
            with pytest.raises(InertPrime):
                split_prime(p)


def test_inert_primes_have_no_norm_p_element():
    # exhaustive check: no a + b*phi with norm +-p when p = +-2 (mod 5)
    from icogate.intfactor import small_primes

    import math

    for p in [q for q in small_primes() if q < 1000 and q % 5 in (2, 3)]:
        bound = int(math.isqrt(p)) + 1
        for a in range(-bound, bound + 1):
            for b in range(-bound, bound + 1):
                assert abs(norm(GoldenInt(a, b))) != p


def test_factor_examples():
    f = factor(ETA)
    assert f.unit == GoldenInt(1, 0)
    assert f.factors == ((ETA, 1),)

    f = factor(GoldenInt(2, 0))
    assert f.unit == GoldenInt(1, 0)
    assert f.factors == ((GoldenInt(2, 0), 1),)

    f = factor(GoldenInt(5, 5))  # 5 phi^2
    assert f.unit == PHI * PHI
    assert f.factors == ((GoldenInt(-1, 2), 2),)


def test_factor_round_trip():
    rng = random.Random(31)
    done = 0
    while done < 1000:
        x = rand_elt(rng, 700)
        if not x or abs(norm(x)) > 10**6:
            continue
        f = factor(x)
        assert f.value() == x
        assert abs(norm(f.unit)) == 1
        for pi, m in f.factors:
            assert m >= 1
            assert canonical_associate(pi) == pi
        done += 1


def test_factor_rejects_zero():
    with pytest.raises(MalformedInput):
        factor(GoldenInt(0, 0))


def test_eta_valuation():
    assert eta_valuation(ETA) == 1
    assert eta_valuation(GoldenInt(1, 0)) == 0
    assert eta_valuation(ETA**3 * GoldenInt(2, 0)) == 3
    with pytest.raises(MalformedInput):
        eta_valuation(GoldenInt(0, 0))
