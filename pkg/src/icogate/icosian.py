"""Quaternions with Z[phi] coefficients, the 60-element gate group they
project to, and exact factorization into gate words.

The three generators live here as integral quaternions: rho and sigma
have reduced norm a unit times a rational square, so they project to
elements of the icosahedral group C60, while tau has reduced norm
eta = 7 + 5*phi.  Any quaternion whose reduced norm is eta^k (times a
unit) factors as xi_0 tau xi_1 tau ... tau xi_k with the xi_i in C60,
and the factorization is found greedily: exactly one right cofactor
c*tau makes the product divisible by eta, and dividing by eta drops the
tau-count by one.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from mpmath import mp

from .errors import IcogateError, MalformedInput, NoPeelingCandidate, NotInGroup
from .golden import (ETA, GoldenInt, ONE, PHI, ZERO, embed, eta_valuation,
                     exact_div, gcd, phi_power)
from .unitary import DEFAULT_PRECISION_BITS, ProjUnitary

__all__ = [
    "GoldenQuat", "RHO", "SIGMA", "TAU", "ONE_QUAT",
    "canonical", "tau_count", "C60Table", "generate_c60",
    "GateWord", "word_to_quat", "evaluate_word",
    "peel_candidates", "exact_synthesize",
]


def _coerce(x) -> GoldenInt:
    if isinstance(x, GoldenInt):
        return x
    if isinstance(x, int):
        return GoldenInt(x, 0)
    raise MalformedInput(f"not a Z[phi] coefficient: {x!r}")


class GoldenQuat:
    """x0 + x1*i + x2*j + x3*k with coefficients in Z[phi]."""

    __slots__ = ("x0", "x1", "x2", "x3")

    def __init__(self, x0, x1, x2, x3):
        self.x0 = _coerce(x0)
        self.x1 = _coerce(x1)
        self.x2 = _coerce(x2)
        self.x3 = _coerce(x3)

    def __repr__(self) -> str:
        return (f"GoldenQuat({self.x0!r}, {self.x1!r}, "
                f"{self.x2!r}, {self.x3!r})")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GoldenQuat):
            return NotImplemented
        return self.coords() == other.coords()

    def __hash__(self) -> int:
        return hash(self.coords())

    def coords(self) -> tuple[int, ...]:
        return (self.x0.a, self.x0.b, self.x1.a, self.x1.b,
                self.x2.a, self.x2.b, self.x3.a, self.x3.b)

    def parts(self) -> tuple[GoldenInt, GoldenInt, GoldenInt, GoldenInt]:
        return (self.x0, self.x1, self.x2, self.x3)

    def __neg__(self) -> GoldenQuat:
        return GoldenQuat(-self.x0, -self.x1, -self.x2, -self.x3)

    def __add__(self, other: GoldenQuat) -> GoldenQuat:
        return GoldenQuat(self.x0 + other.x0, self.x1 + other.x1,
                          self.x2 + other.x2, self.x3 + other.x3)

    def __sub__(self, other: GoldenQuat) -> GoldenQuat:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, GoldenInt)):
            s = _coerce(other)
            return GoldenQuat(self.x0 * s, self.x1 * s,
                              self.x2 * s, self.x3 * s)
        if not isinstance(other, GoldenQuat):
            return NotImplemented
        a0, a1, a2, a3 = self.parts()
        b0, b1, b2, b3 = other.parts()
        return GoldenQuat(
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )

    def __rmul__(self, other):
        if isinstance(other, (int, GoldenInt)):
            return self * other
        return NotImplemented

    def conjugate(self) -> GoldenQuat:
        return GoldenQuat(self.x0, -self.x1, -self.x2, -self.x3)

    def nrd(self) -> GoldenInt:
        """Reduced norm, a totally nonnegative element of Z[phi]."""
        return (self.x0 * self.x0 + self.x1 * self.x1
                + self.x2 * self.x2 + self.x3 * self.x3)

    def to_unitary(self, precision_bits: int = DEFAULT_PRECISION_BITS
                   ) -> ProjUnitary:
        """Image under x0 + x1*i + x2*j + x3*k ->
        [[x0 + x1 i, x2 + x3 i], [-x2 + x3 i, x0 - x1 i]],
        a multiple of a unitary matrix."""
        with mp.workprec(precision_bits + 16):
            w0, w1, w2, w3 = (embed(x, "plus", precision_bits + 16)
                              for x in self.parts())
            rows = ((mp.mpc(w0, w1), mp.mpc(w2, w3)),
                    (mp.mpc(-w2, w3), mp.mpc(w0, -w1)))
        return ProjUnitary(rows, precision_bits)


ONE_QUAT = GoldenQuat(1, 0, 0, 0)
RHO = GoldenQuat(1, 1, 1, 1)
SIGMA = GoldenQuat(ZERO, PHI, ONE, GoldenInt(1, 1))
TAU = GoldenQuat(ZERO, GoldenInt(2, 1), ONE, ONE)


def _content(q: GoldenQuat) -> GoldenInt:
    """Z[phi]-gcd of the coordinates (the scalar ring is Z[phi], so
    primitivity means no common golden divisor, units aside)."""
    g = ZERO
    for x in q.parts():
        if x != ZERO:
            g = x if g == ZERO else gcd(g, x)
    return g


def _flat_key(q: GoldenQuat) -> tuple:
    flat = q.coords()
    return (sum(abs(v) for v in flat), flat)


def _sign_fixed(q: GoldenQuat) -> GoldenQuat:
    for v in q.coords():
        if v > 0:
            return q
        if v < 0:
            return -q
    return q


def canonical(q: GoldenQuat) -> GoldenQuat:
    """Deterministic representative of the projective class of q.

    Scalar multiples by Z[phi] embed as real multiples of the same
    matrix, so the class is fixed by dividing out the golden content,
    balancing the remaining unit ambiguity +/- phi^n and normalizing
    the sign.  The balancing exponent minimizes the coordinate 1-norm;
    that objective grows like phi^|n| in both directions, so a greedy
    walk followed by a local window scan finds the global minimum with
    exact integer arithmetic only.
    """
    g = _content(q)
    if g == ZERO:
        raise MalformedInput("zero quaternion has no projective class")
    if g != ONE:
        q = GoldenQuat(*(exact_div(x, g) for x in q.parts()))

    up, down = phi_power(1), phi_power(-1)
    while _flat_key(q * up)[0] < _flat_key(q)[0]:
        q = q * up
    while _flat_key(q * down)[0] < _flat_key(q)[0]:
        q = q * down
    best = None
    for n in range(-8, 9):
        cand = _sign_fixed(q * phi_power(n))
        key = _flat_key(cand)
        if best is None or key < best[0]:
            best = (key, cand)
    return best[1]


def tau_count(q: GoldenQuat) -> int:
    """eta-adic valuation of the reduced norm: the number of tau gates
    any exact factorization of q must spend."""
    n = q.nrd()
    if n == ZERO:
        raise MalformedInput("zero quaternion")
    return eta_valuation(n)


class C60Table:
    """The 60 projective classes generated by rho and sigma, each with
    the shortest {r, s}-word the breadth-first closure found."""

    __slots__ = ("elements", "_word_map")

    def __init__(self, elements: tuple[tuple[GoldenQuat, str], ...]):
        self.elements = elements
        self._word_map = dict(elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def word_for(self, q: GoldenQuat) -> str | None:
        return self._word_map.get(canonical(q))

    def inverse_word_for(self, q: GoldenQuat) -> str:
        word = self.word_for(q.conjugate())
        if word is None:
            raise NotInGroup(f"{q!r} is not a C60 element")
        return word


@lru_cache(maxsize=None)
def generate_c60() -> C60Table:
    """Breadth-first closure of {rho, sigma} modulo scalars."""
    start = canonical(ONE_QUAT)
    found: dict[GoldenQuat, str] = {start: ""}
    order = [start]
    queue = deque([start])
    while queue:
        q = queue.popleft()
        word = found[q]
        for letter, gen in (("r", RHO), ("s", SIGMA)):
            nq = canonical(q * gen)
            if nq not in found:
                found[nq] = word + letter
                order.append(nq)
                queue.append(nq)
    if len(found) != 60:
        raise IcogateError(f"closure of rho, sigma has {len(found)} "
                           "elements, expected 60")
    return C60Table(tuple((q, found[q]) for q in order))


_WORD_GROUPED = re.compile(r"^\([rs]*\)(?:t\([rs]*\))*$")
_WORD_BARE = re.compile(r"^[rst]*$")


@dataclass(frozen=True)
class GateWord:
    """A word xi_0 tau xi_1 tau ... tau xi_n over the gate set, stored
    as the tuple of {r, s}-segments between the taus."""

    segments: tuple[str, ...]

    def __post_init__(self):
        if not self.segments:
            raise MalformedInput("a word has at least one segment")
        for seg in self.segments:
            if not isinstance(seg, str) or seg.strip("rs"):
                raise MalformedInput(f"bad segment {seg!r}")
        for seg in self.segments[1:-1]:
            if not seg:
                raise MalformedInput("inner segments must be nonempty")

    @property
    def tau_count(self) -> int:
        return len(self.segments) - 1

    def __str__(self) -> str:
        return "t".join(f"({seg})" for seg in self.segments)

    def text(self) -> str:
        return str(self)

    @classmethod
    def parse(cls, text: str) -> GateWord:
        flat = "".join(text.split())
        if "(" in flat or ")" in flat:
            if not _WORD_GROUPED.match(flat):
                raise MalformedInput(f"cannot parse word {text!r}")
            return cls(tuple(seg[1:-1] for seg in flat.split("t")))
        if not _WORD_BARE.match(flat):
            raise MalformedInput(f"cannot parse word {text!r}")
        return cls(tuple(flat.split("t")))

    def to_json(self) -> dict:
        return {"segments": list(self.segments), "tau_count": self.tau_count}

    @classmethod
    def from_json(cls, data: dict) -> GateWord:
        try:
            word = cls(tuple(data["segments"]))
        except (KeyError, TypeError) as exc:
            raise MalformedInput(f"bad word object: {data!r}") from exc
        if "tau_count" in data and data["tau_count"] != word.tau_count:
            raise MalformedInput("tau_count does not match segments")
        return word

    def concat(self, other: GateWord) -> GateWord:
        """Concatenation as group elements; a tau-(empty)-tau seam is a
        scalar (tau^2 = -eta) and cancels."""
        left = list(self.segments)
        right = list(other.segments)
        while len(left) > 1 and len(right) > 1 and not (left[-1] + right[0]):
            left.pop()
            right.pop(0)
        merged = left[:-1] + [left[-1] + right[0]] + right[1:]
        return GateWord(tuple(merged))


_GENERATORS = {"r": RHO, "s": SIGMA, "t": TAU}


def word_to_quat(word: GateWord) -> GoldenQuat:
    """Exact quaternion product of the word's letters."""
    q = ONE_QUAT
    for i, seg in enumerate(word.segments):
        if i:
            q = q * TAU
        for ch in seg:
            q = q * _GENERATORS[ch]
    return q


def evaluate_word(word: GateWord,
                  precision_bits: int = DEFAULT_PRECISION_BITS) -> ProjUnitary:
    return word_to_quat(word).to_unitary(precision_bits)


def _divide_eta(q: GoldenQuat) -> GoldenQuat | None:
    parts = [exact_div(x, ETA) for x in q.parts()]
    if any(p is None for p in parts):
        return None
    return GoldenQuat(*parts)


def peel_candidates(q: GoldenQuat) -> list[GoldenQuat]:
    """All c in C60 with q*c*tau divisible by eta.  For q in the gate
    group with positive tau-count there is exactly one."""
    table = generate_c60()
    out = []
    for c, _ in table:
        if _divide_eta(q * (c * TAU)) is not None:
            out.append(c)
    return out


def exact_synthesize(q: GoldenQuat) -> GateWord:
    """Factor q (with nrd a unit times eta^k) into a gate word with
    exactly k taus.  Raises NotInGroup / NoPeelingCandidate when q is
    not in the projective image of the order's unit lattice."""
    table = generate_c60()
    gamma = canonical(q)
    k = tau_count(gamma)
    # identity last: its inverse word is empty, which only the outermost
    # segments may carry, and a letter-bearing cofactor that also peels
    # is always the right choice for inner positions
    ordered = sorted(table, key=lambda entry: entry[1] == "")
    tails: list[str] = []
    for _ in range(k):
        for c, _word in ordered:
            quotient = _divide_eta(gamma * (c * TAU))
            if quotient is not None:
                gamma = canonical(quotient)
                tails.append(table.inverse_word_for(c))
                break
        else:
            raise NoPeelingCandidate(
                f"no C60 cofactor peels a tau from {gamma!r}")
    base = table.word_for(gamma)
    if base is None:
        raise NotInGroup(f"residual {gamma!r} is outside C60")
    return GateWord(tuple([base] + tails[::-1]))
