"""Projective single-qubit unitaries over big floats.

Everything downstream measures approximation quality with the
bi-invariant metric d(A,B) = sqrt(1 - |tr(A^dag B)|/2) on PU(2), which
is insensitive to global phase.  Matrices are stored with an explicit
working precision in bits; the synthesis layers pick the precision from
the target accuracy so that the huge eta^k scalings cancel without
eating the answer.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from mpmath import mp, mpc, mpf

from .errors import HypothesisViolation, MalformedInput

__all__ = [
    "ProjUnitary",
    "TuningAngles",
    "DEFAULT_PRECISION_BITS",
    "precision_for",
    "distance",
    "u_of_theta",
    "u_of_alpha_beta",
    "to_alpha_beta",
    "tune_diagonals",
    "named_gate",
    "parse_complex",
    "GATE_NAMES",
]

DEFAULT_PRECISION_BITS = 128

# default Lemma-5-style tuning constants; C is derived from these
DEFAULT_DELTA = 0.5
DEFAULT_EPSILON0 = 0.05


def precision_for(epsilon: float) -> int:
    """Working precision for a target accuracy epsilon.

    Synthesis at accuracy eps manipulates numbers of size eta^k with
    k ~ log_59(1/eps^3); 3*log2(1/eps) bits cover the dynamic range and
    the constant keeps a healthy mantissa after cancellation.
    """
    if not epsilon > 0:
        raise MalformedInput("epsilon must be positive")
    with mp.workprec(64):
        bits = int(mp.ceil(3 * mp.log(1 / mpf(epsilon), 2)))
    return max(bits, 0) + 96


class ProjUnitary:
    """A 2x2 complex matrix considered up to global phase."""

    __slots__ = ("entries", "precision_bits")

    def __init__(self, entries, precision_bits: int = DEFAULT_PRECISION_BITS):
        with mp.workprec(precision_bits):
            self.entries = tuple(tuple(mpc(v) for v in row) for row in entries)
        self.precision_bits = precision_bits
        if len(self.entries) != 2 or any(len(r) != 2 for r in self.entries):
            raise MalformedInput("expected a 2x2 matrix")

    def __repr__(self) -> str:
        (a, b), (c, d) = self.entries
        return f"ProjUnitary([[{a}, {b}], [{c}, {d}]], bits={self.precision_bits})"

    def __matmul__(self, other: ProjUnitary) -> ProjUnitary:
        bits = max(self.precision_bits, other.precision_bits)
        with mp.workprec(bits):
            (a, b), (c, d) = self.entries
            (e, f), (g, h) = other.entries
            rows = ((a * e + b * g, a * f + b * h),
                    (c * e + d * g, c * f + d * h))
        return ProjUnitary(rows, bits)

    def dagger(self) -> ProjUnitary:
        (a, b), (c, d) = self.entries
        with mp.workprec(self.precision_bits):
            rows = ((a.conjugate(), c.conjugate()),
                    (b.conjugate(), d.conjugate()))
        return ProjUnitary(rows, self.precision_bits)

    def det(self):
        (a, b), (c, d) = self.entries
        with mp.workprec(self.precision_bits):
            return a * d - b * c

    def trace(self):
        with mp.workprec(self.precision_bits):
            return self.entries[0][0] + self.entries[1][1]


def distance(a: ProjUnitary, b: ProjUnitary):
    """Bi-invariant distance sqrt(1 - |tr(a^dag b)| / 2) on PU(2).

    Inputs may carry any nonzero scalar (exact-arithmetic lifts do);
    the trace is normalized by sqrt|det| so the scalar cancels.
    """
    bits = max(a.precision_bits, b.precision_bits)
    with mp.workprec(bits):
        m = a.dagger() @ b
        scale = mp.sqrt(abs(m.det()))
        if scale == 0:
            raise MalformedInput("singular input to distance")
        val = 1 - abs(m.trace()) / (2 * scale)
        return mp.sqrt(val if val > 0 else mpf(0))


def u_of_theta(theta, precision_bits: int = DEFAULT_PRECISION_BITS) -> ProjUnitary:
    """The diagonal rotation diag(e^{i theta}, e^{-i theta})."""
    with mp.workprec(precision_bits):
        ph = mp.expj(mpf(theta))
        return ProjUnitary(((ph, 0), (0, ph.conjugate())), precision_bits)


def u_of_alpha_beta(alpha, beta,
                    precision_bits: int = DEFAULT_PRECISION_BITS) -> ProjUnitary:
    """The SU(2) form [[alpha, beta], [-conj(beta), conj(alpha)]]."""
    with mp.workprec(precision_bits):
        alpha, beta = mpc(alpha), mpc(beta)
        rows = ((alpha, beta),
                (-beta.conjugate(), alpha.conjugate()))
    return ProjUnitary(rows, precision_bits)


def to_alpha_beta(u: ProjUnitary):
    """Extract (alpha, beta) with det normalized to 1 and a fixed sign.

    The representative has arg(alpha) in (-pi/2, pi/2]; when alpha is
    negligibly small the same convention is applied to beta instead, so
    the choice is stable for near-antidiagonal inputs.
    """
    bits = u.precision_bits
    with mp.workprec(bits):
        d = u.det()
        if abs(d) == 0:
            raise MalformedInput("singular matrix has no (alpha, beta) form")
        root = mp.sqrt(d)
        alpha = u.entries[0][0] / root
        beta = u.entries[0][1] / root
        anchor = alpha if abs(alpha) >= abs(beta) else beta
        a = mp.arg(anchor)
        if a <= -mp.pi / 2 or a > mp.pi / 2:
            alpha, beta = -alpha, -beta
        return alpha, beta


@dataclass(frozen=True)
class TuningAngles:
    theta1: object
    theta2: object
    bound_constant: object


def tuning_constant(delta=DEFAULT_DELTA, epsilon0=DEFAULT_EPSILON0):
    """C = sqrt(1/2 + ((2+delta)/epsilon0)^2 / 2)."""
    with mp.workprec(64):
        return mp.sqrt(mpf(1) / 2 + ((2 + mpf(delta)) / mpf(epsilon0)) ** 2 / 2)


def tune_diagonals(gamma1: ProjUnitary, gamma2: ProjUnitary,
                   delta=DEFAULT_DELTA, epsilon0=DEFAULT_EPSILON0) -> TuningAngles:
    """Diagonal rotations aligning gamma2 with gamma1.

    For gamma_l = u(alpha_l, beta_l) with ||alpha_1| - |alpha_2|| < delta
    and min |alpha_l| < sqrt(1 - epsilon0^2), the returned angles give
    d(gamma1, u(theta1) gamma2 u(theta2)) < C * ||alpha_1| - |alpha_2||
    with C = sqrt(1/2 + ((2+delta)/epsilon0)^2 / 2).
    """
    bits = max(gamma1.precision_bits, gamma2.precision_bits)
    with mp.workprec(bits):
        a1, b1 = to_alpha_beta(gamma1)
        a2, b2 = to_alpha_beta(gamma2)
        if abs(abs(a1) - abs(a2)) >= delta:
            raise HypothesisViolation(
                "| |alpha1| - |alpha2| | exceeds delta")
        if min(abs(a1), abs(a2)) ** 2 >= 1 - mpf(epsilon0) ** 2:
            raise HypothesisViolation(
                "both alphas too close to the unit circle; use the "
                "diagonal pipeline instead")
        aa1 = mp.arg(a1) if abs(a1) != 0 else mpf(0)
        aa2 = mp.arg(a2) if abs(a2) != 0 else mpf(0)
        ab1 = mp.arg(b1) if abs(b1) != 0 else mpf(0)
        ab2 = mp.arg(b2) if abs(b2) != 0 else mpf(0)
        theta1 = ((aa1 - aa2) + (ab1 - ab2)) / 2
        theta2 = ((aa1 - aa2) - (ab1 - ab2)) / 2
    return TuningAngles(theta1, theta2, tuning_constant(delta, epsilon0))


# --- named gates and entry parsing ---

GATE_NAMES = ("H", "T", "S", "X", "Y", "Z")


def named_gate(name: str, precision_bits: int = DEFAULT_PRECISION_BITS
               ) -> ProjUnitary:
    name = name.upper()
    with mp.workprec(precision_bits):
        if name == "H":
            r = 1 / mp.sqrt(2)
            rows = ((r, r), (r, -r))
        elif name == "T":
            ph = mp.expj(mp.pi / 8)
            rows = ((ph, 0), (0, ph.conjugate()))
        elif name == "S":
            rows = ((1, 0), (0, mpc(0, 1)))
        elif name == "X":
            rows = ((0, 1), (1, 0))
        elif name == "Y":
            rows = ((0, mpc(0, -1)), (mpc(0, 1), 0))
        elif name == "Z":
            rows = ((1, 0), (0, -1))
        else:
            raise MalformedInput(f"unknown gate {name!r}; "
                                 f"known: {', '.join(GATE_NAMES)}")
    return ProjUnitary(rows, precision_bits)


_NUM = r"(?:\d+(?:\.\d+)?(?:[eE][+-]?\d+)?(?:/\d+)?)"
_RE_FULL = re.compile(rf"([+-]?{_NUM})([+-]{_NUM}?)[iI]$")
_RE_IMAG = re.compile(rf"([+-]?{_NUM}?)[iI]$")
_RE_REAL = re.compile(rf"([+-]?{_NUM})$")


def _num_value(token: str):
    if token in ("", "+"):
        return mpf(1)
    if token == "-":
        return mpf(-1)
    sign = 1
    if token[0] in "+-":
        sign = -1 if token[0] == "-" else 1
        token = token[1:]
    if "/" in token:
        p, q = token.split("/")
        if "." in p or "e" in p.lower():
            raise MalformedInput(f"bad rational {token!r}")
        return sign * mpf(int(p)) / mpf(int(q))
    return sign * mpf(token)


def parse_complex(text: str, precision_bits: int = DEFAULT_PRECISION_BITS):
    """Parse 're', 'im i', or 're+im i' with rational or decimal parts.

    Examples: '1', '-0.5', '1/2', '0.5+0.25i', '1/2-1/3i', 'i', '-2i'.
    """
    s = text.strip().replace(" ", "")
    if not s:
        raise MalformedInput("empty complex literal")
    with mp.workprec(precision_bits):
        m = _RE_FULL.fullmatch(s)
        if m:
            return mpc(_num_value(m.group(1)), _num_value(m.group(2)))
        m = _RE_IMAG.fullmatch(s)
        if m:
            return mpc(0, _num_value(m.group(1)))
        m = _RE_REAL.fullmatch(s)
        if m:
            return mpc(_num_value(m.group(1)), 0)
    raise MalformedInput(f"cannot parse complex literal {text!r}")
