"""Synthesis of arbitrary projective unitaries over the gate set.

A generic target g = u(alpha, beta) is approximated as u(theta1) *
gamma * u(theta2): the central gamma is a quaternion of reduced norm
eta^k chosen so that |alpha(gamma)| matches |alpha(g)| to epsilon, and
the two diagonal rotations that align the phases are synthesized by the
diagonal pipeline.  The central norm candidates s = x0^2 + x1^2 live in
a planar lattice band of width ~ eta^k * epsilon, which first contains
representable points when 59^k * epsilon reaches O(1), so k lands at
log_59(1/eps) + O(1): one third of the tau budget, with the remaining
two thirds split between the diagonal words.

Targets that are already close to a diagonal rotation (or to a diagonal
times the antidiagonal unit j) skip the sandwich and go straight to the
diagonal pipeline; targets whose alpha pins one of the tuning lemma's
hypotheses (|alpha| near 1 or near 0) are first multiplied by rho,
which moves |alpha| into [(1 - eps0)/sqrt(2), (1 + eps0)/sqrt(2)], and
the word for rho^-1 is appended at the end.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from typing import Iterator

from mpmath import mp, mpf

from .diagonal import SYNTH_ABANDON_THRESHOLD, synth_diagonal
from .errors import (Abandoned, BudgetExhausted, HypothesisViolation,
                     MalformedInput, NotInGroup, NotRepresentable,
                     PrecisionInsufficient)
from .golden import GoldenInt, embed, eta_power, sign_minus, sign_plus
from .goldengrid import stream_center_out
from .icosian import (RHO, GateWord, GoldenQuat, evaluate_word,
                      exact_synthesize, generate_c60)
from .sots import sots_exact
from .unitary import (DEFAULT_DELTA, DEFAULT_EPSILON0, ProjUnitary, distance,
                      precision_for, to_alpha_beta, tune_diagonals,
                      tuning_constant, u_of_theta)

__all__ = ["SynthConfig", "SynthReport", "candidate_norms", "build_central",
           "synth_general"]


@dataclass(frozen=True)
class SynthConfig:
    """Knobs for synth_general.

    Default mode treats epsilon as the working accuracy: the guarantee
    is achieved < (C + 2) * epsilon with C the tuning constant, and the
    search actually stops once the measured distance beats
    1.5 * epsilon (a couple of shells past the first nonempty band make
    the tuning term negligible, so this costs O(1) extra taus).  Strict
    mode shrinks the internal epsilon to epsilon / (C + 2) up front so
    the guarantee itself lands under the requested value.
    """

    epsilon: float
    epsilon0: float = DEFAULT_EPSILON0
    delta: float = DEFAULT_DELTA
    strict: bool = False
    k_cap: int | None = None
    abandon_threshold: int = SYNTH_ABANDON_THRESHOLD
    seed: int = 0

    def __post_init__(self):
        if not 0 < self.epsilon < self.delta:
            raise MalformedInput("need 0 < epsilon < delta")
        if not 0 < self.epsilon0 < 1:
            raise MalformedInput("epsilon0 must be in (0, 1)")
        if self.k_cap is not None and self.k_cap < 0:
            raise MalformedInput("k_cap must be nonnegative")

    def internal_epsilon(self):
        if self.strict:
            c = tuning_constant(self.delta, self.epsilon0)
            return mpf(self.epsilon) / (c + 2)
        return mpf(self.epsilon)


@dataclass(frozen=True)
class SynthReport:
    """Where a synthesized word spent its taus, and how close it got.

    central_tau and outer_tau count the word pieces before seam
    cancellation; word.tau_count can be slightly smaller.  k is the
    central shell exponent (0 for targets that never needed a central
    element), and abandoned_count totals every factorization the
    abandonment threshold discarded along the way.
    """

    word: GateWord
    central_tau: int
    outer_tau: tuple[int, int]
    achieved: object
    k: int
    abandoned_count: int

    @property
    def tau_count(self) -> int:
        return self.word.tau_count


def candidate_norms(k: int, abs_alpha, epsilon) -> Iterator[GoldenInt]:
    """Norm candidates s = x0^2 + x1^2 for a central element at shell k.

    Streams every s in Z[phi] with both embeddings inside
    [0, embedding of eta^k] and sigma_plus(s) in the band
    |sigma_plus(s) - |alpha|^2 eta^k| < eps * |alpha| * eta^k, nearest
    the band center first.  Points come from the padded rectangle
    enumerator; the box constraints are re-checked with exact integer
    signs and the band numerically, so padding only ever admits
    near-boundary points for the recheck to reject, never drops one.
    """
    if not 0 < abs_alpha < 1:
        raise MalformedInput("abs_alpha must be in (0, 1)")
    if k < 0:
        raise MalformedInput("k must be nonnegative")
    a = mpf(abs_alpha)
    eps = mpf(epsilon)
    ek = eta_power(k)
    hp = embed(ek, "plus", mp.prec)
    hm = embed(ek, "minus", mp.prec)
    center = a * a * hp
    half = eps * a * hp
    lo = center - half
    hi = min(hp, center + half)
    if lo < 0:
        lo = mpf(0)
    for s in stream_center_out(lo, hi, mpf(0), hm, center=center):
        if sign_plus(s) < 0 or sign_minus(s) < 0:
            continue
        d = ek - s
        if sign_plus(d) < 0 or sign_minus(d) < 0:
            continue
        if abs(embed(s, "plus", mp.prec) - center) < half:
            yield s


def build_central(k: int, s: GoldenInt, rng: random.Random | None = None,
                  threshold: int = SYNTH_ABANDON_THRESHOLD
                  ) -> GoldenQuat | None:
    """Quaternion with reduced norm exactly eta^k and x0^2 + x1^2 = s.

    Returns None when s or eta^k - s has no two-square certificate, so
    the caller can move on to the next candidate; Abandoned propagates
    for the caller to count.
    """
    try:
        x0, x1 = sots_exact(s, rng=rng, threshold=threshold)
        x2, x3 = sots_exact(eta_power(k) - s, rng=rng, threshold=threshold)
    except NotRepresentable:
        return None
    q = GoldenQuat(x0, x1, x2, x3)
    assert q.nrd() == eta_power(k)
    return q


def synth_general(g: ProjUnitary, cfg: SynthConfig) -> SynthReport:
    """Approximate g over the gate set to the configured accuracy.

    Routing, cheapest first: snap to a C60 element if one is already
    within epsilon; peel off a diagonal rotation (or a diagonal times
    the antidiagonal unit j) when the remainder is below epsilon / 2;
    otherwise run the sandwich search, twisting by rho first whenever
    |alpha| sits too close to 0 or 1 for the tuning lemma.  The outer
    diagonals get budget 0.6 * epsilon each, so any in-band candidate
    beats (C + 2) * epsilon and the 1.5 * epsilon stopping rule is
    reachable as soon as the shell makes the band spacing fine enough.

    Raises BudgetExhausted past k_cap and PrecisionInsufficient when
    the target matrix is stored too coarsely to certify distances at
    epsilon.
    """
    eps = cfg.internal_epsilon()
    bits = precision_for(float(eps))
    if mpf(2) ** (-(g.precision_bits // 2)) > eps / 8:
        raise PrecisionInsufficient(
            f"target stored at {g.precision_bits} bits cannot certify "
            f"distances at {float(eps):.3g}")
    stats = {"abandoned": 0}
    rng = random.Random(cfg.seed)
    with mp.workprec(bits):
        eps = mpf(eps)
        bound = (tuning_constant(cfg.delta, cfg.epsilon0) + 2) * eps
        goal = bound if cfg.strict else mpf("1.5") * eps
        table = generate_c60()

        best_seg, best_d = "", mp.inf
        for q, seg in table:
            d = distance(g, q.to_unitary(bits))
            if d < best_d:
                best_seg, best_d = seg, d
        if best_d < eps:
            return SynthReport(GateWord((best_seg,)), 0, (0, 0), best_d, 0, 0)

        alpha, _ = to_alpha_beta(g)
        theta_d = mp.arg(alpha) if abs(alpha) > 0 else mpf(0)
        d0 = distance(g, u_of_theta(theta_d, bits))
        if d0 < eps / 2:
            _, word, _ = synth_diagonal(
                theta_d, eps - d0, precision_bits=bits,
                abandon_threshold=cfg.abandon_threshold, stats=stats)
            achieved = distance(g, evaluate_word(word, bits))
            return SynthReport(word, 0, (word.tau_count, 0), achieved, 0,
                               stats["abandoned"])

        j_quat = GoldenQuat(0, 0, 1, 0)
        gj = g @ j_quat.to_unitary(bits).dagger()
        aj, _ = to_alpha_beta(gj)
        theta_a = mp.arg(aj) if abs(aj) > 0 else mpf(0)
        d1 = distance(gj, u_of_theta(theta_a, bits))
        if d1 < eps / 2:
            _, word, _ = synth_diagonal(
                theta_a, eps - d1, precision_bits=bits,
                abandon_threshold=cfg.abandon_threshold, stats=stats)
            word = word.concat(GateWord((table.word_for(j_quat),)))
            achieved = distance(g, evaluate_word(word, bits))
            return SynthReport(word, 0, (word.tau_count, 0), achieved, 0,
                               stats["abandoned"])

        g_work, tail = g, None
        abs_a = abs(alpha)
        eps0 = mpf(cfg.epsilon0)
        if abs_a <= eps0 or abs_a ** 2 >= 1 - eps0 ** 2:
            g_work = g @ RHO.to_unitary(bits)
            tail = GateWord((table.inverse_word_for(RHO),))
            abs_a = abs(to_alpha_beta(g_work)[0])

        k_cap = cfg.k_cap
        if k_cap is None:
            k_cap = int(mp.ceil(mp.log(1 / eps) / mp.log(59))) + 12
        outer_eps = mpf("0.6") * eps
        best = None
        for k in range(k_cap + 1):
            for s in candidate_norms(k, abs_a, eps):
                try:
                    q = build_central(k, s, rng, cfg.abandon_threshold)
                except Abandoned:
                    stats["abandoned"] += 1
                    continue
                if q is None:
                    continue
                try:
                    central = exact_synthesize(q)
                except NotInGroup:
                    continue
                try:
                    tuned = tune_diagonals(g_work, q.to_unitary(bits),
                                           cfg.delta, cfg.epsilon0)
                except HypothesisViolation:
                    continue
                try:
                    _, w1, _ = synth_diagonal(
                        tuned.theta1, outer_eps, precision_bits=bits,
                        abandon_threshold=cfg.abandon_threshold, stats=stats)
                    _, w2, _ = synth_diagonal(
                        tuned.theta2, outer_eps, precision_bits=bits,
                        abandon_threshold=cfg.abandon_threshold, stats=stats)
                except BudgetExhausted:
                    continue
                word = w1.concat(central).concat(w2)
                if tail is not None:
                    word = word.concat(tail)
                achieved = distance(g, evaluate_word(word, bits))
                report = SynthReport(word, central.tau_count,
                                     (w1.tau_count, w2.tau_count), achieved,
                                     k, stats["abandoned"])
                if achieved < goal:
                    return report
                if achieved < bound and (best is None
                                         or achieved < best.achieved):
                    best = report
        if best is not None:
            return replace(best, abandoned_count=stats["abandoned"])
    raise BudgetExhausted(
        f"no approximation within {cfg.epsilon} up to central shell {k_cap}")
