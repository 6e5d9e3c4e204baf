import pytest
from mpmath import mp, mpf

from icogate.diagonal import (DiagonalProblem, _fold_theta, solve_x0,
                              solve_x1, solve_x23, synth_diagonal)
from icogate.errors import BudgetExhausted, MalformedInput
from icogate.golden import GoldenInt, embed, eta_power, eta_valuation
from icogate.icosian import GoldenQuat, canonical, evaluate_word
from icogate.unitary import distance, precision_for, u_of_theta

BITS = 160


def brute_x1(prob):
    """Direct scan of a safely oversized (a, b) box against the solve_x1
    inequalities, at the same precision the solver uses."""
    theta, eps, m = mpf(prob.theta), mpf(prob.epsilon), prob.m_exp
    hp = mp.power(embed(eta_power(1), "plus", mp.prec), mpf(m) / 2)
    hm = mp.power(abs(embed(eta_power(1), "minus", mp.prec)), mpf(m) / 2)
    s, c = mp.sin(theta), mp.cos(theta)
    mu = hp * (1 - eps ** 2) * s
    w = hp * abs(c) * mp.sqrt(2 - eps ** 2) * eps
    box_d = int(mp.floor((hp + hm) / mp.sqrt(5))) + 2
    box_a = int(mp.floor(hp + box_d * 1.7)) + 2
    out = set()
    for a in range(-box_a, box_a + 1):
        for b in range(-box_d, box_d + 1):
            x = GoldenInt(a, b)
            xp = embed(x, "plus", mp.prec)
            xm = embed(x, "minus", mp.prec)
            if (xp * s <= hp * (1 - eps ** 2) and abs(xp) <= hp
                    and abs(xm) <= hm and abs(xp - mu) <= w):
                out.add(x)
    return out


def brute_x0(prob, x1):
    theta, eps, m = mpf(prob.theta), mpf(prob.epsilon), prob.m_exp
    hp = mp.power(embed(eta_power(1), "plus", mp.prec), mpf(m) / 2)
    s, c = mp.sin(theta), mp.cos(theta)
    x1p = embed(x1, "plus", mp.prec)
    x1m = embed(x1, "minus", mp.prec)
    ep = mp.power(embed(eta_power(1), "plus", mp.prec), m)
    em = mp.power(abs(embed(eta_power(1), "minus", mp.prec)), m)
    sp = mp.sqrt(max(mpf(0), ep - x1p ** 2))
    sm = mp.sqrt(max(mpf(0), em - x1m ** 2))
    lo_f = hp * (1 - eps ** 2) - x1p * s
    hi_f = hp - x1p * s
    box_d = int(mp.floor((sp + sm) / mp.sqrt(5))) + 2
    box_a = int(mp.floor(sp + box_d * 1.7)) + 2
    out = set()
    for a in range(-box_a, box_a + 1):
        for b in range(-box_d, box_d + 1):
            x = GoldenInt(a, b)
            xp = embed(x, "plus", mp.prec)
            xm = embed(x, "minus", mp.prec)
            if lo_f <= xp * c <= hi_f and abs(xp) <= sp and abs(xm) <= sm:
                out.add(x)
    return out


@pytest.mark.parametrize("m", [0, 1, 2, 3, 4])
@pytest.mark.parametrize("theta,eps", [(0.4, 0.3), (0.3926990817, 0.15)])
def test_solve_x1_matches_brute_force(m, theta, eps):
    with mp.workprec(BITS):
        prob = DiagonalProblem(theta, eps, m)
        got = list(solve_x1(prob))
        assert set(got) == brute_x1(prob)
        assert len(got) == len(set(got))
        # center-out ordering, ties up to representation noise
        mu = (mp.power(embed(eta_power(1), "plus", mp.prec), mpf(m) / 2)
              * (1 - mpf(eps) ** 2) * mp.sin(theta))
        dists = [abs(embed(x, "plus", mp.prec) - mu) for x in got]
        assert all(d1 - d2 <= mp.mpf(2) ** -60
                   for d1, d2 in zip(dists, dists[1:]))


@pytest.mark.parametrize("m", [0, 1, 2, 3])
def test_solve_x0_matches_brute_force(m):
    with mp.workprec(BITS):
        prob = DiagonalProblem(0.4, 0.35, m)
        found_any = False
        for x1 in solve_x1(prob):
            got = solve_x0(prob, x1)
            assert set(got) == brute_x0(prob, x1)
            assert len(got) == len(set(got))
            # sorted by decreasing trace overlap
            s, c = mp.sin(mpf(0.4)), mp.cos(mpf(0.4))
            x1p = embed(x1, "plus", mp.prec)
            overlaps = [embed(x, "plus", mp.prec) * c + x1p * s for x in got]
            assert all(o1 - o2 >= -mp.mpf(2) ** -60
                       for o1, o2 in zip(overlaps, overlaps[1:]))
            found_any = found_any or bool(got)
        if m >= 1:
            assert found_any


def test_solve_x23_zero_residual():
    # eta^0 - 1^2 - 0^2 = 0
    pair = solve_x23(0, GoldenInt(1), GoldenInt(0))
    assert pair == (GoldenInt(0), GoldenInt(0))


def test_solve_x23_unit_residual():
    # eta^0 - 0 - 0 = 1 = 1^2 + 0^2
    pair = solve_x23(0, GoldenInt(0), GoldenInt(0))
    x2, x3 = pair
    assert x2 * x2 + x3 * x3 == GoldenInt(1)


def test_solve_x23_rejects_eta():
    # eta has norm 59 = 3 mod 4 to odd multiplicity: not a sum of two
    # squares, so the m=1 shell with x0 = x1 = 0 must report None
    assert solve_x23(1, GoldenInt(0), GoldenInt(0)) is None


def test_solve_x23_rejects_negative_residual():
    # eta^0 - 2^2 < 0 in both embeddings
    assert solve_x23(0, GoldenInt(2), GoldenInt(0)) is None


def test_fold_theta_period_and_range():
    with mp.workprec(96):
        for t in [0, 0.3, -0.3, 1.5, 2.8, -2.9]:
            base = _fold_theta(t)
            assert -mp.pi / 2 <= base < mp.pi / 2
            for k in (-2, -1, 1, 2):
                assert abs(_fold_theta(t + k * mp.pi) - base) < mpf(2) ** -80
        assert _fold_theta(mp.pi / 2) == -mp.pi / 2


def test_problem_validation():
    with pytest.raises(MalformedInput):
        DiagonalProblem(0.1, 0, 2)
    with pytest.raises(MalformedInput):
        DiagonalProblem(0.1, 1.5, 2)
    with pytest.raises(MalformedInput):
        DiagonalProblem(0.1, 0.5, -1)
    with pytest.raises(MalformedInput):
        DiagonalProblem(mp.pi, 0.5, 2)  # cos < 0: not folded


def test_synth_identity_at_zero():
    q, word, achieved = synth_diagonal(0, 1e-3)
    assert word.tau_count == 0
    assert achieved == 0
    assert canonical(q) == canonical(GoldenQuat(1, 0, 0, 0))


def test_synth_snaps_to_quarter_turn():
    # u(pi/2) = diag(i, -i) is in C60; nearby angles snap to it
    q, word, achieved = synth_diagonal(mp.pi / 2, 1e-6)
    assert word.tau_count == 0
    assert achieved < 1e-12
    q2, word2, achieved2 = synth_diagonal(mp.pi / 2 + 1e-9, 1e-6)
    assert word2.tau_count == 0
    assert achieved2 < 1e-6


def test_synth_pi_over_4():
    q, word, achieved = synth_diagonal(mp.pi / 4, 1e-4)
    assert achieved < 1e-4
    assert word.tau_count >= 1


def test_synth_word_and_quat_agree():
    bits = precision_for(1e-5)
    q, word, achieved = synth_diagonal(-0.3, 1e-5)
    assert achieved < 1e-5
    with mp.workprec(bits):
        gap = distance(evaluate_word(word, bits), q.to_unitary(bits))
        assert gap < mpf(2) ** (-bits // 2)
        # the raw search result has nrd exactly eta^m; the word factors
        # its primitive part, whose eta-valuation is the tau-count
        m = eta_valuation(q.nrd())
        assert q.nrd() == eta_power(m)
        assert word.tau_count == eta_valuation(canonical(q).nrd())
        assert word.tau_count <= m
        assert distance(u_of_theta(-0.3, bits),
                        evaluate_word(word, bits)) == achieved


def test_synth_verifies_against_target():
    # the winner must satisfy the advertised bound, not just the shell
    # feasibility conditions
    for theta, eps in [(0.7, 1e-3), (1.2, 1e-3)]:
        _, _, achieved = synth_diagonal(theta, eps)
        assert achieved < eps


def test_synth_budget_exhaustion():
    with pytest.raises(BudgetExhausted):
        synth_diagonal(0.4, 1e-6, m_cap=1)


def test_synth_rejects_bad_epsilon():
    with pytest.raises(MalformedInput):
        synth_diagonal(0.3, 0)
    with pytest.raises(MalformedInput):
        synth_diagonal(0.3, 1.0)


def test_tau_count_tracks_epsilon():
    # log_59(1/eps^3) for eps 1e-3 is about 5.1; the count should land
    # near 7/3 of... the shell exponent itself, i.e. single digits, and
    # never above the cap that the m-loop enforces
    taus = []
    for theta in (0.35, 0.8, 1.1, -0.6):
        _, word, achieved = synth_diagonal(theta, 1e-3)
        assert achieved < 1e-3
        taus.append(word.tau_count)
    cap = int(mp.ceil(3 * mp.log(10 ** 3) / mp.log(59))) + 12
    assert all(t <= cap for t in taus)
    taus.sort()
    assert taus[len(taus) // 2] <= 13
