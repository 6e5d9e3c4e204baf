import random

import pytest

from icogate.errors import MalformedInput, NotInGroup
from icogate.golden import ETA, GoldenInt, eta_valuation, exact_div, phi_power
from icogate.icosian import (GateWord, GoldenQuat, ONE_QUAT, RHO, SIGMA, TAU,
                             canonical, evaluate_word, exact_synthesize,
                             generate_c60, peel_candidates, tau_count,
                             word_to_quat)
from icogate.unitary import ProjUnitary, distance

PROJ_TOL = 1e-15


def rand_quat(rng, span=4):
    return GoldenQuat(*(GoldenInt(rng.randint(-span, span),
                                  rng.randint(-span, span))
                        for _ in range(4)))


def test_generator_norms():
    assert RHO.nrd() == GoldenInt(4, 0)
    assert SIGMA.nrd() == GoldenInt(4, 4)  # 4*phi^2
    assert TAU.nrd() == ETA
    assert TAU.x0 == GoldenInt(0, 0)  # pure quaternion: tau is an involution


def test_nrd_multiplicative():
    rng = random.Random(3)
    for _ in range(200):
        a, b = rand_quat(rng), rand_quat(rng)
        assert (a * b).nrd() == a.nrd() * b.nrd()


def test_conjugate_gives_norm():
    rng = random.Random(4)
    for _ in range(50):
        q = rand_quat(rng)
        n = q.nrd()
        assert q * q.conjugate() == GoldenQuat(n, 0, 0, 0)
        assert (q.conjugate()).conjugate() == q


def test_tau_squared_is_scalar():
    assert TAU * TAU == GoldenQuat(-ETA, 0, 0, 0)


def test_canonical_collapses_scalars():
    rng = random.Random(5)
    for _ in range(50):
        q = rand_quat(rng)
        if all(v == 0 for v in q.coords()):
            continue
        rep = canonical(q)
        assert canonical(rep) == rep
        for scalar in (GoldenInt(-3, 0), phi_power(4), -phi_power(-3),
                       GoldenInt(2, 0) * phi_power(1)):
            assert canonical(q * scalar) == rep


def test_canonical_rejects_zero():
    with pytest.raises(MalformedInput):
        canonical(GoldenQuat(0, 0, 0, 0))


def test_to_unitary_matches_known_matrices():
    ident = ONE_QUAT.to_unitary()
    eye = ProjUnitary(((1, 0), (0, 1)))
    assert distance(ident, eye) < PROJ_TOL
    rho_ref = ProjUnitary(((1, 1), (1j, -1j)))
    assert distance(RHO.to_unitary(), rho_ref) < PROJ_TOL


def test_c60_table():
    table = generate_c60()
    assert len(table) == 60
    assert table.word_for(ONE_QUAT) == ""
    assert table.word_for(RHO) == "r"
    assert table.word_for(SIGMA) == "s"
    # every stored word reproduces its element
    for q, word in table:
        assert canonical(word_to_quat(GateWord((word,)))) == q
        assert eta_valuation(q.nrd()) == 0
    # closed under multiplication modulo scalars
    rng = random.Random(6)
    quats = [q for q, _ in table]
    for _ in range(100):
        a, b = rng.choice(quats), rng.choice(quats)
        assert canonical(a * b) in quats


def test_c60_inverse_words():
    table = generate_c60()
    for q, _ in table:
        inv = table.inverse_word_for(q)
        prod = q * word_to_quat(GateWord((inv,)))
        assert canonical(prod) == canonical(ONE_QUAT)


def test_c60_deterministic():
    first = [w for _, w in generate_c60()]
    generate_c60.cache_clear()
    assert [w for _, w in generate_c60()] == first


def test_word_text_round_trip():
    for text, segs in [
        ("()", ("",)),
        ("(rs)t(r)t()", ("rs", "r", "")),
        ("()t(ssr)t()", ("", "ssr", "")),
    ]:
        word = GateWord.parse(text)
        assert word.segments == segs
        assert str(word) == text
        assert GateWord.parse(str(word)) == word


def test_word_bare_parse():
    assert GateWord.parse("rstrr").segments == ("rs", "rr")
    assert GateWord.parse("").segments == ("",)
    assert GateWord.parse("t").segments == ("", "")
    assert GateWord.parse(" (rs) t (r) ") == GateWord(("rs", "r"))
    with pytest.raises(MalformedInput):
        GateWord.parse("tt")  # an inner segment would be empty


def test_word_validation():
    with pytest.raises(MalformedInput):
        GateWord(("r", "", "s"))  # inner empty
    with pytest.raises(MalformedInput):
        GateWord(("rx",))
    with pytest.raises(MalformedInput):
        GateWord.parse("(r)t(q)")
    with pytest.raises(MalformedInput):
        GateWord.parse("(r")


def test_word_json_round_trip():
    word = GateWord(("rs", "r", ""))
    data = word.to_json()
    assert data == {"segments": ["rs", "r", ""], "tau_count": 2}
    assert GateWord.from_json(data) == word
    with pytest.raises(MalformedInput):
        GateWord.from_json({"segments": ["r"], "tau_count": 3})


def test_word_concat_matches_quat_product():
    rng = random.Random(7)
    table = generate_c60()
    words = [w for _, w in table]
    for _ in range(40):
        a = random_word(rng, words, rng.randint(0, 3))
        b = random_word(rng, words, rng.randint(0, 3))
        joined = a.concat(b)
        assert canonical(word_to_quat(joined)) == canonical(
            word_to_quat(a) * word_to_quat(b))


def test_concat_cancels_tau_tau():
    tau_word = GateWord(("", ""))
    assert tau_word.concat(tau_word) == GateWord(("",))
    a = GateWord(("r", ""))
    b = GateWord(("", "s"))
    assert a.concat(b) == GateWord(("rs",))


def random_word(rng, seg_pool, k):
    segs = [rng.choice(seg_pool)]
    for i in range(k):
        seg = rng.choice(seg_pool)
        while 0 < i < k and not seg:
            seg = rng.choice(seg_pool)
        segs.append(seg)
    # enforce inner nonempty
    for i in range(1, len(segs) - 1):
        while not segs[i]:
            segs[i] = rng.choice([w for w in seg_pool if w])
    return GateWord(tuple(segs))


def test_evaluate_word_basics():
    eye = ProjUnitary(((1, 0), (0, 1)))
    assert distance(evaluate_word(GateWord(("",))), eye) < PROJ_TOL
    tau_sq = word_to_quat(GateWord(("", "")).concat(GateWord(("", ""))))
    assert canonical(tau_sq) == canonical(ONE_QUAT)
    assert distance(evaluate_word(GateWord(("r",))),
                    RHO.to_unitary()) < PROJ_TOL


def test_exact_synthesize_identity_and_tau():
    w = exact_synthesize(ONE_QUAT)
    assert w == GateWord(("",))
    wt = exact_synthesize(TAU)
    assert wt.tau_count == 1
    assert distance(evaluate_word(wt), TAU.to_unitary()) < PROJ_TOL


def test_exact_synthesize_rejects_outsiders():
    with pytest.raises(NotInGroup):
        exact_synthesize(GoldenQuat(1, 1, 0, 0))  # nrd 2, not a gate


def test_exact_synthesis_round_trip():
    rng = random.Random(8)
    table = generate_c60()
    words = [w for _, w in table]
    done = 0
    while done < 30:
        k = rng.randint(0, 8)
        word = random_word(rng, words, k)
        q = word_to_quat(word)
        if tau_count(q) != k:
            continue  # collision made the word reducible; resample
        redone = exact_synthesize(q)
        assert redone.tau_count == k
        assert canonical(word_to_quat(redone)) == canonical(q)
        done += 1


def test_peeling_unique():
    rng = random.Random(9)
    table = generate_c60()
    words = [w for _, w in table]
    for _ in range(10):
        word = random_word(rng, words, 4)
        gamma = canonical(word_to_quat(word))
        while eta_valuation(gamma.nrd()) > 0:
            cands = peel_candidates(gamma)
            assert len(cands) == 1
            quotient = gamma * (cands[0] * TAU)
            parts = [exact_div(x, ETA) for x in quotient.parts()]
            gamma = canonical(GoldenQuat(*parts))
