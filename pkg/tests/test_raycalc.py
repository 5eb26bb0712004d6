import pytest
from hypothesis import given, settings, strategies as st

from twofill import raycalc as rc
from twofill.numerics import DomainError

letters = st.integers(min_value=0, max_value=13)
words = st.lists(letters, max_size=8).map(rc.reduce_word)


def test_concat():
    g0, g1 = rc.word(rc.letter(0)), rc.word(rc.letter(1))
    assert rc.concatAtInfinity(g0, g1) == (g0 + g1, False)
    assert rc.concatAtInfinity(g0, rc.inverse(g0)) == (b"", True)


@given(words, words)
def test_inverse_anti_homomorphism(u, v):
    uv, _ = rc.concatAtInfinity(u, v)
    vu, _ = rc.concatAtInfinity(rc.inverse(v), rc.inverse(u))
    assert rc.inverse(uv) == vu


@given(words)
def test_order_reflexive(u):
    assert rc.orderCompare(u, u, 16) is rc.Order.Equal


@given(words, words)
@settings(max_examples=200)
def test_order_antisymmetric(u, v):
    a, b = rc.orderCompare(u, v, 64), rc.orderCompare(v, u, 64)
    flip = {rc.Order.Less: rc.Order.Greater, rc.Order.Greater: rc.Order.Less, rc.Order.Equal: rc.Order.Equal}
    assert b is flip[a]


def test_parse_and_show():
    w = rc.parse("g0 g1' g0'")
    assert rc.show(w) == "g0 g1' g0'"
    assert rc.parse(rc.show_rl(rc.alphaSeq(4))) == rc.alphaSeq(4)
    with pytest.raises(DomainError):
        rc.parse("g0 g0'")
    with pytest.raises(DomainError):
        rc.parse("x1")


def test_loop_blocks():
    assert rc.r(1)[0] >> 1 == 0
    assert rc.l(1)[0] >> 1 == 1
    assert rc.r(2)[0] >> 1 == 2
    with pytest.raises(DomainError):
        rc.r(0)


def test_loop_order_first_index():
    seq = [rc.l(1), rc.bar(rc.l(1)), rc.bar(rc.r(1)), rc.r(1)]
    assert all(rc.orderCompare(a, b) is rc.Order.Less for a, b in zip(seq, seq[1:]))


def test_loop_order_pattern():
    pat = rc.orderOfLoopsPattern(6)
    assert len(pat) == 24
    for i, a in enumerate(pat):
        for b in pat[i + 1:]:
            assert rc.orderCompare(a, b) is rc.Order.Less


def test_order_decided_at_divergence():
    # after g0 the back direction is g0'; read from just after it, g1 comes before g2
    u, v = rc.parse("g0 g1"), rc.parse("g0 g2")
    assert rc.common_prefix(u, v) == 1
    assert rc.orderCompare(u, v, 4) is rc.Order.Greater


def test_substitution():
    assert rc.substitutionF(rc.r(2)) == rc.r(3)
    assert rc.substitutionF(rc.bar(rc.l(3))) == rc.bar(rc.l(4))
    a3 = rc.join(rc.r(1), rc.l(1), rc.bar(rc.r(1)), rc.r(2), rc.r(1), rc.bar(rc.l(1)), rc.bar(rc.r(1)))
    assert rc.substitutionF(rc.alphaSeq(1)) == rc.alphaSeq(3) == a3
    assert rc.alphaSeq(2) == rc.join(rc.r(1), rc.l(1), rc.bar(rc.r(1)))


@pytest.mark.parametrize("k", range(1, 13))
def test_alpha_recursion(k):
    assert len(rc.alphaSeq(k + 1)) == 2 * len(rc.alphaSeq(k)) + 1
    assert rc.substitutionF(rc.alphaSeq(k)) == rc.alphaSeq(k + 2)


def test_fixed_word_prefix():
    assert rc.alphaSeq(13)[:4095] == rc.fixed_word_prefix(4095)
    assert rc.fixed_word_prefix(100) == rc.fixed_word_prefix(1000)[:100]


def test_gamma_degenerates_to_alpha():
    one = lambda k: k
    fam = rc.GammaFamily(1, one, one)
    assert fam.G(1, 1) == rc.r(1)
    for j in range(1, 8):
        assert fam.G(1, j) == rc.alphaSeq(j)


def test_gamma_two_first_step():
    q1 = rc.default_seq(2)(1)
    g = rc.gammaFamily(2, j=1)
    assert g[0] == rc.r(q1)
    assert g[1] == rc.join(rc.r(q1 + 1), rc.r(q1))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_gamma_prefix_chain(n):
    fam = rc.GammaFamily(n).build(8)
    for i in range(1, n + 1):
        for j in range(1, 8):
            assert fam.gamma[i, j + 1].startswith(fam.gamma[i, j])


def test_gap_condition_enforced():
    with pytest.raises(DomainError):
        rc.GammaFamily(3, lambda k: k, lambda k: k).build(4)


def test_monotonicity_small():
    rows = rc.monotonicityCheck(1, 1)
    assert rows[0].status == "Verified"
    rows = rc.monotonicityCheck(2, 2)
    assert rows and all(r.status == "Verified" for r in rows)
    assert any(r.label.startswith("(4") for r in rows)


def test_identical_words_not_refuted():
    same = rc.Inequality("same", rc.r(1), rc.r(1), strict=True)
    assert rc.evaluate(same) == "Verified"


def test_crosses_r1_short_witness():
    g = rc.fixed_word_ray()
    st, wit = rc.crossesLoop(g, rc.r(1), 6)
    assert st == "Crosses" and len(wit) <= 12


def test_axis_not_crossed():
    axis = rc.RayLimit.from_word(rc.r(1) * 80)
    assert rc.crossesLoop(axis, rc.r(1), 64)[0] == "NoCrossingFound"


@pytest.mark.parametrize("k", range(0, 7))
def test_crosses_single_letters(k):
    g = rc.RayLimit.from_word(rc.fixed_word_prefix(1 << 12))
    assert rc.crossesLoop(g, rc.word(rc.letter(k)), 64)[0] == "Crosses"


def test_crosses_rejects_bad_loops():
    g = rc.fixed_word_ray()
    with pytest.raises(DomainError):
        rc.crossesLoop(g, b"", 4)
    with pytest.raises(DomainError):
        rc.crossesLoop(g, rc.parse("g0 g1 g0'"), 4)
