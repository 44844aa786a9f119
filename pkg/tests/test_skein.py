import random

import pytest

from lmovkit.exactring import LaurentQT, RationalQT, qint
from lmovkit.partitions import enumerate_partitions, kappa
from lmovkit.skein import lookup
from lmovkit.skein.braids import BraidWord, cable, closure_analysis, parse_braid
from lmovkit.skein.hecke import (
    DELTA,
    TRACE_C,
    Z,
    DenseElement,
    HeckeElement,
    framed_trace,
    markov_trace,
    represent,
)
from lmovkit.skein.invariants import (
    MAX_LEVEL,
    ColoredLink,
    central_idempotent,
    colored_invariant,
    eigen_data,
    homfly,
)
from lmovkit.skein.oracle import framed_skein, homfly_skein
from lmovkit.symfun import unknot_invariant

S = LaurentQT.monomial(1, 0)
A_ = LaurentQT.monomial(0, 1)
REGRESSION = ["unknot", "unlink2", "hopf", "trefoil", "figure8", "whitehead", "T(2,4)", "T(2,5)"]


def _random_braid(rng, n, length):
    return BraidWord(n, tuple(rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(length)))


def _random_braids(count, seed=7):
    rng = random.Random(seed)
    return [_random_braid(rng, rng.randint(2, 4), rng.randint(0, 7)) for _ in range(count)]


# ---------------------------------------------------------------- braids


def test_parse_and_print():
    b = parse_braid("s1 -s2 s1")
    assert b.strands == 3 and b.letters == (1, -2, 1)
    assert str(b) == "s1 -s2 s1"
    assert b.inverse().letters == (-1, 2, -1)
    assert b.mirror().letters == (-1, 2, -1)
    assert parse_braid("s1 -s1 s2", 3).free_reduce().letters == (2,)
    with pytest.raises(ValueError):
        parse_braid("s3", 3)


def test_closure_analysis_examples():
    hopf = closure_analysis(lookup("hopf"))
    assert hopf.L == 2 and hopf.writhes == (0, 0) and hopf.linking[0][1] == 1
    tref = closure_analysis(lookup("trefoil"))
    assert tref.L == 1 and tref.writhes == (3,)
    assert closure_analysis(lookup("figure8")).writhes == (0,)
    assert closure_analysis(lookup("unlink2")).L == 2
    wh = closure_analysis(lookup("whitehead"))
    assert wh.L == 2 and wh.linking[0][1] == 0
    assert closure_analysis(lookup("T(2,4)")).linking[0][1] == 2


def test_cable_of_single_crossing():
    word, offsets = cable(parse_braid("s1"), (2,))
    assert word == BraidWord(4, (2, 3, 1, 2))
    assert offsets == (0, 2)


@pytest.mark.parametrize("name", ["trefoil", "figure8", "T(2,5)"])
@pytest.mark.parametrize("d", [1, 2, 3])
def test_cable_scales_self_writhe(name, d):
    b = lookup(name)
    lp = closure_analysis(b)
    cab, _ = cable(b, (d,))
    assert cab.strands == d * b.strands
    assert sum(1 if x > 0 else -1 for x in cab.letters) == d * d * lp.writhes[0]
    # a d-cable of a knot closes to d components
    assert closure_analysis(cab).L == d


def test_unknown_link_raises():
    with pytest.raises(KeyError):
        lookup("no-such-knot")


# ---------------------------------------------------------------- Hecke algebra


def test_quadratic_and_braid_relations():
    g = lambda i, s=1: HeckeElement.generator(4, i, s)
    one = HeckeElement.identity(4)
    assert g(1) * g(1) == g(1).scale(Z) + one
    assert g(1) * g(1, -1) == one
    assert g(1) * g(2) * g(1) == g(2) * g(1) * g(2)
    assert g(1) * g(3) == g(3) * g(1)


def test_trace_normalization():
    assert markov_trace(HeckeElement.identity(3)) == RationalQT(1)
    assert markov_trace(HeckeElement.generator(2, 1)) == TRACE_C
    g = lambda i: HeckeElement.generator(3, i)
    assert markov_trace(g(1) * g(2)) == TRACE_C * TRACE_C
    assert TRACE_C == RationalQT(A_) / DELTA


def test_dense_and_sparse_traces_agree():
    for b in _random_braids(15, seed=3):
        sparse = framed_trace(represent(b))
        dense = DenseElement.identity(b.strands).apply_word(b.letters).framed_trace()
        assert sparse == dense


def test_unknot_and_unlink():
    assert homfly(lookup("unknot")) == DELTA
    assert homfly(lookup("unlink2")) == DELTA * DELTA
    assert DELTA == RationalQT(A_ - A_**-1, S - S**-1)


def test_markov_invariance():
    for b in _random_braids(12, seed=11):
        h = homfly(b)
        assert homfly(b.stabilize(1)) == h
        assert homfly(b.stabilize(-1)) == h
        conj = BraidWord(b.strands, (1,) + b.letters + (-1,))
        assert homfly(conj) == h


def test_skein_relation():
    # a H(L+) - a^-1 H(L-) = z H(L0) at any crossing
    rng = random.Random(5)
    for b in _random_braids(12, seed=19):
        if not b.letters:
            continue
        k = rng.randrange(len(b.letters))
        i = abs(b.letters[k])
        pos = BraidWord(b.strands, b.letters[:k] + (i,) + b.letters[k + 1 :])
        neg = BraidWord(b.strands, b.letters[:k] + (-i,) + b.letters[k + 1 :])
        zero = BraidWord(b.strands, b.letters[:k] + b.letters[k + 1 :])
        lhs = RationalQT(A_) * homfly(pos) - RationalQT(A_**-1) * homfly(neg)
        assert lhs == RationalQT(Z) * homfly(zero)


def test_mirror_inverts_both_variables():
    for name in ["trefoil", "hopf", "T(2,5)"]:
        b = lookup(name)
        assert homfly(b.mirror()) == homfly(b).invert_q().invert_t()


def test_figure_eight_is_amphichiral():
    h = homfly(lookup("figure8"))
    assert h == h.invert_q().invert_t()


def test_engine_matches_skein_oracle():
    for name in REGRESSION:
        b = lookup(name)
        assert homfly(b) == homfly_skein(b), name
    for b in _random_braids(30, seed=23):
        assert homfly(b) == homfly_skein(b)


@pytest.mark.parametrize("name", REGRESSION)
def test_homfly_times_qint_power_is_laurent(name):
    lp = closure_analysis(lookup(name))
    x = homfly(lookup(name)) * RationalQT(qint(1) ** lp.L)
    assert x.is_laurent()


# ---------------------------------------------------------------- idempotents


def _full_twist(n):
    return represent(BraidWord(max(n, 1), tuple(i for _ in range(n) for i in range(1, n))))


@pytest.mark.parametrize("n", range(1, 5))
def test_idempotents_orthogonal_complete_and_twist_eigenvalue(n):
    parts = enumerate_partitions(n)
    es = {A: central_idempotent(A) for A in parts}
    total_den = LaurentQT.const(1)
    for A in parts:
        total_den = total_den * es[A][1]
    total = HeckeElement(n)
    twist = _full_twist(n)
    for A in parts:
        num, den = es[A]
        assert num * num == num.scale(den)
        assert twist * num == num.scale(LaurentQT({(kappa(A), 0): 1}))
        for B in parts:
            if B != A:
                assert (num * es[B][0]).is_zero()
        other = LaurentQT.const(1)
        for B in parts:
            if B != A:
                other = other * es[B][1]
        total = total + num.scale(other)
    assert total == HeckeElement.identity(n).scale(total_den)


def test_separating_element_choice():
    for n in range(1, 6):
        assert eigen_data(n)[0] == "twist"
    assert eigen_data(6)[0] == "jm"
    assert kappa((3, 3)) == kappa((4, 1, 1))
    with pytest.raises(ValueError):
        eigen_data(MAX_LEVEL + 1)


# ---------------------------------------------------------------- colored invariants


def test_unknot_colors_match_hook_content():
    for n in range(5):
        for A in enumerate_partitions(n):
            assert colored_invariant(lookup("unknot"), (A,)) == unknot_invariant(A)


@pytest.mark.parametrize("word,strands,top", [("s1", 2, 3), ("-s1", 2, 3), ("s1 -s2", 3, 2)])
def test_unknot_diagrams_with_framing(word, strands, top):
    b = parse_braid(word, strands)
    for n in range(top + 1):
        for A in enumerate_partitions(n):
            assert colored_invariant(b, (A,)) == unknot_invariant(A)


def test_symmetric_color_from_explicit_projector():
    # e_(2) = (g + s^-1) / (s + s^-1) on two strands, traced by the skein oracle
    framed = framed_skein(parse_braid("s1", 2)) + RationalQT(S**-1) * framed_skein(BraidWord(2, ()))
    w2 = framed / RationalQT(S + S**-1)
    assert colored_invariant(lookup("unknot"), ((2,),)) == w2


def test_jucys_murphy_level_six():
    for A in [(3, 3), (4, 1, 1), (2, 2, 2)]:
        assert colored_invariant(lookup("unknot"), (A,)) == unknot_invariant(A)


def test_unlink_factorizes():
    for A in [(1,), (2,), (1, 1)]:
        for B in [(), (1,), (2,)]:
            w = colored_invariant(lookup("unlink2"), (A, B))
            assert w == unknot_invariant(A) * unknot_invariant(B)


def test_fundamental_color_is_homfly_up_to_linking_unit():
    for name in ["trefoil", "figure8", "hopf", "T(2,4)"]:
        b = lookup(name)
        lp = closure_analysis(b)
        colors = ((1,),) * lp.L
        lk = sum(lp.linking[i][j] for i in range(lp.L) for j in range(i + 1, lp.L))
        assert colored_invariant(b, colors) == homfly(b) * RationalQT(LaurentQT({(0, 2 * lk): 1}))


def test_colored_link_validation():
    with pytest.raises(ValueError):
        ColoredLink(lookup("hopf"), ((1,),))
    with pytest.raises(ValueError):
        colored_invariant(lookup("unknot"), ((8,),))
