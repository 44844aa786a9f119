import gmpy2
import pytest

from conftest import pipeline_for
from lmovkit.exactring import LaurentQT, RationalQT, qint
from lmovkit.lmov import (
    P_from_display,
    apply_perturbation,
    build_M,
    build_partition_function,
    build_T,
    check_integrality,
    extract_f,
    extract_N,
    framed_W,
    free_energy,
    invert_M,
    M_inverse_closed,
    phi,
    q1_limit,
    reframe_convolution,
    resum_f,
    run_pipeline,
    solve_P,
)
from lmovkit.partitions import character_vec, enumerate_vector
from lmovkit.skein import lookup
from lmovkit.skein.braids import cable
from lmovkit.skein.hecke import DELTA
from lmovkit.skein.oracle import framed_skein
from lmovkit.symfun import Cap

half = gmpy2.mpq(1, 2)
A_ = LaurentQT.monomial(0, 1)


def test_M_examples():
    labels, M = build_M(1)
    assert labels == [(1,)] and M == [[qint(1)]]
    labels, M = build_M(2)
    i = labels.index((2,))
    assert M[i][i] == qint(1) ** 2 * half + qint(2) * half


@pytest.mark.parametrize("d", range(1, 5))
def test_M_inverse_routes_agree(d):
    labels, inv = invert_M(d)
    assert inv == M_inverse_closed(d)
    if d <= 3:
        _, M = build_M(d)
        n = len(labels)
        for i in range(n):
            for j in range(n):
                acc = sum((RationalQT(M[i][k]) * inv[k][j] for k in range(n)), RationalQT(0))
                assert acc == RationalQT(int(i == j))


def test_unknot_free_energy_is_single_color():
    # Cauchy identity: F = sum_d delta(q^d, t^d) p_d / d
    pf, res = pipeline_for("unknot", Cap((4,)))
    for (mu,), v in res.fe.F.items():
        assert len(mu) == 1
        assert v == DELTA.adams_shift(mu[0]) * gmpy2.mpq(1, mu[0])
    assert res.f == {((1,),): DELTA}


def test_unknot_P_and_N():
    pf, res = pipeline_for("unknot", Cap((4,)))
    # P_(1) = delta / [1], so P_(1) [1]^2 = t^(-1/2) - t^(1/2)
    assert res.P[((1,),)] * RationalQT(qint(1) ** 2) == RationalQT(A_**-1 - A_)
    assert dict(res.N.entries) == {(((1,),), 0, -1): 1, (((1,),), 0, 1): -1}
    assert all(v.is_zero() for B, v in res.P.items() if B != ((1,),))


def test_split_link_has_no_mixed_free_energy():
    pf, res = pipeline_for("unlink2", Cap((2, 2)))
    for mu, v in res.fe.F.items():
        assert not (mu[0] and mu[1]), mu
    assert res.ok


def test_resum_inverts_extract():
    for name, cap in [("trefoil", Cap((3,))), ("hopf", Cap((2, 2)))]:
        pf, res = pipeline_for(name, cap)
        assert resum_f(res.f, cap) == res.fe.F


def test_display_route_for_P():
    for name, cap in [("trefoil", Cap((3,))), ("hopf", Cap((2, 2)))]:
        pf, res = pipeline_for(name, cap)
        _, g = extract_f(res.fe)
        display = P_from_display(g, cap)
        for B in cap.keys():
            if any(B):
                assert display[B] == res.P.get(B, RationalQT(0))


def test_N_reconstructs_P():
    pf, res = pipeline_for("trefoil", Cap((3,)))
    for B, v in res.P.items():
        if not v.is_zero():
            assert res.N.reconstruct(B) == v


def test_reframing_convolution_matches_direct_framing():
    pf, _ = pipeline_for("hopf", Cap((2, 2)))
    for omega in [(1, 0), (-1, 2)]:
        conv = reframe_convolution(pf, omega)
        W = framed_W(pf.W, omega)
        for mu in pf.cap.keys():
            direct = RationalQT(0)
            for A in enumerate_vector(tuple(sum(c) for c in mu)):
                direct = direct + W[A] * character_vec(A, mu)
            assert conv[mu] == direct


def test_z_hat_unknot_is_product_of_adams_deltas():
    pf, _ = pipeline_for("unknot", Cap((4,)))
    for (mu,) in pf.cap.keys():
        expected = RationalQT(1)
        for part in mu:
            expected = expected * DELTA.adams_shift(part)
        assert pf.z_hat((mu,)) == expected


@pytest.mark.parametrize("name,mult", [("figure8", (2,)), ("hopf", (2, 1)), ("hopf", (2, 2))])
def test_z_hat_all_ones_is_parallel_cable(name, mult):
    # zero self-writhe: sum_A dim(A) W_A is the framed HOMFLY of the parallel cable
    b = lookup(name)
    cap = Cap(tuple(mult))
    pf = build_partition_function(b, cap, name)
    mu = tuple((1,) * m for m in mult)
    cab, _ = cable(b, mult)
    assert pf.z_hat(mu) == framed_skein(cab)


def test_q1_limit_of_unknotted_components():
    pf, _ = pipeline_for("hopf", Cap((2, 2)))
    xi, rep = q1_limit(pf)
    assert rep.status
    assert all(v == RationalQT(1) for v in xi.values())


def test_multicover_route_matches_definition():
    pf, res = pipeline_for("trefoil", Cap((4,)))
    for d in [(1,), (2,), (4,)]:
        T = build_T(pf.W, res.P, d)
        assert T.from_P == {k: v for k, v in T.from_multicover.items() if not v.is_zero()}


def test_pipeline_flags_perturbation():
    pf, _ = pipeline_for("trefoil", Cap((2,)))
    bad = apply_perturbation(pf.W, ((2,),), LaurentQT.q(1))
    res = run_pipeline(type(pf)(pf.name, pf.braid, pf.cap, bad), W_reference=pf.W)
    assert not res.ok
    assert "integrality" in res.failed() or "transpose_symmetry" in res.failed()


def test_integrality_detects_fractional_entry():
    P = {((1,),): RationalQT(half) / RationalQT(qint(1) ** 2)}
    assert not check_integrality(extract_N(P)).status
    assert check_integrality(extract_N({((1,),): RationalQT(1) / RationalQT(qint(1) ** 2)})).status


def test_phi_is_product_of_qints():
    assert phi(((2, 1), (3,))) == qint(2) * qint(1) * qint(3)
    assert phi(((),)) == LaurentQT.const(1)


def test_solve_P_on_fresh_free_energy():
    pf, res = pipeline_for("hopf", Cap((2, 2)))
    fe = free_energy(pf)
    f, _ = extract_f(fe)
    assert solve_P(f, pf.cap) == res.P
