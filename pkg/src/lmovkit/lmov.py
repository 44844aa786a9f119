"""Partition function, free energy, LMOV invariants and the structural checks.

Pipeline:  W table -> Z (Schur series) -> F = log Z -> f (Moebius inversion over
q -> q^d, t -> t^d) -> P (inverse of the M kernel) -> N (z^2 expansion).
Every checker returns a :class:`CheckReport`; nothing here raises on a failed
mathematical check.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

from gmpy2 import mpq

from .exactring import A as AVAR
from .exactring import S as SVAR
from .exactring import (
    LaurentQT,
    NonExactDivision,
    RationalQT,
    coeff_ord_p,
    qint,
    to_z2_basis,
)
from .partitions import (
    character,
    character_vec,
    conjugate,
    divide,
    divisors,
    enumerate_multi,
    enumerate_partitions,
    enumerate_vector,
    format_vector,
    gcd_D,
    kappa,
    mobius,
    norm,
    scale,
    theta,
    vconjugate,
    vlength,
    vsize,
    z_mu,
)
from .skein.braids import BraidWord, closure_analysis
from .skein.invariants import colored_invariant
from .symfun import (
    Cap,
    SchurSeries,
    SymSeries,
    cutjoin_apply,
    cutjoin_quadratic,
    p_mul,
    plethystic_log,
    power_to_schur,
    schur_to_power,
    unknot_invariant,
)

__all__ = [
    "CheckReport",
    "PartitionFunctionData",
    "FreeEnergyData",
    "NTable",
    "TSeriesData",
    "build_partition_function",
    "free_energy",
    "phi",
    "extract_f",
    "resum_f",
    "build_M",
    "invert_M",
    "solve_P",
    "P_from_display",
    "extract_N",
    "check_symmetry",
    "check_degree",
    "check_integrality",
    "check_reconstruction",
    "check_pole_structure",
    "cutjoin_check",
    "q1_limit",
    "reframe_convolution",
    "framed_W",
    "build_T",
    "ord_p_T",
    "phi_inequality",
    "run_pipeline",
    "PipelineResult",
    "apply_perturbation",
]

ONE = RationalQT(1)


def _zero(L: int) -> tuple:
    return ((),) * L


def _rq(x) -> RationalQT:
    return x if isinstance(x, RationalQT) else RationalQT(x)


def _q_monomial(qh: int) -> RationalQT:
    return RationalQT(LaurentQT({(qh, 0): 1}))


# ----------------------------------------------------------------------------
# reports
# ----------------------------------------------------------------------------


@dataclass
class CheckReport:
    name: str
    status: bool
    witness: dict = field(default_factory=dict)
    info: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"name": self.name, "status": "pass" if self.status else "fail", "witness": self.witness}
        if self.info:
            out["info"] = self.info
        return out


def _fail(name: str, failures: list, info: dict | None = None) -> CheckReport:
    return CheckReport(name, not failures, {"failures": failures[:5]} if failures else {}, info or {})


def _str(x) -> str:
    return str(x)


# ----------------------------------------------------------------------------
# partition function and free energy
# ----------------------------------------------------------------------------


@dataclass
class PartitionFunctionData:
    name: str
    braid: BraidWord
    cap: Cap
    W: dict  # vector partition -> RationalQT

    @property
    def L(self) -> int:
        return self.cap.L

    def schur_series(self) -> SchurSeries:
        return SchurSeries(self.W, self.cap)

    def z_hat(self, mu: tuple) -> RationalQT:
        """Z-hat_mu = sum_A chi_A(mu) W_A."""
        out = RationalQT(0)
        for A in enumerate_vector(vsize(mu)):
            c = character_vec(A, mu)
            if c:
                out = out + self.W[A] * c
        return out


def build_partition_function(
    braid: BraidWord,
    cap,
    name: str = "",
    source: Callable | None = None,
) -> PartitionFunctionData:
    """W table for every color within the cap, W_empty = 1."""
    L = closure_analysis(braid).L
    cap = Cap.of(cap, L)
    if cap.L != L:
        raise ValueError(f"cap has {cap.L} entries but the link has {L} components")
    source = source or colored_invariant
    W = {}
    for A in cap.keys():
        W[A] = ONE if not any(A) else _rq(source(braid, A))
    return PartitionFunctionData(name, braid, cap, W)


def framed_W(W: Mapping, tau) -> dict:
    """Apply integer framings: W_A * q^(sum_a kappa(A^a) tau_a / 2)."""
    out = {}
    for A, w in W.items():
        e = sum(kappa(a) * t for a, t in zip(A, tau))
        out[A] = w * _q_monomial(e) if e else w
    return out


def phi(mu: tuple) -> LaurentQT:
    """prod over all parts of [part]_q (mu a vector partition)."""
    out = LaurentQT.const(1)
    for comp in mu:
        for x in comp:
            out = out * qint(x)
    return out


@dataclass
class FreeEnergyData:
    cap: Cap
    F: SymSeries
    tau: tuple | None = None

    def __getitem__(self, mu) -> RationalQT:
        return self.F[mu]

    def hat(self, mu) -> RationalQT:
        return self.F[mu] * z_mu(mu)

    def tilde(self, mu) -> RationalQT:
        return self.F[mu] / RationalQT(phi(mu))


def free_energy(pf: PartitionFunctionData | Mapping, tau=None, cap: Cap | None = None) -> FreeEnergyData:
    if isinstance(pf, PartitionFunctionData):
        W, cap = pf.W, pf.cap
    else:
        W = pf
    if tau is not None:
        W = framed_W(W, tau)
    Z = SchurSeries(W, cap)
    return FreeEnergyData(cap, plethystic_log(Z), None if tau is None else tuple(tau))


# ----------------------------------------------------------------------------
# f, M, P, N
# ----------------------------------------------------------------------------


def _divides_all(d: int, mu: tuple) -> bool:
    return all(x % d == 0 for c in mu for x in c)


def extract_f(fe: FreeEnergyData) -> tuple[dict, dict]:
    """(f table by Schur label, g table by power-sum label).

    g_nu = sum_{d | nu} mobius(d)/d F_{nu/d}(q^d, t^d) and f_A = sum_mu chi_A(mu) g_mu.
    """
    g = {}
    for nu in fe.cap.keys():
        if not any(nu):
            continue
        D = gcd_D(nu)
        acc = RationalQT(0)
        for d in divisors(D):
            m = mobius(d)
            if m:
                acc = acc + fe.F[divide(nu, d)].adams_shift(d) * mpq(m, d)
        if not acc.is_zero():
            g[nu] = acc
    f = {}
    for A in fe.cap.keys():
        if not any(A):
            continue
        acc = RationalQT(0)
        for mu in enumerate_vector(vsize(A)):
            if mu in g:
                c = character_vec(A, mu)
                if c:
                    acc = acc + g[mu] * c
        if not acc.is_zero():
            f[A] = acc
    return f, g


def resum_f(f: Mapping, cap: Cap) -> SymSeries:
    """F from f: sum_d sum_A (1/d) f_A(q^d, t^d) s_A(x^d), in power sums."""
    g = {}
    for mu in cap.keys():
        if not any(mu):
            continue
        acc = RationalQT(0)
        for A in enumerate_vector(vsize(mu)):
            if A in f:
                c = character_vec(A, mu)
                if c:
                    acc = acc + f[A] * mpq(c, z_mu(mu))
        if not acc.is_zero():
            g[mu] = acc
    out = {}
    for nu in cap.keys():
        if not any(nu):
            continue
        acc = RationalQT(0)
        for d in divisors(gcd_D(nu)):
            base = divide(nu, d)
            if base in g:
                acc = acc + g[base].adams_shift(d) * mpq(1, d)
        out[nu] = acc
    return SymSeries(out, cap)


def build_M(d: int) -> tuple[list, list]:
    """(labels, matrix of LaurentQT) for M_AB(q) over partitions of d."""
    labels = enumerate_partitions(d)
    mus = enumerate_partitions(d)
    M = []
    for A in labels:
        row = []
        for B in labels:
            acc = LaurentQT()
            for mu in mus:
                c = character(A, mu) * character(B, mu)
                if c:
                    acc = acc + phi((mu,)) * mpq(c, z_mu(mu))
            row.append(acc)
        M.append(row)
    return labels, M


def _bareiss_det(M: list) -> LaurentQT:
    n = len(M)
    if n == 0:
        return LaurentQT.const(1)
    A = [list(r) for r in M]
    sign = 1
    prev = LaurentQT.const(1)
    for k in range(n - 1):
        if A[k][k].is_zero():
            for r in range(k + 1, n):
                if not A[r][k].is_zero():
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return LaurentQT()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]).exact_div(prev)
        prev = A[k][k]
    return A[n - 1][n - 1] * sign


_MINV: dict = {}


def invert_M(d: int) -> tuple[list, list]:
    """(labels, exact inverse of M over Q(q^(1/2))) via adjugate of Bareiss determinants."""
    if d in _MINV:
        return _MINV[d]
    labels, M = build_M(d)
    n = len(labels)
    det = _bareiss_det(M)
    if det.is_zero():
        raise ArithmeticError(f"M block of size {d} is singular")
    inv = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[M[r][c] for c in range(n) if c != i] for r in range(n) if r != j]
            cof = _bareiss_det(minor) * ((-1) ** (i + j))
            inv[i][j] = RationalQT(cof, det)
    _MINV[d] = (labels, inv)
    return labels, inv


def M_inverse_closed(d: int) -> list:
    """Closed form of the inverse: sum_mu chi_A chi_B / (z_mu phi_mu)."""
    labels = enumerate_partitions(d)
    out = []
    for A in labels:
        row = []
        for B in labels:
            acc = RationalQT(0)
            for mu in labels:
                c = character(A, mu) * character(B, mu)
                if c:
                    acc = acc + RationalQT(mpq(c, z_mu(mu))) / RationalQT(phi((mu,)))
            row.append(acc)
        out.append(row)
    return out


def solve_P(f: Mapping, cap: Cap) -> dict:
    """P_B = sum_A prod_a Minv_{B^a A^a} f_A, blockwise by size vector."""
    P = {}
    for B in cap.keys():
        if not any(B):
            continue
        sizes = vsize(B)
        tables = [invert_M(s) for s in sizes]
        acc = RationalQT(0)
        for A in enumerate_vector(sizes):
            if A not in f:
                continue
            coef = ONE
            for (labels, inv), a, b in zip(tables, A, B):
                coef = coef * inv[labels.index(b)][labels.index(a)]
                if coef.is_zero():
                    break
            if not coef.is_zero():
                acc = acc + coef * f[A]
        P[B] = acc
    return P


def P_from_display(g: Mapping, cap: Cap) -> dict:
    """P_B = sum_mu chi_B(mu) g_mu / phi_mu (alternative route used in tests)."""
    P = {}
    for B in cap.keys():
        if not any(B):
            continue
        acc = RationalQT(0)
        for mu in enumerate_vector(vsize(B)):
            if mu in g:
                c = character_vec(B, mu)
                if c:
                    acc = acc + g[mu] * c / RationalQT(phi(mu))
        P[B] = acc
    return P


@dataclass
class NTable:
    """N[(B, g, two_Q)] = coefficient of z^(2g-2) t^(two_Q/2) in P_B."""

    entries: dict
    structure_failures: list = field(default_factory=list)

    def get(self, B, g: int, two_Q: int):
        return self.entries.get((B, g, two_Q), mpq(0))

    def rows(self) -> list:
        from .partitions import vsort_key

        return sorted(self.entries.items(), key=lambda kv: (vsize(kv[0][0]), vsort_key(kv[0][0]), kv[0][1], kv[0][2]))

    def to_csv(self) -> str:
        lines = ["B,g,twoQ,N"]
        for (B, g, tq), v in self.rows():
            lines.append(f"{format_vector(B)},{g},{tq},{v}")
        return "\n".join(lines) + "\n"

    def reconstruct(self, B) -> RationalQT:
        z2 = qint(1) * qint(1)
        acc = LaurentQT()
        for (BB, g, tq), v in self.entries.items():
            if BB == B:
                acc = acc + (z2 ** g).shift(th=tq) * v
        return RationalQT(acc) / RationalQT(z2)

    def support_Q(self) -> set:
        return {tq for (_, _, tq) in self.entries}


def extract_N(P: Mapping) -> NTable:
    z2 = RationalQT(qint(1) * qint(1))
    entries = {}
    failures = []
    for B, val in P.items():
        if val.is_zero():
            continue
        prod = val * z2
        if not prod.is_laurent():
            failures.append({"B": format_vector(B), "reason": "P*[1]^2 has a denominator", "value": _str(prod)})
            continue
        try:
            coeffs = to_z2_basis(prod.as_laurent())
        except ValueError as exc:
            failures.append({"B": format_vector(B), "reason": str(exc), "value": _str(prod)})
            continue
        for (g, th), c in coeffs.items():
            entries[(B, g, th)] = c
    return NTable(entries, failures)


# ----------------------------------------------------------------------------
# checkers
# ----------------------------------------------------------------------------


def check_symmetry(W: Mapping) -> CheckReport:
    failures = []
    for A, w in W.items():
        At = vconjugate(A)
        if At not in W:
            continue
        expected = w.invert_q() * ((-1) ** norm(A))
        if W[At] != expected:
            failures.append({"A": format_vector(A), "residual": _str(W[At] - expected)})
    return _fail("transpose_symmetry", failures)


def check_degree(fe: FreeEnergyData) -> CheckReport:
    failures = []
    orders = {}
    for mu, v in fe.F.items():
        if not any(mu):
            continue
        o = v.order_at_q1()
        orders[format_vector(mu)] = o
        if o < vlength(mu) - 2:
            failures.append({"mu": format_vector(mu), "order": o, "bound": vlength(mu) - 2})
        t = fe.tilde(mu)
        bad = {f"Phi{m}({'s' if var == SVAR else 'a'})": e for (var, m), e in t.den_factors.items() if e > 2 or var == AVAR}
        if bad:
            failures.append({"mu": format_vector(mu), "tilde_denominator": bad})
    return _fail("free_energy_pole_order", failures, {"orders": orders})


def check_integrality(N: NTable) -> CheckReport:
    failures = list(N.structure_failures)
    for (B, g, tq), v in N.rows():
        if v.denominator != 1:
            failures.append({"B": format_vector(B), "g": g, "twoQ": tq, "N": str(v)})
    info = {
        "entries": len(N.entries),
        "max_genus": max((g for (_, g, _) in N.entries), default=0),
        "half_integral_Q_seen": any(tq % 2 for tq in N.support_Q()),
    }
    return _fail("integrality", failures, info)


def check_reconstruction(pf: PartitionFunctionData, fe: FreeEnergyData, f: Mapping, P: Mapping, N: NTable) -> CheckReport:
    """exp/log round trip, f <-> F, f = M P and P <-> N are all exact."""
    from .symfun import plethystic_exp

    failures = []
    if plethystic_exp(fe.F) != schur_to_power(pf.schur_series()):
        failures.append({"stage": "exp(log Z) != Z"})
    if resum_f(f, fe.cap) != fe.F:
        failures.append({"stage": "resummed f != F"})
    for A in fe.cap.keys():
        if not any(A):
            continue
        sizes = vsize(A)
        acc = RationalQT(0)
        blocks = [build_M(s) for s in sizes]
        for B in enumerate_vector(sizes):
            if B not in P or P[B].is_zero():
                continue
            coef = LaurentQT.const(1)
            for (labels, M), a, b in zip(blocks, A, B):
                coef = coef * M[labels.index(a)][labels.index(b)]
            acc = acc + P[B] * RationalQT(coef)
        if acc != f.get(A, RationalQT(0)):
            failures.append({"stage": "f != M P", "A": format_vector(A)})
    if not N.structure_failures:
        for B, v in P.items():
            if N.reconstruct(B) != v:
                failures.append({"stage": "N does not reconstruct P", "B": format_vector(B)})
    return _fail("reconstruction", failures)


def _in_ring(x: RationalQT) -> str | None:
    """None if x lies in Q[[1]^2, t^(+-1/2)], otherwise the reason it does not."""
    if not x.is_laurent():
        return "denominator"
    f = x.as_laurent()
    if any(qh % 2 for qh, _ in f.terms):
        return "half-integral q power"
    if f != f.invert_q():
        return "not symmetric under q -> 1/q"
    return None


def _new_pole_indices(D: int) -> set:
    """Cyclotomic indices (in s) dividing [D] but no [d] with d < D."""
    old = set()
    for d in range(1, D):
        old |= set(divisors(2 * d))
    return set(divisors(2 * D)) - old


def check_pole_structure(pf: PartitionFunctionData, fe: FreeEnergyData) -> tuple[CheckReport, CheckReport]:
    """Membership checks on one-row colors and the multiple-cover pole residue."""
    failures = []
    L = pf.L
    for sizes in itertools.product(*(range(c + 1) for c in pf.cap.per)):
        if not any(sizes) or not pf.cap.admits_sizes(sizes):
            continue
        mu = tuple(((d,) if d else ()) for d in sizes)
        zh = pf.z_hat(mu)
        pref = LaurentQT.const(1)
        for d in sizes:
            if d:
                pref = pref * qint(d)
        why = _in_ring(zh * RationalQT(pref))
        if why:
            failures.append({"check": "prod[d]*Zhat", "mu": format_vector(mu), "reason": why})
        ft = fe.tilde(mu)
        for d in sizes:
            if d:
                why = _in_ring(ft * RationalQT(qint(d) * qint(d)))
                if why:
                    failures.append({"check": "[d]^2*Ftilde", "mu": format_vector(mu), "d": d, "reason": why})
    membership = _fail("one_row_pole_membership", failures)

    failures = []
    literal = {}
    H = {}
    for nu in fe.cap.keys():
        if not any(nu) or gcd_D(nu) != 1:
            continue
        t = fe.tilde(nu)
        if t.is_zero():
            H[nu] = RationalQT(0)
            continue
        k, c = (t * RationalQT(qint(1) * qint(1))).leading_at_q1()
        if k < 0:
            failures.append({"mu": format_vector(nu), "reason": "pole of order > 2 at q=1"})
            continue
        H[nu] = c if k == 0 else RationalQT(0)
    for mu in fe.cap.keys():
        if not any(mu):
            continue
        D = gcd_D(mu)
        if D == 1:
            continue
        base = divide(mu, D)
        if base not in H:
            continue
        Ht = H[base].adams_shift(D)
        R = fe.tilde(mu) - Ht / RationalQT(qint(D) * qint(D) * D)
        bad = [m for (var, m), e in R.den_factors.items() if var == SVAR and m in _new_pole_indices(D)]
        if bad:
            failures.append({"mu": format_vector(mu), "D": D, "residual_new_poles": sorted(bad)})
        literal[format_vector(mu)] = R.is_laurent()
    residue = _fail(
        "multicover_residue",
        failures,
        {"residue_H": {format_vector(k): _str(v) for k, v in H.items()}, "remainder_is_laurent": literal},
    )
    return membership, residue


def cutjoin_check(W_skein: Mapping, fe: FreeEnergyData) -> CheckReport:
    """dF/dtau at tau=0 from skein-side W versus the cut-and-join image of F.

    The left side is Z^(-1) sum_A (sum_a kappa(A^a)) W_A s_A built from ``W_skein``;
    the right side is sum_a (CJ_a F + quadratic_a F) built from ``fe``.  The
    common prefactor u/2 (q = e^u) cancels.
    """
    cap = fe.cap
    L = cap.L
    Z = schur_to_power(SchurSeries({A: W_skein[A] for A in cap.keys()}, cap))
    kw = SchurSeries({A: W_skein[A] * sum(kappa(a) for a in A) for A in cap.keys()}, cap)
    zero = _zero(L)
    # Z^(-1) by the geometric series
    X = SymSeries({k: v for k, v in Z.coeffs.items() if k != zero}, cap)
    inv = SymSeries.one(cap)
    power = SymSeries.one(cap)
    for k in range(1, sum(cap.per) + 1):
        power = power * X
        if not power.coeffs:
            break
        inv = inv + power.scale((-1) ** k)
    lhs = inv * schur_to_power(kw)
    rhs = SymSeries({}, cap)
    for alpha in range(L):
        rhs = rhs + cutjoin_apply(fe.F, alpha) + cutjoin_quadratic(fe.F, alpha)
    diff = lhs - rhs
    failures = [{"mu": format_vector(k), "residual": _str(v)} for k, v in diff.items()]
    orders = {}
    for k, v in lhs.items():
        orders[format_vector(k)] = {"lhs": v.order_at_q1()}
    for k, v in rhs.items():
        orders.setdefault(format_vector(k), {})["rhs"] = v.order_at_q1()
    return _fail("cut_and_join", failures, {"q1_orders": orders})


def q1_limit(pf: PartitionFunctionData) -> tuple[dict, CheckReport]:
    """xi_a(t) from color (1) on component a; check the q=1 ratio factorizes."""
    L = pf.L
    failures = []

    def ratio(A):
        k, c = pf.W[A].leading_at_q1()
        for a in A:
            ku, cu = unknot_invariant(a).leading_at_q1()
            k, c = k - ku, c / cu
        return k, c

    xi = {}
    for alpha in range(L):
        A = tuple(((1,) if b == alpha else ()) for b in range(L))
        if A not in pf.W:
            continue
        k, c = ratio(A)
        if k != 0:
            failures.append({"A": format_vector(A), "reason": f"ratio has order {k} at q=1"})
        xi[alpha] = c
    for A in pf.cap.keys():
        if not any(A):
            continue
        k, c = ratio(A)
        if k != 0:
            failures.append({"A": format_vector(A), "reason": f"ratio has order {k} at q=1"})
            continue
        expected = ONE
        for alpha, a in enumerate(A):
            if sum(a):
                expected = expected * xi[alpha] ** sum(a)
        if c != expected:
            failures.append({"A": format_vector(A), "ratio": _str(c), "expected": _str(expected)})
    return xi, _fail("q1_limit_factorization", failures, {"xi": {str(a): _str(v) for a, v in xi.items()}})


def reframe_convolution(pf: PartitionFunctionData, omega) -> dict:
    """Framed Z-hat by the convolution with characters and framing eigenvalues."""
    out = {}
    for mu in pf.cap.keys():
        sizes = vsize(mu)
        acc = RationalQT(0)
        for nu in enumerate_vector(sizes):
            zn = pf.z_hat(nu)
            if zn.is_zero():
                continue
            inner = LaurentQT()
            for A in enumerate_vector(sizes):
                c = character_vec(A, mu) * character_vec(A, nu)
                if c:
                    e = sum(kappa(a) * w for a, w in zip(A, omega))
                    inner = inner + LaurentQT({(e, 0): c})
            acc = acc + zn * RationalQT(inner) * mpq(1, z_mu(nu))
        out[mu] = acc
    return out


# ----------------------------------------------------------------------------
# T series and p-adic checks
# ----------------------------------------------------------------------------


@dataclass
class TSeriesData:
    d: tuple
    from_P: dict  # Schur label B -> coefficient
    from_multicover: dict
    Phi: dict  # e -> {Schur label: coefficient}, Phi_e in y variables


def _to_y_power(series: Mapping) -> dict:
    """Rewrite p_mu(x) coefficients in the y alphabet: p_n(x) = p_n(y)/[n]."""
    return {mu: v / RationalQT(phi(mu)) for mu, v in series.items() if not v.is_zero()}


def _power_to_schur_dict(pw: Mapping) -> dict:
    out: dict = {}
    for mu, w in pw.items():
        for A in enumerate_vector(vsize(mu)):
            c = character_vec(A, mu)
            if c:
                out[A] = out[A] + w * c if A in out else w * c
    return {k: v for k, v in out.items() if not v.is_zero()}


def _phi_series(W: Mapping, e: tuple) -> dict:
    """Phi_e = sum over multipartitions of total size e of theta * prod W * s, in p(x)."""
    L = len(e)
    cap = Cap(tuple(e))
    acc = SymSeries({}, cap)
    for Lam in enumerate_multi(e):
        prod = SymSeries.one(cap)
        for A in Lam:
            prod = prod * schur_to_power(SchurSeries({A: W[A]}, cap))
        acc = acc + prod.scale(theta(Lam))
    return {mu: v for mu, v in acc.coeffs.items() if vsize(mu) == tuple(e)}


def _adams_power(pw: Mapping, k: int) -> dict:
    return {tuple(tuple(x * k for x in c) for c in mu): v.adams_shift(k) for mu, v in pw.items()}


def build_T(W: Mapping, P: Mapping, d: tuple) -> TSeriesData:
    d = tuple(d)
    from_P = {B: P[B] for B in enumerate_vector(d) if B in P and not P[B].is_zero()}
    D = math.gcd(*d)
    Phi = {}
    total: dict = {}
    for k in divisors(D):
        m = mobius(k)
        if not m:
            continue
        e = tuple(x // k for x in d)
        if e not in Phi:
            Phi[e] = _to_y_power(_phi_series(W, e))
        for mu, v in _adams_power(Phi[e], k).items():
            term = v * mpq(m, k)
            total[mu] = total[mu] + term if mu in total else term
    from_mc = _power_to_schur_dict(total)
    Phi_schur = {e: _power_to_schur_dict(v) for e, v in Phi.items()}
    return TSeriesData(d, from_P, from_mc, Phi_schur)


def _ord_p(values: Iterable[RationalQT], p: int) -> int | None:
    best = None
    for v in values:
        for _, c in v.num.items():
            o = coeff_ord_p(c, p)
            best = o if best is None else min(best, o)
    return best


def ord_p_T(T: TSeriesData, primes: Iterable[int]) -> CheckReport:
    failures = []
    keys = set(T.from_P) | set(T.from_multicover)
    for B in sorted(keys):
        a = T.from_P.get(B, RationalQT(0))
        b = T.from_multicover.get(B, RationalQT(0))
        if a != b:
            failures.append({"B": format_vector(B), "reason": "definition and multicover routes disagree"})
    for B, v in T.from_P.items():
        if any(var == AVAR for (var, _) in v.den_factors):
            failures.append({"B": format_vector(B), "reason": "t in the denominator"})
        if not v.is_symmetric_q():
            failures.append({"B": format_vector(B), "reason": "coefficient not symmetric under q -> 1/q"})
    ords = {}
    for p in primes:
        o = _ord_p(T.from_P.values(), p)
        ords[p] = o
        if o is not None and o < 0:
            failures.append({"p": p, "Ord_p": o})
    return _fail(f"T_series{list(T.d)}", failures, {"Ord_p": {str(k): v for k, v in ords.items()}})


def phi_inequality(W: Mapping, d: tuple, p: int) -> CheckReport:
    """Ord_p(Phi_{p d} - (1/p) Phi_d(y^p; q^p, t^p)) >= 0 in the Schur-label basis."""
    d = tuple(d)
    pd = tuple(p * x for x in d)
    big = _to_y_power(_phi_series(W, pd))
    small = _adams_power(_to_y_power(_phi_series(W, d)), p)
    diff = dict(big)
    for mu, v in small.items():
        term = v * mpq(-1, p)
        diff[mu] = diff[mu] + term if mu in diff else term
    schur = _power_to_schur_dict(diff)
    o = _ord_p(schur.values(), p)
    failures = [] if o is None or o >= 0 else [{"d": list(d), "p": p, "Ord_p": o}]
    return _fail(f"phi_inequality_d{list(d)}_p{p}", failures, {"Ord_p": o})


# ----------------------------------------------------------------------------
# orchestration
# ----------------------------------------------------------------------------


def apply_perturbation(W: Mapping, A: tuple, delta) -> dict:
    out = dict(W)
    out[A] = out[A] + _rq(delta)
    return out


@dataclass
class PipelineResult:
    pf: PartitionFunctionData
    fe: FreeEnergyData
    f: dict
    P: dict
    N: NTable
    reports: list

    @property
    def ok(self) -> bool:
        return all(r.status for r in self.reports)

    def failed(self) -> list:
        return [r.name for r in self.reports if not r.status]


def _T_degrees(cap: Cap) -> list:
    out = []
    for d in itertools.product(*(range(c + 1) for c in cap.per)):
        if any(d) and cap.admits_sizes(d):
            out.append(d)
    return out


def run_pipeline(
    pf: PartitionFunctionData,
    primes: Iterable[int] = (2, 3, 5),
    W_reference: Mapping | None = None,
    checks: Iterable[str] | None = None,
) -> PipelineResult:
    """Run every stage on ``pf`` and collect the check reports.

    ``W_reference`` feeds the skein side of the cut-and-join check; by default
    it is recomputed from the braid.
    """
    primes = tuple(primes)
    wanted = set(checks) if checks is not None else None

    def want(name: str) -> bool:
        return wanted is None or name in wanted

    fe = free_energy(pf)
    f, g = extract_f(fe)
    P = solve_P(f, pf.cap)
    N = extract_N(P)
    reports = []
    if want("symmetry"):
        reports.append(check_symmetry(pf.W))
    if want("degree"):
        reports.append(check_degree(fe))
    if want("cutjoin"):
        ref = W_reference
        if ref is None:
            ref = build_partition_function(pf.braid, pf.cap).W
        reports.append(cutjoin_check(ref, fe))
    if want("integrality"):
        reports.append(check_integrality(N))
    if want("reconstruction"):
        reports.append(check_reconstruction(pf, fe, f, P, N))
    if want("poles"):
        reports.extend(check_pole_structure(pf, fe))
    if want("q1"):
        reports.append(q1_limit(pf)[1])
    if want("t_series"):
        for d in _T_degrees(pf.cap):
            reports.append(ord_p_T(build_T(pf.W, P, d), primes))
        for p in primes:
            for d in _T_degrees(pf.cap):
                pd = tuple(p * x for x in d)
                if pf.cap.admits_sizes(pd):
                    reports.append(phi_inequality(pf.W, d, p))
    return PipelineResult(pf, fe, f, P, N, reports)
