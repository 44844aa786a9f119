"""Truncated multi-component symmetric-function series.

Series are stored in coefficient space only.  A :class:`SymSeries` maps a vector
partition ``mu`` to the coefficient of ``p_mu = prod_a prod_j p_{mu^a_j}(x^a)``;
a :class:`SchurSeries` maps ``A`` to the coefficient of ``prod_a s_{A^a}(x^a)``.
Both carry a :class:`Cap` and drop everything outside it eagerly.
"""

from __future__ import annotations

import functools
import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from gmpy2 import mpq

from .exactring import LaurentQT, RationalQT
from .partitions import (
    VectorPartition,
    character,
    character_vec,
    contents,
    enumerate_partitions,
    enumerate_vector,
    enumerate_vector_upto,
    format_vector,
    hooks,
    vsize,
    z_mu,
)

__all__ = [
    "Cap",
    "SymSeries",
    "SchurSeries",
    "schur_to_power",
    "power_to_schur",
    "plethystic_log",
    "plethystic_exp",
    "cutjoin_apply",
    "cutjoin_quadratic",
    "unknot_invariant",
    "p_mul",
]


@dataclass(frozen=True)
class Cap:
    """Per-component degree bounds plus an optional bound on the total degree."""

    per: tuple
    total: int | None = None

    @classmethod
    def of(cls, cap, L: int | None = None) -> "Cap":
        if isinstance(cap, Cap):
            return cap
        if isinstance(cap, int):
            if L is None:
                raise ValueError("integer cap needs the component count")
            return cls((cap,) * L)
        return cls(tuple(int(c) for c in cap))

    @property
    def L(self) -> int:
        return len(self.per)

    def admits(self, v: VectorPartition) -> bool:
        sz = vsize(v)
        if any(s > c for s, c in zip(sz, self.per)):
            return False
        return self.total is None or sum(sz) <= self.total

    def admits_sizes(self, sz: Iterable[int]) -> bool:
        sz = tuple(sz)
        if any(s > c for s, c in zip(sz, self.per)):
            return False
        return self.total is None or sum(sz) <= self.total

    def keys(self) -> list:
        return enumerate_vector_upto(self.per, self.total)

    def meet(self, other: "Cap") -> "Cap":
        per = tuple(min(a, b) for a, b in zip(self.per, other.per))
        if self.total is None:
            tot = other.total
        elif other.total is None:
            tot = self.total
        else:
            tot = min(self.total, other.total)
        return Cap(per, tot)

    def __str__(self) -> str:
        s = ",".join(str(c) for c in self.per)
        return s if self.total is None else f"{s};total<={self.total}"


def p_mul(a: VectorPartition, b: VectorPartition) -> VectorPartition:
    """Product of power-sum monomials: merge parts component by component."""
    return tuple(tuple(sorted(x + y, reverse=True)) for x, y in zip(a, b))


def _zero_key(L: int) -> VectorPartition:
    return ((),) * L


class _Series:
    __slots__ = ("coeffs", "cap")

    def __init__(self, coeffs: Mapping, cap: Cap):
        self.cap = cap
        self.coeffs = {
            k: (v if isinstance(v, RationalQT) else RationalQT(v))
            for k, v in coeffs.items()
            if cap.admits(k)
        }
        self.coeffs = {k: v for k, v in self.coeffs.items() if not v.is_zero()}

    @property
    def L(self) -> int:
        return self.cap.L

    def __getitem__(self, key: VectorPartition) -> RationalQT:
        return self.coeffs.get(key, RationalQT(0))

    def keys(self):
        return sorted(self.coeffs, key=_key_order)

    def items(self):
        return [(k, self.coeffs[k]) for k in self.keys()]

    def constant(self) -> RationalQT:
        return self[_zero_key(self.L)]

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and self.cap == other.cap and self.coeffs == other.coeffs

    def _new(self, coeffs, cap=None):
        return type(self)(coeffs, cap or self.cap)

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out[k] + v if k in out else v
        return self._new(out, self.cap.meet(other.cap))

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "_Series":
        return self._new({k: v * c for k, v in self.coeffs.items()})

    def map(self, fn: Callable) -> "_Series":
        return self._new({k: fn(k, v) for k, v in self.coeffs.items()})

    def to_json(self) -> list:
        return [{"mu": format_vector(k), "coeff": v.to_json()} for k, v in self.items()]


def _key_order(v: VectorPartition) -> tuple:
    from .partitions import vsort_key

    sz = vsize(v)
    return (sum(sz), sz, vsort_key(v))


class SymSeries(_Series):
    """Power-sum coordinates: coeffs[mu] multiplies p_mu."""

    def __mul__(self, other: "SymSeries") -> "SymSeries":
        cap = self.cap.meet(other.cap)
        out: dict = {}
        for ka, va in self.coeffs.items():
            for kb, vb in other.coeffs.items():
                sz = tuple(x + y for x, y in zip(vsize(ka), vsize(kb)))
                if not cap.admits_sizes(sz):
                    continue
                k = p_mul(ka, kb)
                term = va * vb
                out[k] = out[k] + term if k in out else term
        return SymSeries(out, cap)

    def adams(self, d: int) -> "SymSeries":
        """Substitute x -> x^d: p_mu -> p_{d mu}, scalars q -> q^d, t -> t^d."""
        out = {}
        for k, v in self.coeffs.items():
            kk = tuple(tuple(x * d for x in c) for c in k)
            if self.cap.admits(kk):
                out[kk] = v.adams_shift(d)
        return SymSeries(out, self.cap)

    @classmethod
    def one(cls, cap: Cap) -> "SymSeries":
        return cls({_zero_key(cap.L): 1}, cap)


class SchurSeries(_Series):
    """Schur coordinates: coeffs[A] multiplies prod_a s_{A^a}(x^a)."""


def schur_to_power(S: SchurSeries) -> SymSeries:
    out: dict = {}
    for A, w in S.coeffs.items():
        for mu in enumerate_vector(vsize(A)):
            c = character_vec(A, mu)
            if c:
                term = w * mpq(c, z_mu(mu))
                out[mu] = out[mu] + term if mu in out else term
    return SymSeries(out, S.cap)


def power_to_schur(P: SymSeries) -> SchurSeries:
    out: dict = {}
    for mu, w in P.coeffs.items():
        for A in enumerate_vector(vsize(mu)):
            c = character_vec(A, mu)
            if c:
                term = w * c
                out[A] = out[A] + term if A in out else term
    return SchurSeries(out, P.cap)


def _as_power(Z) -> SymSeries:
    return schur_to_power(Z) if isinstance(Z, SchurSeries) else Z


def plethystic_log(Z) -> SymSeries:
    """Formal logarithm of a series with constant term 1, in power-sum coordinates."""
    Z = _as_power(Z)
    L = Z.L
    zero = _zero_key(L)
    if Z[zero] != RationalQT(1):
        raise ValueError("logarithm needs constant term exactly 1")
    X = SymSeries({k: v for k, v in Z.coeffs.items() if k != zero}, Z.cap)
    maxdeg = sum(Z.cap.per) if Z.cap.total is None else min(Z.cap.total, sum(Z.cap.per))
    out = SymSeries({}, Z.cap)
    power = X
    for k in range(1, maxdeg + 1):
        if not power.coeffs:
            break
        out = out + power.scale(mpq((-1) ** (k + 1), k))
        power = power * X
    return out


def plethystic_exp(F) -> SymSeries:
    """Formal exponential; inverse of :func:`plethystic_log`."""
    F = _as_power(F)
    zero = _zero_key(F.L)
    if not F[zero].is_zero():
        raise ValueError("exponential needs a series without constant term")
    maxdeg = sum(F.cap.per) if F.cap.total is None else min(F.cap.total, sum(F.cap.per))
    out = SymSeries.one(F.cap)
    power = SymSeries.one(F.cap)
    fact = 1
    for k in range(1, maxdeg + 1):
        power = power * F
        if not power.coeffs:
            break
        fact *= k
        out = out + power.scale(mpq(1, fact))
    return out


def _cj_monomial(mu: VectorPartition, alpha: int) -> dict:
    """Image of the linear cut-and-join operator on p_mu (component alpha)."""
    comp = mu[alpha]
    mult = Counter(comp)
    out: Counter = Counter()

    def put(new_comp: list, c: int) -> None:
        key = mu[:alpha] + (tuple(sorted(new_comp, reverse=True)),) + mu[alpha + 1 :]
        out[key] += c

    parts = sorted(mult)
    # join: i j p_{i+j} d^2/dp_i dp_j over ordered pairs
    for i in parts:
        for j in parts:
            if i == j:
                c = mult[i] * (mult[i] - 1)
            else:
                c = mult[i] * mult[j]
            if not c:
                continue
            rest = list(comp)
            rest.remove(i)
            rest.remove(j)
            put(rest + [i + j], i * j * c)
    # cut: (i+j) p_i p_j d/dp_{i+j} over ordered pairs
    for k in parts:
        rest = list(comp)
        rest.remove(k)
        for i in range(1, k):
            put(rest + [i, k - i], k * mult[k])
    return {k: v for k, v in out.items() if v}


def cutjoin_apply(F, alpha: int) -> SymSeries:
    """Linear cut-and-join operator on component ``alpha`` (no prefactor)."""
    F = _as_power(F)
    out: dict = {}
    for mu, v in F.coeffs.items():
        for k, c in _cj_monomial(mu, alpha).items():
            term = v * c
            out[k] = out[k] + term if k in out else term
    return SymSeries(out, F.cap)


def _derivative(F: SymSeries, alpha: int, i: int) -> SymSeries:
    out: dict = {}
    for mu, v in F.coeffs.items():
        m = mu[alpha].count(i)
        if m:
            rest = list(mu[alpha])
            rest.remove(i)
            k = mu[:alpha] + (tuple(rest),) + mu[alpha + 1 :]
            out[k] = v * m
    return SymSeries(out, F.cap)


def cutjoin_quadratic(F, alpha: int) -> SymSeries:
    """sum_{i,j} i j p_{i+j} (dF/dp_i)(dF/dp_j) on component ``alpha``."""
    F = _as_power(F)
    maxdeg = F.cap.per[alpha]
    ders = {i: _derivative(F, alpha, i) for i in range(1, maxdeg + 1)}
    out = SymSeries({}, F.cap)
    for i in range(1, maxdeg + 1):
        for j in range(1, maxdeg + 1 - i):
            prod = ders[i] * ders[j]
            if not prod.coeffs:
                continue
            shifted = {}
            for mu, v in prod.coeffs.items():
                k = mu[:alpha] + (tuple(sorted(mu[alpha] + (i + j,), reverse=True)),) + mu[alpha + 1 :]
                shifted[k] = v * (i * j)
            out = out + SymSeries(shifted, F.cap)
    return out


@functools.lru_cache(maxsize=None)
def unknot_invariant(A: tuple) -> RationalQT:
    """Colored unknot via the hook-content product."""
    A = tuple(A)
    num = LaurentQT.const(1)
    den = LaurentQT.const(1)
    for c, h in zip(contents(A), hooks(A)):
        num = num * LaurentQT({(c, 1): 1, (-c, -1): -1})
        den = den * LaurentQT({(h, 0): 1, (-h, 0): -1})
    return RationalQT(num, den)
