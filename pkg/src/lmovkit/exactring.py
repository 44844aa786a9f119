"""Exact scalars: Laurent polynomials in q^(1/2), t^(1/2) and their quotients.

Exponents are stored doubled, so the key ``(qh, th)`` stands for the monomial
``q^(qh/2) t^(th/2)``.  Coefficients are ``gmpy2.mpq`` rationals.

Every denominator produced by the pipeline (quantum integers, differences of
q-monomials, ``t^(1/2) - t^(-1/2)``) is a product of cyclotomic polynomials in
``s = q^(1/2)`` or ``a = t^(1/2)``.  :class:`RationalQT` keeps its denominator in
that factored form, which makes cancellation, the order at ``q = 1`` and the
substitutions ``q -> q^k`` cheap and exact.
"""

from __future__ import annotations

import functools
import math
from typing import Iterable, Iterator, Mapping, Union

import gmpy2
import numpy as np
from gmpy2 import mpq

__all__ = [
    "BigRational",
    "Q",
    "LaurentQT",
    "RationalQT",
    "NonExactDivision",
    "cyclotomic",
    "qint",
    "order_at_q1",
    "to_z2_basis",
    "from_z2_basis",
    "coeff_ord_p",
    "content_ord_p",
]

BigRational = type(mpq(0))

# variable tags for univariate operations
S, A = 0, 1


class NonExactDivision(ArithmeticError):
    """A Laurent polynomial division left a remainder."""


def Q(x) -> BigRational:
    """Coerce ints, strings like ``"-3/2"`` and rationals to a reduced mpq."""
    if isinstance(x, str):
        x = x.strip()
        if "/" in x:
            n, d = x.split("/")
            return mpq(int(n), int(d))
        return mpq(int(x))
    return mpq(x)


# ----------------------------------------------------------------------------
# univariate integer polynomials (tuples, low degree first)
# ----------------------------------------------------------------------------


def _poly_mul(a: tuple, b: tuple) -> tuple:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def _poly_divexact(a: tuple, b: tuple) -> tuple:
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            c, r = divmod(c, lead)
            assert r == 0
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    assert not any(a[:db])
    return tuple(q)


@functools.lru_cache(maxsize=None)
def cyclotomic(m: int) -> tuple:
    """Coefficients (low to high) of the m-th cyclotomic polynomial."""
    if m < 1:
        raise ValueError("cyclotomic index must be positive")
    num = (-1,) + (0,) * (m - 1) + (1,)
    for d in range(1, m):
        if m % d == 0:
            num = _poly_divexact(num, cyclotomic(d))
    return num


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        while n % p == 0:
            out.append(p)
            n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


@functools.lru_cache(maxsize=None)
def _cyclo_substitute(m: int, k: int) -> tuple:
    """Factor Phi_m(x^k) into cyclotomics: returns a tuple of indices."""
    idx = [m]
    for p in _prime_factors(k):
        nxt = []
        for j in idx:
            nxt.append(j * p)
            if j % p:
                nxt.append(j)
        idx = nxt
    return tuple(sorted(idx))


def _phi_at_one(m: int) -> int:
    if m == 1:
        return 0
    ps = set(_prime_factors(m))
    return ps.pop() if len(ps) == 1 else 1


def _totient(m: int) -> int:
    r = m
    for p in set(_prime_factors(m)):
        r = r // p * (p - 1)
    return r


# ----------------------------------------------------------------------------
# LaurentQT
# ----------------------------------------------------------------------------

Key = tuple  # (qh, th)


class LaurentQT:
    """Finite sum of c * q^(qh/2) t^(th/2) with rational c.  Immutable."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Key, object] | None = None, *, _trusted: bool = False):
        if _trusted:
            self._terms = terms
        else:
            clean = {}
            for k, c in (terms or {}).items():
                c = mpq(c)
                if c:
                    clean[(int(k[0]), int(k[1]))] = c
            self._terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def monomial(cls, qh: int = 0, th: int = 0, c=1) -> "LaurentQT":
        return cls({(qh, th): c})

    @classmethod
    def const(cls, c) -> "LaurentQT":
        return cls({(0, 0): c})

    @classmethod
    def q(cls, power=1) -> "LaurentQT":
        """q**power; ``power`` may be a half-integer given as a Fraction/mpq."""
        qh = mpq(power) * 2
        if qh.denominator != 1:
            raise ValueError("q exponent must be a multiple of 1/2")
        return cls({(int(qh), 0): 1})

    @classmethod
    def t(cls, power=1) -> "LaurentQT":
        th = mpq(power) * 2
        if th.denominator != 1:
            raise ValueError("t exponent must be a multiple of 1/2")
        return cls({(0, int(th)): 1})

    # -- basic protocol -----------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self) -> Iterator:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentQT):
            return self._terms == other._terms
        if isinstance(other, RationalQT):
            return other == self
        if isinstance(other, (int, BigRational)):
            return self._terms == ({(0, 0): mpq(other)} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentQT({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (qh, th), c in sorted(self._terms.items()):
            mono = []
            if qh:
                mono.append(f"q^{_half(qh)}")
            if th:
                mono.append(f"t^{_half(th)}")
            parts.append(f"{c}" + ("*" + "*".join(mono) if mono else ""))
        return " + ".join(parts)

    # -- ring operations ----------------------------------------------------
    @staticmethod
    def _coerce(x) -> "LaurentQT":
        if isinstance(x, LaurentQT):
            return x
        if isinstance(x, (int, BigRational)) or hasattr(x, "denominator"):
            return LaurentQT.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentQT")

    def __neg__(self) -> "LaurentQT":
        return LaurentQT({k: -c for k, c in self._terms.items()}, _trusted=True)

    def __add__(self, other):
        if isinstance(other, RationalQT):
            return NotImplemented
        other = self._coerce(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return LaurentQT(out, _trusted=True)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, RationalQT):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, RationalQT):
            return NotImplemented
        if isinstance(other, (int, BigRational)):
            if not other:
                return LaurentQT()
            c0 = mpq(other)
            return LaurentQT({k: c * c0 for k, c in self._terms.items()}, _trusted=True)
        other = self._coerce(other)
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for (bq, bt), bc in b.items():
            for (aq, at), ac in a.items():
                k = (aq + bq, at + bt)
                out[k] = get(k, 0) + ac * bc
        return LaurentQT({k: v for k, v in out.items() if v}, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentQT":
        if n < 0:
            if len(self._terms) != 1:
                raise NonExactDivision("only monomials have Laurent inverses")
            (qh, th), c = next(iter(self._terms.items()))
            return LaurentQT({(-qh * -n, -th * -n): 1 / c ** -n})
        out = LaurentQT.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __truediv__(self, other):
        if isinstance(other, (int, BigRational)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self * (1 / mpq(other))
        if isinstance(other, RationalQT):
            return RationalQT(self) / other
        return self.exact_div(self._coerce(other))

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def exact_div(self, other: "LaurentQT") -> "LaurentQT":
        """Exact division; raises :class:`NonExactDivision` on a remainder."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if len(other._terms) == 1:
            (qh, th), c = next(iter(other._terms.items()))
            return LaurentQT({(k[0] - qh, k[1] - th): v / c for k, v in self._terms.items()}, _trusted=True)
        q = _multivariate_divide(self, other)
        if q is None:
            raise NonExactDivision("Laurent division is not exact")
        return q

    # -- substitutions ------------------------------------------------------
    def adams_shift(self, k: int) -> "LaurentQT":
        """Substitute q -> q^k, t -> t^k."""
        if k < 1:
            raise ValueError("adams_shift needs k >= 1")
        if k == 1:
            return self
        return LaurentQT({(qh * k, th * k): c for (qh, th), c in self._terms.items()}, _trusted=True)

    def invert_q(self) -> "LaurentQT":
        return LaurentQT({(-qh, th): c for (qh, th), c in self._terms.items()}, _trusted=True)

    def invert_t(self) -> "LaurentQT":
        return LaurentQT({(qh, -th): c for (qh, th), c in self._terms.items()}, _trusted=True)

    def shift(self, qh: int = 0, th: int = 0) -> "LaurentQT":
        """Multiply by the monomial q^(qh/2) t^(th/2)."""
        return LaurentQT({(a + qh, b + th): c for (a, b), c in self._terms.items()}, _trusted=True)

    # -- queries ------------------------------------------------------------
    def is_q_free(self) -> bool:
        return all(qh == 0 for qh, _ in self._terms)

    def is_t_free(self) -> bool:
        return all(th == 0 for _, th in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_symmetric_q(self) -> bool:
        return self == self.invert_q()

    def coefficients_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._terms.values())

    def t_slices(self) -> dict:
        """Group by t exponent: th -> {qh: c}."""
        out: dict = {}
        for (qh, th), c in self._terms.items():
            out.setdefault(th, {})[qh] = c
        return out

    def q_slices(self) -> dict:
        """Group by q exponent: qh -> {th: c}."""
        out: dict = {}
        for (qh, th), c in self._terms.items():
            out.setdefault(qh, {})[th] = c
        return out

    def min_exponent(self, var: int) -> int:
        return min(k[var] for k in self._terms)

    def max_exponent(self, var: int) -> int:
        return max(k[var] for k in self._terms)

    def eval_s1(self) -> "LaurentQT":
        """Set q^(1/2) = 1, leaving a Laurent polynomial in t^(1/2)."""
        out: dict = {}
        for (qh, th), c in self._terms.items():
            out[(0, th)] = out.get((0, th), 0) + c
        return LaurentQT(out)

    # -- univariate division by an integer polynomial in one variable --------
    def div_univariate(self, poly: tuple, var: int) -> "LaurentQT | None":
        """Divide by ``poly`` in s (var=0) or a (var=1); None if not exact."""
        if not self._terms:
            return self
        deg = len(poly) - 1
        if deg == 0:
            return self * (1 / mpq(poly[0]))
        other = 1 - var
        groups: dict = {}
        for k, c in self._terms.items():
            groups.setdefault(k[other], {})[k[var]] = c
        lead = mpq(poly[-1])
        out = {}
        for o, g in groups.items():
            lo = min(g)
            hi = max(g)
            if hi - lo < deg:
                return None
            a = [g.get(lo + i, 0) for i in range(hi - lo + 1)]
            qlen = len(a) - deg
            quo = [0] * qlen
            for i in range(len(a) - 1, deg - 1, -1):
                c = a[i]
                if c:
                    c = c / lead if lead != 1 else c
                    quo[i - deg] = c
                    for j in range(deg + 1):
                        pj = poly[j]
                        if pj:
                            a[i - deg + j] -= c * pj
            if any(a[:deg]):
                return None
            for i, c in enumerate(quo):
                if c:
                    key = (lo + i, o) if var == S else (o, lo + i)
                    out[key] = mpq(c)
        return LaurentQT(out, _trusted=True)

    # -- serialization ------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "terms": [
                {"qh": qh, "th": th, "c": _qstr(c)}
                for (qh, th), c in sorted(self._terms.items())
            ]
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "LaurentQT":
        return cls({(d["qh"], d["th"]): Q(d["c"]) for d in obj["terms"]})


def _half(n: int) -> str:
    return str(n // 2) if n % 2 == 0 else f"({n}/2)"


def _qstr(c) -> str:
    c = mpq(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _univariate_poly(f: LaurentQT, var: int) -> tuple:
    """Dense integer/rational coefficient tuple of a one-variable LaurentQT."""
    exps = [k[var] for k in f._terms]
    lo = min(exps)
    out = [0] * (max(exps) - lo + 1)
    for k, c in f._terms.items():
        out[k[var] - lo] = c
    return lo, out


def _multivariate_divide(num: LaurentQT, den: LaurentQT) -> LaurentQT | None:
    """Exact division of Laurent polynomials by lex-leading-term reduction."""
    # lex order on (qh, th); shifts make everything a genuine polynomial
    lead_d = max(den._terms)
    cd = den._terms[lead_d]
    rem = dict(num._terms)
    quo: dict = {}
    dterms = list(den._terms.items())
    steps = 0
    limit = 50 * (len(num) + 1) * (len(den) + 1) + 10_000
    lo_r = min(num._terms) if num._terms else None
    lo_d = min(den._terms)
    while rem:
        k = max(rem)
        c = rem[k] / cd
        m = (k[0] - lead_d[0], k[1] - lead_d[1])
        # the lowest term of the product must stay above the lowest remainder term
        if lo_r is not None and (m[0] + lo_d[0], m[1] + lo_d[1]) < lo_r:
            return None
        quo[m] = quo.get(m, 0) + c
        for dk, dc in dterms:
            kk = (m[0] + dk[0], m[1] + dk[1])
            v = rem.get(kk, 0) - c * dc
            if v:
                rem[kk] = v
            else:
                rem.pop(kk, None)
        steps += 1
        if steps > limit:
            return None
    return LaurentQT(quo)


# ----------------------------------------------------------------------------
# RationalQT
# ----------------------------------------------------------------------------

Scalar = Union[int, BigRational, LaurentQT, "RationalQT"]


class RationalQT:
    """num / den with den a monic product of cyclotomic polynomials.

    ``den`` factors are keyed by ``(var, m)``: var 0 means Phi_m(q^(1/2)),
    var 1 means Phi_m(t^(1/2)).  The canonical form has num and den coprime.
    """

    __slots__ = ("num", "_den", "_hash")

    def __init__(self, num: Scalar = 0, den: Scalar | None = None):
        if isinstance(num, RationalQT):
            if den is None:
                self.num, self._den = num.num, num._den
                self._hash = None
                return
            r = num / den
            self.num, self._den = r.num, r._den
            self._hash = None
            return
        num = LaurentQT._coerce(num)
        if den is None:
            self.num, self._den = num, {}
            self._hash = None
            return
        if isinstance(den, RationalQT):
            r = RationalQT(num) / den
            self.num, self._den = r.num, r._den
            self._hash = None
            return
        den = LaurentQT._coerce(den)
        n, factors = _factor_denominator(num, den)
        self.num, self._den = n, {}
        self._hash = None
        self._den = factors
        self._reduce()

    @classmethod
    def _raw(cls, num: LaurentQT, den: dict, reduce: bool = True) -> "RationalQT":
        obj = cls.__new__(cls)
        obj.num = num
        obj._den = {k: e for k, e in den.items() if e}
        obj._hash = None
        if reduce:
            obj._reduce()
        return obj

    def _reduce(self) -> None:
        if self.num.is_zero():
            self._den = {}
            return
        for key in sorted(self._den):
            e = self._den[key]
            var, m = key
            poly = cyclotomic(m)
            num = self.num
            while e:
                quo = num.div_univariate(poly, var)
                if quo is None:
                    break
                num = quo
                e -= 1
            self.num = num
            if e:
                self._den[key] = e
            else:
                del self._den[key]

    # -- accessors ----------------------------------------------------------
    @property
    def den_factors(self) -> dict:
        return dict(self._den)

    @property
    def den(self) -> LaurentQT:
        return _expand_factors(self._den)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_laurent(self) -> bool:
        return not self._den

    def as_laurent(self) -> LaurentQT:
        if self._den:
            raise NonExactDivision("value has a nontrivial denominator")
        return self.num

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalQT):
            try:
                other = RationalQT(LaurentQT._coerce(other))
            except TypeError:
                return NotImplemented
        return self._den == other._den and self.num == other.num

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, frozenset(self._den.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"RationalQT({self})"

    def __str__(self) -> str:
        if not self._den:
            return str(self.num)
        fac = "*".join(
            (f"Phi{m}({'s' if v == S else 'a'})" + (f"^{e}" if e > 1 else ""))
            for (v, m), e in sorted(self._den.items())
        )
        return f"({self.num}) / ({fac})"

    # -- arithmetic ---------------------------------------------------------
    @staticmethod
    def _coerce(x) -> "RationalQT":
        if isinstance(x, RationalQT):
            return x
        return RationalQT._raw(LaurentQT._coerce(x), {}, reduce=False)

    def __neg__(self) -> "RationalQT":
        return RationalQT._raw(-self.num, self._den, reduce=False)

    def __add__(self, other) -> "RationalQT":
        other = self._coerce(other)
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self._den == other._den:
            return RationalQT._raw(self.num + other.num, dict(self._den))
        den = dict(self._den)
        for k, e in other._den.items():
            if den.get(k, 0) < e:
                den[k] = e
        a = self.num * _expand_factors(_factor_diff(den, self._den))
        b = other.num * _expand_factors(_factor_diff(den, other._den))
        return RationalQT._raw(a + b, den)

    __radd__ = __add__

    def __sub__(self, other) -> "RationalQT":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RationalQT":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RationalQT":
        if isinstance(other, (int, BigRational)):
            if not other:
                return RationalQT()
            return RationalQT._raw(self.num * other, self._den, reduce=False)
        other = self._coerce(other)
        if self.num.is_zero() or other.num.is_zero():
            return RationalQT()
        den = dict(self._den)
        for k, e in other._den.items():
            den[k] = den.get(k, 0) + e
        num = self.num * other.num
        if not self._den or not other._den:
            # coprime pieces can only cancel across the two operands
            if not self._den and not other._den:
                return RationalQT._raw(num, {}, reduce=False)
        return RationalQT._raw(num, den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalQT":
        if isinstance(other, (int, BigRational)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return RationalQT._raw(self.num * (1 / mpq(other)), self._den, reduce=False)
        other = self._coerce(other)
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero RationalQT")
        n, factors = _factor_denominator(self.num * other.den, other.num)
        den = dict(self._den)
        for k, e in factors.items():
            den[k] = den.get(k, 0) + e
        return RationalQT._raw(n, den)

    def __rtruediv__(self, other) -> "RationalQT":
        return self._coerce(other) / self

    def __pow__(self, n: int) -> "RationalQT":
        if n < 0:
            return RationalQT(1) / self ** (-n)
        return RationalQT._raw(self.num ** n, {k: e * n for k, e in self._den.items()}, reduce=False)

    # -- substitutions ------------------------------------------------------
    def adams_shift(self, k: int) -> "RationalQT":
        if k == 1:
            return self
        num = self.num.adams_shift(k)
        den: dict = {}
        for (var, m), e in self._den.items():
            for j in _cyclo_substitute(m, k):
                den[(var, j)] = den.get((var, j), 0) + e
        return RationalQT._raw(num, den, reduce=False)

    def invert_q(self) -> "RationalQT":
        num = self.num.invert_q()
        deg = 0
        sign = 1
        for (var, m), e in self._den.items():
            if var == S:
                deg += _totient(m) * e
                if m == 1 and e % 2:
                    sign = -sign
        num = num.shift(qh=deg)
        if sign < 0:
            num = -num
        return RationalQT._raw(num, dict(self._den), reduce=False)

    def invert_t(self) -> "RationalQT":
        num = self.num.invert_t()
        deg = 0
        sign = 1
        for (var, m), e in self._den.items():
            if var == A:
                deg += _totient(m) * e
                if m == 1 and e % 2:
                    sign = -sign
        num = num.shift(th=deg)
        if sign < 0:
            num = -num
        return RationalQT._raw(num, dict(self._den), reduce=False)

    def is_symmetric_q(self) -> bool:
        return self == self.invert_q()

    # -- analytic queries ---------------------------------------------------
    def order_at_q1(self) -> int:
        return order_at_q1(self)

    def leading_at_q1(self) -> tuple[int, "RationalQT"]:
        """(order k, c(t)) with f ~ c(t) * (q^(1/2) - 1)^k as q -> 1."""
        if self.num.is_zero():
            raise ValueError("zero has no leading term")
        num = self.num
        k = 0
        phi1 = cyclotomic(1)
        while True:
            quo = num.div_univariate(phi1, S)
            if quo is None:
                break
            num = quo
            k += 1
        k -= self._den.get((S, 1), 0)
        c = num.eval_s1()
        scale = 1
        tden = {}
        for (var, m), e in self._den.items():
            if var == S:
                if m != 1:
                    scale *= _phi_at_one(m) ** e
            else:
                tden[(var, m)] = e
        return k, RationalQT._raw(c * (1 / mpq(scale)), tden)

    # -- serialization ------------------------------------------------------
    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, obj: Mapping) -> "RationalQT":
        return cls(LaurentQT.from_json(obj["num"]), LaurentQT.from_json(obj["den"]))


def _factor_diff(big: dict, small: dict) -> dict:
    return {k: e - small.get(k, 0) for k, e in big.items() if e - small.get(k, 0) > 0}


@functools.lru_cache(maxsize=4096)
def _expand_factors_cached(items: tuple) -> LaurentQT:
    out = LaurentQT.const(1)
    for (var, m), e in items:
        poly = cyclotomic(m)
        p = LaurentQT({((i, 0) if var == S else (0, i)): c for i, c in enumerate(poly) if c})
        out = out * p ** e
    return out


def _expand_factors(factors: dict) -> LaurentQT:
    if not factors:
        return LaurentQT.const(1)
    return _expand_factors_cached(tuple(sorted(factors.items())))


def _cyclotomic_split(poly: list, max_m: int | None = None) -> tuple[dict, list]:
    """Pull cyclotomic factors out of a dense univariate polynomial.

    Returns (factors {m: e}, cofactor).  Candidates are filtered numerically by
    evaluating at primitive roots of unity; every accepted factor is confirmed
    by exact division.
    """
    deg = len(poly) - 1
    factors: dict = {}
    if deg <= 0:
        return factors, poly
    coeffs = np.array([float(c) for c in poly])
    scale = float(np.abs(coeffs).sum()) or 1.0
    bound = max_m or max(4 * deg + 8, 2 * deg * deg + 2)
    cur = list(poly)
    for m in range(1, bound + 1):
        if len(cur) - 1 <= 0:
            break
        phi_deg = _totient(m)
        if phi_deg > len(cur) - 1:
            continue
        z = np.exp(2j * np.pi / m)
        val = np.polyval(np.array([float(c) for c in cur[::-1]]), z)
        if abs(val) > 1e-7 * scale:
            continue
        phi = cyclotomic(m)
        while len(cur) - 1 >= phi_deg:
            quo = _dense_div(cur, phi)
            if quo is None:
                break
            cur = quo
            factors[m] = factors.get(m, 0) + 1
    return factors, cur


def _dense_div(a: list, b: tuple) -> list | None:
    a = list(a)
    db = len(b) - 1
    lead = mpq(b[-1])
    quo = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            c = mpq(c) / lead
            quo[i - db] = c
            for j in range(db + 1):
                if b[j]:
                    a[i - db + j] -= c * b[j]
    if any(a[:db]):
        return None
    return quo


def _factor_denominator(num: LaurentQT, den: LaurentQT) -> tuple[LaurentQT, dict]:
    """Rewrite num/den as num'/prod(Phi) with the cofactor divided out exactly."""
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if den.is_monomial():
        return num.exact_div(den), {}
    factors: dict = {}
    rest = den
    for var in (S, A):
        other = 1 - var
        if any(k[var] != 0 for k in rest._terms) and not any(k[other] != min(kk[other] for kk in rest._terms) for k in rest._terms):
            # depends on one variable only (up to a monomial in the other)
            lo, dense = _univariate_poly(rest, var)
            f, cof = _cyclotomic_split(dense)
            for m, e in f.items():
                factors[(var, m)] = factors.get((var, m), 0) + e
            oth = min(kk[other] for kk in rest._terms)
            rest = LaurentQT(
                {((lo + i, oth) if var == S else (oth, lo + i)): c for i, c in enumerate(cof) if c}
            )
    if not factors:
        # mixed or non-cyclotomic: pull out whatever cyclotomics divide, in each variable
        for var in (S, A):
            for m in range(1, 4 * max(1, rest.max_exponent(var) - rest.min_exponent(var)) + 8):
                if _totient(m) > rest.max_exponent(var) - rest.min_exponent(var):
                    continue
                while True:
                    quo = rest.div_univariate(cyclotomic(m), var)
                    if quo is None:
                        break
                    rest = quo
                    factors[(var, m)] = factors.get((var, m), 0) + 1
    return num.exact_div(rest), factors


# ----------------------------------------------------------------------------
# free functions
# ----------------------------------------------------------------------------


def qint(n: int) -> LaurentQT:
    """[n]_q = q^(-n/2) - q^(n/2)."""
    return LaurentQT({(-n, 0): 1, (n, 0): -1})


def order_at_q1(f) -> int:
    """Vanishing order at q^(1/2) = 1 (numerator minus denominator multiplicity)."""
    f = RationalQT._coerce(f)
    if f.num.is_zero():
        raise ValueError("order at q=1 of zero is undefined")
    num = f.num
    k = 0
    phi1 = cyclotomic(1)
    while True:
        quo = num.div_univariate(phi1, S)
        if quo is None:
            break
        num = quo
        k += 1
    return k - f._den.get((S, 1), 0)


def to_z2_basis(f: LaurentQT) -> dict:
    """Rewrite a q <-> 1/q symmetric f as sum c[g, th] * z^(2g) * t^(th/2).

    Here z^2 = (q^(-1/2) - q^(1/2))^2 = q - 2 + q^(-1).
    """
    if isinstance(f, RationalQT):
        f = f.as_laurent()
    if any(qh % 2 for qh, _ in f._terms):
        raise ValueError("half-integral q powers cannot be written in z^2")
    if f != f.invert_q():
        raise ValueError("input is not symmetric under q -> 1/q")
    out = {}
    for th, sl in f.t_slices().items():
        cur = {qh // 2: c for qh, c in sl.items()}
        while cur:
            top = max(cur)
            c = cur[top]
            if top < 0:
                raise ValueError("input is not symmetric under q -> 1/q")
            out[(top, th)] = c
            # subtract c * (q - 2 + 1/q)^top
            for j in range(2 * top + 1):
                e = j - top
                coef = _z2_power_coeff(top, e)
                if coef:
                    v = cur.get(e, 0) - c * coef
                    if v:
                        cur[e] = v
                    else:
                        cur.pop(e, None)
    return out


@functools.lru_cache(maxsize=None)
def _z2_power_coeff(g: int, e: int) -> int:
    # coefficient of q^e in (q - 2 + q^-1)^g = (q^(1/2) - q^(-1/2))^(2g)
    k = g + e  # choose which of 2g factors contribute +q^(1/2)
    if k < 0 or k > 2 * g:
        return 0
    return math.comb(2 * g, k) * (-1) ** (2 * g - k)


def from_z2_basis(coeffs: Mapping) -> LaurentQT:
    """Inverse of :func:`to_z2_basis`."""
    z2 = LaurentQT({(2, 0): 1, (0, 0): -2, (-2, 0): 1})
    out = LaurentQT()
    for (g, th), c in coeffs.items():
        out = out + (z2 ** g).shift(th=th) * c
    return out


def coeff_ord_p(x, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    x = mpq(x)
    if not x:
        raise ValueError("p-adic valuation of zero is undefined")
    if not gmpy2.is_prime(p):
        raise ValueError(f"{p} is not prime")
    num = gmpy2.remove(abs(x.numerator), p)[1] if x.numerator % p == 0 else 0
    den = gmpy2.remove(x.denominator, p)[1] if x.denominator % p == 0 else 0
    return int(num - den)


def content_ord_p(values: Iterable, p: int) -> int | None:
    """min over all coefficients of coeff_ord_p; None when everything vanishes."""
    best = None
    for v in values:
        terms = v.num._terms if isinstance(v, RationalQT) else v._terms
        for c in terms.values():
            o = coeff_ord_p(c, p)
            best = o if best is None else min(best, o)
    return best
