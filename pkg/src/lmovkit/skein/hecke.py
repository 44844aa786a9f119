"""Hecke algebra H_n in the permutation basis.

Conventions: g_i^2 = z g_i + 1 with z = q^(1/2) - q^(-1/2), so g_i^(-1) = g_i - z.
The framed trace satisfies tr(x (x) 1) = delta tr(x) and tr(x g_(n-1) y) = a tr(xy)
with a = t^(1/2) and delta = (a - 1/a)/z; the empty braid has trace 1.

Two implementations live here.  :class:`HeckeElement` is a sparse dictionary
from permutations to :class:`LaurentQT`, convenient for small checks.
:class:`DenseElement` stores integer coefficient arrays indexed by
(permutation rank, s-exponent[, a-exponent]) and is the workhorse for cabled
braids on up to eight strands.
"""

from __future__ import annotations

import functools
import itertools
import math

import numpy as np

from ..exactring import LaurentQT, RationalQT
from .braids import BraidWord

__all__ = [
    "Z",
    "DELTA",
    "A_PARAM",
    "TRACE_C",
    "HeckeElement",
    "hecke_mul",
    "represent",
    "markov_trace",
    "framed_trace",
    "DenseElement",
    "perm_tables",
]

Z = LaurentQT({(1, 0): 1, (-1, 0): -1})
A_PARAM = LaurentQT({(0, 1): 1})
DELTA = RationalQT(LaurentQT({(0, 1): 1, (0, -1): -1}), Z)
TRACE_C = RationalQT(A_PARAM) / DELTA


# ----------------------------------------------------------------------------
# permutation tables
# ----------------------------------------------------------------------------


class _Tables:
    """Index tables for S_n: one-line tuples, ranks, generator actions."""

    def __init__(self, n: int):
        self.n = n
        self.perms = list(itertools.permutations(range(n)))
        self.index = {p: k for k, p in enumerate(self.perms)}
        arr = np.array(self.perms, dtype=np.int64).reshape(len(self.perms), n)
        self.swap = {}
        self.desc = {}
        for i in range(1, n):
            sw = arr.copy()
            sw[:, [i - 1, i]] = sw[:, [i, i - 1]]
            self.swap[i] = np.array([self.index[tuple(r)] for r in sw.tolist()], dtype=np.int64)
            self.desc[i] = np.nonzero(arr[:, i - 1] > arr[:, i])[0]
        # conditional-expectation gathers: coset[k][r] = rank of the w with n-1 at
        # position k whose remaining entries form perms_{n-1}[r]
        self.coset = {}
        if n >= 1:
            lower = list(itertools.permutations(range(n - 1)))
            for k in range(n):
                self.coset[k] = np.array(
                    [self.index[p[:k] + (n - 1,) + p[k:]] for p in lower], dtype=np.int64
                )


@functools.lru_cache(maxsize=None)
def perm_tables(n: int) -> _Tables:
    return _Tables(n)


# ----------------------------------------------------------------------------
# sparse elements
# ----------------------------------------------------------------------------


class HeckeElement:
    """Sparse element of H_n: {one-line permutation: LaurentQT}."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict | None = None):
        self.n = n
        self.terms = {}
        for w, c in (terms or {}).items():
            c = LaurentQT._coerce(c)
            if not c.is_zero():
                self.terms[tuple(w)] = c

    @classmethod
    def identity(cls, n: int) -> "HeckeElement":
        return cls(n, {tuple(range(n)): 1})

    @classmethod
    def generator(cls, n: int, i: int, sign: int = 1) -> "HeckeElement":
        return cls.identity(n).right_gen(i, sign)

    def __eq__(self, other) -> bool:
        return isinstance(other, HeckeElement) and self.n == other.n and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        _check_level(self, other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return HeckeElement(self.n, out)

    def __neg__(self) -> "HeckeElement":
        return HeckeElement(self.n, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        return self + (-other)

    def scale(self, c) -> "HeckeElement":
        return HeckeElement(self.n, {w: v * c for w, v in self.terms.items()})

    def right_gen(self, i: int, sign: int = 1) -> "HeckeElement":
        """Multiply on the right by g_i (sign=+1) or g_i^(-1) (sign=-1)."""
        if not 1 <= i < self.n:
            raise ValueError(f"generator {i} out of range for H_{self.n}")
        out: dict = {}
        for w, c in self.terms.items():
            ws = list(w)
            ws[i - 1], ws[i] = ws[i], ws[i - 1]
            ws = tuple(ws)
            out[ws] = out[ws] + c if ws in out else c
            if w[i - 1] > w[i]:
                out[w] = out[w] + Z * c if w in out else Z * c
            if sign < 0:
                out[w] = out[w] - Z * c if w in out else -(Z * c)
        return HeckeElement(self.n, out)

    def __mul__(self, other):
        if isinstance(other, HeckeElement):
            return hecke_mul(self, other)
        return self.scale(other)

    def embed(self, n: int, offset: int = 0) -> "HeckeElement":
        """View inside H_n acting on positions offset..offset+self.n-1."""
        out = {}
        for w, c in self.terms.items():
            full = list(range(n))
            for k, v in enumerate(w):
                full[offset + k] = offset + v
            out[tuple(full)] = c
        return HeckeElement(n, out)

    def __repr__(self) -> str:
        return f"HeckeElement(n={self.n}, terms={len(self.terms)})"


def _check_level(a: HeckeElement, b: HeckeElement) -> None:
    if a.n != b.n:
        raise ValueError(f"level mismatch: H_{a.n} vs H_{b.n}")


def reduced_word(w: tuple) -> list[int]:
    """Generators i_1..i_k with T_w = g_(i_1)...g_(i_k) (bubble sort)."""
    w = list(w)
    word: list = []
    # sort w back to identity by adjacent swaps; record them in reverse
    changed = True
    while changed:
        changed = False
        for i in range(1, len(w)):
            if w[i - 1] > w[i]:
                w[i - 1], w[i] = w[i], w[i - 1]
                word.append(i)
                changed = True
    return word[::-1]


def hecke_mul(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    _check_level(a, b)
    out = HeckeElement(a.n)
    for w, c in b.terms.items():
        x = a
        for i in reduced_word(w):
            x = x.right_gen(i)
        out = out + x.scale(c)
    return out


def represent(b: BraidWord) -> HeckeElement:
    x = HeckeElement.identity(b.strands)
    for letter in b.letters:
        x = x.right_gen(abs(letter), 1 if letter > 0 else -1)
    return x


def _sparse_expectation(x: HeckeElement) -> dict:
    """Framed conditional expectation H_n -> H_(n-1) with RationalQT coefficients."""
    n = x.n
    out: dict = {}
    for w, c in x.terms.items():
        k = w.index(n - 1)
        wp = w[:k] + w[k + 1 :]
        if k == n - 1:
            elem = HeckeElement(n - 1, {wp: 1})
            coef = DELTA * c
        else:
            elem = HeckeElement(n - 1, {wp: 1})
            for i in range(n - 2, k, -1):
                elem = elem.right_gen(i)
            coef = RationalQT(A_PARAM * c)
        for ww, cc in elem.terms.items():
            v = coef * cc
            out[ww] = out[ww] + v if ww in out else v
    return out


def framed_trace(x: HeckeElement) -> RationalQT:
    """Framed trace: the framed HOMFLY of the closure of x (empty closure = 1)."""
    cur = {w: RationalQT(c) for w, c in x.terms.items()}
    n = x.n
    while n > 0:
        nxt: dict = {}
        for w, c in cur.items():
            # reuse the sparse expectation on a single basis element
            part = _sparse_expectation(HeckeElement(n, {w: 1}))
            for ww, cc in part.items():
                v = cc * c
                nxt[ww] = nxt[ww] + v if ww in nxt else v
        cur = {w: c for w, c in nxt.items() if not c.is_zero()}
        n -= 1
    return cur.get((), RationalQT(0))


def markov_trace(x: HeckeElement) -> RationalQT:
    """Normalized Ocneanu trace: tr(1) = 1, tr(x g_(n-1) y) = TRACE_C tr(xy)."""
    return framed_trace(x) / DELTA ** x.n


# ----------------------------------------------------------------------------
# dense elements
# ----------------------------------------------------------------------------

_LIMIT = 1 << 60


class DenseElement:
    """Element of H_n as an integer array data[perm, s_exp - s_off(, a_exp - a_off)]."""

    __slots__ = ("n", "data", "s_off", "a_off")

    def __init__(self, n: int, data: np.ndarray, s_off: int = 0, a_off: int | None = None):
        self.n = n
        self.data = data
        self.s_off = s_off
        self.a_off = a_off

    @classmethod
    def identity(cls, n: int) -> "DenseElement":
        tab = perm_tables(n)
        data = np.zeros((len(tab.perms), 1), dtype=np.int64)
        data[tab.index[tuple(range(n))], 0] = 1
        return cls(n, data, 0)

    def copy(self) -> "DenseElement":
        return DenseElement(self.n, self.data.copy(), self.s_off, self.a_off)

    # -- arithmetic helpers ----------------------------------------------
    def _ensure_room(self) -> None:
        if self.data.dtype != object:
            m = int(np.abs(self.data).max()) if self.data.size else 0
            if m >= _LIMIT // 4:
                self.data = self.data.astype(object)

    def right_gen(self, i: int, sign: int = 1) -> "DenseElement":
        """In-place right multiplication by g_i^(sign)."""
        tab = perm_tables(self.n)
        self._ensure_room()
        A = self.data
        shape = list(A.shape)
        shape[1] += 2
        out = np.zeros(shape, dtype=A.dtype)
        out[:, 1:-1] = A[tab.swap[i]]
        rows = tab.desc[i]
        if sign > 0:
            sub = A[rows]
            out[rows, 2:] += sub
            out[rows, :-2] -= sub
        else:
            # g^-1 = g - z: descents cancel, ascents pick up -z
            mask = np.ones(A.shape[0], dtype=bool)
            mask[rows] = False
            rows = np.nonzero(mask)[0]
            sub = A[rows]
            out[rows, 2:] -= sub
            out[rows, :-2] += sub
        self.data = out
        self.s_off -= 1
        return self

    def apply_word(self, letters) -> "DenseElement":
        for k, x in enumerate(letters):
            self.right_gen(abs(x), 1 if x > 0 else -1)
            if k % 8 == 7:
                self.trim()
        return self.trim()

    def trim(self) -> "DenseElement":
        A = self.data
        if A.size == 0:
            return self
        axes = tuple(ax for ax in range(A.ndim) if ax != 1)
        nz = np.nonzero(np.any(A != 0, axis=axes))[0]
        if nz.size == 0:
            self.data = A[:, :1] * 0
            return self
        lo, hi = int(nz[0]), int(nz[-1])
        if lo or hi < A.shape[1] - 1:
            self.data = A[:, lo : hi + 1].copy()
            self.s_off += lo
        if A.ndim == 3:
            B = self.data
            nz = np.nonzero(np.any(B != 0, axis=(0, 1)))[0]
            lo, hi = int(nz[0]), int(nz[-1])
            if lo or hi < B.shape[2] - 1:
                self.data = B[:, :, lo : hi + 1].copy()
                self.a_off += lo
        return self

    def __add__(self, other: "DenseElement") -> "DenseElement":
        return _aligned_sum([self, other])

    def scaled_trace(self) -> LaurentQT:
        """z^n times the framed trace, as a Laurent polynomial in (s, a)."""
        cur = self
        if cur.data.ndim == 2:
            cur = DenseElement(cur.n, cur.data[:, :, None], cur.s_off, 0)
        while cur.n > 0:
            cur = _scaled_expectation(cur)
        vec = cur.data[0]
        out = {}
        for (i, j) in zip(*np.nonzero(vec)):
            out[(int(i) + cur.s_off, int(j) + cur.a_off)] = int(vec[i, j])
        return LaurentQT(out)

    def framed_trace(self) -> RationalQT:
        return RationalQT(self.scaled_trace()) / RationalQT(Z) ** self.n


def _aligned_sum(elems: list) -> DenseElement:
    elems = [e for e in elems if e is not None]
    n = elems[0].n
    three = elems[0].data.ndim == 3
    s_lo = min(e.s_off for e in elems)
    s_hi = max(e.s_off + e.data.shape[1] for e in elems)
    shape = [elems[0].data.shape[0], s_hi - s_lo]
    if three:
        a_lo = min(e.a_off for e in elems)
        a_hi = max(e.a_off + e.data.shape[2] for e in elems)
        shape.append(a_hi - a_lo)
    dtype = object if any(e.data.dtype == object for e in elems) else np.int64
    if dtype != object:
        total = sum(int(np.abs(e.data).max()) if e.data.size else 0 for e in elems)
        if total >= _LIMIT:
            dtype = object
    out = np.zeros(shape, dtype=dtype)
    for e in elems:
        ds = e.s_off - s_lo
        if three:
            da = e.a_off - a_lo
            out[:, ds : ds + e.data.shape[1], da : da + e.data.shape[2]] += e.data
        else:
            out[:, ds : ds + e.data.shape[1]] += e.data
    return DenseElement(n, out, s_lo, a_lo if three else None)


def _shift_a(e: DenseElement, k: int) -> DenseElement:
    return DenseElement(e.n, e.data, e.s_off, e.a_off + k)


def _scaled_expectation(x: DenseElement) -> DenseElement:
    """z * E: H_n -> H_(n-1) on 3-axis dense arrays."""
    n = x.n
    tab = perm_tables(n)
    parts = []
    # n-1 fixed: (a - 1/a) T_w'
    top = DenseElement(n - 1, x.data[tab.coset[n - 1]], x.s_off, x.a_off)
    parts.append(_shift_a(top, 1))
    neg = DenseElement(n - 1, -top.data, top.s_off, top.a_off)
    parts.append(_shift_a(neg, -1))
    # otherwise: a z T_w' g_(n-2) ... g_(k+1)
    acc = []
    for k in range(n - 1):
        e = DenseElement(n - 1, x.data[tab.coset[k]], x.s_off, x.a_off)
        for i in range(n - 2, k, -1):
            e.right_gen(i)
        acc.append(e)
    if acc:
        s = _aligned_sum(acc)
        s._ensure_room()
        shape = list(s.data.shape)
        shape[1] += 2
        out = np.zeros(shape, dtype=s.data.dtype)
        out[:, 2:] += s.data
        out[:, :-2] -= s.data
        parts.append(DenseElement(n - 1, out, s.s_off - 1, s.a_off + 1))
    return _aligned_sum(parts).trim()
