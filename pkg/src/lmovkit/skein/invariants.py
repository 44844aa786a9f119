"""HOMFLY of braid closures and colored invariants via cabling and idempotents.

The central idempotent of block A in H_n is a polynomial in a central element X
that separates blocks: the full twist (eigenvalue q^(kappa_A/2)) whenever those
eigenvalues are distinct, otherwise the Jucys-Murphy sum (eigenvalue
sum over boxes of q^content), which always separates.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass

from ..exactring import LaurentQT, RationalQT
from ..partitions import contents, dim, enumerate_partitions, kappa
from .braids import BraidWord, LinkPresentation, cable, closure_analysis
from .hecke import A_PARAM, DELTA, DenseElement, HeckeElement, Z, framed_trace, represent

__all__ = [
    "MAX_LEVEL",
    "ColoredLink",
    "homfly",
    "eigen_data",
    "central_idempotent",
    "separating_words",
    "colored_invariant",
    "colored_framed",
    "framing_unit",
    "TraceTable",
]

MAX_LEVEL = 7


@dataclass(frozen=True)
class ColoredLink:
    braid: BraidWord
    colors: tuple  # one partition per closure component

    def __post_init__(self):
        lp = closure_analysis(self.braid)
        if len(self.colors) != lp.L:
            raise ValueError(f"{lp.L} components need {lp.L} colors, got {len(self.colors)}")


def homfly(lp: LinkPresentation | BraidWord) -> RationalQT:
    """Framing-independent HOMFLY with the unknot normalized to delta."""
    b = lp.braid if isinstance(lp, LinkPresentation) else lp
    framed = DenseElement.identity(b.strands).apply_word(b.letters).framed_trace()
    w = sum(1 if x > 0 else -1 for x in b.letters)
    return framed * RationalQT(LaurentQT({(0, -w): 1}))


# ----------------------------------------------------------------------------
# separating central element
# ----------------------------------------------------------------------------


def _full_twist_word(n: int, offset: int = 0) -> list:
    return [offset + i for _ in range(n) for i in range(1, n)]


def _jm_words(n: int, offset: int = 0) -> list:
    """Words whose sum is the Jucys-Murphy sum L_1 + ... + L_n."""
    out = [[]]
    for k in range(2, n + 1):
        down = [offset + i for i in range(k - 1, 0, -1)]
        out.append(down + down[::-1])
    return out


@functools.lru_cache(maxsize=None)
def eigen_data(n: int) -> tuple:
    """(kind, {A: eigenvalue}) for the separating element at level n."""
    if n > MAX_LEVEL:
        raise ValueError(f"idempotents are only supported up to level {MAX_LEVEL}")
    parts = enumerate_partitions(n)
    kap = [kappa(A) for A in parts]
    if len(set(kap)) == len(kap):
        return "twist", {A: LaurentQT({(k, 0): 1}) for A, k in zip(parts, kap)}
    ev = {}
    for A in parts:
        c: dict = {}
        for x in contents(A):
            c[(2 * x, 0)] = c.get((2 * x, 0), 0) + 1
        ev[A] = LaurentQT(c)
    if len(set(ev.values())) != len(ev):
        raise AssertionError("Jucys-Murphy eigenvalues failed to separate blocks")
    return "jm", ev


def separating_words(n: int, offset: int = 0) -> list:
    """The separating element X as a list of braid words to be summed."""
    kind, _ = eigen_data(n)
    return [_full_twist_word(n, offset)] if kind == "twist" else _jm_words(n, offset)


@functools.lru_cache(maxsize=None)
def _interpolation(A: tuple) -> tuple:
    """(coefficients c_j as LaurentQT, denominator LaurentQT) with e_A = sum c_j X^j / den."""
    n = sum(A)
    _, ev = eigen_data(n)
    poly = [LaurentQT.const(1)]
    den = LaurentQT.const(1)
    for B, lam in ev.items():
        if B == A:
            continue
        # poly *= (X - lam)
        new = [LaurentQT() for _ in range(len(poly) + 1)]
        for j, c in enumerate(poly):
            new[j + 1] = new[j + 1] + c
            new[j] = new[j] - c * lam
        poly = new
        den = den * (ev[A] - lam)
    return tuple(poly), den


def central_idempotent(A: tuple) -> tuple:
    """Sparse central idempotent of block A as (numerator HeckeElement, denominator).

    e_A = numerator / denominator; the denominator is a Laurent polynomial in q^(1/2).
    """
    A = tuple(A)
    n = sum(A)
    coeffs, den = _interpolation(A)
    words = separating_words(n)
    X = HeckeElement(n)
    for w in words:
        X = X + represent(BraidWord(max(n, 1), tuple(w)))
    acc = HeckeElement.identity(n).scale(coeffs[0])
    power = HeckeElement.identity(n)
    for c in coeffs[1:]:
        power = power * X
        acc = acc + power.scale(c)
    return acc, den


# ----------------------------------------------------------------------------
# colored invariants
# ----------------------------------------------------------------------------


def framing_unit(A: tuple) -> LaurentQT:
    """Eigenvalue of a positive full-twist framing change on color A: q^(kappa/2) t^(|A|/2)."""
    return LaurentQT({(kappa(A), sum(A)): 1})


class TraceTable:
    """Scaled traces z^N tr(beta_cab X_1^j_1 ... X_L^j_L) for one braid and size vector.

    Shared by every color vector with the same component sizes.
    """

    def __init__(self, braid: BraidWord, sizes: tuple):
        self.braid = braid
        self.sizes = tuple(sizes)
        lp = closure_analysis(braid)
        cab, offsets = cable(braid, self.sizes)
        self.cabled = cab
        self.N = cab.strands if any(self.sizes) else 0
        self.blocks = []
        for alpha, comp in enumerate(lp.components):
            n = self.sizes[alpha]
            if n:
                self.blocks.append((alpha, n, offsets[comp[0]]))
        self._traces: dict | None = None

    def _apply_sum(self, elem: DenseElement, words: list) -> DenseElement:
        parts = []
        for w in words:
            parts.append(elem.copy().apply_word(w))
        out = parts[0]
        for p in parts[1:]:
            out = out + p
        return out.trim()

    def traces(self) -> dict:
        """{(j_1, ..., j_k): LaurentQT} over the nonempty blocks."""
        if self._traces is not None:
            return self._traces
        if not self.blocks:
            self._traces = {(): LaurentQT.const(1)}
            return self._traces
        base = DenseElement.identity(self.N).apply_word(self.cabled.letters)
        out: dict = {}

        def rec(elem: DenseElement, k: int, prefix: tuple) -> None:
            if k == len(self.blocks):
                out[prefix] = elem.scaled_trace()
                return
            _, n, off = self.blocks[k]
            words = separating_words(n, off)
            count = len(enumerate_partitions(n))
            cur = elem
            for j in range(count):
                if j:
                    cur = self._apply_sum(cur, words)
                rec(cur, k + 1, prefix + (j,))

        rec(base, 0, ())
        self._traces = out
        return out


_TABLES: dict = {}


def _trace_table(braid: BraidWord, sizes: tuple) -> TraceTable:
    key = (braid.strands, braid.letters, sizes)
    tab = _TABLES.get(key)
    if tab is None:
        tab = TraceTable(braid, sizes)
        _TABLES[key] = tab
    return tab


def colored_framed(braid: BraidWord, colors: tuple) -> RationalQT:
    """Blackboard-framed colored invariant of the closure (no framing correction)."""
    colors = tuple(tuple(A) for A in colors)
    sizes = tuple(sum(A) for A in colors)
    tab = _trace_table(braid, sizes)
    traces = tab.traces()
    if not tab.blocks:
        return RationalQT(1)
    interp = [_interpolation(colors[alpha]) for alpha, _, _ in tab.blocks]
    num = LaurentQT()
    for js, tr in traces.items():
        c = LaurentQT.const(1)
        for (coeffs, _), j in zip(interp, js):
            c = c * coeffs[j]
            if c.is_zero():
                break
        if not c.is_zero():
            num = num + c * tr
    den = LaurentQT.const(math.prod(dim(colors[alpha]) for alpha, _, _ in tab.blocks))
    for _, d in interp:
        den = den * d
    return RationalQT(num, den) / RationalQT(Z) ** tab.N


def colored_invariant(cl: ColoredLink | BraidWord, colors: tuple | None = None) -> RationalQT:
    """Framing-corrected colored invariant W_A of a braid closure."""
    if isinstance(cl, ColoredLink):
        braid, colors = cl.braid, cl.colors
    else:
        braid = cl
    colors = tuple(tuple(A) for A in colors)
    if any(sum(A) > MAX_LEVEL for A in colors):
        raise ValueError(f"color size exceeds {MAX_LEVEL}")
    lp = closure_analysis(braid)
    if len(colors) != lp.L:
        raise ValueError(f"{lp.L} components need {lp.L} colors")
    val = colored_framed(braid, colors)
    corr = LaurentQT.const(1)
    for A, w in zip(colors, lp.writhes):
        if A and w:
            corr = corr * framing_unit(A) ** (-w)
    return val * RationalQT(corr)
