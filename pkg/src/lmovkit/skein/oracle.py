"""Independent HOMFLY evaluation by skein recursion on braid closures.

Crossings are switched or smoothed until the diagram is descending, using
X+ - X- = z X0 in the framed skein.  A descending diagram is a stacked
unlink whose framed value is prod_a a^(w_a) times delta^L.  Nothing here
touches the Hecke algebra.
"""

from __future__ import annotations

import functools

from ..exactring import LaurentQT, RationalQT
from .braids import BraidWord, closure_analysis

__all__ = ["framed_skein", "homfly_skein"]

_Z = LaurentQT({(1, 0): 1, (-1, 0): -1})
_DELTA = RationalQT(LaurentQT({(0, 1): 1, (0, -1): -1}), _Z)


def _first_bad_crossing(strands: int, letters: tuple) -> int | None:
    """Index of the first crossing met from below, or None if descending."""
    lp = closure_analysis(BraidWord(strands, letters))
    seen = set()
    for comp in lp.components:
        start = comp[0]
        top = start
        while True:
            pos = top
            for t, x in enumerate(letters):
                i = abs(x)
                if pos == i - 1:
                    over = x > 0  # moving right: over in sigma_i, under in its inverse
                    if t not in seen:
                        if not over:
                            return t
                        seen.add(t)
                    pos = i
                elif pos == i:
                    over = x < 0
                    if t not in seen:
                        if not over:
                            return t
                        seen.add(t)
                    pos = i - 1
            top = pos
            if top == start:
                break
    return None


@functools.lru_cache(maxsize=None)
def _framed(strands: int, letters: tuple) -> RationalQT:
    t = _first_bad_crossing(strands, letters)
    if t is None:
        lp = closure_analysis(BraidWord(strands, letters))
        a_exp = sum(lp.writhes)
        return RationalQT(LaurentQT({(0, a_exp): 1})) * _DELTA ** lp.L
    x = letters[t]
    switched = letters[:t] + (-x,) + letters[t + 1 :]
    smoothed = letters[:t] + letters[t + 1 :]
    sign = 1 if x > 0 else -1
    return _framed(strands, switched) + RationalQT(_Z * sign) * _framed(strands, smoothed)


def framed_skein(b: BraidWord) -> RationalQT:
    """Framed HOMFLY (blackboard framing) of the closure of b."""
    return _framed(b.strands, tuple(b.letters))


def homfly_skein(b: BraidWord) -> RationalQT:
    """Framing-independent HOMFLY, normalized so the unknot gives delta."""
    w = sum(1 if x > 0 else -1 for x in b.letters)
    return framed_skein(b) * RationalQT(LaurentQT({(0, -w): 1}))
