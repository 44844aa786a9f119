"""Braid words, closure analysis and parallel cabling."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

__all__ = ["BraidWord", "LinkPresentation", "closure_analysis", "cable", "parse_braid"]


@dataclass(frozen=True)
class BraidWord:
    """Signed generator list on ``strands`` strands; +i is sigma_i, -i its inverse."""

    strands: int
    letters: tuple = ()

    def __post_init__(self):
        if self.strands < 1:
            raise ValueError("a braid needs at least one strand")
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        for x in self.letters:
            if x == 0 or abs(x) >= self.strands:
                raise ValueError(f"letter {x} invalid on {self.strands} strands")

    def permutation(self) -> tuple:
        """perm[p] = bottom position reached by the strand starting at top position p."""
        pos = list(range(self.strands))  # pos[k] = strand now at position k
        for x in self.letters:
            i = abs(x)
            pos[i - 1], pos[i] = pos[i], pos[i - 1]
        perm = [0] * self.strands
        for k, s in enumerate(pos):
            perm[s] = k
        return tuple(perm)

    def free_reduce(self) -> "BraidWord":
        out: list = []
        for x in self.letters:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
        return BraidWord(self.strands, tuple(out))

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-x for x in reversed(self.letters)))

    def mirror(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-x for x in self.letters))

    def stabilize(self, sign: int = 1) -> "BraidWord":
        """Markov stabilization: add a strand and the letter +-sigma_n."""
        return BraidWord(self.strands + 1, self.letters + (sign * self.strands,))

    def __str__(self) -> str:
        return " ".join(("s" if x > 0 else "-s") + str(abs(x)) for x in self.letters)


def parse_braid(text: str, strands: int | None = None) -> BraidWord:
    """Parse ``"s1 s2 -s1"`` (also accepts bare signed integers)."""
    letters = []
    for tok in re.split(r"[\s,]+", text.strip()):
        if not tok:
            continue
        m = re.fullmatch(r"(-?)s?(\d+)(\^-1)?", tok)
        if not m:
            raise ValueError(f"bad braid letter {tok!r}")
        x = int(m.group(2))
        if m.group(1):
            x = -x
        if m.group(3):
            x = -x
        letters.append(x)
    if strands is None:
        strands = max((abs(x) for x in letters), default=0) + 1
    return BraidWord(strands, tuple(letters))


@dataclass(frozen=True)
class LinkPresentation:
    braid: BraidWord
    components: tuple  # tuple of sorted tuples of top positions
    comp_of: tuple  # comp_of[p] = component index of top position p
    writhes: tuple
    linking: tuple  # symmetric matrix as nested tuples

    @property
    def L(self) -> int:
        return len(self.components)

    @property
    def total_writhe(self) -> int:
        return sum(1 if x > 0 else -1 for x in self.braid.letters)


def closure_analysis(b: BraidWord) -> LinkPresentation:
    perm = b.permutation()
    seen = [False] * b.strands
    comps = []
    for p in range(b.strands):
        if not seen[p]:
            cyc = []
            j = p
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = perm[j]
            comps.append(tuple(sorted(cyc)))
    comp_of = [0] * b.strands
    for c, cyc in enumerate(comps):
        for p in cyc:
            comp_of[p] = c
    L = len(comps)
    writhe = [0] * L
    mixed = [[0] * L for _ in range(L)]
    pos = list(range(b.strands))
    for x in b.letters:
        i = abs(x)
        sgn = 1 if x > 0 else -1
        ca, cb = comp_of[pos[i - 1]], comp_of[pos[i]]
        if ca == cb:
            writhe[ca] += sgn
        else:
            mixed[ca][cb] += sgn
            mixed[cb][ca] += sgn
        pos[i - 1], pos[i] = pos[i], pos[i - 1]
    for r in mixed:
        for v in r:
            if v % 2:
                raise AssertionError("odd mixed crossing count")
    lk = tuple(tuple(v // 2 for v in r) for r in mixed)
    return LinkPresentation(b, tuple(comps), tuple(comp_of), tuple(writhe), lk)


def cable(b: BraidWord, mult) -> tuple[BraidWord, tuple]:
    """Parallel (blackboard) cable.

    ``mult`` gives the number of parallel copies per closure component; zero
    deletes the component.  Returns the cabled word and, for every original top
    position, the offset of its block in the cabled braid.
    """
    lp = closure_analysis(b)
    if len(mult) != lp.L:
        raise ValueError("need one multiplicity per component")
    width = [mult[lp.comp_of[p]] for p in range(b.strands)]
    pos = list(range(b.strands))
    letters: list = []
    for x in b.letters:
        i = abs(x)
        sgn = 1 if x > 0 else -1
        left, right = pos[i - 1], pos[i]
        wa, wb = width[left], width[right]
        o = sum(width[pos[k]] for k in range(i - 1))
        for r in range(wa - 1, -1, -1):
            for j in range(wb):
                letters.append(sgn * (o + r + j + 1))
        pos[i - 1], pos[i] = right, left
    offsets = []
    acc = 0
    for p in range(b.strands):
        offsets.append(acc)
        acc += width[p]
    return BraidWord(max(acc, 1), tuple(letters)), tuple(offsets)
