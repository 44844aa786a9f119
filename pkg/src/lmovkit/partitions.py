"""Partition combinatorics.

A partition is a weakly decreasing tuple of positive ints, a vector partition a
tuple of partitions (one per link component), and a multipartition a sorted
tuple of nonzero vector partitions (a multiset).
"""

from __future__ import annotations

import functools
import itertools
import math
from collections import Counter
from typing import Iterable, Sequence

from gmpy2 import mpq

Partition = tuple
VectorPartition = tuple
MultiPartition = tuple

__all__ = [
    "Partition",
    "VectorPartition",
    "MultiPartition",
    "partition",
    "enumerate_partitions",
    "enumerate_vector",
    "enumerate_multi",
    "enumerate_vector_upto",
    "size",
    "length",
    "vsize",
    "vlength",
    "norm",
    "conjugate",
    "vconjugate",
    "kappa",
    "contents",
    "hooks",
    "dim",
    "z_mu",
    "character",
    "character_vec",
    "mobius",
    "divisors",
    "theta",
    "aut",
    "gcd_D",
    "divide",
    "scale",
    "sort_key",
    "vsort_key",
    "format_partition",
    "parse_partition",
    "format_vector",
    "parse_vector",
    "vector_from_parts",
]


def partition(parts: Iterable[int]) -> Partition:
    """Normalize to a weakly decreasing tuple; rejects non-positive parts."""
    p = tuple(sorted((int(x) for x in parts), reverse=True))
    if p and p[-1] <= 0:
        raise ValueError(f"partition parts must be positive: {p}")
    return p


def size(lam: Partition) -> int:
    return sum(lam)


def length(lam: Partition) -> int:
    return len(lam)


def vsize(v: VectorPartition) -> tuple:
    return tuple(sum(c) for c in v)


def vlength(v: VectorPartition) -> int:
    return sum(len(c) for c in v)


def norm(v: VectorPartition) -> int:
    """Total number of boxes over all components."""
    return sum(sum(c) for c in v)


def sort_key(lam: Partition) -> tuple:
    """Order by size, then reverse-lexicographic parts ((3) before (2,1))."""
    return (sum(lam), tuple(-x for x in lam))


def vsort_key(v: VectorPartition) -> tuple:
    return tuple(sort_key(c) for c in v)


@functools.lru_cache(maxsize=None)
def _partitions(n: int, maxpart: int) -> tuple:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, maxpart), 0, -1):
        for rest in _partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def enumerate_partitions(n: int) -> list[Partition]:
    """All partitions of n, largest first part first."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return list(_partitions(n, n))


def enumerate_vector(d: Sequence[int]) -> list[VectorPartition]:
    """All vector partitions with component sizes d."""
    return [tuple(c) for c in itertools.product(*(enumerate_partitions(x) for x in d))]


def enumerate_vector_upto(cap: Sequence[int], total: int | None = None) -> list[VectorPartition]:
    """Vector partitions with |A^a| <= cap[a] and optional total bound, sorted."""
    out = []
    for d in itertools.product(*(range(c + 1) for c in cap)):
        if total is not None and sum(d) > total:
            continue
        out.extend(enumerate_vector(d))
    out.sort(key=lambda v: (sum(vsize(v)), vsize(v), vsort_key(v)))
    return out


def enumerate_multi(d: Sequence[int]) -> list[MultiPartition]:
    """Multisets of nonzero vector partitions whose sizes add up to d."""
    d = tuple(d)
    L = len(d)
    pieces = []
    for sub in itertools.product(*(range(x + 1) for x in d)):
        if any(sub):
            for v in enumerate_vector(sub):
                pieces.append(v)
    pieces.sort(key=vsort_key)
    out: list = []

    def rec(start: int, remaining: tuple, acc: list) -> None:
        if not any(remaining):
            out.append(tuple(acc))
            return
        for i in range(start, len(pieces)):
            v = pieces[i]
            sz = vsize(v)
            if all(s <= r for s, r in zip(sz, remaining)):
                acc.append(v)
                rec(i, tuple(r - s for r, s in zip(remaining, sz)), acc)
                acc.pop()

    if L and any(d):
        rec(0, d, [])
    return out


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x > j) for j in range(lam[0]))


def vconjugate(v: VectorPartition) -> VectorPartition:
    return tuple(conjugate(c) for c in v)


def kappa(lam: Partition) -> int:
    return sum(x * (x - 2 * i + 1) for i, x in enumerate(lam, start=1))


def contents(lam: Partition) -> list[int]:
    return [j - i for i, row in enumerate(lam) for j in range(row)]


def hooks(lam: Partition) -> list[int]:
    conj = conjugate(lam)
    return [row - j + conj[j] - i - 1 for i, row in enumerate(lam) for j in range(row)]


def dim(lam: Partition) -> int:
    """Number of standard Young tableaux (hook length formula)."""
    return math.factorial(sum(lam)) // math.prod(hooks(lam))


def z_mu(mu) -> int:
    """Centralizer order; accepts a partition or a vector partition."""
    if mu and isinstance(mu[0], tuple):
        return math.prod(z_mu(c) for c in mu)
    out = 1
    for part, m in Counter(mu).items():
        out *= part ** m * math.factorial(m)
    return out


def _beta(lam: Partition, n: int) -> tuple:
    # beta-numbers with n entries
    lam = tuple(lam) + (0,) * (n - len(lam))
    return tuple(lam[i] + n - 1 - i for i in range(n))


@functools.lru_cache(maxsize=None)
def _mn(beta: frozenset, mu: tuple) -> int:
    if not mu:
        return 1
    r, rest = mu[0], mu[1:]
    total = 0
    for b in beta:
        if b - r >= 0 and (b - r) not in beta:
            # sign = (-1)^(number of beta-numbers strictly between b-r and b)
            between = sum(1 for x in beta if b - r < x < b)
            total += (-1) ** between * _mn(beta - {b} | {b - r}, rest)
    return total


@functools.lru_cache(maxsize=None)
def character(A: Partition, mu: Partition) -> int:
    """Irreducible character chi_A evaluated on the class of cycle type mu."""
    A, mu = tuple(A), tuple(mu)
    if sum(A) != sum(mu):
        raise ValueError(f"size mismatch: |{A}| != |{mu}|")
    n = max(len(A), 1)
    return _mn(frozenset(_beta(A, n)), tuple(sorted(mu, reverse=True)))


def character_vec(A: VectorPartition, mu: VectorPartition) -> int:
    if len(A) != len(mu):
        raise ValueError("component count mismatch")
    return math.prod(character(a, m) for a, m in zip(A, mu))


@functools.lru_cache(maxsize=None)
def mobius(d: int) -> int:
    if d < 1:
        raise ValueError("mobius needs d >= 1")
    out, p, n = 1, 2, d
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            out = -out
        p += 1
    return -out if n > 1 else out


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def aut(lam: MultiPartition) -> int:
    return math.prod(math.factorial(m) for m in Counter(lam).values())


def theta(lam: MultiPartition):
    if not lam:
        raise ValueError("theta of an empty multipartition is undefined")
    ell = len(lam)
    return mpq((-1) ** (ell - 1) * math.factorial(ell - 1), aut(lam))


def gcd_D(v: VectorPartition) -> int:
    parts = [x for c in v for x in c]
    if not parts:
        raise ValueError("gcd_D of the zero vector partition is undefined")
    return math.gcd(*parts)


def divide(v: VectorPartition, d: int) -> VectorPartition:
    if any(x % d for c in v for x in c):
        raise ValueError(f"{d} does not divide every part of {format_vector(v)}")
    return tuple(tuple(x // d for x in c) for c in v)


def scale(v: VectorPartition, d: int) -> VectorPartition:
    return tuple(tuple(x * d for x in c) for c in v)


def format_partition(lam: Partition) -> str:
    return "+".join(str(x) for x in lam) if lam else "0"


def parse_partition(s: str) -> Partition:
    s = s.strip().strip("()")
    if s in ("", "0", "-"):
        return ()
    sep = "+" if "+" in s else ","
    return partition(int(x) for x in s.split(sep) if x.strip())


def format_vector(v: VectorPartition) -> str:
    return "[" + "|".join(format_partition(c) for c in v) + "]"


def parse_vector(s: str) -> VectorPartition:
    s = s.strip()
    if s.startswith("[") and s.endswith("]"):
        return tuple(parse_partition(c) for c in s[1:-1].split("|"))
    return (parse_partition(s),)


def vector_from_parts(*parts: Iterable[int]) -> VectorPartition:
    return tuple(partition(p) for p in parts)
