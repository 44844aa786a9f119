import itertools
import math
from fractions import Fraction

import pytest

from lmovkit.partitions import (
    character,
    character_vec,
    conjugate,
    contents,
    dim,
    divide,
    divisors,
    enumerate_multi,
    enumerate_partitions,
    enumerate_vector,
    enumerate_vector_upto,
    format_partition,
    format_vector,
    gcd_D,
    kappa,
    mobius,
    parse_partition,
    parse_vector,
    theta,
    z_mu,
)

# partition numbers p(0..10)
PARTITION_COUNTS = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


def _syt_count(shape):
    """Standard tableaux by removing corners."""
    shape = tuple(x for x in shape if x)
    if not shape:
        return 1
    total = 0
    for i, row in enumerate(shape):
        if i + 1 == len(shape) or shape[i + 1] < row:
            total += _syt_count(shape[:i] + (row - 1,) + shape[i + 1 :])
    return total


def _kostka(shape, weight):
    """Semistandard tableaux of the given shape and content, by brute force."""
    cells = [(i, j) for i, row in enumerate(shape) for j in range(row)]
    letters = [v for v, m in enumerate(weight) for _ in range(m)]
    count = 0
    for filling in set(itertools.permutations(letters)):
        T = dict(zip(cells, filling))
        ok = all(
            (j == 0 or T[(i, j - 1)] <= T[(i, j)]) and (i == 0 or T[(i - 1, j)] < T[(i, j)])
            for (i, j) in cells
        )
        count += ok
    return count


def _perm_module_char(lam, mu):
    """Fixed tabloids of a permutation of cycle type mu: assignments of cycles to rows."""
    count = 0
    for rows in itertools.product(range(len(lam)), repeat=len(mu)):
        fill = [0] * len(lam)
        for r, c in zip(rows, mu):
            fill[r] += c
        count += tuple(fill) == tuple(lam)
    return count


def _brute_characters(n):
    parts = sorted(enumerate_partitions(n), reverse=True)
    chi = {}
    for lam in parts:
        for mu in parts:
            val = _perm_module_char(lam, mu)
            for A in parts:
                if A > lam:
                    val -= _kostka(A, lam) * chi[(A, mu)]
            chi[(lam, mu)] = val
    return chi


@pytest.mark.parametrize("n", range(11))
def test_partition_counts(n):
    parts = enumerate_partitions(n)
    assert len(parts) == PARTITION_COUNTS[n]
    assert len(set(parts)) == len(parts)
    assert all(sum(p) == n and list(p) == sorted(p, reverse=True) for p in parts)


def test_conjugate_examples_and_involution():
    assert conjugate((3, 1)) == (2, 1, 1)
    assert conjugate((2, 2)) == (2, 2)
    assert conjugate(()) == ()
    for n in range(8):
        for p in enumerate_partitions(n):
            assert conjugate(conjugate(p)) == p


def test_kappa_examples():
    assert kappa((2,)) == 2
    assert kappa((1, 1)) == -2
    assert kappa((3,)) == 6
    assert kappa((2, 1)) == 0
    for n in range(8):
        for p in enumerate_partitions(n):
            assert kappa(p) == 2 * sum(contents(p))
            assert kappa(conjugate(p)) == -kappa(p)


def test_dim_is_hook_length_count():
    for n in range(8):
        for p in enumerate_partitions(n):
            assert dim(p) == _syt_count(p)
        assert sum(dim(p) ** 2 for p in enumerate_partitions(n)) == math.factorial(n)


def test_z_mu_examples():
    assert z_mu((1, 1)) == 2
    assert z_mu((2,)) == 2
    assert z_mu((2, 1, 1)) == 4
    assert z_mu(((2,), (1, 1))) == 4
    for n in range(1, 8):
        assert sum(Fraction(1, z_mu(m)) for m in enumerate_partitions(n)) == 1


def test_character_examples():
    assert character((2, 1), (3,)) == -1
    assert character((2, 1), (1, 1, 1)) == 2
    assert character((1, 1, 1), (2, 1)) == -1
    assert character((), ()) == 1


@pytest.mark.parametrize("n", range(1, 6))
def test_murnaghan_nakayama_matches_brute_force(n):
    chi = _brute_characters(n)
    for (A, mu), val in chi.items():
        assert character(A, mu) == val


@pytest.mark.parametrize("n", range(1, 8))
def test_character_orthogonality(n):
    parts = enumerate_partitions(n)
    for A in parts:
        for B in parts:
            s = sum(Fraction(character(A, m) * character(B, m), z_mu(m)) for m in parts)
            assert s == (A == B)
    for m in parts:
        for m2 in parts:
            s = sum(character(A, m) * character(A, m2) for A in parts)
            assert s == (z_mu(m) if m == m2 else 0)


def test_character_vec_is_product():
    A = ((2, 1), (1,))
    mu = ((1, 1, 1), (1,))
    assert character_vec(A, mu) == 2


def test_mobius_sums():
    for n in range(1, 1001):
        assert sum(mobius(d) for d in divisors(n)) == (n == 1)
    assert [mobius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]


def test_theta_examples():
    assert theta((((1,),),)) == 1
    assert theta((((1,),), ((1,),))) == Fraction(-1, 2)
    assert theta((((1,),), ((2,),))) == -1
    assert theta((((1,),),) * 3) == Fraction(2, 6)
    with pytest.raises(ValueError):
        theta(())


def test_gcd_and_divide():
    v = ((4, 2), (6,))
    assert gcd_D(v) == 2
    assert divide(v, 2) == ((2, 1), (3,))
    with pytest.raises(ValueError):
        divide(v, 4)
    with pytest.raises(ValueError):
        gcd_D(((), ()))


def test_vector_enumeration():
    assert len(enumerate_vector((2, 1))) == 2
    assert len(enumerate_vector_upto((2, 2))) == 16
    assert len(enumerate_vector_upto((3, 3), 3)) == sum(
        PARTITION_COUNTS[a] * PARTITION_COUNTS[b] for a in range(4) for b in range(4) if a + b <= 3
    )
    # multisets of nonzero pieces with total size (1, 1): {[1|1]} and {[1|0], [0|1]}
    assert len(enumerate_multi((1, 1))) == 2
    # {1,1,1}, {1,(2)}, {1,(1,1)}, {(3)}, {(2,1)}, {(1,1,1)}
    assert len(enumerate_multi((3,))) == 6


def test_text_round_trip():
    assert format_partition((3, 1)) == "3+1"
    assert format_partition(()) == "0"
    assert format_vector(((2,), ())) == "[2|0]"
    assert parse_vector("[2+1|0]") == ((2, 1), ())
    assert parse_partition("0") == ()
    for v in enumerate_vector_upto((3, 2)):
        assert parse_vector(format_vector(v)) == v
