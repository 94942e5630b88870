import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hyperetf import groups
from hyperetf.errors import NotDifferenceSet, TooLarge
from hyperetf.golden import Z2_4_PAIR_D, Z2_4_PAIR_D_PRIME
from hyperetf.verify import certify, welch_bound_sq

from oracles import brute_difference_set, kron_character_table

Z2_4 = groups.AbelianGroup((2, 2, 2, 2))
Z4_2 = groups.AbelianGroup((4, 4))
Z2_Z8 = groups.AbelianGroup((2, 8))
Z2_Z2_Z4 = groups.AbelianGroup((2, 2, 4))


def elements(G, strs):
    return sorted(G.parse_element(s) for s in strs)


def test_group_basics():
    assert (Z2_Z2_Z4.order, Z2_Z2_Z4.exponent) == (16, 4)
    assert Z2_4.parse_element("0010") == 2
    assert Z2_4.format_element(9) == "1001"
    assert groups.AbelianGroup.parse("2, 8") == Z2_Z8
    assert str(Z4_2) == "Z4 x Z4"
    with pytest.raises(ValueError):
        Z2_4.parse_element("012")
    with pytest.raises(ValueError):
        groups.AbelianGroup((1, 2))


@pytest.mark.parametrize("G", [Z2_4, Z4_2, Z2_Z8, Z2_Z2_Z4, groups.AbelianGroup((3, 5))])
def test_character_table_matches_kronecker_oracle(G):
    H = groups.character_table(G)
    assert H.conductor == G.exponent
    assert np.allclose(H.to_complex(), kron_character_table(G.invariant_factors))
    assert H @ H.H == H.identity(G.order) * G.order


def test_small_character_tables():
    H = groups.character_table(groups.AbelianGroup((2,)))
    assert np.allclose(H.to_complex(), [[1, 1], [1, -1]])
    H4 = groups.character_table(groups.AbelianGroup((4,))).to_complex()
    assert np.allclose(H4 ** 4, 1)
    with pytest.raises(TooLarge):
        groups.character_table(groups.AbelianGroup((4097,)))


def test_difference_set_examples():
    assert groups.is_difference_set(Z2_4, elements(Z2_4, Z2_4_PAIR_D)) == 2
    assert groups.is_difference_set(Z2_4, elements(Z2_4, Z2_4_PAIR_D_PRIME)) == 6
    assert groups.is_difference_set(groups.AbelianGroup((4,)), [0, 1]) is None
    assert groups.is_difference_set(groups.AbelianGroup((7,)), [1, 2, 4]) == 1


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([Z2_4, Z4_2, Z2_Z8, Z2_Z2_Z4]), st.sets(st.integers(0, 15), min_size=1, max_size=15))
def test_difference_set_matches_oracle_and_complement(G, D):
    lam = groups.is_difference_set(G, D)
    assert lam == brute_difference_set(G.invariant_factors, sorted(D))
    comp = set(range(16)) - D
    if len(comp) > 1:
        assert (lam is None) == (groups.is_difference_set(G, comp) is None)


def test_difference_set_enumeration_matches_oracle():
    found = groups.difference_sets(Z2_Z8, 6)
    brute = [D for D in itertools.combinations(range(16), 6)
             if brute_difference_set((2, 8), D) is not None]
    assert found == brute
    assert len(groups.difference_sets(Z2_4, 6)) == 448
    assert len(groups.difference_sets(Z2_4, 10)) == 448


def test_harmonic_etfs():
    G7 = groups.AbelianGroup((7,))
    c = certify(groups.harmonic_etf(G7, [1, 2, 4]))
    assert c.is_etf
    assert (c.m, c.n, c.coherence_sq) == (3, 7, welch_bound_sq(7, 3))
    c = certify(groups.harmonic_etf(Z2_4, elements(Z2_4, Z2_4_PAIR_D)))
    assert c.is_etf and (c.m, c.n) == (6, 16)
    with pytest.raises(NotDifferenceSet):
        groups.harmonic_etf(groups.AbelianGroup((4,)), [0, 1])


def test_canonical_translate():
    D = elements(Z2_4, Z2_4_PAIR_D)
    c = groups.canonical_translate(Z2_4, D)
    assert c[0] == 0
    for t in range(16):
        assert groups.canonical_translate(Z2_4, Z2_4.translate(D, t)) == c


def _oracle_pair_ok(G, D, Dp):
    if brute_difference_set(G.invariant_factors, D) is None:
        return False
    if brute_difference_set(G.invariant_factors, Dp) is None:
        return False
    M = kron_character_table(G.invariant_factors)[np.ix_(D, Dp)]
    m, n = M.shape
    for A in (M, M.conj().T):
        Gm = np.abs(A.conj().T @ A) ** 2
        off = Gm[~np.eye(len(Gm), dtype=bool)]
        if np.ptp(off) > 1e-9:
            return False
    d = np.linalg.matrix_rank(M)
    lhs = np.sqrt((n - d) / (d * (n - 1))) / n
    rhs = np.sqrt((m - d) / (d * (m - 1))) / m
    return abs(lhs - rhs) < 1e-12


@pytest.fixture(scope="module")
def searches():
    return {G: groups.paired_search(G, 6, 10) for G in (Z2_4, Z4_2, Z2_Z8, Z2_Z2_Z4)}


def test_paired_search_z2_4(searches):
    hits = searches[Z2_4]
    target = (groups.canonical_translate(Z2_4, elements(Z2_4, Z2_4_PAIR_D)),
              groups.canonical_translate(Z2_4, elements(Z2_4, Z2_4_PAIR_D_PRIME)))
    match = [h for h in hits if (h.rows, h.cols) == target]
    assert len(match) == 1
    h = match[0]
    assert h.d == 5 and h.column_ratio == h.row_ratio
    assert h.column_ratio.is_rational() == Fraction(1, 30)


def test_paired_search_other_groups(searches):
    assert searches[Z4_2]
    assert searches[Z2_Z8] == []


def test_every_reported_pair_passes_the_oracle(searches):
    for G, hits in searches.items():
        for h in hits:
            assert _oracle_pair_ok(G, list(h.rows), list(h.cols))


def test_z2_z2_z4_pairs_exist(searches):
    # exact arithmetic and the float oracle both find pairs in this group
    hits = searches[Z2_Z2_Z4]
    assert len(hits) == 4 and all(h.d == 5 for h in hits)


def test_search_limits():
    assert groups.paired_search(groups.AbelianGroup((2,)), 2, 2) == []
    assert groups.paired_search(groups.AbelianGroup((2,)), 1, 2) == []
    with pytest.raises(TooLarge):
        groups.paired_search(groups.AbelianGroup((2, 3, 3)), 6, 10)


@pytest.mark.parametrize("t, u", [(1, 0), (0, 7), (5, 12)])
def test_translated_pairs_are_still_pairs(t, u):
    D = elements(Z2_4, Z2_4_PAIR_D)
    Dp = elements(Z2_4, Z2_4_PAIR_D_PRIME)
    hit = groups.check_pair(Z2_4, Z2_4.translate(D, t), Z2_4.translate(Dp, u))
    assert hit is not None and hit.d == 5
