from collections import Counter

import pytest

from chainstream import exact_edit_distance_indel, exact_lis_length
from chainstream.generate import generate_instance


def test_deterministic_per_seed():
    for kind in ("random-permutation", "planted-lis", "string-pair",
                 "identical-pair", "disjoint-pair"):
        a = generate_instance(kind, 40, 7)
        b = generate_instance(kind, 40, 7)
        c = generate_instance(kind, 40, 8)
        assert a == b
        assert a != c


def test_reverse_sorted():
    assert generate_instance("reverse-sorted", 5, 0) == [5, 4, 3, 2, 1]


def test_random_permutation_is_a_permutation():
    values = generate_instance("random-permutation", 100, 3)
    assert sorted(values) == list(range(1, 101))


def test_planted_lis_reaches_the_requested_length():
    values = generate_instance("planted-lis", 100, 1, beta=0.3)
    assert sorted(values) == list(range(1, 101))
    assert exact_lis_length(values) >= 30


def test_planted_lis_filler_contributes_little():
    values = generate_instance("planted-lis", 400, 5, beta=0.1)
    # A decreasing filler cannot push the increasing subsequence far
    # beyond the planted 40.
    assert 40 <= exact_lis_length(values) <= 80


def test_string_pair_respects_the_occurrence_cap():
    x, y = generate_instance("string-pair", 16, 2, alphabet=4, k_cap=2)
    assert len(x) == len(y) == 16
    assert max(Counter(y).values()) <= 2


def test_string_pair_edit_count_is_exact():
    x, y = generate_instance("string-pair", 60, 3, alphabet=20, k_cap=3,
                             edits=12)
    assert max(Counter(y).values()) <= 3
    assert exact_edit_distance_indel(x, y) == 12


def test_identical_and_disjoint_pairs():
    x, y = generate_instance("identical-pair", 30, 4, alphabet=6)
    assert x == y
    x, y = generate_instance("disjoint-pair", 30, 4, alphabet=6)
    assert not set(x) & set(y)
    assert exact_edit_distance_indel(x, y) == 30


def test_bad_parameters_rejected():
    with pytest.raises(ValueError):
        generate_instance("no-such-kind", 10, 0)
    with pytest.raises(ValueError):
        generate_instance("planted-lis", 10, 0, beta=0.0)
    with pytest.raises(ValueError):
        generate_instance("string-pair", 10, 0, k_cap=0)
    with pytest.raises(ValueError):
        generate_instance("string-pair", 10, 0, edits=11)
    with pytest.raises(ValueError):
        generate_instance("random-permutation", -1, 0)
