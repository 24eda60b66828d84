import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bipancyclic import (
    Method,
    UnsupportedN,
    constrained_matrix_census,
    enumerate_class,
    extract,
    find_hamilton_cycle,
    random_member,
    signed_matrix,
    verify_theorem,
)
from bipancyclic.census import (
    chord_allowed_matrix,
    count_class,
    first_row_choices,
    independent_count,
    iter_class_rows,
    permanent,
    random_augmented,
    rebuild_from_first_row,
    write_members,
)
from bipancyclic.graph import read_edge_list

from oracles import permanent_bruteforce

# classical menage numbers U_n
MENAGE = {4: 2, 5: 13, 6: 80, 7: 579}


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_permanent_matches_menage_numbers(n):
    allowed = chord_allowed_matrix(n)
    assert permanent(allowed) == permanent_bruteforce(allowed.tolist()) == MENAGE[n]


def test_enumerate_class_6_count():
    members = list(enumerate_class(6))
    assert len(members) == enumerate_class(6).count == 80
    assert independent_count(6) == (80, "permanent")


def test_enumeration_is_duplicate_free_and_deterministic():
    a = [g.rows for g in enumerate_class(6)]
    assert a == [g.rows for g in enumerate_class(6)]
    assert len(set(a)) == len(a)


def test_members_are_valid():
    for g in enumerate_class(6):
        assert g.is_half_regular() and g.is_canonical()
        assert find_hamilton_cycle(g) is not None


def test_partitions_cover_stream():
    whole = list(iter_class_rows(6))
    parts = [r for first in first_row_choices(6) for r in iter_class_rows(6, first)]
    assert parts == whole


def test_count_class_agrees_with_enumerator_n8():
    # the enumerator is checked exhaustively in the acceptance suite; here
    # the two counting routes for n = 8 are compared on a partition
    first = first_row_choices(8)[0]
    part = sum(1 for _ in iter_class_rows(8, first))
    assert part > 0
    assert count_class(8) == 1867363
    assert count_class(6) == 80


@pytest.mark.parametrize("n", [4, 5, 7, 10])
def test_enumerate_unsupported(n):
    with pytest.raises(UnsupportedN):
        enumerate_class(n)


def test_matrix_census_n6_empty():
    r = constrained_matrix_census(6)
    assert r.candidates == [] and r.vectors_checked == 4 and r.parity_obstruction


def test_matrix_census_n10_empty():
    r = constrained_matrix_census(10)
    assert r.candidates == [] and r.vectors_checked == 64


def test_matrix_census_n8():
    r = constrained_matrix_census(8)
    assert r.vectors_checked == 16
    expected = [v for v in itertools.product((1, -1), repeat=4) if v[0] == -v[2] and v[1] == -v[3]]
    assert [c.first_row for c in r.candidates] == expected
    assert len(expected) == 4
    for c in r.candidates:
        assert c.column_sums_ok and c.certified and c.extraction is not None
    assert r.theorem_violations == 0
    by_row = {c.first_row: c.extraction for c in r.candidates}
    assert by_row[(1, 1, -1, -1)] == (2, 4)
    assert by_row[(-1, 1, 1, -1)] == (1, 3)


def test_matrix_census_n12():
    r = constrained_matrix_census(12)
    assert r.vectors_checked == 256
    for c in r.candidates:
        band = c.first_row
        assert sum(band[0::2]) == 0 and sum(band[1::2]) == 0
        if c.column_sums_ok:
            assert c.certified
    assert r.theorem_violations == 0


def test_matrix_census_caps():
    with pytest.raises(UnsupportedN):
        constrained_matrix_census(14)
    with pytest.raises(UnsupportedN):
        constrained_matrix_census(7)


@pytest.mark.parametrize("n", [8, 12])
def test_rebuild_round_trip(n):
    for c in constrained_matrix_census(n).candidates:
        assert rebuild_from_first_row(n, c.matrix.first_row_band()) == c.matrix


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([6, 8, 10, 12, 16]), st.data())
def test_rebuild_obeys_laws(n, data):
    band = data.draw(st.lists(st.sampled_from([1, -1]), min_size=n - 4, max_size=n - 4))
    m = rebuild_from_first_row(n, band)
    assert m.first_row_band() == tuple(band)
    for i in range(1, n + 1):
        assert m.entry(i, i) == m.entry(i, i - 1) == 1
        assert m.entry(i, i - 2) == m.entry(i, i + 1) == -1
        for off in range(2, n - 2):
            assert m.entry(i + 1, i + 1 + off) == -m.entry(i, i + off)
    # first column sum is the alternating band sum
    alt = sum(band[t] * (-1) ** t for t in range(n - 4))
    assert m.column_sums()[0] == alt


def test_census_members_n8_structural():
    for c in constrained_matrix_census(8).candidates:
        g = c.matrix.to_graph()
        assert g.is_half_regular()
        assert extract(g).method is Method.STRUCTURAL


def test_random_member_deterministic():
    assert random_member(8, 42) == random_member(8, 42)
    assert random_member(8, 42) != random_member(8, 43)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([6, 8, 10, 12, 14, 16]), st.integers(0, 2**32 - 1))
def test_random_member_valid(n, seed):
    g = random_member(n, seed)
    assert g.is_half_regular() and g.is_canonical()
    assert np.all(signed_matrix(g).a.sum(axis=1) == 0)


def test_random_member_unsupported():
    with pytest.raises(UnsupportedN):
        random_member(7, 1)
    with pytest.raises(UnsupportedN):
        random_member(4, 1)


def test_random_augmented():
    g = random_augmented(6, 3, extra=2)
    base = random_member(6, 3)
    assert g.size() == base.size() + 2
    assert set(base.edges()) <= set(g.edges())


def test_write_members(tmp_path):
    assert write_members(6, tmp_path) == 80
    files = sorted(tmp_path.iterdir())
    assert [f.name for f in files[:2]] == ["00.txt", "01.txt"]
    assert read_edge_list(files[5]) == list(enumerate_class(6))[5]


def test_verify_n6():
    s = verify_theorem(6)
    assert s.ok and s.members == s.independent_count == 80
    assert s.methods["structural"] == 0
    assert s.witnesses_certified == s.oracle_agreements == 80
    assert sum(s.methods.values()) == 80
    assert s.second_assertion["refuted"] == 0


def test_verify_jobs_match_single():
    assert verify_theorem(6, jobs=2).to_json() == verify_theorem(6).to_json()


def test_verify_unsupported():
    with pytest.raises(UnsupportedN):
        verify_theorem(10)
