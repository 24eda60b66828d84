import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bipancyclic import (
    NotHamiltonian,
    SecondAssertion,
    check_second_assertion,
    es_predict,
    find_near_hamilton_omitting_adjacent_pair,
    from_edge_list,
    has_cycle_of_length,
    is_bipancyclic,
    validate_cycle,
)
from bipancyclic.census import enumerate_class, random_augmented, random_member
from bipancyclic.oracle import ESVerdict, assess_second_assertion, find_cycle_of_length

from oracles import cycle_lengths, edge_set_cycle_ok, to_nx


def test_has_cycle_of_length_g6(g6):
    # x1 y1 x4 y4: x1 and x4 are both adjacent to y1 and y4
    assert g6.has_edge(1, 1) and g6.has_edge(4, 1) and g6.has_edge(4, 4) and g6.has_edge(1, 4)
    assert has_cycle_of_length(g6, 4)
    assert has_cycle_of_length(g6, 12)


def test_has_cycle_of_length_negative(gdis, g6):
    assert not has_cycle_of_length(gdis, 12)
    for L in (3, 5, 7, 11):
        assert not has_cycle_of_length(g6, L)
    assert not has_cycle_of_length(g6, 14)
    assert not has_cycle_of_length(g6, 2)


def test_witnesses_are_certified(g8m):
    for L in range(4, 17, 2):
        w = find_cycle_of_length(g8m, L)
        assert validate_cycle(g8m, w, L)
        assert edge_set_cycle_ok(set(g8m.edges()), w.labelled())


def test_is_bipancyclic_examples(k33, gdis, g6):
    r = is_bipancyclic(k33)
    assert r.is_bipancyclic and r.lengths_present == {4, 6}
    r = is_bipancyclic(gdis)
    assert not r.is_bipancyclic and 12 not in r.lengths_present
    assert r.lengths_missing == [8, 10, 12]
    r = is_bipancyclic(g6)
    assert {10, 12} <= r.lengths_present
    assert r.to_json()["is_bipancyclic"] is True


def test_lengths_agree_with_networkx(g6, g6b, g8m, gdis, ges):
    for g in (g6, g6b, gdis, ges):
        assert is_bipancyclic(g).lengths_present == {L for L in cycle_lengths(g) if L >= 4}


def test_es_predict_examples(g6, ges, k33):
    p = es_predict(g6)
    assert p.verdict is ESVerdict.NOT_APPLICABLE and p.reason == "size-too-small"
    assert ges.size() == 19 > 6 * 6 / 2
    p = es_predict(ges)
    assert p.verdict is ESVerdict.NOT_APPLICABLE and p.reason == "not-hamiltonian"
    assert es_predict(k33).applies


def test_pair_scan_g8m(g8m):
    r = find_near_hamilton_omitting_adjacent_pair(g8m)
    # the first edge in scan order is x1 y1, ahead of the x2 y1 Hamilton edge
    assert r.pair == (("x", 1), ("y", 1))
    assert validate_cycle(g8m, r.witness, 14)
    assert r.witness.missing(8) == ([1], [1])
    assert r.subgraph_size == 8 * 8 // 2 - 8 + 1 == 25


def test_pair_scan_matches_bruteforce(g6):
    import networkx as nx

    G = to_nx(g6)
    expected = None
    for i, j in g6.edges():
        H = G.copy()
        H.remove_nodes_from([("x", i), ("y", j)])
        if any(len(c) == 10 for c in nx.simple_cycles(H, length_bound=10)):
            expected = (("x", i), ("y", j))
            break
    assert find_near_hamilton_omitting_adjacent_pair(g6).pair == expected


def test_pair_scan_errors(gdis):
    with pytest.raises(NotHamiltonian):
        find_near_hamilton_omitting_adjacent_pair(gdis)
    with pytest.raises(NotHamiltonian):
        check_second_assertion(gdis)


def test_second_assertion(g8m, g8s):
    assert check_second_assertion(g8m) is SecondAssertion.CONFIRMED
    r = assess_second_assertion(g8s)
    assert r.outcome in (SecondAssertion.CONFIRMED, SecondAssertion.INCONCLUSIVE)
    if r.pair is not None:
        assert r.pancyclicity.is_bipancyclic
        assert r.subgraph_size == 25
    doc = r.to_json()
    assert doc["outcome"] == r.outcome.value


def test_size_identity_exceeds_threshold():
    for n in range(6, 40, 2):
        assert n * n / 2 - n + 1 > (n - 1) ** 2 / 2


def test_second_assertion_every_n6_member():
    for g in enumerate_class(6):
        r = assess_second_assertion(g)
        assert r.outcome is not SecondAssertion.REFUTED
        if r.pair is not None:
            x, y = r.pair
            assert g.has_edge(x[1], y[1])
            assert r.subgraph_size == 13
            assert r.pancyclicity.lengths_present == {4, 6, 8, 10, 12}


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_dense_hamiltonian_graphs_are_bipancyclic(seed):
    g = random_augmented(6, seed)
    assert 2 * g.size() > g.n ** 2
    assert es_predict(g).applies
    assert is_bipancyclic(g).is_bipancyclic


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([6, 8]), st.integers(0, 2**32 - 1))
def test_long_cycle_present_on_random_members(n, seed):
    g = random_member(n, seed)
    w = find_cycle_of_length(g, 2 * n - 2)
    assert w is not None and validate_cycle(g, w, 2 * n - 2)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 5), st.data())
def test_cycle_search_matches_networkx(n, data):
    bits = data.draw(st.lists(st.booleans(), min_size=n * n, max_size=n * n))
    g = from_edge_list(n, [(i + 1, j + 1) for i in range(n) for j in range(n) if bits[i * n + j]])
    expected = cycle_lengths(g)
    for L in range(4, 2 * n + 1, 2):
        assert has_cycle_of_length(g, L) == (L in expected)
