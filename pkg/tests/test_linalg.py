import json
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import graphs
from oracles import all_ranks, rank_mod_p_ref
from skewrank.graph import (
    Graph,
    complete_graph,
    complete_multipartite,
    cycle_graph,
    empty_graph,
    enumerate_graphs,
    induced_subgraph,
    path_graph,
)
from skewrank.linalg import (
    BudgetExceeded,
    ExtraValue,
    FieldError,
    MissingEdgeValue,
    PrimeField,
    RankWitness,
    SkewMatrix,
    ZeroValue,
    find_rank_exhaustive,
    matrix_from_assignment,
    max_rank_exhaustive,
    max_rank_sample,
    merge_partial_results,
    min_rank_exhaustive,
    nullspace_mod_p,
    random_skew_matrix,
    rank_mod_p,
    rank_skew,
    search_space_size,
)


def test_prime_field_guard():
    for bad in (2, 4, 9, 1, 0, -3):
        with pytest.raises(FieldError):
            PrimeField(bad)
    assert PrimeField(7).inv(3) * 3 % 7 == 1


def test_rank_examples():
    assert rank_skew(SkewMatrix(5, np.zeros((3, 3), dtype=int))) == 0
    assert rank_skew(SkewMatrix(5, [[0, 1], [-1, 0]])) == 2
    assert rank_skew(SkewMatrix(5, [[0, 1, 1], [-1, 0, 1], [-1, -1, 0]])) == 2


def test_skew_matrix_validation():
    with pytest.raises(FieldError):
        SkewMatrix(5, [[0, 1], [1, 0]])
    with pytest.raises(FieldError):
        SkewMatrix(5, [[0, 1], [4, 0]], support=empty_graph(2))
    with pytest.raises(FieldError):
        SkewMatrix(5, [[1, 0], [0, 0]])
    a = SkewMatrix(5, [[0, 1], [4, 0]])
    with pytest.raises(ValueError):
        a.entries[0, 1] = 2


def test_assignment_examples():
    a = matrix_from_assignment(complete_graph(2), 5, {(0, 1): 3})
    assert a.entries.tolist() == [[0, 3], [2, 0]]
    assert matrix_from_assignment(empty_graph(3), 3, {}).entries.tolist() == [[0] * 3] * 3
    a = matrix_from_assignment(path_graph(3), 5, {(0, 1): 1, (1, 2): 2})
    assert a.entries.tolist() == [[0, 1, 0], [4, 0, 2], [0, 3, 0]]


def test_assignment_errors():
    with pytest.raises(MissingEdgeValue):
        matrix_from_assignment(path_graph(3), 5, {(0, 1): 1})
    with pytest.raises(ZeroValue):
        matrix_from_assignment(complete_graph(2), 5, {(0, 1): 5})
    with pytest.raises(ExtraValue):
        matrix_from_assignment(complete_graph(2), 5, {(0, 1): 1, (0, 2): 1})


def test_min_rank_examples():
    assert min_rank_exhaustive(empty_graph(4), 5).rank == 0
    assert min_rank_exhaustive(complete_graph(2), 5).rank == 2
    w = min_rank_exhaustive(cycle_graph(4), 5)
    assert w.rank == 2 and w.verify() and w.matrix.support == cycle_graph(4)


def test_max_rank_sample_examples():
    assert max_rank_sample(complete_graph(2), 3, 1) == 2
    assert max_rank_sample(path_graph(4), 11, 50, seed=0) == 4
    assert max_rank_sample(cycle_graph(5), 11, 50, seed=0) == 4
    with pytest.raises(ValueError):
        max_rank_sample(path_graph(4), 11, 0)


def test_budget_guard():
    g = complete_graph(6)
    assert search_space_size(g, 11) == 10 ** 10
    with pytest.raises(BudgetExceeded) as exc:
        min_rank_exhaustive(g, 11)
    assert exc.value.size == 10 ** 10
    assert search_space_size(g, 11, normalize=False) == 10 ** 15


def test_witness_json_round_trip():
    w = min_rank_exhaustive(complete_multipartite(2, 3), 7)
    obj = json.loads(json.dumps(w.to_json()))
    assert obj["rank"] == 2 and obj["p"] == 7 and obj["n"] == 5
    back = SkewMatrix.from_json(obj)
    assert back == w.matrix
    with pytest.raises(FieldError):
        SkewMatrix.from_json({"p": 5, "n": 2, "entries": [[0, 7], [-7, 0]]})


def test_witness_rejects_odd_rank():
    with pytest.raises(FieldError):
        RankWitness(1, SkewMatrix(5, [[0, 1], [4, 0]]))


@given(st.integers(1, 7), st.sampled_from([3, 5, 7, 11]), st.integers(0, 2 ** 32))
def test_rank_matches_reference(n, p, seed):
    rng = np.random.default_rng(seed)
    a = rng.integers(0, p, size=(n, n + 1))
    assert rank_mod_p(a, p) == rank_mod_p_ref(a.tolist(), p)


@given(st.integers(1, 6), st.sampled_from([5, 7]), st.integers(0, 2 ** 32))
def test_nullspace_is_kernel(n, p, seed):
    a = np.random.default_rng(seed).integers(0, p, size=(n, n))
    ns = nullspace_mod_p(a, p)
    assert ns.shape[0] == n - rank_mod_p(a, p)
    if ns.size:
        assert not np.any(a @ ns.T % p)


@given(graphs(max_n=8), st.sampled_from([3, 5, 11]), st.integers(0, 2 ** 32))
def test_random_ranks_are_even(g, p, seed):
    a = random_skew_matrix(g, p, np.random.default_rng(seed))
    assert rank_skew(a) % 2 == 0


@given(graphs(max_n=7), st.integers(0, 2 ** 32))
def test_rank_invariant_under_relabelling(g, seed):
    rng = np.random.default_rng(seed)
    a = random_skew_matrix(g, 7, rng)
    perm = rng.permutation(g.n)
    b = a.permuted(perm)
    assert b.support == g.relabel(list(perm))
    assert rank_skew(b) == rank_skew(a)


def test_oracle_against_full_enumeration():
    # every rank the oracle reports is attained, and nothing lower or higher is
    for n in range(2, 6):
        for g in enumerate_graphs(n):
            if g.m > 7:
                continue
            ranks = all_ranks(g, 5)
            lo = min_rank_exhaustive(g, 5)
            hi = max_rank_exhaustive(g, 5)
            assert lo.rank == min(ranks) and hi.rank == max(ranks), g
            assert lo.verify() and hi.verify()
            for r in range(0, n + 1, 2):
                found = find_rank_exhaustive(g, 5, r)
                assert (found is not None) == (r in ranks)
                if found is not None:
                    assert found.verify() and found.matrix.support == g


def test_normalization_is_sound_up_to_five():
    for n in range(1, 6):
        for g in enumerate_graphs(n, connected_only=True):
            fast = min_rank_exhaustive(g, 5, budget=None).rank
            full = min_rank_exhaustive(g, 5, normalize=False, budget=None).rank
            assert fast == full, g


def test_lower_bound_only_stops_early():
    g = cycle_graph(6)
    assert min_rank_exhaustive(g, 5).rank == 4
    assert min_rank_exhaustive(g, 5, lower_bound=4).rank == 4


@pytest.mark.parametrize("g,p", [(cycle_graph(6), 5), (complete_multipartite(2, 2, 2), 7),
                                 (Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5),
                                                       (0, 5), (1, 4)]), 11)])
def test_partitioned_matches_serial(g, p):
    for fn in (min_rank_exhaustive, max_rank_exhaustive):
        serial = fn(g, p)
        for workers in (2, 3):
            split = fn(g, p, workers=workers)
            assert split.rank == serial.rank
            assert split.matrix == serial.matrix


def test_merge_takes_earliest_optimum():
    a, b, c = (np.array([i]) for i in range(3))
    assert merge_partial_results([(4, a), (2, b), (2, c)], maximize=False)[1] is b
    assert merge_partial_results([(None, a), (4, b), (4, c)], maximize=True)[1] is b


def test_induced_monotonicity_spot():
    for g in enumerate_graphs(5, connected_only=True):
        top = min_rank_exhaustive(g, 5).rank
        for size in range(1, g.n):
            for sub in combinations(range(g.n), size):
                h, _ = induced_subgraph(g, sub)
                assert min_rank_exhaustive(h, 5).rank <= top


def test_sample_never_below_min():
    for g in enumerate_graphs(5, connected_only=True):
        assert min_rank_exhaustive(g, 11).rank <= max_rank_sample(g, 11, 20, seed=1)
