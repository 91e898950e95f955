"""Staged micro-scenarios and full runs of the red/green/white cut process."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from girthlocal.config_model import generate, load_edge_list
from girthlocal.cut_local_algorithm import GREEN, RED, CutProcess, run_cut
from girthlocal.exact_oracle import from_multigraph, max_cut

K4 = "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n"


def test_rejects_non_cubic_graph():
    with pytest.raises(ValueError):
        CutProcess(generate(10, 4, seed=0))


def test_rejects_bad_parameters():
    g = generate(10, 3, seed=0)
    with pytest.raises(ValueError):
        CutProcess(g, query_probability=1.5)
    with pytest.raises(ValueError):
        CutProcess(g, stop_fraction=0.0)


def test_commit_labels_neighbors_and_banks_edges():
    p = CutProcess(load_edge_list(K4), seed=0)
    p.commit(0, RED)
    # no neighbor was labeled yet, so nothing banked; all three got a red mark
    assert p.good == 0 and p.bad == 0
    assert p.nR[1:].tolist() == [1, 1, 1]
    p.commit(1, GREEN)
    # the edge 0-1 is now an opposite-colored pair
    assert (p.good, p.bad) == (1, 0)
    assert p.nG[2:].tolist() == [1, 1]


def test_tie_cascade_on_complete_graph_reaches_max_cut():
    # after red/green commits the two remaining vertices hold one mark of
    # each color; the cascade whitens one and majority-commits the other
    p = CutProcess(load_edge_list(K4), seed=0)
    p.commit(0, RED)
    p.commit(1, GREEN)
    p.closure()
    p._resolve_pending()
    assert (p.good, p.bad) == (4, 2)
    assert p.f.tolist() == [RED, GREEN, GREEN, RED]
    assert not p.deferred


def test_queries_grow_paths_and_triples_reduce():
    p = CutProcess(load_edge_list(K4), seed=0)
    p.commit(0, RED)
    p.query(1)
    assert p.pd[1] == 1 and p.pd[2] == 1
    assert p.pa[1, 0] == 2 and p.pa[2, 0] == 1
    p.query(3)
    # vertex 3 joined through its half-edge into 1: path 2-1-3, all red
    assert p.pd.tolist()[:4] == [0, 2, 1, 1]
    p.closure()
    # three same-colored path vertices collapse: two deleted, the carrier
    # keeps the absorbed open half-edge, and 3 good + 1 bad edges are banked
    assert (p.good, p.bad) == (3, 1)
    assert p.status[1] == 2 and p.status[3] == 2
    assert p.status[2] == 0 and p.op[2] == 2


def test_full_run_on_complete_graph():
    r = run_cut(load_edge_list(K4), seed=5)
    assert r.good + r.bad == 6
    assert r.good <= 4  # exact max cut of K4
    assert set(np.unique(r.colors)) <= {0, 1}
    assert (r.good, r.bad) == (r.incremental_good, r.incremental_bad)


@given(st.integers(4, 40), st.integers(0, 2 ** 32 - 1))
@settings(max_examples=25, deadline=None)
def test_incremental_counters_match_recount(half_n, seed):
    g = generate(2 * half_n, 3, seed=seed)
    r = run_cut(g, seed=seed)
    assert r.good == r.incremental_good
    assert r.bad == r.incremental_bad
    assert r.good + r.bad == g.edge_count
    assert np.all((r.colors == 0) | (r.colors == 1))


def test_color_swap_gives_exact_complement():
    for seed in (0, 1, 2):
        g = generate(300, 3, seed=seed)
        plain = run_cut(g, seed=seed)
        swapped = run_cut(g, seed=seed, swap=True)
        assert swapped.good == plain.good and swapped.bad == plain.bad
        assert np.array_equal(swapped.colors, 1 - plain.colors)


def test_never_beats_exact_oracle():
    rng = np.random.default_rng(12)
    for _ in range(12):
        n = int(rng.choice([8, 10, 12, 14, 16]))
        g = generate(n, 3, seed=int(rng.integers(2 ** 31)))
        best, _ = max_cut(from_multigraph(g))
        r = run_cut(g, seed=int(rng.integers(2 ** 31)))
        loops = sum(1 for u, v in g.edges() if u == v)
        assert r.good <= best
        assert r.good + r.bad == g.edge_count
        assert r.bad >= loops  # a loop can never be cut


def test_same_seed_reproduces_run():
    g = generate(1000, 3, seed=9)
    a = run_cut(g, seed=4)
    b = run_cut(g, seed=4)
    assert a.good == b.good and np.array_equal(a.colors, b.colors)
    c = run_cut(g, seed=5)
    assert not np.array_equal(a.colors, c.colors)


def test_midsize_run_lands_in_expected_band():
    g = generate(20000, 3, seed=77)
    r = run_cut(g, seed=0)
    assert 1.30 <= r.ratio <= 1.37
    assert r.ratio == r.good / r.n
    assert r.rounds > 0
