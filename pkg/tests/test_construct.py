import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from optlrc.codes import (
    LinearCode,
    Optimality,
    classify_optimality,
    has_independent_columns,
    locality,
    min_distance,
)
from optlrc.construct import (
    ConstructionConfig,
    ConstructionError,
    GreedyBuilder,
    VectorSpace,
    block_prefix,
    construct_greedy,
    construct_vandermonde,
    eta_count,
    eta_guarantee,
    shorten,
)
from optlrc.field import make_field
from optlrc.linalg import Matrix, rank


def all_subsets_independent(H: np.ndarray, f, s: int) -> bool:
    """Brute-force rank check of every s-column subset."""
    return all(
        rank(Matrix(f, H[:, list(S)])) == s for S in itertools.combinations(range(H.shape[1]), s)
    )


# --- Vandermonde -------------------------------------------------------------------------------


def test_vandermonde_small_example():
    code = construct_vandermonde(make_field(3), 6, 3, 2)
    assert code.H.tolist() == [[1, 1, 1, 0, 0, 0], [0, 0, 0, 1, 1, 1], [0, 1, 2, 0, 1, 2]]
    assert (code.k, min_distance(code, "verify"), locality(code)) == (3, 3, 2)


def test_vandermonde_q5_n40():
    code = construct_vandermonde(make_field(5), 40, 4, 4)
    assert code.H.shape == (10, 40)
    assert code.k == 30
    prof = classify_optimality(code)
    assert (prof.d, prof.r, prof.optimality) == (4, 4, Optimality.OPTIMAL_EQ1)


def test_vandermonde_single_block():
    for r in (2, 3, 4):
        code = construct_vandermonde(make_field(5), r + 1, 3, r)
        assert code.k == r - 1 and min_distance(code) == 3


@pytest.mark.parametrize(
    "q,n,d,r",
    [(2, 6, 3, 2), (5, 6, 5, 3), (5, 7, 3, 2), (5, 6, 4, 1), (5, 0, 3, 2)],
)
def test_vandermonde_preconditions(q, n, d, r):
    with pytest.raises(ConstructionError):
        construct_vandermonde(make_field(q), n, d, r)


def test_vandermonde_minors_brute_force():
    f = make_field(4)
    code = construct_vandermonde(f, 12, 4, 3)
    assert all_subsets_independent(code.H.data, f, 3)
    assert not all_subsets_independent(code.H.data, f, 4)


# --- greedy ------------------------------------------------------------------------------------


def test_greedy_column_shape_and_independence():
    f = make_field(5)
    code, trace = construct_greedy(ConstructionConfig(f, 16, 5, 3))
    assert trace.status == "complete" and code.H.shape == (4 + 3, 16)
    top = code.H.data[:4]
    for col in range(16):
        assert top[:, col].tolist() == [int(b == col // 4) for b in range(4)]
    assert all_subsets_independent(code.H.data, f, 4)


def test_greedy_example_n8():
    code, trace = construct_greedy(ConstructionConfig(make_field(5), 8, 5, 3))
    assert code.H.shape == (5, 8) and code.k == 3
    assert min_distance(code, "verify") >= 5 and locality(code) <= 3


def test_greedy_single_block_repetition():
    code, trace = construct_greedy(ConstructionConfig(make_field(5), 5, 5, 3 + 1))
    assert trace.status == "complete"
    assert code.k == 1 and min_distance(code, "verify") == 5


def test_greedy_vs_vandermonde_d4():
    f = make_field(4)
    g, trace = construct_greedy(ConstructionConfig(f, 16, 4, 3))
    v = construct_vandermonde(f, 16, 4, 3)
    pg, pv = classify_optimality(g), classify_optimality(v)
    assert trace.status == "complete"
    assert (pg.n, pg.k, pg.d, pg.r) == (pv.n, pv.k, pv.d, pv.r)
    assert pg.optimality is pv.optimality is Optimality.OPTIMAL_EQ1


def test_greedy_d2_is_block_diagonal():
    code, trace = construct_greedy(ConstructionConfig(make_field(3), 9, 2, 2))
    assert code.H.shape == (3, 9)
    assert min_distance(code) == 2


def test_greedy_deterministic_and_prefix_stable():
    f = make_field(7)
    a, ta = construct_greedy(ConstructionConfig(f, 32, 5, 3))
    b, tb = construct_greedy(ConstructionConfig(f, 32, 5, 3))
    assert a.H == b.H and ta.to_text() == tb.to_text()
    c, _ = construct_greedy(ConstructionConfig(f, 12, 5, 3))
    assert block_prefix(a, 3, 3, 5).H == c.H


def test_greedy_seeded_random():
    f = make_field(7)
    cfg = dict(candidate_order="seeded-random", rng_seed=11)
    a, ta = construct_greedy(ConstructionConfig(f, 20, 5, 3, **cfg))
    b, _ = construct_greedy(ConstructionConfig(f, 20, 5, 3, **cfg))
    assert a.H == b.H
    assert ta.status == "complete" and has_independent_columns(a, 4)
    lex, _ = construct_greedy(ConstructionConfig(f, 20, 5, 3))
    assert lex.H != a.H


def test_greedy_stuck_returns_valid_prefix():
    f = make_field(5)
    code, trace = construct_greedy(ConstructionConfig(f, 40, 5, 3))
    assert trace.status == "stuck"
    assert trace.stuck_at == divmod(trace.columns, 4)
    assert code.n == trace.columns
    assert has_independent_columns(code, 4)
    assert trace.to_text().splitlines()[-1] == f"# stuck at {trace.stuck_at[0]} {trace.stuck_at[1]}"


def test_trace_format():
    _, trace = construct_greedy(ConstructionConfig(make_field(5), 8, 5, 3))
    lines = trace.to_text().splitlines()
    assert lines[0] == "0 0 0 0,0,0"
    assert lines[1].startswith("0 1 ")
    assert lines[-1] == "# complete"
    assert [(t.block, t.slot) for t in trace.records] == [(i, j) for i in range(2) for j in range(4)]


def test_greedy_preconditions():
    f = make_field(5)
    with pytest.raises(ConstructionError):
        ConstructionConfig(f, 8, 6, 3)
    with pytest.raises(ConstructionError):
        ConstructionConfig(f, 7, 5, 3)
    with pytest.raises(ValueError):
        ConstructionConfig(f, 8, 5, 3, check_mode="fast")
    ConstructionConfig(f, 8, 6, 3, enforce_regime=False)


@pytest.mark.parametrize("q,d,r", [(4, 5, 3), (5, 5, 3), (3, 4, 2), (4, 6, 4), (2, 4, 3), (3, 5, 2), (4, 3, 3)])
def test_check_modes_agree_on_every_candidate(q, d, r):
    b = GreedyBuilder(make_field(q), d, r)
    while sum(map(len, b.blocks)) < 16:
        s, nv = b.bad("structured"), b.bad("naive")
        assert np.array_equal(s, nv)
        free = np.flatnonzero(~s)
        if not free.size:
            break
        b.push(int(free[0]))


def test_check_modes_agree_on_random_candidates_larger_n():
    rng = np.random.default_rng(5)
    b = GreedyBuilder(make_field(8), 5, 3)
    for _ in range(24):
        free = np.flatnonzero(~b.bad("structured"))
        b.push(int(rng.choice(free)))
    s, nv = b.bad("structured"), b.bad("naive")
    idx = rng.integers(0, s.size, size=10_000)
    assert np.array_equal(s[idx], nv[idx])


@settings(max_examples=12, deadline=None)
@given(st.sampled_from([(3, 4, 2), (4, 5, 3), (5, 5, 3), (4, 6, 4), (5, 4, 3)]), st.integers(1, 6), st.integers(0, 99))
def test_greedy_postcondition_any_d_minus_1_columns(params, blocks, seed):
    q, d, r = params
    n = blocks * (r + 1)
    if n > 24:
        return
    f = make_field(q)
    code, trace = construct_greedy(ConstructionConfig(f, n, d, r, candidate_order="seeded-random", rng_seed=seed))
    assert all_subsets_independent(code.H.data, f, min(d - 1, code.n))


def test_greedy_naive_mode_builds_same_code():
    f = make_field(4)
    a, _ = construct_greedy(ConstructionConfig(f, 12, 5, 3))
    b, _ = construct_greedy(ConstructionConfig(f, 12, 5, 3, check_mode="naive"))
    assert a.H == b.H


def test_vector_space_sumset_oracle():
    f = make_field(3)
    sp = VectorSpace(f, 2)
    A, B = sp.empty(), sp.empty()
    A[[1, 4]] = True
    B[[0, 5]] = True
    expect = set()
    for a in (1, 4):
        for b in (0, 5):
            va, vb = sp.vecs[a], sp.vecs[b]
            expect.add(int(sp.encode((va + vb) % 3)))
    assert set(np.flatnonzero(sp.sumset(A, B)).tolist()) == expect


# --- eta and shortening --------------------------------------------------------------------------


def test_eta_count_whole_space():
    q, d = 5, 5
    assert q ** (d - 1) - q ** (d - 2) > q ** (d - 1) // 2


def test_eta_example():
    # t=1: 4^3 * 5^3 = 8000, t=2: 8^3 * 1 * 5^2 = 12800, against 5^4 - 5^3 = 500
    assert eta_count(5, 5, 3, 1) == 8000 + 12800
    assert eta_guarantee(5, 5, 3) == 4


def test_eta_threshold_is_tight():
    for q in (101, 128, 256):
        n = eta_guarantee(q, 5, 3)
        assert n > 4
        L = n // 4
        room = q**4 - q**3
        assert eta_count(q, 5, 3, L) < room <= eta_count(q, 5, 3, L + 1)


def test_eta_monotone_in_q():
    values = [eta_guarantee(q, 5, 3) for q in (5, 7, 8, 9, 11, 67, 101, 128, 256)]
    assert values == sorted(values)


def test_eta_guaranteed_lengths_never_stuck():
    for q in (5, 7, 8, 9):
        n = eta_guarantee(q, 5, 3)
        _, trace = construct_greedy(ConstructionConfig(make_field(q), n, 5, 3))
        assert trace.status == "complete"


def test_eta_preconditions():
    with pytest.raises(ConstructionError):
        eta_guarantee(5, 4, 3)
    with pytest.raises(ConstructionError):
        eta_guarantee(5, 6, 3)


def test_shorten_greedy():
    code, _ = construct_greedy(ConstructionConfig(make_field(5), 8, 5, 3))
    short = shorten(code, 2, r=3)
    assert short.n == 6
    assert min_distance(short) >= min_distance(code)
    assert short.k >= 6 - 2 - 3
    prof = classify_optimality(short)
    assert prof.defect <= 1


def test_shorten_vandermonde_second_case():
    short = shorten(construct_vandermonde(make_field(3), 9, 3, 2), 1, r=2)
    assert short.n == 8 and short.k % 2 == 0
    prof = classify_optimality(short)
    assert prof.optimality is Optimality.OPTIMAL_DEFECT1


@pytest.mark.parametrize("t", [0, 3, 6])
def test_shorten_rejects(t):
    code = construct_vandermonde(make_field(3), 6, 3, 2)
    with pytest.raises(ConstructionError):
        shorten(code, t, r=2)
