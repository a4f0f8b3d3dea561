"""Bounded search: box bounds, exhaustiveness, pruning accounting."""

from itertools import product

import pytest

from ulrich_lab import (
    HighestWeight,
    LieType,
    ParabolicSet,
    build_root_system,
    coefficient_bounds,
    is_ulrich,
    search_weights,
    verify_theorem,
)


# ----------------------------------------------------------------- bounds


def test_frozen_bounds():
    assert coefficient_bounds(LieType("A", 1), ParabolicSet((1,))).bounds == (0,)
    assert coefficient_bounds(LieType("B", 2), ParabolicSet((1, 2))).bounds == (3, 3)
    assert coefficient_bounds(LieType("B", 2), ParabolicSet((1,))).bounds == (2, 2)


def test_bound_trace_is_consistent():
    sb = coefficient_bounds(LieType("C", 3), ParabolicSet((1, 3)))
    assert len(sb.trace) == 3
    for k, witness in enumerate(sb.trace, start=1):
        assert witness.index == k
        assert witness.bound == sb.bounds[k - 1]
        assert witness.root[k - 1] >= 1


def test_bounds_enclose_all_ulrich_weights():
    # brute force over a slightly larger box: no Ulrich weight escapes
    for family, rank, nodes in [("A", 2, (1, 2)), ("B", 2, (1,)), ("C", 2, (2,))]:
        lie_type = LieType(family, rank)
        marked = ParabolicSet(nodes)
        system = build_root_system(lie_type)
        bounds = coefficient_bounds(lie_type, marked).bounds
        for a in product(*(range(b + 3) for b in bounds)):
            if is_ulrich(HighestWeight(a, marked), system).is_ulrich:
                assert all(c <= b for c, b in zip(a, bounds))


# ----------------------------------------------------- exhaustive search


BRUTE_CASES = [
    ("A", 2, (1,)),
    ("A", 2, (1, 2)),
    ("A", 3, (2,)),
    ("B", 2, (1,)),
    ("B", 2, (2,)),
    ("B", 2, (1, 2)),
    ("C", 2, (1,)),
    ("C", 2, (2,)),
    ("C", 2, (1, 2)),
    ("B", 3, (1, 3)),
    ("C", 3, (1, 2)),
]


@pytest.mark.parametrize("family,rank,nodes", BRUTE_CASES)
def test_search_matches_brute_force(family, rank, nodes):
    lie_type = LieType(family, rank)
    marked = ParabolicSet(nodes)
    system = build_root_system(lie_type)
    bounds = coefficient_bounds(lie_type, marked).bounds
    brute = tuple(
        a
        for a in product(*(range(b + 1) for b in bounds))
        if is_ulrich(HighestWeight(a, marked), system).is_ulrich
    )
    assert search_weights(lie_type, marked).found == brute
    assert search_weights(lie_type, marked, use_filters=False).found == brute


def test_counters_partition_the_box():
    for family, rank, nodes in BRUTE_CASES:
        for use_filters in (True, False):
            r = search_weights(
                LieType(family, rank), ParabolicSet(nodes), use_filters=use_filters
            )
            assert r.complete
            assert r.examined + r.pruned_filters + r.skipped_invariant == r.volume
            if not use_filters:
                assert r.pruned_filters == 0


def test_filters_never_cost_a_hit():
    sets = [
        ("B", 3, (1, 2)),
        ("B", 3, (2, 3)),
        ("C", 3, (1, 3)),
        ("C", 4, (2, 4)),
        ("D", 4, (1, 3)),
        ("D", 4, (2, 4)),
        ("D", 4, (3, 4)),
        ("D", 4, (1, 2, 3, 4)),
    ]
    for family, rank, nodes in sets:
        with_f = search_weights(LieType(family, rank), ParabolicSet(nodes))
        without = search_weights(
            LieType(family, rank), ParabolicSet(nodes), use_filters=False
        )
        assert with_f.found == without.found
        assert with_f.volume == without.volume


def test_positive_controls_found_by_search():
    r = search_weights(LieType("A", 1), ParabolicSet((1,)))
    assert r.found == ((0,),)
    assert r.found_on_boundary == ((0,),)  # the box is the single point a = 0
    r = search_weights(LieType("B", 2), ParabolicSet((1,)))
    assert r.found == ((0, 1),)
    assert r.found_on_boundary == ()
    r = search_weights(LieType("A", 4), ParabolicSet((1,)))
    assert (0, 0, 0, 0) in r.found


def test_d_spin_structural_short_circuit():
    # D_5 spin marked set {1,5} normalizes to {1,4}: the node-spacing rule
    # rules the whole box out without enumeration
    r = search_weights(LieType("D", 5), ParabolicSet((1, 5)))
    assert r.complete and r.found == ()
    assert r.examined == 0 and r.skipped_invariant == 0
    assert r.pruned_filters == r.volume
    # the unfiltered run enumerates and agrees
    r2 = search_weights(LieType("D", 5), ParabolicSet((1, 5)), use_filters=False)
    assert r2.found == () and r2.complete


def test_normalized_nodes_reported_for_d():
    r = search_weights(LieType("D", 4), ParabolicSet((1, 4)))
    assert r.nodes == (1, 4)
    assert r.normalized_nodes == (1, 3)


# --------------------------------------------------------------- control


def test_jobs_do_not_change_the_report():
    one = search_weights(LieType("B", 4), ParabolicSet((1, 3)), jobs=1)
    two = search_weights(LieType("B", 4), ParabolicSet((1, 3)), jobs=2)
    for field in (
        "found",
        "found_on_boundary",
        "volume",
        "examined",
        "pruned_filters",
        "skipped_invariant",
        "complete",
    ):
        assert getattr(one, field) == getattr(two, field)


def test_zero_budget_is_incomplete_and_deterministic():
    r = search_weights(LieType("B", 4), ParabolicSet((1, 3)), budget=0)
    assert not r.complete
    assert (r.examined, r.pruned_filters, r.skipped_invariant) == (0, 0, 0)
    assert r.volume > 0 and r.found == ()


def test_tiny_budget_interrupts_a_large_search():
    r = search_weights(
        LieType("B", 5), ParabolicSet((1, 4)), use_filters=False, budget=1e-4
    )
    assert not r.complete
    assert r.examined + r.pruned_filters + r.skipped_invariant < r.volume


# ---------------------------------------------------------------- verify


def test_verify_small_sweep():
    outcome = verify_theorem(max_rank=4)
    assert outcome.passed and outcome.complete
    # B: 1 + 4 + 11 marked sets over ranks 2..4, C likewise, D: 8 at rank 4
    assert len(outcome.reports) == 16 + 16 + 8
    first = outcome.reports[0]
    assert (first.family, first.rank, first.nodes) == ("B", 2, (1, 2))
    d_reports = [r for r in outcome.reports if r.family == "D"]
    # spin mirrors {1,4}, {2,4}, {1,2,4} are skipped
    assert all(not (4 in r.nodes and 3 not in r.nodes) for r in d_reports)
    assert all(len(r.nodes) >= 2 for r in outcome.reports)
    assert all(not r.found for r in outcome.reports)


def test_verify_zero_budget_fails_closed():
    outcome = verify_theorem(max_rank=4, budget=0)
    assert not outcome.passed and not outcome.complete
    assert all(not r.complete for r in outcome.reports)
