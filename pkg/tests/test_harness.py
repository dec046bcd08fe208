import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from washh.harness import (
    ABLATION_VARIANTS,
    IncompleteTable,
    ablation_seed,
    exact_tie_ranks,
    read_results_csv,
    read_summary_csv,
    run_ablation,
    run_experiment,
    run_seed,
    summarize,
    write_ranks_csv,
    write_results_csv,
    write_summary_csv,
    write_trace_csv,
)

# Reference means for the seven-method, ten-function comparison; a fixed
# regression input for the exact-tie rank rules (ranks 1.10 ... 5.90 below).
REFERENCE_MEANS = {
    "sphere": {"WASHH": 0.0000e00, "WOA": 1.1722e-62, "GWO": 6.6395e-24, "PSO": 1.3218e00, "DE": 3.9040e00, "LWOA": 2.0606e-04, "RandomHH": 4.3850e-21},
    "bent_cigar": {"WASHH": 0.0000e00, "WOA": 1.8263e-59, "GWO": 4.8310e-18, "PSO": 2.1705e05, "DE": 3.9316e06, "LWOA": 2.4312e02, "RandomHH": 3.6848e-15},
    "zakharov": {"WASHH": 0.0000e00, "WOA": 3.7333e02, "GWO": 1.2730e-04, "PSO": 1.9713e02, "DE": 6.0085e01, "LWOA": 1.7135e01, "RandomHH": 1.6916e00},
    "rosenbrock": {"WASHH": 0.0000e00, "WOA": 4.4404e00, "GWO": 2.7428e01, "PSO": 5.6324e03, "DE": 1.6724e02, "LWOA": 2.8011e01, "RandomHH": 2.5242e01},
    "rastrigin": {"WASHH": 0.0000e00, "WOA": 0.0000e00, "GWO": 3.9790e-14, "PSO": 6.6335e01, "DE": 1.5836e02, "LWOA": 4.0773e00, "RandomHH": 3.5344e01},
    "ackley": {"WASHH": 4.4409e-16, "WOA": 5.7732e-15, "GWO": 5.0386e-13, "PSO": 2.0995e00, "DE": 9.9140e-01, "LWOA": 3.6543e-03, "RandomHH": 1.2893e-11},
    "griewank": {"WASHH": 0.0000e00, "WOA": 0.0000e00, "GWO": 2.3380e-03, "PSO": 2.6057e-01, "DE": 2.2497e-01, "LWOA": 9.3142e-03, "RandomHH": 2.3444e-03},
    "schwefel": {"WASHH": 3.8183e-04, "WOA": 1.1437e02, "GWO": 9.4872e03, "PSO": 4.2627e03, "DE": 6.4047e03, "LWOA": 5.7787e02, "RandomHH": 3.4676e03},
    "levy": {"WASHH": 1.4998e-32, "WOA": 2.9172e-02, "GWO": 1.5013e00, "PSO": 2.4669e00, "DE": 1.3304e00, "LWOA": 7.7895e-03, "RandomHH": 5.2315e00},
    "michalewicz": {"WASHH": -2.2599e01, "WOA": -1.0123e01, "GWO": -8.3278e00, "PSO": -2.0990e01, "DE": -1.1934e01, "LWOA": -1.6928e01, "RandomHH": -1.9394e01},
}

METHODS7 = ["WASHH", "WOA", "GWO", "PSO", "DE", "LWOA", "RandomHH"]
FUNCTIONS10 = list(REFERENCE_MEANS)


def table1_cells():
    return {(m, f): REFERENCE_MEANS[f][m] for f in FUNCTIONS10 for m in METHODS7}


class TestRunExperiment:
    def test_three_seeds_give_three_records_with_distinct_seeds(self):
        records = run_experiment(["WOA"], ["sphere"], dim=2, pop_size=5, budget=40, n_seeds=3, base_seed=7)
        assert len(records) == 3
        assert len({r.seed for r in records}) == 3
        assert all(r.method == "WOA" and r.function == "sphere" for r in records)

    def test_rerun_reproduces_identical_records(self):
        kwargs = dict(dim=3, pop_size=6, budget=60, n_seeds=2, base_seed=5)
        a = run_experiment(["WASHH", "DE"], ["levy"], **kwargs)
        b = run_experiment(["WASHH", "DE"], ["levy"], **kwargs)
        for ra, rb in zip(a, b):
            assert (ra.method, ra.function, ra.seed) == (rb.method, rb.function, rb.seed)
            assert ra.best_value == rb.best_value
            assert np.array_equal(ra.trace, rb.trace)

    def test_cardinality(self):
        records = run_experiment(["WOA", "DE"], ["sphere", "ackley"], dim=2, pop_size=5, budget=30, n_seeds=2, base_seed=1)
        assert len(records) == 8

    def test_seed_derivation_independent_of_filters(self):
        full = run_experiment(["WOA", "DE"], ["sphere"], dim=2, pop_size=5, budget=30, n_seeds=1, base_seed=9)
        only_de = run_experiment(["DE"], ["sphere"], dim=2, pop_size=5, budget=30, n_seeds=1, base_seed=9)
        de_full = next(r for r in full if r.method == "DE")
        assert de_full.seed == only_de[0].seed
        assert de_full.best_value == only_de[0].best_value

    def test_jobs_do_not_change_results(self):
        kwargs = dict(dim=2, pop_size=5, budget=30, n_seeds=2, base_seed=3)
        serial = run_experiment(["WOA", "PSO"], ["sphere"], jobs=1, **kwargs)
        parallel = run_experiment(["WOA", "PSO"], ["sphere"], jobs=2, **kwargs)
        assert [(r.method, r.seed, r.best_value) for r in serial] == [
            (r.method, r.seed, r.best_value) for r in parallel
        ]

    def test_failures_recorded_not_dropped(self):
        records = run_experiment(["DE"], ["sphere"], dim=2, pop_size=3, budget=30, n_seeds=2, base_seed=1)
        assert len(records) == 2
        assert all(r.error is not None and "PopulationTooSmall" in r.error for r in records)
        assert all(math.isnan(r.best_value) for r in records)

    def test_seed_formula(self):
        assert run_seed(42, 1, 2, 3) == 42_010_203
        assert ablation_seed(42, 2, 3) == 42_000_203


class TestRunAblation:
    def test_variants_share_seeds_per_cell(self):
        records = run_ablation(["sphere", "levy"], dim=2, pop_size=5, budget=40, n_seeds=2, base_seed=4)
        assert len(records) == len(ABLATION_VARIANTS) * 2 * 2
        by_variant = {}
        for r in records:
            by_variant.setdefault(r.method, []).append((r.function, r.seed))
        cells = [sorted(v) for v in by_variant.values()]
        assert cells[0] == cells[1] == cells[2]

    def test_no_anchor_variant_masks_anchor_operator(self):
        records = run_ablation(["sphere"], dim=2, pop_size=5, budget=40, n_seeds=1, base_seed=4)
        no_anchor = next(r for r in records if r.method == "NoAnchor")
        assert no_anchor.op_counts["ANCHOR_MOVE"] == 0
        assert sum(no_anchor.op_counts.values()) == 40 - 5  # reserve returned to main loop


class TestSummarize:
    def test_population_std_and_order_independence(self):
        records = run_experiment(["WOA"], ["sphere"], dim=2, pop_size=5, budget=30, n_seeds=4, base_seed=2)
        summary = summarize(records)
        values = np.array([r.best_value for r in records])
        assert summary.mean[("WOA", "sphere")] == pytest.approx(values.mean(), rel=1e-15)
        assert summary.std[("WOA", "sphere")] == pytest.approx(values.std(), rel=1e-15)  # ddof=0

        shuffled = [records[i] for i in [2, 0, 3, 1]]
        again = summarize(shuffled)
        assert again.mean[("WOA", "sphere")] == summary.mean[("WOA", "sphere")]
        assert again.std[("WOA", "sphere")] == summary.std[("WOA", "sphere")]


class TestExactTieRanks:
    def test_reproduces_reference_rank_table(self):
        avg_rank, best = exact_tie_ranks(table1_cells(), METHODS7, FUNCTIONS10)
        assert avg_rank == pytest.approx(
            {"WASHH": 1.10, "WOA": 2.90, "GWO": 4.00, "PSO": 5.80, "DE": 5.90, "LWOA": 4.20, "RandomHH": 4.10}
        )
        assert best == {"WASHH": 10, "WOA": 2, "GWO": 0, "PSO": 0, "DE": 0, "LWOA": 0, "RandomHH": 0}

    def test_two_way_tie_shares_rank(self):
        means = {("A", "f"): 1.0, ("B", "f"): 1.0, ("C", "f"): 2.0}
        avg_rank, best = exact_tie_ranks(means, ["A", "B", "C"], ["f"])
        assert avg_rank == {"A": 1.5, "B": 1.5, "C": 3.0}
        assert best == {"A": 1, "B": 1, "C": 0}

    def test_single_method_rank_one_everywhere(self):
        means = {("A", "f"): 5.0, ("A", "g"): -1.0}
        avg_rank, best = exact_tie_ranks(means, ["A"], ["f", "g"])
        assert avg_rank == {"A": 1.0}
        assert best == {"A": 2}

    def test_missing_cell_raises(self):
        means = {("A", "f"): 1.0}
        with pytest.raises(IncompleteTable):
            exact_tie_ranks(means, ["A", "B"], ["f"])

    def test_nan_cell_raises(self):
        means = {("A", "f"): 1.0, ("B", "f"): math.nan}
        with pytest.raises(IncompleteTable):
            exact_tie_ranks(means, ["A", "B"], ["f"])

    def test_permutation_invariance(self):
        cells = table1_cells()
        a, _ = exact_tie_ranks(cells, METHODS7, FUNCTIONS10)
        b, _ = exact_tie_ranks(cells, list(reversed(METHODS7)), FUNCTIONS10)
        assert a == b

    def test_monotone_transform_invariance(self):
        cells = table1_cells()
        transformed = {k: math.atan(v / 10.0) for k, v in cells.items()}
        a, abest = exact_tie_ranks(cells, METHODS7, FUNCTIONS10)
        b, bbest = exact_tie_ranks(transformed, METHODS7, FUNCTIONS10)
        assert a == pytest.approx(b)
        assert abest == bbest

    @given(
        st.lists(
            st.lists(st.sampled_from([0.0, 1.0, 2.5, 2.5, 7.0, -3.0]), min_size=4, max_size=4),
            min_size=1,
            max_size=5,
        )
    )
    @settings(max_examples=60, deadline=None)
    def test_rank_sums_with_ties(self, table):
        methods = ["m0", "m1", "m2", "m3"]
        functions = [f"f{j}" for j in range(len(table))]
        means = {(methods[i], functions[j]): table[j][i] for j in range(len(table)) for i in range(4)}
        avg_rank, _ = exact_tie_ranks(means, methods, functions)
        total = sum(avg_rank.values()) * len(functions)
        assert total == pytest.approx(len(functions) * 4 * 5 / 2)


class TestCsvRoundTrips:
    def test_results_round_trip_bit_exact_means(self, tmp_path):
        records = run_experiment(["WOA", "DE"], ["levy"], dim=3, pop_size=5, budget=40, n_seeds=3, base_seed=6)
        path = tmp_path / "results.csv"
        write_results_csv(records, path)
        loaded = read_results_csv(path)
        assert [(r.method, r.function, r.seed, r.best_value) for r in loaded] == [
            (r.method, r.function, r.seed, r.best_value) for r in records
        ]
        assert summarize(loaded).mean == summarize(records).mean

    def test_empty_records_give_header_only(self, tmp_path):
        path = tmp_path / "empty.csv"
        write_results_csv([], path)
        assert path.read_text().strip() == "method,function,seed,best_value"

    def test_trace_rows_match_evaluations(self, tmp_path):
        records = run_experiment(["WOA"], ["sphere"], dim=2, pop_size=5, budget=25, n_seeds=2, base_seed=1)
        path = tmp_path / "trace.csv"
        write_trace_csv(records, path)
        lines = path.read_text().strip().splitlines()
        assert lines[0] == "method,function,seed,eval_index,best_so_far"
        assert len(lines) - 1 == sum(r.evaluations for r in records)

    def test_summary_and_ranks_round_trip(self, tmp_path):
        records = run_experiment(["WOA", "DE"], ["sphere", "levy"], dim=2, pop_size=5, budget=30, n_seeds=2, base_seed=3)
        summary = summarize(records)
        spath = tmp_path / "summary.csv"
        write_summary_csv(summary, spath)
        means, methods, functions = read_summary_csv(spath)
        assert methods == summary.methods and functions == summary.functions
        for key, value in summary.mean.items():
            assert means[key] == value
        rpath = tmp_path / "ranks.csv"
        write_ranks_csv(summary, rpath)
        assert rpath.read_text().splitlines()[0] == "method,avg_rank,best_or_tied"

    def test_write_failure_mentions_path(self):
        with pytest.raises(OSError, match="no/such/dir"):
            write_results_csv([], "/no/such/dir/results.csv")
