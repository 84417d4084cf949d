import itertools
import json
from fractions import Fraction

import pytest

from syncmonoid import (
    Endofunction,
    ExperimentConfig,
    edge_graph_experiment,
    estimate_sync_probability,
    exact_sync_probability,
    explore_maximal_nonsync,
    is_synchronizing,
    sweep,
    wilson_interval,
)
from syncmonoid.experiments import _all_pairs_collapsible

from conftest import build_instances


class TestConfig:
    def test_requires_a_generator(self):
        with pytest.raises(ValueError):
            ExperimentConfig(5, 0, 0, 10, 1)

    def test_requires_trials(self):
        with pytest.raises(ValueError):
            ExperimentConfig(5, 0, 1, 0, 1)

    def test_requires_positive_degree(self):
        with pytest.raises(ValueError):
            ExperimentConfig(0, 0, 1, 10, 1)


class TestWilson:
    def test_bounds_order(self):
        low, high = wilson_interval(3, 10)
        assert 0 <= low <= 0.3 <= high <= 1

    def test_extremes_stay_in_unit_interval(self):
        assert wilson_interval(0, 50)[0] == 0.0
        assert wilson_interval(50, 50)[1] == 1.0

    def test_coverage_at_one_fifth(self):
        # known p = 1/5 for a single random endofunction on 5 points
        hits = 0
        experiments = 200
        for i in range(experiments):
            config = ExperimentConfig(5, 0, 1, 1000, seed=1000 + i)
            est = estimate_sync_probability(config)
            if est.ci_low <= 0.2 <= est.ci_high:
                hits += 1
        assert hits >= 0.9 * experiments


class TestExact:
    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7])
    def test_single_endofunction_closed_form(self, n):
        result = exact_sync_probability(n, 0, 1)
        assert Fraction(result.numerator, result.denominator) == Fraction(1, n)

    def test_two_endofunctions_degree_two(self):
        result = exact_sync_probability(2, 0, 2)
        assert (result.numerator, result.denominator) == (3, 4)
        # oracle: 16 ordered pairs; synchronizing iff some generator constant
        count = 0
        maps = [Endofunction(t) for t in itertools.product(range(2), repeat=2)]
        for f, g in itertools.product(maps, maps):
            if any(len(set(m.images)) == 1 for m in (f, g)):
                count += 1
        assert Fraction(count, 16) == Fraction(3, 4)

    def test_mixed_pair_degree_two(self):
        # 2 permutations x 4 maps = 8 ordered pairs; frozen regression value
        result = exact_sync_probability(2, 1, 1)
        assert (result.numerator, result.denominator) == (1, 2)

    def test_enumeration_guard(self):
        with pytest.raises(ValueError, match="closed form|estimate"):
            exact_sync_probability(12, 0, 2)

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            exact_sync_probability(3, 0, 0)


class TestEstimate:
    def test_deterministic_given_seed(self):
        config = ExperimentConfig(8, 0, 2, 400, seed=21)
        assert estimate_sync_probability(config) == estimate_sync_probability(config)

    def test_thread_count_does_not_change_result(self):
        config = ExperimentConfig(6, 1, 1, 300, seed=33)
        assert estimate_sync_probability(config, threads=1) == estimate_sync_probability(
            config, threads=2
        )

    def test_permutations_alone_never_synchronize(self):
        config = ExperimentConfig(5, 2, 0, 200, seed=4)
        est = estimate_sync_probability(config)
        assert est.successes == 0

    def test_degree_two_pair_brackets_three_quarters(self):
        config = ExperimentConfig(2, 0, 2, 20_000, seed=8)
        est = estimate_sync_probability(config)
        assert est.ci_low <= 0.75 <= est.ci_high

    def test_single_map_brackets_one_over_n(self):
        config = ExperimentConfig(12, 0, 1, 20_000, seed=15)
        est = estimate_sync_probability(config)
        assert est.ci_low <= 1 / 12 <= est.ci_high

    def test_fast_path_matches_reference(self):
        # the vectorized pair-automaton sweep must agree with the
        # witness-producing closure on random instances
        for gens in build_instances(count=120, max_n=6, max_k=3, seed=0xFA57):
            fast = _all_pairs_collapsible(gens.n, [g.images for g in gens.generators])
            assert fast == is_synchronizing(gens)

    def test_fast_path_degree_one(self):
        assert _all_pairs_collapsible(1, [(0,)])


class TestEdgeGraphExperiment:
    def test_exact_bound_values(self):
        report = edge_graph_experiment(4, 10, seed=0)
        assert report.union_bound == Fraction(3, 32)
        assert report.per_graph_probability == Fraction(1, 64)
        assert report.graph_count == 6

    def test_degree_two_matches_exhaustive_count(self):
        # all 16 ordered map pairs on two points: both fix the unique edge
        # graph iff both are permutations -> 4/16
        maps = [t for t in itertools.product(range(2), repeat=2)]
        hits = sum(
            1
            for f in maps
            for g in maps
            if set(f) == {0, 1} and set(g) == {0, 1}
        )
        assert Fraction(hits, 16) == Fraction(1, 4)
        report = edge_graph_experiment(2, 10, seed=0)
        assert report.union_bound == Fraction(1, 4)

    def test_true_probability_below_bound_exhaustively(self):
        for n in (2, 3):
            hits = 0
            total = 0
            for f in itertools.product(range(n), repeat=n):
                for g in itertools.product(range(n), repeat=n):
                    total += 1
                    if any(
                        {f[v], f[w]} == {v, w} and {g[v], g[w]} == {v, w}
                        for v in range(n)
                        for w in range(v + 1, n)
                    ):
                        hits += 1
            bound = Fraction(n * (n - 1) // 2) * Fraction(2 * n ** (n - 2), n**n) ** 2
            assert Fraction(hits, total) <= bound

    def test_sampled_estimate_within_bound(self):
        report = edge_graph_experiment(5, 20_000, seed=77)
        assert report.within_bound

    def test_requires_two_points(self):
        with pytest.raises(ValueError):
            edge_graph_experiment(1, 10, seed=0)


class TestExplorer:
    def test_labeled_four_vertices(self):
        records = list(explore_maximal_nonsync(4))
        assert len(records) == 64
        singles = [r for r in records if len(r["edges"]) == 1]
        assert len(singles) == 6
        for record in singles:
            assert record["passes"]
            assert record["maximal"] is True
            assert record["end_count"] == "32"

    def test_null_graph_excluded(self):
        records = list(explore_maximal_nonsync(3))
        null_record = next(r for r in records if r["null"])
        assert not null_record["passes"]
        assert null_record["maximal"] is None

    def test_canonical_four_vertices(self):
        records = list(explore_maximal_nonsync(4, canonical=True))
        assert len(records) == 11

    def test_no_distinct_pair_candidates_small(self):
        for n in (3, 4):
            for record in explore_maximal_nonsync(n):
                assert record["distinct_pair_candidate"] in (None, False)

    def test_records_serialize(self):
        for record in explore_maximal_nonsync(3):
            json.dumps(record)

    def test_caps_produce_skip_notes_not_errors(self):
        records = list(explore_maximal_nonsync(4, end_cap=10))
        assert len(records) == 64  # capped stages never abort the stream
        capped = [r for r in records if r["skips"]]
        assert capped
        for record in capped:
            assert record["end_count"] is None or record["maximal"] is None
            json.dumps(record)


class TestSweep:
    CONFIG = [(0, 2, 300)]

    def test_record_schema(self):
        records = sweep([4, 5], self.CONFIG, seed=2)
        assert len(records) == 2
        for record in records:
            assert set(record) == {
                "experiment",
                "n",
                "r",
                "s",
                "trials",
                "seed",
                "successes",
                "estimate",
                "ci_low",
                "ci_high",
                "exact",
            }
            assert record["trials"] == 300
            assert 0 <= record["estimate"] <= 1

    def test_byte_identical_reruns(self):
        a = [json.dumps(r, sort_keys=True) for r in sweep([4, 5], self.CONFIG, seed=2)]
        b = [json.dumps(r, sort_keys=True) for r in sweep([4, 5], self.CONFIG, seed=2)]
        assert a == b

    def test_exact_field_for_single_map(self):
        records = sweep([7], [(0, 1, 200)], seed=5)
        assert records[0]["exact"] == "1/7"
        assert records[0]["ci_low"] <= 1 / 7 <= records[0]["ci_high"]

    def test_empty_n_list(self):
        assert sweep([], self.CONFIG, seed=1) == []

    def test_rows_reproducible_from_their_own_seed(self):
        record = sweep([6], self.CONFIG, seed=13)[0]
        config = ExperimentConfig(6, 0, 2, 300, record["seed"])
        est = estimate_sync_probability(config)
        assert est.successes == record["successes"]


class TestAudit:
    def test_certificates_replay_on_audited_trials(self):
        # trial indices divisible by 100 replay a full min-rank certificate;
        # a run over several audited trials exercising that path must pass
        config = ExperimentConfig(4, 0, 2, 101, seed=77)
        est = estimate_sync_probability(config)
        assert est.trials == 101
