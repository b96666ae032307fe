import random
import statistics
from fractions import Fraction

import pytest

from hicite.corpus import load_corpus_dir, write_corpus
from hicite.errors import ConfigError
from hicite.synth import (
    AgingKernel,
    LayoutCell,
    SynthConfig,
    config_from_dict,
    config_to_dict,
    generate_corpus,
    load_config,
    preset,
    save_config,
    validate_config,
    volume_profile,
    with_seed,
)

FLAT = AgingKernel("flat")


def tiny_config(**overrides):
    base = dict(
        seed=7,
        n_publications=4,
        n_journals=2,
        category_layout=(LayoutCell(frozenset({"A"}), 1, 3), LayoutCell(frozenset({"B"}), 1, 1)),
        pub_year=2000,
        n_years=3,
        citations_per_year=(5, 3, 2),
        aging=FLAT,
        advantage_offset=Fraction(1),
    )
    base.update(overrides)
    return SynthConfig(**base)


class TestKernels:
    def test_flat_weights_uniform(self):
        assert FLAT.weights(4) == (Fraction(1),) * 4

    def test_fast_peaks_at_offset_one_then_decays(self):
        kernel = AgingKernel("fast", decay=Fraction(1, 2))
        weights = kernel.weights(5)
        assert weights == (Fraction(1, 2), Fraction(1), Fraction(1, 2), Fraction(1, 4), Fraction(1, 8))
        assert max(range(5), key=weights.__getitem__) == 1

    def test_slow_peaks_at_configured_offset(self):
        kernel = AgingKernel("slow", decay=Fraction(3, 4), peak_offset=4)
        weights = kernel.weights(8)
        assert max(range(8), key=weights.__getitem__) == 4
        assert all(w > 0 for w in weights)
        assert list(weights[:5]) == sorted(weights[:5])

    def test_kernel_parameter_validation(self):
        with pytest.raises(ConfigError, match="decay"):
            validate_config(tiny_config(aging=AgingKernel("fast", decay=Fraction(3, 2))))
        with pytest.raises(ConfigError, match="peak_offset"):
            validate_config(tiny_config(aging=AgingKernel("slow", decay=Fraction(1, 2), peak_offset=9)))
        with pytest.raises(ConfigError, match="unknown kernel"):
            validate_config(tiny_config(aging=AgingKernel("sudden")))
        with pytest.raises(ConfigError, match="no parameters"):
            validate_config(tiny_config(aging=AgingKernel("flat", decay=Fraction(1, 2))))


class TestValidation:
    def test_field_level_messages(self):
        bad = tiny_config(
            seed=-1,
            citations_per_year=(5, -3, 2),
            advantage_offset=Fraction(-1, 2),
        )
        with pytest.raises(ConfigError) as excinfo:
            validate_config(bad)
        text = "\n".join(excinfo.value.problems)
        assert "seed" in text
        assert "citations_per_year[1]" in text
        assert "advantage_offset" in text

    def test_layout_sums_must_match(self):
        with pytest.raises(ConfigError, match="sum to"):
            validate_config(tiny_config(n_publications=9))

    def test_volume_length_must_match_years(self):
        with pytest.raises(ConfigError, match="expected 3 entries"):
            validate_config(tiny_config(citations_per_year=(1, 2)))

    def test_duplicate_category_sets_rejected(self):
        layout = (LayoutCell(frozenset({"A"}), 1, 2), LayoutCell(frozenset({"A"}), 1, 2))
        with pytest.raises(ConfigError, match="duplicate category set"):
            validate_config(tiny_config(category_layout=layout, n_publications=4, n_journals=2))


class TestGeneration:
    def test_zero_volumes_give_zero_events(self):
        corpus = generate_corpus(tiny_config(citations_per_year=(0, 0, 0)))
        assert corpus.events == ()

    def test_yearly_totals_match_volumes_exactly(self):
        config = tiny_config()
        corpus = generate_corpus(config)
        for offset, volume in enumerate(config.citations_per_year):
            year = config.pub_year + offset
            assert sum(1 for e in corpus.events if e.citing_year == year) == volume

    def test_round_robin_journal_assignment(self):
        corpus = generate_corpus(tiny_config())
        by_journal = {}
        for pub in corpus.publications.values():
            by_journal.setdefault(pub.journal_id, 0)
            by_journal[pub.journal_id] += 1
        assert sorted(by_journal.values()) == [1, 3]
        assert {len(v) for v in corpus.cell_index.values()} == {1, 3}

    def test_same_seed_same_corpus(self):
        assert generate_corpus(tiny_config()) == generate_corpus(tiny_config())

    def test_different_seed_different_events(self):
        config = tiny_config(citations_per_year=(40, 40, 40), n_publications=30,
                             category_layout=(LayoutCell(frozenset({"A"}), 2, 30),),
                             n_journals=2)
        assert generate_corpus(config) != generate_corpus(with_seed(config, 8))

    def test_first_draw_between_two_cold_publications_is_even(self):
        config = tiny_config(
            n_publications=2,
            n_journals=1,
            category_layout=(LayoutCell(frozenset({"A"}), 1, 2),),
            n_years=1,
            citations_per_year=(1,),
        )
        # closed form: both weights equal, so each side wins with probability 1/2
        wins = 0
        for seed in range(10_000):
            corpus = generate_corpus(with_seed(config, seed))
            wins += corpus.events[0].publication_id == "P000000"
        assert 0.48 <= wins / 10_000 <= 0.52

    def test_cumulative_advantage_beats_uniform_control_on_spread(self):
        layout = (LayoutCell(frozenset({"A"}), 1, 20),)
        shared = dict(
            n_publications=20,
            n_journals=1,
            category_layout=layout,
            n_years=2,
            citations_per_year=(60, 60),
        )
        advantaged = tiny_config(advantage_offset=Fraction(1), **shared)
        # huge offset drowns the running counts: effectively uniform draws
        control = tiny_config(advantage_offset=Fraction(1000), **shared)
        spreads = {}
        for name, config in (("advantaged", advantaged), ("control", control)):
            variances = []
            for seed in range(120):
                corpus = generate_corpus(with_seed(config, seed))
                totals = [sum(series) for series in corpus.series_index.values()]
                variances.append(statistics.pvariance(totals))
            spreads[name] = statistics.mean(variances)
        assert spreads["advantaged"] > spreads["control"]


class TestVolumeProfile:
    def test_conserves_total_and_tracks_weights(self):
        weights = AgingKernel("fast", decay=Fraction(1, 2)).weights(6)
        volumes = volume_profile(weights, 1000)
        assert sum(volumes) == 1000
        assert max(range(6), key=volumes.__getitem__) == 1

    def test_largest_remainder_is_deterministic(self):
        weights = (Fraction(1), Fraction(1), Fraction(1))
        assert volume_profile(weights, 10) == (4, 3, 3)

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            volume_profile((), 5)
        with pytest.raises(ValueError):
            volume_profile((Fraction(0),), 5)


class TestPresets:
    def test_full_scale_cell_sizes(self):
        fast = preset("fast_physics_like")
        assert tuple(cell.publications for cell in fast.category_layout) == (8047, 1977, 2440)
        slow = preset("slow_math_like")
        assert tuple(cell.publications for cell in slow.category_layout) == (10022, 3938, 3286)
        assert fast.n_years == slow.n_years == 8
        assert sum(fast.citations_per_year) == sum(slow.citations_per_year)

    def test_divisor_ten_scales_cells(self):
        config = preset("fast_physics_like", divisor=10)
        assert tuple(cell.publications for cell in config.category_layout) == (805, 198, 244)

    def test_unknown_preset_rejected(self):
        with pytest.raises(ConfigError, match="unknown preset"):
            preset("medium_chemistry_like")
        with pytest.raises(ConfigError, match="divisor"):
            preset("fast_physics_like", divisor=0)

    def test_kernel_shapes_differ_by_domain(self):
        fast = preset("fast_physics_like", divisor=20)
        slow = preset("slow_math_like", divisor=20)
        assert max(range(8), key=fast.citations_per_year.__getitem__) == 1
        assert max(range(8), key=slow.citations_per_year.__getitem__) == 4

    def test_generated_preset_round_trips_through_files(self, tmp_path):
        corpus = generate_corpus(preset("fast_physics_like", divisor=100, seed=11))
        write_corpus(corpus, tmp_path)
        assert load_corpus_dir(tmp_path) == corpus


class TestConfigSerialization:
    def test_round_trip(self):
        config = preset("slow_math_like", divisor=25, seed=99)
        assert config_from_dict(config_to_dict(config)) == config

    def test_save_and_load(self, tmp_path):
        config = tiny_config(aging=AgingKernel("slow", decay=Fraction(4, 5), peak_offset=3))
        path = tmp_path / "config.json"
        save_config(config, path)
        assert load_config(path) == config

    def test_unknown_field_rejected(self):
        data = config_to_dict(tiny_config())
        data["flavor"] = "vanilla"
        with pytest.raises(ConfigError, match="unknown field"):
            config_from_dict(data)

    def test_missing_field_rejected(self):
        data = config_to_dict(tiny_config())
        del data["seed"]
        with pytest.raises(ConfigError, match="seed: missing"):
            config_from_dict(data)

    def test_negative_volume_rejected_on_load(self, tmp_path):
        data = config_to_dict(tiny_config())
        data["citations_per_year"] = [5, -3, 2]
        with pytest.raises(ConfigError, match="citations_per_year"):
            config_from_dict(data)

    def test_non_json_file_rejected(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text("not json", encoding="utf-8")
        with pytest.raises(ConfigError, match="not valid JSON"):
            load_config(path)
