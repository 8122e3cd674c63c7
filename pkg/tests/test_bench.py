import numpy as np
import pytest

from jeffreys_centers.bench import (
    BenchRecord,
    RunConfig,
    run_table1,
    run_table2,
    sample_histogram_pair,
    table1_csv,
    table2_csv,
    TABLE1_HEADER,
    TABLE2_HEADER,
)
from jeffreys_centers.errors import DomainError


class TestSampling:
    def test_deterministic_per_trial(self):
        a = sample_histogram_pair(7, 8, 3)
        b = sample_histogram_pair(7, 8, 3)
        assert np.array_equal(a, b)

    def test_distinct_trials_differ(self):
        a = sample_histogram_pair(7, 8, 3)
        b = sample_histogram_pair(7, 8, 4)
        assert not np.array_equal(a, b)

    def test_open_simplex(self):
        rows = sample_histogram_pair(0, 16, 0)
        assert rows.shape == (2, 16)
        assert rows.min() >= 1e-12
        assert np.allclose(rows.sum(axis=1), 1.0)


class TestRecords:
    def test_max_below_avg_rejected(self):
        with pytest.raises(ValueError):
            BenchRecord(2, "jfr", 1.0, 0.5, 0.0, 0.0, 0, 1.0)

    def test_unknown_method_rejected(self):
        with pytest.raises(ValueError):
            BenchRecord(2, "nope", 0.0, 0.0, 0.0, 0.0, 0, 1.0)

    def test_config_validation(self):
        with pytest.raises(ValueError):
            RunConfig(trials=0)
        with pytest.raises(ValueError):
            RunConfig(dims=[1])
        with pytest.raises(ValueError):
            RunConfig(epsilon=0.0)


class TestTable1:
    def test_determinism_without_timing(self):
        config = RunConfig(seed=11, trials=20, dims=(4,))
        a = table1_csv(run_table1(config, timing=False))
        b = table1_csv(run_table1(config, timing=False))
        assert a == b
        assert a.splitlines()[0] == TABLE1_HEADER

    def test_single_trial_max_equals_avg(self):
        config = RunConfig(seed=3, trials=1, dims=(4,))
        for rec in run_table1(config, timing=False):
            assert rec.max_info_eps == rec.avg_info_eps
            assert rec.max_tv == rec.avg_tv

    def test_info_eps_nonnegative(self):
        config = RunConfig(seed=5, trials=30, dims=(4, 8))
        for rec in run_table1(config):
            assert rec.avg_info_eps >= -1e-12
            assert rec.max_info_eps >= rec.avg_info_eps
            assert rec.speedup_vs_jeffreys > 0.0

    def test_methods_and_dims_layout(self):
        config = RunConfig(seed=5, trials=2, dims=(2, 4))
        recs = run_table1(config, timing=False)
        assert [(r.dim, r.method) for r in recs] == [
            (2, "jfr"), (2, "gb"), (4, "jfr"), (4, "gb"),
        ]


class TestTable2:
    def test_identical_inputs_all_zero(self):
        # alpha = 2/3 makes the second histogram uniform too
        rows = run_table2([2.0 / 3.0], timing=False)
        for r in rows:
            assert abs(r.info_eps) < 1e-9
            assert r.tv_eps < 1e-9

    def test_alpha_range_rejected(self):
        with pytest.raises(DomainError):
            run_table2([1.5])
        with pytest.raises(DomainError):
            run_table2([0.0])

    def test_flagging_of_degenerate_alphas(self):
        rows = run_table2([1e-1, 1e-16], timing=False)
        by_alpha = {r.alpha: r.flagged for r in rows if r.method == "jfr"}
        assert by_alpha[1e-1] is False
        assert by_alpha[1e-16] is True

    def test_csv_shape(self):
        rows = run_table2([1e-1], timing=False)
        text = table2_csv(rows)
        lines = text.splitlines()
        assert lines[0] == TABLE2_HEADER
        assert len(lines) == 3
        assert lines[1].startswith("1.00000e-01,jfr,")

    def test_paper_values_alpha_1e1(self):
        rows = {r.method: r for r in run_table2([1e-1], timing=False)}
        assert rows["jfr"].info_eps == pytest.approx(6.882e-09, rel=0.05)
        assert rows["jfr"].tv_eps == pytest.approx(2.495e-05, rel=0.05)
        assert rows["gb"].info_eps == pytest.approx(1.338e-06, rel=0.05)
        assert rows["gb"].tv_eps == pytest.approx(3.480e-04, rel=0.05)
