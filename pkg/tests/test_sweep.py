"""Tests for parameter sweeps and convergence slopes."""

import os

import pytest

from eclkit.config import ExperimentConfig
from eclkit.errors import ConfigError
from eclkit.sweep import (
    THREADS_ENV,
    SweepCell,
    _steps_for,
    convergence_slopes,
    run_sweep,
    sweep_cells,
    sweep_threads,
)


def _oscillator_config(n_points=8):
    """A spatially uniform harmonic wave, i.e. one oscillator per cell."""
    return ExperimentConfig._from_dict(
        {
            "model": {"name": "nonlinear_wave", "params": {"potential": "harmonic"}},
            "grid": {"n_points": n_points, "dx": 0.5},
            "initial": {"kind": "plane_wave", "mode": 0, "amplitude": 1.0},
            "scheme": {"name": "average"},
        }
    )


class TestThreads:
    def test_env_value(self, monkeypatch):
        monkeypatch.setenv(THREADS_ENV, "3")
        assert sweep_threads() == 3

    def test_default_is_cpu_count(self, monkeypatch):
        monkeypatch.delenv(THREADS_ENV, raising=False)
        assert sweep_threads() == (os.cpu_count() or 1)

    @pytest.mark.parametrize("raw", ["0", "-2", "many"])
    def test_bad_value_falls_back(self, monkeypatch, raw):
        monkeypatch.setenv(THREADS_ENV, raw)
        assert sweep_threads() == (os.cpu_count() or 1)


class TestCells:
    def test_cross_product_order(self):
        cells = sweep_cells([8, 16], [0.1, 0.05], ["average"])
        assert cells == [
            SweepCell(8, 0.1, "average"),
            SweepCell(8, 0.05, "average"),
            SweepCell(16, 0.1, "average"),
            SweepCell(16, 0.05, "average"),
        ]

    def test_empty_axis_raises(self):
        with pytest.raises(ConfigError, match="empty"):
            sweep_cells([8], [], ["average"])

    def test_steps_for(self):
        assert _steps_for(1.0, 0.1) == 10
        assert _steps_for(1.0, 0.003125) == 320

    def test_steps_for_rejects_non_multiple(self):
        with pytest.raises(ConfigError, match="multiple"):
            _steps_for(1.0, 0.3)


class TestConvergenceSlopes:
    def test_exact_power_law(self):
        rows = [
            {"n_points": 8, "scheme": "average", "dt": dt, "global_error": 3.0 * dt**2}
            for dt in (0.2, 0.1, 0.05)
        ]
        slopes = convergence_slopes(rows)
        assert slopes[(8, "average")] == pytest.approx(2.0)

    def test_reads_csv_strings_and_skips_failures(self):
        rows = [
            {"n_points": "8", "scheme": "gonzalez", "dt": "0.1", "global_error": "0.01"},
            {"n_points": "8", "scheme": "gonzalez", "dt": "0.05", "global_error": "0.0025"},
            {"n_points": "8", "scheme": "gonzalez", "dt": "0.025", "global_error": ""},
        ]
        assert convergence_slopes(rows)[(8, "gonzalez")] == pytest.approx(2.0)

    def test_single_dt_has_no_slope(self):
        rows = [{"n_points": 8, "scheme": "average", "dt": 0.1, "global_error": 0.01}]
        assert convergence_slopes(rows) == {}


class TestRunSweep:
    def test_rows_and_failures(self, monkeypatch):
        monkeypatch.setenv(THREADS_ENV, "2")
        rows = run_sweep(_oscillator_config(), [8], [0.25, 0.3], ["average"], final_time=1.0)
        assert [r["dt"] for r in rows] == [0.25, 0.3]
        ok, bad = rows
        assert ok["status"] == "ok"
        assert ok["n_steps"] == 4
        assert abs(ok["relative_energy_drift"]) <= 1e-10
        assert ok["global_error"] > 0
        assert bad["status"] == "failed"
        assert "multiple" in bad["error"]

    def test_on_cell_called_per_cell(self):
        calls = []
        run_sweep(
            _oscillator_config(), [8, 12], [0.25], ["average", "gonzalez"],
            final_time=0.5, on_cell=lambda: calls.append(1),
        )
        assert len(calls) == 4

    def test_nonpositive_final_time_raises(self):
        with pytest.raises(ConfigError):
            run_sweep(_oscillator_config(), [8], [0.1], ["average"], final_time=0.0)

    @pytest.mark.slow
    def test_second_order_convergence(self):
        rows = run_sweep(
            _oscillator_config(), [8], [0.2, 0.1, 0.05, 0.025], ["average"], final_time=1.0
        )
        assert all(r["status"] == "ok" for r in rows)
        slope = convergence_slopes(rows)[(8, "average")]
        assert slope == pytest.approx(2.0, abs=0.2)
