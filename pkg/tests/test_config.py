"""Tests for configuration loading."""

from pathlib import Path
import tempfile

import pytest
import yaml

from eclkit.config import ExperimentConfig
from eclkit.dgrad import AverageValue, MidpointGonzalez
from eclkit.errors import ConfigError


def _write(data) -> Path:
    with tempfile.NamedTemporaryFile(mode="w", suffix=".yaml", delete=False) as f:
        yaml.dump(data, f)
        f.flush()
        return Path(f.name)


class TestConfigDefaults:
    def test_default_model(self):
        cfg = ExperimentConfig()
        assert cfg.model.name == "sine_gordon"
        assert cfg.model.params == {}

    def test_default_grid(self):
        cfg = ExperimentConfig()
        assert cfg.grid.n_points == 64
        assert cfg.grid.dx == 0.2

    def test_default_time(self):
        cfg = ExperimentConfig()
        assert cfg.time.dt == 0.1
        assert cfg.time.n_steps == 100
        assert cfg.time.method == "dg"
        assert cfg.time.tol == 1e-12

    def test_default_output(self):
        cfg = ExperimentConfig()
        assert cfg.output.directory == "results"
        assert cfg.output.csv == "trajectory.csv"
        assert cfg.output.format == "json"

    def test_defaults_validate(self):
        ExperimentConfig().validate()


class TestConfigLoad:
    def test_missing_explicit_path_raises(self):
        with pytest.raises(ConfigError, match="not found"):
            ExperimentConfig.load(Path("/nonexistent/path/eclkit.yaml"))

    def test_load_from_yaml(self):
        path = _write(
            {
                "model": {"name": "kdv_type", "params": {"alpha": 0.5}},
                "grid": {"n_points": 32, "dx": 0.25},
                "time": {"dt": 0.05, "n_steps": 10},
            }
        )
        cfg = ExperimentConfig.load(path)
        assert cfg.model.name == "kdv_type"
        assert cfg.model.params == {"alpha": 0.5}
        assert cfg.grid.n_points == 32
        assert cfg.time.dt == 0.05
        # Unspecified fields retain defaults
        assert cfg.time.solver == "newton"
        assert cfg.output.format == "json"

    def test_partial_section_keeps_other_keys(self):
        cfg = ExperimentConfig.load(_write({"time": {"n_steps": 7}}))
        assert cfg.time.n_steps == 7
        assert cfg.time.dt == 0.1

    def test_n_alias(self):
        cfg = ExperimentConfig._from_dict({"grid": {"N": 16}})
        assert cfg.grid.n_points == 16

    def test_empty_file_gives_defaults(self):
        path = _write(None)
        assert ExperimentConfig.load(path).model.name == "sine_gordon"

    def test_bad_yaml_raises(self, tmp_path):
        path = tmp_path / "bad.yaml"
        path.write_text("model: [unclosed\n")
        with pytest.raises(ConfigError, match="Could not parse"):
            ExperimentConfig.load(path)

    def test_non_mapping_raises(self):
        with pytest.raises(ConfigError, match="mapping"):
            ExperimentConfig.load(_write([1, 2, 3]))

    def test_section_must_be_mapping(self):
        with pytest.raises(ConfigError, match="section 'grid'"):
            ExperimentConfig._from_dict({"grid": 5})

    def test_non_numeric_value_raises(self):
        with pytest.raises(ConfigError, match="time.dt"):
            ExperimentConfig._from_dict({"time": {"dt": "fast"}})

    def test_fractional_integer_raises(self):
        with pytest.raises(ConfigError, match="integer"):
            ExperimentConfig._from_dict({"time": {"n_steps": 2.5}})

    def test_search_path_in_cwd(self, tmp_path, monkeypatch):
        (tmp_path / "eclkit.yaml").write_text(yaml.dump({"model": {"name": "kdv_type"}}))
        monkeypatch.chdir(tmp_path)
        monkeypatch.setenv("HOME", str(tmp_path / "home"))
        assert ExperimentConfig.load().model.name == "kdv_type"

    def test_search_path_in_home(self, tmp_path, monkeypatch):
        home = tmp_path / "home"
        (home / ".config" / "eclkit").mkdir(parents=True)
        (home / ".config" / "eclkit" / "config.yaml").write_text(
            yaml.dump({"grid": {"dx": 0.5}})
        )
        monkeypatch.chdir(tmp_path)
        monkeypatch.setenv("HOME", str(home))
        assert ExperimentConfig.load().grid.dx == 0.5

    def test_no_file_anywhere_gives_defaults(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        monkeypatch.setenv("HOME", str(tmp_path / "home"))
        assert ExperimentConfig.load().grid.n_points == 64


class TestConfigValidate:
    @pytest.mark.parametrize(
        "data,key",
        [
            ({"model": {"name": "burgers"}}, "model.name"),
            ({"scheme": {"name": "leapfrog"}}, "scheme.name"),
            ({"time": {"method": "euler"}}, "time.method"),
            ({"time": {"solver": "broyden"}}, "time.solver"),
            ({"output": {"format": "xml"}}, "output.format"),
            ({"initial": {"kind": "soliton"}}, "initial.kind"),
            ({"grid": {"n_points": 2}}, "grid.n_points"),
            ({"grid": {"dx": 0.0}}, "grid.dx"),
            ({"time": {"dt": -0.1}}, "time.dt"),
            ({"time": {"n_steps": -1}}, "time.n_steps"),
        ],
    )
    def test_invalid_values_name_the_key(self, data, key):
        with pytest.raises(ConfigError, match=key.replace(".", r"\.")):
            ExperimentConfig._from_dict(data).validate()

    def test_from_file_needs_path(self):
        cfg = ExperimentConfig._from_dict({"initial": {"kind": "from_file"}})
        with pytest.raises(ConfigError, match="initial.path"):
            cfg.validate()


class TestConfigBuild:
    def test_build_model(self):
        cfg = ExperimentConfig._from_dict(
            {"model": {"name": "nonlinear_wave", "params": {"potential": "quartic"}}}
        )
        model = cfg.build_model()
        assert model.name == "nonlinear_wave"
        assert model.grid.n_points == 64

    def test_build_model_wraps_catalog_errors(self):
        cfg = ExperimentConfig._from_dict({"model": {"params": {"gamma": 1.0}}})
        with pytest.raises(ConfigError, match="model: Unknown parameter"):
            cfg.build_model()

    def test_auto_scheme_picks_average_for_polynomials(self):
        cfg = ExperimentConfig._from_dict({"model": {"name": "kdv_type"}})
        scheme = cfg.build_scheme(cfg.build_model())
        assert isinstance(scheme, AverageValue)
        assert scheme.exact_for(3)

    def test_auto_scheme_picks_gonzalez_otherwise(self):
        cfg = ExperimentConfig()
        assert isinstance(cfg.build_scheme(cfg.build_model()), MidpointGonzalez)

    def test_scheme_override_keeps_nodes(self):
        cfg = ExperimentConfig._from_dict({"scheme": {"nodes": 4}})
        scheme = cfg.build_scheme(cfg.build_model(), "average")
        assert scheme.nodes == 4

    def test_build_step_config(self):
        cfg = ExperimentConfig._from_dict({"time": {"tol": 1e-10, "max_iter": 5}})
        step = cfg.build_step_config(dt=0.01)
        assert step.dt == 0.01
        assert step.tol == 1e-10
        assert step.max_iter == 5

    def test_build_initial_matches_grid(self):
        cfg = ExperimentConfig._from_dict({"grid": {"n_points": 16}})
        model = cfg.build_model()
        z0 = cfg.build_initial(model)
        assert z0.values.shape == (2, 16)

    def test_to_dict_round_trips(self):
        cfg = ExperimentConfig._from_dict({"model": {"name": "kdv_type"}, "grid": {"N": 20}})
        again = ExperimentConfig._from_dict(cfg.to_dict())
        assert again.to_dict() == cfg.to_dict()
