"""Experiment configuration loading and validation."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Optional

import yaml

from .errors import ConfigError


@dataclass
class ModelConfig:
    name: str = "sine_gordon"
    params: dict = field(default_factory=dict)


@dataclass
class GridConfig:
    n_points: int = 64
    dx: float = 0.2


@dataclass
class InitialConfig:
    kind: str = "gaussian_bump"
    center: Optional[float] = None
    width: float = 1.0
    amplitude: float = 1.0
    mode: int = 1
    path: str = ""


@dataclass
class SchemeConfig:
    # "auto" picks AverageValue for polynomial densities, else MidpointGonzalez
    name: str = "auto"
    nodes: Optional[int] = None


@dataclass
class TimeConfig:
    dt: float = 0.1
    n_steps: int = 100
    method: str = "dg"
    solver: str = "newton"
    tol: float = 1e-12
    max_iter: int = 50
    jacobian: str = "finite_difference"


@dataclass
class OutputConfig:
    directory: str = "results"
    csv: str = "trajectory.csv"
    report: str = "report"
    format: str = "json"


@dataclass
class ExperimentConfig:
    model: ModelConfig = field(default_factory=ModelConfig)
    grid: GridConfig = field(default_factory=GridConfig)
    initial: InitialConfig = field(default_factory=InitialConfig)
    scheme: SchemeConfig = field(default_factory=SchemeConfig)
    time: TimeConfig = field(default_factory=TimeConfig)
    output: OutputConfig = field(default_factory=OutputConfig)
    verbose: bool = False

    @classmethod
    def load(cls, path: Optional[Path] = None) -> ExperimentConfig:
        """Load config from a YAML file, falling back to defaults.

        An explicit path must exist; without one the current directory and
        ~/.config/eclkit are searched.
        """
        if path is None:
            candidates = [
                Path.cwd() / "eclkit.yaml",
                Path.home() / ".config" / "eclkit" / "config.yaml",
            ]
            for candidate in candidates:
                if candidate.exists():
                    path = candidate
                    break
            else:
                return cls()
        elif not path.exists():
            raise ConfigError(f"Config file not found: {path}")

        try:
            with open(path) as f:
                data = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise ConfigError(f"Could not parse {path}: {e}") from e
        if not isinstance(data, dict):
            raise ConfigError(f"{path} must contain a mapping of sections")
        return cls._from_dict(data)

    @classmethod
    def _from_dict(cls, data: dict) -> ExperimentConfig:
        cfg = cls()
        cfg.verbose = bool(data.get("verbose", cfg.verbose))

        if "model" in data:
            m = _section(data, "model")
            params = m.get("params", {}) or {}
            if not isinstance(params, dict):
                raise ConfigError("model.params must be a mapping")
            cfg.model = ModelConfig(name=str(m.get("name", cfg.model.name)), params=dict(params))

        if "grid" in data:
            g = _section(data, "grid")
            n = g.get("n_points", g.get("N", cfg.grid.n_points))
            cfg.grid = GridConfig(
                n_points=_number(n, "grid.n_points", int),
                dx=_number(g.get("dx", cfg.grid.dx), "grid.dx", float),
            )

        if "initial" in data:
            ic = _section(data, "initial")
            center = ic.get("center", cfg.initial.center)
            cfg.initial = InitialConfig(
                kind=str(ic.get("kind", cfg.initial.kind)),
                center=None if center is None else _number(center, "initial.center", float),
                width=_number(ic.get("width", cfg.initial.width), "initial.width", float),
                amplitude=_number(
                    ic.get("amplitude", cfg.initial.amplitude), "initial.amplitude", float
                ),
                mode=_number(ic.get("mode", cfg.initial.mode), "initial.mode", int),
                path=str(ic.get("path", cfg.initial.path) or ""),
            )

        if "scheme" in data:
            s = _section(data, "scheme")
            nodes = s.get("nodes", cfg.scheme.nodes)
            cfg.scheme = SchemeConfig(
                name=str(s.get("name", cfg.scheme.name)),
                nodes=None if nodes is None else _number(nodes, "scheme.nodes", int),
            )

        if "time" in data:
            t = _section(data, "time")
            cfg.time = TimeConfig(
                dt=_number(t.get("dt", cfg.time.dt), "time.dt", float),
                n_steps=_number(t.get("n_steps", cfg.time.n_steps), "time.n_steps", int),
                method=str(t.get("method", cfg.time.method)),
                solver=str(t.get("solver", cfg.time.solver)),
                tol=_number(t.get("tol", cfg.time.tol), "time.tol", float),
                max_iter=_number(t.get("max_iter", cfg.time.max_iter), "time.max_iter", int),
                jacobian=str(t.get("jacobian", cfg.time.jacobian)),
            )

        if "output" in data:
            o = _section(data, "output")
            cfg.output = OutputConfig(
                directory=str(o.get("directory", cfg.output.directory)),
                csv=str(o.get("csv", cfg.output.csv)),
                report=str(o.get("report", cfg.output.report)),
                format=str(o.get("format", cfg.output.format)),
            )

        return cfg

    # ------------------------------------------------------------------
    # Validation and wiring
    # ------------------------------------------------------------------

    def validate(self) -> ExperimentConfig:
        """Check names against the catalogs and numeric ranges.

        Raises ConfigError naming the offending key.
        """
        from .dgrad import SCHEMES
        from .initial import INITIAL_CONDITIONS
        from .integrate.config import JACOBIANS, SOLVERS
        from .integrate.stepper import BASELINES
        from .models import MODELS
        from .output import FORMATS

        _choice("model.name", self.model.name, tuple(MODELS))
        _choice("initial.kind", self.initial.kind, INITIAL_CONDITIONS)
        _choice("scheme.name", self.scheme.name, ("auto",) + SCHEMES)
        _choice("time.method", self.time.method, ("dg",) + BASELINES)
        _choice("time.solver", self.time.solver, SOLVERS)
        _choice("time.jacobian", self.time.jacobian, JACOBIANS)
        _choice("output.format", self.output.format, FORMATS)

        if self.grid.n_points < 3:
            raise ConfigError(f"grid.n_points must be at least 3, got {self.grid.n_points}")
        _positive("grid.dx", self.grid.dx)
        _positive("time.dt", self.time.dt)
        _positive("time.tol", self.time.tol)
        _positive("time.max_iter", self.time.max_iter)
        _positive("initial.width", self.initial.width)
        if self.time.n_steps < 0:
            raise ConfigError(f"time.n_steps must be nonnegative, got {self.time.n_steps}")
        if self.scheme.nodes is not None:
            _positive("scheme.nodes", self.scheme.nodes)
        if self.initial.kind == "from_file":
            if not self.initial.path:
                raise ConfigError("initial.path is required for from_file")
            if not Path(self.initial.path).exists():
                raise ConfigError(f"initial.path not found: {self.initial.path}")
        return self

    def build_grid(self):
        from .grid import Grid

        return Grid(self.grid.n_points, self.grid.dx)

    def build_model(self, grid=None):
        from .models import builtin_model

        try:
            return builtin_model(self.model.name, grid or self.build_grid(), self.model.params)
        except ValueError as e:
            raise ConfigError(f"model: {e}") from e

    def build_scheme(self, model, name: Optional[str] = None):
        """The configured scheme, or ``name`` with the configured node count."""
        from .dgrad import default_scheme, get_scheme

        name = name or self.scheme.name
        if name == "auto":
            return default_scheme(model.point_function)
        return get_scheme(name, self.scheme.nodes)

    def build_step_config(self, dt: Optional[float] = None):
        from .integrate.config import StepConfig

        return StepConfig(
            dt=self.time.dt if dt is None else dt,
            solver=self.time.solver,
            tol=self.time.tol,
            max_iter=self.time.max_iter,
            jacobian=self.time.jacobian,
            verbose=self.verbose,
        )

    def build_initial(self, model):
        from .initial import make_initial

        ic = self.initial
        return make_initial(
            model,
            ic.kind,
            center=ic.center,
            width=ic.width,
            amplitude=ic.amplitude,
            mode=ic.mode,
            path=Path(ic.path) if ic.path else None,
        )

    def to_dict(self) -> dict:
        return asdict(self)


def _section(data: dict, name: str) -> dict:
    section = data.get(name) or {}
    if not isinstance(section, dict):
        raise ConfigError(f"section '{name}' must be a mapping")
    return section


def _number(value: Any, key: str, cast: type):
    if isinstance(value, bool):
        raise ConfigError(f"{key} must be a number, got {value!r}")
    try:
        out = cast(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{key} must be a number, got {value!r}") from None
    if cast is int and isinstance(value, float) and value != out:
        raise ConfigError(f"{key} must be an integer, got {value!r}")
    return out


def _choice(key: str, value: str, valid: tuple) -> None:
    if value not in valid:
        raise ConfigError(f"Unknown {key} '{value}'. Valid values: {', '.join(valid)}")


def _positive(key: str, value) -> None:
    if not value > 0:
        raise ConfigError(f"{key} must be positive, got {value}")
