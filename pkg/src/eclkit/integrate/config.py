"""Step configuration and solver reports."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional

from ..errors import ConfigError

SOLVERS = ("newton", "fixed_point")
JACOBIANS = ("finite_difference", "analytic")


@dataclass(frozen=True)
class StepConfig:
    """Time step and nonlinear solver settings for one implicit step."""

    dt: float
    solver: str = "newton"
    tol: float = 1e-12
    max_iter: int = 50
    jacobian: str = "finite_difference"
    fd_eps: Optional[float] = None
    verbose: bool = False

    def __post_init__(self):
        if not self.dt > 0:
            raise ConfigError(f"dt must be positive, got {self.dt}")
        if not self.tol > 0:
            raise ConfigError(f"tol must be positive, got {self.tol}")
        if int(self.max_iter) != self.max_iter or self.max_iter < 1:
            raise ConfigError(f"max_iter must be a positive integer, got {self.max_iter}")
        if self.solver not in SOLVERS:
            raise ConfigError(
                f"Unknown solver '{self.solver}'. Valid solvers: {', '.join(SOLVERS)}"
            )
        if self.jacobian not in JACOBIANS:
            raise ConfigError(
                f"Unknown jacobian '{self.jacobian}'. Valid jacobians: {', '.join(JACOBIANS)}"
            )
        if self.fd_eps is not None and not self.fd_eps > 0:
            raise ConfigError(f"fd_eps must be positive, got {self.fd_eps}")

    def with_dt(self, dt: float) -> StepConfig:
        return StepConfig(
            dt=dt,
            solver=self.solver,
            tol=self.tol,
            max_iter=self.max_iter,
            jacobian=self.jacobian,
            fd_eps=self.fd_eps,
            verbose=self.verbose,
        )


@dataclass(frozen=True)
class SolverReport:
    """Outcome of one nonlinear solve."""

    iterations: int
    final_residual_norm: float
    converged: bool
    solver: str = "newton"
    predictor: str = "euler"

    def to_dict(self) -> dict:
        return asdict(self)


# Explicit steps report no iterations
EXPLICIT_REPORT = SolverReport(
    iterations=0, final_residual_norm=0.0, converged=True, solver="explicit", predictor="none"
)
