"""Domain exceptions raised by eclkit."""

from __future__ import annotations

from typing import TYPE_CHECKING, Optional

if TYPE_CHECKING:
    from .integrate.config import SolverReport


class EclkitError(Exception):
    """Base class for all eclkit errors."""


class ConfigError(EclkitError, ValueError):
    """Invalid experiment configuration."""


class NonFiniteError(EclkitError, ValueError):
    """A state or point argument contains NaN or Inf."""


class ShapeMismatchError(EclkitError, ValueError):
    """Grid functions, models or kinds do not fit together."""


class NotConservative(EclkitError, ValueError):
    """Total density change is too large for a conservative flux to exist."""


class SolverError(EclkitError, RuntimeError):
    """Nonlinear solve of an implicit step failed."""

    def __init__(
        self,
        message: str,
        report: Optional[SolverReport] = None,
        step: Optional[int] = None,
        reason: Optional[str] = None,
    ):
        super().__init__(message)
        self.report = report
        self.step = step
        # the message without any step prefix
        self.reason = reason if reason is not None else message
        # states completed before the failure, filled in by run_simulation
        self.trajectory = None

    def at_step(self, step: int) -> SolverError:
        """Return a copy of this error annotated with a trajectory step index."""
        return type(self)(f"step {step}: {self.reason}", self.report, step, reason=self.reason)


class SolverDiverged(SolverError):
    """max_iter reached with the residual still above tolerance."""


class SingularJacobian(SolverError):
    """The Newton linear solve failed."""
