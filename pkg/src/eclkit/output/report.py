"""Assemble the machine-readable run report."""

from __future__ import annotations

import json
from importlib import resources
from typing import Optional

from .. import __version__

SCHEMA_FILE = "report.schema.json"


def build_run_report(
    config: dict,
    model,
    scheme,
    trajectory,
    error: Optional[str] = None,
) -> dict:
    """Config echo, per-step solver and ECL summaries, and final drifts."""
    steps = []
    for k, solver_report in enumerate(trajectory.solver_reports, start=1):
        ecl = trajectory.ecl_reports[k - 1].to_dict() if trajectory.ecl_reports else None
        steps.append(
            {
                "step": k,
                "time": k * trajectory.dt,
                "total_energy": trajectory.energies[k],
                "solver": solver_report.to_dict(),
                "ecl": ecl,
            }
        )
    return {
        "eclkit_version": __version__,
        "status": "completed" if error is None else "failed",
        "error": error,
        "config": config,
        "model": model.to_dict(),
        "scheme": scheme.to_dict(),
        "method": trajectory.method,
        "steps": steps,
        "summary": {
            "n_steps": trajectory.n_steps,
            "initial_energy": trajectory.energies[0],
            "final_energy": trajectory.energies[-1],
            "energy_drift": trajectory.energy_drift(),
            "relative_energy_drift": trajectory.relative_energy_drift(),
            "max_energy_excursion": trajectory.max_energy_excursion(),
            "max_ecl_residual": trajectory.max_ecl_residual(),
        },
    }


def load_schema() -> dict:
    """The JSON schema shipped with the package."""
    text = resources.files("eclkit.schemas").joinpath(SCHEMA_FILE).read_text(encoding="utf-8")
    return json.loads(text)
