"""eclkit - Discrete gradient integrators with energy conservation law audits."""

__version__ = "0.3.0"
