"""Base report writer interface."""

from __future__ import annotations

from abc import ABC, abstractmethod
from pathlib import Path

from rich.console import Console

console = Console(stderr=True)


class BaseReportWriter(ABC):
    """Abstract base for run report writers."""

    @property
    @abstractmethod
    def format_name(self) -> str:
        """Short identifier for this format (e.g. 'json', 'yaml')."""

    @property
    @abstractmethod
    def file_extension(self) -> str:
        """File extension including dot (e.g. '.json')."""

    @abstractmethod
    def format_report(self, report: dict) -> str:
        """Format a run report as a string in this format."""

    def write_report(self, report: dict, output_dir: Path, stem: str = "report") -> Path:
        """Write the report to output_dir/<stem><extension>."""
        output_dir.mkdir(parents=True, exist_ok=True)
        out_path = output_dir / f"{stem}{self.file_extension}"
        out_path.write_text(self.format_report(report), encoding="utf-8")
        console.print(f"  Wrote: [green]{out_path}[/green]")
        return out_path
