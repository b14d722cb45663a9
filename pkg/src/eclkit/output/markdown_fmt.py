"""Markdown report writer: a human-readable run summary."""

from __future__ import annotations

from .base import BaseReportWriter


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


class MarkdownWriter(BaseReportWriter):
    """Writes the run report as a Markdown document with tables."""

    @property
    def format_name(self) -> str:
        return "markdown"

    @property
    def file_extension(self) -> str:
        return ".md"

    def format_report(self, report: dict) -> str:
        lines: list[str] = []
        model = report["model"]
        lines.append(f"# eclkit run: {model['name']}")
        lines.append("")
        lines.append(f"Status: **{report['status']}**")
        if report.get("error"):
            lines.append("")
            lines.append(f"> {report['error']}")
        lines.append("")

        lines.append("## Summary")
        lines.append("")
        lines.append("| Key | Value |")
        lines.append("|-----|-------|")
        lines.append(f"| model kind | {model['kind']} |")
        lines.append(f"| scheme | {report['scheme']['kind']} |")
        for key, value in report["summary"].items():
            lines.append(f"| {key} | {_fmt(value)} |")
        lines.append("")

        if model.get("params"):
            lines.append("## Parameters")
            lines.append("")
            lines.append("| Key | Value |")
            lines.append("|-----|-------|")
            for key, value in model["params"].items():
                lines.append(f"| {key} | {_fmt(value)} |")
            lines.append("")

        steps = report.get("steps", [])
        if steps:
            lines.append("## Steps")
            lines.append("")
            lines.append("| step | iterations | solver residual | ECL residual | global drift |")
            lines.append("|------|------------|-----------------|--------------|--------------|")
            for row in steps:
                ecl = row.get("ecl") or {}
                lines.append(
                    f"| {row['step']} | {row['solver']['iterations']} "
                    f"| {_fmt(row['solver']['final_residual_norm'])} "
                    f"| {_fmt(ecl.get('max_residual', 0.0))} "
                    f"| {_fmt(ecl.get('global_drift', 0.0))} |"
                )
            lines.append("")

        return "\n".join(lines)
