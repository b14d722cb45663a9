"""Run report writers.

Supported formats:
  - json: single JSON document (validated by schemas/report.schema.json)
  - yaml: the same document as YAML
  - markdown: human-readable summary with tables

Trajectory and sweep summaries are always CSV (see ``csv_fmt``).
"""

from __future__ import annotations

from .base import BaseReportWriter


# Valid format names
FORMATS = ("json", "yaml", "markdown")


def get_writer(format_name: str) -> BaseReportWriter:
    """Return a report writer for the given format name.

    Raises ValueError if the format is unknown.
    """
    if format_name == "json":
        from .json_fmt import JsonWriter

        return JsonWriter()
    elif format_name == "yaml":
        from .yaml_fmt import YamlWriter

        return YamlWriter()
    elif format_name == "markdown":
        from .markdown_fmt import MarkdownWriter

        return MarkdownWriter()
    else:
        raise ValueError(
            f"Unknown output format: '{format_name}'. "
            f"Valid formats: {', '.join(FORMATS)}"
        )


def list_formats() -> list[str]:
    """Return all supported format names."""
    return list(FORMATS)
