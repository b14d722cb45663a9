"""JSON report writer."""

from __future__ import annotations

import json

from .base import BaseReportWriter


class JsonWriter(BaseReportWriter):
    """Writes the run report as one JSON document."""

    @property
    def format_name(self) -> str:
        return "json"

    @property
    def file_extension(self) -> str:
        return ".json"

    def format_report(self, report: dict) -> str:
        return json.dumps(report, indent=2, ensure_ascii=False) + "\n"
