"""YAML report writer."""

from __future__ import annotations

import yaml

from .base import BaseReportWriter


class YamlWriter(BaseReportWriter):
    """Writes the run report as YAML."""

    @property
    def format_name(self) -> str:
        return "yaml"

    @property
    def file_extension(self) -> str:
        return ".yaml"

    def format_report(self, report: dict) -> str:
        return yaml.dump(
            report,
            default_flow_style=False,
            allow_unicode=True,
            sort_keys=False,
        )
