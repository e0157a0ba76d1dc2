"""
cli/reports.py

Report model shared by every command. A report echoes the command and its arguments, carries
a SHA-256 digest of the input and a list of checks, each with a status and its witness values.

Functions:
- digest: SHA-256 of a canonical input string.
- status_of: Maps a theorem outcome to a check status.
- render: JSON or rich-table output of a report.
"""

import hashlib
from typing import Any, Dict, List, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from rich.console import Console
from rich.table import Table

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not-applicable"

SCHEMA_VERSION = 1


def _plain(value):
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, (np.floating, np.integer, np.bool_)):
        return value.item()
    if isinstance(value, (tuple, list)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    return value


class CheckResult(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str
    status: Literal["pass", "fail", "not-applicable"]
    witness: Dict[str, Any] = Field(default_factory=dict)


class Report(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    schema_version: int = Field(SCHEMA_VERSION, serialization_alias="schema")
    command: str
    arguments: Dict[str, Any] = Field(default_factory=dict)
    input_digest: str = ""
    notes: List[str] = Field(default_factory=list)
    checks: List[CheckResult] = Field(default_factory=list)
    timings: Optional[Dict[str, float]] = None

    def add(self, name, status, **witness):
        """Appends a check; `status` is a status string or a bool (True = pass)."""
        if isinstance(status, (bool, np.bool_)):
            status = PASS if status else FAIL
        self.checks.append(CheckResult(name=name, status=status, witness=_plain(witness)))
        return self

    @property
    def failed(self):
        return [check for check in self.checks if check.status == FAIL]

    @property
    def exit_code(self):
        return 1 if self.failed else 0

    def to_json(self):
        return self.model_dump_json(by_alias=True, indent=2, exclude_none=True)


def digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def status_of(outcome: str) -> str:
    if outcome == "verified":
        return PASS
    if outcome == "contradiction":
        return FAIL
    return NOT_APPLICABLE


def _format_witness(witness):
    parts = []
    for key, value in witness.items():
        if isinstance(value, float):
            value = f"{value:.6g}"
        parts.append(f"{key}={value}")
    return ", ".join(parts)


def render(report: Report, output_format="json", console: Optional[Console] = None) -> str:
    """Returns the JSON text, or prints a rich table and returns its plain-text rendering."""
    if output_format == "json":
        return report.to_json()

    console = console or Console(record=True, width=140)
    table = Table(title=f"leafspace {report.command} (schema {report.schema_version})")
    table.add_column("check", no_wrap=True)
    table.add_column("status", no_wrap=True)
    table.add_column("witness", overflow="fold")
    styles = {PASS: "green", FAIL: "bold red", NOT_APPLICABLE: "yellow"}
    for check in report.checks:
        table.add_row(check.name, f"[{styles[check.status]}]{check.status}[/]", _format_witness(check.witness))
    with console.capture() as capture:
        console.print(table)
        for note in report.notes:
            console.print(f"note: {note}")
        if report.timings:
            console.print("timings: " + ", ".join(f"{k}={v:.4f}s" for k, v in report.timings.items()))
        console.print(f"input digest: {report.input_digest}")
    return capture.get()
