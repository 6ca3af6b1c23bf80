"""Machine-readable command reports.

A report is one JSON document: the schema tag, the command line that
produced it, a digest of the parsed inputs and the result payload.
Serialization is canonical (sorted keys, fixed indent), so identical
inputs give byte-identical output.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Any, Iterable, List, Optional, Sequence

import blessed

from .constants import BlockadeConstants
from .errors import BlockadeError, DescriptorFormatError


def canonical_json(value: Any) -> str:
    return json.dumps(value, sort_keys=True, indent=BlockadeConstants.REPORT_INDENT) + "\n"


def inputs_digest(inputs: Any, raw_files: Iterable[bytes] = ()) -> str:
    """sha256 over the canonical JSON of the parsed inputs and any file bytes."""
    h = hashlib.sha256()
    h.update(json.dumps(inputs, sort_keys=True, separators=(",", ":"), default=str).encode("utf-8"))
    for raw in raw_files:
        h.update(b"\x00")
        h.update(raw)
    return h.hexdigest()


@dataclass(frozen=True)
class Report:
    command: List[str]
    inputs_digest: str
    results: Any
    schema: str = BlockadeConstants.REPORT_SCHEMA

    @classmethod
    def build(cls, command: Sequence[str], inputs: Any, results: Any,
              raw_files: Iterable[bytes] = ()) -> "Report":
        return cls(list(command), inputs_digest(inputs, raw_files), results)

    @classmethod
    def for_error(cls, command: Sequence[str], error: Exception) -> "Report":
        if isinstance(error, BlockadeError):
            detail = error.to_dict()
        else:
            detail = {"type": type(error).__name__, "message": str(error)}
        return cls(list(command), inputs_digest(list(command)), {"error": detail})

    @property
    def is_error(self) -> bool:
        return isinstance(self.results, dict) and set(self.results) == {"error"}

    def to_dict(self) -> dict:
        return {
            "schema": self.schema,
            "command": list(self.command),
            "inputs_digest": self.inputs_digest,
            "results": self.results,
        }

    def to_json(self) -> str:
        return canonical_json(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "Report":
        """Parse a serialized report.

        Raises:
            DescriptorFormatError: if the text is not a report of a known schema.
        """
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise DescriptorFormatError(f"Malformed report: {e}") from e
        if not isinstance(data, dict) or data.get("schema") != BlockadeConstants.REPORT_SCHEMA:
            raise DescriptorFormatError(f"Not a {BlockadeConstants.REPORT_SCHEMA} document")
        missing = {"command", "inputs_digest", "results"} - set(data)
        if missing:
            raise DescriptorFormatError(f"Report lacks {', '.join(sorted(missing))}")
        return cls(list(data["command"]), data["inputs_digest"], data["results"], data["schema"])


def _flatten(value: Any, prefix: str, out: List[tuple[str, str]]) -> None:
    if isinstance(value, dict) and value:
        for key in sorted(value):
            _flatten(value[key], f"{prefix}.{key}" if prefix else str(key), out)
    elif isinstance(value, list) and value and any(isinstance(v, (dict, list)) for v in value):
        for k, item in enumerate(value):
            _flatten(item, f"{prefix}[{k}]", out)
    else:
        out.append((prefix or "result", json.dumps(value, sort_keys=True)))


def report_lines(report: Report) -> List[str]:
    """Plain-text table of a report: one ``key  value`` row per leaf."""
    rows: List[tuple[str, str]] = []
    _flatten(report.results, "", rows)
    width = max((len(k) for k, _ in rows), default=0)
    lines = [f"blockade {' '.join(report.command)}", f"digest {report.inputs_digest[:16]}", ""]
    lines.extend(f"{k.ljust(width)}  {v}" for k, v in rows)
    return lines


def render_pretty(report: Report, term: Optional[blessed.Terminal] = None) -> str:
    """Human-readable rendering; headings are bold when the terminal supports styling."""
    term = term or blessed.Terminal()
    lines = report_lines(report)
    title = lines[0]
    if report.is_error:
        title = term.bold_red(title) if term.does_styling else title
    else:
        title = term.bold(title) if term.does_styling else title
    return "\n".join([title] + lines[1:]) + "\n"
