"""Structured reports: one JSON-able dict per command, rendered two ways.

Reports are deterministic (sorted keys, no timestamps) and round-trip
through JSON unchanged.  Exact scalars appear as strings, never as floats.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field


SCHEMA = "wildcycle-report@1"


@dataclass
class Report:
    command: str
    status: str = "ok"
    findings: list = field(default_factory=list)
    sections: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "command": self.command,
            "status": self.status,
            "findings": list(self.findings),
            "sections": self.sections,
        }

    def to_json_text(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2) + "\n"

    @staticmethod
    def from_json_text(text: str) -> "Report":
        data = json.loads(text)
        return Report(command=data["command"], status=data["status"],
                      findings=list(data["findings"]),
                      sections=data["sections"])

    def human_text(self) -> str:
        lines = [f"wildcycle {self.command}: {self.status}"]
        for finding in self.findings:
            lines.append(f"  ! {finding}")
        for name, body in self.sections.items():
            lines.append(f"[{name}]")
            lines.extend(_render_body(body, indent="  "))
        return "\n".join(lines) + "\n"


def _render_body(body, indent):
    out = []
    if isinstance(body, dict):
        for key in body:
            value = body[key]
            if isinstance(value, (dict, list)):
                out.append(f"{indent}{key}:")
                out.extend(_render_body(value, indent + "  "))
            else:
                out.append(f"{indent}{key}: {value}")
    elif isinstance(body, list):
        for item in body:
            if isinstance(item, (dict, list)):
                out.append(f"{indent}-")
                out.extend(_render_body(item, indent + "  "))
            else:
                out.append(f"{indent}- {item}")
    else:
        out.append(f"{indent}{body}")
    return out
