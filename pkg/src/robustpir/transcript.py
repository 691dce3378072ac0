"""Session transcripts as deterministic, round-trippable JSON text."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields
from typing import Optional

ERASED_TOKEN = "ERASED"


@dataclass
class Transcript:
    seed: int
    p: int
    params: dict
    servers: list[int]  # 1-indexed ids of the queried servers
    m: int
    target_index: int
    symmetric: bool
    strategy: str
    byzantine: list[int]
    silent: list[int]
    queries: list[list[int]]
    responses: list[Optional[int]]
    decoded: Optional[list[list[int]]]
    expected: list[list[int]]
    correct: bool
    within_budget: bool
    shared_randomness: Optional[list[int]] = None
    notes: list[str] = field(default_factory=list)

    def to_text(self) -> str:
        data = asdict(self)
        data["responses"] = [ERASED_TOKEN if x is None else x for x in self.responses]
        # One key per line, compact values: valid JSON that diffs well.
        body = ",\n".join(
            f" {json.dumps(key)}: {json.dumps(data[key], separators=(',', ':'))}"
            for key in sorted(data)
        )
        return "{\n" + body + "\n}\n"

    @classmethod
    def from_text(cls, text: str) -> "Transcript":
        data = json.loads(text)
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown transcript fields: {sorted(unknown)}")
        data["responses"] = [None if x == ERASED_TOKEN else x for x in data["responses"]]
        return cls(**data)
