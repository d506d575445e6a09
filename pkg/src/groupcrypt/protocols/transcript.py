from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterator, List, Optional


@dataclass(frozen=True)
class Message:
    role: str
    label: str
    payload: bytes


@dataclass
class Transcript:
    """Append-only record of the messages exchanged in one protocol run."""

    protocol: str
    messages: List[Message] = field(default_factory=list)

    def append(self, role: str, label: str, payload: bytes) -> None:
        self.messages.append(Message(role, label, bytes(payload)))

    def __iter__(self) -> Iterator[Message]:
        return iter(self.messages)

    def __len__(self) -> int:
        return len(self.messages)

    def labels(self) -> List[str]:
        return [m.label for m in self.messages]

    def by_label(self, label: str) -> List[Message]:
        return [m for m in self.messages if m.label == label]

    def to_json(self) -> dict:
        return {
            "protocol": self.protocol,
            "messages": [{"role": m.role, "label": m.label, "payload": m.payload.hex()} for m in self.messages],
        }

    @classmethod
    def from_json(cls, d: dict) -> "Transcript":
        t = cls(d["protocol"])
        for m in d["messages"]:
            t.append(m["role"], m["label"], bytes.fromhex(m["payload"]))
        return t

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def encode_json(obj) -> bytes:
    """Canonical bytes for a JSON-able payload."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()


@dataclass
class ProtocolResult:
    """Outcome of a multi-round interactive proof; ``failed_round`` is 1-based."""

    accepted: bool
    transcript: Transcript
    rounds_run: int
    failed_round: Optional[int] = None
    reason: Optional[str] = None

    def to_json(self) -> dict:
        return {
            "accepted": self.accepted,
            "rounds_run": self.rounds_run,
            "failed_round": self.failed_round,
            "reason": self.reason,
            "transcript": self.transcript.to_json(),
        }
