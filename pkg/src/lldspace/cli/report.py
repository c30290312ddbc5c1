"""Line-oriented reports with a JSON mirror."""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field

import numpy as np


def digest(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def plain(value):
    """JSON-friendly copy of a value (numpy arrays and scalars unwrapped)."""
    if isinstance(value, np.ndarray):
        return [plain(v) for v in value.tolist()]
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    return value


def fmt(value) -> str:
    value = plain(value)
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list):
        return "[" + ",".join(fmt(v) for v in value) + "]"
    if isinstance(value, dict):
        return "{" + ",".join(f"{k}={fmt(v)}" for k, v in value.items()) + "}"
    return str(value)


@dataclass
class Report:
    command: str
    inputs: list = field(default_factory=list)
    results: list = field(default_factory=list)
    tags: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)
    status: str = "ok"

    def add_input(self, path: str) -> bytes:
        with open(path, "rb") as fh:
            data = fh.read()
        self.inputs.append((os.path.basename(path), digest(data)))
        return data

    def result(self, key: str, value) -> None:
        self.results.append((key, value))

    def tag(self, key: str, value) -> None:
        self.tags.append((key, value))

    def witness(self, key: str, value) -> None:
        self.witnesses.append((key, value))

    def text(self) -> str:
        lines = [f"command\t{self.command}"]
        lines += [f"input\t{name}\t{dg}" for name, dg in self.inputs]
        lines += [f"{k}\t{fmt(v)}" for k, v in self.results]
        lines += [f"tag.{k}\t{fmt(v)}" for k, v in self.tags]
        lines += [f"witness.{k}\t{fmt(v)}" for k, v in self.witnesses]
        lines.append(f"status\t{self.status}")
        return "\n".join(lines) + "\n"

    def json(self) -> str:
        doc = {
            "command": self.command,
            "inputs": [{"name": n, "digest": d} for n, d in self.inputs],
            "results": {k: plain(v) for k, v in self.results},
            "tags": {k: plain(v) for k, v in self.tags},
            "witnesses": {k: plain(v) for k, v in self.witnesses},
            "status": self.status,
        }
        return json.dumps(doc, indent=2) + "\n"
