"""Persistent cache of canonical enumeration streams.

A file is named by the sha256 of (kind, bound, version).  Its first line is
a JSON header holding the key and the sha256 of the body; the body is the
JSONL stream itself.
"""
from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path
from typing import Callable, Iterable

from .core import PolyenumError

ENV_VAR = "POLYENUM_CACHE"


class CorruptCache(PolyenumError):
    pass


def default_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "polyenum"


def _digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


class EnumerationCache:
    def __init__(self, directory: str | os.PathLike | None = None, version: str | None = None):
        if version is None:
            from . import __version__ as version
        self.dir = Path(directory) if directory is not None else default_dir()
        self.version = version

    def key(self, kind: str, bound) -> str:
        return _digest(json.dumps([kind, str(bound), self.version]).encode())

    def path(self, kind: str, bound) -> Path:
        return self.dir / f"{self.key(kind, bound)}.jsonl"

    def store(self, kind: str, bound, lines: Iterable[str]) -> Path:
        body = "".join(ln + "\n" for ln in lines).encode()
        head = {"kind": kind, "bound": str(bound), "version": self.version, "sha256": _digest(body)}
        self.dir.mkdir(parents=True, exist_ok=True)
        path = self.path(kind, bound)
        tmp = path.with_suffix(".tmp")
        tmp.write_bytes(json.dumps(head, sort_keys=True).encode() + b"\n" + body)
        tmp.replace(path)
        return path

    def load(self, kind: str, bound) -> list[str] | None:
        """The cached lines, None on a miss; CorruptCache on a bad checksum."""
        path = self.path(kind, bound)
        if not path.exists():
            return None
        raw = path.read_bytes()
        head_raw, _, body = raw.partition(b"\n")
        try:
            head = json.loads(head_raw)
        except ValueError:
            raise CorruptCache(f"unreadable header in {path}") from None
        if head.get("sha256") != _digest(body):
            raise CorruptCache(f"checksum mismatch in {path}")
        if (head.get("kind"), head.get("bound"), head.get("version")) != (kind, str(bound), self.version):
            return None
        return body.decode().splitlines()

    def get_or_build(self, kind: str, bound, build: Callable[[], Iterable[str]]) -> list[str]:
        try:
            lines = self.load(kind, bound)
        except CorruptCache:
            lines = None
        if lines is None:
            lines = list(build())
            self.store(kind, bound, lines)
        return lines
