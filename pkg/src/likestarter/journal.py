"""Append-only journal: one JSON object per line, envelopes only.

Line 1 is a header carrying the format version, hash algorithm and the
genesis config; every later line is one accepted envelope with a content
checksum. Replaying the same bytes reproduces the same state hash on any
platform. A truncated trailing record (torn write) is tolerated and
dropped; corruption anywhere earlier is fatal.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
from typing import Iterator, Optional

from .config import EngineConfig
from .engine import AMOUNT_FIELDS, KINDS, Engine, Envelope, Event, replay_envelopes
from .errors import CorruptJournal, IoError
from .state import HASH_ALGORITHM, LedgerState, genesis, state_hash

log = logging.getLogger(__name__)

FORMAT = "likestarter-journal"
VERSION = 1

# Event payload fields carrying atto-unit integers (for the audit sidecar).
EVENT_AMOUNT_FIELDS = (
    "amount",
    "price",
    "suggested_price",
    "supply_limit",
    "likoin_in",
    "buck_out",
    "dust",
    "escrow",
    "snapshot_total",
)


def _stringify_payload(kind: str, payload: dict) -> dict:
    out = dict(payload)
    for field in AMOUNT_FIELDS.get(kind, ()):
        if out.get(field) is not None:
            out[field] = str(out[field])
    return out


def _intify_payload(kind: str, payload: dict) -> dict:
    out = dict(payload)
    for field in AMOUNT_FIELDS.get(kind, ()):
        value = out.get(field)
        if value is None:
            continue
        if not isinstance(value, str) or not value.isdigit():
            raise CorruptJournal(f"field {field!r} of {kind} is not a decimal string")
        out[field] = int(value)
    return out


def envelope_to_json(env: Envelope) -> dict:
    body = {
        "seq": env.seq,
        "ts": env.ts,
        "actor": env.actor,
        "kind": env.kind,
        "payload": _stringify_payload(env.kind, env.payload),
    }
    body["check"] = record_check(body)
    return body


def record_check(body: dict) -> str:
    content = {k: v for k, v in body.items() if k != "check"}
    blob = json.dumps(content, sort_keys=True, separators=(",", ":")).encode("utf-8")
    return hashlib.sha256(blob).hexdigest()[:16]


def envelope_from_json(body: dict) -> Envelope:
    try:
        check = body["check"]
        if record_check(body) != check:
            raise CorruptJournal(f"checksum mismatch on seq {body.get('seq')}")
        kind = body["kind"]
        if kind not in KINDS:
            raise CorruptJournal(f"unknown envelope kind {kind!r}")
        return Envelope(
            seq=int(body["seq"]),
            ts=int(body["ts"]),
            actor=body["actor"],
            kind=kind,
            payload=_intify_payload(kind, body["payload"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CorruptJournal(f"malformed journal record: {exc}") from exc


def event_to_json(event: Event) -> dict:
    payload = dict(event.payload)
    for field in EVENT_AMOUNT_FIELDS:
        if payload.get(field) is not None:
            payload[field] = str(payload[field])
    if isinstance(payload.get("distribution"), dict):
        payload["distribution"] = {
            k: str(v) for k, v in payload["distribution"].items()
        }
    return {"seq": event.seq, "kind": event.kind, "payload": payload}


class MemoryJournal:
    """In-process journal for tests and high-volume workloads."""

    def __init__(self, config: Optional[EngineConfig] = None):
        self.config = config or EngineConfig()
        self.envelopes: list[Envelope] = []

    def append(self, env: Envelope, events: list[Event]) -> int:
        self.envelopes.append(env)
        return env.seq

    def read(self) -> list[Envelope]:
        return list(self.envelopes)


class FileJournal:
    """Durable journal; appends flush and fsync before acknowledging.

    Also writes an ``<path>.events`` sidecar with the emitted events for
    audit. The sidecar is never read back; replay derives events again.
    """

    def __init__(
        self,
        path: str,
        config: Optional[EngineConfig] = None,
        *,
        extra_header: Optional[dict] = None,
        fsync: bool = True,
        events_sidecar: bool = True,
    ):
        self.path = path
        self.fsync = fsync
        self._fh = None
        self._events_fh = None
        if os.path.exists(path) and os.path.getsize(path) > 0:
            header = read_header(path)
            self.config = EngineConfig.from_dict(header["genesis"])
            self.header = header
        else:
            self.config = config or EngineConfig()
            self.header = {
                "format": FORMAT,
                "version": VERSION,
                "hash_alg": HASH_ALGORITHM,
                "genesis": self.config.to_dict(),
                "genesis_hash": state_hash(genesis()),
            }
            if extra_header:
                self.header.update(extra_header)
            try:
                with open(path, "w", encoding="utf-8") as fh:
                    fh.write(json.dumps(self.header, sort_keys=True) + "\n")
                    fh.flush()
                    os.fsync(fh.fileno())
            except OSError as exc:
                raise IoError(f"cannot create journal {path}: {exc}") from exc
        self._events_path = path + ".events" if events_sidecar else None

    def append(self, env: Envelope, events: list[Event]) -> int:
        try:
            if self._fh is None:
                self._fh = open(self.path, "a", encoding="utf-8")
            self._fh.write(json.dumps(envelope_to_json(env), sort_keys=True) + "\n")
            self._fh.flush()
            if self.fsync:
                os.fsync(self._fh.fileno())
            if self._events_path is not None:
                if self._events_fh is None:
                    self._events_fh = open(self._events_path, "a", encoding="utf-8")
                for event in events:
                    self._events_fh.write(
                        json.dumps(event_to_json(event), sort_keys=True) + "\n"
                    )
                self._events_fh.flush()
        except OSError as exc:
            raise IoError(f"cannot append to journal {self.path}: {exc}") from exc
        return env.seq

    def read(self) -> list[Envelope]:
        return list(read_envelopes(self.path))

    def close(self) -> None:
        for fh in (self._fh, self._events_fh):
            if fh is not None:
                fh.close()
        self._fh = None
        self._events_fh = None

    def __enter__(self):
        return self

    def __exit__(self, *exc_info):
        self.close()


def read_header(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            first = fh.readline()
    except OSError as exc:
        raise IoError(f"cannot read journal {path}: {exc}") from exc
    if not first.endswith("\n"):
        raise CorruptJournal("journal header line is truncated")
    try:
        header = json.loads(first)
    except json.JSONDecodeError as exc:
        raise CorruptJournal(f"unreadable journal header: {exc}") from exc
    if not isinstance(header, dict) or header.get("format") != FORMAT:
        raise CorruptJournal("not a likestarter journal")
    if header.get("version") != VERSION:
        raise CorruptJournal(f"unsupported journal version {header.get('version')}")
    if header.get("hash_alg") != HASH_ALGORITHM:
        raise CorruptJournal(f"unsupported hash algorithm {header.get('hash_alg')}")
    return header


def read_envelopes(path: str) -> Iterator[Envelope]:
    """Yield envelopes; drop a torn trailing record, fail on anything else."""
    read_header(path)
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise IoError(f"cannot read journal {path}: {exc}") from exc

    records = lines[1:]
    for index, line in enumerate(records):
        last = index == len(records) - 1
        if last and not line.endswith("\n"):
            log.warning("journal %s: dropping truncated trailing record", path)
            return
        try:
            body = json.loads(line)
        except json.JSONDecodeError as exc:
            if last:
                log.warning("journal %s: dropping unreadable trailing record", path)
                return
            raise CorruptJournal(
                f"unreadable journal record at line {index + 2}: {exc}"
            ) from exc
        yield envelope_from_json(body)


def replay(path: str) -> tuple[LedgerState, str]:
    """Rebuild state from a journal file; returns (state, state_hash)."""
    header = read_header(path)
    config = EngineConfig.from_dict(header.get("genesis", {}))
    state, digest = replay_envelopes(read_envelopes(path), config)
    expected_genesis = header.get("genesis_hash")
    if expected_genesis is not None and state.last_seq == 0:
        if digest != expected_genesis:
            raise CorruptJournal("replayed genesis hash does not match header")
    return state, digest


def open_engine(
    path: str,
    config: Optional[EngineConfig] = None,
    *,
    extra_header: Optional[dict] = None,
    fsync: bool = True,
) -> Engine:
    """Open (or create) a file-backed engine, replaying any existing history."""
    existing = os.path.exists(path) and os.path.getsize(path) > 0
    if existing:
        state, _ = replay(path)
    journal = FileJournal(path, config, extra_header=extra_header, fsync=fsync)
    engine = Engine(journal.config, journal)
    if existing:
        engine.state = state
    return engine
