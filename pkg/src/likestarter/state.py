"""The full deterministic world state and its canonical form.

LedgerState is the single mutable object the engine drives. Everything in
it is reconstructible by replaying the journal, and the canonical
serialization (sorted maps, fixed-width big-endian integers) makes the
SHA-256 state hash independent of insertion history and platform.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from .artifacts import Artifact
from .crowdsale import Campaign, DonationRecord, Post
from .errors import DuplicateAccount, ValidationError
from .governance import Proposal
from .ledger import TokenDomain

HASH_ALGORITHM = "sha256"


@dataclass
class Account:
    account_id: str
    currency: int = 0
    secret: str = ""


@dataclass
class LedgerState:
    accounts: dict[str, Account] = field(default_factory=dict)
    domains: dict[str, TokenDomain] = field(default_factory=dict)
    campaigns: dict[str, Campaign] = field(default_factory=dict)
    posts: dict[str, Post] = field(default_factory=dict)
    artifacts: dict[str, Artifact] = field(default_factory=dict)
    proposals: dict[str, Proposal] = field(default_factory=dict)
    donations: list[DonationRecord] = field(default_factory=list)
    deposits_total: int = 0
    last_seq: int = 0
    last_ts: int = 0
    counters: dict[str, int] = field(default_factory=dict)

    def next_id(self, kind: str) -> str:
        n = self.counters.get(kind, 0) + 1
        self.counters[kind] = n
        return f"{kind}-{n:06d}"

    def create_account(self, account_id: str, secret: str = "") -> Account:
        if not isinstance(account_id, str) or not (1 <= len(account_id) <= 64):
            raise ValidationError("account id must be 1-64 characters")
        if not account_id.isprintable():
            raise ValidationError("account id must be printable")
        if account_id in self.accounts:
            raise DuplicateAccount(f"account {account_id!r} already exists")
        account = Account(account_id=account_id, secret=secret)
        self.accounts[account_id] = account
        return account


def genesis() -> LedgerState:
    return LedgerState()


# -- canonical form -----------------------------------------------------------

def _campaign_canonical(c: Campaign) -> dict:
    return {
        "beneficiary": c.beneficiary,
        "status": c.status,
        "rate_num": c.likoin_rate_num,
        "rate_den": c.likoin_rate_den,
        "like_price": c.like_price,
        "buck_rate": c.buck_rate,
        "escrow": c.escrow,
        "total_raised": c.total_raised,
        "withdrawn_total": c.withdrawn_total,
        "created_at": c.created_at,
    }


def _domain_canonical(d: TokenDomain) -> dict:
    return {
        "beneficiary": d.beneficiary,
        "likoin_balances": dict(d.likoin_balances),
        "likoin_total": d.likoin_total,
        "buck_balances": dict(d.buck_balances),
        "buck_total": d.buck_total,
        "allowances": {o: dict(s) for o, s in d.allowances.items() if s},
        "reserve": d.reserve,
        "buck_rate": d.buck_rate,
    }


def _post_canonical(p: Post) -> dict:
    return {
        "post_id": p.post_id,
        "beneficiary": p.beneficiary,
        "content_ref": p.content_ref,
        "created_at": p.created_at,
        "like_count": p.like_count,
    }


def _artifact_canonical(a: Artifact) -> dict:
    return {
        "artifact_id": a.artifact_id,
        "beneficiary": a.beneficiary,
        "title": a.title,
        "description": a.description,
        "content_ref": a.content_ref,
        "state": a.state,
        "price": a.price,
        "supply_limit": a.supply_limit,
        "sold": a.sold,
        "owners": dict(a.owners),
        "proposal_id": a.proposal_id,
        "created_at": a.created_at,
    }


def _proposal_canonical(p: Proposal) -> dict:
    return {
        "proposal_id": p.proposal_id,
        "artifact_id": p.artifact_id,
        "beneficiary": p.beneficiary,
        "snapshot": {
            "snapshot_id": p.snapshot.snapshot_id,
            "beneficiary": p.snapshot.beneficiary,
            "taken_at": p.snapshot.taken_at,
            "balances": dict(p.snapshot.balances),
            "total": p.snapshot.total,
        },
        # Suggestion order is creation order, which is itself deterministic.
        "suggestions": [
            [s.suggestion_id, s.price, s.proposer, s.created_at]
            for s in p.suggestions
        ],
        "votes": dict(p.votes),
        "opened_at": p.opened_at,
        "min_close_at": p.min_close_at,
        "quorum_num": p.quorum_num,
        "quorum_den": p.quorum_den,
        "status": p.status,
        "outcome": list(p.outcome) if p.outcome else None,
    }


def to_canonical(state: LedgerState) -> dict:
    return {
        "accounts": {
            a.account_id: {"currency": a.currency, "secret": a.secret}
            for a in state.accounts.values()
        },
        "domains": {b: _domain_canonical(d) for b, d in state.domains.items()},
        "campaigns": {b: _campaign_canonical(c) for b, c in state.campaigns.items()},
        "posts": {pid: _post_canonical(p) for pid, p in state.posts.items()},
        "artifacts": {aid: _artifact_canonical(a) for aid, a in state.artifacts.items()},
        "proposals": {pid: _proposal_canonical(p) for pid, p in state.proposals.items()},
        "donations": [
            [d.donor, d.beneficiary, d.amount, d.minted, d.kind, d.post_id, d.ts]
            for d in state.donations
        ],
        "deposits_total": state.deposits_total,
        "last_seq": state.last_seq,
        "last_ts": state.last_ts,
        "counters": dict(state.counters),
    }


def canonical_encode(value) -> bytes:
    """Tagged, platform-independent byte encoding of the canonical tree.

    Integers are unsigned 128-bit big-endian; map keys are sorted strings.
    """
    out = bytearray()
    _encode(value, out)
    return bytes(out)


def _encode(value, out: bytearray) -> None:
    if value is None:
        out += b"N"
    elif isinstance(value, bool):
        out += b"T" if value else b"F"
    elif isinstance(value, int):
        out += b"I"
        out += value.to_bytes(16, "big")
    elif isinstance(value, str):
        raw = value.encode("utf-8")
        out += b"S"
        out += len(raw).to_bytes(4, "big")
        out += raw
    elif isinstance(value, (list, tuple)):
        out += b"L"
        out += len(value).to_bytes(4, "big")
        for item in value:
            _encode(item, out)
    elif isinstance(value, dict):
        out += b"M"
        out += len(value).to_bytes(4, "big")
        for key in sorted(value):
            _encode(key, out)
            _encode(value[key], out)
    else:
        raise TypeError(f"cannot canonically encode {type(value).__name__}")


def state_hash(state: LedgerState) -> str:
    return hashlib.sha256(canonical_encode(to_canonical(state))).hexdigest()
