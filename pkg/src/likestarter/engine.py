"""Envelope application: the deterministic state-machine shell.

Every mutation enters as a TransactionEnvelope and is applied atomically:
all validation happens before the first state change, so a rejected
envelope leaves the state bit-identical. No wall clock, randomness or
iteration-order dependence may leak in here; timestamps are logical and
supplied by the caller.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from . import artifacts, crowdsale, governance
from .config import EngineConfig
from .errors import (
    MalformedEnvelope,
    NotAuthorized,
    TimestampRegression,
    ZeroAmount,
)
from .ledger import require_account
from .state import LedgerState, genesis, state_hash
from .units import MAX_AMOUNT, checked_add

MAX_SEQ = 2**64 - 1
MAX_TS = 2**64 - 1

KINDS = (
    "CreateAccount",
    "Deposit",
    "StartCampaign",
    "LikePost",
    "Donate",
    "CloseCampaign",
    "WithdrawFunds",
    "TransferLikoin",
    "Approve",
    "TransferFrom",
    "Convert",
    "CreatePost",
    "ProposeArtifact",
    "RemoveArtifact",
    "SuggestPrice",
    "Vote",
    "Finalize",
    "BuyArtifact",
)

# Payload fields carrying atto-unit integers (string-encoded on the wire).
AMOUNT_FIELDS: dict[str, tuple[str, ...]] = {
    "Deposit": ("amount",),
    "StartCampaign": ("likoin_rate_num", "likoin_rate_den", "like_price", "buck_rate"),
    "Donate": ("amount",),
    "WithdrawFunds": ("amount",),
    "TransferLikoin": ("amount",),
    "Approve": ("amount",),
    "TransferFrom": ("amount",),
    "Convert": ("amount",),
    "ProposeArtifact": ("suggested_price", "supply_limit"),
    "SuggestPrice": ("price",),
}


@dataclass
class Envelope:
    seq: int
    ts: int
    actor: str
    kind: str
    payload: dict


@dataclass
class Event:
    seq: int
    kind: str
    payload: dict


@dataclass
class ApplyResult:
    seq: int
    events: list[Event]


def _require(payload: dict, spec: dict[str, type | tuple]) -> None:
    """Shape-check a payload: exactly the given fields, with the given types."""
    if not isinstance(payload, dict):
        raise MalformedEnvelope("payload must be an object")
    unknown = set(payload) - set(spec)
    if unknown:
        raise MalformedEnvelope(f"unexpected payload fields: {sorted(unknown)}")
    for name, expected in spec.items():
        if name not in payload:
            raise MalformedEnvelope(f"missing payload field {name!r}")
        value = payload[name]
        if isinstance(value, bool) or not isinstance(value, expected):
            raise MalformedEnvelope(f"payload field {name!r} has the wrong type")


def _amount(payload: dict, name: str, *, allow_zero: bool = False) -> int:
    value = payload[name]
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise MalformedEnvelope(f"payload field {name!r} must be a non-negative int")
    if value > MAX_AMOUNT:
        raise MalformedEnvelope(f"payload field {name!r} exceeds 128-bit range")
    if value == 0 and not allow_zero:
        raise ZeroAmount(f"payload field {name!r} must be positive")
    return value


# -- handlers ------------------------------------------------------------------
# Each handler validates fully, mutates, and returns event (kind, payload) pairs.

def _h_create_account(state: LedgerState, env: Envelope, cfg: EngineConfig):
    _require(env.payload, {"id": str, "secret": str})
    if env.actor != env.payload["id"]:
        raise MalformedEnvelope("CreateAccount actor must equal the new id")
    account = state.create_account(env.payload["id"], env.payload["secret"])
    return [("AccountCreated", {"account_id": account.account_id})]


def _h_deposit(state: LedgerState, env: Envelope, cfg: EngineConfig):
    _require(env.payload, {"amount": int})
    require_account(state.accounts, env.actor)
    amount = _amount(env.payload, "amount")
    account = state.accounts[env.actor]
    account.currency = checked_add(account.currency, amount)
    state.deposits_total += amount
    return [("Deposited", {"account_id": env.actor, "amount": amount})]


def _h_start_campaign(state: LedgerState, env: Envelope, cfg: EngineConfig):
    _require(
        env.payload,
        {
            "likoin_rate_num": int,
            "likoin_rate_den": int,
            "like_price": int,
            "buck_rate": int,
        },
    )
    require_account(state.accounts, env.actor)
    campaign = crowdsale.start_campaign(
        state,
        env.actor,
        env.payload["likoin_rate_num"],
        env.payload["likoin_rate_den"],
        env.payload["like_price"],
        env.payload["buck_rate"],
        env.ts,
    )
    return [
        (
            "CampaignStarted",
            {
                "beneficiary": env.actor,
                "likoin_rate_num": campaign.likoin_rate_num,
                "likoin_rate_den": campaign.likoin_rate_den,
                "like_price": campaign.like_price,
                "buck_rate": campaign.buck_rate,
            },
        )
    ]


def _h_create_post(state: LedgerState, env: Envelope, cfg: EngineConfig):
    _require(env.payload, {"content_ref": str})
    require_account(state.accounts, env.actor)
    post = crowdsale.create_post(state, env.actor, env.payload["content_ref"], env.ts)
    return [
        (
            "PostCreated",
            {
                "post_id": post.post_id,
                "beneficiary": env.actor,
                "content_ref": post.content_ref,
            },
        )
    ]


def _donation_events(record: crowdsale.DonationRecord) -> list:
    events = [
        (
            "Donated",
            {
                "donor": record.donor,
                "beneficiary": record.beneficiary,
                "amount": record.amount,
                "kind": record.kind,
                "post_id": record.post_id,
            },
        )
    ]
    if record.minted:
        events.append(
            (
                "Minted",
                {
                    "account_id": record.donor,
                    "beneficiary": record.beneficiary,
                    "token": "likoin",
                    "amount": record.minted,
                },
            )
        )
    return events


def _h_like_post(state: LedgerState, env: Envelope, cfg: EngineConfig):
    _require(env.payload, {"post_id": str})
    require_account(state.accounts, env.actor)
    record = crowdsale.like_post(state, env.actor, env.payload["post_id"], env.ts)
    return _donation_events(record)


def _h_donate(state: LedgerState, env: Envelope, cfg: EngineConfig):
    _require(env.payload, {"beneficiary": str, "amount": int})
    require_account(state.accounts, env.actor)
    require_account(state.accounts, env.payload["beneficiary"])
    amount = _amount(env.payload, "amount")
    record = crowdsale.donate(state, env.actor, env.payload["beneficiary"], amount, env.ts)
    return _donation_events(record)


def _h_close_campaign(state: LedgerState, env: Envelope, cfg: EngineConfig):
    _require(env.payload, {"beneficiary": str})
    require_account(state.accounts, env.actor)
    if env.actor != env.payload["beneficiary"]:
        raise NotAuthorized("only the beneficiary may close their campaign")
    crowdsale.close_campaign(state, env.actor)
    return [("CampaignClosed", {"beneficiary": env.actor})]


def _h_withdraw(state: LedgerState, env: Envelope, cfg: EngineConfig):
    _require(env.payload, {"beneficiary": str, "amount": int})
    require_account(state.accounts, env.actor)
    if env.actor != env.payload["beneficiary"]:
        raise NotAuthorized("only the beneficiary may withdraw")
    amount = _amount(env.payload, "amount")
    campaign = crowdsale.withdraw_funds(state, env.actor, amount)
    return [
        (
            "Withdrawn",
            {"beneficiary": env.actor, "amount": amount, "escrow": campaign.escrow},
        )
    ]


def _domain_for(state: LedgerState, beneficiary: str):
    from .errors import NoCampaign

    domain = state.domains.get(beneficiary)
    if domain is None:
        raise NoCampaign(f"{beneficiary} has no token domain")
    return domain


def _h_transfer(state: LedgerState, env: Envelope, cfg: EngineConfig):
    _require(env.payload, {"beneficiary": str, "to": str, "amount": int})
    require_account(state.accounts, env.actor)
    require_account(state.accounts, env.payload["to"])
    amount = _amount(env.payload, "amount")
    domain = _domain_for(state, env.payload["beneficiary"])
    domain.transfer_likoin(env.actor, env.payload["to"], amount)
    return [
        (
            "Transferred",
            {
                "beneficiary": domain.beneficiary,
                "token": "likoin",
                "from": env.actor,
                "to": env.payload["to"],
                "amount": amount,
                "spender": None,
            },
        )
    ]


def _h_approve(state: LedgerState, env: Envelope, cfg: EngineConfig):
    _require(env.payload, {"beneficiary": str, "spender": str, "amount": int})
    require_account(state.accounts, env.actor)
    require_account(state.accounts, env.payload["spender"])
    amount = _amount(env.payload, "amount", allow_zero=True)
    domain = _domain_for(state, env.payload["beneficiary"])
    domain.approve(env.actor, env.payload["spender"], amount)
    return [
        (
            "Approved",
            {
                "beneficiary": domain.beneficiary,
                "owner": env.actor,
                "spender": env.payload["spender"],
                "amount": amount,
            },
        )
    ]


def _h_transfer_from(state: LedgerState, env: Envelope, cfg: EngineConfig):
    _require(env.payload, {"beneficiary": str, "owner": str, "to": str, "amount": int})
    require_account(state.accounts, env.actor)
    require_account(state.accounts, env.payload["owner"])
    require_account(state.accounts, env.payload["to"])
    amount = _amount(env.payload, "amount")
    domain = _domain_for(state, env.payload["beneficiary"])
    domain.transfer_from(env.actor, env.payload["owner"], env.payload["to"], amount)
    return [
        (
            "Transferred",
            {
                "beneficiary": domain.beneficiary,
                "token": "likoin",
                "from": env.payload["owner"],
                "to": env.payload["to"],
                "amount": amount,
                "spender": env.actor,
            },
        )
    ]


def _h_convert(state: LedgerState, env: Envelope, cfg: EngineConfig):
    _require(env.payload, {"beneficiary": str, "amount": int})
    require_account(state.accounts, env.actor)
    amount = _amount(env.payload, "amount")
    domain = _domain_for(state, env.payload["beneficiary"])
    receipt = domain.convert_likoin_to_buck(env.actor, amount)
    events = [
        (
            "Converted",
            {
                "beneficiary": domain.beneficiary,
                "converter": env.actor,
                "likoin_in": receipt.likoin_in,
                "buck_out": receipt.buck_out,
                "dust": receipt.dust,
            },
        )
    ]
    for recipient in sorted(receipt.distribution):
        events.append(
            (
                "Distributed",
                {
                    "beneficiary": domain.beneficiary,
                    "recipient": recipient,
                    "amount": receipt.distribution[recipient],
                },
            )
        )
    events.append(
        (
            "Minted",
            {
                "account_id": env.actor,
                "beneficiary": domain.beneficiary,
                "token": "buck",
                "amount": receipt.buck_out,
            },
        )
    )
    return events


def _h_propose_artifact(state: LedgerState, env: Envelope, cfg: EngineConfig):
    _require(
        env.payload,
        {
            "title": str,
            "description": str,
            "content_ref": str,
            "suggested_price": int,
            "supply_limit": (int, type(None)),
        },
    )
    require_account(state.accounts, env.actor)
    price = _amount(env.payload, "suggested_price", allow_zero=True)  # ZeroPrice below
    supply_limit = env.payload["supply_limit"]
    artifact, proposal = artifacts.propose_artifact(
        state,
        env.actor,
        env.payload["title"],
        env.payload["description"],
        env.payload["content_ref"],
        price,
        supply_limit,
        env.ts,
        cfg.min_voting_period_ms,
        cfg.quorum_num,
        cfg.quorum_den,
    )
    initial = proposal.suggestions[0]
    return [
        (
            "ArtifactProposed",
            {
                "artifact_id": artifact.artifact_id,
                "beneficiary": env.actor,
                "title": artifact.title,
                "suggested_price": price,
                "supply_limit": supply_limit,
            },
        ),
        (
            "ProposalOpened",
            {
                "proposal_id": proposal.proposal_id,
                "artifact_id": artifact.artifact_id,
                "snapshot_id": proposal.snapshot.snapshot_id,
                "snapshot_total": proposal.snapshot.total,
                "suggestion_id": initial.suggestion_id,
                "min_close_at": proposal.min_close_at,
            },
        ),
    ]


def _h_remove_artifact(state: LedgerState, env: Envelope, cfg: EngineConfig):
    _require(env.payload, {"artifact_id": str})
    require_account(state.accounts, env.actor)
    artifact, cancelled = artifacts.remove_artifact(
        state, env.actor, env.payload["artifact_id"]
    )
    events = [("ArtifactRemoved", {"artifact_id": artifact.artifact_id})]
    if cancelled is not None:
        events.append(("ProposalCancelled", {"proposal_id": cancelled}))
    return events


def _h_suggest_price(state: LedgerState, env: Envelope, cfg: EngineConfig):
    _require(env.payload, {"proposal_id": str, "price": int})
    require_account(state.accounts, env.actor)
    price = _amount(env.payload, "price", allow_zero=True)  # ZeroPrice below
    suggestion = governance.suggest_price(
        state, env.actor, env.payload["proposal_id"], price, env.ts
    )
    return [
        (
            "Suggested",
            {
                "proposal_id": env.payload["proposal_id"],
                "suggestion_id": suggestion.suggestion_id,
                "price": price,
                "proposer": env.actor,
            },
        ),
        (
            "Voted",
            {
                "proposal_id": env.payload["proposal_id"],
                "suggestion_id": suggestion.suggestion_id,
                "voter": env.actor,
            },
        ),
    ]


def _h_vote(state: LedgerState, env: Envelope, cfg: EngineConfig):
    _require(env.payload, {"proposal_id": str, "suggestion_id": str})
    require_account(state.accounts, env.actor)
    governance.vote(
        state, env.actor, env.payload["proposal_id"], env.payload["suggestion_id"]
    )
    return [
        (
            "Voted",
            {
                "proposal_id": env.payload["proposal_id"],
                "suggestion_id": env.payload["suggestion_id"],
                "voter": env.actor,
            },
        )
    ]


def _h_finalize(state: LedgerState, env: Envelope, cfg: EngineConfig):
    _require(env.payload, {"proposal_id": str})
    require_account(state.accounts, env.actor)
    proposal = governance.finalize(state, env.actor, env.payload["proposal_id"], env.ts)
    suggestion_id, price = proposal.outcome
    quorum_met = governance.quorum_met(proposal)
    return [
        (
            "Finalized",
            {
                "proposal_id": proposal.proposal_id,
                "artifact_id": proposal.artifact_id,
                "winning_suggestion_id": suggestion_id,
                "price": price,
                "quorum_met": quorum_met,
            },
        )
    ]


def _h_buy_artifact(state: LedgerState, env: Envelope, cfg: EngineConfig):
    _require(env.payload, {"artifact_id": str})
    require_account(state.accounts, env.actor)
    record = artifacts.buy_artifact(state, env.actor, env.payload["artifact_id"])
    artifact = state.artifacts[record.artifact_id]
    return [
        (
            "Purchased",
            {
                "artifact_id": record.artifact_id,
                "buyer": record.buyer,
                "price": record.price,
                "copies_owned": record.copies_owned,
                "sold": record.sold,
            },
        ),
        (
            "Burned",
            {
                "beneficiary": artifact.beneficiary,
                "account_id": record.buyer,
                "token": "buck",
                "amount": record.price,
            },
        ),
    ]


_HANDLERS: dict[str, Callable] = {
    "CreateAccount": _h_create_account,
    "Deposit": _h_deposit,
    "StartCampaign": _h_start_campaign,
    "LikePost": _h_like_post,
    "Donate": _h_donate,
    "CloseCampaign": _h_close_campaign,
    "WithdrawFunds": _h_withdraw,
    "TransferLikoin": _h_transfer,
    "Approve": _h_approve,
    "TransferFrom": _h_transfer_from,
    "Convert": _h_convert,
    "CreatePost": _h_create_post,
    "ProposeArtifact": _h_propose_artifact,
    "RemoveArtifact": _h_remove_artifact,
    "SuggestPrice": _h_suggest_price,
    "Vote": _h_vote,
    "Finalize": _h_finalize,
    "BuyArtifact": _h_buy_artifact,
}

assert set(_HANDLERS) == set(KINDS)


def apply(state: LedgerState, env: Envelope, config: EngineConfig) -> list[Event]:
    """Apply one envelope atomically; raises with state untouched on error."""
    if env.kind not in _HANDLERS:
        raise MalformedEnvelope(f"unknown envelope kind {env.kind!r}")
    if not isinstance(env.actor, str) or not env.actor:
        raise MalformedEnvelope("envelope actor must be a non-empty string")
    if not isinstance(env.ts, int) or not (0 <= env.ts <= MAX_TS):
        raise MalformedEnvelope("envelope timestamp out of range")
    if env.ts < state.last_ts:
        raise TimestampRegression(f"ts {env.ts} < last applied {state.last_ts}")
    if env.seq != state.last_seq + 1:
        raise MalformedEnvelope(
            f"envelope seq {env.seq} is not dense (expected {state.last_seq + 1})"
        )

    raw_events = _HANDLERS[env.kind](state, env, config)
    state.last_seq = env.seq
    state.last_ts = env.ts
    return [Event(seq=env.seq, kind=k, payload=p) for k, p in raw_events]


def default_start_campaign_payload(config: EngineConfig, overrides: dict) -> dict:
    payload = {
        "likoin_rate_num": config.likoin_rate_num,
        "likoin_rate_den": config.likoin_rate_den,
        "like_price": config.like_price,
        "buck_rate": config.buck_rate,
    }
    for key in payload:
        if overrides.get(key) is not None:
            payload[key] = overrides[key]
    return payload


class Engine:
    """Live state plus its journal: the single-writer application stream."""

    def __init__(self, config: Optional[EngineConfig] = None, journal=None):
        self.config = config or EngineConfig()
        self.journal = journal
        self.state = genesis()

    def submit(self, kind: str, actor: str, payload: dict, ts: int) -> ApplyResult:
        """Validate, apply, then persist. Only accepted envelopes reach the journal."""
        env = Envelope(
            seq=self.state.last_seq + 1, ts=ts, actor=actor, kind=kind, payload=payload
        )
        events = apply(self.state, env, self.config)
        if self.journal is not None:
            self.journal.append(env, events)
        return ApplyResult(seq=env.seq, events=events)

    def state_hash(self) -> str:
        return state_hash(self.state)


def replay_envelopes(envelopes, config: EngineConfig) -> tuple[LedgerState, str]:
    """Rebuild state from envelopes; any rejected envelope is fatal."""
    from .errors import CorruptJournal, LedgerError

    state = genesis()
    for env in envelopes:
        try:
            apply(state, env, config)
        except LedgerError as exc:
            raise CorruptJournal(
                f"envelope seq {env.seq} failed during replay: {exc.code}: {exc}"
            ) from exc
    return state, state_hash(state)
