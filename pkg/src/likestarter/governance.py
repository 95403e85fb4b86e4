"""Price voting over artifacts, weighted by a Likoin balance snapshot.

Membership is frozen when the proposal opens: whoever holds Likoins of the
beneficiary at that instant may suggest and vote, weighted by their share
of the snapshot supply. Tokens acquired later confer nothing on that
proposal. Suggesting a price auto-casts a vote for it. Finalization picks
the weighted plurality when the voted weight clears the quorum fraction,
falling back to the beneficiary's initial suggestion otherwise; ties go to
the lowest price, then the earliest suggestion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING, Optional

from .errors import (
    DuplicatePrice,
    NotAuthorized,
    NotMember,
    ProposalClosed,
    TooEarly,
    UnknownProposal,
    UnknownSuggestion,
    ZeroPrice,
)

if TYPE_CHECKING:
    from .artifacts import Artifact
    from .state import LedgerState

P_OPEN = "open"
P_FINALIZED = "finalized"
P_CANCELLED = "cancelled"


@dataclass
class Snapshot:
    """Immutable copy of one domain's Likoin balances at proposal time."""

    snapshot_id: str
    beneficiary: str
    taken_at: int
    balances: dict[str, int]
    total: int


@dataclass
class Suggestion:
    suggestion_id: str
    price: int  # Bucks, atto-units
    proposer: str
    created_at: int


@dataclass
class Proposal:
    proposal_id: str
    artifact_id: str
    beneficiary: str
    snapshot: Snapshot
    suggestions: list[Suggestion] = field(default_factory=list)
    votes: dict[str, str] = field(default_factory=dict)  # voter -> suggestion_id
    opened_at: int = 0
    min_close_at: int = 0
    quorum_num: int = 1
    quorum_den: int = 10
    status: str = P_OPEN
    outcome: Optional[tuple[str, int]] = None  # (suggestion_id, price)

    def suggestion(self, suggestion_id: str) -> Optional[Suggestion]:
        for s in self.suggestions:
            if s.suggestion_id == suggestion_id:
                return s
        return None


def open_proposal(
    state: "LedgerState",
    artifact: "Artifact",
    suggested_price: int,
    ts: int,
    min_voting_period_ms: int,
    quorum_num: int,
    quorum_den: int,
) -> Proposal:
    domain = state.domains[artifact.beneficiary]
    snapshot = Snapshot(
        snapshot_id=state.next_id("snapshot"),
        beneficiary=artifact.beneficiary,
        taken_at=ts,
        balances=dict(domain.likoin_balances),
        total=domain.likoin_total - domain.reserve,
    )
    proposal = Proposal(
        proposal_id=state.next_id("proposal"),
        artifact_id=artifact.artifact_id,
        beneficiary=artifact.beneficiary,
        snapshot=snapshot,
        opened_at=ts,
        min_close_at=ts + min_voting_period_ms,
        quorum_num=quorum_num,
        quorum_den=quorum_den,
    )
    state.proposals[proposal.proposal_id] = proposal
    # The beneficiary's suggestion is the quorum-failure fallback price.
    _append_suggestion(state, proposal, artifact.beneficiary, suggested_price, ts)
    return proposal


def _append_suggestion(
    state: "LedgerState", proposal: Proposal, actor: str, price: int, ts: int
) -> Suggestion:
    suggestion = Suggestion(
        suggestion_id=state.next_id("suggestion"),
        price=price,
        proposer=actor,
        created_at=ts,
    )
    proposal.suggestions.append(suggestion)
    proposal.votes[actor] = suggestion.suggestion_id
    return suggestion


def _get_open(state: "LedgerState", proposal_id: str) -> Proposal:
    proposal = state.proposals.get(proposal_id)
    if proposal is None:
        raise UnknownProposal(f"no such proposal {proposal_id!r}")
    if proposal.status != P_OPEN:
        raise ProposalClosed(f"proposal {proposal_id} is {proposal.status}")
    return proposal


def is_member(proposal: Proposal, account: str) -> bool:
    return proposal.snapshot.balances.get(account, 0) > 0


def suggest_price(
    state: "LedgerState", actor: str, proposal_id: str, price: int, ts: int
) -> Suggestion:
    proposal = _get_open(state, proposal_id)
    if not is_member(proposal, actor) and actor != proposal.beneficiary:
        raise NotMember(f"{actor} held no Likoins at the snapshot")
    if price <= 0:
        raise ZeroPrice("suggested price must be positive")
    if any(s.price == price for s in proposal.suggestions):
        raise DuplicatePrice(f"price {price} already suggested")
    return _append_suggestion(state, proposal, actor, price, ts)


def vote(
    state: "LedgerState", actor: str, proposal_id: str, suggestion_id: str
) -> Proposal:
    proposal = _get_open(state, proposal_id)
    if not is_member(proposal, actor):
        raise NotMember(f"{actor} held no Likoins at the snapshot")
    if proposal.suggestion(suggestion_id) is None:
        raise UnknownSuggestion(f"no such suggestion {suggestion_id!r}")
    proposal.votes[actor] = suggestion_id
    return proposal


def vote_weight(state: "LedgerState", actor: str, proposal_id: str) -> Fraction:
    proposal = state.proposals.get(proposal_id)
    if proposal is None:
        raise UnknownProposal(f"no such proposal {proposal_id!r}")
    snapshot = proposal.snapshot
    if snapshot.total == 0:
        return Fraction(0)
    return Fraction(snapshot.balances.get(actor, 0), snapshot.total)


def tally(proposal: Proposal) -> tuple[dict[str, int], int]:
    """Snapshot-weight totals per suggestion plus the total voted weight.

    Integer snapshot balances are the weights; dividing by snapshot.total
    would only rescale every entry by the same factor.
    """
    weights = {s.suggestion_id: 0 for s in proposal.suggestions}
    voted = 0
    for voter, suggestion_id in proposal.votes.items():
        w = proposal.snapshot.balances.get(voter, 0)
        weights[suggestion_id] += w
        voted += w
    return weights, voted


def quorum_met(proposal: Proposal) -> bool:
    _, voted = tally(proposal)
    total = proposal.snapshot.total
    return total > 0 and voted * proposal.quorum_den >= proposal.quorum_num * total


def finalize(state: "LedgerState", actor: str, proposal_id: str, ts: int) -> Proposal:
    proposal = _get_open(state, proposal_id)
    if actor != proposal.beneficiary:
        raise NotAuthorized(f"only {proposal.beneficiary} may finalize")
    if ts < proposal.min_close_at:
        raise TooEarly(
            f"voting open until {proposal.min_close_at}, now {ts}"
        )

    weights, _ = tally(proposal)
    if quorum_met(proposal):
        ranked = sorted(
            enumerate(proposal.suggestions),
            key=lambda item: (
                -weights[item[1].suggestion_id],
                item[1].price,
                item[1].created_at,
                item[0],
            ),
        )
        winner = ranked[0][1]
    else:
        winner = proposal.suggestions[0]  # the beneficiary's initial suggestion

    proposal.status = P_FINALIZED
    proposal.outcome = (winner.suggestion_id, winner.price)
    artifact = state.artifacts[proposal.artifact_id]
    from .artifacts import ON_SALE, PRICING  # local import avoids a module cycle

    if artifact.state == PRICING:
        artifact.price = winner.price
        artifact.state = ON_SALE
    return proposal


def cancel(state: "LedgerState", proposal_id: str) -> Proposal:
    proposal = _get_open(state, proposal_id)
    proposal.status = P_CANCELLED
    proposal.outcome = None
    return proposal
