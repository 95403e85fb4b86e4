"""Beneficiary artifacts: propose, remove, buy.

Prices are not set here; an artifact starts in "pricing" and goes on sale
only when its governance proposal finalizes. Purchases burn Bucks. Paying
Bucks to the beneficiary would strand them (Bucks only buy artifacts), so
the purchase price is destroyed instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Optional

from . import governance
from .errors import (
    AlreadyRemoved,
    InsufficientBucks,
    NoCampaign,
    NotBeneficiary,
    NotOnSale,
    SupplyExhausted,
    UnknownArtifact,
    ZeroPrice,
)

if TYPE_CHECKING:
    from .state import LedgerState

PRICING = "pricing"
ON_SALE = "on_sale"
REMOVED = "removed"


@dataclass
class Artifact:
    artifact_id: str
    beneficiary: str
    title: str
    description: str
    content_ref: str
    state: str = PRICING
    price: Optional[int] = None
    supply_limit: Optional[int] = None
    sold: int = 0
    owners: dict[str, int] = field(default_factory=dict)
    proposal_id: Optional[str] = None
    created_at: int = 0


@dataclass
class PurchaseRecord:
    artifact_id: str
    buyer: str
    price: int
    copies_owned: int
    sold: int


def propose_artifact(
    state: "LedgerState",
    beneficiary: str,
    title: str,
    description: str,
    content_ref: str,
    suggested_price: int,
    supply_limit: Optional[int],
    ts: int,
    min_voting_period_ms: int,
    quorum_num: int,
    quorum_den: int,
) -> tuple[Artifact, "governance.Proposal"]:
    """Create a pricing-state artifact and open its price vote."""
    if beneficiary not in state.campaigns:
        raise NoCampaign(f"{beneficiary} has no campaign; cannot propose artifacts")
    if suggested_price <= 0:
        raise ZeroPrice("suggested price must be positive")
    if supply_limit is not None and supply_limit <= 0:
        raise ZeroPrice("supply_limit must be positive when set")

    artifact = Artifact(
        artifact_id=state.next_id("artifact"),
        beneficiary=beneficiary,
        title=title,
        description=description,
        content_ref=content_ref,
        supply_limit=supply_limit,
        created_at=ts,
    )
    state.artifacts[artifact.artifact_id] = artifact
    proposal = governance.open_proposal(
        state,
        artifact=artifact,
        suggested_price=suggested_price,
        ts=ts,
        min_voting_period_ms=min_voting_period_ms,
        quorum_num=quorum_num,
        quorum_den=quorum_den,
    )
    artifact.proposal_id = proposal.proposal_id
    return artifact, proposal


def remove_artifact(
    state: "LedgerState", actor: str, artifact_id: str
) -> tuple[Artifact, Optional[str]]:
    """Remove an artifact; returns (artifact, cancelled proposal id or None).

    An open price vote is cancelled alongside; already-sold copies persist.
    """
    artifact = state.artifacts.get(artifact_id)
    if artifact is None:
        raise UnknownArtifact(f"no such artifact {artifact_id!r}")
    if actor != artifact.beneficiary:
        raise NotBeneficiary(f"{actor} does not own artifact {artifact_id}")
    if artifact.state == REMOVED:
        raise AlreadyRemoved(f"artifact {artifact_id} already removed")
    artifact.state = REMOVED
    cancelled = None
    if artifact.proposal_id is not None:
        proposal = state.proposals[artifact.proposal_id]
        if proposal.status == governance.P_OPEN:
            governance.cancel(state, artifact.proposal_id)
            cancelled = artifact.proposal_id
    return artifact, cancelled


def buy_artifact(state: "LedgerState", buyer: str, artifact_id: str) -> PurchaseRecord:
    artifact = state.artifacts.get(artifact_id)
    if artifact is None:
        raise UnknownArtifact(f"no such artifact {artifact_id!r}")
    if artifact.state != ON_SALE:
        raise NotOnSale(f"artifact {artifact_id} is not on sale")
    if artifact.supply_limit is not None and artifact.sold >= artifact.supply_limit:
        raise SupplyExhausted(f"artifact {artifact_id} sold out")
    domain = state.domains[artifact.beneficiary]
    price = artifact.price
    if domain.balance_of(buyer, "buck") < price:
        raise InsufficientBucks(
            f"{buyer} holds {domain.balance_of(buyer, 'buck')} bucks "
            f"of {artifact.beneficiary}, needs {price}"
        )
    domain.burn_buck(buyer, price)
    artifact.owners[buyer] = artifact.owners.get(buyer, 0) + 1
    artifact.sold += 1
    return PurchaseRecord(
        artifact_id=artifact_id,
        buyer=buyer,
        price=price,
        copies_owned=artifact.owners[buyer],
        sold=artifact.sold,
    )


def list_artifacts(state: "LedgerState", beneficiary: str) -> list[Artifact]:
    return sorted(
        (a for a in state.artifacts.values() if a.beneficiary == beneficiary),
        key=lambda a: a.artifact_id,
    )


def owned_artifacts(state: "LedgerState", account: str) -> list[tuple[str, int]]:
    return sorted(
        (a.artifact_id, a.owners[account])
        for a in state.artifacts.values()
        if account in a.owners
    )
