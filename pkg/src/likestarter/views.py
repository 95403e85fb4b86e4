"""Read-side view builders shared by the HTTP service and the CLI.

All amounts are rendered as decimal strings of atto-units; counters and
timestamps stay JSON numbers. Ordering is deterministic everywhere.
"""

from __future__ import annotations

from typing import Optional

from . import artifacts as artifacts_mod
from . import governance
from .crowdsale import minted_for
from .state import LedgerState


def _s(value: Optional[int]) -> Optional[str]:
    return None if value is None else str(value)


def campaign_view(state: LedgerState, beneficiary: str) -> Optional[dict]:
    campaign = state.campaigns.get(beneficiary)
    if campaign is None:
        return None
    domain = state.domains[beneficiary]
    return {
        "beneficiary": beneficiary,
        "status": campaign.status,
        "likoin_rate_num": str(campaign.likoin_rate_num),
        "likoin_rate_den": str(campaign.likoin_rate_den),
        "like_price": str(campaign.like_price),
        # precomputed so clients never do amount arithmetic themselves
        "likoins_per_like": str(
            minted_for(
                campaign.like_price, campaign.likoin_rate_num, campaign.likoin_rate_den
            )
        ),
        "buck_rate": str(campaign.buck_rate),
        "escrow": str(campaign.escrow),
        "total_raised": str(campaign.total_raised),
        "withdrawn_total": str(campaign.withdrawn_total),
        "created_at": campaign.created_at,
        "likoin_total": str(domain.likoin_total),
        "buck_total": str(domain.buck_total),
        "posts": [
            p.post_id
            for p in sorted(state.posts.values(), key=lambda p: p.post_id)
            if p.beneficiary == beneficiary
        ],
    }


def post_view(state: LedgerState, post) -> dict:
    campaign = state.campaigns.get(post.beneficiary)
    return {
        "post_id": post.post_id,
        "beneficiary": post.beneficiary,
        "content_ref": post.content_ref,
        "created_at": post.created_at,
        "like_count": post.like_count,
        "like_price": _s(campaign.like_price if campaign else None),
        "campaign_status": campaign.status if campaign else None,
        "total_raised": _s(campaign.total_raised if campaign else None),
    }


def feed_view(state: LedgerState, limit: int = 50, offset: int = 0) -> dict:
    posts = sorted(
        state.posts.values(),
        key=lambda p: (-p.like_count, -p.created_at, p.post_id),
    )
    return {"entries": [post_view(state, p) for p in posts[offset : offset + limit]]}


def user_view(state: LedgerState, account_id: str) -> Optional[dict]:
    account = state.accounts.get(account_id)
    if account is None:
        return None
    return {
        "account_id": account_id,
        "currency": str(account.currency),
        "campaign": campaign_view(state, account_id),
        "posts": [
            post_view(state, p)
            for p in sorted(state.posts.values(), key=lambda p: p.post_id)
            if p.beneficiary == account_id
        ],
        "donations": [
            {
                "beneficiary": d.beneficiary,
                "amount": str(d.amount),
                "minted": str(d.minted),
                "kind": d.kind,
                "post_id": d.post_id,
                "ts": d.ts,
            }
            for d in state.donations
            if d.donor == account_id
        ],
    }


def artifact_view(state: LedgerState, artifact_id: str) -> Optional[dict]:
    art = state.artifacts.get(artifact_id)
    if art is None:
        return None
    return {
        "artifact_id": art.artifact_id,
        "beneficiary": art.beneficiary,
        "title": art.title,
        "description": art.description,
        "content_ref": art.content_ref,
        "state": art.state,
        "price": _s(art.price),
        "supply_limit": art.supply_limit,
        "sold": art.sold,
        "owners": dict(sorted(art.owners.items())),
        "proposal_id": art.proposal_id,
    }


def artifact_list_view(state: LedgerState, beneficiary: str) -> dict:
    items = artifacts_mod.list_artifacts(state, beneficiary)
    return {
        "artifacts": [
            {
                "artifact_id": a.artifact_id,
                "title": a.title,
                "state": a.state,
                "price": _s(a.price),
                "sold": a.sold,
                "supply_limit": a.supply_limit,
                "proposal_id": a.proposal_id,
            }
            for a in items
        ]
    }


def proposal_view(state: LedgerState, proposal_id: str) -> Optional[dict]:
    prop = state.proposals.get(proposal_id)
    if prop is None:
        return None
    weights, voted = governance.tally(prop)
    total = prop.snapshot.total
    return {
        "proposal_id": prop.proposal_id,
        "artifact_id": prop.artifact_id,
        "beneficiary": prop.beneficiary,
        "status": prop.status,
        "opened_at": prop.opened_at,
        "min_close_at": prop.min_close_at,
        "quorum_num": prop.quorum_num,
        "quorum_den": prop.quorum_den,
        "snapshot_total": str(total),
        "suggestions": [
            {
                "suggestion_id": s.suggestion_id,
                "price": str(s.price),
                "proposer": s.proposer,
                "created_at": s.created_at,
                "weight_num": str(weights[s.suggestion_id]),
                "weight_den": str(total),
            }
            for s in prop.suggestions
        ],
        "votes": dict(sorted(prop.votes.items())),
        "voted_weight_num": str(voted),
        "voted_weight_den": str(total),
        "outcome": (
            {"suggestion_id": prop.outcome[0], "price": str(prop.outcome[1])}
            if prop.outcome
            else None
        ),
    }


def balances_view(
    state: LedgerState, account_id: str, beneficiary: Optional[str]
) -> dict:
    account = state.accounts.get(account_id)
    currency = account.currency if account else 0
    likoin = buck = 0
    if beneficiary is not None:
        domain = state.domains.get(beneficiary)
        if domain is not None:
            likoin = domain.balance_of(account_id, "likoin")
            buck = domain.balance_of(account_id, "buck")
    return {
        "account_id": account_id,
        "beneficiary": beneficiary,
        "currency": str(currency),
        "likoin": str(likoin),
        "buck": str(buck),
    }
