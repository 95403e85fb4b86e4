"""Campaign lifecycle and the donation path.

A "like" is a fixed-price micro-donation; a free donation is the same flow
with a caller-chosen amount. Either way the currency goes into the
campaign's escrow and Likoins are minted to the donor at the campaign rate.
Funds leave escrow only through explicit withdrawal by the beneficiary.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional

from .errors import (
    AlreadyClosed,
    CampaignAlreadyOpen,
    CampaignClosed,
    InsufficientEscrow,
    InsufficientFunds,
    NoCampaign,
    SelfDonation,
    UnknownPost,
    ZeroParameter,
)
from .ledger import TokenDomain
from .units import check_amount, checked_add

if TYPE_CHECKING:
    from .state import LedgerState

OPEN = "open"
CLOSED = "closed"


@dataclass
class Campaign:
    beneficiary: str
    status: str = OPEN
    # Likoin atto-units minted per currency atto-unit, as an exact rational.
    likoin_rate_num: int = 1000
    likoin_rate_den: int = 1
    like_price: int = 10**16  # 0.01 currency units
    buck_rate: int = 1
    escrow: int = 0
    total_raised: int = 0
    withdrawn_total: int = 0
    created_at: int = 0


@dataclass
class Post:
    post_id: str
    beneficiary: str
    content_ref: str
    created_at: int = 0
    like_count: int = 0


@dataclass
class DonationRecord:
    donor: str
    beneficiary: str
    amount: int
    minted: int
    kind: str  # "like" or "free"
    post_id: Optional[str] = None
    seq: int = 0
    ts: int = 0


def minted_for(amount: int, rate_num: int, rate_den: int) -> int:
    """Likoin atto-units minted for a currency donation: floor(amount * rate)."""
    return amount * rate_num // rate_den


def start_campaign(
    state: "LedgerState",
    beneficiary: str,
    likoin_rate_num: int,
    likoin_rate_den: int,
    like_price: int,
    buck_rate: int,
    ts: int,
) -> Campaign:
    """Open a campaign, creating the beneficiary's token domain if missing.

    A replaced (closed) campaign's escrow, lifetime raised and withdrawn
    totals carry into the new one so currency conservation and the
    escrow <= total_raised bound keep holding across restarts.
    """
    if likoin_rate_num <= 0 or likoin_rate_den <= 0:
        raise ZeroParameter("likoin_rate must be positive")
    if like_price <= 0:
        raise ZeroParameter("like_price must be positive")
    if buck_rate <= 0:
        raise ZeroParameter("buck_rate must be positive")
    prior = state.campaigns.get(beneficiary)
    if prior is not None and prior.status == OPEN:
        raise CampaignAlreadyOpen(f"{beneficiary} already has an open campaign")

    campaign = Campaign(
        beneficiary=beneficiary,
        status=OPEN,
        likoin_rate_num=likoin_rate_num,
        likoin_rate_den=likoin_rate_den,
        like_price=like_price,
        buck_rate=buck_rate,
        escrow=prior.escrow if prior else 0,
        total_raised=prior.total_raised if prior else 0,
        withdrawn_total=prior.withdrawn_total if prior else 0,
        created_at=ts,
    )
    state.campaigns[beneficiary] = campaign
    if beneficiary not in state.domains:
        state.domains[beneficiary] = TokenDomain(
            beneficiary=beneficiary, buck_rate=buck_rate
        )
    return campaign


def create_post(
    state: "LedgerState", beneficiary: str, content_ref: str, ts: int
) -> Post:
    if beneficiary not in state.campaigns:
        raise NoCampaign(f"{beneficiary} has no campaign to post for")
    post = Post(
        post_id=state.next_id("post"),
        beneficiary=beneficiary,
        content_ref=content_ref,
        created_at=ts,
    )
    state.posts[post.post_id] = post
    return post


def _donate(
    state: "LedgerState",
    donor: str,
    beneficiary: str,
    amount: int,
    kind: str,
    post_id: Optional[str],
    ts: int,
) -> DonationRecord:
    campaign = state.campaigns.get(beneficiary)
    if campaign is None:
        raise NoCampaign(f"{beneficiary} has no campaign")
    if campaign.status != OPEN:
        raise CampaignClosed(f"{beneficiary}'s campaign is closed")
    if donor == beneficiary:
        raise SelfDonation("beneficiaries cannot fund themselves")
    account = state.accounts[donor]
    if account.currency < amount:
        raise InsufficientFunds(f"{donor} holds {account.currency}, needs {amount}")

    minted = minted_for(amount, campaign.likoin_rate_num, campaign.likoin_rate_den)
    domain = state.domains[beneficiary]
    # run every checked addition before the first mutation
    new_escrow = checked_add(campaign.escrow, amount)
    new_raised = checked_add(campaign.total_raised, amount)
    checked_add(domain.likoin_total, minted)

    account.currency -= amount
    campaign.escrow = new_escrow
    campaign.total_raised = new_raised
    if minted:
        domain.mint_likoin(donor, minted)
    record = DonationRecord(
        donor=donor,
        beneficiary=beneficiary,
        amount=amount,
        minted=minted,
        kind=kind,
        post_id=post_id,
        ts=ts,
    )
    state.donations.append(record)
    return record


def like_post(state: "LedgerState", donor: str, post_id: str, ts: int) -> DonationRecord:
    post = state.posts.get(post_id)
    if post is None:
        raise UnknownPost(f"no such post {post_id!r}")
    campaign = state.campaigns.get(post.beneficiary)
    record = _donate(
        state,
        donor,
        post.beneficiary,
        campaign.like_price if campaign else 0,
        "like",
        post_id,
        ts,
    )
    post.like_count += 1
    return record


def donate(
    state: "LedgerState", donor: str, beneficiary: str, amount: int, ts: int
) -> DonationRecord:
    check_amount(amount, allow_zero=False)
    return _donate(state, donor, beneficiary, amount, "free", None, ts)


def close_campaign(state: "LedgerState", beneficiary: str) -> Campaign:
    campaign = state.campaigns.get(beneficiary)
    if campaign is None:
        raise NoCampaign(f"{beneficiary} has no campaign")
    if campaign.status == CLOSED:
        raise AlreadyClosed(f"{beneficiary}'s campaign is already closed")
    campaign.status = CLOSED
    return campaign


def withdraw_funds(state: "LedgerState", beneficiary: str, amount: int) -> Campaign:
    check_amount(amount, allow_zero=False)
    campaign = state.campaigns.get(beneficiary)
    if campaign is None:
        raise NoCampaign(f"{beneficiary} has no campaign")
    if campaign.escrow < amount:
        raise InsufficientEscrow(f"escrow {campaign.escrow}, requested {amount}")
    new_currency = checked_add(state.accounts[beneficiary].currency, amount)
    campaign.escrow -= amount
    campaign.withdrawn_total += amount
    state.accounts[beneficiary].currency = new_currency
    return campaign
