import random

import pytest

from likestarter.errors import (
    AlreadyClosed,
    CampaignAlreadyOpen,
    CampaignClosed,
    InsufficientEscrow,
    InsufficientFunds,
    SelfDonation,
    UnknownPost,
    ZeroAmount,
    ZeroParameter,
)
from likestarter.units import ATTO


def like(world, donor, post_id):
    return world.submit("LikePost", donor, {"post_id": post_id})


def test_default_campaign_mints_ten_likoin_per_like(funded_world):
    w = funded_world
    post_id = w.post("jeff")
    result = like(w, "dana", post_id)
    minted = [e for e in result.events if e.kind == "Minted"][0]
    # 0.01 currency at 1000 Likoin per unit = 10 Likoin
    assert minted.payload["amount"] == 10 * ATTO
    assert w.state.domains["jeff"].balance_of("dana") == 10 * ATTO
    assert w.state.posts[post_id].like_count == 1


def test_like_moves_price_to_escrow(funded_world):
    w = funded_world
    post_id = w.post("jeff")
    like(w, "dana", post_id)
    campaign = w.state.campaigns["jeff"]
    assert campaign.escrow == campaign.like_price
    assert campaign.total_raised == campaign.like_price


def test_like_guards(funded_world):
    w = funded_world
    post_id = w.post("jeff")
    with pytest.raises(UnknownPost):
        like(w, "dana", "post-999999")
    with pytest.raises(SelfDonation):
        like(w, "jeff", post_id)
    w.account("pauper")
    with pytest.raises(InsufficientFunds):
        like(w, "pauper", post_id)


def test_donation_mints_at_rate(funded_world):
    w = funded_world
    result = w.donate("dana", "jeff", ATTO)
    minted = [e for e in result.events if e.kind == "Minted"][0]
    assert minted.payload["amount"] == 1000 * ATTO
    with pytest.raises(ZeroAmount):
        w.donate("dana", "jeff", 0)
    with pytest.raises(SelfDonation):
        w.donate("jeff", "jeff", ATTO)


def test_minting_linearity_floor():
    from likestarter.crowdsale import minted_for

    # rate 1/3: two donations floor separately, one big donation floors once
    a = 10
    assert minted_for(a, 1, 3) + minted_for(a, 1, 3) <= minted_for(2 * a, 1, 3)
    assert minted_for(2 * a, 1, 3) - 2 * minted_for(a, 1, 3) <= 1
    # even rates are exactly linear
    assert minted_for(a, 1000, 1) * 2 == minted_for(2 * a, 1000, 1)


def test_total_raised_accumulates_to_100(funded_world):
    w = funded_world
    w.fund("dana", 200 * ATTO)
    post_id = w.post("jeff")
    like(w, "dana", post_id)  # 0.01
    w.donate("dana", "jeff", 99 * ATTO + 99 * 10**16)  # 99.99
    assert w.state.campaigns["jeff"].total_raised == 100 * ATTO


def test_second_campaign_requires_close(funded_world):
    w = funded_world
    with pytest.raises(CampaignAlreadyOpen):
        w.campaign("jeff")
    w.submit("CloseCampaign", "jeff", {"beneficiary": "jeff"})
    w.campaign("jeff")  # allowed after close
    assert w.state.campaigns["jeff"].status == "open"


def test_campaign_restart_preserves_domain_and_totals(funded_world):
    w = funded_world
    w.donate("dana", "jeff", 10 * ATTO)
    w.submit("CloseCampaign", "jeff", {"beneficiary": "jeff"})
    domain_before = dict(w.state.domains["jeff"].likoin_balances)
    w.campaign("jeff")
    campaign = w.state.campaigns["jeff"]
    assert w.state.domains["jeff"].likoin_balances == domain_before
    assert campaign.escrow == 10 * ATTO  # escrow carries across restarts
    assert campaign.total_raised == 10 * ATTO


def test_campaign_start_rejects_zero_parameters(world):
    world.account("b")
    with pytest.raises(ZeroParameter):
        world.campaign("b", like_price=0)
    with pytest.raises(ZeroParameter):
        world.campaign("b", likoin_rate_num=0)


def test_close_stops_donations_but_not_tokens(funded_world):
    w = funded_world
    w.donate("dana", "jeff", ATTO)
    w.submit("CloseCampaign", "jeff", {"beneficiary": "jeff"})
    with pytest.raises(CampaignClosed):
        w.donate("dana", "jeff", ATTO)
    # tokens outlive the campaign
    result = w.submit("Convert", "dana", {"beneficiary": "jeff", "amount": ATTO})
    assert any(e.kind == "Converted" for e in result.events)
    with pytest.raises(AlreadyClosed):
        w.submit("CloseCampaign", "jeff", {"beneficiary": "jeff"})


def test_withdraw_bookkeeping(funded_world):
    w = funded_world
    w.donate("dana", "jeff", 100 * ATTO)
    w.submit("WithdrawFunds", "jeff", {"beneficiary": "jeff", "amount": 40 * ATTO})
    campaign = w.state.campaigns["jeff"]
    assert campaign.escrow == 60 * ATTO
    assert w.state.accounts["jeff"].currency == 40 * ATTO
    with pytest.raises(InsufficientEscrow):
        w.submit("WithdrawFunds", "jeff", {"beneficiary": "jeff", "amount": 61 * ATTO})


def test_escrow_withdrawn_totals_balance(funded_world, seed=7):
    rng = random.Random(seed)
    w = funded_world
    withdrawn = 0
    for _ in range(200):
        if rng.random() < 0.7:
            amount = rng.randrange(1, 10**9)
            if w.state.accounts["dana"].currency >= amount:
                w.donate("dana", "jeff", amount)
        else:
            campaign = w.state.campaigns["jeff"]
            if campaign.escrow > 0:
                amount = rng.randrange(1, campaign.escrow + 1)
                w.submit(
                    "WithdrawFunds", "jeff", {"beneficiary": "jeff", "amount": amount}
                )
                withdrawn += amount
        campaign = w.state.campaigns["jeff"]
        assert campaign.escrow + withdrawn == campaign.total_raised


def test_campaign_status_view(funded_world):
    from likestarter.views import campaign_view

    w = funded_world
    post_id = w.post("jeff")
    like(w, "dana", post_id)
    view = campaign_view(w.state, "jeff")
    assert view["escrow"] == str(w.state.campaigns["jeff"].like_price)
    assert view["posts"] == [post_id]
    assert campaign_view(w.state, "nobody") is None


def test_every_like_is_one_donation_record(funded_world):
    w = funded_world
    post_id = w.post("jeff")
    for _ in range(5):
        like(w, "dana", post_id)
    likes = [d for d in w.state.donations if d.kind == "like" and d.post_id == post_id]
    assert len(likes) == 5
    assert w.state.posts[post_id].like_count == 5
