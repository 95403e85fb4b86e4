import pytest

from likestarter import artifacts as artifacts_mod
from likestarter.config import EngineConfig
from likestarter.errors import (
    AlreadyRemoved,
    InsufficientBucks,
    NoCampaign,
    NotBeneficiary,
    NotOnSale,
    ProposalClosed,
    SupplyExhausted,
    UnknownArtifact,
    ZeroPrice,
)
from likestarter.units import ATTO
from conftest import World


def shop_world(price=50 * ATTO, supply_limit=None):
    """jeff sells one finalized artifact; dana holds plenty of Bucks."""
    w = World(EngineConfig(min_voting_period_ms=0))
    for account in ("jeff", "dana"):
        w.account(account)
    w.fund("dana", 1000 * ATTO)
    w.campaign("jeff")
    w.donate("dana", "jeff", ATTO)  # 1000 likoin
    artifact_id, proposal_id = w.propose("jeff", price, supply_limit=supply_limit)
    w.submit("Finalize", "jeff", {"proposal_id": proposal_id})
    w.submit("Convert", "dana", {"beneficiary": "jeff", "amount": 500 * ATTO})
    return w, artifact_id, proposal_id


def test_propose_opens_pricing_and_vote(funded_world):
    w = funded_world
    artifact_id, proposal_id = w.propose("jeff", 50 * ATTO)
    artifact = w.state.artifacts[artifact_id]
    assert artifact.state == "pricing"
    assert artifact.price is None
    proposal = w.state.proposals[proposal_id]
    assert proposal.status == "open"
    assert len(proposal.suggestions) == 1
    assert proposal.suggestions[0].price == 50 * ATTO


def test_propose_requires_campaign_and_price(world):
    world.account("rando")
    with pytest.raises(NoCampaign):
        world.propose("rando", 50 * ATTO)
    world.campaign("rando")
    with pytest.raises(ZeroPrice):
        world.propose("rando", 0)


def test_propose_allowed_after_close(funded_world):
    w = funded_world
    w.submit("CloseCampaign", "jeff", {"beneficiary": "jeff"})
    artifact_id, _ = w.propose("jeff", 50 * ATTO)
    assert w.state.artifacts[artifact_id].state == "pricing"


def test_unique_collectible_supply_limit():
    w, artifact_id, _ = shop_world(price=10 * ATTO, supply_limit=1)
    w.submit("BuyArtifact", "dana", {"artifact_id": artifact_id})
    with pytest.raises(SupplyExhausted):
        w.submit("BuyArtifact", "dana", {"artifact_id": artifact_id})


def test_buy_burns_bucks_exactly():
    w, artifact_id, _ = shop_world(price=500 * ATTO)
    domain = w.state.domains["jeff"]
    assert domain.balance_of("dana", "buck") == 500 * ATTO
    w.submit("BuyArtifact", "dana", {"artifact_id": artifact_id})
    assert domain.balance_of("dana", "buck") == 0
    assert domain.buck_total == 0
    artifact = w.state.artifacts[artifact_id]
    assert artifact.owners == {"dana": 1}
    assert artifact.sold == 1


def test_buy_insufficient_bucks():
    w, artifact_id, _ = shop_world(price=501 * ATTO)
    with pytest.raises(InsufficientBucks):
        w.submit("BuyArtifact", "dana", {"artifact_id": artifact_id})


def test_cannot_buy_while_pricing(funded_world):
    w = funded_world
    artifact_id, _ = w.propose("jeff", 50 * ATTO)
    with pytest.raises(NotOnSale):
        w.submit("BuyArtifact", "dana", {"artifact_id": artifact_id})


def test_repeat_purchases_count_copies():
    w, artifact_id, _ = shop_world(price=100 * ATTO)
    for _ in range(3):
        w.submit("BuyArtifact", "dana", {"artifact_id": artifact_id})
    artifact = w.state.artifacts[artifact_id]
    assert artifact.owners == {"dana": 3}
    assert artifact.sold == 3


def test_remove_while_pricing_cancels_proposal(funded_world):
    w = funded_world
    artifact_id, proposal_id = w.propose("jeff", 50 * ATTO)
    result = w.submit("RemoveArtifact", "jeff", {"artifact_id": artifact_id})
    kinds = [e.kind for e in result.events]
    assert kinds == ["ArtifactRemoved", "ProposalCancelled"]
    assert w.state.proposals[proposal_id].status == "cancelled"
    with pytest.raises(ProposalClosed):
        w.submit("Finalize", "jeff", {"proposal_id": proposal_id}, ts=10**12)


def test_remove_on_sale_stops_purchases_keeps_copies():
    w, artifact_id, _ = shop_world(price=10 * ATTO)
    w.submit("BuyArtifact", "dana", {"artifact_id": artifact_id})
    w.submit("RemoveArtifact", "jeff", {"artifact_id": artifact_id})
    artifact = w.state.artifacts[artifact_id]
    assert artifact.state == "removed"
    assert artifact.owners == {"dana": 1}  # ownership survives removal
    with pytest.raises(NotOnSale):
        w.submit("BuyArtifact", "dana", {"artifact_id": artifact_id})
    with pytest.raises(AlreadyRemoved):
        w.submit("RemoveArtifact", "jeff", {"artifact_id": artifact_id})


def test_remove_authorization():
    w, artifact_id, _ = shop_world()
    with pytest.raises(NotBeneficiary):
        w.submit("RemoveArtifact", "dana", {"artifact_id": artifact_id})
    with pytest.raises(UnknownArtifact):
        w.submit("RemoveArtifact", "jeff", {"artifact_id": "artifact-404404"})


def test_listing_orders_by_id(funded_world):
    w = funded_world
    assert artifacts_mod.list_artifacts(w.state, "jeff") == []
    first, _ = w.propose("jeff", 10 * ATTO, title="one")
    second, _ = w.propose("jeff", 20 * ATTO, title="two")
    listed = [a.artifact_id for a in artifacts_mod.list_artifacts(w.state, "jeff")]
    assert listed == sorted([first, second])


def test_owned_artifacts_reflect_purchases():
    w, artifact_id, _ = shop_world(price=100 * ATTO)
    w.submit("BuyArtifact", "dana", {"artifact_id": artifact_id})
    w.submit("BuyArtifact", "dana", {"artifact_id": artifact_id})
    assert artifacts_mod.owned_artifacts(w.state, "dana") == [(artifact_id, 2)]
    assert artifacts_mod.owned_artifacts(w.state, "jeff") == []


def test_full_figure3_flow_conserves(funded_world):
    # donate -> convert -> buy: likoin total unchanged, bucks reduced by price
    w = World(EngineConfig(min_voting_period_ms=0))
    for account in ("jeff", "dana"):
        w.account(account)
    w.fund("dana", 10 * ATTO)
    w.campaign("jeff")
    w.donate("dana", "jeff", ATTO)
    artifact_id, proposal_id = w.propose("jeff", 30 * ATTO)
    w.submit("Finalize", "jeff", {"proposal_id": proposal_id})
    domain = w.state.domains["jeff"]
    likoin_before = domain.likoin_total
    w.submit("Convert", "dana", {"beneficiary": "jeff", "amount": 100 * ATTO})
    assert domain.likoin_total == likoin_before
    assert domain.buck_total == 100 * ATTO
    w.submit("BuyArtifact", "dana", {"artifact_id": artifact_id})
    assert domain.likoin_total == likoin_before
    assert domain.buck_total == 70 * ATTO
    domain.check_conservation()
