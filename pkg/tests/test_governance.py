import itertools
from fractions import Fraction

import pytest

from likestarter import governance
from likestarter.config import EngineConfig
from likestarter.errors import (
    DuplicatePrice,
    NotAuthorized,
    NotMember,
    ProposalClosed,
    TooEarly,
    UnknownSuggestion,
    ZeroPrice,
)
from likestarter.units import ATTO
from conftest import World


def proposal_world(balances, *, quorum=(1, 10), period_ms=1000):
    """jeff campaign with the given Likoin balances and one open proposal.

    Balances are planted directly in the domain; only the proposal flow
    itself needs to go through envelopes here.
    """
    w = World(EngineConfig(quorum_num=quorum[0], quorum_den=quorum[1],
                           min_voting_period_ms=period_ms))
    w.account("jeff")
    w.campaign("jeff")
    domain = w.state.domains["jeff"]
    for holder, amount in balances.items():
        w.account(holder)
        domain.mint_likoin(holder, amount)
    _, proposal_id = w.propose("jeff", 50 * ATTO)
    return w, proposal_id


def test_snapshot_taken_at_proposal(funded_world):
    w = funded_world
    w.donate("dana", "jeff", ATTO)
    _, pid = w.propose("jeff", 50 * ATTO)
    snapshot = w.state.proposals[pid].snapshot
    assert snapshot.balances == {"dana": 1000 * ATTO}
    assert snapshot.total == 1000 * ATTO
    # later mints do not appear
    w.donate("eli", "jeff", ATTO)
    assert "eli" not in snapshot.balances


def test_member_suggestion_auto_votes():
    w, pid = proposal_world({"dana": 600, "eli": 400})
    result = w.submit("SuggestPrice", "dana", {"proposal_id": pid, "price": 40 * ATTO})
    kinds = [e.kind for e in result.events]
    assert kinds == ["Suggested", "Voted"]
    sug = result.events[0].payload["suggestion_id"]
    assert w.state.proposals[pid].votes["dana"] == sug


def test_duplicate_price_rejected():
    w, pid = proposal_world({"dana": 600, "eli": 400})
    w.submit("SuggestPrice", "dana", {"proposal_id": pid, "price": 40 * ATTO})
    with pytest.raises(DuplicatePrice):
        w.submit("SuggestPrice", "eli", {"proposal_id": pid, "price": 40 * ATTO})
    with pytest.raises(ZeroPrice):
        w.submit("SuggestPrice", "eli", {"proposal_id": pid, "price": 0})


def test_post_snapshot_holder_is_not_member():
    w, pid = proposal_world({"dana": 600})
    w.account("late")
    w.fund("late", 10 * ATTO)
    w.donate("late", "jeff", ATTO)  # mints after the snapshot
    with pytest.raises(NotMember):
        w.submit("SuggestPrice", "late", {"proposal_id": pid, "price": 42})
    with pytest.raises(NotMember):
        w.submit(
            "Vote", "late", {"proposal_id": pid, "suggestion_id": "suggestion-000001"}
        )


def test_beneficiary_may_suggest_without_balance():
    w, pid = proposal_world({"dana": 600})
    result = w.submit("SuggestPrice", "jeff", {"proposal_id": pid, "price": 77})
    assert result.events[0].payload["proposer"] == "jeff"
    # but jeff's auto-vote carries zero weight
    assert governance.vote_weight(w.state, "jeff", pid) == 0


def test_revote_replaces():
    w, pid = proposal_world({"dana": 600, "eli": 400})
    s1 = w.submit("SuggestPrice", "dana", {"proposal_id": pid, "price": 40 * ATTO})
    sug1 = s1.events[0].payload["suggestion_id"]
    s2 = w.submit("SuggestPrice", "eli", {"proposal_id": pid, "price": 60 * ATTO})
    sug2 = s2.events[0].payload["suggestion_id"]
    w.submit("Vote", "dana", {"proposal_id": pid, "suggestion_id": sug2})
    votes = w.state.proposals[pid].votes
    assert votes["dana"] == sug2
    with pytest.raises(UnknownSuggestion):
        w.submit("Vote", "dana", {"proposal_id": pid, "suggestion_id": "suggestion-999999"})


def test_vote_weight_is_exact_ratio():
    w, pid = proposal_world({"dana": 60, "eli": 40})
    assert governance.vote_weight(w.state, "dana", pid) == Fraction(60, 100)
    assert governance.vote_weight(w.state, "eli", pid) == Fraction(40, 100)
    assert governance.vote_weight(w.state, "ghost", pid) == 0


def test_one_percent_weight():
    w, pid = proposal_world({"probe": 100, "whale": 9900})
    assert governance.vote_weight(w.state, "probe", pid) == Fraction(1, 100)


def test_weights_sum_to_one():
    w, pid = proposal_world({"a": 17, "b": 29, "c": 54, "d": 1})
    snapshot = w.state.proposals[pid].snapshot
    total = sum(
        governance.vote_weight(w.state, member, pid) for member in snapshot.balances
    )
    assert total == 1


def test_sole_holder_weight_one():
    w, pid = proposal_world({"dana": 123})
    assert governance.vote_weight(w.state, "dana", pid) == 1


class TestFinalize:
    def test_single_voter_unanimity(self):
        w, pid = proposal_world({"dana": 1000})
        r = w.submit("SuggestPrice", "dana", {"proposal_id": pid, "price": 40 * ATTO})
        w.submit("Finalize", "jeff", {"proposal_id": pid}, ts=5000)
        assert w.state.proposals[pid].outcome[1] == 40 * ATTO
        artifact = w.state.artifacts["artifact-000001"]
        assert artifact.state == "on_sale"
        assert artifact.price == 40 * ATTO

    def test_tie_breaks_to_lower_price(self):
        w, pid = proposal_world({"dana": 300, "eli": 300, "rest": 400})
        w.submit("SuggestPrice", "eli", {"proposal_id": pid, "price": 60 * ATTO})
        w.submit("SuggestPrice", "dana", {"proposal_id": pid, "price": 40 * ATTO})
        w.submit("Finalize", "jeff", {"proposal_id": pid}, ts=5000)
        assert w.state.proposals[pid].outcome[1] == 40 * ATTO

    def test_quorum_failure_falls_back_to_initial_suggestion(self):
        # nobody with weight votes; jeff holds nothing
        w, pid = proposal_world({"dana": 1000})
        w.submit("SuggestPrice", "jeff", {"proposal_id": pid, "price": 99 * ATTO})
        w.submit("Finalize", "jeff", {"proposal_id": pid}, ts=5000)
        # fallback is the opening suggestion (50), not jeff's later one
        assert w.state.proposals[pid].outcome[1] == 50 * ATTO

    def test_too_early_and_wrong_actor(self):
        w, pid = proposal_world({"dana": 1000})
        with pytest.raises(TooEarly):
            w.submit("Finalize", "jeff", {"proposal_id": pid}, ts=500)
        with pytest.raises(NotAuthorized):
            w.submit("Finalize", "dana", {"proposal_id": pid}, ts=5000)

    def test_finalize_twice_rejected(self):
        w, pid = proposal_world({"dana": 1000})
        w.submit("Finalize", "jeff", {"proposal_id": pid}, ts=5000)
        with pytest.raises(ProposalClosed):
            w.submit("Finalize", "jeff", {"proposal_id": pid}, ts=6000)


class TestCancel:
    def test_cancel_discards_votes(self):
        w, pid = proposal_world({"dana": 1000})
        w.submit("SuggestPrice", "dana", {"proposal_id": pid, "price": 40 * ATTO})
        governance.cancel(w.state, pid)
        proposal = w.state.proposals[pid]
        assert proposal.status == "cancelled"
        assert proposal.outcome is None

    def test_finalize_after_cancel(self):
        w, pid = proposal_world({"dana": 1000})
        governance.cancel(w.state, pid)
        with pytest.raises(ProposalClosed):
            w.submit("Finalize", "jeff", {"proposal_id": pid}, ts=5000)

    def test_cancel_twice(self):
        w, pid = proposal_world({"dana": 1000})
        governance.cancel(w.state, pid)
        with pytest.raises(ProposalClosed):
            governance.cancel(w.state, pid)


def test_snapshot_immunity_to_later_transfers():
    w, pid = proposal_world({"dana": 600, "eli": 400})
    before = {
        m: governance.vote_weight(w.state, m, pid) for m in ("dana", "eli")
    }
    w.submit(
        "TransferLikoin", "dana", {"beneficiary": "jeff", "to": "eli", "amount": 500}
    )
    w.submit("Convert", "eli", {"beneficiary": "jeff", "amount": 100})
    after = {m: governance.vote_weight(w.state, m, pid) for m in ("dana", "eli")}
    assert before == after


def test_argmax_scale_invariance():
    # same vote pattern at every scale k picks the same winner
    def winner_for(scale):
        w, pid = proposal_world({"a": 3 * scale, "b": 2 * scale, "c": 5 * scale})
        sa = w.submit("SuggestPrice", "a", {"proposal_id": pid, "price": 10 * ATTO})
        sb = w.submit("SuggestPrice", "b", {"proposal_id": pid, "price": 20 * ATTO})
        w.submit(
            "Vote",
            "c",
            {
                "proposal_id": pid,
                "suggestion_id": sb.events[0].payload["suggestion_id"],
            },
        )
        w.submit("Finalize", "jeff", {"proposal_id": pid}, ts=5000)
        return w.state.proposals[pid].outcome[1]

    assert len({winner_for(k) for k in (1, 2, 10, 1000)}) == 1


def brute_force_outcome(balances, suggestions, votes, quorum, initial_index=0):
    """Independent tally in Fractions: (winning index, price)."""
    total = sum(balances.values())
    weights = []
    for index, _ in enumerate(suggestions):
        w = sum(
            Fraction(balances.get(voter, 0), total)
            for voter, v_index in votes.items()
            if v_index == index
        )
        weights.append(w)
    voted = sum(
        Fraction(balances.get(voter, 0), total) for voter in votes
    )
    if total == 0 or voted < Fraction(*quorum):
        return initial_index, suggestions[initial_index]
    best = sorted(
        range(len(suggestions)), key=lambda i: (-weights[i], suggestions[i], i)
    )[0]
    return best, suggestions[best]


def test_exhaustive_three_member_three_suggestion_tallies():
    members = ("m1", "m2", "m3")
    balances = {"m1": 5, "m2": 3, "m3": 2}
    prices = [50 * ATTO, 40 * ATTO, 60 * ATTO]  # index 0 is the opening suggestion
    # each member votes for one of the three suggestions or abstains
    for assignment in itertools.product([None, 0, 1, 2], repeat=3):
        w, pid = proposal_world(balances)
        s2 = w.submit("SuggestPrice", "m1", {"proposal_id": pid, "price": prices[1]})
        s3 = w.submit("SuggestPrice", "m2", {"proposal_id": pid, "price": prices[2]})
        ids = [
            "suggestion-000001",
            s2.events[0].payload["suggestion_id"],
            s3.events[0].payload["suggestion_id"],
        ]
        votes = {}
        for member, choice in zip(members, assignment):
            if choice is None:
                continue
            w.submit(
                "Vote", member, {"proposal_id": pid, "suggestion_id": ids[choice]}
            )
            votes[member] = choice
        # suggesting auto-voted m1 and m2; mirror that unless they re-voted
        votes.setdefault("m1", 1)
        votes.setdefault("m2", 2)
        w.submit("Finalize", "jeff", {"proposal_id": pid}, ts=5000)
        outcome_price = w.state.proposals[pid].outcome[1]
        _, expected_price = brute_force_outcome(
            balances, prices, votes, (1, 10), initial_index=0
        )
        assert outcome_price == expected_price, (assignment, votes)
