"""Full-history invariant recomputation over a journal.

Replays every envelope and re-derives, independently of the engine's own
bookkeeping, the properties the economy promises: exact conservation,
domain isolation, buck irreversibility, snapshot immutability, and the
pro-rata redistribution cross-checked against the rational oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .config import EngineConfig
from .engine import Envelope, apply
from .errors import InvariantViolation
from .journal import read_envelopes, read_header, replay
from .oracle import distribution_oracle
from .state import LedgerState, genesis, state_hash


@dataclass
class Violation:
    seq: int
    invariant: str
    detail: str


@dataclass
class Report:
    envelopes: int = 0
    conversions: int = 0
    checks: int = 0
    violations: list[Violation] = field(default_factory=list)
    final_hash: str = ""

    @property
    def clean(self) -> bool:
        return not self.violations

    def raise_if_violated(self) -> None:
        if self.violations:
            v = self.violations[0]
            raise InvariantViolation(
                f"{v.invariant} violated at seq {v.seq}: {v.detail} "
                f"({len(self.violations)} violation(s) total)"
            )


def check_state(state: LedgerState, seq: int = 0) -> list[Violation]:
    """Brute-force the always-true invariants of a state."""
    found: list[Violation] = []

    def flag(invariant: str, detail: str) -> None:
        found.append(Violation(seq=seq, invariant=invariant, detail=detail))

    for b, domain in state.domains.items():
        likoin_sum = sum(domain.likoin_balances.values())
        if likoin_sum + domain.reserve != domain.likoin_total:
            flag(
                "likoin-conservation",
                f"domain {b}: {likoin_sum} + {domain.reserve} != {domain.likoin_total}",
            )
        buck_sum = sum(domain.buck_balances.values())
        if buck_sum != domain.buck_total:
            flag("buck-conservation", f"domain {b}: {buck_sum} != {domain.buck_total}")
        if any(v <= 0 for v in domain.likoin_balances.values()):
            flag("no-zero-balances", f"domain {b} holds a non-positive likoin entry")
        if any(v <= 0 for v in domain.buck_balances.values()):
            flag("no-zero-balances", f"domain {b} holds a non-positive buck entry")

    currency = sum(a.currency for a in state.accounts.values())
    escrow = sum(c.escrow for c in state.campaigns.values())
    if currency + escrow != state.deposits_total:
        flag(
            "currency-conservation",
            f"{currency} + {escrow} != deposits {state.deposits_total}",
        )

    for b, campaign in state.campaigns.items():
        if campaign.escrow > campaign.total_raised:
            flag("escrow-bound", f"campaign {b}: escrow exceeds total_raised")
        if campaign.escrow + campaign.withdrawn_total != campaign.total_raised:
            flag(
                "escrow-accounting",
                f"campaign {b}: escrow + withdrawn != raised",
            )

    for aid, artifact in state.artifacts.items():
        if sum(artifact.owners.values()) != artifact.sold:
            flag("ownership-fold", f"artifact {aid}: owners sum != sold")
        if artifact.supply_limit is not None and artifact.sold > artifact.supply_limit:
            flag("supply-limit", f"artifact {aid}: oversold")
        if artifact.state == "on_sale" and artifact.price is None:
            flag("price-presence", f"artifact {aid}: on sale without a price")
        if artifact.state == "pricing" and artifact.price is not None:
            flag("price-presence", f"artifact {aid}: priced while pricing")

    return found


# beneficiary whose domain an envelope may touch; None = no domain
def _touched_domain(state: LedgerState, env: Envelope) -> Optional[str]:
    payload = env.payload
    if env.kind in ("StartCampaign", "CreatePost", "ProposeArtifact"):
        return env.actor
    if env.kind in ("CloseCampaign", "WithdrawFunds"):
        return payload.get("beneficiary")
    if env.kind in ("Donate", "TransferLikoin", "Approve", "TransferFrom", "Convert"):
        return payload.get("beneficiary")
    if env.kind == "LikePost":
        post = state.posts.get(payload.get("post_id", ""))
        return post.beneficiary if post else None
    if env.kind in ("RemoveArtifact", "BuyArtifact"):
        artifact = state.artifacts.get(payload.get("artifact_id", ""))
        return artifact.beneficiary if artifact else None
    if env.kind in ("SuggestPrice", "Vote", "Finalize"):
        proposal = state.proposals.get(payload.get("proposal_id", ""))
        return proposal.beneficiary if proposal else None
    return None


def _domain_fingerprint(domain) -> tuple:
    return (
        domain.likoin_total,
        domain.buck_total,
        domain.reserve,
        len(domain.likoin_balances),
        len(domain.buck_balances),
        sum(len(s) for s in domain.allowances.values()),
    )


def analyze_envelopes(
    envelopes: Iterable[Envelope], config: EngineConfig
) -> Report:
    report = Report()
    state = genesis()
    snapshots: dict[str, tuple[dict, int]] = {}

    for env in envelopes:
        touched = _touched_domain(state, env)
        fingerprints = {
            b: _domain_fingerprint(d)
            for b, d in state.domains.items()
            if b != touched
        }
        pre_likoin = pre_buck = None
        if touched is not None and touched in state.domains:
            domain = state.domains[touched]
            pre_likoin = dict(domain.likoin_balances)
            pre_buck = dict(domain.buck_balances)

        apply(state, env, config)
        report.envelopes += 1

        def flag(invariant: str, detail: str) -> None:
            report.violations.append(
                Violation(seq=env.seq, invariant=invariant, detail=detail)
            )

        # isolation: untouched domains keep their fingerprints
        for b, fp in fingerprints.items():
            if _domain_fingerprint(state.domains[b]) != fp:
                flag("domain-isolation", f"envelope touched foreign domain {b}")
        report.checks += len(fingerprints)

        if env.kind == "ProposeArtifact":
            proposal_id = state.counters.get("proposal", 0)
            pid = f"proposal-{proposal_id:06d}"
            snap = state.proposals[pid].snapshot
            snapshots[pid] = (dict(snap.balances), snap.total)

        if env.kind in ("Finalize", "Vote", "SuggestPrice"):
            pid = env.payload["proposal_id"]
            recorded = snapshots.get(pid)
            if recorded is not None:
                snap = state.proposals[pid].snapshot
                if (snap.balances, snap.total) != recorded:
                    flag("snapshot-immutability", f"snapshot of {pid} drifted")
                report.checks += 1

        if env.kind == "Convert" and pre_likoin is not None:
            report.conversions += 1
            domain = state.domains[touched]
            converter = env.actor
            amount = env.payload["amount"]
            expected = distribution_oracle(pre_likoin, converter, amount)
            for holder, gained in expected.items():
                post_balance = domain.likoin_balances.get(holder, 0)
                before = pre_likoin.get(holder, 0)
                if holder == converter:
                    before -= amount
                if post_balance != before + gained:
                    flag(
                        "oracle-equivalence",
                        f"{holder} got {post_balance - before}, oracle says {gained}",
                    )
            # autocatalysis: non-converters with an exact share >= 1 atto
            # (amount * post_balance >= post_total) must strictly gain
            post = {h: v for h, v in pre_likoin.items() if h != converter and v > 0}
            residual = pre_likoin.get(converter, 0) - amount
            if residual > 0:
                post[converter] = residual
            post_total = sum(post.values())
            for holder, before in post.items():
                if holder == converter:
                    continue
                after = domain.likoin_balances.get(holder, 0)
                if amount * before >= post_total and after <= before:
                    flag("autocatalysis", f"{holder} did not gain at seq {env.seq}")
                if after < before:
                    flag("autocatalysis", f"{holder} lost likoins in a conversion")
            report.checks += len(post)

        if pre_buck is not None:
            domain = state.domains[touched]
            deltas = {
                a: domain.buck_balances.get(a, 0) - pre_buck.get(a, 0)
                for a in set(pre_buck) | set(domain.buck_balances)
            }
            changed = {a: d for a, d in deltas.items() if d}
            if env.kind == "Convert":
                ok = set(changed) <= {env.actor} and all(d > 0 for d in changed.values())
            elif env.kind == "BuyArtifact":
                ok = set(changed) <= {env.actor} and all(d < 0 for d in changed.values())
            else:
                ok = not changed
            if not ok:
                flag("buck-immobility", f"unexpected buck movement {changed}")
            report.checks += 1

        report.violations.extend(check_state(state, env.seq))
        report.checks += 1

    # snapshots must still match at end of history
    for pid, (balances, total) in snapshots.items():
        snap = state.proposals[pid].snapshot
        if (snap.balances, snap.total) != (balances, total):
            report.violations.append(
                Violation(seq=state.last_seq, invariant="snapshot-immutability", detail=pid)
            )

    report.final_hash = state_hash(state)
    return report


def analyze(journal_path: str) -> Report:
    """Recompute all invariants over a journal; cross-check the replay hash."""
    header = read_header(journal_path)
    config = EngineConfig.from_dict(header.get("genesis", {}))
    report = analyze_envelopes(read_envelopes(journal_path), config)
    _, digest = replay(journal_path)
    if digest != report.final_hash:
        report.violations.append(
            Violation(seq=-1, invariant="replay-hash", detail="analyzer/replay divergence")
        )
    return report
