"""Agent-based scenario runner over the full economy.

One seeded Mersenne Twister stream drives every agent decision, so a
scenario config fully determines the journal and the metrics. Agents check
preconditions before acting and therefore never submit a rejected
envelope; journals stay replayable. The like probability rises with the
campaign's raised total (herding), and conversions feed the redistribution
cycle the metrics track as holder yield.
"""

from __future__ import annotations

import csv
import json
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional

from . import governance
from .config import EngineConfig
from .engine import Engine, default_start_campaign_payload
from .errors import ConfigError
from .journal import FileJournal, MemoryJournal
from .units import ATTO

RNG_ALGORITHM = "python-random-mt19937"

METRICS_HEADER = [
    "step",
    "beneficiary",
    "total_raised",
    "likoin_total",
    "buck_total",
    "escrow",
    "artifacts_sold",
    "gini_likoin",
    "mean_holder_yield",
]


@dataclass
class ScenarioConfig:
    seed: int = 1
    n_donors: int = 20
    n_beneficiaries: int = 1
    steps: int = 30
    initial_deposit: int = ATTO  # currency atto-units per donor
    base_like_prob: float = 0.3
    herding_gain: float = 0.002  # like-probability increase per whole unit raised
    convert_prob: float = 0.1
    buy_prob: float = 0.05
    suggest_prob: float = 0.3
    vote_prob: float = 0.5
    artifact_step: int = 10  # step at which each beneficiary proposes an artifact
    suggested_price: int = 5 * ATTO  # bucks
    step_ms: int = 1000
    engine: EngineConfig = field(default_factory=lambda: EngineConfig(min_voting_period_ms=3000))

    def __post_init__(self):
        if isinstance(self.engine, dict):
            self.engine = EngineConfig.from_dict(self.engine)
        if self.seed < 0 or self.seed > 2**64 - 1:
            raise ConfigError("seed must fit in 64 bits")
        for name in ("n_donors", "n_beneficiaries", "steps", "step_ms"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be positive")
        for name in (
            "base_like_prob",
            "herding_gain",
            "convert_prob",
            "buy_prob",
            "suggest_prob",
            "vote_prob",
        ):
            value = getattr(self, name)
            if not (0.0 <= value) or (name != "herding_gain" and value > 1.0):
                raise ConfigError(f"{name} out of range")
        if self.initial_deposit <= 0 or self.suggested_price <= 0:
            raise ConfigError("deposits and prices must be positive")
        if not (0 <= self.artifact_step < self.steps):
            raise ConfigError("artifact_step must fall inside the run")

    def to_dict(self) -> dict:
        data = asdict(self)
        data["engine"] = self.engine.to_dict()
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "ScenarioConfig":
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise ConfigError(f"unknown scenario keys: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def from_file(cls, path: str) -> "ScenarioConfig":
        try:
            with open(path, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read scenario config {path}: {exc}") from exc
        return cls.from_dict(data)


def like_probability(config: ScenarioConfig, total_raised: int) -> float:
    """Herding policy: non-decreasing in the campaign's raised total."""
    raised_units = total_raised / ATTO
    return min(1.0, config.base_like_prob + config.herding_gain * raised_units)


def gini(balances: list[int]) -> float:
    """Gini coefficient of a holdings list; 0 for empty or single-holder sets."""
    n = len(balances)
    if n == 0:
        return 0.0
    total = sum(balances)
    if total == 0:
        return 0.0
    ordered = sorted(balances)
    weighted = sum((i + 1) * b for i, b in enumerate(ordered))
    return (2 * weighted) / (n * total) - (n + 1) / n


@dataclass
class ScenarioResult:
    config: ScenarioConfig
    engine: Engine
    metrics: list[dict]
    journal_path: Optional[str]
    conversions: int


def run_scenario(
    config: ScenarioConfig, journal_path: Optional[str] = None
) -> ScenarioResult:
    """Run one scenario; returns the live engine plus per-step metrics rows."""
    rng = random.Random(config.seed)
    extra_header = {"rng": RNG_ALGORITHM, "seed": config.seed}
    if journal_path is not None:
        journal = FileJournal(
            journal_path, config.engine, extra_header=extra_header, fsync=False
        )
    else:
        journal = MemoryJournal(config.engine)
    engine = Engine(config.engine, journal)

    beneficiaries = [f"artist-{i:03d}" for i in range(config.n_beneficiaries)]
    donors = [f"donor-{i:03d}" for i in range(config.n_donors)]
    ts = 0

    def submit(kind, actor, payload):
        return engine.submit(kind, actor, payload, ts)

    for account in beneficiaries + donors:
        submit("CreateAccount", account, {"id": account, "secret": ""})
    for donor in donors:
        submit("Deposit", donor, {"amount": config.initial_deposit})

    posts = {}
    for b in beneficiaries:
        submit("StartCampaign", b, default_start_campaign_payload(config.engine, {}))
        result = submit("CreatePost", b, {"content_ref": f"content://{b}/intro"})
        posts[b] = result.events[0].payload["post_id"]

    proposals: dict[str, Optional[str]] = {b: None for b in beneficiaries}
    state = engine.state
    prev_balances: dict[str, dict[str, int]] = {
        b: dict(state.domains[b].likoin_balances) for b in beneficiaries
    }
    metrics: list[dict] = []
    conversions = 0
    distributed_in_step: dict[str, dict[str, int]] = {}

    for step in range(config.steps):
        ts = (step + 1) * config.step_ms
        distributed_in_step = {b: {} for b in beneficiaries}

        if step == config.artifact_step:
            for b in beneficiaries:
                result = submit(
                    "ProposeArtifact",
                    b,
                    {
                        "title": f"{b} artifact",
                        "description": "scenario artifact",
                        "content_ref": f"content://{b}/artifact",
                        "suggested_price": config.suggested_price,
                        "supply_limit": None,
                    },
                )
                proposals[b] = result.events[1].payload["proposal_id"]

        for donor in donors:
            for b in beneficiaries:
                campaign = state.campaigns[b]
                domain = state.domains[b]

                p_like = like_probability(config, campaign.total_raised)
                if (
                    rng.random() < p_like
                    and campaign.status == "open"
                    and state.accounts[donor].currency >= campaign.like_price
                ):
                    submit("LikePost", donor, {"post_id": posts[b]})

                pid = proposals[b]
                if pid is not None and state.proposals[pid].status == "open":
                    proposal = state.proposals[pid]
                    member = governance.is_member(proposal, donor)
                    if member and donor not in proposal.votes:
                        if rng.random() < config.suggest_prob and len(proposal.suggestions) < 6:
                            price = config.suggested_price + (
                                len(proposal.suggestions) * config.suggested_price // 10
                            )
                            submit(
                                "SuggestPrice", donor, {"proposal_id": pid, "price": price}
                            )
                        elif rng.random() < config.vote_prob:
                            pick = rng.randrange(len(proposal.suggestions))
                            submit(
                                "Vote",
                                donor,
                                {
                                    "proposal_id": pid,
                                    "suggestion_id": proposal.suggestions[pick].suggestion_id,
                                },
                            )

                balance = domain.balance_of(donor, "likoin")
                if balance > 0 and rng.random() < config.convert_prob:
                    amount = max(1, balance // 2)
                    result = submit(
                        "Convert", donor, {"beneficiary": b, "amount": amount}
                    )
                    conversions += 1
                    for event in result.events:
                        if event.kind == "Distributed":
                            bucket = distributed_in_step[b]
                            recipient = event.payload["recipient"]
                            bucket[recipient] = (
                                bucket.get(recipient, 0) + event.payload["amount"]
                            )

                artifact_ready = next(
                    (
                        a
                        for a in state.artifacts.values()
                        if a.beneficiary == b and a.state == "on_sale"
                    ),
                    None,
                )
                if (
                    artifact_ready is not None
                    and rng.random() < config.buy_prob
                    and domain.balance_of(donor, "buck") >= artifact_ready.price
                ):
                    submit("BuyArtifact", donor, {"artifact_id": artifact_ready.artifact_id})

        for b in beneficiaries:
            pid = proposals[b]
            if (
                pid is not None
                and state.proposals[pid].status == "open"
                and ts >= state.proposals[pid].min_close_at
            ):
                submit("Finalize", b, {"proposal_id": pid})

        for b in beneficiaries:
            domain = state.domains[b]
            campaign = state.campaigns[b]
            sold = sum(
                a.sold for a in state.artifacts.values() if a.beneficiary == b
            )
            received = distributed_in_step[b]
            yields = [
                Fraction(received.get(holder, 0), bal)
                for holder, bal in prev_balances[b].items()
                if bal > 0
            ]
            mean_yield = float(sum(yields) / len(yields)) if yields else 0.0
            metrics.append(
                {
                    "step": step,
                    "beneficiary": b,
                    "total_raised": campaign.total_raised,
                    "likoin_total": domain.likoin_total,
                    "buck_total": domain.buck_total,
                    "escrow": campaign.escrow,
                    "artifacts_sold": sold,
                    "gini_likoin": round(gini(list(domain.likoin_balances.values())), 9),
                    "mean_holder_yield": round(mean_yield, 12),
                }
            )
            prev_balances[b] = dict(domain.likoin_balances)

    if isinstance(journal, FileJournal):
        journal.close()
    return ScenarioResult(
        config=config,
        engine=engine,
        metrics=metrics,
        journal_path=journal_path,
        conversions=conversions,
    )


def write_metrics_csv(metrics: list[dict], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=METRICS_HEADER)
        writer.writeheader()
        for row in metrics:
            writer.writerow(row)


def jeff_scenario() -> ScenarioConfig:
    """The artist fixture: one beneficiary, 200 donors, >= 100 units raised."""
    return ScenarioConfig(
        seed=7,
        n_donors=200,
        n_beneficiaries=1,
        steps=60,
        initial_deposit=ATTO,  # 1 currency unit per donor
        base_like_prob=0.85,
        herding_gain=0.002,
        convert_prob=0.12,
        buy_prob=0.08,
        suggest_prob=0.25,
        vote_prob=0.6,
        artifact_step=20,
        suggested_price=2 * ATTO,
        step_ms=1000,
        engine=EngineConfig(min_voting_period_ms=3000),
    )
