import pytest

from likestarter.config import EngineConfig
from likestarter.engine import Engine, default_start_campaign_payload
from likestarter.journal import MemoryJournal
from likestarter.units import ATTO

# computed once from the empty state and frozen; any canonical-form change
# must be deliberate and re-pinned
GENESIS_HASH = "89429247c4e26d331e3f664321b7fa7128ea10927455f47ad05b922d62843ced"


class World:
    """A thin driver around an engine for building test scenarios."""

    def __init__(self, config=None):
        self.config = config or EngineConfig()
        self.journal = MemoryJournal(self.config)
        self.engine = Engine(self.config, self.journal)
        self.ts = 0

    @property
    def state(self):
        return self.engine.state

    def submit(self, kind, actor, payload, ts=None):
        if ts is not None:
            self.ts = ts
        return self.engine.submit(kind, actor, payload, self.ts)

    def account(self, account_id, secret=""):
        return self.submit("CreateAccount", account_id, {"id": account_id, "secret": secret})

    def fund(self, account_id, amount):
        return self.submit("Deposit", account_id, {"amount": amount})

    def campaign(self, beneficiary, **overrides):
        payload = default_start_campaign_payload(self.config, overrides)
        return self.submit("StartCampaign", beneficiary, payload)

    def post(self, beneficiary, content_ref="content://post"):
        result = self.submit("CreatePost", beneficiary, {"content_ref": content_ref})
        return result.events[0].payload["post_id"]

    def donate(self, donor, beneficiary, amount, ts=None):
        return self.submit(
            "Donate", donor, {"beneficiary": beneficiary, "amount": amount}, ts
        )

    def propose(self, beneficiary, price, supply_limit=None, title="artifact"):
        result = self.submit(
            "ProposeArtifact",
            beneficiary,
            {
                "title": title,
                "description": "",
                "content_ref": "",
                "suggested_price": price,
                "supply_limit": supply_limit,
            },
        )
        return (
            result.events[0].payload["artifact_id"],
            result.events[1].payload["proposal_id"],
        )


@pytest.fixture
def world():
    return World()


@pytest.fixture
def funded_world():
    """jeff runs a campaign; dana and eli each hold currency."""
    w = World()
    for account in ("jeff", "dana", "eli"):
        w.account(account)
    w.fund("dana", 1000 * ATTO)
    w.fund("eli", 1000 * ATTO)
    w.campaign("jeff")
    return w
