import pytest
from fastapi.testclient import TestClient

from likestarter.config import EngineConfig
from likestarter.engine import Engine
from likestarter.journal import MemoryJournal
from likestarter.engine import replay_envelopes
from likestarter.service import create_app
from likestarter.units import ATTO


@pytest.fixture
def client():
    config = EngineConfig(min_voting_period_ms=0)
    engine = Engine(config, MemoryJournal(config))
    app = create_app(engine, faucet=True)
    with TestClient(app) as c:
        c.engine = engine
        yield c


def register(client, account_id, secret="pw"):
    response = client.post("/accounts", json={"id": account_id, "secret": secret})
    assert response.status_code == 200, response.text
    session = client.post("/session", json={"account_id": account_id, "secret": secret})
    assert session.status_code == 200
    return {"authorization": f"Bearer {session.json()['token']}"}


def setup_campaign(client):
    jeff = register(client, "jeff")
    dana = register(client, "dana")
    assert (
        client.post("/deposit", json={"amount": str(200 * ATTO)}, headers=dana).status_code
        == 200
    )
    assert client.post("/campaigns", json={}, headers=jeff).status_code == 200
    post = client.post("/posts", json={"content_ref": "song://x"}, headers=jeff)
    post_id = post.json()["events"][0]["payload"]["post_id"]
    return jeff, dana, post_id


def test_like_flow_end_to_end(client):
    jeff, dana, post_id = setup_campaign(client)
    response = client.post(f"/posts/{post_id}/like", headers=dana)
    assert response.status_code == 200
    body = response.json()
    kinds = [e["kind"] for e in body["events"]]
    assert kinds == ["Donated", "Minted"]
    assert body["events"][1]["payload"]["amount"] == str(10 * ATTO)

    balances = client.get("/balances/dana?beneficiary=jeff").json()
    assert balances["likoin"] == str(10 * ATTO)
    # engine oracle: the reported hash is the live state hash
    assert body["state_hash"] == client.engine.state_hash()


def test_mutations_require_session(client):
    setup_campaign(client)
    assert client.post("/posts/post-000001/like").status_code == 401
    assert client.post("/donations", json={"beneficiary": "jeff", "amount": "1"}).status_code == 401
    bad = {"authorization": "Bearer bogus"}
    assert client.post("/donations", json={"beneficiary": "jeff", "amount": "1"}, headers=bad).status_code == 401


def test_session_requires_secret(client):
    register(client, "jeff", secret="right")
    response = client.post("/session", json={"account_id": "jeff", "secret": "wrong"})
    assert response.status_code == 401


def test_hundred_unit_fixture_reads_back_exactly(client):
    jeff, dana, post_id = setup_campaign(client)
    assert client.post(f"/posts/{post_id}/like", headers=dana).status_code == 200
    donation = str(100 * ATTO - 10**16)  # tops raised up to exactly 100
    assert (
        client.post("/donations", json={"beneficiary": "jeff", "amount": donation}, headers=dana).status_code
        == 200
    )
    page = client.get("/users/jeff").json()
    assert page["campaign"]["total_raised"] == "100000000000000000000"


def test_error_statuses(client):
    jeff, dana, post_id = setup_campaign(client)
    # 409 domain error with machine-readable code
    response = client.post(
        "/conversions", json={"beneficiary": "jeff", "amount": "5"}, headers=dana
    )
    assert response.status_code == 409
    assert response.json()["error"] == "InsufficientBalance"
    # 400 malformed amount
    response = client.post(
        "/donations", json={"beneficiary": "jeff", "amount": "1.5"}, headers=dana
    )
    assert response.status_code == 400
    # 403 authorization
    response = client.delete("/campaigns/jeff", headers=dana)
    assert response.status_code == 403
    assert response.json()["error"] == "NotAuthorized"
    # 404 unknown read
    assert client.get("/campaigns/ghost").status_code == 404
    # failed mutations leave the state hash unchanged
    digest = client.engine.state_hash()
    client.post("/conversions", json={"beneficiary": "jeff", "amount": "5"}, headers=dana)
    assert client.engine.state_hash() == digest


def test_faucet_flag_gates_deposit():
    config = EngineConfig()
    engine = Engine(config, MemoryJournal(config))
    with TestClient(create_app(engine, faucet=False)) as client:
        headers = register(client, "dana")
        response = client.post("/deposit", json={"amount": "1"}, headers=headers)
        assert response.status_code == 403


def test_full_marketplace_flow(client):
    jeff, dana, post_id = setup_campaign(client)
    client.post("/donations", json={"beneficiary": "jeff", "amount": str(ATTO)}, headers=dana)
    response = client.post(
        "/artifacts",
        json={"title": "single", "suggested_price": str(50 * ATTO)},
        headers=jeff,
    )
    proposal_id = response.json()["events"][1]["payload"]["proposal_id"]

    response = client.post(
        f"/proposals/{proposal_id}/suggestions",
        json={"price": str(40 * ATTO)},
        headers=dana,
    )
    assert response.status_code == 200
    suggestion_id = response.json()["events"][0]["payload"]["suggestion_id"]
    assert (
        client.post(
            f"/proposals/{proposal_id}/votes",
            json={"suggestion_id": suggestion_id},
            headers=dana,
        ).status_code
        == 200
    )
    response = client.post(f"/proposals/{proposal_id}/finalize", headers=jeff)
    assert response.json()["events"][0]["payload"]["price"] == str(40 * ATTO)

    assert (
        client.post(
            "/conversions",
            json={"beneficiary": "jeff", "amount": str(60 * ATTO)},
            headers=dana,
        ).status_code
        == 200
    )
    response = client.post("/artifacts/artifact-000001/buy", headers=dana)
    assert response.status_code == 200
    view = client.get("/artifacts/artifact-000001").json()
    assert view["sold"] == 1
    assert view["owners"] == {"dana": 1}

    proposal = client.get(f"/proposals/{proposal_id}").json()
    assert proposal["status"] == "finalized"
    assert proposal["outcome"]["price"] == str(40 * ATTO)


def test_feed_ordering(client):
    jeff, dana, post1 = setup_campaign(client)
    post2 = client.post("/posts", json={"content_ref": "y"}, headers=jeff).json()[
        "events"
    ][0]["payload"]["post_id"]
    client.post(f"/posts/{post2}/like", headers=dana)
    feed = client.get("/feed").json()["entries"]
    assert [e["post_id"] for e in feed] == [post2, post1]  # liked post ranks first
    assert feed[0]["like_count"] == 1


def test_read_your_writes_and_replay(client):
    jeff, dana, post_id = setup_campaign(client)
    body = client.post(f"/posts/{post_id}/like", headers=dana).json()
    # immediately visible
    assert client.get("/feed").json()["entries"][0]["like_count"] == 1
    # replaying the journal reproduces the reported hash
    engine = client.engine
    _, digest = replay_envelopes(engine.journal.read(), engine.config)
    assert digest == body["state_hash"]


def test_transfers_endpoint_handles_delegation(client):
    jeff, dana, post_id = setup_campaign(client)
    eli = register(client, "eli")
    client.post("/donations", json={"beneficiary": "jeff", "amount": str(ATTO)}, headers=dana)
    assert (
        client.post(
            "/approvals",
            json={"beneficiary": "jeff", "spender": "eli", "amount": str(100 * ATTO)},
            headers=dana,
        ).status_code
        == 200
    )
    response = client.post(
        "/transfers",
        json={
            "beneficiary": "jeff",
            "from": "dana",
            "to": "eli",
            "amount": str(60 * ATTO),
        },
        headers=eli,
    )
    assert response.status_code == 200
    assert response.json()["events"][0]["payload"]["spender"] == "eli"
    balances = client.get("/balances/eli?beneficiary=jeff").json()
    assert balances["likoin"] == str(60 * ATTO)
