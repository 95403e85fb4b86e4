"""HTTP facade over the engine.

Adds no ledger semantics: every mutating endpoint builds one envelope,
funnels it through the single-writer engine lock and reports
{seq, events, state_hash}. Reads serve consistent snapshots. Amounts cross
the wire as decimal strings of atto-units, never floating point.

Authentication is a bearer session token obtained from POST /session with
the secret set at account creation; this stands in for the wallet signing
flow and lives entirely outside ledger state.
"""

from __future__ import annotations

import secrets as _secrets
import threading
import time
from hmac import compare_digest
from typing import Optional

from fastapi import Body, FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import views
from .engine import Engine, default_start_campaign_payload
from .errors import (
    CorruptJournal,
    IoError,
    LedgerError,
    MalformedEnvelope,
    NotAuthorized,
    NotBeneficiary,
    Overflow,
    ValidationError,
    ZeroAmount,
    ZeroParameter,
    ZeroPrice,
)
from .units import parse_atto

BAD_REQUEST = (MalformedEnvelope, ValidationError, Overflow, ZeroAmount, ZeroParameter, ZeroPrice)
FORBIDDEN = (NotBeneficiary, NotAuthorized)
SERVER_ERROR = (IoError, CorruptJournal)


def _status_for(exc: LedgerError) -> int:
    if isinstance(exc, BAD_REQUEST):
        return 400
    if isinstance(exc, FORBIDDEN):
        return 403
    if isinstance(exc, SERVER_ERROR):
        return 500
    return 409


def _event_json(event) -> dict:
    from .journal import event_to_json

    return event_to_json(event)


def _req_str(body: dict, field: str) -> str:
    value = body.get(field)
    if not isinstance(value, str) or not value:
        raise MalformedEnvelope(f"field {field!r} must be a non-empty string")
    return value


def _req_amount(body: dict, field: str) -> int:
    value = body.get(field)
    if not isinstance(value, str):
        raise MalformedEnvelope(f"field {field!r} must be a decimal string of atto-units")
    return parse_atto(value)


def _opt_amount(body: dict, field: str) -> Optional[int]:
    if body.get(field) is None:
        return None
    return _req_amount(body, field)


class Sessions:
    def __init__(self):
        self._by_token: dict[str, str] = {}

    def create(self, account_id: str) -> str:
        token = _secrets.token_hex(16)
        self._by_token[token] = account_id
        return token

    def resolve(self, request: Request) -> Optional[str]:
        header = request.headers.get("authorization", "")
        if not header.lower().startswith("bearer "):
            return None
        return self._by_token.get(header[7:].strip())


def create_app(engine: Engine, *, faucet: bool = False) -> FastAPI:
    app = FastAPI(title="likestarter", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions = Sessions()
    lock = threading.Lock()
    app.state.engine = engine

    @app.exception_handler(LedgerError)
    async def ledger_error_handler(request: Request, exc: LedgerError):
        return JSONResponse(
            status_code=_status_for(exc),
            content={"error": exc.code, "detail": str(exc)},
        )

    @app.exception_handler(RequestValidationError)
    async def validation_handler(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={"error": "MalformedEnvelope", "detail": str(exc)},
        )

    def submit(kind: str, actor: str, payload: dict) -> dict:
        with lock:
            ts = max(engine.state.last_ts, int(time.time() * 1000))
            result = engine.submit(kind, actor, payload, ts)
            digest = engine.state_hash()
        return {
            "seq": result.seq,
            "events": [_event_json(e) for e in result.events],
            "state_hash": digest,
        }

    def authed(request: Request) -> str:
        account = sessions.resolve(request)
        if account is None:
            raise _Unauthorized()
        return account

    class _Unauthorized(Exception):
        pass

    @app.exception_handler(_Unauthorized)
    async def unauthorized_handler(request: Request, exc: _Unauthorized):
        return JSONResponse(
            status_code=401,
            content={"error": "Unauthorized", "detail": "missing or invalid session"},
        )

    # -- accounts and sessions -------------------------------------------

    @app.post("/accounts")
    def create_account(body: dict = Body(...)):
        account_id = _req_str(body, "id")
        secret = body.get("secret", "")
        if not isinstance(secret, str):
            raise MalformedEnvelope("field 'secret' must be a string")
        return submit(
            "CreateAccount", account_id, {"id": account_id, "secret": secret}
        )

    @app.post("/session")
    def create_session(body: dict = Body(...)):
        account_id = _req_str(body, "account_id")
        secret = body.get("secret", "")
        with lock:
            account = engine.state.accounts.get(account_id)
            ok = account is not None and compare_digest(account.secret, secret)
        if not ok:
            raise _Unauthorized()
        return {"token": sessions.create(account_id), "account_id": account_id}

    @app.post("/deposit")
    def deposit(request: Request, body: dict = Body(...)):
        actor = authed(request)
        if not faucet:
            raise NotAuthorized("faucet deposits are disabled")
        return submit("Deposit", actor, {"amount": _req_amount(body, "amount")})

    # -- campaigns ----------------------------------------------------------

    @app.post("/campaigns")
    def start_campaign(request: Request, body: dict = Body(default={})):
        actor = authed(request)
        overrides = {
            "likoin_rate_num": _opt_amount(body, "likoin_rate_num"),
            "likoin_rate_den": _opt_amount(body, "likoin_rate_den"),
            "like_price": _opt_amount(body, "like_price"),
            "buck_rate": _opt_amount(body, "buck_rate"),
        }
        payload = default_start_campaign_payload(engine.config, overrides)
        return submit("StartCampaign", actor, payload)

    @app.delete("/campaigns/{beneficiary}")
    def close_campaign(request: Request, beneficiary: str):
        actor = authed(request)
        return submit("CloseCampaign", actor, {"beneficiary": beneficiary})

    @app.post("/campaigns/{beneficiary}/withdraw")
    def withdraw(request: Request, beneficiary: str, body: dict = Body(...)):
        actor = authed(request)
        return submit(
            "WithdrawFunds",
            actor,
            {"beneficiary": beneficiary, "amount": _req_amount(body, "amount")},
        )

    # -- posts, likes, donations -------------------------------------------

    @app.post("/posts")
    def create_post(request: Request, body: dict = Body(...)):
        actor = authed(request)
        return submit("CreatePost", actor, {"content_ref": _req_str(body, "content_ref")})

    @app.post("/posts/{post_id}/like")
    def like_post(request: Request, post_id: str):
        actor = authed(request)
        return submit("LikePost", actor, {"post_id": post_id})

    @app.post("/donations")
    def donate(request: Request, body: dict = Body(...)):
        actor = authed(request)
        return submit(
            "Donate",
            actor,
            {
                "beneficiary": _req_str(body, "beneficiary"),
                "amount": _req_amount(body, "amount"),
            },
        )

    # -- tokens ----------------------------------------------------------

    @app.post("/transfers")
    def transfer(request: Request, body: dict = Body(...)):
        actor = authed(request)
        beneficiary = _req_str(body, "beneficiary")
        amount = _req_amount(body, "amount")
        to = _req_str(body, "to")
        owner = body.get("from")
        if owner is not None and owner != actor:
            # delegated transfer: the session account spends its allowance
            return submit(
                "TransferFrom",
                actor,
                {"beneficiary": beneficiary, "owner": owner, "to": to, "amount": amount},
            )
        return submit(
            "TransferLikoin",
            actor,
            {"beneficiary": beneficiary, "to": to, "amount": amount},
        )

    @app.post("/approvals")
    def approve(request: Request, body: dict = Body(...)):
        actor = authed(request)
        value = body.get("amount")
        if not isinstance(value, str):
            raise MalformedEnvelope("field 'amount' must be a decimal string")
        return submit(
            "Approve",
            actor,
            {
                "beneficiary": _req_str(body, "beneficiary"),
                "spender": _req_str(body, "spender"),
                "amount": parse_atto(value),
            },
        )

    @app.post("/conversions")
    def convert(request: Request, body: dict = Body(...)):
        actor = authed(request)
        return submit(
            "Convert",
            actor,
            {
                "beneficiary": _req_str(body, "beneficiary"),
                "amount": _req_amount(body, "amount"),
            },
        )

    # -- artifacts ----------------------------------------------------------

    @app.post("/artifacts")
    def propose_artifact(request: Request, body: dict = Body(...)):
        actor = authed(request)
        return submit(
            "ProposeArtifact",
            actor,
            {
                "title": _req_str(body, "title"),
                "description": body.get("description", ""),
                "content_ref": body.get("content_ref", ""),
                "suggested_price": _req_amount(body, "suggested_price"),
                "supply_limit": _opt_amount(body, "supply_limit"),
            },
        )

    @app.delete("/artifacts/{artifact_id}")
    def remove_artifact(request: Request, artifact_id: str):
        actor = authed(request)
        return submit("RemoveArtifact", actor, {"artifact_id": artifact_id})

    @app.post("/artifacts/{artifact_id}/buy")
    def buy_artifact(request: Request, artifact_id: str):
        actor = authed(request)
        return submit("BuyArtifact", actor, {"artifact_id": artifact_id})

    # -- governance ---------------------------------------------------------

    @app.post("/proposals/{proposal_id}/suggestions")
    def suggest(request: Request, proposal_id: str, body: dict = Body(...)):
        actor = authed(request)
        return submit(
            "SuggestPrice",
            actor,
            {"proposal_id": proposal_id, "price": _req_amount(body, "price")},
        )

    @app.post("/proposals/{proposal_id}/votes")
    def vote(request: Request, proposal_id: str, body: dict = Body(...)):
        actor = authed(request)
        return submit(
            "Vote",
            actor,
            {
                "proposal_id": proposal_id,
                "suggestion_id": _req_str(body, "suggestion_id"),
            },
        )

    @app.post("/proposals/{proposal_id}/finalize")
    def finalize(request: Request, proposal_id: str):
        actor = authed(request)
        return submit("Finalize", actor, {"proposal_id": proposal_id})

    # -- reads ----------------------------------------------------------

    def _not_found(code: str, detail: str) -> JSONResponse:
        return JSONResponse(status_code=404, content={"error": code, "detail": detail})

    @app.get("/feed")
    def feed(limit: int = Query(default=50, ge=1, le=500), offset: int = Query(default=0, ge=0)):
        with lock:
            return views.feed_view(engine.state, limit, offset)

    @app.get("/users/{account_id}")
    def user_page(account_id: str):
        with lock:
            view = views.user_view(engine.state, account_id)
        return view if view is not None else _not_found("UnknownAccount", account_id)

    @app.get("/campaigns/{beneficiary}")
    def campaign(beneficiary: str):
        with lock:
            view = views.campaign_view(engine.state, beneficiary)
        return view if view is not None else _not_found("NoCampaign", beneficiary)

    @app.get("/artifacts/{artifact_id}")
    def artifact(artifact_id: str):
        with lock:
            view = views.artifact_view(engine.state, artifact_id)
        return view if view is not None else _not_found("UnknownArtifact", artifact_id)

    @app.get("/artifacts")
    def artifact_list(beneficiary: str = Query(...)):
        with lock:
            return views.artifact_list_view(engine.state, beneficiary)

    @app.get("/proposals/{proposal_id}")
    def proposal(proposal_id: str):
        with lock:
            view = views.proposal_view(engine.state, proposal_id)
        return view if view is not None else _not_found("UnknownProposal", proposal_id)

    @app.get("/balances/{account_id}")
    def balances(account_id: str, beneficiary: Optional[str] = Query(default=None)):
        with lock:
            return views.balances_view(engine.state, account_id, beneficiary)

    @app.get("/state/hash")
    def state_digest():
        with lock:
            return {"state_hash": engine.state_hash(), "seq": engine.state.last_seq}

    return app


def run_server(
    engine: Engine, listen: str = "127.0.0.1:8000", *, faucet: bool = False
) -> None:
    import uvicorn

    host, _, port = listen.partition(":")
    app = create_app(engine, faucet=faucet)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port or 8000), log_level="warning")
