"""Operator and scripting front end.

Local mode (--journal) drives a file-backed engine directly; remote mode
(--server) talks to a running service over HTTP. The two are mutually
exclusive. Amounts are given in whole units with up to 18 decimal places
and converted exactly to atto-units; json output is deterministic for a
given journal.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction
from typing import Optional

import click

from . import views
from .analysis import analyze
from .config import EngineConfig
from .engine import default_start_campaign_payload
from .errors import LedgerError
from .journal import event_to_json, open_engine, replay
from .units import parse_units

EXIT_DOMAIN_ERROR = 1


class Cli:
    def __init__(self, journal, server, fmt, config_path, actor, secret, ts):
        if journal and server:
            raise click.UsageError("--journal and --server are mutually exclusive")
        self.journal = journal
        self.server = server
        self.fmt = fmt
        self.config = EngineConfig.from_file(config_path) if config_path else None
        self.actor = actor
        self.secret = secret
        self.ts = ts
        self._engine = None
        self._client = None
        self._token = None

    # -- local ------------------------------------------------------------

    def engine(self):
        if self.journal is None:
            raise click.UsageError("this command needs --journal (local mode)")
        if self._engine is None:
            self._engine = open_engine(self.journal, self.config)
        return self._engine

    def need_actor(self) -> str:
        if not self.actor:
            raise click.UsageError("--actor is required for this command")
        return self.actor

    def _local_submit(self, kind: str, payload: dict) -> dict:
        engine = self.engine()
        # logical time: stay at the last applied timestamp unless told otherwise
        ts = self.ts if self.ts is not None else engine.state.last_ts
        result = engine.submit(kind, self.need_actor(), payload, ts)
        return {
            "seq": result.seq,
            "events": [event_to_json(e) for e in result.events],
            "state_hash": engine.state_hash(),
        }

    # -- remote ------------------------------------------------------------

    def client(self):
        if self._client is None:
            import httpx

            self._client = httpx.Client(base_url=self.server, timeout=30.0)
        return self._client

    def token(self) -> str:
        if self._token is None:
            response = self.client().post(
                "/session",
                json={"account_id": self.need_actor(), "secret": self.secret or ""},
            )
            if response.status_code != 200:
                raise LedgerError(f"session rejected: {response.text}")
            self._token = response.json()["token"]
        return self._token

    def _remote(self, method: str, path: str, body=None, *, auth=True) -> dict:
        headers = {"authorization": f"Bearer {self.token()}"} if auth else {}
        response = self.client().request(method, path, json=body, headers=headers)
        data = response.json()
        if response.status_code >= 400:
            code = data.get("error", f"HTTP{response.status_code}")
            detail = data.get("detail", "")
            click.echo(f"error: {code}: {detail}", err=True)
            sys.exit(EXIT_DOMAIN_ERROR)
        return data

    # -- dispatch ------------------------------------------------------------

    def submit(self, kind: str, payload: dict, method: str, path: str, body=None) -> None:
        if self.server:
            self.emit(self._remote(method, path, body))
        else:
            self.emit(self._local_submit(kind, payload))

    def read(self, builder, method: str, path: str) -> None:
        if self.server:
            self.emit(self._remote(method, path, auth=False))
        else:
            view = builder(self.engine().state)
            if view is None:
                click.echo("error: NotFound", err=True)
                sys.exit(EXIT_DOMAIN_ERROR)
            self.emit(view)

    def emit(self, data: dict) -> None:
        if self.fmt == "json":
            click.echo(json.dumps(data, sort_keys=True, indent=2))
        else:
            _print_table(data)


def _print_table(data, indent: str = "") -> None:
    if isinstance(data, dict):
        for key, value in data.items():
            if isinstance(value, (dict, list)):
                click.echo(f"{indent}{key}:")
                _print_table(value, indent + "  ")
            else:
                click.echo(f"{indent}{key}: {value}")
    elif isinstance(data, list):
        for item in data:
            if isinstance(item, (dict, list)):
                click.echo(f"{indent}-")
                _print_table(item, indent + "  ")
            else:
                click.echo(f"{indent}- {item}")
    else:
        click.echo(f"{indent}{data}")


def _rate_pair(rate: Optional[str]) -> tuple[Optional[int], Optional[int]]:
    if rate is None:
        return None, None
    try:
        fraction = Fraction(rate)
    except (ValueError, ZeroDivisionError) as exc:
        raise click.UsageError(f"bad rate {rate!r}: {exc}")
    if fraction <= 0:
        raise click.UsageError("rate must be positive")
    return fraction.numerator, fraction.denominator


def _amount_arg(text: str) -> int:
    try:
        return parse_units(text)
    except LedgerError as exc:
        raise click.UsageError(str(exc))


@click.group()
@click.option("--journal", envvar="LIKESTARTER_JOURNAL", default=None,
              help="journal file path (local mode)")
@click.option("--server", default=None, help="service base URL (remote mode)")
@click.option("--format", "fmt", type=click.Choice(["table", "json"]), default="table")
@click.option("--config", "config_path", default=None,
              help="engine config JSON (genesis defaults, local mode)")
@click.option("--actor", default=None, help="acting account id")
@click.option("--secret", default=None, help="session secret (remote mode)")
@click.option("--ts", type=int, default=None, help="logical timestamp ms (local mode)")
@click.pass_context
def main(ctx, journal, server, fmt, config_path, actor, secret, ts):
    """LikeStarter: journaled two-token crowdfunding DAO."""
    ctx.obj = Cli(journal, server, fmt, config_path, actor, secret, ts)


def _wrap(fn):
    """Turn LedgerError into exit code 1 with the code name on stderr."""
    import functools

    @functools.wraps(fn)
    def inner(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except LedgerError as exc:
            click.echo(f"error: {exc.code}: {exc}", err=True)
            sys.exit(EXIT_DOMAIN_ERROR)

    return inner


# -- serve ------------------------------------------------------------------

@main.command()
@click.option("--listen", default="127.0.0.1:8000", show_default=True)
@click.option("--faucet", is_flag=True, default=False,
              help="enable POST /deposit (test currency source)")
@click.pass_obj
@_wrap
def serve(cli: Cli, listen, faucet):
    """Run the HTTP service over a journal."""
    from .service import run_server

    run_server(cli.engine(), listen, faucet=faucet)


# -- accounts ------------------------------------------------------------------

@main.group()
def account():
    """Account management."""


@account.command("create")
@click.argument("account_id")
@click.option("--account-secret", "account_secret", default="",
              help="session secret for the service")
@click.pass_obj
@_wrap
def account_create(cli: Cli, account_id, account_secret):
    if cli.server:
        cli.emit(
            cli._remote(
                "POST", "/accounts",
                {"id": account_id, "secret": account_secret}, auth=False,
            )
        )
    else:
        cli.actor = account_id
        cli.submit(
            "CreateAccount", {"id": account_id, "secret": account_secret}, "POST", "/accounts"
        )


@main.command()
@click.option("--amount", required=True, help="currency, whole units")
@click.pass_obj
@_wrap
def deposit(cli: Cli, amount):
    """Credit currency to the acting account (test faucet)."""
    atto = _amount_arg(amount)
    cli.submit("Deposit", {"amount": atto}, "POST", "/deposit", {"amount": str(atto)})


# -- campaign ------------------------------------------------------------------

@main.group()
def campaign():
    """Campaign lifecycle."""


@campaign.command("start")
@click.option("--rate", default=None,
              help="Likoin minted per currency unit (decimal or fraction)")
@click.option("--like-price", default=None, help="currency per like, whole units")
@click.option("--buck-rate", type=int, default=None, help="Bucks per converted Likoin")
@click.pass_obj
@_wrap
def campaign_start(cli: Cli, rate, like_price, buck_rate):
    num, den = _rate_pair(rate)
    price = _amount_arg(like_price) if like_price is not None else None
    if cli.server:
        body = {}
        if num is not None:
            body["likoin_rate_num"] = str(num)
            body["likoin_rate_den"] = str(den)
        if price is not None:
            body["like_price"] = str(price)
        if buck_rate is not None:
            body["buck_rate"] = str(buck_rate)
        cli.emit(cli._remote("POST", "/campaigns", body))
    else:
        config = cli.engine().config
        payload = default_start_campaign_payload(
            config,
            {
                "likoin_rate_num": num,
                "likoin_rate_den": den,
                "like_price": price,
                "buck_rate": buck_rate,
            },
        )
        cli.submit("StartCampaign", payload, "POST", "/campaigns")


@campaign.command("close")
@click.argument("beneficiary", required=False)
@click.pass_obj
@_wrap
def campaign_close(cli: Cli, beneficiary):
    target = beneficiary or cli.need_actor()
    cli.submit(
        "CloseCampaign", {"beneficiary": target}, "DELETE", f"/campaigns/{target}"
    )


@campaign.command("status")
@click.argument("beneficiary")
@click.pass_obj
@_wrap
def campaign_status(cli: Cli, beneficiary):
    cli.read(
        lambda state: views.campaign_view(state, beneficiary),
        "GET",
        f"/campaigns/{beneficiary}",
    )


# -- posts ------------------------------------------------------------------

@main.group()
def post():
    """Posts and likes."""


@post.command("create")
@click.option("--content-ref", required=True)
@click.pass_obj
@_wrap
def post_create(cli: Cli, content_ref):
    cli.submit(
        "CreatePost", {"content_ref": content_ref},
        "POST", "/posts", {"content_ref": content_ref},
    )


@post.command("like")
@click.argument("post_id")
@click.pass_obj
@_wrap
def post_like(cli: Cli, post_id):
    cli.submit("LikePost", {"post_id": post_id}, "POST", f"/posts/{post_id}/like")


@main.command()
@click.option("--to", "beneficiary", required=True)
@click.option("--amount", required=True, help="currency, whole units")
@click.pass_obj
@_wrap
def donate(cli: Cli, beneficiary, amount):
    """Make a free donation to a beneficiary."""
    atto = _amount_arg(amount)
    cli.submit(
        "Donate",
        {"beneficiary": beneficiary, "amount": atto},
        "POST", "/donations",
        {"beneficiary": beneficiary, "amount": str(atto)},
    )


# -- tokens ------------------------------------------------------------------

@main.command()
@click.option("--beneficiary", required=True, help="token domain")
@click.option("--to", "recipient", required=True)
@click.option("--amount", required=True, help="Likoin, whole units")
@click.option("--from", "owner", default=None,
              help="owner account for a delegated transfer")
@click.pass_obj
@_wrap
def transfer(cli: Cli, beneficiary, recipient, amount, owner):
    """Transfer Likoins (optionally from an approving owner)."""
    atto = _amount_arg(amount)
    body = {"beneficiary": beneficiary, "to": recipient, "amount": str(atto)}
    if owner:
        body["from"] = owner
        cli.submit(
            "TransferFrom",
            {"beneficiary": beneficiary, "owner": owner, "to": recipient, "amount": atto},
            "POST", "/transfers", body,
        )
    else:
        cli.submit(
            "TransferLikoin",
            {"beneficiary": beneficiary, "to": recipient, "amount": atto},
            "POST", "/transfers", body,
        )


@main.command()
@click.option("--beneficiary", required=True)
@click.option("--spender", required=True)
@click.option("--amount", required=True, help="Likoin, whole units (0 clears)")
@click.pass_obj
@_wrap
def approve(cli: Cli, beneficiary, spender, amount):
    """Allow another account to spend your Likoins."""
    atto = _amount_arg(amount)
    cli.submit(
        "Approve",
        {"beneficiary": beneficiary, "spender": spender, "amount": atto},
        "POST", "/approvals",
        {"beneficiary": beneficiary, "spender": spender, "amount": str(atto)},
    )


@main.command()
@click.option("--beneficiary", required=True)
@click.option("--amount", required=True, help="Likoin to convert, whole units")
@click.pass_obj
@_wrap
def convert(cli: Cli, beneficiary, amount):
    """Convert Likoins to Bucks (irreversible, redistributes the Likoins)."""
    atto = _amount_arg(amount)
    cli.submit(
        "Convert",
        {"beneficiary": beneficiary, "amount": atto},
        "POST", "/conversions",
        {"beneficiary": beneficiary, "amount": str(atto)},
    )


# -- artifacts ------------------------------------------------------------------

@main.group()
def artifact():
    """Artifact marketplace."""


@artifact.command("propose")
@click.option("--title", required=True)
@click.option("--description", default="")
@click.option("--content-ref", default="")
@click.option("--price", required=True, help="suggested price in Bucks, whole units")
@click.option("--supply-limit", type=int, default=None)
@click.pass_obj
@_wrap
def artifact_propose(cli: Cli, title, description, content_ref, price, supply_limit):
    atto = _amount_arg(price)
    payload = {
        "title": title,
        "description": description,
        "content_ref": content_ref,
        "suggested_price": atto,
        "supply_limit": supply_limit,
    }
    body = dict(payload, suggested_price=str(atto))
    if supply_limit is not None:
        body["supply_limit"] = str(supply_limit)
    cli.submit("ProposeArtifact", payload, "POST", "/artifacts", body)


@artifact.command("buy")
@click.argument("artifact_id")
@click.pass_obj
@_wrap
def artifact_buy(cli: Cli, artifact_id):
    cli.submit(
        "BuyArtifact", {"artifact_id": artifact_id},
        "POST", f"/artifacts/{artifact_id}/buy",
    )


@artifact.command("list")
@click.argument("beneficiary")
@click.pass_obj
@_wrap
def artifact_list(cli: Cli, beneficiary):
    cli.read(
        lambda state: views.artifact_list_view(state, beneficiary),
        "GET",
        f"/artifacts?beneficiary={beneficiary}",
    )


@artifact.command("remove")
@click.argument("artifact_id")
@click.pass_obj
@_wrap
def artifact_remove(cli: Cli, artifact_id):
    cli.submit(
        "RemoveArtifact", {"artifact_id": artifact_id},
        "DELETE", f"/artifacts/{artifact_id}",
    )


# -- proposals ------------------------------------------------------------------

@main.group()
def proposal():
    """Price governance."""


@proposal.command("suggest")
@click.argument("proposal_id")
@click.option("--price", required=True, help="Bucks, whole units")
@click.pass_obj
@_wrap
def proposal_suggest(cli: Cli, proposal_id, price):
    atto = _amount_arg(price)
    cli.submit(
        "SuggestPrice",
        {"proposal_id": proposal_id, "price": atto},
        "POST", f"/proposals/{proposal_id}/suggestions",
        {"price": str(atto)},
    )


@proposal.command("vote")
@click.argument("proposal_id")
@click.option("--suggestion", "suggestion_id", required=True)
@click.pass_obj
@_wrap
def proposal_vote(cli: Cli, proposal_id, suggestion_id):
    cli.submit(
        "Vote",
        {"proposal_id": proposal_id, "suggestion_id": suggestion_id},
        "POST", f"/proposals/{proposal_id}/votes",
        {"suggestion_id": suggestion_id},
    )


@proposal.command("finalize")
@click.argument("proposal_id")
@click.pass_obj
@_wrap
def proposal_finalize(cli: Cli, proposal_id):
    cli.submit(
        "Finalize", {"proposal_id": proposal_id},
        "POST", f"/proposals/{proposal_id}/finalize",
    )


@proposal.command("show")
@click.argument("proposal_id")
@click.pass_obj
@_wrap
def proposal_show(cli: Cli, proposal_id):
    cli.read(
        lambda state: views.proposal_view(state, proposal_id),
        "GET",
        f"/proposals/{proposal_id}",
    )


# -- reads / maintenance ------------------------------------------------------

@main.command()
@click.argument("account_id")
@click.option("--beneficiary", default=None)
@click.pass_obj
@_wrap
def balance(cli: Cli, account_id, beneficiary):
    """Show currency, Likoin and Buck balances."""
    query = f"?beneficiary={beneficiary}" if beneficiary else ""
    cli.read(
        lambda state: views.balances_view(state, account_id, beneficiary),
        "GET",
        f"/balances/{account_id}{query}",
    )


@main.command("verify-journal")
@click.pass_obj
@_wrap
def verify_journal(cli: Cli):
    """Replay the journal and recompute every invariant over its history."""
    if cli.journal is None:
        raise click.UsageError("verify-journal needs --journal")
    report = analyze(cli.journal)
    if report.violations:
        for v in report.violations[:20]:
            click.echo(f"VIOLATION seq={v.seq} {v.invariant}: {v.detail}", err=True)
        sys.exit(EXIT_DOMAIN_ERROR)
    click.echo(f"OK {report.final_hash}")


@main.command("hash-state")
@click.pass_obj
@_wrap
def hash_state(cli: Cli):
    """Print the state hash obtained by replaying the journal."""
    if cli.journal is None:
        raise click.UsageError("hash-state needs --journal")
    _, digest = replay(cli.journal)
    click.echo(digest)


# -- sim ------------------------------------------------------------------

@main.group()
def sim():
    """Agent-based scenario runner."""


@sim.command("run")
@click.option("--config", "scenario_path", default=None,
              help="scenario config JSON; defaults to the artist fixture")
@click.option("--out", "out_dir", required=True, help="output directory")
@click.option("--seed", type=int, default=None, help="override the config seed")
@click.option("--figures/--no-figures", default=True, show_default=True)
@click.pass_obj
@_wrap
def sim_run(cli: Cli, scenario_path, out_dir, seed, figures):
    """Run a scenario: journal, metrics CSV, report and figures."""
    import os

    from .report import render_figures
    from .sim import ScenarioConfig, jeff_scenario, run_scenario, write_metrics_csv

    if scenario_path:
        config = ScenarioConfig.from_file(scenario_path)
    else:
        config = jeff_scenario()
    if seed is not None:
        config = ScenarioConfig.from_dict(dict(config.to_dict(), seed=seed))

    os.makedirs(out_dir, exist_ok=True)
    journal_path = os.path.join(out_dir, "journal.jsonl")
    if os.path.exists(journal_path):
        raise click.UsageError(f"{journal_path} already exists")
    result = run_scenario(config, journal_path)
    metrics_path = os.path.join(out_dir, "metrics.csv")
    write_metrics_csv(result.metrics, metrics_path)

    analysis = analyze(journal_path)
    summary = {
        "scenario": config.to_dict(),
        "rng": "python-random-mt19937",
        "envelopes": analysis.envelopes,
        "conversions": analysis.conversions,
        "violations": [
            {"seq": v.seq, "invariant": v.invariant, "detail": v.detail}
            for v in analysis.violations
        ],
        "state_hash": analysis.final_hash,
        "metrics_csv": metrics_path,
        "journal": journal_path,
    }
    with open(os.path.join(out_dir, "report.json"), "w", encoding="utf-8") as fh:
        json.dump(summary, fh, sort_keys=True, indent=2)
        fh.write("\n")
    if figures:
        from .report import read_metrics_csv

        summary["figures"] = render_figures(read_metrics_csv(metrics_path), out_dir)
    cli.emit(summary)
    if analysis.violations:
        sys.exit(EXIT_DOMAIN_ERROR)


if __name__ == "__main__":
    main()
