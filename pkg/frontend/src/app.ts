/**
 * The single-page client: hash-routed views over the likestarter service.
 * Only committed state is rendered — every mutation round-trips to the
 * service and re-fetches what it changed before updating the DOM.
 */

import { ApiClient, ApiError, type PostView } from "./api.js";
import { clear, h } from "./dom.js";
import { ClientSession } from "./session.js";
import { renderArtistPage } from "./views/artist.js";
import { renderDonationDialog } from "./views/donation.js";
import { renderFeed } from "./views/feed.js";
import { renderProposalForm } from "./views/proposal-form.js";
import { renderArtifactShop } from "./views/shop.js";
import { renderVotingPanel } from "./views/voting.js";
import { renderWalletPanel } from "./views/wallet.js";

export class App {
  readonly session: ClientSession;
  readonly root: HTMLElement;
  readonly main: HTMLElement;
  readonly dialog: HTMLElement;
  readonly status: HTMLElement;

  constructor(readonly api: ApiClient, root: HTMLElement) {
    this.session = new ClientSession(api);
    this.root = root;
    this.status = h("div", { class: "status-bar" });
    this.main = h("main", { class: "view" });
    this.dialog = h("div", { class: "dialog-host" });
    root.append(this.status, this.main, this.dialog);
  }

  note(message: string): void {
    clear(this.status).append(message);
  }

  fail(error: unknown): void {
    const message =
      error instanceof ApiError ? `${error.code}: ${error.detail}` : String(error);
    this.note(`error — ${message}`);
  }

  // -- flows ------------------------------------------------------------

  async showFeed(): Promise<void> {
    const { entries } = await this.api.feed();
    renderFeed(this.main, entries, {
      onLike: (post) => void this.confirmLike(post).catch((e) => this.fail(e)),
      onOpenArtist: (b) => void this.showArtist(b).catch((e) => this.fail(e)),
    });
  }

  /** Like flow: recap dialog -> POST /posts/{id}/like -> refresh balances. */
  async confirmLike(post: PostView): Promise<void> {
    const campaign = await this.api.campaign(post.beneficiary);
    await new Promise<void>((resolve, reject) => {
      renderDonationDialog(this.dialog, {
        kind: "like",
        beneficiary: post.beneficiary,
        postId: post.post_id,
        amountAtto: campaign.like_price,
        expectedLikoin: campaign.likoins_per_like,
        onConfirm: () => {
          this.api
            .like(post.post_id)
            .then(async () => {
              clear(this.dialog);
              await this.session.refreshBalances(post.beneficiary);
              await this.showFeed();
              this.note(`liked ${post.post_id}`);
              resolve();
            })
            .catch(reject);
        },
        onCancel: () => {
          clear(this.dialog);
          resolve();
        },
      });
    });
  }

  async confirmDonation(beneficiary: string, amountAtto: string): Promise<void> {
    await new Promise<void>((resolve, reject) => {
      renderDonationDialog(this.dialog, {
        kind: "free",
        beneficiary,
        amountAtto,
        expectedLikoin: null,
        onConfirm: () => {
          this.api
            .donate(beneficiary, amountAtto)
            .then(async () => {
              clear(this.dialog);
              await this.session.refreshBalances(beneficiary);
              await this.showArtist(beneficiary);
              resolve();
            })
            .catch(reject);
        },
        onCancel: () => {
          clear(this.dialog);
          resolve();
        },
      });
    });
  }

  async showArtist(accountId: string): Promise<void> {
    const user = await this.api.user(accountId);
    renderArtistPage(this.main, user, {
      onDonate: (b) => {
        const raw = window.prompt("Donation amount (atto-units)");
        if (raw) void this.confirmDonation(b, raw).catch((e) => this.fail(e));
      },
      onOpenShop: (b) => void this.showShop(b).catch((e) => this.fail(e)),
    });
  }

  async showShop(beneficiary: string): Promise<void> {
    const [{ artifacts }, balances] = await Promise.all([
      this.api.artifacts(beneficiary),
      this.session.active
        ? this.session.refreshBalances(beneficiary)
        : Promise.resolve(null),
    ]);
    renderArtifactShop(this.main, beneficiary, artifacts, balances, {
      onConvert: (b, amountAtto) =>
        void this.api
          .convert(b, amountAtto)
          .then(() => this.showShop(b))
          .catch((e) => this.fail(e)),
      onBuy: (artifactId) =>
        void this.api
          .buyArtifact(artifactId)
          .then(() => this.showShop(beneficiary))
          .catch((e) => this.fail(e)),
    });
  }

  async showProposal(proposalId: string): Promise<void> {
    const proposal = await this.api.proposal(proposalId);
    renderVotingPanel(this.main, proposal, this.session.account, {
      onSuggest: (pid, price) =>
        void this.api
          .suggestPrice(pid, price)
          .then(() => this.showProposal(pid))
          .catch((e) => this.fail(e)),
      onVote: (pid, suggestionId) =>
        void this.api
          .vote(pid, suggestionId)
          .then(() => this.showProposal(pid))
          .catch((e) => this.fail(e)),
      onFinalize: (pid) =>
        void this.api
          .finalize(pid)
          .then(() => this.showProposal(pid))
          .catch((e) => this.fail(e)),
      now: () => Date.now(),
    });
  }

  async showWallet(beneficiaries: string[]): Promise<void> {
    if (!this.session.account) throw new Error("not logged in");
    const holdings = [];
    for (const b of beneficiaries) {
      holdings.push(await this.session.refreshBalances(b));
    }
    renderWalletPanel(this.main, this.session.account, holdings);
  }

  showProposalForm(): void {
    renderProposalForm(this.main, {
      onPropose: (fields) =>
        void this.api
          .proposeArtifact(fields)
          .then((result) => {
            const opened = result.events.find((e) => e.kind === "ProposalOpened");
            const pid = opened?.payload["proposal_id"];
            if (typeof pid === "string") void this.showProposal(pid);
          })
          .catch((e) => this.fail(e)),
    });
  }

  /** Hash routes: #/feed, #/artist/{id}, #/shop/{b}, #/proposal/{id}, #/wallet/{b,...} */
  async route(hash: string): Promise<void> {
    const [, view = "feed", arg = ""] = hash.replace(/^#\//, "/").split("/");
    try {
      if (view === "artist" && arg) await this.showArtist(arg);
      else if (view === "shop" && arg) await this.showShop(arg);
      else if (view === "proposal" && arg) await this.showProposal(arg);
      else if (view === "wallet") await this.showWallet(arg ? arg.split(",") : []);
      else if (view === "propose") this.showProposalForm();
      else await this.showFeed();
    } catch (error) {
      this.fail(error);
    }
  }
}

export function mount(root: HTMLElement, baseUrl: string): App {
  const app = new App(new ApiClient(baseUrl), root);
  window.addEventListener("hashchange", () => void app.route(location.hash));
  void app.route(location.hash);
  return app;
}
