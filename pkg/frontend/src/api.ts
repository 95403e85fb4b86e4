/**
 * Typed client for the likestarter HTTP service.
 *
 * Every amount is a decimal string of atto-units and is passed through
 * verbatim: this module never parses an amount into a number. The only
 * numeric fields are counters and timestamps.
 */

export interface EventRecord {
  seq: number;
  kind: string;
  payload: Record<string, unknown>;
}

export interface MutationResult {
  seq: number;
  events: EventRecord[];
  state_hash: string;
}

export interface CampaignView {
  beneficiary: string;
  status: "open" | "closed";
  likoin_rate_num: string;
  likoin_rate_den: string;
  like_price: string;
  likoins_per_like: string;
  buck_rate: string;
  escrow: string;
  total_raised: string;
  withdrawn_total: string;
  created_at: number;
  likoin_total: string;
  buck_total: string;
  posts: string[];
}

export interface PostView {
  post_id: string;
  beneficiary: string;
  content_ref: string;
  created_at: number;
  like_count: number;
  like_price: string | null;
  campaign_status: string | null;
  total_raised: string | null;
}

export interface DonationView {
  beneficiary: string;
  amount: string;
  minted: string;
  kind: "like" | "free";
  post_id: string | null;
  ts: number;
}

export interface UserView {
  account_id: string;
  currency: string;
  campaign: CampaignView | null;
  posts: PostView[];
  donations: DonationView[];
}

export interface ArtifactView {
  artifact_id: string;
  beneficiary: string;
  title: string;
  description: string;
  content_ref: string;
  state: "pricing" | "on_sale" | "removed";
  price: string | null;
  supply_limit: number | null;
  sold: number;
  owners: Record<string, number>;
  proposal_id: string | null;
}

export interface ArtifactBrief {
  artifact_id: string;
  title: string;
  state: string;
  price: string | null;
  sold: number;
  supply_limit: number | null;
  proposal_id: string | null;
}

export interface SuggestionView {
  suggestion_id: string;
  price: string;
  proposer: string;
  created_at: number;
  weight_num: string;
  weight_den: string;
}

export interface ProposalView {
  proposal_id: string;
  artifact_id: string;
  beneficiary: string;
  status: "open" | "finalized" | "cancelled";
  opened_at: number;
  min_close_at: number;
  quorum_num: number;
  quorum_den: number;
  snapshot_total: string;
  suggestions: SuggestionView[];
  votes: Record<string, string>;
  voted_weight_num: string;
  voted_weight_den: string;
  outcome: { suggestion_id: string; price: string } | null;
}

export interface BalancesView {
  account_id: string;
  beneficiary: string | null;
  currency: string;
  likoin: string;
  buck: string;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    readonly detail: string,
  ) {
    super(`${code}: ${detail}`);
  }
}

export class ApiClient {
  token: string | null = null;
  account: string | null = null;

  constructor(readonly baseUrl: string) {}

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
    auth = false,
  ): Promise<T> {
    const headers: Record<string, string> = { "content-type": "application/json" };
    if (auth) {
      if (!this.token) throw new ApiError(401, "Unauthorized", "no session");
      headers["authorization"] = `Bearer ${this.token}`;
    }
    const response = await fetch(this.baseUrl + path, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const data = (await response.json()) as Record<string, unknown>;
    if (!response.ok) {
      throw new ApiError(
        response.status,
        String(data["error"] ?? `HTTP${response.status}`),
        String(data["detail"] ?? ""),
      );
    }
    return data as T;
  }

  // -- accounts and sessions ----------------------------------------------

  createAccount(id: string, secret: string): Promise<MutationResult> {
    return this.request("POST", "/accounts", { id, secret });
  }

  async login(accountId: string, secret: string): Promise<void> {
    const data = await this.request<{ token: string }>("POST", "/session", {
      account_id: accountId,
      secret,
    });
    this.token = data.token;
    this.account = accountId;
  }

  deposit(amount: string): Promise<MutationResult> {
    return this.request("POST", "/deposit", { amount }, true);
  }

  // -- campaign and posts ----------------------------------------------

  startCampaign(): Promise<MutationResult> {
    return this.request("POST", "/campaigns", {}, true);
  }

  createPost(contentRef: string): Promise<MutationResult> {
    return this.request("POST", "/posts", { content_ref: contentRef }, true);
  }

  like(postId: string): Promise<MutationResult> {
    return this.request("POST", `/posts/${postId}/like`, {}, true);
  }

  donate(beneficiary: string, amount: string): Promise<MutationResult> {
    return this.request("POST", "/donations", { beneficiary, amount }, true);
  }

  // -- tokens ----------------------------------------------------------

  convert(beneficiary: string, amount: string): Promise<MutationResult> {
    return this.request("POST", "/conversions", { beneficiary, amount }, true);
  }

  transfer(beneficiary: string, to: string, amount: string): Promise<MutationResult> {
    return this.request("POST", "/transfers", { beneficiary, to, amount }, true);
  }

  // -- artifacts and governance -------------------------------------------

  proposeArtifact(body: {
    title: string;
    description?: string;
    content_ref?: string;
    suggested_price: string;
    supply_limit?: string;
  }): Promise<MutationResult> {
    return this.request("POST", "/artifacts", body, true);
  }

  buyArtifact(artifactId: string): Promise<MutationResult> {
    return this.request("POST", `/artifacts/${artifactId}/buy`, {}, true);
  }

  suggestPrice(proposalId: string, price: string): Promise<MutationResult> {
    return this.request("POST", `/proposals/${proposalId}/suggestions`, { price }, true);
  }

  vote(proposalId: string, suggestionId: string): Promise<MutationResult> {
    return this.request(
      "POST",
      `/proposals/${proposalId}/votes`,
      { suggestion_id: suggestionId },
      true,
    );
  }

  finalize(proposalId: string): Promise<MutationResult> {
    return this.request("POST", `/proposals/${proposalId}/finalize`, {}, true);
  }

  // -- reads ----------------------------------------------------------

  feed(): Promise<{ entries: PostView[] }> {
    return this.request("GET", "/feed");
  }

  user(accountId: string): Promise<UserView> {
    return this.request("GET", `/users/${accountId}`);
  }

  campaign(beneficiary: string): Promise<CampaignView> {
    return this.request("GET", `/campaigns/${beneficiary}`);
  }

  artifact(artifactId: string): Promise<ArtifactView> {
    return this.request("GET", `/artifacts/${artifactId}`);
  }

  artifacts(beneficiary: string): Promise<{ artifacts: ArtifactBrief[] }> {
    return this.request("GET", `/artifacts?beneficiary=${encodeURIComponent(beneficiary)}`);
  }

  proposal(proposalId: string): Promise<ProposalView> {
    return this.request("GET", `/proposals/${proposalId}`);
  }

  balances(accountId: string, beneficiary?: string): Promise<BalancesView> {
    const query = beneficiary ? `?beneficiary=${encodeURIComponent(beneficiary)}` : "";
    return this.request("GET", `/balances/${accountId}${query}`);
  }
}
