/**
 * Client-side session: the logged-in account, its bearer token (held by
 * the ApiClient) and a cache of per-beneficiary balances. Balances are
 * opaque decimal strings straight from the service.
 */

import type { ApiClient, BalancesView } from "./api.js";

export class ClientSession {
  private balanceCache = new Map<string, BalancesView>();

  constructor(readonly api: ApiClient) {}

  get account(): string | null {
    return this.api.account;
  }

  get active(): boolean {
    return this.api.token !== null;
  }

  /** Fetch (and cache) balances for one beneficiary's token domain. */
  async refreshBalances(beneficiary: string): Promise<BalancesView> {
    if (!this.api.account) throw new Error("not logged in");
    const view = await this.api.balances(this.api.account, beneficiary);
    this.balanceCache.set(beneficiary, view);
    return view;
  }

  cachedBalances(beneficiary: string): BalancesView | undefined {
    return this.balanceCache.get(beneficiary);
  }

  beneficiariesSeen(): string[] {
    return [...this.balanceCache.keys()].sort();
  }
}
