/**
 * The wallet panel: currency plus Likoin/Buck holdings per beneficiary,
 * rendered exactly as the service serialized them.
 */

import type { BalancesView } from "../api.js";
import { amount, clear, h } from "../dom.js";

export function renderWalletPanel(
  container: HTMLElement,
  account: string,
  holdings: BalancesView[],
): void {
  clear(container);
  container.append(h("h2", {}, `Wallet of ${account}`));
  const first = holdings[0];
  if (first) {
    container.append(
      h("div", { class: "currency" }, "Currency: ", amount(first.currency)),
    );
  }
  const table = h("table", { class: "holdings" });
  table.append(
    h(
      "tr",
      {},
      h("th", {}, "beneficiary"),
      h("th", {}, "likoin"),
      h("th", {}, "buck"),
    ),
  );
  for (const row of holdings) {
    if (row.beneficiary === null) continue;
    table.append(
      h(
        "tr",
        { "data-beneficiary": row.beneficiary },
        h("td", {}, row.beneficiary),
        h("td", { class: "likoin-cell" }, amount(row.likoin)),
        h("td", { class: "buck-cell" }, amount(row.buck)),
      ),
    );
  }
  container.append(table);
}
