/**
 * The artifact shop: browse a beneficiary's artifacts, convert Likoins to
 * Bucks, buy. The buy button mirrors the service's guard — it is disabled
 * with a conversion prompt whenever the held Bucks cannot cover the price
 * (BigInt comparison of the service's strings; display-only, no payload
 * is derived from it).
 */

import type { ArtifactBrief, BalancesView } from "../api.js";
import { amount, clear, h } from "../dom.js";

export interface ShopHandlers {
  onConvert(beneficiary: string, amountAtto: string): void;
  onBuy(artifactId: string): void;
}

function canAfford(balances: BalancesView | null, price: string | null): boolean {
  if (!balances || price === null) return false;
  return BigInt(balances.buck) >= BigInt(price);
}

export function renderArtifactShop(
  container: HTMLElement,
  beneficiary: string,
  artifacts: ArtifactBrief[],
  balances: BalancesView | null,
  handlers: ShopHandlers,
): void {
  clear(container);
  container.append(h("h2", {}, `Artifacts of ${beneficiary}`));

  if (balances) {
    container.append(
      h(
        "div",
        { class: "wallet-strip" },
        "Likoin: ",
        amount(balances.likoin),
        " · Buck: ",
        amount(balances.buck),
      ),
    );
  }

  const convertInput = h("input", {
    class: "convert-input",
    placeholder: "likoin atto-units",
  }) as HTMLInputElement;
  container.append(
    h(
      "form",
      {
        class: "convert-form",
        onsubmit: (event: Event) => {
          event.preventDefault();
          if (convertInput.value) handlers.onConvert(beneficiary, convertInput.value);
        },
      },
      convertInput,
      h("button", { class: "convert-button", type: "submit" }, "Convert to Bucks"),
    ),
  );

  const list = h("ul", { class: "artifacts" });
  for (const artifact of artifacts) {
    const row = h(
      "li",
      { class: "artifact", "data-artifact": artifact.artifact_id },
      h("b", {}, artifact.title),
      h("span", { class: "state" }, ` [${artifact.state}] `),
      artifact.price !== null ? amount(artifact.price, "bucks") : "price pending",
      h("span", { class: "sold" }, ` sold ${artifact.sold}`),
    );
    if (artifact.state === "on_sale" && artifact.price !== null) {
      const affordable = canAfford(balances, artifact.price);
      row.append(
        h(
          "button",
          {
            class: "buy-button",
            disabled: !affordable,
            onclick: () => handlers.onBuy(artifact.artifact_id),
          },
          "Buy",
        ),
      );
      if (!affordable) {
        row.append(
          h(
            "span",
            { class: "convert-prompt" },
            " Not enough Bucks — convert Likoins above.",
          ),
        );
      }
    }
    list.append(row);
  }
  container.append(list);
}
