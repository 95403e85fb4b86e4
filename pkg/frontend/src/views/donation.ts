/**
 * The transaction recap dialog shown before a like or free donation is
 * submitted. All displayed quantities come from the service (the expected
 * Likoin figure is the campaign view's likoins_per_like); nothing is
 * computed client-side.
 */

import { amount, clear, h } from "../dom.js";

export interface DonationRecap {
  kind: "like" | "free";
  beneficiary: string;
  postId?: string;
  amountAtto: string;
  expectedLikoin: string | null;
  onConfirm(): void;
  onCancel(): void;
}

export function renderDonationDialog(container: HTMLElement, recap: DonationRecap): void {
  clear(container);
  const rows: HTMLElement[] = [
    h("div", { class: "row" }, "To: ", h("b", {}, recap.beneficiary)),
    h("div", { class: "row" }, "Amount: ", amount(recap.amountAtto, "atto")),
  ];
  if (recap.expectedLikoin !== null) {
    rows.push(
      h("div", { class: "row" }, "You receive: ", amount(recap.expectedLikoin, "likoin-atto")),
    );
  }
  if (recap.postId) {
    rows.push(h("div", { class: "row" }, "Post: ", recap.postId));
  }
  container.append(
    h(
      "div",
      { class: "dialog donation-dialog", role: "dialog" },
      h("h3", {}, recap.kind === "like" ? "Confirm like donation" : "Confirm donation"),
      ...rows,
      h("button", { class: "confirm", onclick: () => recap.onConfirm() }, "Confirm"),
      h("button", { class: "cancel", onclick: () => recap.onCancel() }, "Cancel"),
    ),
  );
}
