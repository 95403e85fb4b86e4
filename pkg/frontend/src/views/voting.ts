/**
 * Price governance: the suggestion form and the voting panel with weight
 * bars and the countdown to the earliest close. Weights arrive from the
 * service as exact num/den string pairs; the bar width is the only
 * client-side derivation and never feeds a payload.
 */

import type { ProposalView, SuggestionView } from "../api.js";
import { amount, clear, h } from "../dom.js";

export interface VotingHandlers {
  onSuggest(proposalId: string, priceAtto: string): void;
  onVote(proposalId: string, suggestionId: string): void;
  onFinalize(proposalId: string): void;
  /** Current logical time in ms for the countdown, typically Date.now(). */
  now(): number;
}

function weightPercent(s: SuggestionView): string {
  const den = Number(s.weight_den);
  if (!den) return "0";
  return ((Number(s.weight_num) / den) * 100).toFixed(1);
}

export function renderVotingPanel(
  container: HTMLElement,
  proposal: ProposalView,
  voter: string | null,
  handlers: VotingHandlers,
): void {
  clear(container);
  container.append(
    h("h3", {}, `Price vote for ${proposal.artifact_id}`),
    h("div", { class: "status" }, `Status: ${proposal.status}`),
  );

  if (proposal.status === "open") {
    const remaining = proposal.min_close_at - handlers.now();
    container.append(
      h(
        "div",
        { class: "countdown", "data-min-close-at": String(proposal.min_close_at) },
        remaining > 0
          ? `Voting open for at least ${Math.ceil(remaining / 1000)}s`
          : "Voting may be finalized",
      ),
    );
  }

  const list = h("ul", { class: "suggestions" });
  for (const suggestion of proposal.suggestions) {
    const percent = weightPercent(suggestion);
    const row = h(
      "li",
      { class: "suggestion", "data-suggestion": suggestion.suggestion_id },
      amount(suggestion.price, "bucks"),
      h("span", { class: "proposer" }, ` by ${suggestion.proposer} `),
      h(
        "span",
        { class: "weight-bar", style: `display:inline-block;width:${percent}%;` },
        `${percent}%`,
      ),
    );
    if (proposal.status === "open" && voter) {
      row.append(
        h(
          "button",
          {
            class: "vote-button",
            onclick: () => handlers.onVote(proposal.proposal_id, suggestion.suggestion_id),
          },
          proposal.votes[voter] === suggestion.suggestion_id ? "Voted ✓" : "Vote",
        ),
      );
    }
    list.append(row);
  }
  container.append(list);

  if (proposal.outcome) {
    container.append(
      h(
        "div",
        { class: "outcome" },
        "Final price: ",
        amount(proposal.outcome.price, "bucks"),
      ),
    );
  }

  if (proposal.status === "open" && voter) {
    const input = h("input", {
      class: "price-input",
      placeholder: "price in buck atto-units",
    }) as HTMLInputElement;
    container.append(
      h(
        "form",
        {
          class: "suggest-form",
          onsubmit: (event: Event) => {
            event.preventDefault();
            if (input.value) handlers.onSuggest(proposal.proposal_id, input.value);
          },
        },
        input,
        h("button", { class: "suggest-button", type: "submit" }, "Suggest price"),
      ),
      h(
        "button",
        { class: "finalize-button", onclick: () => handlers.onFinalize(proposal.proposal_id) },
        "Finalize",
      ),
    );
  }
}
