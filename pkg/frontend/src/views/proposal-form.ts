/**
 * The beneficiary's artifact proposal form: title, description, content
 * reference and the suggested opening price.
 */

import { clear, h } from "../dom.js";

export interface ProposalFormHandlers {
  onPropose(fields: {
    title: string;
    description: string;
    content_ref: string;
    suggested_price: string;
  }): void;
}

export function renderProposalForm(
  container: HTMLElement,
  handlers: ProposalFormHandlers,
): void {
  clear(container);
  const title = h("input", { class: "title-input", placeholder: "title" }) as HTMLInputElement;
  const description = h("input", {
    class: "description-input",
    placeholder: "description",
  }) as HTMLInputElement;
  const contentRef = h("input", {
    class: "content-input",
    placeholder: "content reference",
  }) as HTMLInputElement;
  const price = h("input", {
    class: "price-input",
    placeholder: "suggested price (buck atto-units)",
  }) as HTMLInputElement;

  container.append(
    h(
      "form",
      {
        class: "proposal-form",
        onsubmit: (event: Event) => {
          event.preventDefault();
          if (!title.value || !price.value) return;
          handlers.onPropose({
            title: title.value,
            description: description.value,
            content_ref: contentRef.value,
            suggested_price: price.value,
          });
        },
      },
      h("h3", {}, "Propose an artifact"),
      title,
      description,
      contentRef,
      price,
      h("button", { class: "propose-button", type: "submit" }, "Propose"),
    ),
  );
}
