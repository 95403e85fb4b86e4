/**
 * An artist's public page: personal info, campaign funds recap, posts,
 * and the chronological list of donations the account has made.
 */

import type { UserView } from "../api.js";
import { amount, clear, h } from "../dom.js";

export interface ArtistHandlers {
  onDonate(beneficiary: string): void;
  onOpenShop(beneficiary: string): void;
}

export function renderArtistPage(
  container: HTMLElement,
  user: UserView,
  handlers: ArtistHandlers,
): void {
  clear(container);
  container.append(h("h2", { class: "artist-name" }, user.account_id));

  if (user.campaign) {
    const c = user.campaign;
    container.append(
      h(
        "section",
        { class: "campaign-summary" },
        h("div", {}, `Campaign: ${c.status}`),
        h("div", { class: "total-raised" }, "Total raised: ", amount(c.total_raised)),
        h("div", {}, "Escrow: ", amount(c.escrow)),
        h("div", {}, "Likoin supply: ", amount(c.likoin_total)),
        h("div", {}, "Like price: ", amount(c.like_price)),
        h(
          "button",
          {
            class: "donate-button",
            onclick: () => handlers.onDonate(user.account_id),
            disabled: c.status !== "open",
          },
          "Donate",
        ),
        h(
          "button",
          { class: "shop-button", onclick: () => handlers.onOpenShop(user.account_id) },
          "Artifacts",
        ),
      ),
    );
  } else {
    container.append(h("p", {}, "No campaign."));
  }

  const posts = h("section", { class: "posts" }, h("h3", {}, "Posts"));
  for (const post of user.posts) {
    posts.append(
      h(
        "div",
        { class: "post", "data-post": post.post_id },
        h("span", {}, post.content_ref),
        h("span", { class: "likes" }, ` ♥ ${post.like_count}`),
      ),
    );
  }
  container.append(posts);

  const donations = h(
    "section",
    { class: "donations" },
    h("h3", {}, "Donations made"),
  );
  for (const d of user.donations) {
    donations.append(
      h(
        "div",
        { class: "donation" },
        `${d.kind} → ${d.beneficiary}: `,
        amount(d.amount),
        " (minted ",
        amount(d.minted),
        ")",
      ),
    );
  }
  container.append(donations);
}
