/**
 * The home feed: posts ordered by the service (most liked first), each
 * with a like button that opens the donation confirmation dialog.
 */

import type { PostView } from "../api.js";
import { amount, clear, h } from "../dom.js";

export interface FeedHandlers {
  onLike(post: PostView): void;
  onOpenArtist(beneficiary: string): void;
}

export function renderFeed(
  container: HTMLElement,
  entries: PostView[],
  handlers: FeedHandlers,
): void {
  clear(container);
  container.append(h("h2", {}, "Feed"));
  if (entries.length === 0) {
    container.append(h("p", { class: "empty" }, "Nothing posted yet."));
    return;
  }
  const list = h("ul", { class: "feed" });
  for (const post of entries) {
    const likeButton = h(
      "button",
      {
        class: "like-button",
        "data-post": post.post_id,
        onclick: () => handlers.onLike(post),
        disabled: post.campaign_status !== "open",
      },
      `Like (${post.like_count})`,
    );
    const artistLink = h(
      "a",
      {
        href: `#/artist/${post.beneficiary}`,
        onclick: (event: Event) => {
          event.preventDefault();
          handlers.onOpenArtist(post.beneficiary);
        },
      },
      post.beneficiary,
    );
    const item = h(
      "li",
      { class: "feed-entry", "data-post": post.post_id },
      h("div", { class: "content" }, post.content_ref),
      h("div", { class: "byline" }, "by ", artistLink),
      post.total_raised !== null
        ? h("div", { class: "raised" }, "raised ", amount(post.total_raised))
        : null,
      likeButton,
    );
    list.append(item);
  }
  container.append(list);
}
