/** Minimal DOM helpers; no framework, no virtual DOM. */

type Child = Node | string | null | undefined;

export function h(
  tag: string,
  attrs: Record<string, string | boolean | EventListener> = {},
  ...children: Child[]
): HTMLElement {
  const el = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    if (typeof value === "function") {
      el.addEventListener(key.replace(/^on/, ""), value);
    } else if (typeof value === "boolean") {
      if (value) el.setAttribute(key, "");
      if (key === "disabled") (el as HTMLButtonElement).disabled = value;
    } else {
      el.setAttribute(key, value);
    }
  }
  for (const child of children) {
    if (child === null || child === undefined) continue;
    el.append(child instanceof Node ? child : document.createTextNode(child));
  }
  return el;
}

/**
 * An amount rendered exactly as the service serialized it. The
 * [data-amount] node's text is the untouched decimal string; any label
 * lives in a sibling node so tests can compare byte-for-byte.
 */
export function amount(value: string, label = ""): HTMLElement {
  const wrap = h("span", { class: "amount-wrap" });
  wrap.append(h("span", { class: "amount", "data-amount": value }, value));
  if (label) wrap.append(h("span", { class: "amount-label" }, ` ${label}`));
  return wrap;
}

export function clear(el: HTMLElement): HTMLElement {
  el.replaceChildren();
  return el;
}
