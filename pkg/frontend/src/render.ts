import { routeBadge } from "./badge.js";
import type { Answer, References, SessionSummary } from "./types.js";

export const PAGE_SIZE = 100;

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderSummary(summary: SessionSummary): HTMLElement {
  const panel = el("div", "summary-panel");
  panel.dataset.testid = "session-summary";
  const title = el("div", "summary-file", summary.file_name);
  const facts = el("div", "summary-facts");
  facts.append(
    fact("category", summary.category),
    fact("lines", String(summary.line_count)),
    fact("templates", String(summary.template_count)),
  );
  panel.append(title, facts);
  return panel;
}

function fact(label: string, value: string): HTMLElement {
  const span = el("span", "fact");
  span.append(el("span", "fact-label", label), el("span", "fact-value", value));
  return span;
}

export function renderUserMessage(text: string, now: Date = new Date()): HTMLElement {
  const item = el("div", "message user");
  item.append(el("div", "bubble", text), timestamp(now));
  return item;
}

export interface ReferenceActions {
  onOpenTemplates: () => void;
  onOpenEvent: (eventId: string) => void;
}

export function renderAssistantMessage(
  answer: Answer,
  actions: ReferenceActions,
  now: Date = new Date(),
): HTMLElement {
  const item = el("div", "message assistant");
  const bubble = el("div", "bubble");
  const badge = el("span", "route-badge", routeBadge(answer.route));
  badge.dataset.testid = "route-badge";
  bubble.append(badge, el("div", "answer-text", answer.text));
  const refs = renderReferences(answer.references, answer.route.event_ids, actions);
  if (refs) bubble.append(refs);
  item.append(bubble, timestamp(now));
  return item;
}

export function renderErrorMessage(
  message: string,
  code: string,
  onRetry: () => void,
  now: Date = new Date(),
): HTMLElement {
  const item = el("div", "message error");
  const bubble = el("div", "bubble");
  bubble.append(el("span", "error-code", code), el("div", "error-text", message));
  const retry = el("button", "retry-button", "retry");
  retry.type = "button";
  retry.addEventListener("click", onRetry);
  bubble.append(retry);
  item.append(bubble, timestamp(now));
  return item;
}

// Shown only when the server returned at least one line or chunk; every
// number and line of text comes from the response as-is.
function renderReferences(
  references: References,
  eventIds: string[] | null,
  actions: ReferenceActions,
): HTMLElement | null {
  if (!references) return null;
  const entries = references.kind === "search_result" ? references.matches : references.hits;
  if (entries.length === 0) return null;

  const details = el("details", "references");
  details.dataset.testid = "references";
  const list = el("ul", "reference-lines");

  if (references.kind === "search_result") {
    const note =
      `${references.total} matching lines` +
      (references.truncated ? `, showing first ${references.shown}` : "");
    details.append(summaryEl(note));
    for (const match of references.matches) {
      const line = el("li", "reference-line");
      line.dataset.lineId = String(match.line_id);
      line.append(el("span", "line-id", String(match.line_id)), el("span", "line-text", match.text));
      list.append(line);
    }
    if (references.unknown_event_ids.length > 0) {
      details.append(
        el("div", "unknown-events", `unknown events: ${references.unknown_event_ids.join(", ")}`),
      );
    }
  } else {
    details.append(summaryEl(`${references.hits.length} retrieved chunks`));
    for (const hit of references.hits) {
      const line = el("li", "reference-chunk");
      line.append(
        el("span", "line-id", `lines ${hit.first_line}-${hit.last_line}`),
        el("span", "chunk-score", hit.score.toFixed(4)),
        el("pre", "line-text", hit.text),
      );
      list.append(line);
    }
  }
  details.append(list);

  const links = el("div", "reference-links");
  const templatesLink = el("button", "table-link", "template table");
  templatesLink.type = "button";
  templatesLink.addEventListener("click", actions.onOpenTemplates);
  links.append(templatesLink);
  for (const eventId of eventIds ?? []) {
    const eventLink = el("button", "table-link", `rows for ${eventId}`);
    eventLink.type = "button";
    eventLink.addEventListener("click", () => actions.onOpenEvent(eventId));
    links.append(eventLink);
  }
  details.append(links);
  return details;
}

function summaryEl(text: string): HTMLElement {
  const summary = document.createElement("summary");
  summary.textContent = text;
  return summary;
}

function timestamp(now: Date): HTMLElement {
  const time = document.createElement("time");
  time.dateTime = now.toISOString();
  time.textContent = now.toLocaleTimeString();
  return time;
}

/** Table over row arrays, paginated client-side so huge template sets
 * cannot freeze the page. */
export function renderPaginatedTable(
  headers: string[],
  rows: string[][],
  pageSize: number = PAGE_SIZE,
): HTMLElement {
  const container = el("div", "paginated-table");
  const table = el("table");
  const thead = el("thead");
  const headRow = el("tr");
  for (const name of headers) headRow.append(el("th", undefined, name));
  thead.append(headRow);
  const tbody = el("tbody");
  table.append(thead, tbody);

  const pager = el("div", "pager");
  const prev = el("button", "pager-prev", "prev");
  prev.type = "button";
  const status = el("span", "pager-status");
  const next = el("button", "pager-next", "next");
  next.type = "button";
  pager.append(prev, status, next);

  const pageCount = Math.max(1, Math.ceil(rows.length / pageSize));
  let page = 0;

  const show = () => {
    tbody.replaceChildren();
    for (const row of rows.slice(page * pageSize, (page + 1) * pageSize)) {
      const tr = el("tr");
      for (const cell of row) tr.append(el("td", undefined, cell));
      tbody.append(tr);
    }
    status.textContent = `page ${page + 1} of ${pageCount} (${rows.length} rows)`;
    prev.disabled = page === 0;
    next.disabled = page >= pageCount - 1;
  };
  prev.addEventListener("click", () => {
    if (page > 0) {
      page--;
      show();
    }
  });
  next.addEventListener("click", () => {
    if (page < pageCount - 1) {
      page++;
      show();
    }
  });
  show();

  container.append(table, pager);
  return container;
}
