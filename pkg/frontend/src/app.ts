import { ApiClient, ApiError } from "./api.js";
import { parseCsv } from "./csv.js";
import { SendQueue } from "./queue.js";
import {
  el,
  renderAssistantMessage,
  renderErrorMessage,
  renderPaginatedTable,
  renderSummary,
  renderUserMessage,
} from "./render.js";
import type { SessionSummary } from "./types.js";

/** Builds the whole client inside `root` and wires it to `client`.
 * Returns nothing; the DOM is the state the user sees, plus one
 * SessionSummary and the send queue held here. */
export function initApp(root: HTMLElement, client: ApiClient): void {
  root.replaceChildren();
  root.classList.add("logchat-app");

  // -- static skeleton ------------------------------------------------------
  const header = el("header", "app-header");
  header.append(el("h1", undefined, "logchat"));
  const backendNote = el("span", "backend-note");
  header.append(backendNote);

  const uploadPanel = el("section", "upload-panel");
  const dropzone = el("label", "dropzone", "drop a log file here or click to browse");
  const fileInput = el("input");
  fileInput.type = "file";
  fileInput.dataset.testid = "file-input";
  dropzone.append(fileInput);
  const categoryInput = el("input", "category-input");
  categoryInput.type = "text";
  categoryInput.placeholder = "category override (optional)";
  categoryInput.dataset.testid = "category-input";
  const uploadButton = el("button", "upload-button", "upload");
  uploadButton.type = "button";
  uploadButton.dataset.testid = "upload-button";
  uploadPanel.append(dropzone, categoryInput, uploadButton);

  const summarySlot = el("div", "summary-slot");

  const chatPanel = el("section", "chat-panel");
  const messages = el("div", "messages");
  messages.dataset.testid = "messages";
  const composer = el("form", "composer");
  const questionInput = el("input", "question-input");
  questionInput.type = "text";
  questionInput.placeholder = "ask about the log";
  questionInput.dataset.testid = "question-input";
  const sendButton = el("button", "send-button", "send");
  sendButton.type = "submit";
  sendButton.dataset.testid = "send-button";
  composer.append(questionInput, sendButton);
  chatPanel.append(messages, composer);

  const drawer = el("aside", "table-drawer");
  drawer.dataset.testid = "table-drawer";
  drawer.hidden = true;

  const toasts = el("div", "toasts");
  toasts.dataset.testid = "toasts";

  root.append(header, uploadPanel, summarySlot, chatPanel, drawer, toasts);

  // -- state ----------------------------------------------------------------
  let session: SessionSummary | null = null;
  let uploading = false;
  const queue = new SendQueue();

  const refreshControls = () => {
    uploadButton.disabled = uploading || !fileInput.files?.length;
    sendButton.disabled = session === null || questionInput.value.trim() === "";
  };
  refreshControls();

  client
    .health()
    .then((health) => {
      backendNote.textContent = `v${health.version} · backend ${health.backend}`;
    })
    .catch(() => {
      backendNote.textContent = "service unreachable";
    });

  // -- helpers ---------------------------------------------------------------
  const toast = (text: string) => {
    const note = el("div", "toast", text);
    toasts.append(note);
    setTimeout(() => note.remove(), 6000);
  };

  const describeError = (err: unknown): string => {
    if (err instanceof ApiError) {
      const detail = typeof err.envelope.detail === "string" ? ` (${err.envelope.detail})` : "";
      return `${err.envelope.code}: ${err.envelope.message}${detail}`;
    }
    return err instanceof Error ? err.message : String(err);
  };

  const openDrawer = (title: string, content: HTMLElement) => {
    drawer.replaceChildren();
    const bar = el("div", "drawer-bar");
    const close = el("button", "drawer-close", "close");
    close.type = "button";
    close.addEventListener("click", () => {
      drawer.hidden = true;
    });
    bar.append(el("span", "drawer-title", title), close);
    drawer.append(bar, content);
    drawer.hidden = false;
  };

  const openTemplates = async () => {
    if (!session) return;
    try {
      const csv = await client.eventsCsv(session.session_id);
      const rows = parseCsv(csv);
      const headers = rows.shift() ?? [];
      openDrawer("event templates", renderPaginatedTable(headers, rows));
    } catch (err) {
      toast(describeError(err));
    }
  };

  const openEvent = async (eventId: string) => {
    if (!session) return;
    try {
      const doc = await client.structured(session.session_id, eventId);
      const headers = ["LineId", ...doc.headers, "Content", "EventId"];
      const rows = doc.rows.map((row) => [
        String(row.line_id),
        ...doc.headers.map((name) => row.header[name] ?? ""),
        row.content,
        row.event_id,
      ]);
      openDrawer(`rows for ${eventId} (${doc.total})`, renderPaginatedTable(headers, rows));
    } catch (err) {
      toast(describeError(err));
    }
  };

  const actions = { onOpenTemplates: openTemplates, onOpenEvent: openEvent };

  // -- upload -----------------------------------------------------------------
  const doUpload = async () => {
    const file = fileInput.files?.[0];
    if (!file || uploading) return;
    uploading = true;
    refreshControls();
    try {
      session = await client.uploadLog(file, categoryInput.value.trim() || undefined);
      summarySlot.replaceChildren(renderSummary(session));
    } catch (err) {
      toast(describeError(err));
    } finally {
      uploading = false;
      refreshControls();
    }
  };
  uploadButton.addEventListener("click", () => void doUpload());
  fileInput.addEventListener("change", refreshControls);
  dropzone.addEventListener("dragover", (event) => {
    event.preventDefault();
    dropzone.classList.add("dragging");
  });
  dropzone.addEventListener("dragleave", () => dropzone.classList.remove("dragging"));
  dropzone.addEventListener("drop", (event) => {
    event.preventDefault();
    dropzone.classList.remove("dragging");
    const dropped = event.dataTransfer?.files;
    if (dropped?.length) {
      fileInput.files = dropped;
      refreshControls();
    }
  });

  // -- chat --------------------------------------------------------------------
  const ask = (question: string, placeholder: HTMLElement) => {
    void queue.enqueue(async () => {
      if (!session) return;
      placeholder.textContent = "thinking...";
      try {
        const answer = await client.chat(session.session_id, question);
        placeholder.replaceWith(renderAssistantMessage(answer, actions));
      } catch (err) {
        const bubble = renderErrorMessage(describeError(err), errCode(err), () => {
          const retryPlaceholder = pendingBubble();
          bubble.replaceWith(retryPlaceholder);
          ask(question, retryPlaceholder);
        });
        placeholder.replaceWith(bubble);
      }
    });
  };

  const pendingBubble = (): HTMLElement => el("div", "message pending", "queued...");

  composer.addEventListener("submit", (event) => {
    event.preventDefault();
    const question = questionInput.value.trim();
    if (!session || question === "") return;
    questionInput.value = "";
    refreshControls();
    messages.append(renderUserMessage(question));
    const placeholder = pendingBubble();
    messages.append(placeholder);
    ask(question, placeholder);
  });
  questionInput.addEventListener("input", refreshControls);
}

function errCode(err: unknown): string {
  return err instanceof ApiError ? err.envelope.code : "error";
}
