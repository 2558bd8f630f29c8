// Step 1: choose a GTFS zip, upload it, wait for the parse job.

import { ApiError } from "../api.js";
import type { AppContext } from "../context.js";

export function renderStep1(container: HTMLElement, ctx: AppContext): void {
  const { store, api } = ctx;
  const s = store.get();

  const panel = document.createElement("section");
  panel.className = "step-panel step-upload";
  panel.innerHTML = `
    <h2>1. Load a GTFS feed</h2>
    <p>Upload a GTFS zip archive; the service parses and checks it before anything else unlocks.</p>
  `;

  const input = document.createElement("input");
  input.type = "file";
  input.accept = ".zip,application/zip";
  input.id = "feed-file";
  panel.appendChild(input);

  const button = document.createElement("button");
  button.id = "upload-btn";
  button.textContent = s.busy ? "Uploading…" : "Upload and parse";
  button.disabled = s.busy;
  panel.appendChild(button);

  const progress = document.createElement("div");
  progress.className = "job-progress";
  panel.appendChild(progress);

  if (s.error) {
    const banner = document.createElement("div");
    banner.className = "error-banner";
    banner.textContent = s.error;
    panel.appendChild(banner);
  }
  if (s.feed) {
    const note = document.createElement("p");
    note.className = "upload-done";
    note.textContent = `Loaded ${s.feedName ?? "feed"}: ${s.feed.tables.map((t) => `${t.name} (${t.rows})`).join(", ")}`;
    panel.appendChild(note);
  }

  button.addEventListener("click", async () => {
    const file = input.files?.[0];
    if (!file) {
      store.set({ error: "choose a .zip file first" });
      return;
    }
    store.set({ busy: true, error: null });
    try {
      let sessionId = store.get().sessionId;
      if (!sessionId) {
        sessionId = await api.createSession();
        store.set({ sessionId });
      }
      const job = await api.uploadFeed(sessionId, file, file.name);
      const final = await api.waitForJob(sessionId, job, (st) => {
        progress.textContent = `${st.phase} ${(st.progress * 100).toFixed(0)}%`;
      });
      if (final.phase === "failed") {
        store.set({ busy: false, error: `upload failed: ${final.message}` });
        return;
      }
      const feed = await api.tables(sessionId);
      store.set({ busy: false, feed, feedName: file.name, network: null, step: 2 });
    } catch (err) {
      const msg = err instanceof ApiError ? `${err.status}: ${err.message}` : String(err);
      store.set({ busy: false, error: msg });
    }
  });

  container.appendChild(panel);
}
