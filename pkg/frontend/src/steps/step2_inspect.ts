// Step 2: table previews plus an interactive stops/shapes map.

import type { AppContext } from "../context.js";
import { SvgMap } from "../map.js";

const pageState: Record<string, number> = {};

export function renderStep2(container: HTMLElement, ctx: AppContext): void {
  const { store, api } = ctx;
  const s = store.get();
  if (!s.feed || !s.sessionId) return;
  const sessionId = s.sessionId;

  const panel = document.createElement("section");
  panel.className = "step-panel step-inspect";
  panel.innerHTML = `<h2>2. Inspect the feed</h2>`;

  const tableList = document.createElement("ul");
  tableList.className = "table-list";
  const preview = document.createElement("div");
  preview.className = "table-preview";

  const showTable = async (name: string) => {
    const page = pageState[name] ?? 0;
    const doc = await api.tablePage(sessionId, name, page);
    preview.replaceChildren();
    const heading = document.createElement("h3");
    heading.textContent = `${doc.name} — ${doc.total_rows} rows`;
    preview.appendChild(heading);
    const table = document.createElement("table");
    table.className = "preview-table";
    const head = document.createElement("tr");
    for (const col of doc.columns) {
      const th = document.createElement("th");
      th.textContent = col;
      head.appendChild(th);
    }
    table.appendChild(head);
    for (const row of doc.rows) {
      const tr = document.createElement("tr");
      for (const cell of row) {
        const td = document.createElement("td");
        td.textContent = cell === null ? "" : String(cell);
        tr.appendChild(td);
      }
      table.appendChild(tr);
    }
    preview.appendChild(table);
    const pager = document.createElement("div");
    pager.className = "pager";
    const prev = document.createElement("button");
    prev.textContent = "prev";
    prev.disabled = page === 0;
    prev.addEventListener("click", () => {
      pageState[name] = page - 1;
      void showTable(name);
    });
    const next = document.createElement("button");
    next.textContent = "next";
    next.disabled = (page + 1) * doc.page_size >= doc.total_rows;
    next.addEventListener("click", () => {
      pageState[name] = page + 1;
      void showTable(name);
    });
    const label = document.createElement("span");
    label.textContent = `page ${page + 1}`;
    pager.append(prev, label, next);
    preview.appendChild(pager);
  };

  for (const t of s.feed.tables) {
    const li = document.createElement("li");
    const link = document.createElement("button");
    link.className = "table-link";
    link.dataset.table = t.name;
    link.textContent = `${t.name} (${t.rows})`;
    link.addEventListener("click", () => void showTable(t.name));
    li.appendChild(link);
    tableList.appendChild(li);
  }
  panel.appendChild(tableList);
  panel.appendChild(preview);

  const mapBox = document.createElement("div");
  mapBox.className = "map-box";
  panel.appendChild(mapBox);
  const map = new SvgMap(mapBox, { tileUrlTemplate: ctx.tileUrl });
  void (async () => {
    const stops = await api.stopsLayer(sessionId);
    map.fitToFeatures([stops]);
    map.setStops(stops);
    try {
      const shapes = await api.shapesLayer(sessionId);
      if (shapes.features.length) map.setShapes(shapes);
    } catch {
      // shapes are optional
    }
  })();

  const onward = document.createElement("button");
  onward.id = "to-build";
  onward.textContent = "Configure network →";
  onward.addEventListener("click", () => store.goto(3));
  panel.appendChild(onward);

  container.appendChild(panel);
}
