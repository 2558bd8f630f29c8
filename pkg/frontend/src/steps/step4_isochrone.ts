// Step 4: click-to-query isochrone explorer with banded overlay and history.

import { ApiError } from "../api.js";
import type { AppContext } from "../context.js";
import { SvgMap } from "../map.js";
import type { EndpointRef, IsochroneRequest } from "../types.js";

const DEFAULT_BANDS_MIN = [20, 40, 60, 80, 100, 120];

const form = {
  depart: "08:00:00",
  cutoffMin: 120,
  reverse: false,
};

let requestSeq = 0;

function endpointLabel(ep: EndpointRef): string {
  return "stop_id" in ep ? ep.stop_id : `${ep.lat.toFixed(5)},${ep.lon.toFixed(5)}`;
}

export function renderStep4(container: HTMLElement, ctx: AppContext): void {
  const { store, api } = ctx;
  const s = store.get();
  if (!s.sessionId || !s.network) return;
  const sessionId = s.sessionId;

  const panel = document.createElement("section");
  panel.className = "step-panel step-isochrone";
  panel.innerHTML = `<h2>4. Isochrone explorer</h2>
    <p>Click a stop (or anywhere on the map) to choose the origin, then run the query.</p>`;

  const picked = document.createElement("div");
  picked.className = "picked-origin";
  picked.textContent = s.selection.origin ? `origin: ${endpointLabel(s.selection.origin)}` : "origin: click the map";
  panel.appendChild(picked);

  const controls = document.createElement("div");
  controls.className = "controls";

  const departLabel = document.createElement("label");
  departLabel.append(form.reverse ? "Arrive by " : "Depart at ");
  const departInput = document.createElement("input");
  departInput.id = "depart-time";
  departInput.value = form.depart;
  departInput.addEventListener("input", () => (form.depart = departInput.value));
  departLabel.appendChild(departInput);
  controls.appendChild(departLabel);

  const cutoffLabel = document.createElement("label");
  cutoffLabel.append("Cutoff (min) ");
  const cutoffInput = document.createElement("input");
  cutoffInput.id = "cutoff-min";
  cutoffInput.type = "number";
  cutoffInput.value = String(form.cutoffMin);
  cutoffInput.addEventListener("input", () => (form.cutoffMin = Number(cutoffInput.value)));
  cutoffLabel.appendChild(cutoffInput);
  controls.appendChild(cutoffLabel);

  const dirLabel = document.createElement("label");
  const dirToggle = document.createElement("input");
  dirToggle.type = "checkbox";
  dirToggle.id = "reverse-toggle";
  dirToggle.checked = form.reverse;
  dirToggle.addEventListener("change", () => {
    form.reverse = dirToggle.checked;
    store.set({}); // re-render labels
  });
  dirLabel.append(dirToggle, " arrive-by (reverse)");
  controls.appendChild(dirLabel);

  const runBtn = document.createElement("button");
  runBtn.id = "run-isochrone";
  runBtn.textContent = "Generate isochrone";
  controls.appendChild(runBtn);
  panel.appendChild(controls);

  if (s.error) {
    const banner = document.createElement("div");
    banner.className = "error-banner";
    banner.textContent = s.error;
    panel.appendChild(banner);
  }

  const mapBox = document.createElement("div");
  mapBox.className = "map-box";
  panel.appendChild(mapBox);
  const legendBox = document.createElement("div");
  legendBox.className = "band-legend";
  panel.appendChild(legendBox);

  const historyBox = document.createElement("ol");
  historyBox.className = "query-history";
  for (const old of s.isochroneHistory) {
    const li = document.createElement("li");
    li.textContent = `${old.origins.map(endpointLabel).join("+")} @ ${old.depart ?? old.arrive} / ${
      (old.cutoff_s / 60) | 0
    } min${old.arrive ? " (reverse)" : ""}`;
    historyBox.appendChild(li);
  }
  panel.appendChild(historyBox);

  const map = new SvgMap(mapBox, { tileUrlTemplate: ctx.tileUrl });

  const drawOverlay = () => {
    if (!store.get().lastIsochrone) return;
    const { response } = store.get().lastIsochrone!;
    const legend = map.setBands(response.features);
    legendBox.replaceChildren();
    for (const { threshold_s, color } of legend) {
      const item = document.createElement("span");
      item.className = "legend-item";
      item.innerHTML = `<i style="background:${color}"></i>${threshold_s / 60} min`;
      legendBox.appendChild(item);
    }
  };

  void (async () => {
    const stops = await api.stopsLayer(sessionId);
    const layers = [stops];
    const last = store.get().lastIsochrone;
    if (last) layers.push(last.response);
    map.fitToFeatures(layers);
    map.setStops(stops, (stopId) => {
      store.set({ selection: { ...store.get().selection, origin: { stop_id: stopId } } });
    });
    drawOverlay();
    const origin = store.get().selection.origin;
    if (origin && "stop_id" in origin) {
      const f = stops.features.find((x) => x.properties.stop_id === origin.stop_id);
      if (f?.geometry) {
        const [lon, lat] = f.geometry.coordinates as [number, number];
        map.setPick("origin", lon, lat);
      }
    } else if (origin) {
      map.setPick("origin", origin.lon, origin.lat);
    }
  })();

  map.onMapClick((lon, lat) => {
    store.set({ selection: { ...store.get().selection, origin: { lat, lon } } });
  });

  runBtn.addEventListener("click", async () => {
    const origin = store.get().selection.origin;
    if (!origin) {
      store.set({ error: "pick an origin first" });
      return;
    }
    const anchor = form.depart;
    const request: IsochroneRequest = {
      origins: [origin],
      cutoff_s: form.cutoffMin * 60,
      bands: DEFAULT_BANDS_MIN.filter((m) => m <= form.cutoffMin).map((m) => m * 60),
      ...(form.reverse ? { arrive: anchor } : { depart: anchor }),
    };
    const seq = ++requestSeq;
    try {
      const response = await api.isochrone(sessionId, request);
      if (seq !== requestSeq) return; // superseded by a newer request
      store.set({
        lastIsochrone: { request, response },
        isochroneHistory: [...store.get().isochroneHistory, request],
        error: null,
      });
    } catch (err) {
      if (seq !== requestSeq) return;
      const msg = err instanceof ApiError ? `${err.status}: ${err.message}` : String(err);
      store.set({ error: msg });
    }
  });

  const onward = document.createElement("button");
  onward.id = "to-profile";
  onward.textContent = "OD journey profile →";
  onward.addEventListener("click", () => store.goto(5));
  panel.appendChild(onward);

  container.appendChild(panel);
}
