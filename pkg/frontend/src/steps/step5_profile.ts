// Step 5: origin-destination journey profile with the stacked walk/wait/vehicle chart.

import { ApiError } from "../api.js";
import { renderProfileChart } from "../chart.js";
import type { AppContext } from "../context.js";
import { SvgMap } from "../map.js";
import type { EndpointRef, ProfileRequest } from "../types.js";

const form = {
  windowStart: "06:00:00",
  windowEnd: "22:00:00",
  stepMin: 10,
};

function endpointLabel(ep: EndpointRef | null): string {
  if (!ep) return "click the map";
  return "stop_id" in ep ? ep.stop_id : `${ep.lat.toFixed(5)},${ep.lon.toFixed(5)}`;
}

export function renderStep5(container: HTMLElement, ctx: AppContext): void {
  const { store, api } = ctx;
  const s = store.get();
  if (!s.sessionId || !s.network) return;
  const sessionId = s.sessionId;

  const panel = document.createElement("section");
  panel.className = "step-panel step-profile";
  panel.innerHTML = `<h2>5. Journey time between an origin and a destination</h2>`;

  const modeRow = document.createElement("div");
  modeRow.className = "mode-row";
  for (const mode of ["origin", "destination"] as const) {
    const btn = document.createElement("button");
    btn.className = "mode-btn" + (s.selection.mode === mode ? " active" : "");
    btn.dataset.mode = mode;
    btn.textContent = `pick ${mode}`;
    btn.addEventListener("click", () => store.set({ selection: { ...store.get().selection, mode } }));
    modeRow.appendChild(btn);
  }
  panel.appendChild(modeRow);

  const pickInfo = document.createElement("div");
  pickInfo.className = "pick-info";
  pickInfo.innerHTML = `origin: <b id="pick-origin-label">${endpointLabel(s.selection.origin)}</b> · destination: <b id="pick-dest-label">${endpointLabel(s.selection.destination)}</b>`;
  panel.appendChild(pickInfo);

  const controls = document.createElement("div");
  controls.className = "controls";
  const windowLabel = document.createElement("label");
  windowLabel.append("Window ");
  const startInput = document.createElement("input");
  startInput.id = "window-start";
  startInput.value = form.windowStart;
  startInput.addEventListener("input", () => (form.windowStart = startInput.value));
  const endInput = document.createElement("input");
  endInput.id = "window-end";
  endInput.value = form.windowEnd;
  endInput.addEventListener("input", () => (form.windowEnd = endInput.value));
  windowLabel.append(startInput, " – ", endInput);
  controls.appendChild(windowLabel);

  const stepLabel = document.createElement("label");
  stepLabel.append("Step (min) ");
  const stepInput = document.createElement("input");
  stepInput.id = "step-min";
  stepInput.type = "number";
  stepInput.value = String(form.stepMin);
  stepInput.addEventListener("input", () => (form.stepMin = Number(stepInput.value)));
  stepLabel.appendChild(stepInput);
  controls.appendChild(stepLabel);

  const runBtn = document.createElement("button");
  runBtn.id = "run-profile";
  runBtn.textContent = "Analyze journey times";
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
  const chartBox = document.createElement("div");
  chartBox.className = "chart-box";
  panel.appendChild(chartBox);

  const map = new SvgMap(mapBox, { tileUrlTemplate: ctx.tileUrl });
  void (async () => {
    const stops = await api.stopsLayer(sessionId);
    map.fitToFeatures([stops]);
    const assign = (ep: EndpointRef) => {
      const sel = store.get().selection;
      store.set({
        selection: { ...sel, [sel.mode]: ep },
      });
    };
    map.setStops(stops, (stopId) => assign({ stop_id: stopId }));
    map.onMapClick((lon, lat) => assign({ lat, lon }));
    for (const role of ["origin", "destination"] as const) {
      const ep = store.get().selection[role];
      if (!ep) continue;
      if ("stop_id" in ep) {
        const f = stops.features.find((x) => x.properties.stop_id === ep.stop_id);
        if (f?.geometry) {
          const [lon, lat] = f.geometry.coordinates as [number, number];
          map.setPick(role === "origin" ? "origin" : "destination", lon, lat);
        }
      } else {
        map.setPick(role === "origin" ? "origin" : "destination", ep.lon, ep.lat);
      }
    }
  })();

  if (s.lastProfile) {
    renderProfileChart(chartBox, s.lastProfile.response.samples);
  }

  runBtn.addEventListener("click", async () => {
    const { origin, destination } = store.get().selection;
    if (!origin || !destination) {
      store.set({ error: "pick both endpoints first" });
      return;
    }
    if (!(form.stepMin > 0)) {
      store.set({ error: "step must be positive" });
      return;
    }
    const request: ProfileRequest = {
      origin,
      dest: destination,
      window_start: form.windowStart,
      window_end: form.windowEnd,
      step_s: form.stepMin * 60,
    };
    try {
      const response = await api.profile(sessionId, request);
      store.set({ lastProfile: { request, response }, error: null });
    } catch (err) {
      const msg = err instanceof ApiError ? `${err.status}: ${err.message}` : String(err);
      store.set({ error: msg });
    }
  });

  container.appendChild(panel);
}
