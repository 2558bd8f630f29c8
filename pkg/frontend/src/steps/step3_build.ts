// Step 3: pick service ids and walking parameters, build the network.

import { ApiError } from "../api.js";
import type { AppContext } from "../context.js";

export function renderStep3(container: HTMLElement, ctx: AppContext): void {
  const { store, api } = ctx;
  const s = store.get();
  if (!s.sessionId) return;
  const sessionId = s.sessionId;

  const panel = document.createElement("section");
  panel.className = "step-panel step-build";
  panel.innerHTML = `<h2>3. Build the spatiotemporal network</h2>`;

  const serviceBox = document.createElement("fieldset");
  serviceBox.className = "service-box";
  serviceBox.innerHTML = "<legend>Service ids</legend>";
  panel.appendChild(serviceBox);
  void api.services(sessionId).then((services) => {
    for (const svc of services) {
      const label = document.createElement("label");
      const cb = document.createElement("input");
      cb.type = "checkbox";
      cb.value = svc.service_id;
      cb.className = "service-check";
      if (s.buildParams?.service_ids.includes(svc.service_id)) cb.checked = true;
      label.appendChild(cb);
      label.append(` ${svc.service_id} (${svc.trips} trips)`);
      serviceBox.appendChild(label);
    }
  });

  const walkLabel = document.createElement("label");
  walkLabel.append("Max walk (m) ");
  const walkInput = document.createElement("input");
  walkInput.type = "number";
  walkInput.id = "max-walk";
  walkInput.value = String(s.buildParams?.max_walk_m ?? 402.3);
  walkLabel.appendChild(walkInput);
  panel.appendChild(walkLabel);

  const speedLabel = document.createElement("label");
  speedLabel.append("Walk speed (m/s) ");
  const speedInput = document.createElement("input");
  speedInput.type = "number";
  speedInput.id = "walk-speed";
  speedInput.step = "0.01";
  speedInput.value = String(s.buildParams?.walk_speed_mps ?? 1.34);
  speedLabel.appendChild(speedInput);
  panel.appendChild(speedLabel);

  const button = document.createElement("button");
  button.id = "build-btn";
  button.textContent = s.busy ? "Building…" : "Build network";
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

  if (s.network) {
    const summary = document.createElement("p");
    summary.className = "network-summary";
    summary.textContent = `Network ready: ${s.network.nodes} nodes, ${s.network.links} links over ${s.network.stops} stops.`;
    panel.appendChild(summary);
    const download = document.createElement("a");
    download.id = "download-net";
    download.href = api.networkDownloadUrl(sessionId);
    download.textContent = "Download serialized network";
    download.setAttribute("download", "network.stn");
    panel.appendChild(download);
    const onward = document.createElement("button");
    onward.id = "to-isochrone";
    onward.textContent = "Isochrones →";
    onward.addEventListener("click", () => store.goto(4));
    panel.appendChild(onward);
  }

  button.addEventListener("click", async () => {
    const chosen = Array.from(serviceBox.querySelectorAll<HTMLInputElement>(".service-check:checked")).map(
      (cb) => cb.value,
    );
    const maxWalk = Number(walkInput.value);
    const speed = Number(speedInput.value);
    if (chosen.length === 0) {
      store.set({ error: "select at least one service id" });
      return;
    }
    if (!(maxWalk > 0) || !(speed > 0)) {
      store.set({ error: "walking distance and speed must be positive" });
      return;
    }
    store.set({ busy: true, error: null });
    try {
      const params = { service_ids: chosen, max_walk_m: maxWalk, walk_speed_mps: speed };
      const job = await api.buildNetwork(sessionId, params);
      const final = await api.waitForJob(sessionId, job, (st) => {
        progress.textContent = `${st.phase} ${(st.progress * 100).toFixed(0)}%`;
      });
      if (final.phase === "failed") {
        store.set({ busy: false, error: `build failed: ${final.message}` });
        return;
      }
      const network = await api.networkInfo(sessionId);
      store.set({ busy: false, buildParams: params, network, step: 4 });
    } catch (err) {
      const msg = err instanceof ApiError ? `${err.status}: ${err.message}` : String(err);
      store.set({ busy: false, error: msg });
    }
  });

  container.appendChild(panel);
}
