// Stacked journey-time chart: walk/wait/vehicle areas plus a total line.
// Every rendered value comes straight from the service document; the chart
// never recomputes travel times client-side.

import { SERIES_COLORS } from "./colors.js";
import type { ProfileSampleDoc } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface ChartOptions {
  width?: number;
  height?: number;
}

function fmtTime(seconds: number): string {
  const h = Math.floor(seconds / 3600);
  const m = Math.floor((seconds % 3600) / 60);
  return `${String(h).padStart(2, "0")}:${String(m).padStart(2, "0")}`;
}

function fmtMin(seconds: number): string {
  return `${(seconds / 60).toFixed(1)} min`;
}

/** Consecutive runs of reachable samples; unreachable samples split runs into gaps. */
export function reachableRuns(samples: ProfileSampleDoc[]): ProfileSampleDoc[][] {
  const runs: ProfileSampleDoc[][] = [];
  let current: ProfileSampleDoc[] = [];
  for (const s of samples) {
    if (s.reachable) {
      current.push(s);
    } else if (current.length) {
      runs.push(current);
      current = [];
    }
  }
  if (current.length) runs.push(current);
  return runs;
}

export function renderProfileChart(
  container: HTMLElement,
  samples: ProfileSampleDoc[],
  options: ChartOptions = {},
): SVGSVGElement {
  const width = options.width ?? 640;
  const height = options.height ?? 260;
  const margin = { left: 46, right: 10, top: 10, bottom: 24 };
  const innerW = width - margin.left - margin.right;
  const innerH = height - margin.top - margin.bottom;

  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  svg.setAttribute("width", String(width));
  svg.setAttribute("height", String(height));
  svg.classList.add("profile-chart");

  const t0 = samples.length ? samples[0]!.departure_s : 0;
  const t1 = samples.length ? samples[samples.length - 1]!.departure_s : 1;
  const maxTotal = Math.max(60, ...samples.filter((s) => s.reachable).map((s) => s.total_s ?? 0));
  const x = (t: number) => margin.left + (t1 === t0 ? innerW / 2 : ((t - t0) / (t1 - t0)) * innerW);
  const y = (v: number) => margin.top + innerH - (v / maxTotal) * innerH;

  const axis = document.createElementNS(SVG_NS, "g");
  axis.setAttribute("class", "chart-axis");
  const base = document.createElementNS(SVG_NS, "line");
  base.setAttribute("x1", String(margin.left));
  base.setAttribute("x2", String(width - margin.right));
  base.setAttribute("y1", String(margin.top + innerH));
  base.setAttribute("y2", String(margin.top + innerH));
  axis.appendChild(base);
  for (const t of [t0, (t0 + t1) / 2, t1]) {
    const label = document.createElementNS(SVG_NS, "text");
    label.setAttribute("x", String(x(t)));
    label.setAttribute("y", String(height - 6));
    label.setAttribute("text-anchor", "middle");
    label.textContent = fmtTime(t);
    axis.appendChild(label);
  }
  for (const v of [maxTotal / 2, maxTotal]) {
    const label = document.createElementNS(SVG_NS, "text");
    label.setAttribute("x", String(margin.left - 6));
    label.setAttribute("y", String(y(v) + 4));
    label.setAttribute("text-anchor", "end");
    label.textContent = `${Math.round(v / 60)}m`;
    axis.appendChild(label);
  }
  svg.appendChild(axis);

  // Stacked layers, bottom to top: walk, wait, vehicle. The cumulative stack
  // uses the server's per-sample values untouched.
  const runs = reachableRuns(samples);
  const layers: { name: "walk" | "wait" | "vehicle"; lower: (s: ProfileSampleDoc) => number; upper: (s: ProfileSampleDoc) => number }[] = [
    { name: "walk", lower: () => 0, upper: (s) => s.walk_s! },
    { name: "wait", lower: (s) => s.walk_s!, upper: (s) => s.walk_s! + s.wait_s! },
    { name: "vehicle", lower: (s) => s.walk_s! + s.wait_s!, upper: (s) => s.walk_s! + s.wait_s! + s.vehicle_s! },
  ];
  for (const layer of layers) {
    for (const run of runs) {
      const top = run.map((s) => `${x(s.departure_s).toFixed(1)},${y(layer.upper(s)).toFixed(1)}`);
      const bottom = run
        .slice()
        .reverse()
        .map((s) => `${x(s.departure_s).toFixed(1)},${y(layer.lower(s)).toFixed(1)}`);
      const path = document.createElementNS(SVG_NS, "path");
      path.setAttribute("d", `M${[...top, ...bottom].join("L")}Z`);
      path.setAttribute("fill", SERIES_COLORS[layer.name]);
      path.setAttribute("class", `series series-${layer.name}`);
      path.setAttribute("data-series", layer.name);
      svg.appendChild(path);
    }
  }

  // Total journey time as a line on top (red), one polyline per reachable run.
  for (const run of runs) {
    const line = document.createElementNS(SVG_NS, "polyline");
    line.setAttribute(
      "points",
      run.map((s) => `${x(s.departure_s).toFixed(1)},${y(s.total_s!).toFixed(1)}`).join(" "),
    );
    line.setAttribute("fill", "none");
    line.setAttribute("stroke", SERIES_COLORS.total);
    line.setAttribute("stroke-width", "2");
    line.setAttribute("class", "series series-total");
    line.setAttribute("data-series", "total");
    svg.appendChild(line);
  }

  // Invisible hover targets carrying the exact server values.
  const tooltip = document.createElement("div");
  tooltip.className = "chart-tooltip";
  tooltip.style.display = "none";
  container.appendChild(tooltip);
  const slot = samples.length > 1 ? innerW / (samples.length - 1) : innerW;
  samples.forEach((s) => {
    const hit = document.createElementNS(SVG_NS, "rect");
    hit.setAttribute("x", String(x(s.departure_s) - slot / 2));
    hit.setAttribute("y", String(margin.top));
    hit.setAttribute("width", String(slot));
    hit.setAttribute("height", String(innerH));
    hit.setAttribute("fill", "transparent");
    hit.setAttribute("class", "sample-hit");
    hit.setAttribute("data-departure", String(s.departure_s));
    hit.setAttribute("data-reachable", String(s.reachable));
    if (s.reachable) {
      hit.setAttribute("data-walk", String(s.walk_s));
      hit.setAttribute("data-wait", String(s.wait_s));
      hit.setAttribute("data-vehicle", String(s.vehicle_s));
      hit.setAttribute("data-total", String(s.total_s));
    }
    hit.addEventListener("mouseenter", () => {
      tooltip.style.display = "block";
      tooltip.innerHTML = s.reachable
        ? `<strong>${fmtTime(s.departure_s)}</strong>` +
          `<span class="tt-walk">walk ${fmtMin(s.walk_s!)}</span>` +
          `<span class="tt-wait">wait ${fmtMin(s.wait_s!)}</span>` +
          `<span class="tt-vehicle">vehicle ${fmtMin(s.vehicle_s!)}</span>` +
          `<span class="tt-total">total ${fmtMin(s.total_s!)}</span>`
        : `<strong>${fmtTime(s.departure_s)}</strong><span>unreachable</span>`;
    });
    hit.addEventListener("mouseleave", () => {
      tooltip.style.display = "none";
    });
    svg.appendChild(hit);
  });

  const legend = document.createElement("div");
  legend.className = "chart-legend";
  for (const [name, color] of Object.entries(SERIES_COLORS)) {
    const item = document.createElement("span");
    item.className = "legend-item";
    item.innerHTML = `<i style="background:${color}"></i>${name}`;
    legend.appendChild(item);
  }
  container.appendChild(svg);
  container.appendChild(legend);
  return svg;
}
