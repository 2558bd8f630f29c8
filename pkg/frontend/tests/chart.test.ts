// Stacked chart: colors per the walk/wait/vehicle/total contract, exact
// server values on the hover targets, gaps for unreachable samples.

import { describe, expect, it } from "vitest";

import { renderProfileChart, reachableRuns } from "../src/chart.js";
import { SERIES_COLORS, hexHue } from "../src/colors.js";
import type { ProfileSampleDoc } from "../src/types.js";

const SAMPLES: ProfileSampleDoc[] = [
  { departure_s: 21600, reachable: true, walk_s: 60, wait_s: 120, vehicle_s: 420, total_s: 600 },
  { departure_s: 22200, reachable: false },
  { departure_s: 22800, reachable: true, walk_s: 0, wait_s: 300, vehicle_s: 300, total_s: 600 },
  { departure_s: 23400, reachable: true, walk_s: 75, wait_s: 45, vehicle_s: 480, total_s: 600 },
];

function render(samples = SAMPLES) {
  const host = document.createElement("div");
  document.body.appendChild(host);
  const svg = renderProfileChart(host, samples);
  return { host, svg };
}

describe("color contract", () => {
  it("walk is blue, wait orange, vehicle green, total red", () => {
    const hue = (name: keyof typeof SERIES_COLORS) => hexHue(SERIES_COLORS[name]);
    const blue = hue("walk");
    expect(blue).toBeGreaterThan(195);
    expect(blue).toBeLessThan(250);
    const orange = hue("wait");
    expect(orange).toBeGreaterThan(20);
    expect(orange).toBeLessThan(45);
    const green = hue("vehicle");
    expect(green).toBeGreaterThan(90);
    expect(green).toBeLessThan(160);
    const red = hue("total");
    expect(red < 15 || red > 345).toBe(true);
  });

  it("chart elements carry the contracted colors", () => {
    const { svg } = render();
    for (const name of ["walk", "wait", "vehicle"] as const) {
      const paths = svg.querySelectorAll(`path[data-series="${name}"]`);
      expect(paths.length).toBeGreaterThan(0);
      for (const p of paths) expect(p.getAttribute("fill")).toBe(SERIES_COLORS[name]);
    }
    const totals = svg.querySelectorAll(`polyline[data-series="total"]`);
    expect(totals.length).toBeGreaterThan(0);
    for (const line of totals) {
      expect(line.getAttribute("stroke")).toBe(SERIES_COLORS.total);
      expect(line.getAttribute("fill")).toBe("none");
    }
  });
});

describe("server values pass through untouched", () => {
  it("hover targets echo the document values and they sum to the total", () => {
    const { svg } = render();
    const hits = Array.from(svg.querySelectorAll("rect.sample-hit"));
    expect(hits).toHaveLength(SAMPLES.length);
    SAMPLES.forEach((s, i) => {
      const hit = hits[i]!;
      expect(hit.getAttribute("data-departure")).toBe(String(s.departure_s));
      if (s.reachable) {
        expect(hit.getAttribute("data-walk")).toBe(String(s.walk_s));
        expect(hit.getAttribute("data-wait")).toBe(String(s.wait_s));
        expect(hit.getAttribute("data-vehicle")).toBe(String(s.vehicle_s));
        expect(hit.getAttribute("data-total")).toBe(String(s.total_s));
        const sum =
          Number(hit.getAttribute("data-walk")) +
          Number(hit.getAttribute("data-wait")) +
          Number(hit.getAttribute("data-vehicle"));
        expect(sum).toBe(Number(hit.getAttribute("data-total")));
      } else {
        expect(hit.getAttribute("data-total")).toBeNull();
      }
    });
  });

  it("tooltip shows all four values on hover", () => {
    const { host, svg } = render();
    const hit = svg.querySelector("rect.sample-hit")!;
    hit.dispatchEvent(new Event("mouseenter"));
    const tooltip = host.querySelector<HTMLElement>(".chart-tooltip")!;
    expect(tooltip.style.display).toBe("block");
    expect(tooltip.textContent).toContain("walk 1.0 min");
    expect(tooltip.textContent).toContain("wait 2.0 min");
    expect(tooltip.textContent).toContain("vehicle 7.0 min");
    expect(tooltip.textContent).toContain("total 10.0 min");
  });
});

describe("unreachable samples", () => {
  it("split the series into runs", () => {
    const runs = reachableRuns(SAMPLES);
    expect(runs.map((r) => r.length)).toEqual([1, 2]);
  });

  it("render as gaps (separate path segments), not zeros", () => {
    const { svg } = render();
    // two reachable runs -> two path segments per stacked series
    for (const name of ["walk", "wait", "vehicle"] as const) {
      expect(svg.querySelectorAll(`path[data-series="${name}"]`)).toHaveLength(2);
    }
    expect(svg.querySelectorAll(`polyline[data-series="total"]`)).toHaveLength(2);
  });

  it("all-unreachable window renders no series geometry", () => {
    const { svg } = render([
      { departure_s: 0, reachable: false },
      { departure_s: 600, reachable: false },
    ]);
    expect(svg.querySelectorAll("[data-series]")).toHaveLength(0);
    expect(svg.querySelectorAll("rect.sample-hit")).toHaveLength(2);
  });
});

describe("legend", () => {
  it("lists the four series with their colors", () => {
    const { host } = render();
    const items = host.querySelectorAll(".chart-legend .legend-item");
    expect(items).toHaveLength(4);
    expect(Array.from(items).map((i) => i.textContent)).toEqual(["walk", "wait", "vehicle", "total"]);
  });
});
