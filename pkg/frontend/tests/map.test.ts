// SVG map: projection sanity, layer rendering, band ordering, pick markers.

import { describe, expect, it } from "vitest";

import { SvgMap } from "../src/map.js";
import type { FeatureCollection, GeoFeature } from "../src/types.js";

const STOPS: FeatureCollection = {
  type: "FeatureCollection",
  features: [
    { type: "Feature", geometry: { type: "Point", coordinates: [-86.78, 36.16] }, properties: { stop_id: "SA", name: "Alpha" } },
    { type: "Feature", geometry: { type: "Point", coordinates: [-86.77, 36.17] }, properties: { stop_id: "SB", name: "Beta" } },
  ],
};

function squareBand(threshold: number, d: number): GeoFeature {
  return {
    type: "Feature",
    geometry: {
      type: "MultiPolygon",
      coordinates: [
        [
          [
            [-86.78 - d, 36.16 - d],
            [-86.78 + d, 36.16 - d],
            [-86.78 + d, 36.16 + d],
            [-86.78 - d, 36.16 + d],
            [-86.78 - d, 36.16 - d],
          ],
        ],
      ],
    },
    properties: { kind: "band", threshold_s: threshold, threshold_min: threshold / 60 },
  };
}

function newMap() {
  const host = document.createElement("div");
  document.body.appendChild(host);
  const map = new SvgMap(host, { width: 400, height: 300 });
  map.fitBounds(-86.80, 36.15, -86.75, 36.19);
  return map;
}

describe("projection", () => {
  it("project/unproject round-trips", () => {
    const map = newMap();
    const [x, y] = map.project(-86.77, 36.17);
    const [lon, lat] = map.unproject(x, y);
    expect(lon).toBeCloseTo(-86.77, 6);
    expect(lat).toBeCloseTo(36.17, 6);
  });

  it("keeps fitted bounds inside the viewport", () => {
    const map = newMap();
    for (const [lon, lat] of [
      [-86.80, 36.15],
      [-86.75, 36.19],
    ] as const) {
      const [x, y] = map.project(lon, lat);
      expect(x).toBeGreaterThanOrEqual(0);
      expect(x).toBeLessThanOrEqual(400);
      expect(y).toBeGreaterThanOrEqual(0);
      expect(y).toBeLessThanOrEqual(300);
    }
  });

  it("north is up", () => {
    const map = newMap();
    const [, ySouth] = map.project(-86.78, 36.15);
    const [, yNorth] = map.project(-86.78, 36.19);
    expect(yNorth).toBeLessThan(ySouth);
  });
});

describe("stops layer", () => {
  it("renders one marker per stop with id and tooltip", () => {
    const map = newMap();
    map.setStops(STOPS);
    const dots = map.svg.querySelectorAll("circle.stop-dot");
    expect(dots).toHaveLength(2);
    expect(dots[0]!.getAttribute("data-stop-id")).toBe("SA");
    expect(dots[0]!.querySelector("title")!.textContent).toContain("Alpha");
  });

  it("stop clicks report the id, not a coordinate", () => {
    const map = newMap();
    const picks: string[] = [];
    let mapClicks = 0;
    map.onMapClick(() => mapClicks++);
    map.setStops(STOPS, (stopId) => picks.push(stopId));
    const dot = map.svg.querySelector<SVGCircleElement>('circle[data-stop-id="SB"]')!;
    dot.dispatchEvent(new MouseEvent("click", { bubbles: true }));
    expect(picks).toEqual(["SB"]);
    expect(mapClicks).toBe(0); // stopPropagation keeps the map handler out of it
  });
});

describe("band overlay", () => {
  it("draws larger thresholds underneath smaller ones", () => {
    const map = newMap();
    const legend = map.setBands([squareBand(2400, 0.02), squareBand(1200, 0.01)]);
    expect(legend.map((l) => l.threshold_s)).toEqual([1200, 2400]);
    const paths = Array.from(map.svg.querySelectorAll("path.band-poly"));
    expect(paths.map((p) => p.getAttribute("data-threshold-s"))).toEqual(["2400", "1200"]);
  });

  it("legend colors differ across thresholds", () => {
    const map = newMap();
    const legend = map.setBands([squareBand(1200, 0.01), squareBand(2400, 0.02), squareBand(3600, 0.03)]);
    expect(new Set(legend.map((l) => l.color)).size).toBe(3);
  });

  it("clearBands empties the layer", () => {
    const map = newMap();
    map.setBands([squareBand(1200, 0.01)]);
    map.clearBands();
    expect(map.svg.querySelectorAll("path.band-poly")).toHaveLength(0);
  });
});

describe("pick markers", () => {
  it("one marker per role, replaced on re-pick", () => {
    const map = newMap();
    map.setPick("origin", -86.78, 36.16);
    map.setPick("origin", -86.77, 36.17);
    map.setPick("destination", -86.76, 36.18);
    expect(map.svg.querySelectorAll('[data-pick="origin"]')).toHaveLength(1);
    expect(map.svg.querySelectorAll('[data-pick="destination"]')).toHaveLength(1);
  });
});

describe("shapes layer", () => {
  it("renders polylines with shape ids", () => {
    const map = newMap();
    map.setShapes({
      type: "FeatureCollection",
      features: [
        {
          type: "Feature",
          geometry: { type: "LineString", coordinates: [[-86.78, 36.16], [-86.77, 36.17]] },
          properties: { shape_id: "SH1" },
        },
      ],
    });
    const lines = map.svg.querySelectorAll("polyline.shape-line");
    expect(lines).toHaveLength(1);
    expect(lines[0]!.getAttribute("data-shape-id")).toBe("SH1");
    expect(lines[0]!.getAttribute("points")!.split(" ")).toHaveLength(2);
  });
});
