// Inline SVG map: web-mercator projection, optional raster tile backdrop,
// layers for stops, route shapes, isochrone bands, and endpoint picks.

import { bandColor } from "./colors.js";
import type { FeatureCollection, GeoFeature } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

function mercator(lon: number, lat: number): [number, number] {
  const x = (lon + 180) / 360;
  const clamped = Math.max(-85.05, Math.min(85.05, lat));
  const rad = (clamped * Math.PI) / 180;
  const y = (1 - Math.asinh(Math.tan(rad)) / Math.PI) / 2;
  return [x, y];
}

function inverseMercator(x: number, y: number): [number, number] {
  const lon = x * 360 - 180;
  const lat = (Math.atan(Math.sinh(Math.PI * (1 - 2 * y))) * 180) / Math.PI;
  return [lon, lat];
}

export interface MapOptions {
  width?: number;
  height?: number;
  /** Slippy-tile URL template with {z}/{x}/{y}; empty string disables tiles. */
  tileUrlTemplate?: string;
}

export class SvgMap {
  readonly svg: SVGSVGElement;
  readonly width: number;
  readonly height: number;
  private tileUrlTemplate: string;
  private scale = 1; // pixels per normalized mercator unit
  private x0 = 0;
  private y0 = 0;
  private layers: Record<"tiles" | "bands" | "shapes" | "stops" | "picks", SVGGElement>;
  private clickHandler: ((lon: number, lat: number) => void) | null = null;

  constructor(container: HTMLElement, options: MapOptions = {}) {
    this.width = options.width ?? 640;
    this.height = options.height ?? 440;
    this.tileUrlTemplate = options.tileUrlTemplate ?? "";
    this.svg = document.createElementNS(SVG_NS, "svg");
    this.svg.setAttribute("viewBox", `0 0 ${this.width} ${this.height}`);
    this.svg.setAttribute("width", String(this.width));
    this.svg.setAttribute("height", String(this.height));
    this.svg.classList.add("svg-map");
    const names = ["tiles", "bands", "shapes", "stops", "picks"] as const;
    this.layers = {} as typeof this.layers;
    for (const name of names) {
      const g = document.createElementNS(SVG_NS, "g");
      g.setAttribute("data-layer", name);
      this.svg.appendChild(g);
      this.layers[name] = g;
    }
    this.svg.addEventListener("click", (ev) => {
      if (!this.clickHandler) return;
      const rect = this.svg.getBoundingClientRect();
      const px = rect.width > 0 ? ((ev.clientX - rect.left) / rect.width) * this.width : 0;
      const py = rect.height > 0 ? ((ev.clientY - rect.top) / rect.height) * this.height : 0;
      const [lon, lat] = this.unproject(px, py);
      this.clickHandler(lon, lat);
    });
    container.appendChild(this.svg);
    this.fitBounds(-180, -60, 180, 60);
  }

  onMapClick(handler: (lon: number, lat: number) => void): void {
    this.clickHandler = handler;
  }

  fitBounds(minLon: number, minLat: number, maxLon: number, maxLat: number, padding = 0.08): void {
    const [xa, yb] = mercator(minLon, minLat); // south -> larger y
    const [xb, ya] = mercator(maxLon, maxLat);
    const spanX = Math.max(xb - xa, 1e-9);
    const spanY = Math.max(yb - ya, 1e-9);
    this.scale = Math.min(this.width / spanX, this.height / spanY) / (1 + 2 * padding);
    const cx = (xa + xb) / 2;
    const cy = (ya + yb) / 2;
    this.x0 = cx - this.width / (2 * this.scale);
    this.y0 = cy - this.height / (2 * this.scale);
    this.renderTiles();
  }

  project(lon: number, lat: number): [number, number] {
    const [x, y] = mercator(lon, lat);
    return [(x - this.x0) * this.scale, (y - this.y0) * this.scale];
  }

  unproject(px: number, py: number): [number, number] {
    return inverseMercator(this.x0 + px / this.scale, this.y0 + py / this.scale);
  }

  private renderTiles(): void {
    this.layers.tiles.replaceChildren();
    if (!this.tileUrlTemplate) return;
    const z = Math.max(0, Math.min(19, Math.round(Math.log2(this.scale / 256))));
    const n = 2 ** z;
    const tilePx = this.scale / n;
    const tx0 = Math.max(0, Math.floor(this.x0 * n));
    const ty0 = Math.max(0, Math.floor(this.y0 * n));
    const tx1 = Math.min(n - 1, Math.floor((this.x0 + this.width / this.scale) * n));
    const ty1 = Math.min(n - 1, Math.floor((this.y0 + this.height / this.scale) * n));
    for (let ty = ty0; ty <= ty1; ty++) {
      for (let tx = tx0; tx <= tx1; tx++) {
        const img = document.createElementNS(SVG_NS, "image");
        const url = this.tileUrlTemplate
          .replace("{z}", String(z))
          .replace("{x}", String(tx))
          .replace("{y}", String(ty));
        img.setAttribute("href", url);
        img.setAttribute("x", String((tx / n - this.x0) * this.scale));
        img.setAttribute("y", String((ty / n - this.y0) * this.scale));
        img.setAttribute("width", String(tilePx));
        img.setAttribute("height", String(tilePx));
        this.layers.tiles.appendChild(img);
      }
    }
  }

  fitToFeatures(collections: FeatureCollection[]): void {
    let minLon = Infinity;
    let minLat = Infinity;
    let maxLon = -Infinity;
    let maxLat = -Infinity;
    const visit = (coords: unknown): void => {
      if (Array.isArray(coords) && typeof coords[0] === "number") {
        const [lon, lat] = coords as [number, number];
        minLon = Math.min(minLon, lon);
        maxLon = Math.max(maxLon, lon);
        minLat = Math.min(minLat, lat);
        maxLat = Math.max(maxLat, lat);
      } else if (Array.isArray(coords)) {
        for (const c of coords) visit(c);
      }
    };
    for (const fc of collections) {
      for (const f of fc.features) if (f.geometry) visit(f.geometry.coordinates);
    }
    if (minLon <= maxLon && minLat <= maxLat) {
      this.fitBounds(minLon, minLat, maxLon, maxLat);
    }
  }

  setStops(fc: FeatureCollection, onStopClick?: (stopId: string, name: string) => void): void {
    this.layers.stops.replaceChildren();
    for (const f of fc.features) {
      if (!f.geometry || f.geometry.type !== "Point") continue;
      const [lon, lat] = f.geometry.coordinates as [number, number];
      const [x, y] = this.project(lon, lat);
      const dot = document.createElementNS(SVG_NS, "circle");
      dot.setAttribute("cx", String(x));
      dot.setAttribute("cy", String(y));
      dot.setAttribute("r", "4");
      dot.setAttribute("class", "stop-dot");
      dot.setAttribute("data-stop-id", String(f.properties.stop_id));
      const title = document.createElementNS(SVG_NS, "title");
      title.textContent = `${f.properties.name ?? ""} (${f.properties.stop_id})`;
      dot.appendChild(title);
      if (onStopClick) {
        dot.addEventListener("click", (ev) => {
          ev.stopPropagation();
          onStopClick(String(f.properties.stop_id), String(f.properties.name ?? ""));
        });
      }
      this.layers.stops.appendChild(dot);
    }
  }

  setShapes(fc: FeatureCollection): void {
    this.layers.shapes.replaceChildren();
    for (const f of fc.features) {
      if (!f.geometry || f.geometry.type !== "LineString") continue;
      const pts = (f.geometry.coordinates as [number, number][])
        .map(([lon, lat]) => this.project(lon, lat).join(","))
        .join(" ");
      const line = document.createElementNS(SVG_NS, "polyline");
      line.setAttribute("points", pts);
      line.setAttribute("class", "shape-line");
      line.setAttribute("data-shape-id", String(f.properties.shape_id));
      this.layers.shapes.appendChild(line);
    }
  }

  /** Draw band features (MultiPolygon + threshold_s); larger thresholds go under smaller ones. */
  setBands(features: GeoFeature[]): { threshold_s: number; color: string }[] {
    this.layers.bands.replaceChildren();
    const bands = features
      .filter((f) => f.properties.kind === "band")
      .sort((a, b) => a.properties.threshold_s - b.properties.threshold_s);
    const legend: { threshold_s: number; color: string }[] = [];
    bands.forEach((f, index) => {
      legend.push({ threshold_s: f.properties.threshold_s, color: bandColor(index, bands.length) });
    });
    for (let i = bands.length - 1; i >= 0; i--) {
      const f = bands[i]!;
      const color = legend[i]!.color;
      const multi = (f.geometry?.coordinates ?? []) as [number, number][][][];
      for (const poly of multi) {
        const path = document.createElementNS(SVG_NS, "path");
        const d = poly
          .map(
            (ring) =>
              "M" + ring.map(([lon, lat]) => this.project(lon, lat).map((v) => v.toFixed(1)).join(",")).join("L") + "Z",
          )
          .join("");
        path.setAttribute("d", d);
        path.setAttribute("class", "band-poly");
        path.setAttribute("fill", color);
        path.setAttribute("fill-rule", "evenodd");
        path.setAttribute("data-threshold-s", String(f.properties.threshold_s));
        this.layers.bands.appendChild(path);
      }
    }
    return legend;
  }

  clearBands(): void {
    this.layers.bands.replaceChildren();
  }

  setPick(role: "origin" | "destination", lon: number, lat: number): void {
    const id = `pick-${role}`;
    this.layers.picks.querySelector(`[data-pick="${role}"]`)?.remove();
    const [x, y] = this.project(lon, lat);
    const marker = document.createElementNS(SVG_NS, "circle");
    marker.setAttribute("cx", String(x));
    marker.setAttribute("cy", String(y));
    marker.setAttribute("r", "7");
    marker.setAttribute("class", `pick-marker pick-${role}`);
    marker.setAttribute("data-pick", role);
    marker.setAttribute("id", id);
    this.layers.picks.appendChild(marker);
  }

  clearPicks(): void {
    this.layers.picks.replaceChildren();
  }
}
