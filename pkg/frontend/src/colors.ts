// Fixed series colors: walking blue, waiting orange, in-vehicle green, total red.
export const SERIES_COLORS = {
  walk: "#2874b8",
  wait: "#f28e2b",
  vehicle: "#33a02c",
  total: "#d62728",
} as const;

export type SeriesName = keyof typeof SERIES_COLORS;

// Sequential ramp for isochrone bands, nearest threshold first.
export const BAND_RAMP = [
  "#2b83ba",
  "#64abb0",
  "#9dd3a7",
  "#d3ecb4",
  "#ffedaa",
  "#fec980",
  "#f99e59",
  "#e85b3a",
  "#d7191c",
];

export function bandColor(index: number, count: number): string {
  if (count <= 1) return BAND_RAMP[0]!;
  const pos = (index / (count - 1)) * (BAND_RAMP.length - 1);
  return BAND_RAMP[Math.round(pos)]!;
}

/** Hue in degrees [0, 360) of a #rrggbb color; NaN for greys. */
export function hexHue(hex: string): number {
  const r = parseInt(hex.slice(1, 3), 16) / 255;
  const g = parseInt(hex.slice(3, 5), 16) / 255;
  const b = parseInt(hex.slice(5, 7), 16) / 255;
  const max = Math.max(r, g, b);
  const min = Math.min(r, g, b);
  const d = max - min;
  if (d === 0) return NaN;
  let h: number;
  if (max === r) h = ((g - b) / d) % 6;
  else if (max === g) h = (b - r) / d + 2;
  else h = (r - g) / d + 4;
  return ((h * 60) % 360 + 360) % 360;
}
