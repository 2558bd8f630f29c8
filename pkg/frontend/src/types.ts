// Documents exchanged with the gtfs2stn HTTP service.

export interface JobStatus {
  job_id: string;
  phase: "queued" | "parsing" | "building" | "done" | "failed";
  progress: number;
  message: string;
}

export interface TableInfo {
  name: string;
  rows: number;
}

export interface FeedSummary {
  tables: TableInfo[];
  findings: number;
  fatal: boolean;
}

export interface TablePage {
  name: string;
  page: number;
  page_size: number;
  total_rows: number;
  columns: string[];
  rows: (string | number | null)[][];
}

export interface ServiceInfo {
  service_id: string;
  trips: number;
}

export interface NetworkInfo {
  stops: number;
  nodes: number;
  links: number;
  service_ids: string[];
  max_walk_m: number;
  walk_speed_mps: number;
  download_url: string;
}

export interface BuildParams {
  service_ids: string[];
  max_walk_m: number;
  walk_speed_mps: number;
}

export type EndpointRef = { stop_id: string } | { lat: number; lon: number };

export interface IsochroneRequest {
  origins: EndpointRef[];
  depart?: string;
  arrive?: string;
  cutoff_s: number;
  bands?: number[];
}

export interface ProfileRequest {
  origin: EndpointRef;
  dest: EndpointRef;
  window_start: string;
  window_end: string;
  step_s: number;
}

export interface GeoFeature {
  type: "Feature";
  geometry: { type: string; coordinates: unknown } | null;
  properties: Record<string, any>;
}

export interface FeatureCollection {
  type: "FeatureCollection";
  features: GeoFeature[];
  [foreign: string]: unknown;
}

export interface ProfileSampleDoc {
  departure_s: number;
  reachable: boolean;
  total_s?: number;
  walk_s?: number;
  wait_s?: number;
  vehicle_s?: number;
}

export interface ProfileDocument {
  origin: Record<string, unknown>;
  dest: Record<string, unknown>;
  window_start_s: number;
  window_end_s: number;
  step_s: number;
  samples: ProfileSampleDoc[];
}
