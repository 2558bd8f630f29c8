// Thin typed client for the gtfs2stn HTTP service; all state lives server-side.

import type {
  BuildParams,
  FeatureCollection,
  FeedSummary,
  IsochroneRequest,
  JobStatus,
  NetworkInfo,
  ProfileDocument,
  ProfileRequest,
  ServiceInfo,
  TablePage,
} from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, detail: string) {
    super(detail);
    this.name = "ApiError";
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

const sleep = (ms: number) => new Promise((resolve) => setTimeout(resolve, ms));

export class ApiClient {
  constructor(
    private baseUrl: string = "",
    private fetchFn: FetchLike = (...args) => fetch(...args),
  ) {}

  private async request(path: string, init?: RequestInit): Promise<Response> {
    const resp = await this.fetchFn(this.baseUrl + path, init);
    if (!resp.ok) {
      let detail = resp.statusText;
      try {
        const body = await resp.json();
        if (body && typeof body.detail === "string") detail = body.detail;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(resp.status, detail);
    }
    return resp;
  }

  private async json<T>(path: string, init?: RequestInit): Promise<T> {
    return (await this.request(path, init)).json() as Promise<T>;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.json<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  async createSession(): Promise<string> {
    const doc = await this.json<{ session_id: string }>("/sessions", { method: "POST" });
    return doc.session_id;
  }

  uploadFeed(sessionId: string, file: Blob, filename = "feed.zip"): Promise<JobStatus> {
    const form = new FormData();
    form.append("file", file, filename);
    return this.json<JobStatus>(`/sessions/${sessionId}/feed`, { method: "POST", body: form });
  }

  jobStatus(sessionId: string, jobId: string): Promise<JobStatus> {
    return this.json<JobStatus>(`/sessions/${sessionId}/jobs/${jobId}`);
  }

  /** Poll a job until it settles; resolves with the final status (including failures). */
  async waitForJob(
    sessionId: string,
    job: JobStatus,
    onProgress?: (status: JobStatus) => void,
    intervalMs = 150,
    timeoutMs = 120_000,
  ): Promise<JobStatus> {
    const deadline = Date.now() + timeoutMs;
    let status = job;
    while (status.phase !== "done" && status.phase !== "failed") {
      if (Date.now() > deadline) throw new ApiError(408, "timed out waiting for the job");
      await sleep(intervalMs);
      status = await this.jobStatus(sessionId, job.job_id);
      onProgress?.(status);
    }
    return status;
  }

  tables(sessionId: string): Promise<FeedSummary> {
    return this.json<FeedSummary>(`/sessions/${sessionId}/feed/tables`);
  }

  tablePage(sessionId: string, name: string, page: number, pageSize = 20): Promise<TablePage> {
    return this.json<TablePage>(
      `/sessions/${sessionId}/feed/tables/${name}?page=${page}&page_size=${pageSize}`,
    );
  }

  stopsLayer(sessionId: string): Promise<FeatureCollection> {
    return this.json<FeatureCollection>(`/sessions/${sessionId}/feed/stops.geojson`);
  }

  shapesLayer(sessionId: string): Promise<FeatureCollection> {
    return this.json<FeatureCollection>(`/sessions/${sessionId}/feed/shapes.geojson`);
  }

  services(sessionId: string): Promise<ServiceInfo[]> {
    return this.json<{ services: ServiceInfo[] }>(`/sessions/${sessionId}/feed/services`).then(
      (doc) => doc.services,
    );
  }

  buildNetwork(sessionId: string, params: BuildParams): Promise<JobStatus> {
    return this.post<JobStatus>(`/sessions/${sessionId}/network`, params);
  }

  networkInfo(sessionId: string): Promise<NetworkInfo> {
    return this.json<NetworkInfo>(`/sessions/${sessionId}/network`);
  }

  networkDownloadUrl(sessionId: string): string {
    return `${this.baseUrl}/sessions/${sessionId}/network/download`;
  }

  isochrone(sessionId: string, req: IsochroneRequest): Promise<FeatureCollection> {
    return this.post<FeatureCollection>(`/sessions/${sessionId}/isochrone`, req);
  }

  profile(sessionId: string, req: ProfileRequest): Promise<ProfileDocument> {
    return this.post<ProfileDocument>(`/sessions/${sessionId}/profile`, req);
  }
}
