// ApiClient: request shaping, job polling, error surfacing.

import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import { FakeGateway } from "./fake_gateway.js";

function makeClient() {
  const gateway = new FakeGateway();
  return { gateway, api: new ApiClient("", gateway.fetch) };
}

describe("ApiClient", () => {
  it("creates sessions via POST /sessions", async () => {
    const { gateway, api } = makeClient();
    const sid = await api.createSession();
    expect(sid).toMatch(/^s/);
    expect(gateway.calls[0]).toMatchObject({ method: "POST", path: "/sessions", status: 201 });
  });

  it("uploads multipart and polls the job to completion", async () => {
    const { gateway, api } = makeClient();
    const sid = await api.createSession();
    const job = await api.uploadFeed(sid, new Blob([new Uint8Array([1, 2, 3])]), "fixture.zip");
    expect(job.phase).toBe("queued");
    const final = await api.waitForJob(sid, job);
    expect(final.phase).toBe("done");
    const upload = gateway.calls.find((c) => c.path.endsWith("/feed"))!;
    expect(upload.body).toEqual({ upload: true }); // FormData went through
  });

  it("surfaces failed jobs as a final status, not an exception", async () => {
    const { gateway, api } = makeClient();
    const sid = await api.createSession();
    gateway.failNextUpload = true;
    const job = await api.uploadFeed(sid, new Blob([new Uint8Array([0])]));
    const final = await api.waitForJob(sid, job);
    expect(final.phase).toBe("failed");
    expect(final.message).toContain("zip");
  });

  it("posts isochrone requests with the JSON body intact", async () => {
    const { gateway, api } = makeClient();
    const sid = await api.createSession();
    const up = await api.uploadFeed(sid, new Blob([new Uint8Array([1])]));
    await api.waitForJob(sid, up);
    const build = await api.buildNetwork(sid, { service_ids: ["WK"], max_walk_m: 402.3, walk_speed_mps: 1.34 });
    await api.waitForJob(sid, build);
    const req = { origins: [{ stop_id: "SA" }], depart: "08:00:00", cutoff_s: 3600, bands: [1200, 3600] };
    const doc = await api.isochrone(sid, req);
    expect(doc.features.filter((f) => f.properties.kind === "band")).toHaveLength(2);
    const call = gateway.calls.find((c) => c.path.endsWith("/isochrone"))!;
    expect(call.body).toEqual(req);
  });

  it("maps HTTP errors to ApiError with the server detail", async () => {
    const { api } = makeClient();
    const sid = await api.createSession();
    await expect(api.networkInfo(sid)).rejects.toThrowError(ApiError);
    await expect(api.networkInfo(sid)).rejects.toMatchObject({ status: 409 });
    await expect(api.tables("nope")).rejects.toMatchObject({ status: 404 });
  });
});
