// Step gating must mirror the server's 409 rules.

import { describe, expect, it } from "vitest";

import { WorkflowStore } from "../src/state.js";
import type { FeedSummary, NetworkInfo } from "../src/types.js";

const feed: FeedSummary = { tables: [{ name: "stops", rows: 2 }], findings: 0, fatal: false };
const network: NetworkInfo = {
  stops: 2,
  nodes: 8,
  links: 9,
  service_ids: ["WK"],
  max_walk_m: 402.3,
  walk_speed_mps: 1.34,
  download_url: "/sessions/x/network/download",
};

describe("WorkflowStore gating", () => {
  it("only step 1 is unlocked initially", () => {
    const store = new WorkflowStore();
    expect(store.stepUnlocked(1)).toBe(true);
    for (const step of [2, 3, 4, 5] as const) {
      expect(store.stepUnlocked(step)).toBe(false);
    }
  });

  it("feed unlocks inspection and build config, not queries", () => {
    const store = new WorkflowStore();
    store.set({ feed });
    expect(store.stepUnlocked(2)).toBe(true);
    expect(store.stepUnlocked(3)).toBe(true);
    expect(store.stepUnlocked(4)).toBe(false);
    expect(store.stepUnlocked(5)).toBe(false);
  });

  it("network unlocks the query steps", () => {
    const store = new WorkflowStore();
    store.set({ feed, network });
    expect(store.stepUnlocked(4)).toBe(true);
    expect(store.stepUnlocked(5)).toBe(true);
  });

  it("goto refuses locked steps and keeps the current one", () => {
    const store = new WorkflowStore();
    expect(store.goto(4)).toBe(false);
    expect(store.get().step).toBe(1);
    store.set({ feed });
    expect(store.goto(2)).toBe(true);
    expect(store.get().step).toBe(2);
    expect(store.goto(5)).toBe(false);
    expect(store.get().step).toBe(2);
  });

  it("notifies subscribers on every change", () => {
    const store = new WorkflowStore();
    const seen: number[] = [];
    const unsubscribe = store.subscribe((s) => seen.push(s.step));
    store.set({ feed });
    store.goto(2);
    unsubscribe();
    store.goto(3);
    expect(seen).toEqual([1, 2]);
  });
});
