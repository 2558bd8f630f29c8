// Workflow state machine. Step gating mirrors the server's 409 rules, so the
// client never issues a request the service would reject for step order.

import type {
  BuildParams,
  EndpointRef,
  FeatureCollection,
  FeedSummary,
  IsochroneRequest,
  NetworkInfo,
  ProfileDocument,
  ProfileRequest,
} from "./types.js";

export type StepId = 1 | 2 | 3 | 4 | 5;

export interface MapSelection {
  mode: "origin" | "destination";
  origin: EndpointRef | null;
  destination: EndpointRef | null;
}

export interface WorkflowState {
  step: StepId;
  sessionId: string | null;
  feedName: string | null;
  feed: FeedSummary | null;
  buildParams: BuildParams | null;
  network: NetworkInfo | null;
  lastIsochrone: { request: IsochroneRequest; response: FeatureCollection } | null;
  isochroneHistory: IsochroneRequest[];
  lastProfile: { request: ProfileRequest; response: ProfileDocument } | null;
  selection: MapSelection;
  busy: boolean;
  error: string | null;
}

export function initialState(): WorkflowState {
  return {
    step: 1,
    sessionId: null,
    feedName: null,
    feed: null,
    buildParams: null,
    network: null,
    lastIsochrone: null,
    isochroneHistory: [],
    lastProfile: null,
    selection: { mode: "origin", origin: null, destination: null },
    busy: false,
    error: null,
  };
}

type Listener = (state: WorkflowState) => void;

export class WorkflowStore {
  private state: WorkflowState = initialState();
  private listeners = new Set<Listener>();

  get(): WorkflowState {
    return this.state;
  }

  set(patch: Partial<WorkflowState>): void {
    this.state = { ...this.state, ...patch };
    for (const fn of this.listeners) fn(this.state);
  }

  subscribe(fn: Listener): () => void {
    this.listeners.add(fn);
    return () => this.listeners.delete(fn);
  }

  /** Step N is enterable only once the server state it consumes exists. */
  stepUnlocked(step: StepId): boolean {
    const s = this.state;
    switch (step) {
      case 1:
        return true;
      case 2:
      case 3:
        return s.feed !== null;
      case 4:
      case 5:
        return s.network !== null;
    }
  }

  /** Change step; refused (returns false) when the target is still locked. */
  goto(step: StepId): boolean {
    if (!this.stepUnlocked(step)) return false;
    this.set({ step, error: null });
    return true;
  }
}
