import type { ApiClient } from "./api.js";
import type { WorkflowStore } from "./state.js";

export interface AppContext {
  store: WorkflowStore;
  api: ApiClient;
  tileUrl: string;
}
