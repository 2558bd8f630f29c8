import { ApiClient } from "./api.js";
import { renderApp } from "./app.js";
import { WorkflowStore } from "./state.js";

const params = new URLSearchParams(window.location.search);
const apiBase = params.get("api") ?? "";
const tileUrl = params.get("tiles") ?? "https://tile.openstreetmap.org/{z}/{x}/{y}.png";

const root = document.getElementById("app");
if (root) {
  renderApp(root, { store: new WorkflowStore(), api: new ApiClient(apiBase), tileUrl });
}
