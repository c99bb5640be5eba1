// Entry point: resolve the service base URL and boot the app.

import { TeachClient } from "./api.js";
import { App } from "./app.js";

function baseUrl(): string {
  const fromQuery = new URLSearchParams(window.location.search).get("api");
  if (fromQuery) {
    return fromQuery;
  }
  const stored = window.localStorage.getItem("regexteach-api");
  if (stored) {
    return stored;
  }
  return "http://127.0.0.1:8077";
}

const root = document.getElementById("app");
if (root) {
  void new App(root, new TeachClient(baseUrl())).boot();
}
