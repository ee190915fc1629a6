import { ApiClient } from "./api.js";
import { SessionScreen } from "./app.js";

declare global {
  interface Window {
    CINEMOOD_SERVICE_URL?: string;
  }
}

function serviceUrl(): string {
  const params = new URLSearchParams(window.location.search);
  return params.get("service") ?? window.CINEMOOD_SERVICE_URL ?? "http://127.0.0.1:8765";
}

const root = document.getElementById("app");
if (!root) {
  throw new Error("missing #app mount point");
}
const params = new URLSearchParams(window.location.search);
const screen = new SessionScreen(root, new ApiClient(serviceUrl()));
void screen.start(params.get("session") ?? undefined);
