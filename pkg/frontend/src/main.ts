import { ApiClient } from "./api";
import { bootstrap } from "./app";

const params = new URLSearchParams(window.location.search);
const slug = params.get("category") ?? "mail";
const workerId = params.get("worker") ?? `w-${Math.random().toString(36).slice(2, 8)}`;

const root = document.getElementById("app");
if (root) {
  void bootstrap(root, new ApiClient(""), slug, workerId).catch((err) => {
    const banner = document.createElement("div");
    banner.className = "error-banner";
    banner.textContent = `Service unreachable (${err}); reload to retry.`;
    root.appendChild(banner);
  });
}
