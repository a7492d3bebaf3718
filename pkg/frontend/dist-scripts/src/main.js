import { ApiClient } from "./api.js";
import { App } from "./app.js";
const params = new URLSearchParams(window.location.search);
const baseUrl = params.get("api") ?? "";
const root = document.getElementById("app");
if (root) {
    new App(root, new ApiClient(baseUrl)).render();
}
