import { App, apiBase } from "./app.js";
import { Client } from "./api.js";

const app = new App(document, new Client(apiBase(document)));
app.boot().catch((e) => {
  const status = document.getElementById("status");
  if (status) status.textContent = String(e);
});
