/** Admin-only user administration table. */

import { ApiClient } from "../api.js";
import { clear, el, errorBanner } from "../dom.js";

export async function renderUsersView(container: HTMLElement, client: ApiClient): Promise<void> {
  clear(container);
  try {
    const users = await client.listUsers();
    const rows = users.map((user) =>
      el("tr", { class: "user-row", "data-user-id": user.user_id }, [
        el("td", {}, [user.user_id]),
        el("td", {}, [user.name]),
        el("td", {}, [user.email]),
        el("td", { class: "cell-role" }, [user.role]),
        el("td", {}, [new Date(user.created_at * 1000).toISOString()]),
      ]),
    );
    container.append(
      el("section", { class: "users-view" }, [
        el("h2", {}, ["Users"]),
        el("table", { class: "users-table" }, [
          el("thead", {}, [
            el("tr", {}, [
              el("th", {}, ["id"]),
              el("th", {}, ["name"]),
              el("th", {}, ["email"]),
              el("th", {}, ["role"]),
              el("th", {}, ["created"]),
            ]),
          ]),
          el("tbody", {}, rows),
        ]),
      ]),
    );
  } catch (error) {
    container.append(errorBanner(error instanceof Error ? error.message : String(error)));
  }
}
