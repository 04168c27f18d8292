/** App bootstrap: hash routing, role-gated nav, global alert badge. */

import { ApiClient } from "./api.js";
import { updateAlertBadge } from "./alerts.js";
import { clear, el } from "./dom.js";
import { createPoller, type Poller } from "./poll.js";
import {
  clearSession,
  loadSession,
  navItemsForRole,
  saveSession,
} from "./state.js";
import type { Session } from "./types.js";
import { renderAlertsView } from "./views/alertsView.js";
import { renderLoginView } from "./views/login.js";
import { renderPositionView } from "./views/position.js";
import { renderProjectsView } from "./views/projects.js";
import { renderSeriesView } from "./views/series.js";
import { renderThresholdsView } from "./views/thresholds.js";
import { renderUsersView } from "./views/users.js";

export class App {
  readonly client: ApiClient;
  session: Session | null = null;
  readonly nav: HTMLElement;
  readonly badge: HTMLElement;
  readonly outlet: HTMLElement;
  badgePoller: Poller | null = null;

  constructor(root: HTMLElement, client?: ApiClient) {
    this.client = client ?? new ApiClient("");
    this.nav = el("nav", { class: "top-nav" });
    this.badge = el("span", { class: "alert-badge" });
    this.outlet = el("main", { class: "outlet" });
    const header = el("header", { class: "top-bar" }, [
      el("span", { class: "brand" }, ["home telemonitor"]),
      this.nav,
      this.badge,
    ]);
    clear(root);
    root.append(header, this.outlet);

    this.client.onAuthLost = () => {
      this.session = null;
      clearSession();
      this.navigate("#/login");
    };

    const existing = loadSession();
    if (existing) {
      this.session = existing;
      this.client.token = existing.token;
    }
    window.addEventListener("hashchange", () => this.route());
  }

  start(): void {
    if (!window.location.hash) {
      window.location.hash = this.session ? this.defaultRoute() : "#/login";
    }
    this.route();
  }

  defaultRoute(): string {
    if (!this.session) return "#/login";
    const items = navItemsForRole(this.session.user.role);
    return items.length > 0 ? items[0].hash : "#/alerts";
  }

  navigate(hash: string): void {
    if (window.location.hash === hash) {
      this.route();
    } else {
      window.location.hash = hash;
    }
  }

  renderNav(): void {
    clear(this.nav);
    if (!this.session) return;
    for (const item of navItemsForRole(this.session.user.role)) {
      const link = el("a", { href: item.hash, class: "nav-link" }, [item.label]);
      this.nav.append(link);
    }
    const logout = el("a", { href: "#/login", class: "nav-link logout" }, ["Sign out"]);
    logout.addEventListener("click", () => {
      this.session = null;
      this.client.token = null;
      clearSession();
      this.stopBadge();
    });
    this.nav.append(logout);
  }

  startBadge(): void {
    if (this.badgePoller) return;
    this.badgePoller = createPoller(async () => {
      const response = await this.client.listAlerts({ state: "active" });
      updateAlertBadge(this.badge, response.alerts.length);
    });
    this.badgePoller.start();
  }

  stopBadge(): void {
    this.badgePoller?.stop();
    this.badgePoller = null;
    updateAlertBadge(this.badge, 0);
  }

  route(): void {
    const hash = window.location.hash || "#/login";
    this.renderNav();
    if (!this.session || hash === "#/login") {
      this.stopBadge();
      renderLoginView(this.outlet, this.client, (session) => {
        this.session = session;
        saveSession(session);
        this.navigate(this.defaultRoute());
      });
      return;
    }
    this.startBadge();
    const role = this.session.user.role;
    const allowed = new Set(navItemsForRole(role).map((item) => item.hash));
    if (!allowed.has(hash)) {
      this.navigate(this.defaultRoute());
      return;
    }
    const patientDefault = role === "patient" ? this.session.user.user_id : "";
    switch (hash) {
      case "#/users":
        void renderUsersView(this.outlet, this.client);
        break;
      case "#/projects":
        renderProjectsView(this.outlet, this.client);
        break;
      case "#/thresholds":
        renderThresholdsView(this.outlet, this.client, patientDefault);
        break;
      case "#/series":
        renderSeriesView(this.outlet, this.client, patientDefault);
        break;
      case "#/position":
        renderPositionView(this.outlet, this.client, patientDefault);
        break;
      case "#/alerts":
        renderAlertsView(this.outlet, this.client);
        break;
      default:
        this.navigate(this.defaultRoute());
    }
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  const app = new App(document.getElementById("app")!);
  app.start();
}
