/** Alert feed screen with state/severity filters. */

import { ApiClient, ApiRequestError } from "../api.js";
import { renderAlertFeed } from "../alerts.js";
import { clear, el } from "../dom.js";
import { createPoller, DEFAULT_POLL_INTERVAL_MS, type Poller } from "../poll.js";

export class AlertsView {
  readonly root: HTMLElement;
  readonly stateSelect: HTMLSelectElement;
  readonly severitySelect: HTMLSelectElement;
  readonly feedContainer: HTMLElement;
  readonly message: HTMLElement;
  readonly poller: Poller;

  constructor(
    private readonly client: ApiClient,
    pollIntervalMs: number = DEFAULT_POLL_INTERVAL_MS,
  ) {
    this.stateSelect = el("select", { class: "alerts-state" });
    for (const state of ["", "active", "resolved"]) {
      this.stateSelect.append(el("option", { value: state }, [state || "all states"]));
    }
    this.severitySelect = el("select", { class: "alerts-severity" });
    for (const severity of ["", "info", "warning", "critical"]) {
      this.severitySelect.append(el("option", { value: severity }, [severity || "all severities"]));
    }
    for (const select of [this.stateSelect, this.severitySelect]) {
      select.addEventListener("change", () => void this.refresh());
    }
    this.feedContainer = el("div", { class: "alerts-feed-container" });
    this.message = el("p", { class: "alerts-message" });
    this.root = el("section", { class: "alerts-view" }, [
      el("h2", {}, ["Alerts"]),
      el("div", {}, [this.stateSelect, this.severitySelect]),
      this.message,
      this.feedContainer,
    ]);
    this.poller = createPoller(() => this.refresh(), pollIntervalMs);
  }

  async refresh(): Promise<void> {
    try {
      const response = await this.client.listAlerts({
        state: this.stateSelect.value || undefined,
        severity: this.severitySelect.value || undefined,
      });
      renderAlertFeed(this.feedContainer, response.alerts);
      this.message.textContent = "";
    } catch (error) {
      this.message.textContent =
        error instanceof ApiRequestError ? error.message : "alerts unavailable";
    }
  }
}

export function renderAlertsView(container: HTMLElement, client: ApiClient): AlertsView {
  const view = new AlertsView(client);
  clear(container);
  container.append(view.root);
  view.poller.start();
  return view;
}
