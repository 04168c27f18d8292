/** Alert feed and the active-count badge, rendered verbatim from payloads. */

import { clear, el } from "./dom.js";
import type { AlertWire } from "./types.js";

/** Badge text equals the active-alert count; the badge hides at zero. */
export function updateAlertBadge(badge: HTMLElement, activeCount: number): void {
  badge.textContent = String(activeCount);
  badge.style.display = activeCount === 0 ? "none" : "";
  badge.setAttribute("data-count", String(activeCount));
}

export function renderAlertFeed(container: HTMLElement, alerts: AlertWire[]): void {
  clear(container);
  if (alerts.length === 0) {
    container.append(el("p", { class: "empty" }, ["no alerts"]));
    return;
  }
  const items = alerts.map((alert) =>
    el("li", { class: `alert alert-${alert.severity} alert-${alert.state}`, "data-alert-id": alert.alert_id }, [
      el("span", { class: "alert-severity" }, [alert.severity]),
      el("span", { class: "alert-state" }, [alert.state]),
      el("span", { class: "alert-body" }, [
        `${alert.sensor_id}: value ${alert.value} at t=${alert.t} (rule ${alert.rule_id})`,
      ]),
    ]),
  );
  container.append(el("ul", { class: "alert-feed" }, items));
}
