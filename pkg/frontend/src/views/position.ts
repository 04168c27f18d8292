/** Live indoor position: room map with the latest estimate, polled. */

import { ApiClient, ApiRequestError } from "../api.js";
import { clear, el } from "../dom.js";
import { createPoller, DEFAULT_POLL_INTERVAL_MS, type Poller } from "../poll.js";
import { renderPositionMap } from "../positionMap.js";
import type { LayoutWire } from "../types.js";

export class PositionView {
  readonly root: HTMLElement;
  readonly patientInput: HTMLInputElement;
  readonly mapContainer: HTMLElement;
  readonly statusLine: HTMLElement;
  readonly activityLine: HTMLElement;
  readonly poller: Poller;

  constructor(
    private readonly client: ApiClient,
    patientId: string,
    pollIntervalMs: number = DEFAULT_POLL_INTERVAL_MS,
  ) {
    this.patientInput = el("input", { class: "position-patient", value: patientId });
    this.mapContainer = el("div", { class: "position-map-container" });
    this.statusLine = el("p", { class: "position-status" });
    this.activityLine = el("p", { class: "activity-status" });
    const refresh = el("button", { type: "button", class: "position-refresh" }, ["Refresh"]);
    refresh.addEventListener("click", () => void this.refresh());
    this.root = el("section", { class: "position-view" }, [
      el("h2", {}, ["Indoor position"]),
      el("div", {}, [this.patientInput, refresh]),
      this.statusLine,
      this.activityLine,
      this.mapContainer,
    ]);
    this.poller = createPoller(() => this.refresh(), pollIntervalMs);
  }

  private async layoutFor(patientId: string): Promise<LayoutWire | null> {
    const response = await this.client.listProjects(patientId);
    for (const project of response.projects) {
      if (project.locations.length > 0) return project.locations[0].layout;
    }
    return null;
  }

  async refresh(): Promise<void> {
    const patientId = this.patientInput.value.trim();
    if (!patientId) return;
    try {
      const [estimate, layout] = await Promise.all([
        this.client.position(patientId),
        this.layoutFor(patientId),
      ]);
      clear(this.mapContainer);
      if (layout) {
        this.mapContainer.append(renderPositionMap(layout, estimate));
      }
      this.statusLine.textContent =
        `room: ${estimate.room_id ?? "unknown"} | anchors: ${estimate.anchors_used}` +
        (estimate.xy ? ` | xy: (${estimate.xy[0].toFixed(2)}, ${estimate.xy[1].toFixed(2)})` : "");
      try {
        const activity = await this.client.activity(patientId);
        this.activityLine.textContent = `activity: ${activity.label}`;
      } catch (error) {
        if (error instanceof ApiRequestError && error.status === 404) {
          this.activityLine.textContent = "activity: (no model or data)";
        }
      }
    } catch (error) {
      this.statusLine.textContent =
        error instanceof ApiRequestError ? error.message : "position unavailable";
    }
  }
}

export function renderPositionView(
  container: HTMLElement,
  client: ApiClient,
  patientId: string,
): PositionView {
  const view = new PositionView(client, patientId);
  clear(container);
  container.append(view.root);
  view.poller.start();
  return view;
}
