/** Patient-home editor: floor plan with grid-snapped sensor placement.
 *
 * Layouts use the same JSON schema as simulator scenarios, so a home drawn
 * here is directly consumable by the simulator and the localizer.
 */

import { ApiClient, ApiRequestError } from "../api.js";
import { clear, el, errorBanner } from "../dom.js";
import { renderPositionMap, snapToGrid } from "../positionMap.js";
import type { LayoutWire, ProjectWire } from "../types.js";

const DEFAULT_LAYOUT: LayoutWire = {
  rooms: [{ room_id: "room-1", polygon: [[0, 0], [5, 0], [5, 4], [0, 4]] }],
  anchors: [{ anchor_id: "bulb-1", position: [2.5, 2], mount_height: 2.5 }],
};

export class ProjectsView {
  readonly root: HTMLElement;
  readonly projectSelect: HTMLSelectElement;
  readonly mapContainer: HTMLElement;
  readonly sensorId: HTMLInputElement;
  readonly sensorKind: HTMLSelectElement;
  readonly roomSelect: HTMLSelectElement;
  readonly positionLabel: HTMLElement;
  readonly message: HTMLElement;
  private projects: ProjectWire[] = [];
  private current: ProjectWire | null = null;
  private pendingPosition: [number, number] | null = null;

  constructor(private readonly client: ApiClient) {
    this.projectSelect = el("select", { class: "project-select" });
    this.projectSelect.addEventListener("change", () => this.showProject(this.projectSelect.value));
    this.mapContainer = el("div", { class: "project-map" });
    this.sensorId = el("input", { placeholder: "sensor id", class: "sensor-id" });
    this.sensorKind = el("select", { class: "sensor-kind" });
    for (const kind of ["env", "wearable", "pir"]) {
      this.sensorKind.append(el("option", { value: kind }, [kind]));
    }
    this.roomSelect = el("select", { class: "sensor-room" });
    this.positionLabel = el("span", { class: "pending-position" }, ["click the map to place"]);
    this.message = el("p", { class: "project-message" });

    const addButton = el("button", { type: "button", class: "add-sensor" }, ["Add sensor"]);
    addButton.addEventListener("click", () => void this.addSensor());

    const patientInput = el("input", { placeholder: "patient user id", class: "new-patient" });
    const newButton = el("button", { type: "button", class: "new-project" }, ["New project"]);
    newButton.addEventListener("click", () => void this.createProject(patientInput.value));

    this.root = el("section", { class: "projects-view" }, [
      el("h2", {}, ["Patient home management"]),
      el("div", {}, [this.projectSelect, patientInput, newButton]),
      this.mapContainer,
      el("div", { class: "sensor-form" }, [
        this.sensorId,
        this.sensorKind,
        this.roomSelect,
        this.positionLabel,
        addButton,
      ]),
      this.message,
    ]);
  }

  async load(): Promise<void> {
    const response = await this.client.listProjects();
    this.projects = response.projects;
    clear(this.projectSelect);
    for (const project of this.projects) {
      this.projectSelect.append(
        el("option", { value: project.project_id }, [
          `${project.project_id} (${project.patient_user_id})`,
        ]),
      );
    }
    if (this.projects.length > 0) {
      this.showProject(this.projects[0].project_id);
    }
  }

  showProject(projectId: string): void {
    this.current = this.projects.find((p) => p.project_id === projectId) ?? null;
    this.renderMap();
  }

  private layout(): LayoutWire | null {
    if (!this.current || this.current.locations.length === 0) return null;
    return this.current.locations[0].layout;
  }

  private renderMap(): void {
    clear(this.mapContainer);
    clear(this.roomSelect);
    const layout = this.layout();
    if (!layout) {
      this.mapContainer.append(el("p", { class: "empty" }, ["no location in project"]));
      return;
    }
    for (const room of layout.rooms) {
      this.roomSelect.append(el("option", { value: room.room_id }, [room.room_id]));
    }
    const markers = (this.current?.sensors ?? [])
      .filter((s) => s.position)
      .map((s) => ({ x: s.position![0], y: s.position![1], label: s.sensor_id }));
    this.mapContainer.append(
      renderPositionMap(layout, null, (x, y) => {
        this.pendingPosition = [snapToGrid(x), snapToGrid(y)];
        this.positionLabel.textContent = `at (${this.pendingPosition[0]}, ${this.pendingPosition[1]})`;
      }, markers),
    );
  }

  async createProject(patientUserId: string): Promise<void> {
    if (!patientUserId.trim()) {
      this.message.textContent = "enter the patient user id first";
      return;
    }
    try {
      const created = await this.client.upsertProject({
        project_id: "",
        patient_user_id: patientUserId.trim(),
        locations: [{ location_id: "home", name: "Home", layout: DEFAULT_LAYOUT }],
        sensors: [],
      });
      this.message.textContent = `created ${created.project_id}`;
      await this.load();
      this.showProject(created.project_id);
    } catch (error) {
      this.message.textContent =
        error instanceof ApiRequestError ? error.message : "create failed";
    }
  }

  async addSensor(): Promise<void> {
    if (!this.current) {
      this.message.textContent = "select a project first";
      return;
    }
    if (!this.sensorId.value.trim()) {
      this.message.textContent = "sensor id is required";
      return;
    }
    const updated: ProjectWire = {
      ...this.current,
      sensors: [
        ...this.current.sensors,
        {
          sensor_id: this.sensorId.value.trim(),
          kind: this.sensorKind.value,
          location_id: this.current.locations[0]?.location_id ?? "home",
          room_id: this.roomSelect.value,
          position: this.pendingPosition,
        },
      ],
    };
    try {
      await this.client.upsertProject(updated);
      await this.load(); // re-fetch so the map shows the stored state
      this.showProject(updated.project_id);
      this.message.textContent = `sensor ${this.sensorId.value.trim()} added`;
      this.sensorId.value = "";
      this.pendingPosition = null;
      this.positionLabel.textContent = "click the map to place";
    } catch (error) {
      this.message.textContent =
        error instanceof ApiRequestError ? error.message : "save failed";
    }
  }
}

export function renderProjectsView(container: HTMLElement, client: ApiClient): ProjectsView {
  const view = new ProjectsView(client);
  clear(container);
  container.append(view.root);
  void view.load().catch((error) => {
    container.append(errorBanner(error instanceof Error ? error.message : String(error)));
  });
  return view;
}
