/** Ambient parameter history: chart + table, with a period picker. */

import { ApiClient, ApiRequestError } from "../api.js";
import { renderSeriesChart, renderSeriesTable, toViewModelSeries } from "../charts.js";
import { clear, el } from "../dom.js";
import { MONITORED_PARAMETERS } from "../validation.js";

const PERIODS: { label: string; seconds: number }[] = [
  { label: "last 2 minutes", seconds: 120 },
  { label: "last hour", seconds: 3600 },
  { label: "last day", seconds: 86400 },
];

export class SeriesView {
  readonly root: HTMLElement;
  readonly patientInput: HTMLInputElement;
  readonly parameterSelect: HTMLSelectElement;
  readonly periodSelect: HTMLSelectElement;
  readonly fromInput: HTMLInputElement;
  readonly toInput: HTMLInputElement;
  readonly bucketInput: HTMLInputElement;
  readonly output: HTMLElement;
  readonly message: HTMLElement;

  constructor(
    private readonly client: ApiClient,
    patientId: string,
    private readonly now: () => number = () => Date.now() / 1000,
  ) {
    this.patientInput = el("input", { class: "series-patient", value: patientId });
    this.parameterSelect = el("select", { class: "series-parameter" });
    for (const parameter of MONITORED_PARAMETERS) {
      this.parameterSelect.append(el("option", { value: parameter }, [parameter]));
    }
    this.periodSelect = el("select", { class: "series-period" });
    for (const [index, period] of PERIODS.entries()) {
      this.periodSelect.append(el("option", { value: String(index) }, [period.label]));
    }
    this.fromInput = el("input", { class: "series-from", placeholder: "from (epoch s)" });
    this.toInput = el("input", { class: "series-to", placeholder: "to (epoch s)" });
    this.bucketInput = el("input", { class: "series-bucket", value: "60" });
    this.periodSelect.addEventListener("change", () => {
      const period = PERIODS[Number(this.periodSelect.value)];
      const to = this.now();
      this.fromInput.value = String(to - period.seconds);
      this.toInput.value = String(to);
    });
    const fetchButton = el("button", { type: "button", class: "series-fetch" }, ["Fetch"]);
    fetchButton.addEventListener("click", () => void this.fetchSeries());
    this.output = el("div", { class: "series-output" });
    this.message = el("p", { class: "series-message" });
    this.root = el("section", { class: "series-view" }, [
      el("h2", {}, ["Monitored parameters"]),
      el("div", {}, [
        this.patientInput,
        this.parameterSelect,
        this.periodSelect,
        this.fromInput,
        this.toInput,
        this.bucketInput,
        fetchButton,
      ]),
      this.message,
      this.output,
    ]);
  }

  async fetchSeries(): Promise<void> {
    this.message.textContent = "";
    try {
      const response = await this.client.series(
        this.patientInput.value.trim(),
        this.parameterSelect.value,
        Number(this.fromInput.value),
        Number(this.toInput.value),
        Number(this.bucketInput.value),
      );
      this.renderBuckets(response.parameter, response.buckets);
    } catch (error) {
      this.message.textContent =
        error instanceof ApiRequestError ? error.message : "fetch failed";
    }
  }

  renderBuckets(parameter: string, buckets: import("../types.js").SeriesBucket[]): void {
    clear(this.output);
    const series = toViewModelSeries(parameter, buckets);
    this.output.append(renderSeriesChart(series));
    this.output.append(renderSeriesTable(series, buckets));
  }
}

export function renderSeriesView(
  container: HTMLElement,
  client: ApiClient,
  patientId: string,
): SeriesView {
  const view = new SeriesView(client, patientId);
  clear(container);
  container.append(view.root);
  return view;
}
