/** Acceptance: chart/table display fidelity and the alert badge count. */

import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { updateAlertBadge } from "../src/alerts.js";
import { renderSeriesChart, renderSeriesTable, toViewModelSeries } from "../src/charts.js";
import { AlertsView } from "../src/views/alertsView.js";
import { SeriesView } from "../src/views/series.js";
import { makeFakeApi } from "./fakeApi.js";
import type { AlertWire, SeriesBucket } from "../src/types.js";

const BUCKETS: SeriesBucket[] = [
  { bucket_start_t: 0, bucket_width_s: 60, count: 3, mean: 20, min: 10, max: 30 },
  { bucket_start_t: 60, bucket_width_s: 60, count: 2, mean: 21.173456789, min: 20.5, max: 21.9 },
  { bucket_start_t: 120, bucket_width_s: 60, count: 5, mean: 19.25, min: 18, max: 22 },
];

describe("series display fidelity", () => {
  it("chart plots exactly the bucket means, no resampling", () => {
    const series = toViewModelSeries("temperature_c", BUCKETS);
    const svg = renderSeriesChart(series);
    const points = Array.from(svg.querySelectorAll(".series-point"));
    expect(points).toHaveLength(BUCKETS.length);
    expect(points.map((p) => p.getAttribute("data-mean"))).toEqual(
      BUCKETS.map((b) => String(b.mean)),
    );
    expect(points.map((p) => p.getAttribute("data-min"))).toEqual(
      BUCKETS.map((b) => String(b.min)),
    );
    expect(points.map((p) => p.getAttribute("data-max"))).toEqual(
      BUCKETS.map((b) => String(b.max)),
    );
  });

  it("table cells carry the exact numbers from the payload", () => {
    const series = toViewModelSeries("temperature_c", BUCKETS);
    const table = renderSeriesTable(series, BUCKETS);
    const means = Array.from(table.querySelectorAll(".cell-mean")).map((c) => c.textContent);
    expect(means).toEqual(["20", "21.173456789", "19.25"]);
  });

  it("series view renders from an intercepted payload verbatim", async () => {
    const client = new ApiClient("", async () =>
      new Response(JSON.stringify({ parameter: "co2_ppm", buckets: BUCKETS }), {
        status: 200,
        headers: { "Content-Type": "application/json" },
      }),
    );
    client.token = "t";
    const view = new SeriesView(client, "u-2");
    view.fromInput.value = "0";
    view.toInput.value = "180";
    await view.fetchSeries();
    const cellMeans = Array.from(view.output.querySelectorAll(".cell-mean")).map(
      (c) => c.textContent,
    );
    expect(cellMeans).toEqual(BUCKETS.map((b) => String(b.mean)));
    expect(view.output.querySelectorAll(".series-point")).toHaveLength(3);
  });

  it("rejects unsorted buckets rather than silently reordering", () => {
    const shuffled = [BUCKETS[1], BUCKETS[0]];
    expect(() => toViewModelSeries("co2_ppm", shuffled)).toThrow(/sorted/);
  });
});

function alert(id: string, state: "active" | "resolved", severity = "warning"): AlertWire {
  return {
    alert_id: id,
    rule_id: "r-1",
    patient_user_id: "u-2",
    sensor_id: "env-1",
    t: 0,
    value: 1200,
    severity,
    state,
    created_at: 0,
    resolved_at: state === "resolved" ? 1 : null,
  };
}

describe("alert badge", () => {
  it("equals the active-alert count from the API", async () => {
    const fake = makeFakeApi();
    fake.alerts = [alert("a-1", "active"), alert("a-2", "active", "critical"), alert("a-3", "resolved")];
    const client = new ApiClient("", fake.fetch);
    client.token = "t";
    const badge = document.createElement("span");
    const response = await client.listAlerts({ state: "active" });
    updateAlertBadge(badge, response.alerts.length);
    expect(badge.textContent).toBe("2");
    expect(badge.style.display).not.toBe("none");
  });

  it("is hidden when there are zero active alerts", () => {
    const badge = document.createElement("span");
    updateAlertBadge(badge, 0);
    expect(badge.style.display).toBe("none");
  });

  it("feed renders alerts verbatim and filters pass through", async () => {
    const fake = makeFakeApi();
    fake.alerts = [alert("a-1", "active", "critical"), alert("a-2", "resolved")];
    const client = new ApiClient("", fake.fetch);
    client.token = "t";
    const view = new AlertsView(client, 60_000);
    document.body.append(view.root);
    await view.refresh();
    expect(view.feedContainer.querySelectorAll(".alert")).toHaveLength(2);

    view.stateSelect.value = "active";
    await view.refresh();
    const items = view.feedContainer.querySelectorAll(".alert");
    expect(items).toHaveLength(1);
    expect(items[0].getAttribute("data-alert-id")).toBe("a-1");
  });
});
