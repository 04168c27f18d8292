/** Acceptance: threshold round-trip and pre-network validation. */

import { beforeEach, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { ThresholdsView } from "../src/views/thresholds.js";
import { makeFakeApi, type FakeApi } from "./fakeApi.js";

let fake: FakeApi;
let view: ThresholdsView;

beforeEach(() => {
  fake = makeFakeApi();
  const client = new ApiClient("", fake.fetch);
  client.token = "test-token";
  view = new ThresholdsView(client, "u-2");
  document.body.innerHTML = "";
  document.body.append(view.root);
});

function setForm(parameter: string, min: string, max: string, severity = "warning") {
  view.parameterSelect.value = parameter;
  view.minInput.value = min;
  view.maxInput.value = max;
  view.severitySelect.value = severity;
  view.minInput.dispatchEvent(new Event("input"));
}

describe("threshold editor round-trip", () => {
  it("saves a rule and re-fetching shows the identical rule", async () => {
    setForm("temperature_c", "20", "26");
    expect(view.submitButton.disabled).toBe(false);
    await view.save();

    const putCall = fake.calls.find((c) => c.method === "PUT");
    expect(putCall).toBeDefined();
    const sent = (putCall!.body as { rules: Record<string, unknown>[] }).rules[0];
    expect(sent).toMatchObject({ parameter: "temperature_c", min: 20, max: 26, severity: "warning" });

    // The view re-fetched after saving; its table must show exactly what the
    // API now stores.
    const stored = fake.rules.get("u-2")![0];
    const row = view.rulesBody.querySelector(".rule-row")!;
    expect(row.getAttribute("data-rule-id")).toBe(stored.rule_id);
    expect(row.querySelector(".cell-parameter")!.textContent).toBe(stored.parameter);
    expect(row.querySelector(".cell-min")!.textContent).toBe(String(stored.min));
    expect(row.querySelector(".cell-max")!.textContent).toBe(String(stored.max));
    expect(row.querySelector(".cell-severity")!.textContent).toBe(stored.severity);

    const lastGet = fake.calls.filter((c) => c.method === "GET").pop();
    expect(lastGet!.url).toContain("/patients/u-2/thresholds");
  });

  it("rejects min >= max before any network call", async () => {
    setForm("temperature_c", "30", "26");
    expect(view.submitButton.disabled).toBe(true);
    expect(view.validationMessage.textContent).toBe("min must be below max");

    const callsBefore = fake.calls.length;
    await view.save();
    expect(fake.calls.length).toBe(callsBefore); // nothing reached the wire
    expect(fake.rules.get("u-2")).toBeUndefined();
  });

  it("accepts a single-bound rule", async () => {
    setForm("co2_ppm", "", "1000");
    expect(view.submitButton.disabled).toBe(false);
    await view.save();
    const stored = fake.rules.get("u-2")![0];
    expect(stored.min).toBeNull();
    expect(stored.max).toBe(1000);
  });

  it("keeps existing rules when adding another", async () => {
    setForm("co2_ppm", "", "1000");
    await view.save();
    setForm("heart_rate_bpm", "40", "150");
    await view.save();
    const stored = fake.rules.get("u-2")!;
    expect(stored).toHaveLength(2);
    expect(view.rulesBody.querySelectorAll(".rule-row")).toHaveLength(2);
  });

  it("surfaces the API's human message when the server rejects", async () => {
    // Bypass client-side validation by faking a race: valid locally, but the
    // fake API rejects a duplicate-bound rule via a forced 400.
    setForm("co2_ppm", "", "1000");
    const originalFetch = fake.fetch;
    let fired = false;
    const client = new ApiClient("", async (url, init) => {
      if (init?.method === "PUT" && !fired) {
        fired = true;
        return new Response(
          JSON.stringify({ code: "validation_error", message: "server said no" }),
          { status: 400, headers: { "Content-Type": "application/json" } },
        );
      }
      return originalFetch(url, init);
    });
    client.token = "test-token";
    const rejected = new ThresholdsView(client, "u-2");
    rejected.parameterSelect.value = "co2_ppm";
    rejected.maxInput.value = "1000";
    rejected.maxInput.dispatchEvent(new Event("input"));
    await rejected.save();
    expect(rejected.validationMessage.textContent).toBe("server said no");
  });
});
