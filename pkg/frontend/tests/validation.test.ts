import { describe, expect, it } from "vitest";

import { validateThresholdForm } from "../src/validation.js";

const base = { parameter: "temperature_c", severity: "warning" };

describe("validateThresholdForm", () => {
  it("accepts min below max", () => {
    const result = validateThresholdForm({ ...base, minText: "20", maxText: "26" });
    expect(result).toEqual({ valid: true, min: 20, max: 26 });
  });

  it("rejects min at or above max before any network call", () => {
    const above = validateThresholdForm({ ...base, minText: "30", maxText: "26" });
    expect(above).toEqual({ valid: false, message: "min must be below max" });
    const equal = validateThresholdForm({ ...base, minText: "26", maxText: "26" });
    expect(equal.valid).toBe(false);
  });

  it("accepts a single bound", () => {
    expect(validateThresholdForm({ ...base, minText: "", maxText: "1000" })).toEqual({
      valid: true,
      min: null,
      max: 1000,
    });
    expect(validateThresholdForm({ ...base, minText: "12.5", maxText: "" })).toEqual({
      valid: true,
      min: 12.5,
      max: null,
    });
  });

  it("rejects an empty rule", () => {
    const result = validateThresholdForm({ ...base, minText: " ", maxText: "" });
    expect(result).toEqual({ valid: false, message: "set at least one of min/max" });
  });

  it("rejects non-numeric bounds", () => {
    const result = validateThresholdForm({ ...base, minText: "cold", maxText: "" });
    expect(result.valid).toBe(false);
    expect((result as { message: string }).message).toContain("min");
  });

  it("rejects unknown parameter and severity", () => {
    expect(
      validateThresholdForm({ parameter: "sound_db", severity: "warning", minText: "1", maxText: "" })
        .valid,
    ).toBe(false);
    expect(
      validateThresholdForm({ ...base, severity: "panic", minText: "1", maxText: "" }).valid,
    ).toBe(false);
  });
});
