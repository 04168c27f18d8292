/** Client-side threshold validation mirroring the API's rule invariants.
 *
 * The form never submits anything the API would reject: at least one bound,
 * numeric bounds, min strictly below max when both are set, known parameter
 * and severity.
 */

export const MONITORED_PARAMETERS = [
  "temperature_c",
  "humidity_pct",
  "co2_ppm",
  "voc_ppb",
  "ambient_light_lux",
  "dust_ug_m3",
  "smoke_ppm",
  "motion_bool",
  "heart_rate_bpm",
] as const;

export const SEVERITIES = ["info", "warning", "critical"] as const;

export const PARAMETER_UNITS: Record<string, string> = {
  temperature_c: "°C",
  humidity_pct: "%",
  co2_ppm: "ppm",
  voc_ppb: "ppb",
  ambient_light_lux: "lux",
  dust_ug_m3: "µg/m³",
  smoke_ppm: "ppm",
  motion_bool: "0/1",
  heart_rate_bpm: "bpm",
};

export interface ThresholdFormState {
  parameter: string;
  minText: string;
  maxText: string;
  severity: string;
}

export type ThresholdValidation =
  | { valid: true; min: number | null; max: number | null }
  | { valid: false; message: string };

function parseBound(text: string, name: string): number | null | string {
  const trimmed = text.trim();
  if (trimmed === "") return null;
  const value = Number(trimmed);
  if (!Number.isFinite(value)) return `${name} must be a number`;
  return value;
}

export function validateThresholdForm(state: ThresholdFormState): ThresholdValidation {
  if (!(MONITORED_PARAMETERS as readonly string[]).includes(state.parameter)) {
    return { valid: false, message: `unknown parameter "${state.parameter}"` };
  }
  if (!(SEVERITIES as readonly string[]).includes(state.severity)) {
    return { valid: false, message: `unknown severity "${state.severity}"` };
  }
  const min = parseBound(state.minText, "min");
  if (typeof min === "string") return { valid: false, message: min };
  const max = parseBound(state.maxText, "max");
  if (typeof max === "string") return { valid: false, message: max };
  if (min === null && max === null) {
    return { valid: false, message: "set at least one of min/max" };
  }
  if (min !== null && max !== null && !(min < max)) {
    return { valid: false, message: "min must be below max" };
  }
  return { valid: true, min, max };
}
