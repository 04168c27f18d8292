/** Threshold editor: per-patient rule list plus a validated add-rule form.
 *
 * Validation mirrors the API invariants and runs before any network call;
 * an invalid form disables submit and never reaches the wire. The list is
 * always re-fetched after a save, so what the table shows is exactly what
 * the API stored.
 */

import { ApiClient, ApiRequestError } from "../api.js";
import { clear, el, errorBanner } from "../dom.js";
import {
  MONITORED_PARAMETERS,
  SEVERITIES,
  validateThresholdForm,
  type ThresholdFormState,
} from "../validation.js";
import type { ThresholdRuleWire } from "../types.js";

export class ThresholdsView {
  readonly root: HTMLElement;
  readonly parameterSelect: HTMLSelectElement;
  readonly minInput: HTMLInputElement;
  readonly maxInput: HTMLInputElement;
  readonly severitySelect: HTMLSelectElement;
  readonly submitButton: HTMLButtonElement;
  readonly validationMessage: HTMLElement;
  readonly rulesBody: HTMLElement;
  private rules: ThresholdRuleWire[] = [];

  readonly patientInput: HTMLInputElement;

  constructor(
    private readonly client: ApiClient,
    public patientId: string,
  ) {
    this.patientInput = el("input", {
      class: "thresholds-patient",
      placeholder: "patient user id",
      value: patientId,
    });
    const loadButton = el("button", { type: "button", class: "load-rules" }, ["Load"]);
    loadButton.addEventListener("click", () => {
      this.patientId = this.patientInput.value.trim();
      void this.load();
    });
    this.parameterSelect = el("select", { class: "field-parameter" });
    for (const parameter of MONITORED_PARAMETERS) {
      this.parameterSelect.append(el("option", { value: parameter }, [parameter]));
    }
    this.minInput = el("input", { class: "field-min", placeholder: "min (optional)" });
    this.maxInput = el("input", { class: "field-max", placeholder: "max (optional)" });
    this.severitySelect = el("select", { class: "field-severity" });
    for (const severity of SEVERITIES) {
      this.severitySelect.append(el("option", { value: severity }, [severity]));
    }
    this.submitButton = el("button", { class: "save-rule", type: "button" }, ["Save rule"]);
    this.validationMessage = el("span", { class: "validation-message" });
    this.rulesBody = el("tbody");

    for (const input of [this.minInput, this.maxInput]) {
      input.addEventListener("input", () => this.refreshValidity());
    }
    this.parameterSelect.addEventListener("change", () => this.refreshValidity());
    this.submitButton.addEventListener("click", () => void this.save());

    this.root = el("section", { class: "thresholds-view" }, [
      el("h2", {}, ["Patient thresholds"]),
      el("div", { class: "patient-picker" }, [this.patientInput, loadButton]),
      el("div", { class: "rule-form" }, [
        this.parameterSelect,
        this.minInput,
        this.maxInput,
        this.severitySelect,
        this.submitButton,
        this.validationMessage,
      ]),
      el("table", { class: "rules-table" }, [
        el("thead", {}, [
          el("tr", {}, [
            el("th", {}, ["rule"]),
            el("th", {}, ["parameter"]),
            el("th", {}, ["min"]),
            el("th", {}, ["max"]),
            el("th", {}, ["severity"]),
            el("th", {}, ["enabled"]),
            el("th", {}, [""]),
          ]),
        ]),
        this.rulesBody,
      ]),
    ]);
    this.refreshValidity();
  }

  formState(): ThresholdFormState {
    return {
      parameter: this.parameterSelect.value,
      minText: this.minInput.value,
      maxText: this.maxInput.value,
      severity: this.severitySelect.value,
    };
  }

  refreshValidity(): void {
    const result = validateThresholdForm(this.formState());
    if (result.valid) {
      this.submitButton.disabled = false;
      this.validationMessage.textContent = "";
    } else {
      this.submitButton.disabled = true;
      this.validationMessage.textContent = result.message;
    }
  }

  async load(): Promise<void> {
    const response = await this.client.getThresholds(this.patientId);
    this.rules = response.rules;
    this.renderRules();
  }

  /** Validate, then PUT the full rule set and re-render from a fresh GET. */
  async save(): Promise<void> {
    const result = validateThresholdForm(this.formState());
    if (!result.valid) {
      this.validationMessage.textContent = result.message;
      return; // nothing touches the network
    }
    const next = this.rules
      .map((rule) => ({
        rule_id: rule.rule_id,
        parameter: rule.parameter,
        min: rule.min,
        max: rule.max,
        severity: rule.severity,
        enabled: rule.enabled,
      }))
      .concat([
        {
          rule_id: "",
          parameter: this.parameterSelect.value,
          min: result.min,
          max: result.max,
          severity: this.severitySelect.value,
          enabled: true,
        },
      ]);
    try {
      await this.client.putThresholds(this.patientId, next);
      await this.load(); // round-trip: display what the API now stores
      this.minInput.value = "";
      this.maxInput.value = "";
      this.refreshValidity();
    } catch (error) {
      if (error instanceof ApiRequestError) {
        this.validationMessage.textContent = error.message;
      } else {
        throw error;
      }
    }
  }

  async removeRule(ruleId: string): Promise<void> {
    const next = this.rules
      .filter((rule) => rule.rule_id !== ruleId)
      .map((rule) => ({
        rule_id: rule.rule_id,
        parameter: rule.parameter,
        min: rule.min,
        max: rule.max,
        severity: rule.severity,
        enabled: rule.enabled,
      }));
    await this.client.putThresholds(this.patientId, next);
    await this.load();
  }

  private renderRules(): void {
    clear(this.rulesBody);
    for (const rule of this.rules) {
      const remove = el("button", { type: "button", class: "remove-rule" }, ["remove"]);
      remove.addEventListener("click", () => void this.removeRule(rule.rule_id));
      this.rulesBody.append(
        el("tr", { class: "rule-row", "data-rule-id": rule.rule_id }, [
          el("td", {}, [rule.rule_id]),
          el("td", { class: "cell-parameter" }, [rule.parameter]),
          el("td", { class: "cell-min" }, [rule.min === null ? "" : String(rule.min)]),
          el("td", { class: "cell-max" }, [rule.max === null ? "" : String(rule.max)]),
          el("td", { class: "cell-severity" }, [rule.severity]),
          el("td", {}, [rule.enabled ? "yes" : "no"]),
          el("td", {}, [remove]),
        ]),
      );
    }
  }
}

export function renderThresholdsView(
  container: HTMLElement,
  client: ApiClient,
  patientId: string,
): ThresholdsView {
  const view = new ThresholdsView(client, patientId);
  clear(container);
  container.append(view.root);
  if (patientId) {
    void view.load().catch((error) => {
      container.append(errorBanner(error instanceof Error ? error.message : String(error)));
    });
  }
  return view;
}
