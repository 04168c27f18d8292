/** In-memory stand-in for the /api/v1 threshold and alert endpoints.
 *
 * Mirrors the documented wire contract: bearer auth, the error envelope,
 * PUT-replaces-collection threshold semantics with server-assigned rule
 * ids, and alert filtering.
 */

import type { AlertWire, ThresholdRuleWire } from "../src/types.js";

export interface FakeApi {
  fetch: (url: string, init?: RequestInit) => Promise<Response>;
  calls: { method: string; url: string; body: unknown }[];
  rules: Map<string, ThresholdRuleWire[]>;
  alerts: AlertWire[];
}

function json(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

export function makeFakeApi(): FakeApi {
  let ruleCounter = 0;
  const api: FakeApi = {
    calls: [],
    rules: new Map(),
    alerts: [],
    async fetch(url: string, init?: RequestInit): Promise<Response> {
      const method = init?.method ?? "GET";
      const body = init?.body ? JSON.parse(init.body as string) : undefined;
      api.calls.push({ method, url, body });

      const headers = (init?.headers ?? {}) as Record<string, string>;
      if (!headers["Authorization"]?.startsWith("Bearer ")) {
        return json({ code: "auth_required", message: "missing bearer token" }, 401);
      }

      const parsed = new URL(url, "http://test");
      const path = parsed.pathname;

      const thresholdMatch = path.match(/^\/api\/v1\/patients\/([^/]+)\/thresholds$/);
      if (thresholdMatch) {
        const patientId = thresholdMatch[1];
        if (method === "GET") {
          return json({ rules: api.rules.get(patientId) ?? [] });
        }
        if (method === "PUT") {
          const incoming = (body as { rules: Partial<ThresholdRuleWire>[] }).rules;
          const saved: ThresholdRuleWire[] = [];
          for (const rule of incoming) {
            if (rule.min == null && rule.max == null) {
              return json({ code: "validation_error", message: "at least one of min/max" }, 400);
            }
            if (rule.min != null && rule.max != null && !(rule.min < rule.max)) {
              return json({ code: "validation_error", message: "min must be below max" }, 400);
            }
            saved.push({
              rule_id: rule.rule_id || `r-${++ruleCounter}`,
              patient_user_id: patientId,
              parameter: rule.parameter!,
              min: rule.min ?? null,
              max: rule.max ?? null,
              severity: rule.severity ?? "warning",
              enabled: rule.enabled ?? true,
            });
          }
          api.rules.set(patientId, saved);
          return json({ rules: saved });
        }
      }

      if (path === "/api/v1/alerts" && method === "GET") {
        const state = parsed.searchParams.get("state");
        const severity = parsed.searchParams.get("severity");
        let alerts = api.alerts;
        if (state) alerts = alerts.filter((a) => a.state === state);
        if (severity) alerts = alerts.filter((a) => a.severity === severity);
        return json({ alerts });
      }

      return json({ code: "not_found", message: `no fake route for ${method} ${path}` }, 404);
    },
  };
  return api;
}
