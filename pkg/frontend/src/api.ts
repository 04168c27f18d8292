/** Typed client for /api/v1. All business data is passed through verbatim. */

import type {
  ActivityWire,
  AlertWire,
  ProjectWire,
  PositionWire,
  SeriesResponse,
  Session,
  ThresholdRuleWire,
  UserOut,
} from "./types.js";

export class ApiRequestError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

function makeIdempotencyKey(): string {
  const rnd = globalThis.crypto && "randomUUID" in globalThis.crypto
    ? globalThis.crypto.randomUUID()
    : Math.random().toString(36).slice(2);
  return `ui-${rnd}`;
}

export class ApiClient {
  token: string | null = null;
  /** Called on 401 from a protected endpoint (the UI returns to login). */
  onAuthLost: (() => void) | null = null;

  constructor(
    private readonly baseUrl = "",
    private readonly fetchImpl: FetchLike = (input, init) => globalThis.fetch(input, init),
  ) {}

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
    query?: Record<string, string | number | undefined>,
  ): Promise<T> {
    let url = `${this.baseUrl}/api/v1${path}`;
    if (query) {
      const params = new URLSearchParams();
      for (const [key, value] of Object.entries(query)) {
        if (value !== undefined) params.set(key, String(value));
      }
      const encoded = params.toString();
      if (encoded) url += `?${encoded}`;
    }
    const headers: Record<string, string> = { "Content-Type": "application/json" };
    if (this.token) headers["Authorization"] = `Bearer ${this.token}`;
    if (method === "POST" || method === "PUT") {
      headers["X-Idempotency-Key"] = makeIdempotencyKey();
    }
    const response = await this.fetchImpl(url, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) {
      let code = "unknown";
      let message = `request failed with status ${response.status}`;
      try {
        const parsed = (await response.json()) as { code?: string; message?: string };
        if (parsed.code) code = parsed.code;
        if (parsed.message) message = parsed.message; // surface the API's human message
      } catch {
        /* non-JSON error body; keep the fallback message */
      }
      if (response.status === 401 && this.onAuthLost) this.onAuthLost();
      throw new ApiRequestError(response.status, code, message);
    }
    return (await response.json()) as T;
  }

  health(): Promise<{ status: string }> {
    return this.request("GET", "/health");
  }

  async login(email: string, credential: string): Promise<Session> {
    const session = await this.request<Session>("POST", "/auth/login", { email, credential });
    this.token = session.token;
    return session;
  }

  register(name: string, email: string, role: string, credential: string): Promise<UserOut> {
    return this.request("POST", "/auth/register", { name, email, role, credential });
  }

  listUsers(): Promise<UserOut[]> {
    return this.request("GET", "/users");
  }

  listProjects(patient?: string): Promise<{ projects: ProjectWire[] }> {
    return this.request("GET", "/projects", undefined, { patient });
  }

  getProject(projectId: string): Promise<ProjectWire> {
    return this.request("GET", `/projects/${projectId}`);
  }

  upsertProject(project: ProjectWire): Promise<ProjectWire> {
    return this.request("PUT", "/projects", project);
  }

  getThresholds(patientId: string): Promise<{ rules: ThresholdRuleWire[] }> {
    return this.request("GET", `/patients/${patientId}/thresholds`);
  }

  putThresholds(
    patientId: string,
    rules: Omit<ThresholdRuleWire, "patient_user_id">[],
  ): Promise<{ rules: ThresholdRuleWire[] }> {
    return this.request("PUT", `/patients/${patientId}/thresholds`, { rules });
  }

  series(
    patientId: string,
    parameter: string,
    fromT: number,
    toT: number,
    bucketS: number,
  ): Promise<SeriesResponse> {
    return this.request("GET", `/patients/${patientId}/series`, undefined, {
      parameter,
      from: fromT,
      to: toT,
      bucket_s: bucketS,
    });
  }

  listAlerts(filter: { state?: string; patient?: string; severity?: string } = {}): Promise<{
    alerts: AlertWire[];
  }> {
    return this.request("GET", "/alerts", undefined, filter);
  }

  position(patientId: string): Promise<PositionWire> {
    return this.request("GET", `/patients/${patientId}/position`);
  }

  activity(patientId: string): Promise<ActivityWire> {
    return this.request("GET", `/patients/${patientId}/activity`);
  }

  scoreGfi(items: number[]): Promise<{ total: number; frail: boolean }> {
    return this.request("POST", "/assessments/gfi", { items });
  }

  scorePssuq(items: (number | null)[]): Promise<Record<string, unknown>> {
    return this.request("POST", "/assessments/pssuq", { items });
  }
}
