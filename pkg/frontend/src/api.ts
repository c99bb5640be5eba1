// Typed client for the teaching-session HTTP API.

export interface SessionParams {
  alpha: number;
  beta: number;
  eta: number;
}

export interface CreateSessionResponse {
  session_id: string;
  rule_id: string;
  hypotheses: string[];
  priors: number[];
  params: SessionParams;
  target: string | null;
}

export interface ExampleEcho {
  text: string;
  label: "pos" | "neg";
  position: number;
  consistent_with_target: boolean | null;
}

export interface AddExampleResponse {
  l0: number[];
  l1: number[];
  fallback: boolean;
  example: ExampleEcho;
}

export interface SessionState {
  session_id: string;
  rule_id: string;
  hypotheses: string[];
  priors: number[];
  params: SessionParams;
  target: string | null;
  examples: ExampleEcho[];
  l0: number[];
  l1: number[];
  fallback: boolean;
  q_counts: number[];
  clusters: number[][];
}

export interface Suggestion {
  text: string;
  label: "pos" | "neg";
  score: number;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  let response: Response;
  try {
    response = await fetch(url, init);
  } catch (err) {
    throw new ApiError(0, "unreachable", `service unreachable: ${err}`);
  }
  if (response.status === 204) {
    return undefined as T;
  }
  const body = await response.json();
  if (!response.ok) {
    throw new ApiError(
      response.status,
      body.error ?? "error",
      body.message ?? response.statusText,
    );
  }
  return body as T;
}

export class TeachClient {
  constructor(public baseUrl: string) {
    this.baseUrl = baseUrl.replace(/\/$/, "");
  }

  createSession(body: {
    rule_id?: string;
    custom_space?: { name?: string; target: string; distractors: string[] };
    alpha?: number;
    beta?: number;
    eta?: number;
    target?: string;
  }): Promise<CreateSessionResponse> {
    return request(`${this.baseUrl}/sessions`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  addExample(
    sessionId: string,
    text: string,
    label: "pos" | "neg",
  ): Promise<AddExampleResponse> {
    return request(`${this.baseUrl}/sessions/${sessionId}/examples`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ text, label }),
    });
  }

  getState(sessionId: string): Promise<SessionState> {
    return request(`${this.baseUrl}/sessions/${sessionId}`);
  }

  suggest(sessionId: string, n: number): Promise<{ suggestions: Suggestion[] }> {
    return request(`${this.baseUrl}/sessions/${sessionId}/suggest?n=${n}`);
  }

  deleteSession(sessionId: string): Promise<void> {
    return request(`${this.baseUrl}/sessions/${sessionId}`, { method: "DELETE" });
  }
}
