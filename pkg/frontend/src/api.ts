import type {
  Answer,
  ErrorEnvelope,
  Health,
  SessionSummary,
  StructuredResponse,
} from "./types.js";

/** Non-2xx reply, carrying the service's error envelope verbatim. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly envelope: ErrorEnvelope,
  ) {
    super(envelope.message);
    this.name = "ApiError";
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  // fetch is injectable so tests can serve recorded fixtures
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  async health(): Promise<Health> {
    return this.json(await this.fetchFn(`${this.baseUrl}/api/health`));
  }

  async uploadLog(file: File, category?: string): Promise<SessionSummary> {
    const body = new FormData();
    body.append("file", file, file.name);
    if (category) body.append("category", category);
    const response = await this.fetchFn(`${this.baseUrl}/api/sessions`, {
      method: "POST",
      body,
    });
    return this.json(response);
  }

  async chat(sessionId: string, question: string): Promise<Answer> {
    const response = await this.fetchFn(
      `${this.baseUrl}/api/sessions/${encodeURIComponent(sessionId)}/chat`,
      {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify({ question }),
      },
    );
    return this.json(response);
  }

  async eventsCsv(sessionId: string): Promise<string> {
    const response = await this.fetchFn(
      `${this.baseUrl}/api/sessions/${encodeURIComponent(sessionId)}/events`,
    );
    if (!response.ok) throw await this.toError(response);
    return response.text();
  }

  async structured(sessionId: string, event?: string): Promise<StructuredResponse> {
    const query = event ? `?event=${encodeURIComponent(event)}` : "";
    const response = await this.fetchFn(
      `${this.baseUrl}/api/sessions/${encodeURIComponent(sessionId)}/structured${query}`,
    );
    return this.json(response);
  }

  private async json<T>(response: Response): Promise<T> {
    if (!response.ok) throw await this.toError(response);
    return (await response.json()) as T;
  }

  private async toError(response: Response): Promise<ApiError> {
    let envelope: ErrorEnvelope;
    try {
      envelope = (await response.json()) as ErrorEnvelope;
      if (typeof envelope?.code !== "string" || typeof envelope?.message !== "string") {
        throw new Error("not an envelope");
      }
    } catch {
      envelope = {
        code: `http_${response.status}`,
        message: `request failed with status ${response.status}`,
        detail: null,
      };
    }
    return new ApiError(response.status, envelope);
  }
}
