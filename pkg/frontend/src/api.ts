/**
 * Typed client for the chat service HTTP API. All conversation semantics
 * (language detection, tone, routing) live server-side; this module only
 * moves JSON.
 */

export interface AudioRefJson {
  locator: string;
  format: string;
  language: string | null;
}

export interface ToneDiagnostics {
  scores: Record<string, number>;
  emotions: string[];
  language_tones: string[];
  outcome: string;
  dominant: string | null;
  threshold: number;
}

export interface IntentMatchJson {
  intent: string;
  confidence: number;
}

export interface EntityMatchJson {
  entity: string;
  value: string;
  surface: string;
  start: number;
  length: number;
}

export interface Diagnostics {
  stages: string[];
  tone_primary?: string;
  tone?: ToneDiagnostics;
  intents?: IntentMatchJson[];
  entities?: EntityMatchJson[];
  fired_node?: string;
  node_path?: string[];
  detected_language?: { code: string; confidence: number };
  english_input?: string;
  warnings?: string[];
}

export interface TurnResult {
  reply: string;
  reply_language: string;
  audio_ref: AudioRefJson | null;
  diagnostics?: Diagnostics;
}

export interface SessionCreated {
  session_id: string;
  greeting: TurnResult;
}

export interface TranscriptTurn {
  input: { text: string | null; language: string | null; audio_ref: AudioRefJson | null } | null;
  result: TurnResult;
}

export interface Transcript {
  session_id: string;
  language: string;
  turns: TranscriptTurn[];
}

export interface SkillSummary {
  name: string;
  intents: string[];
  entities: { name: string; values: string[] }[];
  nodes: { id: string; title: string }[];
  languages: string[];
  default_language: string;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

async function parseError(response: Response): Promise<never> {
  let code = "http_error";
  let message = `HTTP ${response.status}`;
  try {
    const body = (await response.json()) as { code?: string; message?: string };
    if (body.code) code = body.code;
    if (body.message) message = body.message;
  } catch {
    // non-JSON error body; keep defaults
  }
  throw new ApiError(response.status, code, message);
}

export class ApiClient {
  constructor(private readonly baseUrl: string = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      headers: { "Content-Type": "application/json" },
      ...init,
    });
    if (!response.ok) await parseError(response);
    return (await response.json()) as T;
  }

  createSession(language?: string): Promise<SessionCreated> {
    return this.request("/api/sessions", {
      method: "POST",
      body: JSON.stringify(language ? { language } : {}),
    });
  }

  sendMessage(sessionId: string, text: string, language?: string): Promise<TurnResult> {
    return this.request(`/api/sessions/${encodeURIComponent(sessionId)}/messages`, {
      method: "POST",
      body: JSON.stringify(language ? { text, language } : { text }),
    });
  }

  getTranscript(sessionId: string): Promise<Transcript> {
    return this.request(`/api/sessions/${encodeURIComponent(sessionId)}`);
  }

  getSkill(): Promise<SkillSummary> {
    return this.request("/api/skill");
  }
}
