/**
 * Conversation state for the chat UI.
 *
 * The message list is append-only and at most one request per session is in
 * flight at a time (the `pending` flag mirrors the service's per-session
 * serialization; the UI disables send while it is set). No NLP happens
 * here: tone, intents, and routing all arrive inside TurnResult
 * diagnostics.
 */

import { ApiClient, ApiError, Diagnostics, TurnResult } from "./api.js";

export interface Message {
  author: "user" | "bot";
  text: string;
  language?: string;
  diagnostics?: Diagnostics;
  failed?: boolean;
}

export type Banner = { kind: "error" | "info"; text: string; sessionLost?: boolean } | null;

type Listener = () => void;

export class ChatViewModel {
  sessionId: string | null = null;
  messages: Message[] = [];
  selectedLanguage: string | undefined;
  languages: string[] = [];
  pending = false;
  banner: Banner = null;

  private listeners: Listener[] = [];

  constructor(private readonly api: ApiClient) {}

  onChange(listener: Listener): void {
    this.listeners.push(listener);
  }

  private notify(): void {
    for (const listener of this.listeners) listener();
  }

  get lastDiagnostics(): Diagnostics | undefined {
    for (let i = this.messages.length - 1; i >= 0; i--) {
      const message = this.messages[i];
      if (message.author === "bot" && message.diagnostics) return message.diagnostics;
    }
    return undefined;
  }

  async loadLanguages(): Promise<void> {
    try {
      const skill = await this.api.getSkill();
      this.languages = skill.languages;
      if (!this.selectedLanguage) {
        const browser =
          typeof navigator !== "undefined" ? navigator.language?.slice(0, 2) : undefined;
        this.selectedLanguage = skill.languages.includes(browser ?? "")
          ? browser
          : skill.default_language;
      }
    } catch {
      this.languages = [];
    }
    this.notify();
  }

  async start(language?: string): Promise<boolean> {
    if (language) this.selectedLanguage = language;
    this.pending = true;
    this.banner = null;
    this.notify();
    try {
      const created = await this.api.createSession(this.selectedLanguage);
      this.sessionId = created.session_id;
      this.messages = [];
      this.pushBot(created.greeting);
      return true;
    } catch (err) {
      this.sessionId = null;
      this.banner = { kind: "error", text: describe(err, "Could not reach the chat service") };
      return false;
    } finally {
      this.pending = false;
      this.notify();
    }
  }

  canSend(text: string): boolean {
    return Boolean(this.sessionId) && !this.pending && text.trim().length > 0;
  }

  async send(text: string): Promise<boolean> {
    if (!this.canSend(text)) return false;
    const sessionId = this.sessionId as string;
    this.pending = true;
    this.banner = null;
    this.messages.push({ author: "user", text, language: this.selectedLanguage });
    this.notify();
    try {
      const result = await this.api.sendMessage(sessionId, text, this.selectedLanguage);
      this.pushBot(result);
      return true;
    } catch (err) {
      this.messages[this.messages.length - 1].failed = true;
      if (err instanceof ApiError && err.status === 404) {
        this.banner = {
          kind: "error",
          text: "This conversation no longer exists. Start a new one?",
          sessionLost: true,
        };
      } else {
        this.banner = { kind: "error", text: describe(err, "Message failed to send") };
      }
      return false;
    } finally {
      this.pending = false;
      this.notify();
    }
  }

  /** Re-send the most recent failed message, reusing its text. */
  async retry(): Promise<boolean> {
    const failed = [...this.messages].reverse().find((m) => m.author === "user" && m.failed);
    if (!failed || this.pending || !this.sessionId) return false;
    failed.failed = false;
    this.pending = true;
    this.banner = null;
    this.notify();
    try {
      const result = await this.api.sendMessage(this.sessionId, failed.text, this.selectedLanguage);
      this.pushBot(result);
      return true;
    } catch (err) {
      failed.failed = true;
      this.banner = { kind: "error", text: describe(err, "Message failed to send") };
      return false;
    } finally {
      this.pending = false;
      this.notify();
    }
  }

  setLanguage(code: string): void {
    this.selectedLanguage = code;
    this.notify();
  }

  private pushBot(result: TurnResult): void {
    this.messages.push({
      author: "bot",
      text: result.reply,
      language: result.reply_language,
      diagnostics: result.diagnostics,
    });
  }
}

function describe(err: unknown, fallback: string): string {
  if (err instanceof ApiError) return `${fallback}: ${err.message}`;
  return fallback;
}
