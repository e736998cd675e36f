/**
 * Client for the collection service's JSON API.
 *
 * Trace uploads retry with exponential backoff; if every attempt fails
 * the trace is parked in local storage so the data survives a reload,
 * and the caller gets an error to surface to the participant.
 */

export interface SessionInfo {
  session_id: string;
  status: "active" | "completed" | "excluded";
  playlist: string[];
  foveation: { sigma1_frac: number; sigmaw_frac: number };
}

export interface PlaylistVideo {
  video_id: string;
  width: number;
  height: number;
  fps: number;
  duration_ms: number;
  n_frames: number;
  url: string;
}

export interface PlaylistInfo {
  session_id: string;
  status: string;
  playlist: PlaylistVideo[];
  completed_videos: string[];
  foveation: { sigma1_frac: number; sigmaw_frac: number };
}

export interface UploadAck {
  accepted: boolean;
  samples_stored: number;
}

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export interface KeyValueStore {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
  removeItem(key: string): void;
}

export interface ApiClientOptions {
  baseUrl?: string;
  fetchImpl?: FetchLike;
  /** delays between upload retries, in ms */
  retryDelaysMs?: number[];
  sleep?: (ms: number) => Promise<void>;
  storage?: KeyValueStore | null;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string
  ) {
    super(message);
  }
}

export class UploadFailedError extends Error {
  constructor(
    readonly videoId: string,
    readonly savedLocally: boolean,
    readonly cause: unknown
  ) {
    super(
      `upload for ${videoId} failed after retries` +
        (savedLocally ? "; the trace was saved locally" : "")
    );
  }
}

const defaultSleep = (ms: number) => new Promise<void>((r) => setTimeout(r, ms));

export class ApiClient {
  readonly baseUrl: string;
  #fetch: FetchLike;
  #retryDelaysMs: number[];
  #sleep: (ms: number) => Promise<void>;
  #storage: KeyValueStore | null;

  constructor(options: ApiClientOptions = {}) {
    this.baseUrl = (options.baseUrl ?? "").replace(/\/$/, "");
    this.#fetch = options.fetchImpl ?? ((url, init) => fetch(url, init));
    this.#retryDelaysMs = options.retryDelaysMs ?? [500, 1000, 2000];
    this.#sleep = options.sleep ?? defaultSleep;
    this.#storage =
      options.storage !== undefined
        ? options.storage
        : typeof localStorage !== "undefined"
          ? localStorage
          : null;
  }

  async #json<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.#fetch(this.baseUrl + path, {
      method,
      headers: body !== undefined ? { "Content-Type": "application/json" } : undefined,
      body: body !== undefined ? JSON.stringify(body) : undefined,
    });
    const text = await response.text();
    const payload = text ? JSON.parse(text) : {};
    if (!response.ok) {
      throw new ApiError(
        response.status,
        payload.code ?? "error",
        payload.message ?? `request failed with ${response.status}`
      );
    }
    return payload as T;
  }

  createSession(report: {
    screen_width: number;
    screen_height: number;
    measured_fps: number;
  }): Promise<SessionInfo> {
    return this.#json("POST", "/api/session", report);
  }

  getPlaylist(sessionId: string): Promise<PlaylistInfo> {
    return this.#json("GET", `/api/session/${sessionId}/playlist`);
  }

  completeSession(sessionId: string): Promise<{ completion_code: string }> {
    return this.#json("POST", `/api/session/${sessionId}/complete`);
  }

  videoUrl(video: PlaylistVideo): string {
    return this.baseUrl + video.url;
  }

  /**
   * Upload one video's trace, retrying transient failures with backoff.
   * Client errors (4xx) are not retried: the payload will not get better.
   */
  async uploadTrace(
    sessionId: string,
    videoId: string,
    samples: [number, number, number][],
    clientFpsReport: number
  ): Promise<UploadAck> {
    const body = { video_id: videoId, samples, client_fps_report: clientFpsReport };
    let lastError: unknown;
    for (let attempt = 0; attempt <= this.#retryDelaysMs.length; attempt++) {
      try {
        const ack = await this.#json<UploadAck>(
          "POST",
          `/api/session/${sessionId}/trace`,
          body
        );
        this.#dropLocal(sessionId, videoId);
        return ack;
      } catch (err) {
        lastError = err;
        if (err instanceof ApiError && err.status < 500) break;
        if (attempt < this.#retryDelaysMs.length) {
          await this.#sleep(this.#retryDelaysMs[attempt]);
        }
      }
    }
    const saved = this.#saveLocal(sessionId, videoId, body);
    throw new UploadFailedError(videoId, saved, lastError);
  }

  #localKey(sessionId: string, videoId: string): string {
    return `mousesal:pending:${sessionId}:${videoId}`;
  }

  #saveLocal(sessionId: string, videoId: string, body: unknown): boolean {
    if (!this.#storage) return false;
    try {
      this.#storage.setItem(this.#localKey(sessionId, videoId), JSON.stringify(body));
      return true;
    } catch {
      return false;
    }
  }

  #dropLocal(sessionId: string, videoId: string): void {
    this.#storage?.removeItem(this.#localKey(sessionId, videoId));
  }

  pendingLocalUpload(sessionId: string, videoId: string): unknown | null {
    const raw = this.#storage?.getItem(this.#localKey(sessionId, videoId));
    return raw ? JSON.parse(raw) : null;
  }
}
