/** Typed client for the solver service; every fact the UI shows comes
 * through here, so a page refresh loses nothing but the transcript. */

import type {
  DialogueReply,
  ExtensionDoc,
  FrameworkDoc,
  GameDoc,
  MoveDoc,
  NashDoc,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    message: string,
    readonly status: number | null,
  ) {
    super(message);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchImpl(this.baseUrl + path, init);
    } catch (err) {
      throw new ApiError(`service unreachable: ${String(err)}`, null);
    }
    if (!response.ok) {
      let detail = response.statusText;
      try {
        const body = (await response.json()) as { detail?: string };
        if (body.detail) detail = body.detail;
      } catch {
        // keep the status text
      }
      throw new ApiError(detail, response.status);
    }
    return (await response.json()) as T;
  }

  getGame(): Promise<GameDoc> {
    return this.request<GameDoc>("/api/game");
  }

  getFramework(): Promise<FrameworkDoc> {
    return this.request<FrameworkDoc>("/api/framework");
  }

  async getExtensions(
    semantics: "preferred" | "stable",
  ): Promise<ExtensionDoc[]> {
    const doc = await this.request<{ extensions: ExtensionDoc[] }>(
      `/api/extensions?semantics=${semantics}`,
    );
    return doc.extensions;
  }

  getNash(): Promise<NashDoc> {
    return this.request<NashDoc>("/api/nash");
  }

  postDialogue(move: MoveDoc, sessionId: string | null): Promise<DialogueReply> {
    return this.request<DialogueReply>("/api/dialogue", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ sessionId, move }),
    });
  }
}
