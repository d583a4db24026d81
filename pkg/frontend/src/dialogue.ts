/** Client-side dialogue state: local transcript, legal-move buttons, and
 * transparent recovery when the server forgets the session.
 *
 * The server owns the protocol; this class only remembers which moves were
 * sent so that an expired session can be rebuilt by replaying them.  The
 * rendered transcript therefore survives restarts and evictions.
 */

import { ApiClient, ApiError } from "./api.js";
import type { DialogueReply, LegalMove, MoveDoc } from "./types.js";

export type TranscriptTurn = {
  role: "user" | "system";
  text: string;
  referents: string[];
};

export function moveLabel(move: MoveDoc): string {
  switch (move.type) {
    case "WHY":
      return `Why [${(move.profile ?? []).join(",")}]?`;
    case "WHY_NOT":
      return `Why not [${(move.profile ?? []).join(",")}]?`;
    case "WHY_DEFEAT":
      return `Why does ${move.attacker} defeat ${move.target}?`;
    case "WHY_PREFERENCE":
      return `Why does ${move.argument} hold?`;
    case "CONCEDE":
      return "I understand.";
    case "END":
      return "End session.";
  }
}

export class DialogueSession {
  turns: TranscriptTurn[] = [];
  legalMoves: LegalMove[] = [];
  closed = false;

  private sessionId: string | null = null;
  private history: MoveDoc[] = [];

  constructor(private readonly api: ApiClient) {}

  /** Send one move; on an expired session, replay the history first. */
  async ask(move: MoveDoc): Promise<DialogueReply> {
    let reply: DialogueReply;
    try {
      reply = await this.api.postDialogue(move, this.sessionId);
    } catch (err) {
      if (err instanceof ApiError && err.status === 404 && this.sessionId) {
        reply = await this.replayAndRetry(move);
      } else {
        throw err;
      }
    }
    this.sessionId = reply.sessionId;
    this.history.push(move);
    this.turns.push({ role: "user", text: moveLabel(move), referents: [] });
    this.turns.push({
      role: "system",
      text: reply.prose,
      referents: reply.referents,
    });
    this.legalMoves = reply.legalMoves;
    this.closed = reply.closed;
    return reply;
  }

  private async replayAndRetry(move: MoveDoc): Promise<DialogueReply> {
    this.sessionId = null;
    let last: DialogueReply | null = null;
    for (const past of this.history) {
      last = await this.api.postDialogue(past, this.sessionId);
      this.sessionId = last.sessionId;
    }
    return this.api.postDialogue(move, this.sessionId);
  }

  systemTurnCount(): number {
    return this.turns.filter((t) => t.role === "system").length;
  }
}
