import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { DialogueSession, moveLabel } from "../src/dialogue.js";
import type { DialogueReply, MoveDoc } from "../src/types.js";

/** A fake service that forgets sessions on demand. */
function fakeService(options: { forgetAfter?: number } = {}) {
  let counter = 0;
  let forgotten = false;
  const sessions = new Map<string, MoveDoc[]>();
  const calls: { move: MoveDoc; sessionId: string | null }[] = [];

  const fetchImpl = async (input: string, init?: RequestInit) => {
    if (!input.endsWith("/api/dialogue")) throw new Error(`unexpected ${input}`);
    const body = JSON.parse(String(init?.body)) as {
      sessionId: string | null;
      move: MoveDoc;
    };
    calls.push({ move: body.move, sessionId: body.sessionId });
    if (
      options.forgetAfter !== undefined &&
      !forgotten &&
      calls.length > options.forgetAfter
    ) {
      forgotten = true;
      sessions.clear();
    }
    let sid = body.sessionId;
    if (sid !== null && !sessions.has(sid)) {
      return new Response(JSON.stringify({ detail: "unknown session" }), {
        status: 404,
      });
    }
    if (sid === null) {
      sid = `s${counter++}`;
      sessions.set(sid, []);
    }
    const history = sessions.get(sid)!;
    history.push(body.move);
    const reply: DialogueReply = {
      sessionId: sid,
      prose: `answer ${history.length} to ${body.move.type}`,
      template: "t",
      referents: ["p:[stag,_]/stag"],
      legalMoves: [{ type: "CONCEDE", label: "I understand." }],
      closed: false,
      transcript: [],
      node: null,
    };
    return new Response(JSON.stringify(reply), { status: 200 });
  };
  return { fetchImpl, calls };
}

describe("DialogueSession", () => {
  it("keeps a local transcript and the latest legal moves", async () => {
    const service = fakeService();
    const session = new DialogueSession(new ApiClient("", service.fetchImpl));
    await session.ask({ type: "WHY", profile: ["stag", "stag"] });
    await session.ask({ type: "CONCEDE" });
    expect(session.turns).toHaveLength(4);
    expect(session.systemTurnCount()).toBe(2);
    expect(session.legalMoves[0]!.type).toBe("CONCEDE");
    // One session was created and reused.
    expect(new Set(service.calls.map((c) => c.sessionId)).size).toBe(2);
  });

  it("replays its history transparently when the session expires", async () => {
    const service = fakeService({ forgetAfter: 2 });
    const session = new DialogueSession(new ApiClient("", service.fetchImpl));
    await session.ask({ type: "WHY", profile: ["stag", "stag"] });
    await session.ask({
      type: "WHY_DEFEAT",
      attacker: "g:stag,stag",
      target: "g:stag,hare",
    });
    // The service has now forgotten the session; the next ask must recover.
    const reply = await session.ask({ type: "CONCEDE" });
    expect(reply.prose).toContain("answer 3");
    // Local transcript survived the recreation.
    expect(session.systemTurnCount()).toBe(3);
    const replayed = service.calls.map((c) => c.move.type);
    expect(replayed).toEqual([
      "WHY",
      "WHY_DEFEAT",
      "CONCEDE", // rejected with 404
      "WHY", // replay
      "WHY_DEFEAT",
      "CONCEDE",
    ]);
  });
});

describe("moveLabel", () => {
  it("describes each move kind", () => {
    expect(moveLabel({ type: "WHY", profile: ["a", "b"] })).toContain("[a,b]");
    expect(
      moveLabel({ type: "WHY_DEFEAT", attacker: "g:a,a", target: "g:a,b" }),
    ).toContain("defeat");
    expect(moveLabel({ type: "END" })).toContain("End");
  });
});
