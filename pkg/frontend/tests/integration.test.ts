/** Round-trip against the real solver service.
 *
 * Spawns the Python service on the stag hunt fixture, then drives the same
 * code paths the page uses: load the model, ask WHY, follow with WHY_DEFEAT
 * and WHY_PREFERENCE picked from the reported legal moves, and check that
 * every cited referent resolves to a node in the graph view.  A second
 * service on matching pennies must yield a matrix without equilibrium
 * highlights and an opening menu of why-not questions only.
 */

import { type ChildProcess, spawn } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { DialogueSession } from "../src/dialogue.js";
import { layoutPositions } from "../src/graph.js";
import { buildMatrix } from "../src/model.js";

const REPO_ROOT = new URL("../..", import.meta.url).pathname;
const STAG_PORT = 8611;
const PENNIES_PORT = 8612;

function startService(fixture: string, port: number): ChildProcess {
  return spawn(
    "python3",
    [
      "-m",
      "argnash.cli",
      "serve",
      `fixtures/games/${fixture}`,
      "--port",
      String(port),
    ],
    { cwd: REPO_ROOT, stdio: "ignore" },
  );
}

async function waitFor(api: ApiClient, attempts = 60): Promise<void> {
  for (let i = 0; i < attempts; i++) {
    try {
      await api.getNash();
      return;
    } catch {
      await new Promise((resolve) => setTimeout(resolve, 250));
    }
  }
  throw new Error("service did not come up");
}

let stagProc: ChildProcess;
let penniesProc: ChildProcess;
const stagApi = new ApiClient(`http://127.0.0.1:${STAG_PORT}`);
const penniesApi = new ApiClient(`http://127.0.0.1:${PENNIES_PORT}`);

beforeAll(async () => {
  stagProc = startService("stag_hunt.json", STAG_PORT);
  penniesProc = startService("matching_pennies.json", PENNIES_PORT);
  await waitFor(stagApi);
  await waitFor(penniesApi);
}, 30_000);

afterAll(() => {
  stagProc?.kill();
  penniesProc?.kill();
});

describe("stag hunt round-trip", () => {
  it("loads a matrix with both equilibria marked", async () => {
    const [game, nash] = await Promise.all([
      stagApi.getGame(),
      stagApi.getNash(),
    ]);
    const view = buildMatrix(game, nash.nash);
    expect(view).not.toBeNull();
    const marked = view!.cells.flat().filter((c) => c.isNash);
    expect(marked.map((c) => [c.row, c.col]).sort()).toEqual([
      ["hare", "hare"],
      ["stag", "stag"],
    ]);
  });

  it("walks WHY, WHY_DEFEAT, WHY_PREFERENCE with resolving referents", async () => {
    const framework = await stagApi.getFramework();
    const positions = layoutPositions(framework, 640);
    const session = new DialogueSession(stagApi);

    const first = await session.ask({
      type: "WHY",
      profile: ["stag", "stag"],
    });
    expect(first.prose).toContain("defeats all the other outcome arguments");

    const defeatMove = first.legalMoves.find(
      (m) => m.type === "WHY_DEFEAT" && m.target === "g:stag,hare",
    );
    expect(defeatMove).toBeDefined();
    const second = await session.ask(defeatMove!);
    expect(second.prose).toContain("better outcome to player 1");

    const prefMove = second.legalMoves.find((m) => m.type === "WHY_PREFERENCE");
    expect(prefMove).toBeDefined();
    const third = await session.ask(prefMove!);
    expect(third.referents).toContain("v:[stag,_]/stag>hare");

    expect(session.systemTurnCount()).toBe(3);
    for (const turn of session.turns) {
      for (const ref of turn.referents) {
        expect(positions.has(ref), `referent ${ref} resolves`).toBe(true);
      }
    }
  });

  it("dims non-members for a selected extension", async () => {
    const [framework, extensions] = await Promise.all([
      stagApi.getFramework(),
      stagApi.getExtensions("preferred"),
    ]);
    expect(extensions).toHaveLength(2);
    const members = new Set(extensions[0]!.members);
    const allIds = framework.nodes.map((n) => n.id);
    const dimmedCount = allIds.filter((id) => !members.has(id)).length;
    expect(dimmedCount).toBe(allIds.length - members.size);
  });
});

describe("matching pennies", () => {
  it("shows no equilibrium highlights and offers only why-not questions", async () => {
    const [game, nash] = await Promise.all([
      penniesApi.getGame(),
      penniesApi.getNash(),
    ]);
    expect(nash.nash).toEqual([]);
    const view = buildMatrix(game, nash.nash);
    expect(view!.cells.flat().every((c) => !c.isNash)).toBe(true);

    const session = new DialogueSession(penniesApi);
    const reply = await session.ask({
      type: "WHY_NOT",
      profile: ["heads", "heads"],
    });
    expect(reply.prose).toContain("not an equilibrium");
    expect(reply.referents).toContain("v:[heads,_]/tails>heads");
  });
});
