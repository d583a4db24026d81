/** Page bootstrap: fetch the solved model, render the three panels, and
 * wire the dialogue buttons.  All solving happens on the server; refreshing
 * the page loses only the transcript. */

import { ApiClient, ApiError } from "./api.js";
import { DialogueSession } from "./dialogue.js";
import { renderGraphSvg } from "./graph.js";
import {
  buildMatrix,
  extensionOptions,
  gameArgumentId,
  matrixToGameDoc,
  profileKey,
  type ExtensionOption,
  type MatrixView,
} from "./model.js";
import type {
  ExtensionDoc,
  FrameworkDoc,
  GameDoc,
  LegalMove,
  NashDoc,
  Outcome,
} from "./types.js";

type AppState = {
  game: GameDoc;
  framework: FrameworkDoc;
  preferred: ExtensionDoc[];
  stable: ExtensionDoc[];
  nash: NashDoc;
  selectedExtension: ExtensionOption | null;
  focusedNode: string | null;
  edited: Map<string, Outcome[]>;
};

const api = new ApiClient("");
const session = new DialogueSession(api);
let state: AppState | null = null;

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing element #${id}`);
  return found as T;
}

function showBanner(message: string): void {
  const banner = el<HTMLDivElement>("banner");
  banner.textContent = message + " ";
  const retry = document.createElement("button");
  retry.textContent = "Retry";
  retry.onclick = () => void boot();
  banner.appendChild(retry);
  banner.style.display = "block";
}

function hideBanner(): void {
  el<HTMLDivElement>("banner").style.display = "none";
}

async function boot(): Promise<void> {
  try {
    const [game, framework, preferred, stable, nash] = await Promise.all([
      api.getGame(),
      api.getFramework(),
      api.getExtensions("preferred"),
      api.getExtensions("stable"),
      api.getNash(),
    ]);
    state = {
      game,
      framework,
      preferred,
      stable,
      nash,
      selectedExtension: null,
      focusedNode: null,
      edited: new Map(),
    };
    hideBanner();
    renderAll();
  } catch (err) {
    showBanner(
      err instanceof ApiError && err.status === null
        ? "Solver service unreachable."
        : `Failed to load: ${String(err)}`,
    );
  }
}

function renderAll(): void {
  if (!state) return;
  renderMatrix();
  renderExtensions();
  renderGraph();
  renderDialogue();
}

function renderMatrix(): void {
  if (!state) return;
  const container = el<HTMLDivElement>("matrix");
  const view = buildMatrix(state.game, state.nash.nash);
  if (!view) {
    container.innerHTML =
      `<p>${state.game.players.length}-player game loaded; ` +
      `the payoff grid is shown for two-player games only.</p>`;
    return;
  }
  container.innerHTML = "";
  const table = document.createElement("table");
  table.className = "payoff";
  const head = table.insertRow();
  head.insertCell().textContent = `${view.rowPlayer} \\ ${view.colPlayer}`;
  for (const c of view.cols) {
    const cell = head.insertCell();
    cell.textContent = c;
    cell.className = "strategy";
  }
  view.rows.forEach((r, ri) => {
    const row = table.insertRow();
    const label = row.insertCell();
    label.textContent = r;
    label.className = "strategy";
    view.cols.forEach((c, ci) => {
      const cell = row.insertCell();
      const data = view.cells[ri]?.[ci];
      if (!data) return;
      cell.className = data.isNash ? "cell nash" : "cell";
      cell.title = data.isNash ? "pure equilibrium" : "";
      const input = document.createElement("input");
      input.value = data.outcome.join(", ");
      input.onchange = () => {
        const parts = input.value.split(",").map((s) => {
          const trimmed = s.trim();
          const n = Number(trimmed);
          return Number.isFinite(n) && trimmed !== "" ? n : trimmed;
        });
        state?.edited.set(profileKey([r, c]), parts);
      };
      cell.appendChild(input);
      cell.onclick = () => focusNode(gameArgumentId([r, c]));
    });
  });
  container.appendChild(table);

  const download = document.createElement("button");
  download.textContent = "Download edited game file";
  download.onclick = () => downloadEditedGame(view);
  container.appendChild(download);
  const note = document.createElement("p");
  note.className = "hint";
  note.textContent =
    "Edit payoffs, download the file, and serve it to solve the new game; " +
    "the service solves one game per run.";
  container.appendChild(note);
}

function downloadEditedGame(view: MatrixView): void {
  if (!state) return;
  const doc = matrixToGameDoc(view, state.edited);
  const blob = new Blob([JSON.stringify(doc, null, 2) + "\n"], {
    type: "application/json",
  });
  const link = document.createElement("a");
  link.href = URL.createObjectURL(blob);
  link.download = "game.json";
  link.click();
  URL.revokeObjectURL(link.href);
}

function renderExtensions(): void {
  if (!state) return;
  const select = el<HTMLSelectElement>("extension-select");
  const options = extensionOptions(state.preferred, state.stable);
  select.innerHTML = "";
  const none = document.createElement("option");
  none.value = "-1";
  none.textContent = "no extension selected";
  select.appendChild(none);
  for (const option of options) {
    const item = document.createElement("option");
    item.value = String(option.index);
    item.textContent = option.label;
    select.appendChild(item);
  }
  select.onchange = () => {
    const index = Number(select.value);
    state!.selectedExtension =
      index >= 0 ? (options[index] ?? null) : null;
    renderGraph();
  };
}

function renderGraph(): void {
  if (!state) return;
  const container = el<HTMLDivElement>("graph");
  container.innerHTML = renderGraphSvg(state.framework, {
    size: 640,
    members: state.selectedExtension?.members ?? null,
    focus: state.focusedNode,
  });
  for (const node of container.querySelectorAll<SVGGElement>(".graph-node")) {
    node.style.cursor = "pointer";
    node.addEventListener("click", () => {
      const id = node.getAttribute("data-node-id");
      if (id) focusNode(id);
    });
  }
}

function focusNode(id: string): void {
  if (!state) return;
  state.focusedNode = state.focusedNode === id ? null : id;
  renderGraph();
}

function renderDialogue(): void {
  const transcript = el<HTMLDivElement>("transcript");
  transcript.innerHTML = "";
  for (const turn of session.turns) {
    const entry = document.createElement("div");
    entry.className = `turn ${turn.role}`;
    const text = document.createElement("span");
    text.textContent = (turn.role === "user" ? "You: " : "Solver: ") + turn.text;
    entry.appendChild(text);
    for (const ref of turn.referents) {
      const chip = document.createElement("button");
      chip.className = "referent";
      chip.textContent = ref;
      chip.onclick = () => focusNode(ref);
      entry.appendChild(chip);
    }
    transcript.appendChild(entry);
  }
  transcript.scrollTop = transcript.scrollHeight;
  renderMoveButtons();
}

function renderMoveButtons(): void {
  if (!state) return;
  const bar = el<HTMLDivElement>("moves");
  bar.innerHTML = "";
  const moves: LegalMove[] = session.turns.length
    ? session.legalMoves
    : openingMoves();
  for (const move of moves) {
    const button = document.createElement("button");
    button.textContent = move.label;
    button.onclick = () => void ask(move);
    bar.appendChild(button);
  }
  if (session.closed) {
    const note = document.createElement("span");
    note.textContent = " session closed";
    bar.appendChild(note);
  }
}

/** Before the first move the server has no session to report legal moves
 * for; offer the same opening menu it would. */
function openingMoves(): LegalMove[] {
  if (!state) return [];
  const nashKeys = new Set(state.nash.nash.map(profileKey));
  const moves: LegalMove[] = [];
  for (const profile of state.nash.nash) {
    moves.push({
      type: "WHY",
      profile,
      label: `Why is [${profile.join(",")}] an equilibrium?`,
    });
  }
  const menus = state.game.strategies;
  const profiles: string[][] = menus.reduce<string[][]>(
    (acc, menu) => acc.flatMap((p) => menu.map((s) => [...p, s])),
    [[]],
  );
  for (const profile of profiles) {
    if (!nashKeys.has(profileKey(profile))) {
      moves.push({
        type: "WHY_NOT",
        profile,
        label: `Why is [${profile.join(",")}] not an equilibrium?`,
      });
    }
  }
  return moves;
}

async function ask(move: LegalMove): Promise<void> {
  try {
    await session.ask(move);
    hideBanner();
  } catch (err) {
    if (err instanceof ApiError && err.status === null) {
      showBanner("Solver service unreachable.");
    } else {
      showBanner(`Move rejected: ${String(err)}`);
    }
  }
  renderDialogue();
}

document.addEventListener("DOMContentLoaded", () => void boot());
