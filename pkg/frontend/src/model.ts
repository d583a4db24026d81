/** View-model computation, kept free of the DOM so it is testable headless.
 * Highlighting is derived solely from service responses. */

import type { ExtensionDoc, GameDoc, Outcome } from "./types.js";

export type MatrixCell = {
  row: string;
  col: string;
  outcome: Outcome[];
  isNash: boolean;
};

export type MatrixView = {
  rowPlayer: string;
  colPlayer: string;
  rows: string[];
  cols: string[];
  cells: MatrixCell[][];
};

export function profileKey(profile: string[]): string {
  return profile.join(",");
}

export function gameArgumentId(profile: string[]): string {
  return "g:" + profile.join(",");
}

/** Two-player payoff grid with equilibrium cells marked; null for other
 * player counts (those games are load-only). */
export function buildMatrix(game: GameDoc, nash: string[][]): MatrixView | null {
  if (game.players.length !== 2) return null;
  const rows = game.strategies[0] ?? [];
  const cols = game.strategies[1] ?? [];
  const outcomes = new Map<string, Outcome[]>();
  for (const row of game.payoffs) {
    outcomes.set(profileKey(row.profile), row.outcome);
  }
  const nashKeys = new Set(nash.map(profileKey));
  const cells = rows.map((r) =>
    cols.map((c) => {
      const key = profileKey([r, c]);
      return {
        row: r,
        col: c,
        outcome: outcomes.get(key) ?? [],
        isNash: nashKeys.has(key),
      };
    }),
  );
  return {
    rowPlayer: game.players[0] ?? "row",
    colPlayer: game.players[1] ?? "column",
    rows,
    cols,
    cells,
  };
}

export type ExtensionOption = {
  index: number;
  semantics: string;
  label: string;
  members: Set<string>;
};

export function extensionOptions(
  preferred: ExtensionDoc[],
  stable: ExtensionDoc[],
): ExtensionOption[] {
  const stableKeys = new Set(
    stable.map((e) => e.members.slice().sort().join("|")),
  );
  return preferred.map((ext, index) => {
    const alsoStable = stableKeys.has(ext.members.slice().sort().join("|"));
    const inside = ext.members.find((m) => m.startsWith("g:"));
    const hint = inside ? ` with ${inside}` : "";
    return {
      index,
      semantics: alsoStable ? "preferred, stable" : "preferred",
      label: `extension ${index + 1}${hint} (${alsoStable ? "stable" : "preferred"})`,
      members: new Set(ext.members),
    };
  });
}

/** Serialise the edited grid back into the solver's game-file shape. */
export function matrixToGameDoc(
  view: MatrixView,
  edited: Map<string, Outcome[]>,
): GameDoc {
  const payoffs = [];
  for (const r of view.rows) {
    for (const c of view.cols) {
      const key = profileKey([r, c]);
      const base =
        view.cells[view.rows.indexOf(r)]?.[view.cols.indexOf(c)]?.outcome ?? [];
      payoffs.push({ profile: [r, c], outcome: edited.get(key) ?? base });
    }
  }
  return {
    players: [view.rowPlayer, view.colPlayer],
    strategies: [view.rows.slice(), view.cols.slice()],
    payoffs,
    preferences: ["numeric", "numeric"],
  };
}
