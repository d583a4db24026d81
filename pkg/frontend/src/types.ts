/** Wire types for the solver service. */

export type Outcome = number | string;

export type GameDoc = {
  players: string[];
  strategies: string[][];
  payoffs: { profile: string[]; outcome: Outcome[] }[];
  preferences?: unknown[];
};

export type NodeKind = "game" | "preference" | "valuation";

export type FrameworkNode = {
  id: string;
  kind: NodeKind;
  label: string;
  provenance: Record<string, unknown>;
};

export type FrameworkDoc = {
  nodes: FrameworkNode[];
  attacks: { id: string; from: string; to: string }[];
  metaAttacks: { from: string; attackId: string }[];
};

export type ExtensionDoc = {
  semantics: "preferred" | "stable";
  members: string[];
};

export type StableClassDoc = {
  gameArgument: string;
  profile: string[];
  extensionCount: number;
};

export type NashDoc = {
  nash: string[][];
  stableClasses: StableClassDoc[];
};

export type MoveDoc = {
  type: "WHY" | "WHY_DEFEAT" | "WHY_PREFERENCE" | "WHY_NOT" | "CONCEDE" | "END";
  profile?: string[];
  attacker?: string;
  target?: string;
  argument?: string;
};

export type LegalMove = MoveDoc & { label: string };

export type TranscriptEntry = {
  move: string;
  prose: string;
  referents: string[];
};

export type DialogueReply = {
  sessionId: string;
  prose: string;
  template: string;
  referents: string[];
  legalMoves: LegalMove[];
  closed: boolean;
  transcript: TranscriptEntry[];
  node: unknown;
};
