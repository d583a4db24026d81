"""Read-mostly HTTP layer over one solved game, plus dialogue sessions.

The game is solved once at startup; every GET endpoint serves views of that
immutable model, so responses are stable across calls.  Dialogue sessions
are the only state: a map from unguessable ids to immutable dialogue states,
swapped wholesale under a lock and evicted after an idle timeout.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass, field

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from .build import argument_counts
from .explain import (
    DialogueError,
    DialogueState,
    Move,
    Reply,
    dialogue_step,
    legal_moves,
    new_session,
)
from .formats import framework_to_doc, game_to_doc, results_to_doc
from .game import Game
from .solve import SolvedGame, solve_game

DEFAULT_IDLE_TIMEOUT = 1800.0


@dataclass
class SessionStore:
    """Dialogue states by session id, with idle eviction."""

    idle_timeout: float = DEFAULT_IDLE_TIMEOUT
    _lock: threading.Lock = field(default_factory=threading.Lock)
    _states: dict[str, tuple[DialogueState, float]] = field(default_factory=dict)

    def _evict(self, now: float) -> None:
        dead = [
            sid
            for sid, (_, seen) in self._states.items()
            if now - seen > self.idle_timeout
        ]
        for sid in dead:
            del self._states[sid]

    def get(self, session_id: str) -> DialogueState | None:
        now = time.monotonic()
        with self._lock:
            self._evict(now)
            entry = self._states.get(session_id)
            if entry is None:
                return None
            self._states[session_id] = (entry[0], now)
            return entry[0]

    def put(self, state: DialogueState) -> None:
        now = time.monotonic()
        with self._lock:
            self._evict(now)
            self._states[state.session_id] = (state, now)


class DialogueRequest(BaseModel):
    sessionId: str | None = None
    move: dict


def _reply_doc(state: DialogueState, reply: Reply) -> dict:
    return {
        "sessionId": state.session_id,
        "prose": reply.prose,
        "template": reply.template,
        "referents": list(reply.referents),
        "legalMoves": [dict(m) for m in reply.legal_moves],
        "closed": not state.open,
        "node": reply.node.to_doc() if reply.node is not None else None,
        "transcript": [
            {"move": t.move, "prose": t.prose, "referents": list(t.referents)}
            for t in state.transcript
        ],
    }


def create_app(
    game: Game,
    solved: SolvedGame | None = None,
    ui_dir: str | None = None,
    idle_timeout: float = DEFAULT_IDLE_TIMEOUT,
) -> FastAPI:
    """Solve the game and expose it; ``ui_dir`` mounts a static frontend."""
    model = solved if solved is not None else solve_game(game)
    counts = argument_counts(game)
    store = SessionStore(idle_timeout=idle_timeout)

    app = FastAPI(title="argnash service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    game_doc = game_to_doc(game)
    framework_doc = framework_to_doc(model.framework)
    results_doc = results_to_doc(model, counts=counts)

    @app.get("/api/game")
    def get_game() -> dict:
        return game_doc

    @app.get("/api/framework")
    def get_framework() -> dict:
        return framework_doc

    @app.get("/api/extensions")
    def get_extensions(semantics: str = "preferred") -> dict:
        if semantics not in ("preferred", "stable"):
            raise HTTPException(
                status_code=400,
                detail=f"unknown semantics {semantics!r}; "
                f"allowed values: preferred, stable",
            )
        extensions = [
            e for e in results_doc["extensions"] if e["semantics"] == semantics
        ]
        return {"semantics": semantics, "extensions": extensions}

    @app.get("/api/nash")
    def get_nash() -> dict:
        return {
            "nash": results_doc["nash"],
            "stableClasses": results_doc["stableClasses"],
        }

    @app.get("/api/results")
    def get_results() -> dict:
        return results_doc

    @app.post("/api/dialogue")
    def post_dialogue(request: DialogueRequest) -> dict:
        if request.sessionId is None:
            state = new_session(model)
        else:
            found = store.get(request.sessionId)
            if found is None:
                raise HTTPException(
                    status_code=404,
                    detail=f"unknown or expired session {request.sessionId!r}",
                )
            state = found
        try:
            move = Move.from_doc(request.move)
            reply, new_state = dialogue_step(state, move)
        except DialogueError as err:
            raise HTTPException(status_code=400, detail=str(err))
        except ValueError as err:
            raise HTTPException(status_code=400, detail=str(err))
        store.put(new_state)
        return _reply_doc(new_state, reply)

    @app.get("/api/dialogue/{session_id}/moves")
    def get_legal_moves(session_id: str) -> dict:
        state = store.get(session_id)
        if state is None:
            raise HTTPException(
                status_code=404, detail=f"unknown or expired session {session_id!r}"
            )
        return {"legalMoves": [dict(m) for m in legal_moves(state)]}

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
