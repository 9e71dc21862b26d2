"""HTTP face of the workspace: concepts, rankings, sessions, queries, links.

Responses are JSON with stable field names. Exact rational values (linkage,
rank values, link weights) travel as strings like "1/2" so nothing is lost to
floating point on the wire. Session ids are handed out deterministically
(s1, s2, ...) to keep request-log replays stable.
"""

from __future__ import annotations

import threading
import time
from fractions import Fraction
from typing import Literal, Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import browsing
from .browsing import BrowseSession, RankedOrder, Scope
from .errors import (
    ConceptkitError,
    IndexOutOfRange,
    NotDisplayable,
    NotInContext,
    ThresholdOutOfRange,
    WrongMode,
    WrongScope,
)
from .lattice import ConceptLattice
from .linkage import Mode, crispify, linkage_matrix
from .workspace import WorkspaceStore

SESSION_TTL_SECONDS = 30 * 60


class SessionCreate(BaseModel):
    lattice: str
    mode: Literal["ext", "int"]


class TransitionBody(BaseModel):
    target: int
    mode: Optional[Literal["ext", "int"]] = None


class ScopeBody(BaseModel):
    scope: Literal["global", "local"]


class QueryBody(BaseModel):
    kind: Literal["intensional", "extensional"]
    elements: list[str] = []
    threshold: Optional[str] = None


class _Sessions:
    def __init__(self, ttl: float = SESSION_TTL_SECONDS):
        self.ttl = ttl
        self._lock = threading.Lock()
        self._data = {}
        self._counter = 0

    def create(self, session: BrowseSession) -> str:
        with self._lock:
            self._expire()
            self._counter += 1
            sid = f"s{self._counter}"
            self._data[sid] = [session, threading.Lock(), time.monotonic()]
            return sid

    def get(self, sid: str):
        with self._lock:
            self._expire()
            row = self._data.get(sid)
            if row is None:
                raise HTTPException(404, f"no session {sid!r}")
            row[2] = time.monotonic()
            return row[0], row[1]

    def _expire(self):
        now = time.monotonic()
        dead = [sid for sid, row in self._data.items() if now - row[2] > self.ttl]
        for sid in dead:
            del self._data[sid]


def _names(lat: ConceptLattice, k: int) -> dict:
    return {
        "views": sorted(n for n, i in lat.views.items() if i == k),
        "attributes": sorted(m.serial for m, i in lat.mu.items() if i == k),
        "objects": sorted(g for g, i in lat.gamma.items() if i == k),
    }


def _concept_payload(lat: ConceptLattice, k: int) -> dict:
    c = lat.concept(k)
    out = {
        "index": k,
        "extent": sorted(c.extent),
        "intent": sorted(m.serial for m in c.intent),
        "upper": list(lat.upper_covers[k]),
        "lower": list(lat.lower_covers[k]),
    }
    out.update(_names(lat, k))
    return out


def _ranking_payload(r: RankedOrder) -> dict:
    return {
        "measure": r.measure,
        "display": r.display.value,
        "state_extent": sorted(r.state_extent),
        "state_intent": sorted(r.state_intent),
        "groups": [
            {
                "rank": str(value),
                "labels": [
                    {"concept": l.concept, "names": list(l.names), "text": l.text()}
                    for l in labels
                ],
            }
            for value, labels in r.groups()
        ],
        "text": r.render(),
    }


def _session_payload(sid: str, s: BrowseSession) -> dict:
    lat = s.local.lattice if s.scope is Scope.LOCAL else s.lattice
    out = {
        "session": sid,
        "mode": s.mode.value,
        "scope": s.scope.value,
        "state": s.state,
        "state_extent": sorted(lat.extent(s.state)),
        "state_intent": sorted(m.serial for m in lat.intent(s.state)),
        "browsed_global": s.browsed_global,
    }
    if s.scope is Scope.LOCAL:
        out["seed"] = s.local.seed
        out["global_state"] = s.local.embed(s.state)
        out["labels"] = _names(s.lattice, s.local.embed(s.state))
    else:
        out["labels"] = _names(s.lattice, s.state)
    return out


def create_app(store: WorkspaceStore, session_ttl: float = SESSION_TTL_SECONDS) -> FastAPI:
    app = FastAPI(title="conceptkit", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions = _Sessions(session_ttl)

    def lattice_or_404(name: str) -> ConceptLattice:
        try:
            return store.lattice(name)
        except NotInContext as e:
            raise HTTPException(404, str(e)) from e

    @app.get("/contexts")
    def list_contexts():
        return {"contexts": list(store.contexts()), "lattices": list(store.lattice_ids())}

    @app.get("/lattices/{name}/concepts")
    def list_concepts(name: str):
        lat = lattice_or_404(name)
        out = {
            "lattice": name,
            "count": len(lat),
            "concepts": [_concept_payload(lat, k) for k in range(1, len(lat) + 1)],
        }
        layout = store.layout(name)
        if layout:
            out["layout"] = {str(k): [x, y] for k, x, y in layout}
        return out

    @app.get("/lattices/{name}/concepts/{k}")
    def one_concept(name: str, k: int):
        lat = lattice_or_404(name)
        try:
            return {"lattice": name, **_concept_payload(lat, k)}
        except IndexOutOfRange as e:
            raise HTTPException(404, str(e)) from e

    @app.post("/sessions")
    def create_session(body: SessionCreate):
        lat = lattice_or_404(body.lattice)
        sid = sessions.create(browsing.new_session(lat, Mode(body.mode)))
        s, _ = sessions.get(sid)
        return {"lattice": body.lattice, **_session_payload(sid, s)}

    @app.get("/sessions/{sid}/ranking")
    def ranking(sid: str):
        s, lock = sessions.get(sid)
        with lock:
            try:
                if s.scope is Scope.GLOBAL:
                    r = browsing.rank_similarity(s)
                else:
                    r = browsing.rank_difference(s)
            except WrongScope as e:
                raise HTTPException(409, str(e)) from e
            return {**_session_payload(sid, s), "ranking": _ranking_payload(r)}

    @app.post("/sessions/{sid}/transition")
    def do_transition(sid: str, body: TransitionBody):
        s, lock = sessions.get(sid)
        with lock:
            try:
                if body.mode is not None:
                    browsing.set_mode(s, Mode(body.mode))
                browsing.transition(s, body.target)
            except (WrongMode, NotDisplayable) as e:
                raise HTTPException(409, str(e)) from e
            except IndexOutOfRange as e:
                raise HTTPException(404, str(e)) from e
            return _session_payload(sid, s)

    @app.post("/sessions/{sid}/scope")
    def do_scope(sid: str, body: ScopeBody):
        s, lock = sessions.get(sid)
        with lock:
            try:
                browsing.set_scope(s, Scope(body.scope))
            except WrongScope as e:
                raise HTTPException(409, str(e)) from e
            return _session_payload(sid, s)

    @app.post("/lattices/{name}/query")
    def query(name: str, body: QueryBody):
        lat = lattice_or_404(name)
        try:
            if body.kind == "intensional":
                r = browsing.intensional_query(lat, body.elements)
            else:
                r = browsing.extensional_query(lat, body.elements)
            if body.threshold is not None:
                r = browsing.threshold_filter(r, _parse_fraction(body.threshold))
        except NotInContext as e:
            raise HTTPException(422, str(e)) from e
        return {"lattice": name, "kind": body.kind,
                "elements": [str(e) for e in body.elements],
                "ranking": _ranking_payload(r)}

    @app.get("/lattices/{name}/linkage")
    def linkage(name: str, mode: str = "ext"):
        lat = lattice_or_404(name)
        try:
            m = Mode(mode)
        except ValueError as e:
            raise HTTPException(422, f"mode must be ext or int, not {mode!r}") from e
        matrix = linkage_matrix(lat, m)
        return {
            "lattice": name,
            "mode": m.value,
            "dimension": matrix.dimension,
            "rows": [[str(v) for v in row] for row in matrix.values],
        }

    @app.get("/lattices/{name}/crisp")
    def crisp(name: str, threshold: str = "1"):
        lat = lattice_or_404(name)
        t = _parse_fraction(threshold)
        try:
            links = crispify(linkage_matrix(lat, Mode.EXT), t)
        except ThresholdOutOfRange as e:
            raise HTTPException(422, str(e)) from e
        return {
            "lattice": name,
            "threshold": str(t),
            "links": [
                {"source": l.source, "target": l.target, "weight": str(l.weight)}
                for l in links
            ],
        }

    @app.exception_handler(ConceptkitError)
    def data_error(_request, exc: ConceptkitError):
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    return app


def _parse_fraction(text) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as e:
        raise HTTPException(422, f"not a number: {text!r}") from e
