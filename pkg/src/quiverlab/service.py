"""HTTP session service for interactive mutation exploration.

Sessions hold a current QP plus an undo stack; operations on one session are
serialized behind a per-session lock while distinct sessions run in parallel.
Invariant-panel computations (classification, representation type) run under
a time budget; slower jobs come back as ``pending`` with a job id that is
polled via GET /jobs/{id}.
"""

from __future__ import annotations

import json
import threading
import time
import uuid
from concurrent.futures import Future, ThreadPoolExecutor
from concurrent.futures import TimeoutError as FutureTimeout
from typing import Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import jacobian, mutclass, polytree, potentials, quivers, singularity
from .errors import EmptyHistory, QuiverlabError, SessionNotFound

PANEL_BUDGET_SECONDS = 2.0


# ---------------------------------------------------------------------------
# wire models


class ArrowModel(BaseModel):
    src: str
    tgt: str
    w: int = 1


class QuiverModel(BaseModel):
    vertices: list[str]
    arrows: list[ArrowModel]


class PotentialTermModel(BaseModel):
    coeff: str
    cycle: list[str]


class QPModel(BaseModel):
    quiver: QuiverModel
    potential: list[PotentialTermModel] = Field(default_factory=list)
    trunc: Optional[int] = None


class GluingModel(BaseModel):
    host: int
    position: int


class PolygonTreeSpecModel(BaseModel):
    sizes: list[int]
    gluings: list[GluingModel] = Field(default_factory=list)


class FloriatedSpecModel(BaseModel):
    m0: int
    petals: list[tuple[int, int]] = Field(default_factory=list)


class SessionCreateRequest(BaseModel):
    qp: Optional[QPModel] = None
    spec: Optional[PolygonTreeSpecModel] = None
    floriated: Optional[FloriatedSpecModel] = None


class MutateRequest(BaseModel):
    vertex: str


class HistoryEntry(BaseModel):
    vertex: str


class PanelModel(BaseModel):
    status: str  # loaded | pending | error | not_applicable
    job: Optional[str] = None
    detail: Optional[str] = None
    polygon_tree: Optional[PolygonTreeSpecModel] = None
    simple: Optional[bool] = None
    singularity: Optional[dict] = None
    mutation_type: Optional[str] = None
    representation_type: Optional[str] = None


class SessionModel(BaseModel):
    id: str
    quiver: QuiverModel
    potential: list[PotentialTermModel]
    history: list[HistoryEntry]
    created: float
    updated: float
    panel: PanelModel
    components: Optional[list[list[str]]] = None


class JobModel(BaseModel):
    id: str
    status: str  # pending | done | error
    result: Optional[dict] = None
    detail: Optional[str] = None


class ClassifyModel(BaseModel):
    status: str
    type: Optional[str] = None
    representation_type: Optional[str] = None
    witness: Optional[list[str]] = None
    job: Optional[str] = None


# ---------------------------------------------------------------------------
# session store


class Session:
    def __init__(self, qp: potentials.QP):
        self.id = uuid.uuid4().hex[:12]
        self.initial = qp
        self.current = qp
        self.history: list[tuple[str, potentials.QP]] = []
        self.created = time.time()
        self.updated = self.created
        self.lock = threading.Lock()


class SessionStore:
    def __init__(self):
        self._sessions: dict[str, Session] = {}
        self._jobs: dict[str, Future] = {}
        self._lock = threading.Lock()
        self._executor = ThreadPoolExecutor(max_workers=4)

    def add(self, session: Session) -> None:
        with self._lock:
            self._sessions[session.id] = session

    def get(self, session_id: str) -> Session:
        with self._lock:
            if session_id not in self._sessions:
                raise SessionNotFound(session_id)
            return self._sessions[session_id]

    def submit(self, fn) -> str:
        job_id = uuid.uuid4().hex[:12]
        with self._lock:
            self._jobs[job_id] = self._executor.submit(fn)
        return job_id

    def job(self, job_id: str) -> Future:
        with self._lock:
            if job_id not in self._jobs:
                raise SessionNotFound(job_id)
            return self._jobs[job_id]

    def dump(self) -> dict:
        with self._lock:
            return {
                sid: {
                    "initial": s.initial.to_json_dict(),
                    "history": [v for v, _ in s.history],
                    "created": s.created,
                }
                for sid, s in self._sessions.items()
            }

    def load(self, data: dict) -> None:
        for sid, entry in data.items():
            qp = potentials.qp_from_json_dict(entry["initial"])
            session = Session(qp)
            session.id = sid
            session.created = entry.get("created", time.time())
            for v in entry.get("history", []):
                session.history.append((v, session.current))
                session.current = potentials.qp_mutate(session.current, v)
            self.add(session)


# ---------------------------------------------------------------------------
# panel computation


def compute_panel(qp: potentials.QP) -> PanelModel:
    """Decompose; when the quiver is a simple polygon tree, report the
    singularity descriptor, mutation type and representation type."""
    try:
        uq = qp.underlying_quiver()
        dec = polytree.decompose(uq)
    except QuiverlabError as exc:
        return PanelModel(status="not_applicable", detail=str(exc))
    spec_model = PolygonTreeSpecModel(
        sizes=list(dec.spec.sizes),
        gluings=[GluingModel(host=h, position=p) for h, p in dec.spec.gluings],
    )
    simple = polytree.is_simple(dec.spec)
    panel = PanelModel(status="loaded", polygon_tree=spec_model, simple=simple)
    if simple:
        desc = singularity.singularity_invariant(dec.spec)
        panel.singularity = desc.to_json_dict()
    try:
        rep = mutclass.representation_type(uq)
        panel.representation_type = rep.verdict
        panel.mutation_type = str(rep.tag) if rep.tag else None
    except QuiverlabError as exc:
        panel.detail = str(exc)
    return panel


def _panel_with_budget(store: SessionStore, qp: potentials.QP, budget: float) -> PanelModel:
    future: Future = store._executor.submit(compute_panel, qp)
    try:
        return future.result(timeout=budget)
    except FutureTimeout:
        job_id = uuid.uuid4().hex[:12]
        with store._lock:
            store._jobs[job_id] = future
        return PanelModel(status="pending", job=job_id)
    except QuiverlabError as exc:
        return PanelModel(status="error", detail=str(exc))


# ---------------------------------------------------------------------------
# app factory


def qp_from_model(model: QPModel) -> potentials.QP:
    data = {
        "quiver": {
            "vertices": model.quiver.vertices,
            "arrows": [a.model_dump() for a in model.quiver.arrows],
        },
        "potential": [t.model_dump() for t in model.potential],
    }
    if model.trunc is not None:
        data["trunc"] = model.trunc
    return potentials.qp_from_json_dict(data)


def qp_to_models(qp: potentials.QP) -> tuple[QuiverModel, list[PotentialTermModel]]:
    data = qp.to_json_dict()
    quiver = QuiverModel(
        vertices=data["quiver"]["vertices"],
        arrows=[ArrowModel(**a) for a in data["quiver"]["arrows"]],
    )
    terms = [PotentialTermModel(**t) for t in data["potential"]]
    return quiver, terms


def create_app(persist_path: str | None = None, panel_budget: float = PANEL_BUDGET_SECONDS) -> FastAPI:
    app = FastAPI(title="quiverlab", version="0.1.0")
    store = SessionStore()
    app.state.store = store

    if persist_path:
        try:
            with open(persist_path) as fh:
                store.load(json.load(fh))
        except FileNotFoundError:
            pass

        @app.on_event("shutdown")
        def _persist():
            with open(persist_path, "w") as fh:
                json.dump(store.dump(), fh)

    def session_model(session: Session, panel: PanelModel) -> SessionModel:
        quiver, terms = qp_to_models(session.current)
        components = None
        try:
            dec = polytree.decompose(session.current.underlying_quiver())
            components = [c.cycle for c in dec.components]
        except QuiverlabError:
            pass
        return SessionModel(
            id=session.id,
            quiver=quiver,
            potential=terms,
            history=[HistoryEntry(vertex=v) for v, _ in session.history],
            created=session.created,
            updated=session.updated,
            panel=panel,
            components=components,
        )

    def wrap_errors(fn):
        try:
            return fn()
        except SessionNotFound as exc:
            raise HTTPException(status_code=404, detail=str(exc))
        except QuiverlabError as exc:
            raise HTTPException(status_code=400, detail=str(exc))

    @app.post("/sessions", response_model=SessionModel)
    def create_session(request: SessionCreateRequest):
        def run():
            if sum(x is not None for x in (request.qp, request.spec, request.floriated)) != 1:
                raise HTTPException(
                    status_code=422, detail="provide exactly one of qp, spec, floriated"
                )
            if request.qp is not None:
                qp = qp_from_model(request.qp)
            elif request.spec is not None:
                spec = polytree.PolygonTreeSpec(
                    tuple(request.spec.sizes),
                    tuple((g.host, g.position) for g in request.spec.gluings),
                )
                qp = polytree.build_polygon_tree(spec)
            else:
                spec = polytree.FloriatedSpec(
                    request.floriated.m0, tuple(tuple(p) for p in request.floriated.petals)
                )
                qp = polytree.build_floriated(spec)
            session = Session(qp)
            store.add(session)
            panel = _panel_with_budget(store, qp, panel_budget)
            return session_model(session, panel)

        return wrap_errors(run)

    @app.get("/sessions/{session_id}", response_model=SessionModel)
    def get_session(session_id: str):
        def run():
            session = store.get(session_id)
            with session.lock:
                panel = _panel_with_budget(store, session.current, panel_budget)
                return session_model(session, panel)

        return wrap_errors(run)

    @app.post("/sessions/{session_id}/mutate", response_model=SessionModel)
    def mutate(session_id: str, request: MutateRequest):
        def run():
            session = store.get(session_id)
            with session.lock:
                new_qp = potentials.qp_mutate(session.current, request.vertex)
                session.history.append((request.vertex, session.current))
                session.current = new_qp
                session.updated = time.time()
                panel = _panel_with_budget(store, new_qp, panel_budget)
                return session_model(session, panel)

        return wrap_errors(run)

    @app.post("/sessions/{session_id}/undo", response_model=SessionModel)
    def undo(session_id: str):
        def run():
            session = store.get(session_id)
            with session.lock:
                if not session.history:
                    raise EmptyHistory("nothing to undo")
                _, prior = session.history.pop()
                session.current = prior
                session.updated = time.time()
                panel = _panel_with_budget(store, prior, panel_budget)
                return session_model(session, panel)

        return wrap_errors(run)

    @app.get("/sessions/{session_id}/classify", response_model=ClassifyModel)
    def classify(session_id: str):
        def run():
            session = store.get(session_id)
            with session.lock:
                qp = session.current

            def job():
                uq = qp.underlying_quiver()
                report = mutclass.explore_class(uq)
                result = ClassifyModel(status=report.status)
                if report.status == "infinite":
                    result.witness = list(report.witness or ())
                elif report.status == "finite":
                    result.type = str(mutclass.classify_mutation_type(uq))
                    try:
                        result.representation_type = mutclass.representation_type(uq).verdict
                    except QuiverlabError:
                        result.representation_type = None
                return result

            future = store._executor.submit(job)
            try:
                return future.result(timeout=panel_budget)
            except FutureTimeout:
                job_id = uuid.uuid4().hex[:12]
                with store._lock:
                    store._jobs[job_id] = future
                return ClassifyModel(status="pending", job=job_id)

        return wrap_errors(run)

    @app.get("/jobs/{job_id}", response_model=JobModel)
    def job_status(job_id: str):
        def run():
            future = store.job(job_id)
            if not future.done():
                return JobModel(id=job_id, status="pending")
            exc = future.exception()
            if exc is not None:
                return JobModel(id=job_id, status="error", detail=str(exc))
            result = future.result()
            if isinstance(result, BaseModel):
                result = result.model_dump()
            return JobModel(id=job_id, status="done", result=result)

        return wrap_errors(run)

    return app
