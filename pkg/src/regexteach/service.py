"""HTTP session service for interactive teaching.

A session fixes a rule space and learner/teacher parameters; the client
appends labeled examples one at a time and reads back live weak-sampling
and pedagogical posteriors, plus teacher-style suggestions for the next
example.  Posteriors are recomputed from the full corpus on every update,
so replaying the same ordered examples into a fresh session reproduces the
same numbers bit for bit.
"""

import json
import math
import secrets
import threading
import time
from dataclasses import dataclass, field

from fastapi import FastAPI, Query
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, Response
from pydantic import BaseModel, Field

from . import analysis
from .corpus import (
    Corpus,
    LabeledExample,
    RuleSpace,
    builtin_rule_spaces,
    bundled_dataset,
    resolve_rule,
    default_alphabet,
)
from .errors import (
    InvalidParams,
    InvalidString,
    NoTargetDeclared,
    RegexTeachError,
    UnknownRule,
    UnknownSession,
    ValidationError,
)
from .learners import (
    LearnerParams,
    TeacherParams,
    error_count,
    l0_posterior,
    l1_posterior,
    log_prior,
    teacher_prior_log_score,
)
from .regex import (
    Alphabet,
    PatternSyntaxError,
    RegexAst,
    chars_of,
    enumerate_strings,
    matches,
    parse,
    serialize,
)

MAX_EXAMPLE_LEN = 64
CLUSTER_THRESHOLD = 2


@dataclass(frozen=True)
class ServiceConfig:
    alpha: float = 2.0
    beta: float = 1.0
    eta: float = 0.0
    idle_timeout: float = 24 * 3600.0
    persist_path: str | None = None
    suggest_max_len: int = 4
    suggest_default_n: int = 5
    cors_origins: tuple = ("*",)
    use_bundled_pool: bool = True


@dataclass
class Session:
    id: str
    space: RuleSpace
    rule_id: str
    alpha: float
    learner: LearnerParams
    target: RegexAst | None
    base_pool: tuple
    created_at: float
    updated_at: float
    examples: list = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)

    def corpus(self) -> Corpus | None:
        if not self.examples:
            return None
        return Corpus(self.rule_id, self.id, tuple(self.examples), source="session")


class SessionStore:
    def __init__(self, config: ServiceConfig):
        self.config = config
        self._sessions: dict = {}
        self._lock = threading.Lock()
        self._now = time.time

    def create(self, session: Session) -> None:
        with self._lock:
            self._expire_idle()
            self._sessions[session.id] = session

    def get(self, session_id: str) -> Session:
        with self._lock:
            session = self._sessions.get(session_id)
            if session is not None and self._idle_for(session) > self.config.idle_timeout:
                del self._sessions[session_id]
                session = None
            if session is None:
                raise UnknownSession(f"no session {session_id!r}")
            return session

    def delete(self, session_id: str) -> None:
        with self._lock:
            if session_id not in self._sessions:
                raise UnknownSession(f"no session {session_id!r}")
            del self._sessions[session_id]

    def _idle_for(self, session: Session) -> float:
        return self._now() - session.updated_at

    def _expire_idle(self) -> None:
        stale = [
            sid
            for sid, s in self._sessions.items()
            if self._idle_for(s) > self.config.idle_timeout
        ]
        for sid in stale:
            del self._sessions[sid]


class CustomSpace(BaseModel):
    name: str = "custom"
    target: str
    distractors: list


class CreateSessionRequest(BaseModel):
    rule_id: str | None = None
    custom_space: CustomSpace | None = None
    alpha: float | None = None
    beta: float | None = None
    eta: float | None = None
    target: str | None = None


class AddExampleRequest(BaseModel):
    text: str
    label: str = Field(pattern="^(pos|neg)$")


def session_posteriors(session: Session):
    """(l0 probs, l1 probs, fallback) for the corpus so far; priors when empty."""
    corpus = session.corpus()
    if corpus is None:
        priors = tuple(math.exp(lp) for lp in log_prior(session.space))
        return priors, priors, False
    l0 = l0_posterior(session.space, corpus, session.learner)
    tp = TeacherParams(
        alpha=session.alpha,
        pool=session.base_pool or (corpus,),
        learner=session.learner,
    ).with_corpus(corpus)
    l1 = l1_posterior(session.space, corpus, tp)
    return l0.probs, l1.probs, l1.fallback


def suggestion_alphabet(session: Session) -> Alphabet:
    """Candidate alphabet: the declared target's own characters.

    Falls back to the space/data alphabet when the target names none
    (e.g. a pure-wildcard pattern).
    """
    assert session.target is not None
    chars = sorted(chars_of(session.target.root))
    if chars:
        return Alphabet.from_chars(chars)
    return default_alphabet(session.base_pool, session.space.hypotheses)


def rank_suggestions(session: Session, n: int, max_len: int) -> list:
    """Top-n (text, label, score) extensions by the teacher weight.

    Score of appending example e is [prior(c+e) * P_L0(target | c+e)]^alpha;
    zero-scoring candidates (label inconsistent with the target under
    eta = 0) are dropped.  Deterministic: ties break on shorter text, then
    text, then positive label first.
    """
    if session.target is None:
        raise NoTargetDeclared("declare a target at session creation to get suggestions")
    if n <= 0:
        return []
    target_index = session.space.index_of(session.target)
    base = [(e.text, e.label) for e in session.examples]
    scored = []
    for text in enumerate_strings(suggestion_alphabet(session), max_len):
        for label in ("pos", "neg"):
            candidate = Corpus.from_pairs(
                session.rule_id, "candidate", base + [(text, label)], source="session"
            )
            prior = teacher_prior_log_score(
                candidate, session.target, session.learner.eta
            )
            if prior == float("-inf"):
                continue
            informativity = l0_posterior(
                session.space, candidate, session.learner
            ).log_probs[target_index]
            score = math.exp(session.alpha * (prior + informativity))
            scored.append((text, label, score))
    scored.sort(key=lambda t: (-t[2], len(t[0]), t[0], t[1] != "pos"))
    return scored[:n]


def create_app(config: ServiceConfig = ServiceConfig()) -> FastAPI:
    app = FastAPI(title="regexteach", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(config.cors_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = SessionStore(config)
    app.state.store = store
    spaces = builtin_rule_spaces()
    pool_dataset = bundled_dataset() if config.use_bundled_pool else None

    def base_pool_for(space: RuleSpace, rule_id: str) -> tuple:
        if pool_dataset is None or rule_id not in spaces:
            return ()
        members = []
        seen = set()
        for c in pool_dataset.corpora:
            sp, _ = resolve_rule(c.rule_id, pool_dataset.rule_spaces)
            if sp.name == space.name and c.signature() not in seen:
                seen.add(c.signature())
                members.append(c)
        return tuple(members)

    @app.exception_handler(RegexTeachError)
    def handle_package_error(request, exc: RegexTeachError):
        status = 404 if isinstance(exc, UnknownSession) else 400
        return JSONResponse(
            status_code=status,
            content={"error": type(exc).__name__, "message": str(exc)},
        )

    @app.exception_handler(PatternSyntaxError)
    def handle_syntax_error(request, exc: PatternSyntaxError):
        return JSONResponse(
            status_code=400,
            content={
                "error": "PatternSyntaxError",
                "message": str(exc),
                "offset": exc.offset,
            },
        )

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.post("/sessions", status_code=201)
    def create_session(req: CreateSessionRequest):
        if (req.rule_id is None) == (req.custom_space is None):
            raise InvalidParams("provide exactly one of rule_id or custom_space")
        if req.rule_id is not None:
            if req.rule_id not in spaces:
                raise UnknownRule(req.rule_id)
            space = spaces[req.rule_id]
            rule_id = req.rule_id
        else:
            cs = req.custom_space
            try:
                space = RuleSpace(
                    cs.name, parse(cs.target), tuple(parse(d) for d in cs.distractors)
                )
            except ValidationError as exc:
                raise InvalidParams(str(exc)) from exc
            rule_id = cs.name
        try:
            learner = LearnerParams(
                beta=config.beta if req.beta is None else req.beta,
                eta=config.eta if req.eta is None else req.eta,
            )
            alpha = config.alpha if req.alpha is None else req.alpha
            if alpha < 1:
                raise ValidationError("alpha must be >= 1")
        except ValidationError as exc:
            raise InvalidParams(str(exc)) from exc
        target = None
        if req.target is not None:
            target = parse(req.target)
            try:
                space.index_of(target)
            except ValueError as exc:
                raise InvalidParams(str(exc)) from exc
        now = time.time()
        session = Session(
            id=secrets.token_urlsafe(16),
            space=space,
            rule_id=rule_id,
            alpha=alpha,
            learner=learner,
            target=target,
            base_pool=base_pool_for(space, rule_id),
            created_at=now,
            updated_at=now,
        )
        store.create(session)
        return {
            "session_id": session.id,
            "rule_id": rule_id,
            "hypotheses": list(space.patterns),
            "priors": [math.exp(lp) for lp in log_prior(space)],
            "params": {"alpha": alpha, "beta": learner.beta, "eta": learner.eta},
            "target": serialize(target) if target is not None else None,
        }

    @app.post("/sessions/{session_id}/examples")
    def add_example(session_id: str, req: AddExampleRequest):
        session = store.get(session_id)
        if len(req.text) > MAX_EXAMPLE_LEN:
            raise InvalidString(f"text longer than {MAX_EXAMPLE_LEN} characters")
        try:
            with session.lock:
                example = LabeledExample(req.text, req.label, len(session.examples))
                session.examples.append(example)
                session.updated_at = time.time()
                l0, l1, fallback = session_posteriors(session)
                _persist(config, session)
        except ValidationError as exc:
            raise InvalidString(str(exc)) from exc
        return {
            "l0": list(l0),
            "l1": list(l1),
            "fallback": fallback,
            "example": _example_payload(session, example),
        }

    @app.get("/sessions/{session_id}")
    def get_state(session_id: str):
        session = store.get(session_id)
        with session.lock:
            l0, l1, fallback = session_posteriors(session)
            corpus = session.corpus()
            q_counts = [
                error_count(corpus, h) if corpus else 0
                for h in session.space.hypotheses
            ]
            clusters = (
                [list(members) for members in
                 analysis.cluster_corpus(corpus, CLUSTER_THRESHOLD).clusters]
                if corpus
                else []
            )
            return {
                "session_id": session.id,
                "rule_id": session.rule_id,
                "hypotheses": list(session.space.patterns),
                "priors": [math.exp(lp) for lp in log_prior(session.space)],
                "params": {
                    "alpha": session.alpha,
                    "beta": session.learner.beta,
                    "eta": session.learner.eta,
                },
                "target": serialize(session.target) if session.target else None,
                "examples": [
                    _example_payload(session, e) for e in session.examples
                ],
                "l0": list(l0),
                "l1": list(l1),
                "fallback": fallback,
                "q_counts": q_counts,
                "clusters": clusters,
                "created_at": session.created_at,
                "updated_at": session.updated_at,
            }

    @app.get("/sessions/{session_id}/suggest")
    def suggest(session_id: str, n: int = Query(default=config.suggest_default_n, ge=0)):
        session = store.get(session_id)
        with session.lock:
            ranked = rank_suggestions(session, n, config.suggest_max_len)
        return {
            "suggestions": [
                {"text": text, "label": label, "score": score}
                for text, label, score in ranked
            ]
        }

    @app.delete("/sessions/{session_id}", status_code=204)
    def delete_session(session_id: str):
        store.delete(session_id)
        return Response(status_code=204)

    return app


def _example_payload(session: Session, example: LabeledExample) -> dict:
    consistent = None
    if session.target is not None:
        consistent = matches(session.target, example.text) == example.is_positive
    return {
        "text": example.text,
        "label": example.label,
        "position": example.position,
        "consistent_with_target": consistent,
    }


def _persist(config: ServiceConfig, session: Session) -> None:
    """Append a corpus-so-far snapshot, one line per accepted example."""
    if config.persist_path is None:
        return
    corpus = session.corpus()
    record = {
        "rule_id": corpus.rule_id,
        "teacher_id": corpus.teacher_id,
        "source": "session",
        "examples": [{"text": e.text, "label": e.label} for e in corpus.examples],
    }
    with open(config.persist_path, "a", encoding="utf-8") as fh:
        fh.write(json.dumps(record) + "\n")
