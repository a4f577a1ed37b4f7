"""HTTP service exposing the library: every CLI subcommand maps to one endpoint.

Requests carry whole JSON documents (shift definitions, pseudo-orbits,
window sets) rather than server-side paths, so the service is stateless and
the CLI stays a thin client.  Mathematical outcomes, including negative
certificates and construction refutations, are 200 responses; HTTP errors
are reserved for malformed inputs and exceeded budgets.
"""

from __future__ import annotations

from typing import Literal

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import interval_map, zoo
from .core import PseudoOrbitViolation
from .formats import pseudo_orbit_from_json, presentation_from_definition, windows_from_json
from .mixing import (
    find_nonmixing_witness,
    primitivity_exponent,
    qft_number_search,
    verify_mixing_number,
    verify_qft_number,
)
from .scenarios import SCENARIOS, run_scenario
from .shadowing import (
    BridgeNotFoundError,
    BudgetExceededError,
    construct_pair_mixing,
    construct_pair_mixing_forward,
    construct_pair_qft,
    construct_pair_schedule,
    search_shadow_sets,
    verify_shadow_set,
)

app = FastAPI(
    title="shiftshadow",
    description="Subshift language queries, mixing and quasi-finite-type "
                "certificates, and shadow-set constructions.",
    version="0.1.0",
)


class ShiftDefinition(BaseModel):
    alphabet: list[str]
    kind: Literal["sft", "sofic"]
    forbidden: list[str] | None = None
    vertices: list[str] | None = None
    edges: list[list[str]] | None = None


class PseudoOrbitDoc(BaseModel):
    alphabet: list[str]
    delta_exponent: int
    radius: int
    base_index: int = 0
    sided: Literal["two", "forward"] = "two"
    entries: list[list[str] | str]


class WindowDoc(BaseModel):
    base: int
    symbols: list[str] | str


class CheckRequest(BaseModel):
    definition: ShiftDefinition
    word: str | list[str]


class WordsRequest(BaseModel):
    definition: ShiftDefinition
    n: int = Field(ge=0)


class ExponentRequest(BaseModel):
    definition: ShiftDefinition


class MixingVerifyRequest(BaseModel):
    definition: ShiftDefinition
    m: int = Field(ge=1)
    length_bound: int = Field(default=6, ge=1)
    n_max: int | None = None


class WitnessRequest(BaseModel):
    definition: ShiftDefinition
    length_bound: int = Field(default=3, ge=1)


class QftSearchRequest(BaseModel):
    definition: ShiftDefinition
    length_bound: int = Field(default=6, ge=1)
    n_max: int | None = None
    m_max: int = Field(default=8, ge=1)


class ShadowConstructRequest(BaseModel):
    definition: ShiftDefinition
    pseudo_orbit: PseudoOrbitDoc
    method: Literal["mixing", "mixing-forward", "qft", "schedule"]
    epsilon_exponent: int = Field(ge=0)
    number: int | None = None
    verify: bool = True


class ShadowVerifyRequest(BaseModel):
    definition: ShiftDefinition
    pseudo_orbit: PseudoOrbitDoc
    members: list[WindowDoc]
    epsilon_exponent: int = Field(ge=0)
    check_diameter: bool = True
    size_bound: int | None = None
    include_table: bool = True


class ShadowSearchRequest(BaseModel):
    definition: ShiftDefinition
    pseudo_orbit: PseudoOrbitDoc
    set_size: int = Field(ge=1)
    epsilon_exponent: int = Field(ge=0)
    half_width: int = Field(ge=0)
    check_diameter: bool = True
    budget: int = Field(default=10**6, ge=1)


class IntervalDemoRequest(BaseModel):
    delta: float = Field(gt=0, lt=1)
    epsilon: float = 0.25
    invariance_grid: float = 1e-4
    search_grid: float = 1e-3


class ReproRequest(BaseModel):
    scenario: str
    seed: int = 0
    budget: int = Field(default=10**6, ge=1)


def _load_presentation(defn: ShiftDefinition):
    try:
        return presentation_from_definition(defn.model_dump(exclude_none=True))
    except ValueError as exc:
        raise HTTPException(status_code=422, detail={"error": type(exc).__name__,
                                                     "message": str(exc)})


def _load_orbit(X, doc: PseudoOrbitDoc):
    try:
        return pseudo_orbit_from_json(X, doc.model_dump())
    except PseudoOrbitViolation as exc:
        raise HTTPException(status_code=422, detail={"error": "PseudoOrbitViolation",
                                                     "report": exc.report})
    except ValueError as exc:
        raise HTTPException(status_code=422, detail={"error": type(exc).__name__,
                                                     "message": str(exc)})


@app.get("/healthz")
def healthz():
    return {"status": "ok"}


@app.get("/defs")
def list_definitions():
    return {"definitions": zoo.builder_names()}


@app.get("/defs/{name}")
def get_definition(name: str):
    try:
        return zoo.bundled_definition(name)
    except ValueError as exc:
        raise HTTPException(status_code=404, detail=str(exc))


@app.post("/shift/check")
def shift_check(req: CheckRequest):
    X = _load_presentation(req.definition)
    try:
        word = X.word(req.word)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    return {"word": word.text, "allowed": X.is_allowed(word)}


@app.post("/shift/words")
def shift_words(req: WordsRequest):
    X = _load_presentation(req.definition)
    words = X.words_of_length(req.n)
    return {"n": req.n, "count": len(words), "words": [w.text for w in words]}


@app.post("/mixing/exponent")
def mixing_exponent(req: ExponentRequest):
    X = _load_presentation(req.definition)
    e = primitivity_exponent(X)
    return {"exponent": e,
            "is_mixing_number": e is not None,
            "note": None if e is not None else
            "graph is not primitive; no exponent within the Wielandt bound"}


@app.post("/mixing/verify")
def mixing_verify(req: MixingVerifyRequest):
    X = _load_presentation(req.definition)
    try:
        cert = verify_mixing_number(X, req.m, length_bound=req.length_bound,
                                    n_max=req.n_max)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    return cert.to_json()


@app.post("/mixing/witness")
def mixing_witness(req: WitnessRequest):
    X = _load_presentation(req.definition)
    witness = find_nonmixing_witness(X, req.length_bound)
    return {"witness": None if witness is None else witness.to_json(),
            "length_bound": req.length_bound}


@app.post("/qft/verify")
def qft_verify(req: MixingVerifyRequest):
    X = _load_presentation(req.definition)
    try:
        cert = verify_qft_number(X, req.m, length_bound=req.length_bound,
                                 n_max=req.n_max)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    return cert.to_json()


@app.post("/qft/search")
def qft_search(req: QftSearchRequest):
    X = _load_presentation(req.definition)
    m, cert = qft_number_search(X, length_bound=req.length_bound,
                                n_max=req.n_max, m_max=req.m_max)
    return {"m": m, "certificate": None if cert is None else cert.to_json(),
            "scope": "bounded estimate, not a minimality proof"}


_CONSTRUCTORS = {
    "mixing": construct_pair_mixing,
    "mixing-forward": construct_pair_mixing_forward,
    "qft": construct_pair_qft,
    "schedule": construct_pair_schedule,
}


@app.post("/shadow/construct")
def shadow_construct(req: ShadowConstructRequest):
    X = _load_presentation(req.definition)
    po = _load_orbit(X, req.pseudo_orbit)
    number = req.number
    if number is None:
        number = primitivity_exponent(X)
        if number is None:
            raise HTTPException(
                status_code=422,
                detail="presentation has no primitivity exponent; pass an explicit number")
    build = _CONSTRUCTORS[req.method]
    try:
        pair = build(X, number, po, req.epsilon_exponent)
    except BridgeNotFoundError as exc:
        return {"constructed": False, "refutation": exc.refutation,
                "number": number, "method": req.method}
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    out = {"constructed": True, "method": req.method, "number": number,
           "pair": pair.to_json()}
    if req.verify:
        cert = verify_shadow_set(X, po, pair.points, req.epsilon_exponent,
                                 size_bound=2, include_table=False)
        out["certificate"] = cert.to_json()
    return out


@app.post("/shadow/verify")
def shadow_verify(req: ShadowVerifyRequest):
    X = _load_presentation(req.definition)
    po = _load_orbit(X, req.pseudo_orbit)
    try:
        members = windows_from_json(X.alphabet, [m.model_dump() for m in req.members])
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    cert = verify_shadow_set(X, po, members, req.epsilon_exponent,
                             check_diameter=req.check_diameter,
                             size_bound=req.size_bound,
                             include_table=req.include_table)
    return cert.to_json()


@app.post("/shadow/search")
def shadow_search(req: ShadowSearchRequest):
    X = _load_presentation(req.definition)
    po = _load_orbit(X, req.pseudo_orbit)
    try:
        result = search_shadow_sets(X, po, req.set_size, req.epsilon_exponent,
                                    req.half_width,
                                    check_diameter=req.check_diameter,
                                    budget=req.budget)
    except BudgetExceededError as exc:
        raise HTTPException(status_code=400, detail={"error": "budget_exceeded",
                                                     "message": str(exc)})
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    return result.to_json()


@app.post("/interval/demo")
def interval_demo(req: IntervalDemoRequest):
    try:
        orbit = interval_map.ascending_pseudo_orbit(req.delta)
        cert = interval_map.neighborhood_failure_certificate(req.epsilon,
                                                             req.invariance_grid)
        pair = interval_map.grid_shadow_search(orbit, req.epsilon, req.search_grid,
                                               set_size=2)
        single = interval_map.grid_shadow_search(orbit, req.epsilon, req.search_grid,
                                                 set_size=1)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    return {"pseudo_orbit": orbit, "failure_certificate": cert,
            "pair_search": pair, "single_search": single}


@app.post("/repro")
def repro(req: ReproRequest):
    if req.scenario not in SCENARIOS:
        raise HTTPException(status_code=422,
                            detail=f"unknown scenario {req.scenario!r}; "
                                   f"choose from {sorted(SCENARIOS)}")
    try:
        return run_scenario(req.scenario, seed=req.seed, budget=req.budget)
    except BudgetExceededError as exc:
        raise HTTPException(status_code=400, detail={"error": "budget_exceeded",
                                                     "message": str(exc)})


@app.get("/scenarios")
def scenarios():
    return {"scenarios": sorted(SCENARIOS)}
