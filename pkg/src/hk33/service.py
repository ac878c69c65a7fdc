"""HTTP service wrapping the classification engine.

Endpoints mirror the CLI: classify one presentation document, expand or
classify family specs, build the named tables, and run the brute-force
oracle suites.  Error payloads carry a ``kind`` the thin client maps onto
exit codes: ``schema`` for malformed documents (with the field path),
``validation`` for invariant violations, ``spec`` for bad family or table
requests.
"""

from __future__ import annotations

from typing import Any

from fastapi import Body, FastAPI
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import criteria, model, oracles, tables
from .families import FamilySpecError, parse_family_spec
from .model import PresentationValidationError, SchemaError
from .verdicts import RULES

app = FastAPI(
    title="hk33",
    description=(
        "Verdict engine for genus-two handlebody-knot presentations carrying "
        "an annulus with non-parallel boundary and non-trivial boundary slope"
    ),
    version="0.1.0",
)


def _schema_error(exc: SchemaError) -> JSONResponse:
    return JSONResponse(
        status_code=400,
        content={"error": {"kind": "schema", "path": exc.path, "message": exc.message}},
    )


def _validation_error(exc: PresentationValidationError) -> JSONResponse:
    return JSONResponse(
        status_code=422,
        content={"error": {"kind": "validation", "violations": exc.violations}},
    )


def _spec_error(message: str) -> JSONResponse:
    return JSONResponse(
        status_code=400,
        content={"error": {"kind": "spec", "message": message}},
    )


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.get("/rules")
def rules() -> dict:
    return {"rules": RULES}


@app.post("/classify")
def classify_endpoint(document: dict[str, Any] = Body(...)):
    try:
        pres = model.presentation_from_payload(document)
    except SchemaError as exc:
        return _schema_error(exc)
    except PresentationValidationError as exc:
        return _validation_error(exc)
    report = criteria.classify(pres)
    return model.report_payload(report)


class FamilyRequest(BaseModel):
    spec: str = Field(description="Family spec, e.g. T:3,3 or T:mu=3..15:2,nu=3..15:2,filter=PT")
    classify: bool = False


@app.post("/family")
def family_endpoint(request: FamilyRequest):
    try:
        instances = parse_family_spec(request.spec)
    except FamilySpecError as exc:
        return _spec_error(str(exc))
    instances.sort(key=lambda inst: inst.label)
    if request.classify:
        reports = [tables.classify_instance(inst) for inst in instances]
        return {"reports": [model.report_payload(r) for r in reports]}
    return {
        "presentations": [
            model.presentation_payload(inst.presentation) for inst in instances
        ]
    }


class TableRequest(BaseModel):
    name: str
    start: int
    stop: int
    step: int = 1


@app.post("/table")
def table_endpoint(request: TableRequest):
    try:
        return tables.build_table(request.name, request.start, request.stop, request.step)
    except FamilySpecError as exc:
        return _spec_error(str(exc))


class OracleRequest(BaseModel):
    suite: str
    maxlen: int = 8
    cases: int = 1000
    seed: int = 0


@app.post("/oracle")
def oracle_endpoint(request: OracleRequest):
    try:
        result = oracles.run_suite(
            request.suite, maxlen=request.maxlen, cases=request.cases, seed=request.seed
        )
    except KeyError as exc:
        return _spec_error(str(exc.args[0]))
    return {
        "suite": result.suite,
        "passed": result.passed,
        "checked": result.checked,
        "counterexample": result.counterexample,
        "params": result.params,
        "summary": result.summary(),
    }
