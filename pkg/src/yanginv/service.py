"""FastAPI service wrapping the verification core.

Endpoints:
  GET  /health      liveness probe
  GET  /version     artifact version and report schema version
  POST /jobs/run    run one job description, return the full report
  POST /jobs/render run a job and return the canonical report text
"""

from __future__ import annotations

import logging
import os
from typing import Union

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from . import __version__
from .jobs import (
    SCHEMA_VERSION,
    BetheReconstructJob,
    FullSuiteJob,
    FunctionalRelationsJob,
    LatticeZJob,
    Report,
    VerifyInvariantJob,
    canonical_report_text,
    run_job,
)

JobBody = Union[
    VerifyInvariantJob,
    BetheReconstructJob,
    LatticeZJob,
    FunctionalRelationsJob,
    FullSuiteJob,
]

logging.basicConfig(
    level=os.environ.get("YANGINV_LOG", "WARNING").upper(),
    format="%(levelname)s %(name)s: %(message)s",
)
logger = logging.getLogger("yanginv.service")

app = FastAPI(
    title="yanginv",
    version=__version__,
    description="Exact verification of gl(n) Yangian invariants",
)


class HealthResponse(BaseModel):
    status: str


class VersionResponse(BaseModel):
    version: str
    schema_version: int


class RenderedReport(BaseModel):
    passed: bool
    text: str


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok")


@app.get("/version", response_model=VersionResponse)
def version() -> VersionResponse:
    return VersionResponse(version=__version__, schema_version=SCHEMA_VERSION)


@app.post("/jobs/run", response_model=Report)
def jobs_run(job: JobBody) -> Report:
    logger.info("running %s job", job.kind)
    try:
        return run_job(job)
    except Exception as exc:  # surface domain errors verbatim
        raise HTTPException(status_code=422, detail=str(exc)) from exc


@app.post("/jobs/render", response_model=RenderedReport)
def jobs_render(job: JobBody) -> RenderedReport:
    report = jobs_run(job)
    return RenderedReport(
        passed=report.passed,
        text=canonical_report_text(report, include_timing=False),
    )
