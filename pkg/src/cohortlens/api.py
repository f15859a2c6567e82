"""Read-only HTTP JSON API over one dataset snapshot.

Query parameters are named after the CLI flags; bodies mirror the CLI's
JSON exports plus the dataset manifest digest so clients can detect
snapshot changes.  4xx mapping: unknown labels/parameters 400, unknown
institutions 404, empty selections (zero_population / empty_cohort) 422.
"""
from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import analysis, serialize
from .errors import (
    CohortLensError,
    EmptyCohort,
    EmptyRange,
    MalformedRow,
    UnknownGroup,
    UnknownInstitution,
    ZeroPopulation,
)
from .scheme import resolve_group
from .store import Dataset

STATUS_BY_ERROR = {
    UnknownGroup: 400,
    MalformedRow: 400,
    EmptyRange: 400,
    UnknownInstitution: 404,
    ZeroPopulation: 422,
    EmptyCohort: 422,
}


def _parse_years(text: str):
    if "-" in text:
        a, b = text.split("-", 1)
        return list(range(int(a), int(b) + 1))
    return [int(text)]


def _split(text):
    return [s.strip() for s in text.split(",") if s.strip()] if text else None


def create_app(dataset: Dataset | str, cors_origin: str | None = None) -> FastAPI:
    if not isinstance(dataset, Dataset):
        dataset = Dataset(dataset)
    ds = dataset
    app = FastAPI(title="cohortlens API")

    if cors_origin:
        from fastapi.middleware.cors import CORSMiddleware

        app.add_middleware(
            CORSMiddleware, allow_origins=[cors_origin], allow_methods=["GET"],
            allow_headers=["*"],
        )

    @app.exception_handler(CohortLensError)
    async def _domain_error(request: Request, exc: CohortLensError):
        status = 500
        for etype, code in STATUS_BY_ERROR.items():
            if isinstance(exc, etype):
                status = code
                break
        return JSONResponse(
            status_code=status,
            content={"error": exc.name, "message": str(exc),
                     "parameter": request.url.query},
        )

    @app.exception_handler(ValueError)
    async def _value_error(request: Request, exc: ValueError):
        return JSONResponse(
            status_code=400,
            content={"error": "bad_parameter", "message": str(exc),
                     "parameter": request.url.query},
        )

    def wrap(payload: dict) -> dict:
        payload["dataset_digest"] = ds.digest
        return payload

    @app.get("/api/institutions")
    def institutions():
        return wrap({
            "institutions": [
                {
                    "id": inst,
                    "name": ds.names.get(inst),
                    "years": [ds.years(inst)[0], ds.years(inst)[-1]],
                }
                for inst in ds.institutions()
            ],
            "warnings": [],
        })

    @app.get("/api/scheme")
    def scheme():
        return wrap({
            "genders": list(ds.scheme.gender_axis),
            "races": list(ds.scheme.race_axis),
            "cells": [{"gender": c.gender, "race": c.race} for c in ds.scheme.cells()],
            "warnings": [],
        })

    def scalar(metric, group, institution, year, scope, award_level):
        g = resolve_group(group, ds.scheme)
        insts = _split(institution)
        if insts is not None:
            ds.check_institutions(insts)
        field_table = ds.table(insts, [year], scope, award_level)
        if metric == "standard":
            value = analysis.standard_share(field_table, g)
        else:
            all_table = ds.table(insts, [year], "all", award_level)
            value = analysis.cohort_share(field_table, all_table, g)
        return wrap(serialize.scalar_payload(value, g.describe(), metric))

    @app.get("/api/standard")
    def standard(group: str, year: int, institution: str | None = None,
                 scope: str = "cip11", award_level: str = "Bachelors"):
        return scalar("standard", group, institution, year, scope, award_level)

    @app.get("/api/cohort")
    def cohort(group: str, year: int, institution: str | None = None,
               scope: str = "cip11", award_level: str = "Bachelors"):
        return scalar("cohort", group, institution, year, scope, award_level)

    @app.get("/api/series")
    def series(metric: str, group: str, years: str, institution: str | None = None,
               scope: str = "cip11", award_level: str = "Bachelors"):
        points, warnings = analysis.series(
            ds, metric, group, _parse_years(years), _split(institution), scope, award_level
        )
        return wrap(serialize.series_payload(points, warnings))

    @app.get("/api/gap")
    def gap(year: int, institution: str | None = None, scope: str = "cip11",
            award_level: str = "Bachelors"):
        insts = _split(institution)
        if insts is not None:
            ds.check_institutions(insts)
        program = ds.table(insts, [year], scope, award_level)
        university = ds.table(insts, [year], "all", award_level)
        rows = analysis.opportunity_gap(program, university)
        return wrap(serialize.gap_payload(rows))

    @app.get("/api/evenness")
    def evenness(institution: str, axis: str, years: str, scope: str = "cip11",
                 award_level: str = "Bachelors"):
        if axis not in ("gender", "race", "intersectional"):
            raise UnknownGroup(f"unknown axis: {axis}")
        points, warnings = analysis.evenness_series(
            ds, institution, axis, _parse_years(years), scope, award_level
        )
        return wrap(serialize.series_payload(points, warnings))

    @app.get("/api/jsdistance")
    def jsdistance(institutions: str, year: int, scope: str = "cip11",
                   reference_scope: str = "all", award_level: str = "Bachelors"):
        rows, skipped = analysis.js_distance_report(
            ds, _split(institutions), year, scope, reference_scope, award_level
        )
        return wrap(serialize.distances_payload(rows, skipped))

    @app.get("/api/compare")
    def compare(institutions: str, year: int, metrics: str, scope: str = "cip11",
                award_level: str = "Bachelors"):
        specs = []
        for part in metrics.split(";"):
            part = part.strip()
            if not part:
                continue
            if ":" not in part:
                raise MalformedRow(f"metric spec needs 'standard:GROUP' form: {part!r}")
            m, g = part.split(":", 1)
            if m not in ("standard", "cohort"):
                raise MalformedRow(f"unknown comparison metric: {m!r}")
            specs.append((m, g.strip()))
        rows = analysis.compare_institutions(
            ds, _split(institutions), year, specs, scope, award_level
        )
        return wrap(serialize.comparison_payload(rows))

    return app


def serve(dataset_dir, host="127.0.0.1", port=8000, cors_origin=None):
    import uvicorn

    app = create_app(Dataset(dataset_dir), cors_origin=cors_origin)
    uvicorn.run(app, host=host, port=port)
