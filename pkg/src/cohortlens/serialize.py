"""JSON payload shapes shared by the CLI exports and the HTTP API, so the
two surfaces can never disagree on structure or precision."""
from __future__ import annotations


def point_payload(p) -> dict:
    return {"year": p.year, "value": p.value, "group": p.group, "metric": p.metric}


def series_payload(points, warnings) -> dict:
    return {"points": [point_payload(p) for p in points], "warnings": list(warnings)}


def gap_payload(rows, warnings=()) -> dict:
    return {
        "rows": [
            {
                "gender": r.cell.gender,
                "race": r.cell.race,
                "program_share": r.program_share,
                "university_share": r.university_share,
                "gap": r.gap,
            }
            for r in rows
        ],
        "warnings": list(warnings),
    }


def distances_payload(rows, skipped) -> dict:
    return {
        "rows": [{"institution": r.institution_id, "distance": r.distance} for r in rows],
        "warnings": list(skipped),
    }


def comparison_payload(rows, warnings=()) -> dict:
    return {
        "rows": [
            {
                "institution": r.institution_id,
                "metric": r.metric_label,
                "value": r.value,
                "note": r.note,
            }
            for r in rows
        ],
        "warnings": list(warnings),
    }


def scalar_payload(value, group, metric, warnings=()) -> dict:
    return {"value": value, "group": group, "metric": metric, "warnings": list(warnings)}
