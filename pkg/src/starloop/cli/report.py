"""Structured reports serialized as JSON with 17 significant digits."""

import json
import math

SCHEMA = "starloop.report/1"


def _num(x):
    if math.isnan(x) or math.isinf(x):
        return json.dumps(repr(x))
    return format(x, ".17g")


def _dump(obj, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _num(obj)
    if isinstance(obj, complex):
        return _dump({"re": obj.real, "im": obj.imag}, indent, level)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_dump(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{pad}{_dump(v, indent, level + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if hasattr(obj, "item"):
        return _dump(obj.item(), indent, level)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent=2):
    return _dump(obj, indent, 0) + "\n"


def _revive(d):
    if set(d) == {"re", "im"}:
        return complex(d["re"], d["im"])
    return d


def loads(text):
    return json.loads(text, object_hook=_revive)


def check(name, value, reference, residual, tolerance, provenance, passed=None, note=None):
    """One check record; passes when residual <= tolerance unless given."""
    if passed is None:
        passed = bool(residual is not None and residual <= tolerance)
    rec = {
        "name": name,
        "value": value,
        "reference": reference,
        "provenance": provenance,
        "residual": residual,
        "tolerance": tolerance,
        "passed": bool(passed),
    }
    if note:
        rec["note"] = note
    return rec


def failed_check(name, exc):
    return {
        "name": name, "value": None, "reference": None, "provenance": "error",
        "residual": None, "tolerance": None, "passed": False,
        "note": f"{type(exc).__name__}: {exc}",
    }


def make_report(command, config, checks, diagnostics, wall_seconds):
    return {
        "schema": SCHEMA,
        "command": command,
        "config": config,
        "checks": checks,
        "diagnostics": diagnostics,
        "passed": all(c["passed"] for c in checks),
        "timing": {"wall_seconds": wall_seconds},
    }


def without_timing(report):
    """Copy of a report with all timing fields removed (for determinism checks)."""
    return {k: v for k, v in report.items() if k != "timing"}
