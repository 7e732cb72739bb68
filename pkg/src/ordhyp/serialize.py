"""JSON and CSV formats for configurations, reports and tables.

Every file written here carries a run manifest.  Apart from ``wall_time``
the output is a pure function of the command and its parameters.
"""

import csv
import io
import json
import platform
import sys
from fractions import Fraction

import numpy as np

from ._backend import BACKEND
from .projective import Configuration, ProjPoint
from .scalar import BackendMismatch, CycloElement, get_field, parse_scalar

POINTS_SCHEMA = "ordhyp.points/1"
REPORT_SCHEMA = "ordhyp.report/1"
TABLE_SCHEMA = "ordhyp.table/1"


class ParseError(ValueError):
    """An input file or argument could not be understood."""


def versions():
    from . import __version__

    return {
        "ordhyp": __version__,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "kernels": BACKEND,
    }


def make_manifest(command, parameters, seed=None, wall_time=None, schema=None):
    return {
        "command": command,
        "parameters": parameters,
        "seed": seed,
        "versions": versions(),
        "schema": schema,
        "wall_time": wall_time,
    }


def dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def fmt_fraction(f):
    f = Fraction(f)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _coord_to_json(x, modulus):
    if modulus is None:
        return fmt_fraction(x)
    el = x if isinstance(x, CycloElement) else get_field(modulus).lift(x)
    if el.field.modulus != modulus:
        raise BackendMismatch("point outside the configuration's field")
    return [fmt_fraction(c) for c in el.coeffs]


def config_to_json(cfg, manifest=None):
    kind, modulus = cfg.backend
    return {
        "schema": POINTS_SCHEMA,
        "d": cfg.dim,
        "label": cfg.label,
        "modulus": modulus,
        "points": [[_coord_to_json(x, modulus) for x in p.coords] for p in cfg.points],
        "manifest": manifest,
    }


def _parse_point(raw, modulus):
    if not isinstance(raw, list) or not raw:
        raise ParseError(f"point must be a non-empty list, got {raw!r}")
    try:
        return ProjPoint(tuple(parse_scalar(c, modulus) for c in raw))
    except (ValueError, ZeroDivisionError, TypeError, KeyError) as exc:
        raise ParseError(f"bad point {raw!r}: {exc}") from exc


def config_from_json(obj):
    try:
        d = int(obj["d"])
        modulus = obj.get("modulus")
        modulus = None if modulus is None else int(modulus)
        raw_points = obj["points"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"not a points file: {exc}") from exc
    pts = tuple(_parse_point(p, modulus) for p in raw_points)
    return Configuration(d, pts, obj.get("label", ""))


def point_from_json(obj, modulus=None):
    """A single point: ``{"point": [...], "modulus": M}`` or a one-point points file."""
    if isinstance(obj, dict) and "point" in obj:
        m = obj.get("modulus", modulus)
        return _parse_point(obj["point"], None if m is None else int(m))
    if isinstance(obj, dict) and "points" in obj:
        cfg = config_from_json(obj)
        if cfg.n != 1:
            raise ParseError("probe file must hold exactly one point")
        return cfg.points[0]
    if isinstance(obj, list):
        return _parse_point(obj, modulus)
    raise ParseError("unrecognised point file")


def point_to_json(p, manifest=None):
    mods = {x.field.modulus for x in p.coords if isinstance(x, CycloElement)}
    modulus = mods.pop() if mods else None
    return {"point": [_coord_to_json(x, modulus) for x in p.coords], "modulus": modulus, "manifest": manifest}


def load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def read_config(path):
    return config_from_json(load_json(path))


def parse_vector(text):
    """Comma-separated scalars such as ``"0,1,0,-1/2"``."""
    try:
        return tuple(Fraction(s.strip()) for s in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"cannot parse vector {text!r}: {exc}") from exc


def csv_text(header, rows, manifest):
    buf = io.StringIO()
    buf.write("# manifest: " + json.dumps(manifest, sort_keys=True) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def read_csv(text):
    """Rows of a CSV written by :func:`csv_text` (manifest line skipped)."""
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(lines))


def write_text(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)
