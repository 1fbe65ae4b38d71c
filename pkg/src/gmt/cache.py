"""JSON-lines ball cache.

Line 1 is a header ``{"format": "gmt-ball/1", "matrix", "genset", "radius",
"count"}``; every following line is one element record with its word length,
discovery generator and geodesic heights. Records are written in canonical
(length, k, v) order, so equal balls give identical files.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .cayley import Ball, GenSet, Record
from .errors import CorruptRecord, HeaderMismatch, VersionMismatch
from .group import GroupSpec

FORMAT = "gmt-ball/1"


def save_ball(ball: Ball, path) -> None:
    header = {
        "format": FORMAT,
        "matrix": ball.spec.matrix_text,
        "genset": ball.gens.describe(),
        "radius": ball.radius,
        "count": len(ball),
    }
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(header) + "\n")
        for g, rec in ball.canonical_items():
            row = g.to_json()
            row.update(length=rec.length, parent=rec.parent, hPlus=rec.h_plus, hMinus=rec.h_minus)
            fh.write(json.dumps(row) + "\n")


def load_ball(path, spec: GroupSpec | None = None, gens: GenSet | None = None) -> Ball:
    """Read a cached ball; ``spec``/``gens`` (when given) must match the header."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines:
        raise CorruptRecord("empty cache file", index=None)
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError:
        raise CorruptRecord("unreadable header", index=None) from None
    if header.get("format") != FORMAT:
        raise VersionMismatch(f"cache format {header.get('format')!r}, expected {FORMAT!r}")
    if spec is None:
        spec = GroupSpec.parse(header["matrix"])
    elif header["matrix"] != spec.matrix_text:
        raise HeaderMismatch(f"cache matrix {header['matrix']!r} != {spec.matrix_text!r}")
    if gens is None:
        gens = GenSet.from_words(spec, header["genset"])
    elif header["genset"] != gens.describe():
        raise HeaderMismatch(f"cache genset {header['genset']} != {gens.describe()}")
    radius = header["radius"]
    spheres = [[] for _ in range(radius + 1)]
    records = {}
    body = lines[1:]
    for idx, line in enumerate(body):
        try:
            row = json.loads(line)
            v = [Fraction(int(n), int(d)) for n, d in row["v"]]
            g = spec.element(v, int(row["k"]))
            rec = Record(int(row["length"]), int(row["parent"]), int(row["hPlus"]), int(row["hMinus"]))
            spheres[rec.length].append(g)
        except (json.JSONDecodeError, KeyError, TypeError, ValueError, IndexError, ZeroDivisionError) as exc:
            raise CorruptRecord(f"record {idx} is corrupt: {exc}", index=idx) from None
        records[g] = rec
    if len(records) != header.get("count", len(records)):
        raise CorruptRecord(
            f"expected {header['count']} records, found {len(records)}", index=len(records)
        )
    return Ball(spec, gens, radius, records, spheres)
