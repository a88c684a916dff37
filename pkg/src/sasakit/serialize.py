"""JSON interchange for diagrams and reports.

Rationals travel as strings ("-1/2") so nothing is ever rounded; floats are
rendered to 12 significant digits, which keeps byte-identical output for
identical runs.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .cones import ToricDiagram, validate_diagram
from .cy import CalabiYauData

FLOAT_FORMAT = "%.12g"
PRECISION = 12


def format_float(x: float) -> str:
    return FLOAT_FORMAT % float(x)


def fraction_to_str(q: Fraction) -> str:
    return str(Fraction(q))


def fraction_from_str(s: str) -> Fraction:
    return Fraction(str(s).replace(" ", ""))


def diagram_to_dict(diagram: ToricDiagram, cy: CalabiYauData | None = None) -> dict:
    out = {
        "rank": diagram.rank,
        "normals": [list(v) for v in diagram.normals],
    }
    if cy is not None:
        out["gamma"] = [fraction_to_str(g) for g in cy.gamma]
        out["height"] = cy.height
    return out


def diagram_from_dict(data: dict) -> tuple[ToricDiagram, CalabiYauData | None]:
    if "normals" not in data:
        raise ValueError('diagram JSON needs a "normals" field')
    normals = data["normals"]
    for row in normals:
        for x in row:
            if not isinstance(x, int):
                raise ValueError(f"normal entries must be exact integers, got {x!r}")
    diagram = validate_diagram(normals, rank=data.get("rank"))
    cy = None
    if "gamma" in data:
        gamma = tuple(fraction_from_str(s) for s in data["gamma"])
        height = int(data.get("height", 1))
        cy = CalabiYauData(gamma=gamma, height=height)
    return diagram, cy


def load_diagram(path: str) -> tuple[ToricDiagram, CalabiYauData | None]:
    with open(path, "r", encoding="utf-8") as fh:
        return diagram_from_dict(json.load(fh))


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
