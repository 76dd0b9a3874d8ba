"""JSON dump of a tree, its basis assignment and check results."""

from __future__ import annotations

import json

from ..report import Report
from .embed import BasisAssignment
from .tree import VirtualTree


def _config_json(c) -> dict:
    return {"state": c.state, "head": c.head, "tape": c.tape}


def tree_dump(vt: VirtualTree, ba: BasisAssignment, report: Report | None = None) -> dict:
    """Plain dict with a fixed key order; serialize with :func:`dumps`."""
    out = {
        "machine_digest": vt.machine.digest(),
        "machine": vt.machine.name,
        "y": vt.y,
        "L": vt.L,
        "h": vt.h,
        "h_convention": "transitions",
        "branches": [
            {
                "index": b.index,
                "input": list(b.input),
                "h_x": b.h,
                "k_x": b.k,
                "configurations": [_config_json(c) for c in b.configurations],
            }
            for b in vt.branches
        ],
        "basis": {
            "N": ba.level,
            "offset": ba.offset,
            "pairs": [
                {"branch": j, "step": t, "element": g}
                for (j, t), g in sorted(ba.pairs().items())
            ],
        },
    }
    if report is not None:
        out["checks"] = [c.to_json() for c in report.checks]
    return out


def dumps(data: dict) -> str:
    return json.dumps(data, indent=2) + "\n"
