"""JSON encodings of groups, homomorphisms, Mackey functors and reports.

Matrices are lists of rows; relation matrices are stored as a list of
relation vectors.  Output is canonical (sorted keys, integers only) so that
identical inputs give byte-identical files.
"""

from __future__ import annotations

import hashlib
import json

import numpy as np

from .abelian import FGAbelianGroup, GroupHom, int_matrix, zeros
from .burnside import CyclicGroup
from .mackey import MackeyFunctor

__all__ = [
    "group_to_json",
    "group_from_json",
    "hom_to_json",
    "matrix_to_json",
    "mackey_to_json",
    "mackey_from_json",
    "mackey_summary",
    "dumps",
    "digest",
]


def matrix_to_json(m: np.ndarray) -> list[list[int]]:
    return [[int(x) for x in row] for row in np.asarray(m).tolist()]


def group_to_json(g: FGAbelianGroup) -> dict:
    return {"generators": g.ngens, "relations": matrix_to_json(g.relations.T) if g.relations.size else []}


def group_from_json(d: dict) -> FGAbelianGroup:
    n = int(d["generators"])
    rel = d.get("relations") or []
    if any(len(r) != n for r in rel):
        raise ValueError("relation vectors must have one entry per generator")
    return FGAbelianGroup(n, int_matrix(rel, len(rel), n).T if rel else zeros(n, 0))


def hom_to_json(f: GroupHom) -> list[list[int]]:
    return matrix_to_json(f.matrix)


def mackey_to_json(m: MackeyFunctor) -> dict:
    return {
        "group_order": m.group.order,
        "levels": [group_to_json(g) for g in m.levels],
        "res": {str(k): hom_to_json(m.res[k]) for k in sorted(m.res)},
        "tr": {str(k): hom_to_json(m.tr[k]) for k in sorted(m.tr)},
        "weyl": {str(k): hom_to_json(m.weyl[k]) for k in sorted(m.weyl)},
    }


def mackey_from_json(d: dict, check: bool = False) -> MackeyFunctor:
    """Decode a Mackey functor; ``check`` runs the axiom checker on load."""
    group = CyclicGroup(int(d["group_order"]))
    levels = [group_from_json(g) for g in d["levels"]]
    pk = group.prime_power
    if pk is None:
        raise ValueError(f"{group} is not a cyclic p-group")
    if len(levels) != pk[1] + 1:
        raise ValueError(f"{group} needs {pk[1] + 1} levels, got {len(levels)}")

    def mats(key, shape):
        out = {}
        for k_str, rows in (d.get(key) or {}).items():
            k = int(k_str)
            r, c = shape(k)
            out[k] = int_matrix(rows, r, c) if rows else zeros(r, c)
        return out

    res = mats("res", lambda k: (levels[k - 1].ngens, levels[k].ngens))
    tr = mats("tr", lambda k: (levels[k].ngens, levels[k - 1].ngens))
    weyl = mats("weyl", lambda k: (levels[k].ngens, levels[k].ngens)) or None
    return MackeyFunctor(group, levels, res, tr, weyl, check=check)


def mackey_summary(m: MackeyFunctor) -> dict:
    """Invariants per level plus structure maps (levels in diagonal form)."""
    out = mackey_to_json(m)
    out["invariants"] = [[r, list(t)] for r, t in m.ranks()]
    return out


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def digest(obj) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True).encode()).hexdigest()[:16]
