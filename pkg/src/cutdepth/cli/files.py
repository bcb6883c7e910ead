"""Instance-file parsing and report serialization.

Instances are JSON objects with exactly one polyhedron form:

  inequality:  {"A": [[...]], "b": [...]}  plus optional hull {"L", "xi"}
  standard:    {"lower": [...], "upper": [...]} with "-inf"/"inf" sentinels,
               plus optional {"L", "xi"}
  corner:      {"f": [...], "R": [[...]]}

plus optional "cuts" [{"alpha", "beta"}], "points" [[...]] and
"disjunctions" [{"pi", "pi0"}]. Reports are plain JSON written with stable
key order so equal runs produce identical bytes.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from ..bounds import Disjunction
from ..corner import CornerData
from ..errors import CutDepthError, InstanceError
from ..polyhedron import AffineSpace, Cut, HPolyhedron, StandardFormModel

INEQUALITY = "inequality"
STANDARD = "standard"
CORNER = "corner"


@dataclass
class Instance:
    kind: str
    polyhedron: HPolyhedron | StandardFormModel | CornerData
    cuts: list[Cut] = field(default_factory=list)
    points: list[np.ndarray] = field(default_factory=list)
    disjunctions: list[Disjunction] = field(default_factory=list)
    raw: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        """Dimension of the variable space cuts and points live in."""
        if self.kind == CORNER:
            return self.polyhedron.num_basic + self.polyhedron.num_nonbasic
        if self.kind == STANDARD:
            return self.polyhedron.dim
        return self.polyhedron.A.shape[1]


def _number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InstanceError(f"{where}: expected a number, got {value!r}")
    return float(value)


def _extended_number(value, where: str) -> float:
    if value == "-inf":
        return -math.inf
    if value == "inf":
        return math.inf
    return _number(value, where)


def _vector(obj, where: str, extended: bool = False) -> np.ndarray:
    if not isinstance(obj, list):
        raise InstanceError(f"{where}: expected a list of numbers")
    parser = _extended_number if extended else _number
    return np.array(
        [parser(v, f"{where}[{i}]") for i, v in enumerate(obj)], dtype=float
    )


def _matrix(obj, where: str) -> np.ndarray:
    if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
        raise InstanceError(f"{where}: expected a list of rows (row-major)")
    rows = [_vector(r, f"{where} row {i}") for i, r in enumerate(obj)]
    if not rows:
        raise InstanceError(f"{where}: must have at least one row")
    width = rows[0].shape[0]
    for i, r in enumerate(rows):
        if r.shape[0] != width:
            raise InstanceError(
                f"{where} row {i} has {r.shape[0]} entries, expected {width}"
            )
    return np.vstack(rows)


def _hull(poly: dict, n: int) -> AffineSpace:
    if ("L" in poly) != ("xi" in poly):
        raise InstanceError("polyhedron: L and xi must be given together")
    if "L" not in poly:
        return AffineSpace.full_space(n)
    L = _matrix(poly["L"], "polyhedron.L")
    xi = _vector(poly["xi"], "polyhedron.xi")
    if L.shape[1] != n:
        raise InstanceError(
            f"polyhedron.L has {L.shape[1]} columns, expected {n}"
        )
    if xi.shape[0] != L.shape[0]:
        raise InstanceError(
            f"polyhedron.xi has length {xi.shape[0]}, expected {L.shape[0]} rows of L"
        )
    return _wrap("polyhedron.L", AffineSpace, L, xi)


def _wrap(where: str, factory, *args):
    try:
        return factory(*args)
    except (CutDepthError, ValueError) as exc:
        raise InstanceError(f"{where}: {exc}") from exc


def _parse_polyhedron(poly) -> tuple[str, object]:
    if not isinstance(poly, dict):
        raise InstanceError("polyhedron: expected an object")
    forms = []
    if "A" in poly or "b" in poly:
        forms.append(INEQUALITY)
    if "lower" in poly or "upper" in poly:
        forms.append(STANDARD)
    if "f" in poly or "R" in poly:
        forms.append(CORNER)
    if len(forms) != 1:
        raise InstanceError(
            "polyhedron: exactly one form required "
            "(inequality {A, b}, standard {lower, upper}, or corner {f, R}); "
            f"found {forms or 'none'}"
        )
    form = forms[0]
    if form == INEQUALITY:
        for key in ("A", "b"):
            if key not in poly:
                raise InstanceError(f"polyhedron.{key}: missing")
        A = _matrix(poly["A"], "polyhedron.A")
        b = _vector(poly["b"], "polyhedron.b")
        if b.shape[0] != A.shape[0]:
            raise InstanceError(
                f"polyhedron.b has length {b.shape[0]}, expected {A.shape[0]} rows of A"
            )
        space = _hull(poly, A.shape[1])
        return form, _wrap("polyhedron", HPolyhedron, A, b, space)
    if form == STANDARD:
        for key in ("lower", "upper"):
            if key not in poly:
                raise InstanceError(f"polyhedron.{key}: missing")
        lower = _vector(poly["lower"], "polyhedron.lower", extended=True)
        upper = _vector(poly["upper"], "polyhedron.upper", extended=True)
        if lower.shape[0] != upper.shape[0]:
            raise InstanceError(
                f"polyhedron.upper has length {upper.shape[0]}, "
                f"expected {lower.shape[0]} to match polyhedron.lower"
            )
        space = _hull(poly, lower.shape[0])
        return form, _wrap("polyhedron", StandardFormModel, space, lower, upper)
    for key in ("f", "R"):
        if key not in poly:
            raise InstanceError(f"polyhedron.{key}: missing")
    f = _vector(poly["f"], "polyhedron.f")
    R = _matrix(poly["R"], "polyhedron.R")
    if R.shape[0] != f.shape[0]:
        raise InstanceError(
            f"polyhedron.R has {R.shape[0]} rows, expected {f.shape[0]} to match polyhedron.f"
        )
    return form, _wrap("polyhedron", CornerData, f, R)


def parse_instance(data) -> Instance:
    if not isinstance(data, dict):
        raise InstanceError("instance: expected a top-level object")
    if "polyhedron" not in data:
        raise InstanceError("polyhedron: missing")
    kind, poly = _parse_polyhedron(data["polyhedron"])
    inst = Instance(kind, poly, raw=data)

    n = inst.dim
    cut_dims = {n}
    point_dims = {n}
    if kind == CORNER:
        cut_dims.add(poly.num_nonbasic)

    for i, entry in enumerate(data.get("cuts", [])):
        where = f"cuts[{i}]"
        if not isinstance(entry, dict) or "alpha" not in entry or "beta" not in entry:
            raise InstanceError(f"{where}: expected an object with alpha and beta")
        alpha = _vector(entry["alpha"], f"{where}.alpha")
        if alpha.shape[0] not in cut_dims:
            raise InstanceError(
                f"{where}.alpha has length {alpha.shape[0]}, expected "
                + " or ".join(str(d) for d in sorted(cut_dims))
            )
        beta = _number(entry["beta"], f"{where}.beta")
        inst.cuts.append(_wrap(where, Cut, alpha, beta))

    for i, entry in enumerate(data.get("points", [])):
        where = f"points[{i}]"
        point = _vector(entry, where)
        if point.shape[0] not in point_dims:
            raise InstanceError(
                f"{where} has length {point.shape[0]}, expected {n}"
            )
        inst.points.append(point)

    for i, entry in enumerate(data.get("disjunctions", [])):
        where = f"disjunctions[{i}]"
        if not isinstance(entry, dict) or "pi" not in entry or "pi0" not in entry:
            raise InstanceError(f"{where}: expected an object with pi and pi0")
        pi = _vector(entry["pi"], f"{where}.pi")
        if pi.shape[0] != n:
            raise InstanceError(
                f"{where}.pi has length {pi.shape[0]}, expected {n}"
            )
        pi0 = entry["pi0"]
        if isinstance(pi0, bool) or not isinstance(pi0, int):
            raise InstanceError(f"{where}.pi0: expected an integer, got {pi0!r}")
        inst.disjunctions.append(_wrap(where, Disjunction, pi, pi0))

    return inst


def load_instance(path: str) -> Instance:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as exc:
        raise InstanceError(f"{path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InstanceError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    return parse_instance(data)


def write_json(payload: dict, path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, indent=2)
        handle.write("\n")
