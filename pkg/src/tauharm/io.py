"""JSON schemas for group specs and function tables.

Two self-describing document kinds, both carrying ``schema_version``:

* group spec -- either a finite semi-direct product (divisors, labeled
  action matrices, Cayley table on label indices, optional weight table) or
  an affine-continuum grid;
* function file -- side tag plus sparse entries {h, coords, re, im};
  unlisted points are zero.

Unknown fields are rejected everywhere.  Numbers round-trip exactly: floats
are emitted with Python's shortest-round-trip repr.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .affine import AffineGrid, SampledAffineFunction
from .automorphisms import Automorphism
from .exceptions import SpecFormatError, TauharmError
from .lca import FiniteLcaGroup
from .semidirect import GroupFunction, TauSystem

SCHEMA_VERSION = 1

_GRID_FIELDS = ("a_min", "a_max", "a_count", "b_min", "b_max", "b_count", "omega_max", "omega_count")


def _require_mapping(doc, what):
    if not isinstance(doc, dict):
        raise SpecFormatError(f"{what} must be a JSON object, got {type(doc).__name__}")


def _check_fields(doc, allowed, required, what):
    unknown = set(doc) - set(allowed)
    if unknown:
        raise SpecFormatError(f"{what}: unknown field(s) {sorted(unknown)}")
    missing = set(required) - set(doc)
    if missing:
        raise SpecFormatError(f"{what}: missing field(s) {sorted(missing)}")


def _check_version(doc, what):
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise SpecFormatError(
            f"{what}: schema_version must be {SCHEMA_VERSION}, got {doc.get('schema_version')!r}"
        )


def _check_label(label):
    if not isinstance(label, (int, str)) or isinstance(label, bool):
        raise SpecFormatError(f"labels must be integers or strings, got {label!r}")
    return label


# -- group specs ---------------------------------------------------------------


def system_to_dict(system: TauSystem) -> dict:
    doc: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "kind": "finite_semidirect",
        "divisors": list(system.normal_factor.divisors),
        "h": [
            {"label": _check_label(label), "matrix": aut.matrix.tolist()}
            for label, aut in zip(system.labels, system.automorphisms)
        ],
        "cayley": system.cayley.tolist(),
    }
    if not np.all(system.delta == 1.0):
        doc["delta"] = [float(d) for d in system.delta]
    return doc


def grid_to_dict(grid: AffineGrid) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "affine_continuum",
        "grid": {
            "a_min": float(grid.a[0]),
            "a_max": float(grid.a[-1]),
            "a_count": int(grid.a.size),
            "b_min": float(grid.b[0]),
            "b_max": float(grid.b[-1]),
            "b_count": int(grid.b.size),
            "omega_max": float(grid.omega[-1]),
            "omega_count": int(grid.omega.size),
        },
    }


def target_to_dict(target) -> dict:
    if isinstance(target, TauSystem):
        return system_to_dict(target)
    if isinstance(target, AffineGrid):
        return grid_to_dict(target)
    raise SpecFormatError(f"cannot serialize object of type {type(target).__name__}")


def target_from_dict(doc):
    """Parse a group spec into a validated TauSystem or AffineGrid."""
    _require_mapping(doc, "group spec")
    _check_version(doc, "group spec")
    kind = doc.get("kind")
    if kind == "finite_semidirect":
        _check_fields(
            doc,
            ("schema_version", "kind", "divisors", "h", "cayley", "delta"),
            ("schema_version", "kind", "divisors", "h", "cayley"),
            "group spec",
        )
        try:
            group = FiniteLcaGroup(doc["divisors"])
            labels, automorphisms = [], []
            for record in doc["h"]:
                _require_mapping(record, "h record")
                _check_fields(record, ("label", "matrix"), ("label", "matrix"), "h record")
                labels.append(_check_label(record["label"]))
                automorphisms.append(Automorphism(group, record["matrix"]))
            return TauSystem(group, labels, automorphisms, doc["cayley"], doc.get("delta"))
        except SpecFormatError:
            raise
        except (TauharmError, TypeError, ValueError) as exc:
            raise SpecFormatError(f"invalid finite_semidirect spec: {exc}") from exc
    if kind == "affine_continuum":
        _check_fields(doc, ("schema_version", "kind", "grid"), ("schema_version", "kind", "grid"), "group spec")
        grid_doc = doc["grid"]
        _require_mapping(grid_doc, "grid")
        _check_fields(grid_doc, _GRID_FIELDS, _GRID_FIELDS, "grid")
        try:
            return AffineGrid(*(grid_doc[f] for f in _GRID_FIELDS))
        except (TauharmError, TypeError, ValueError) as exc:
            raise SpecFormatError(f"invalid affine_continuum spec: {exc}") from exc
    raise SpecFormatError(f"unknown spec kind {kind!r}")


# -- function files ------------------------------------------------------------


def function_to_dict(fn) -> dict:
    entries = []
    if isinstance(fn, GroupFunction):
        system = fn.system
        for i, label in enumerate(system.labels):
            for k in range(system.normal_factor.order):
                v = fn.values[i, k]
                if v != 0:
                    coords = system.normal_factor.element_at(k)
                    entries.append(
                        {"h": label, "coords": list(coords), "re": float(v.real), "im": float(v.imag)}
                    )
    elif isinstance(fn, SampledAffineFunction):
        axis = fn.grid.b if fn.side == "primal" else fn.grid.omega
        for i, a in enumerate(fn.grid.a):
            for j, x in enumerate(axis):
                v = fn.values[i, j]
                if v != 0:
                    entries.append(
                        {"h": float(a), "coords": [float(x)], "re": float(v.real), "im": float(v.imag)}
                    )
    else:
        raise SpecFormatError(f"cannot serialize function of type {type(fn).__name__}")
    return {"schema_version": SCHEMA_VERSION, "side": fn.side, "entries": entries}


def _node_index(nodes: np.ndarray, x: float, axis_name: str) -> int:
    idx = int(np.argmin(np.abs(nodes - x)))
    if abs(nodes[idx] - x) > 1e-9 * max(1.0, abs(x)):
        raise SpecFormatError(f"coordinate {x} is not a node of the {axis_name} grid")
    return idx


def function_from_dict(doc, target):
    """Parse a function file against the system or grid it lives on."""
    _require_mapping(doc, "function file")
    _check_version(doc, "function file")
    _check_fields(
        doc, ("schema_version", "side", "entries"), ("schema_version", "side", "entries"), "function file"
    )
    side = doc["side"]
    if side not in ("primal", "dual"):
        raise SpecFormatError(f"side must be 'primal' or 'dual', got {side!r}")
    entries = doc["entries"]
    if not isinstance(entries, list):
        raise SpecFormatError("entries must be a list")

    if isinstance(target, TauSystem):
        values = np.zeros((target.acting_order, target.normal_factor.order), dtype=np.complex128)
    elif isinstance(target, AffineGrid):
        cols = target.b.size if side == "primal" else target.omega.size
        values = np.zeros((target.a.size, cols), dtype=np.complex128)
    else:
        raise SpecFormatError(f"cannot attach a function to {type(target).__name__}")

    seen = set()
    for record in entries:
        _require_mapping(record, "function entry")
        _check_fields(record, ("h", "coords", "re", "im"), ("h", "coords", "re", "im"), "function entry")
        try:
            value = complex(float(record["re"]), float(record["im"]))
        except (TypeError, ValueError) as exc:
            raise SpecFormatError(f"bad value in entry {record!r}") from exc
        if isinstance(target, TauSystem):
            try:
                i = target.label_index(record["h"])
                coords = target.normal_factor.check_member(record["coords"])
                j = target.normal_factor.index_of(coords)
            except (TauharmError, TypeError, ValueError) as exc:
                raise SpecFormatError(f"bad entry {record!r}: {exc}") from exc
        else:
            coords = record["coords"]
            if not isinstance(coords, list) or len(coords) != 1:
                raise SpecFormatError(f"continuum entries need coords = [value], got {coords!r}")
            i = _node_index(target.a, float(record["h"]), "a")
            axis = target.b if side == "primal" else target.omega
            j = _node_index(axis, float(coords[0]), "b" if side == "primal" else "omega")
        if (i, j) in seen:
            raise SpecFormatError(f"duplicate entry for point ({record['h']!r}, {record['coords']!r})")
        seen.add((i, j))
        values[i, j] = value

    if isinstance(target, TauSystem):
        return GroupFunction(target, side, values)
    return SampledAffineFunction(target, side, values)


# -- files ----------------------------------------------------------------------


def load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise SpecFormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SpecFormatError(f"{path} is not valid JSON: {exc}") from exc


def dump_json(doc, path: str | None = None) -> str:
    text = json.dumps(doc, indent=2, sort_keys=True)
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return text
