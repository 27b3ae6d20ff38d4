"""JSON file format for groups, homomorphisms, G-spaces, towers and reports.

Parse failures carry the field path of the offending value, e.g.
``levels[1].action[0][3]``.  Structural problems (missing keys, wrong types)
raise ``ParseError``; values that are well-formed but violate an axiom or a
range raise ``ValidationError`` wrapping the underlying error.
"""

from __future__ import annotations

import json
from pathlib import Path

from .algebra import FiniteGroup, GroupHom, GSpace, validate_action, validate_group, validate_hom
from .errors import OrbitLimitError, ParseError, RangeError, ValidationError
from .systems import (
    ConstantTowerSpec,
    EquivariantTower,
    builtin_negation,
    builtin_solenoid,
    explicit_tower,
    validate_constant_spec,
)

GENERATED_FAMILIES = {"solenoid": builtin_solenoid, "negation": builtin_negation}


# --- writing -----------------------------------------------------------------

def group_to_dict(g: FiniteGroup) -> dict:
    return {"order": g.order, "table": [list(r) for r in g.table]}


def hom_to_dict(h: GroupHom) -> dict:
    return {"map": list(h.map)}


def gspace_to_dict(s: GSpace) -> dict:
    return {"group": group_to_dict(s.group), "carrier": s.carrier,
            "action": [list(r) for r in s.action]}


def spec_to_dict(spec: ConstantTowerSpec) -> dict:
    return {
        "kind": "constant",
        "space": spec.space,
        "f": list(spec.f),
        "group": group_to_dict(spec.group),
        "nu": hom_to_dict(spec.nu),
        "action": [list(r) for r in spec.action.action],
    }


def tower_to_dict(t: EquivariantTower) -> dict:
    """Explicit form of a nat tower (generated families are expanded)."""
    d = t.depth
    return {
        "kind": "explicit",
        "levels": [
            {"carrier": t.spaces.sizes[k], "group": group_to_dict(t.groups.groups[k]),
             "action": [list(r) for r in t.actions[k].action]}
            for k in range(d + 1)
        ],
        "space_bonds": [list(t.spaces.bond(k)) for k in range(d)],
        "group_bonds": [{"map": list(t.groups.bond(k))} for k in range(d)],
    }


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# --- reading -----------------------------------------------------------------

def _get(obj, key, path):
    if not isinstance(obj, dict):
        raise ParseError(path or "<root>", detail="expected an object")
    if key not in obj:
        raise ParseError(f"{path}.{key}" if path else key, detail="missing field")
    return obj[key]


def _int(v, path):
    if not isinstance(v, int) or isinstance(v, bool):
        raise ParseError(path, detail=f"expected an integer, got {v!r}")
    return v


def _int_list(v, path, length=None):
    if not isinstance(v, list):
        raise ParseError(path, detail="expected a list")
    if length is not None and len(v) != length:
        raise ParseError(path, detail=f"expected {length} entries, got {len(v)}")
    return [_int(x, f"{path}[{i}]") for i, x in enumerate(v)]


def _in_range(values, path, bound):
    for i, v in enumerate(values):
        if not 0 <= v < bound:
            raise ValidationError(f"{path}[{i}]", RangeError(i, detail=f"{v} not below {bound}"))


def _matrix(v, path, rows, cols, bound):
    if not isinstance(v, list) or len(v) != rows:
        raise ParseError(path, detail=f"expected a list of {rows} rows")
    out = [_int_list(r, f"{path}[{i}]", cols) for i, r in enumerate(v)]
    for i, r in enumerate(out):
        _in_range(r, f"{path}[{i}]", bound)
    return out


def _wrap(path, fn, *args):
    try:
        return fn(*args)
    except OrbitLimitError as exc:
        if isinstance(exc, (ParseError, ValidationError)):
            raise
        raise ValidationError(path, exc) from exc


def _prefix(path, key):
    return f"{path}.{key}" if path else key


def group_from_dict(obj, path="") -> FiniteGroup:
    n = _int(_get(obj, "order", path), _prefix(path, "order"))
    if n < 1:
        raise ParseError(_prefix(path, "order"), detail="order must be positive")
    table = _matrix(_get(obj, "table", path), _prefix(path, "table"), n, n, n)
    return _wrap(_prefix(path, "table"), validate_group, table)


def hom_from_dict(obj, source, target, path="") -> GroupHom:
    m = _int_list(_get(obj, "map", path), _prefix(path, "map"), source.order)
    _in_range(m, _prefix(path, "map"), target.order)
    return _wrap(_prefix(path, "map"), validate_hom, source, target, m)


def _action_from(obj, group, carrier, path):
    rows = _matrix(_get(obj, "action", path), _prefix(path, "action"), group.order, carrier, carrier)
    return _wrap(_prefix(path, "action"), validate_action, group, carrier, rows)


def gspace_from_dict(obj, path="") -> GSpace:
    group = group_from_dict(_get(obj, "group", path), _prefix(path, "group"))
    carrier = _int(_get(obj, "carrier", path), _prefix(path, "carrier"))
    if carrier < 1:
        raise ParseError(_prefix(path, "carrier"), detail="carrier must be positive")
    return _action_from(obj, group, carrier, path)


def spec_from_dict(obj, path="") -> ConstantTowerSpec:
    n = _int(_get(obj, "space", path), _prefix(path, "space"))
    if n < 1:
        raise ParseError(_prefix(path, "space"), detail="space must be positive")
    f = _int_list(_get(obj, "f", path), _prefix(path, "f"), n)
    _in_range(f, _prefix(path, "f"), n)
    group = group_from_dict(_get(obj, "group", path), _prefix(path, "group"))
    nu = hom_from_dict(_get(obj, "nu", path), group, group, _prefix(path, "nu"))
    action = _action_from(obj, group, n, path)
    return _wrap(path or "<root>", validate_constant_spec, n, f, group, nu, action)


def tower_from_dict(obj, path="") -> EquivariantTower:
    levels_raw = _get(obj, "levels", path)
    if not isinstance(levels_raw, list) or not levels_raw:
        raise ParseError(_prefix(path, "levels"), detail="expected a non-empty list")
    levels = []
    for k, lv in enumerate(levels_raw):
        lp = f"{_prefix(path, 'levels')}[{k}]"
        carrier = _int(_get(lv, "carrier", lp), f"{lp}.carrier")
        if carrier < 1:
            raise ParseError(f"{lp}.carrier", detail="carrier must be positive")
        group = group_from_dict(_get(lv, "group", lp), f"{lp}.group")
        action = _action_from(lv, group, carrier, lp)
        levels.append((group, carrier, action))
    d = len(levels) - 1
    sb_raw = _get(obj, "space_bonds", path)
    gb_raw = _get(obj, "group_bonds", path)
    for key, raw in (("space_bonds", sb_raw), ("group_bonds", gb_raw)):
        if not isinstance(raw, list) or len(raw) != d:
            raise ParseError(_prefix(path, key), detail=f"expected {d} bonds")
    space_bonds, group_bonds = [], []
    for k in range(d):
        bp = f"{_prefix(path, 'space_bonds')}[{k}]"
        b = _int_list(sb_raw[k], bp, levels[k + 1][1])
        _in_range(b, bp, levels[k][1])
        space_bonds.append(b)
        hp = f"{_prefix(path, 'group_bonds')}[{k}]"
        group_bonds.append(hom_from_dict(gb_raw[k], levels[k + 1][0], levels[k][0], hp))
    raw_levels = [(g, n, s.action) for g, n, s in levels]
    return _wrap(path or "<root>", explicit_tower, raw_levels, space_bonds, group_bonds)


def generated_from_dict(obj, depth=None, path=""):
    family = _get(obj, "family", path)
    if family not in GENERATED_FAMILIES:
        raise ParseError(_prefix(path, "family"), detail=f"unknown family {family!r}")
    p = _int(obj.get("p", 3), _prefix(path, "p"))
    if depth is None:
        depth = _int(obj.get("depth", 3), _prefix(path, "depth"))
    if depth < 0:
        raise ParseError(_prefix(path, "depth"), detail="depth must be non-negative")
    try:
        return _wrap(path or "<root>", GENERATED_FAMILIES[family], p, depth)
    except ValueError as exc:
        if isinstance(exc, OrbitLimitError):
            raise
        raise ParseError(_prefix(path, "p"), detail=str(exc)) from exc


def parse_document(obj, depth=None):
    """Dispatch on shape: towers by ``kind``, else group / G-space / hom."""
    if not isinstance(obj, dict):
        raise ParseError("<root>", detail="expected a JSON object")
    kind = obj.get("kind")
    if kind == "constant":
        return spec_from_dict(obj)
    if kind == "explicit":
        return tower_from_dict(obj)
    if kind == "generated":
        return generated_from_dict(obj, depth)
    if kind is not None:
        raise ParseError("kind", detail=f"unknown kind {kind!r}")
    if "action" in obj:
        return gspace_from_dict(obj)
    if "map" in obj:
        source = group_from_dict(_get(obj, "source", ""), "source")
        target = group_from_dict(_get(obj, "target", ""), "target")
        return hom_from_dict(obj, source, target)
    if "table" in obj:
        return group_from_dict(obj)
    raise ParseError("<root>", detail="unrecognised document")


def load_json(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(str(path), detail=str(exc)) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}", detail=exc.msg) from exc


def parse_tower_file(path, depth=None):
    """Read a constant spec, explicit tower or generated family from ``path``."""
    obj = parse_document(load_json(path), depth)
    if not isinstance(obj, (ConstantTowerSpec, EquivariantTower)):
        raise ParseError("kind", detail="not a tower description")
    return obj
