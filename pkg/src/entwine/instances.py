"""Instance files: loading, validation, canonical serialization, builders.

The on-disk format is JSON with explicit integer matrices, trivially
diffable and language-neutral:

    {
      "field_p": 3,
      "meta": {"description": "...", "labels": {"A": ["u", "g"]}},
      "objects": {"A": 2},
      "maps": {"m": {"rows": 2, "cols": 4, "entries": [...]}, ...},
      "roles": {"A": {"kind": "bimonoid", "object": "A", "m": "m", ...}}
    }

Matrices act on column vectors, composition g.f applies f first, and tensor
legs flatten row-major.  Entries out of [0, p) are accepted, reduced and
reported as warnings.  Every role's shape constraints are enforced at load
time, before any check runs.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Optional

from .exactalg import FpMatrix, ShapeError, is_prime
from .structures import (
    BimonoidData,
    ComonoidData,
    ComoduleAlgebraData,
    MonoidData,
)
from .hopfmod import HopfModuleData
from .entwining import EntwiningData, entwining_from_bimonoid

__all__ = [
    "InstanceError",
    "InstanceFile",
    "load_instance",
    "instance_from_dict",
    "serialize_instance",
    "builders",
    "build_instance",
    "fixture_path",
    "fixture_names",
]

DEFAULT_MAX_DIM = 64

ROLE_KINDS = (
    "monoid",
    "comonoid",
    "bimonoid",
    "comodule-algebra",
    "hopf-module",
    "entwining",
)


class InstanceError(ValueError):
    """Malformed instance file or role/shape violation (CLI exit 2)."""


@dataclass
class InstanceFile:
    field_p: int
    objects: dict
    maps: dict
    roles: dict
    meta: object = ""
    warnings: list = field(default_factory=list)
    resolved: dict = field(default_factory=dict)
    source: str = "<memory>"

    def roles_of(self, kind: str) -> list:
        out = [
            (name, self.resolved[name])
            for name, decl in sorted(self.roles.items())
            if decl["kind"] == kind
        ]
        return out

    def labels_for(self, obj: str) -> Optional[list]:
        if isinstance(self.meta, dict):
            labels = self.meta.get("labels", {})
            got = labels.get(obj)
            if isinstance(got, list) and len(got) == self.objects.get(obj, -1):
                return [str(x) for x in got]
        return None

    def description(self) -> str:
        if isinstance(self.meta, dict):
            return str(self.meta.get("description", ""))
        return str(self.meta)


def _max_dim() -> int:
    raw = os.environ.get("ENTWINE_MAX_DIM", str(DEFAULT_MAX_DIM))
    try:
        return int(raw)
    except ValueError:
        return DEFAULT_MAX_DIM


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise InstanceError(msg)


def _load_matrix(p: int, name: str, decl, warnings: list) -> FpMatrix:
    _require(isinstance(decl, dict), f"map {name!r} must be an object")
    for key in ("rows", "cols", "entries"):
        _require(key in decl, f"map {name!r} is missing {key!r}")
    rows, cols, entries = decl["rows"], decl["cols"], decl["entries"]
    _require(
        isinstance(rows, int) and isinstance(cols, int) and rows >= 0 and cols >= 0,
        f"map {name!r} has invalid dimensions",
    )
    _require(isinstance(entries, list), f"map {name!r}: entries must be a list")
    _require(
        len(entries) == rows * cols,
        f"map {name!r}: expected {rows * cols} entries, got {len(entries)}",
    )
    _require(
        all(isinstance(x, int) for x in entries),
        f"map {name!r}: entries must be integers",
    )
    if any(not 0 <= x < p for x in entries):
        warnings.append(f"map {name!r}: entries outside [0, {p}) reduced mod {p}")
    return FpMatrix.from_flat(p, rows, cols, entries)


def _resolve_roles(inst: InstanceFile) -> None:
    """Build the typed structure objects for every role, enforcing shape
    constraints; dependency order is monoid-like roles first."""

    def obj_dim(role_name: str, decl: dict) -> int:
        _require("object" in decl, f"role {role_name!r} is missing 'object'")
        name = decl["object"]
        _require(name in inst.objects, f"role {role_name!r}: unknown object {name!r}")
        return inst.objects[name]

    def get_map(role_name: str, decl: dict, slot: str) -> FpMatrix:
        _require(slot in decl, f"role {role_name!r} is missing map slot {slot!r}")
        ref = decl[slot]
        _require(ref in inst.maps, f"role {role_name!r}: unknown map {ref!r}")
        return inst.maps[ref]

    def build_simple(name: str, decl: dict):
        kind = decl["kind"]
        try:
            if kind == "monoid":
                return MonoidData(obj_dim(name, decl), get_map(name, decl, "m"), get_map(name, decl, "e"))
            if kind == "comonoid":
                return ComonoidData(
                    obj_dim(name, decl), get_map(name, decl, "delta"), get_map(name, decl, "eps")
                )
            if kind == "bimonoid":
                d = obj_dim(name, decl)
                return BimonoidData(
                    MonoidData(d, get_map(name, decl, "m"), get_map(name, decl, "e")),
                    ComonoidData(d, get_map(name, decl, "delta"), get_map(name, decl, "eps")),
                )
        except ShapeError as exc:
            raise InstanceError(f"role {name!r}: {exc}") from exc
        return None

    for name, decl in sorted(inst.roles.items()):
        _require(isinstance(decl, dict), f"role {name!r} must be an object")
        _require(decl.get("kind") in ROLE_KINDS, f"role {name!r}: unknown kind {decl.get('kind')!r}")
        built = build_simple(name, decl)
        if built is not None:
            inst.resolved[name] = built

    def base_bimonoid(name: str, decl: dict) -> BimonoidData:
        _require("over" in decl, f"role {name!r} is missing 'over'")
        over = decl["over"]
        _require(
            over in inst.resolved and isinstance(inst.resolved[over], BimonoidData),
            f"role {name!r}: 'over' must reference a bimonoid role, got {over!r}",
        )
        return inst.resolved[over]

    for name, decl in sorted(inst.roles.items()):
        kind = decl["kind"]
        try:
            if kind == "comodule-algebra":
                d = obj_dim(name, decl)
                alg = MonoidData(d, get_map(name, decl, "m"), get_map(name, decl, "e"))
                inst.resolved[name] = ComoduleAlgebraData(
                    alg, base_bimonoid(name, decl), get_map(name, decl, "rho")
                )
            elif kind == "hopf-module":
                d = obj_dim(name, decl)
                over = base_bimonoid(name, decl)
                h = get_map(name, decl, "action")
                theta = get_map(name, decl, "coaction")
                _require(
                    h.shape == (d, d * over.dim),
                    f"role {name!r}: action must have shape {(d, d * over.dim)}, got {h.shape}",
                )
                _require(
                    theta.shape == (d * over.dim, d),
                    f"role {name!r}: coaction must have shape {(d * over.dim, d)}, got {theta.shape}",
                )
                inst.resolved[name] = HopfModuleData(d, h, theta)
            elif kind == "entwining":
                for slot in ("monoid", "comonoid"):
                    _require(slot in decl, f"role {name!r} is missing {slot!r}")
                mon_ref, com_ref = decl["monoid"], decl["comonoid"]
                _require(mon_ref in inst.resolved, f"role {name!r}: unknown role {mon_ref!r}")
                _require(com_ref in inst.resolved, f"role {name!r}: unknown role {com_ref!r}")
                mon = inst.resolved[mon_ref]
                com = inst.resolved[com_ref]
                if isinstance(mon, BimonoidData):
                    mon = mon.monoid
                if isinstance(com, BimonoidData):
                    com = com.comonoid
                _require(
                    isinstance(mon, MonoidData),
                    f"role {name!r}: {mon_ref!r} does not provide a monoid",
                )
                _require(
                    isinstance(com, ComonoidData),
                    f"role {name!r}: {com_ref!r} does not provide a comonoid",
                )
                side = decl.get("side", "right")
                inst.resolved[name] = EntwiningData(
                    mon, com, get_map(name, decl, "lambda0"), side
                )
        except ShapeError as exc:
            raise InstanceError(f"role {name!r}: {exc}") from exc


def instance_from_dict(raw: dict, source: str = "<memory>") -> InstanceFile:
    _require(isinstance(raw, dict), "instance must be a JSON object")
    for key in ("field_p", "objects", "maps", "roles"):
        _require(key in raw, f"instance is missing top-level field {key!r}")
    p = raw["field_p"]
    _require(isinstance(p, int) and is_prime(p) and p < 2**31, f"field_p must be a prime < 2^31, got {p!r}")
    objects = raw["objects"]
    _require(isinstance(objects, dict), "'objects' must be a name -> dimension map")
    cap = _max_dim()
    for name, d in objects.items():
        _require(isinstance(d, int) and d >= 0, f"object {name!r} has invalid dimension {d!r}")
        _require(d <= cap, f"object {name!r} has dimension {d} > ENTWINE_MAX_DIM={cap}")
    warnings: list = []
    _require(isinstance(raw["maps"], dict), "'maps' must be a name -> matrix map")
    maps = {
        name: _load_matrix(p, name, decl, warnings)
        for name, decl in sorted(raw["maps"].items())
    }
    _require(isinstance(raw["roles"], dict), "'roles' must be a name -> role map")
    roles = {}
    for k, v in sorted(raw["roles"].items()):
        _require(isinstance(v, dict), f"role {k!r} must be an object")
        roles[k] = dict(v)
    inst = InstanceFile(
        field_p=p,
        objects=dict(sorted(objects.items())),
        maps=maps,
        roles=roles,
        meta=raw.get("meta", ""),
        warnings=warnings,
        source=source,
    )
    _resolve_roles(inst)
    return inst


def load_instance(path: str) -> InstanceFile:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise InstanceError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InstanceError(f"parse error in {path}: {exc}") from exc
    return instance_from_dict(raw, source=path)


def serialize_instance(inst: InstanceFile) -> str:
    """Canonical text form; loading it back yields an identical instance."""
    payload = {
        "field_p": inst.field_p,
        "meta": inst.meta,
        "objects": inst.objects,
        "maps": {
            name: {"rows": m.rows, "cols": m.cols, "entries": m.entries_rowmajor()}
            for name, m in sorted(inst.maps.items())
        },
        "roles": {k: v for k, v in sorted(inst.roles.items())},
    }
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


# ---------------------------------------------------------------------------
# builders for the shipped corpus
# ---------------------------------------------------------------------------

def _matrix_payload(m: FpMatrix) -> dict:
    return {"rows": m.rows, "cols": m.cols, "entries": m.entries_rowmajor()}


def _with_entwining_and_regular(raw: dict) -> dict:
    """Attach the derived entwining and the regular Hopf module to a raw
    bimonoid instance (both are exercised by several CLI commands)."""
    inst = instance_from_dict(raw)
    (name, a), = inst.roles_of("bimonoid")
    ed = entwining_from_bimonoid(a)
    raw["maps"]["lambda0"] = _matrix_payload(ed.lambda0)
    raw["roles"]["lambda"] = {
        "kind": "entwining",
        "monoid": name,
        "comonoid": name,
        "lambda0": "lambda0",
        "side": "right",
    }
    raw["roles"]["regular"] = {
        "kind": "hopf-module",
        "object": raw["roles"][name]["object"],
        "over": name,
        "action": raw["roles"][name]["m"],
        "coaction": raw["roles"][name]["delta"],
    }
    return raw


def build_group_algebra(p: int, order: int) -> dict:
    """Group algebra F_p[Z/order] with the group-like coalgebra structure."""
    if order < 1:
        raise InstanceError("order must be >= 1")
    n = order
    m = [[0] * (n * n) for _ in range(n)]
    for i in range(n):
        for j in range(n):
            m[(i + j) % n][i * n + j] = 1
    e = [[1 if i == 0 else 0] for i in range(n)]
    delta = [[0] * n for _ in range(n * n)]
    for i in range(n):
        delta[i * n + i][i] = 1
    eps = [[1] * n]
    labels = ["u"] + [f"g{'' if k == 1 else k}" for k in range(1, n)]
    raw = {
        "field_p": p,
        "meta": {
            "description": f"group algebra F_{p}[Z/{n}] (Hopf)" if n > 1 else f"trivial bimonoid over F_{p}",
            "labels": {"A": labels},
        },
        "objects": {"A": n},
        "maps": {
            "m": {"rows": n, "cols": n * n, "entries": [x for row in m for x in row]},
            "e": {"rows": n, "cols": 1, "entries": [x for row in e for x in row]},
            "delta": {"rows": n * n, "cols": n, "entries": [x for row in delta for x in row]},
            "eps": {"rows": 1, "cols": n, "entries": eps[0]},
        },
        "roles": {
            "A": {"kind": "bimonoid", "object": "A", "m": "m", "e": "e", "delta": "delta", "eps": "eps"}
        },
    }
    return _with_entwining_and_regular(raw)


def build_idempotent_monoid(p: int) -> dict:
    """Monoid algebra F_p[{1, z}] with z^2 = z: a bimonoid that is not Hopf."""
    raw = {
        "field_p": p,
        "meta": {
            "description": f"monoid algebra F_{p}[{{1,z}}], z^2 = z (bimonoid, not Hopf)",
            "labels": {"A": ["u", "z"]},
        },
        "objects": {"A": 2},
        "maps": {
            "m": {"rows": 2, "cols": 4, "entries": [1, 0, 0, 0, 0, 1, 1, 1]},
            "e": {"rows": 2, "cols": 1, "entries": [1, 0]},
            "delta": {"rows": 4, "cols": 2, "entries": [1, 0, 0, 0, 0, 0, 0, 1]},
            "eps": {"rows": 1, "cols": 2, "entries": [1, 1]},
        },
        "roles": {
            "A": {"kind": "bimonoid", "object": "A", "m": "m", "e": "e", "delta": "delta", "eps": "eps"}
        },
    }
    return _with_entwining_and_regular(raw)


def build_sweedler(p: int) -> dict:
    """The four-dimensional Hopf algebra on 1, g, x, gx with g^2 = 1, x^2 = 0,
    xg = -gx; the antipode squares to a nontrivial involution."""
    if p == 2:
        raise InstanceError("the four-dimensional Hopf algebra needs p odd")
    neg = p - 1
    n = 4
    m = [[0] * 16 for _ in range(4)]

    def set_prod(i, j, coeffs):
        for k, c in coeffs:
            m[k][i * 4 + j] = c % p

    # basis order: 1, g, x, gx
    set_prod(0, 0, [(0, 1)]); set_prod(0, 1, [(1, 1)]); set_prod(0, 2, [(2, 1)]); set_prod(0, 3, [(3, 1)])
    set_prod(1, 0, [(1, 1)]); set_prod(1, 1, [(0, 1)]); set_prod(1, 2, [(3, 1)]); set_prod(1, 3, [(2, 1)])
    set_prod(2, 0, [(2, 1)]); set_prod(2, 1, [(3, neg)]); set_prod(2, 2, []); set_prod(2, 3, [])
    set_prod(3, 0, [(3, 1)]); set_prod(3, 1, [(2, neg)]); set_prod(3, 2, []); set_prod(3, 3, [])
    delta = [[0] * 4 for _ in range(16)]

    def set_coprod(i, terms):
        for (a, b), c in terms:
            delta[a * 4 + b][i] = c % p

    set_coprod(0, [((0, 0), 1)])
    set_coprod(1, [((1, 1), 1)])
    set_coprod(2, [((2, 0), 1), ((1, 2), 1)])
    set_coprod(3, [((3, 1), 1), ((0, 3), 1)])
    raw = {
        "field_p": p,
        "meta": {
            "description": f"four-dimensional Hopf algebra over F_{p} (antipode of order 4)",
            "labels": {"A": ["u", "g", "x", "gx"]},
        },
        "objects": {"A": n},
        "maps": {
            "m": {"rows": 4, "cols": 16, "entries": [x for row in m for x in row]},
            "e": {"rows": 4, "cols": 1, "entries": [1, 0, 0, 0]},
            "delta": {"rows": 16, "cols": 4, "entries": [x for row in delta for x in row]},
            "eps": {"rows": 1, "cols": 4, "entries": [1, 1, 0, 0]},
        },
        "roles": {
            "A": {"kind": "bimonoid", "object": "A", "m": "m", "e": "e", "delta": "delta", "eps": "eps"}
        },
    }
    return _with_entwining_and_regular(raw)


def build_regular_comodule(p: int, order: int = 2) -> dict:
    """B = A = F_p[Z/order] coacting on itself by its comultiplication, with a
    trivial comonoid C for the generalized canonical map."""
    base = build_group_algebra(p, order)
    raw = {
        "field_p": p,
        "meta": {
            "description": f"regular comodule algebra B = A = F_{p}[Z/{order}], rho = delta",
            "labels": base["meta"]["labels"],
        },
        "objects": {"A": order, "B": order, "C": 1},
        "maps": {
            "m": base["maps"]["m"],
            "e": base["maps"]["e"],
            "delta": base["maps"]["delta"],
            "eps": base["maps"]["eps"],
            "one": {"rows": 1, "cols": 1, "entries": [1]},
        },
        "roles": {
            "A": {"kind": "bimonoid", "object": "A", "m": "m", "e": "e", "delta": "delta", "eps": "eps"},
            "B": {"kind": "comodule-algebra", "object": "B", "m": "m", "e": "e", "over": "A", "rho": "delta"},
            "C": {"kind": "comonoid", "object": "C", "delta": "one", "eps": "one"},
        },
    }
    return raw


def build_trivial_coaction(p: int, order: int = 2) -> dict:
    """One-dimensional B coacting through the unit of A: not Galois, by a
    dimension obstruction."""
    base = build_group_algebra(p, order)
    raw = {
        "field_p": p,
        "meta": {
            "description": f"trivial coaction: B = F_{p} over A = F_{p}[Z/{order}], rho = e",
        },
        "objects": {"A": order, "B": 1, "C": 1},
        "maps": {
            "m": base["maps"]["m"],
            "e": base["maps"]["e"],
            "delta": base["maps"]["delta"],
            "eps": base["maps"]["eps"],
            "one": {"rows": 1, "cols": 1, "entries": [1]},
        },
        "roles": {
            "A": {"kind": "bimonoid", "object": "A", "m": "m", "e": "e", "delta": "delta", "eps": "eps"},
            "B": {"kind": "comodule-algebra", "object": "B", "m": "one", "e": "one", "over": "A", "rho": "e"},
            "C": {"kind": "comonoid", "object": "C", "delta": "one", "eps": "one"},
        },
    }
    return raw


builders = {
    "group-algebra": build_group_algebra,
    "idempotent-monoid": build_idempotent_monoid,
    "sweedler": build_sweedler,
    "trivial": lambda p: build_group_algebra(p, 1),
    "regular-comodule": build_regular_comodule,
    "trivial-coaction": build_trivial_coaction,
}


def build_instance(kind: str, p: int, order: int = 2) -> InstanceFile:
    if kind not in builders:
        raise InstanceError(f"unknown instance kind {kind!r}; choose from {sorted(builders)}")
    fn = builders[kind]
    raw = fn(p, order) if kind in ("group-algebra", "regular-comodule", "trivial-coaction") else fn(p)
    return instance_from_dict(raw, source=f"<make-instance {kind}>")


FIXTURES = {
    "kz2_f3": ("group-algebra", 3, 2),
    "kz3_f2": ("group-algebra", 2, 3),
    "m2_f2": ("idempotent-monoid", 2, None),
    "sweedler_f5": ("sweedler", 5, None),
    "trivial_fp": ("trivial", 3, None),
    "regular_comodule_f3": ("regular-comodule", 3, 2),
    "trivial_coaction_f3": ("trivial-coaction", 3, 2),
}


def fixture_names() -> list:
    return sorted(FIXTURES)


def fixture_path(name: str) -> str:
    here = os.path.dirname(os.path.abspath(__file__))
    return os.path.join(here, "fixtures", name + ".json")
