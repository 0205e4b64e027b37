"""Workspace documents: named algebraic objects in one JSON file.

Grammar (JSON; ? marks optional keys):

    workspace   = { "name"?: str, "field": {"p": prime},
                    "algebras"?:       { name: algebra },
                    "modules"?:        { name: module },
                    "bimodules"?:      { name: bimodule },
                    "rings"?:          { name: ring },
                    "graded_modules"?: { name: graded },
                    "ideals"?:         { name: ideal },
                    "samples"?:        { name: [module-name, ...] },
                    "defaults"?:       { "bound"?: int, "degrees"?: [int, ...],
                                         "box"?: [[lo, hi], ...] } }
    algebra     = { "structure_constants": [[[int]]], "unit": [int],
                    "radical_basis"?: [[int]] }
    module      = { "algebra": name, "side": "left" | "right",
                    "action": [[[int]]] }
    bimodule    = { "left_algebra": name, "right_algebra": name,
                    "left_action": [[[int]]], "right_action": [[[int]]] }
    ring        = { "variables": [str, ...] }
    graded      = { "ring": name, "generator_degrees": [[int, ...]],
                    "relations": [[[generator, coefficient, [int, ...]], ...]] }
    ideal       = { "ring": name, "generators": [[int, ...]] }

Field entries are canonical residues 0..p-1 and multidegrees are integer
arrays.  Loading pushes every object through the engine constructors, so an
axiom violation surfaces as an error naming the object and the broken axiom
with indices; serializing and reloading preserves every object exactly.
Bare names without a file on disk resolve against the shipped corpus.
"""

from __future__ import annotations

import json
import os
from importlib import resources

import numpy as np

from .fdalg import Bimodule, FDAlgebra, FDModule
from .graded import GradedModule, MonomialIdeal, PolyRing, _relation_terms
from .linalg import Field


class WorkspaceError(ValueError):
    """A workspace file that cannot be loaded or a reference that does not
    resolve."""


class Workspace:
    """Named algebras, modules, bimodules, rings, graded modules, ideals,
    sample lists, and defaults, all over one prime field."""

    def __init__(self, field: Field, name: str = "workspace"):
        self.field = field
        self.name = name
        self.algebras = {}
        self.modules = {}
        self.bimodules = {}
        self.rings = {}
        self.graded_modules = {}
        self.ideals = {}
        self.samples = {}
        self.defaults = {}

    def _get(self, table: dict, kind: str, name):
        try:
            return table[name]
        except KeyError:
            raise WorkspaceError(f"workspace {self.name!r} has no {kind} "
                                 f"named {name!r}") from None

    def algebra(self, name) -> FDAlgebra:
        return self._get(self.algebras, "algebra", name)

    def module(self, name) -> FDModule:
        return self._get(self.modules, "module", name)

    def bimodule(self, name) -> Bimodule:
        return self._get(self.bimodules, "bimodule", name)

    def ring(self, name) -> PolyRing:
        return self._get(self.rings, "ring", name)

    def graded_module(self, name) -> GradedModule:
        return self._get(self.graded_modules, "graded module", name)

    def ideal(self, name) -> MonomialIdeal:
        return self._get(self.ideals, "monomial ideal", name)

    def sample(self, name) -> list:
        return list(self._get(self.samples, "sample list", name))


def _section(data, key) -> dict:
    got = data.get(key) or {}
    if not isinstance(got, dict):
        raise WorkspaceError(f"section {key!r} must be a mapping")
    return got


def _require(spec: dict, key: str, where: str):
    if key not in spec:
        raise WorkspaceError(f"{where}: missing key {key!r}")
    return spec[key]


def workspace_from_dict(data: dict, name: str = "workspace") -> Workspace:
    """Build and validate a workspace from its plain-dict form."""
    if not isinstance(data, dict):
        raise WorkspaceError("workspace document must be a mapping")
    fspec = data.get("field") or {}
    try:
        field = Field(int(fspec.get("p", 5)))
    except ValueError as exc:
        raise WorkspaceError(f"field: {exc}") from exc
    ws = Workspace(field, name=str(data.get("name", name)))

    for aname, spec in _section(data, "algebras").items():
        where = f"algebra {aname!r}"
        try:
            ws.algebras[aname] = FDAlgebra(
                field, _require(spec, "structure_constants", where),
                _require(spec, "unit", where), name=aname,
                radical_basis=spec.get("radical_basis"))
        except ValueError as exc:
            raise WorkspaceError(f"{where}: {exc}") from exc

    for mname, spec in _section(data, "modules").items():
        where = f"module {mname!r}"
        alg = ws._get(ws.algebras, "algebra", _require(spec, "algebra", where))
        try:
            ws.modules[mname] = FDModule(alg, _require(spec, "action", where),
                                         spec.get("side", "left"), name=mname)
        except ValueError as exc:
            raise WorkspaceError(f"{where}: {exc}") from exc

    for bname, spec in _section(data, "bimodules").items():
        where = f"bimodule {bname!r}"
        left = ws._get(ws.algebras, "algebra",
                       _require(spec, "left_algebra", where))
        right = ws._get(ws.algebras, "algebra",
                        _require(spec, "right_algebra", where))
        try:
            ws.bimodules[bname] = Bimodule(
                left, right, _require(spec, "left_action", where),
                _require(spec, "right_action", where), name=bname)
        except ValueError as exc:
            raise WorkspaceError(f"{where}: {exc}") from exc

    for rname, spec in _section(data, "rings").items():
        where = f"ring {rname!r}"
        variables = _require(spec, "variables", where)
        try:
            ws.rings[rname] = PolyRing(field, len(variables), variables)
        except ValueError as exc:
            raise WorkspaceError(f"{where}: {exc}") from exc

    for gname, spec in _section(data, "graded_modules").items():
        where = f"graded module {gname!r}"
        ring = ws._get(ws.rings, "ring", _require(spec, "ring", where))
        relations = [[(int(j), int(c), tuple(int(e) for e in a))
                      for j, c, a in rel]
                     for rel in spec.get("relations", [])]
        try:
            ws.graded_modules[gname] = GradedModule(
                ring, _require(spec, "generator_degrees", where),
                relations, name=gname)
        except ValueError as exc:
            raise WorkspaceError(f"{where}: {exc}") from exc

    for iname, spec in _section(data, "ideals").items():
        where = f"ideal {iname!r}"
        ring = ws._get(ws.rings, "ring", _require(spec, "ring", where))
        try:
            ws.ideals[iname] = MonomialIdeal(
                ring, _require(spec, "generators", where), name=iname)
        except ValueError as exc:
            raise WorkspaceError(f"{where}: {exc}") from exc

    for sname, listed in _section(data, "samples").items():
        names = list(listed)
        for entry in names:
            if entry not in ws.modules and entry not in ws.graded_modules:
                raise WorkspaceError(f"sample list {sname!r} references "
                                     f"undefined module {entry!r}")
        ws.samples[sname] = names

    defaults = data.get("defaults") or {}
    if not isinstance(defaults, dict):
        raise WorkspaceError("section 'defaults' must be a mapping")
    ws.defaults = dict(defaults)
    return ws


def workspace_to_dict(ws: Workspace) -> dict:
    """Serialize a workspace; loading the result reproduces every object."""
    out = {"name": ws.name, "field": {"p": ws.field.p}}
    if ws.algebras:
        algs = {}
        for name, alg in ws.algebras.items():
            spec = {"structure_constants": alg.sc.tolist(),
                    "unit": alg.unit.tolist()}
            if alg._supplied_radical is not None:
                spec["radical_basis"] = alg._supplied_radical.tolist()
            algs[name] = spec
        out["algebras"] = algs
    if ws.modules:
        out["modules"] = {
            name: {"algebra": _keyof(ws.algebras, mod.algebra),
                   "side": mod.side,
                   "action": [m.tolist() for m in mod.action]}
            for name, mod in ws.modules.items()}
    if ws.bimodules:
        out["bimodules"] = {
            name: {"left_algebra": _keyof(ws.algebras, bim.left_algebra),
                   "right_algebra": _keyof(ws.algebras, bim.right_algebra),
                   "left_action": [m.tolist() for m in bim.left_action],
                   "right_action": [m.tolist() for m in bim.right_action]}
            for name, bim in ws.bimodules.items()}
    if ws.rings:
        out["rings"] = {name: {"variables": list(ring.names)}
                        for name, ring in ws.rings.items()}
    if ws.graded_modules:
        out["graded_modules"] = {
            name: {"ring": _keyof(ws.rings, mod.ring),
                   "generator_degrees": [list(g) for g in mod.gen_degrees],
                   "relations": [[[j, int(c), list(a)] for j, c, a in rel]
                                 for rel in _relation_terms(mod)]}
            for name, mod in ws.graded_modules.items()}
    if ws.ideals:
        out["ideals"] = {name: {"ring": _keyof(ws.rings, ideal.ring),
                                "generators": [list(g) for g in ideal.gens]}
                         for name, ideal in ws.ideals.items()}
    if ws.samples:
        out["samples"] = {name: list(v) for name, v in ws.samples.items()}
    if ws.defaults:
        out["defaults"] = dict(ws.defaults)
    return out


def _keyof(table: dict, obj) -> str:
    for name, val in table.items():
        if val is obj:
            return name
    raise WorkspaceError(f"object {getattr(obj, 'name', obj)!r} is not "
                         "registered in the workspace")


def _corpus_path(name: str):
    base = resources.files("homolab").joinpath("data")
    for candidate in (name, f"{name}.workspace.json", f"{name}.json"):
        p = base.joinpath(candidate)
        if p.is_file():
            return p
    return None


def builtin_names() -> list:
    """Names of the shipped corpus workspaces."""
    base = resources.files("homolab").joinpath("data")
    suffix = ".workspace.json"
    return sorted(entry.name[:-len(suffix)] for entry in base.iterdir()
                  if entry.name.endswith(suffix))


def load_workspace(path) -> Workspace:
    """Load a workspace from a JSON file, or from the shipped corpus when
    the argument is a bare fixture name like "r2"."""
    p = str(path)
    if os.path.exists(p):
        with open(p, "r", encoding="utf-8") as fh:
            text = fh.read()
        label = os.path.splitext(os.path.basename(p))[0]
    else:
        found = _corpus_path(p)
        if found is None:
            raise WorkspaceError(
                f"no workspace file or built-in fixture named {p!r}; "
                f"shipped fixtures: {', '.join(builtin_names())}")
        text = found.read_text(encoding="utf-8")
        label = p
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise WorkspaceError(f"cannot parse workspace {p!r}: {exc}") from exc
    return workspace_from_dict(data, name=label)


def save_workspace(ws: Workspace, path) -> None:
    """Write the canonical JSON form of a workspace."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(workspace_to_dict(ws), fh, indent=2, sort_keys=True)
        fh.write("\n")
