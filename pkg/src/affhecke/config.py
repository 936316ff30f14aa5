"""
Root-datum configuration files.

A datum file is a YAML mapping::

    type: B2               # Cartan factors joined by "x" or "×"; T<n> for a torus
    lattice: adjoint       # adjoint | sc | integer matrix rows | {roots: ..., coroots: ...}
    parameters:            # optional; S^aff labels s1.., a1.. -> symbol or rational
      s1: q1
      a1: q2
    k: {s1: k1}            # optional graded-Hecke parameters on simple roots
    gamma: none            # none | all | list of permutations of the simple roots

A bare string such as ``"A2"`` or ``"A2:sc"`` is accepted wherever a path is,
and a rank-0 datum is written ``type: T0``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Any

import yaml

from affhecke.root_datum import RootDatum, RootDatumError, build_root_datum
from affhecke.weyl import DiagramAutomorphism, diagram_automorphisms

__all__ = ["ConfigError", "DatumConfig", "load_datum", "parse_datum"]

KNOWN_KEYS = ("type", "lattice", "parameters", "k", "gamma", "name")


class ConfigError(ValueError):
    """A datum file that cannot be parsed or validated; the message names the line."""


@dataclass
class DatumConfig:
    rd: RootDatum
    gammas: tuple = ()
    parameters: Any = None
    k: Any = None
    name: str = ""
    source: str = ""
    raw: dict = field(default_factory=dict, repr=False)

    @property
    def label(self) -> str:
        g = f"⋊Γ{len(self.gammas)}" if self.gammas else ""
        return self.name or f"{self.rd.type_label}{g}"

    def hecke_algebra(self):
        from affhecke.hecke import HeckeAlgebra
        return HeckeAlgebra.from_datum(self.rd, self.parameters)

    def graded_algebra(self, **kw):
        from affhecke.graded import GradedHeckeAlgebra
        return GradedHeckeAlgebra(self.rd, self.gammas, k=self.k, **kw)

    def describe(self) -> dict:
        return {
            "type": self.raw.get("type"),
            "lattice": self.raw.get("lattice", "adjoint"),
            "gamma": [list(g.perm) for g in self.gammas],
        }


def _line_map(text: str) -> dict:
    """Line numbers (1-based) of the top-level keys."""
    try:
        node = yaml.compose(text)
    except yaml.YAMLError:
        return {}
    if not isinstance(node, yaml.MappingNode):
        return {}
    return {k.value: v.start_mark.line + 1 for k, v in node.value}


def _gammas(rd: RootDatum, spec, where: str) -> tuple:
    if spec is None or spec == "none" or spec == []:
        return ()
    autos = diagram_automorphisms(rd)
    ident = tuple(range(rd.semisimple_rank))
    if spec == "all":
        return tuple(a for a in autos if a.perm != ident)
    if not isinstance(spec, list):
        raise ConfigError(f"{where}: gamma must be 'none', 'all' or a list of permutations")
    out = []
    by_perm = {a.perm: a for a in autos}
    for p in spec:
        try:
            perm = tuple(int(i) for i in p)
        except (TypeError, ValueError):
            raise ConfigError(f"{where}: cannot read permutation {p!r}") from None
        if perm not in by_perm:
            raise ConfigError(f"{where}: {list(perm)} is not a diagram automorphism of {rd.type_label}")
        if perm != ident:
            out.append(by_perm[perm])
    return tuple(out)


def _check_names(names, where: str):
    from affhecke.homology import reserved_identifiers
    clash = sorted(set(names) & reserved_identifiers())
    if clash:
        raise ConfigError(f"{where}: parameter symbol {clash[0]!r} is reserved "
                          "(it occurs in homology reports); choose another name")


def parse_datum(data, source: str = "<string>", lines: dict | None = None) -> DatumConfig:
    lines = lines or {}

    def where(key):
        return f"{source}:{lines[key]}" if key in lines else source

    if isinstance(data, str):
        kind, _, lat = data.partition(":")
        data = {"type": kind, "lattice": lat or "adjoint"}
    if not isinstance(data, dict):
        raise ConfigError(f"{source}: expected a mapping with a 'type' field")
    for key in data:
        if key not in KNOWN_KEYS:
            raise ConfigError(f"{where(key)}: unknown field {key!r} (expected one of {', '.join(KNOWN_KEYS)})")
    if "type" not in data or data["type"] is None:
        raise ConfigError(f"{source}: missing field 'type'")
    type_spec = str(data["type"])
    lat = data.get("lattice", "adjoint")
    if isinstance(lat, list):
        try:
            if any(isinstance(x, (float, bool)) for row in lat for x in row):
                raise ValueError
            lat = tuple(tuple(int(x) for x in row) for row in lat)
        except (TypeError, ValueError):
            raise ConfigError(f"{where('lattice')}: lattice matrix must have integer entries") from None
    try:
        rd = build_root_datum(type_spec, lat)
    except RootDatumError as exc:
        key = "lattice" if "lattice" in str(exc).lower() else "type"
        raise ConfigError(f"{where(key)}: {exc}") from None
    gammas = _gammas(rd, data.get("gamma"), where("gamma"))
    params = data.get("parameters")
    if params is not None and not isinstance(params, (dict, str, int, float)):
        raise ConfigError(f"{where('parameters')}: parameters must be a mapping or a single value")
    if isinstance(params, float):
        raise ConfigError(f"{where('parameters')}: use an exact rational such as '1/2', not {params}")
    if params is not None:
        # validate against the conjugacy classes of S^aff now, so errors carry a line
        from affhecke.parameters import ParameterError, ParamFunction
        from affhecke.weyl import ExtendedAffineWeyl
        try:
            pf = ParamFunction.from_spec(ExtendedAffineWeyl(rd), params)
        except ParameterError as exc:
            raise ConfigError(f"{where('parameters')}: {exc}") from None
        _check_names(pf.ring.names, where("parameters"))
    if data.get("k") is not None:
        from affhecke.graded import GradedHeckeAlgebra
        try:
            A = GradedHeckeAlgebra(rd, gammas, k=data["k"])
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"{where('k')}: {exc}") from None
        _check_names(A.ring.names, where("k"))
    return DatumConfig(rd, gammas, params, data.get("k"), str(data.get("name", "")), source, dict(data))


def load_datum(path_or_spec: str) -> DatumConfig:
    """Read a datum file, or parse an inline ``"A2"`` / ``"B2:sc"`` spec."""
    if os.path.exists(path_or_spec):
        with open(path_or_spec, encoding="utf-8") as fh:
            text = fh.read()
        try:
            data = yaml.safe_load(text)
        except yaml.YAMLError as exc:
            mark = getattr(exc, "problem_mark", None)
            line = f":{mark.line + 1}" if mark is not None else ""
            raise ConfigError(f"{path_or_spec}{line}: invalid YAML ({getattr(exc, 'problem', exc)})") from None
        if data is None:
            raise ConfigError(f"{path_or_spec}: empty datum file")
        return parse_datum(data, path_or_spec, _line_map(text))
    if path_or_spec.endswith((".yaml", ".yml")):
        raise ConfigError(f"{path_or_spec}: no such file")
    return parse_datum(path_or_spec, "<inline>")
