"""Pipeline configuration: a TOML file with nested sections.

The default configuration ships with the package (``data/default.toml``) and
describes the genus-2 example in full.  Every element, word and rational is a
string in the same syntax the CLI accepts.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Mapping

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .covers import Homomorphism
from .enumeration import CandidateConstraints
from .exact_linalg import METRIC_PRESETS, MetricAssignment, as_rational
from .group_core import FiniteAffineGroup, GroupElement, Subgroup, parse_element, parse_elements
from .words import (SUBSURFACE, SURFACE, Alphabet, Endomorphism, Word, WordSyntaxError,
                    change_basis, parse_word)


class ConfigError(ValueError):
    pass


@dataclass
class PipelineConfig:
    modulus: int
    rho_images: dict[str, str]
    subgroups: dict[str, str]
    curve_surface: str
    curve_subsurface: str
    basis: dict[str, str]
    basis_inverse: dict[str, str]
    involution: dict[str, str]
    gamma_table: list[str]
    crossing_facts: list[list[str]]
    disjoint_facts: list[list[str]]
    printed_K_orbits: list[list[int]]
    metric_preset: str | None
    metric_file: str | None
    target_trace: str
    enumeration: dict[str, Any]
    checks: dict[str, int]
    source: str = "<default>"
    raw: dict = field(default_factory=dict, repr=False)

    # -- derived objects ------------------------------------------------------------

    def group(self) -> FiniteAffineGroup:
        return FiniteAffineGroup(self.modulus)

    def element(self, text: str) -> GroupElement:
        return parse_element(text, self.modulus)

    def rho(self) -> Homomorphism:
        g = self.group()
        return Homomorphism(Alphabet(tuple(self.rho_images)),
                            {k: parse_element(v, self.modulus) for k, v in self.rho_images.items()}, g)

    def rho_sub(self) -> Homomorphism:
        return self.rho().on(SUBSURFACE, self.basis_words())

    def basis_words(self) -> dict[str, Word]:
        defs = {g: parse_word(g) for g in SUBSURFACE if g not in self.basis}
        defs.update({g: parse_word(w) for g, w in self.basis.items()})
        return defs

    def subgroup(self, name: str) -> Subgroup:
        try:
            text = self.subgroups[name]
        except KeyError:
            raise ConfigError(f"no subgroup named {name!r}; known: {sorted(self.subgroups)}") from None
        return Subgroup(self.group(), parse_elements(text, self.modulus), name)

    def alpha(self) -> Word:
        return parse_word(self.curve_surface, SURFACE)

    def alpha_sub(self) -> Word:
        return parse_word(self.curve_subsurface, SUBSURFACE)

    def tau(self) -> Endomorphism:
        return Endomorphism.from_strings(self.involution, SURFACE)

    def tau_sub(self) -> Endomorphism:
        back = {g: parse_word(w, SUBSURFACE) for g, w in self.basis_inverse.items()}
        return change_basis(self.tau(), self.basis_words(), back, SUBSURFACE)

    def metric(self) -> MetricAssignment:
        if self.metric_file:
            return load_metric(self.metric_file)
        try:
            return METRIC_PRESETS[self.metric_preset or "calibrated"]()
        except KeyError:
            raise ConfigError(f"unknown metric preset {self.metric_preset!r}") from None

    def constraints(self) -> CandidateConstraints:
        e = self.enumeration
        fixed = tuple((parse_word(k).letters[0], int(v)) for k, v in e["fixed_letters"].items())
        return CandidateConstraints(fixed, int(e["b_surplus"]), int(e["max_b_letters"]),
                                    tuple(e["budget"]), True, SUBSURFACE)


def _section(data: Mapping, name: str) -> Mapping:
    if name not in data or not isinstance(data[name], Mapping):
        raise ConfigError(f"missing section [{name}]")
    return data[name]


def parse_config(data: Mapping, source: str = "<memory>") -> PipelineConfig:
    try:
        basis = dict(_section(data, "basis"))
        inverse = dict(basis.pop("inverse", {}))
        lifts = _section(data, "lifts")
        metric = data.get("metric", {})
        cfg = PipelineConfig(
            modulus=int(_section(data, "group")["modulus"]),
            rho_images=dict(_section(data, "homomorphism")),
            subgroups=dict(_section(data, "subgroups")),
            curve_surface=_section(data, "curve")["surface"],
            curve_subsurface=_section(data, "curve")["subsurface"],
            basis=basis,
            basis_inverse=inverse,
            involution=dict(_section(data, "involution")),
            gamma_table=list(lifts["gamma"]),
            crossing_facts=[list(p) for p in lifts.get("crossing", [])],
            disjoint_facts=[list(p) for p in lifts.get("disjoint", [])],
            printed_K_orbits=[list(o) for o in lifts.get("printed_K_orbits", [])],
            metric_preset=metric.get("preset"),
            metric_file=metric.get("file"),
            target_trace=str(metric.get("target_trace", "109505/2048")),
            enumeration=dict(_section(data, "enumeration")),
            checks={k: int(v) for k, v in data.get("checks", {}).items()},
            source=source,
            raw=dict(data),
        )
    except KeyError as exc:
        raise ConfigError(f"missing key {exc.args[0]!r} in {source}") from None
    validate(cfg)
    return cfg


def validate(cfg: PipelineConfig) -> None:
    """Parse every string once so errors surface before the pipeline runs."""
    try:
        cfg.rho()
        for name in cfg.subgroups:
            cfg.subgroup(name)
        cfg.alpha()
        cfg.alpha_sub()
        cfg.tau()
        cfg.tau_sub()
        for g in cfg.gamma_table:
            cfg.element(g)
        as_rational(cfg.target_trace)
        cfg.constraints()
    except (WordSyntaxError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"{cfg.source}: {exc}") from exc
    missing = set(cfg.alpha().generators()) - set(cfg.rho_images)
    if missing:
        raise ConfigError(f"curve uses generators without an image: {sorted(missing)}")


def load_config(path: str | Path) -> PipelineConfig:
    path = Path(path)
    try:
        data = tomllib.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    cfg = parse_config(data, str(path))
    if cfg.metric_file and not Path(cfg.metric_file).is_absolute():
        cfg.metric_file = str(path.parent / cfg.metric_file)
    return cfg


def default_config_text() -> str:
    return resources.files("sunadacheck").joinpath("data/default.toml").read_text(encoding="utf-8")


def default_config() -> PipelineConfig:
    return parse_config(tomllib.loads(default_config_text()), "default.toml (built in)")


def load_metric(path: str | Path) -> MetricAssignment:
    """Read a metric file: one key per generator holding a 2x2 array of rational strings."""
    path = Path(path)
    try:
        data = tomllib.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ConfigError(f"metric file not found: {path}") from None
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    rows = data.get("matrices", data)
    try:
        return MetricAssignment.from_strings({g: [[str(x) for x in r] for r in m] for g, m in rows.items()},
                                             path.stem)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ConfigError(f"{path}: {exc}") from None
