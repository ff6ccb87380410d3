"""Fusion configuration and its flat YAML file format.

The config file is a flat key/value YAML document; nested parameter
groups use dotted keys (``nlm_initial.h: 0.1``).  Missing keys take the
defaults below, unknown keys are rejected so typos cannot silently fall
back to defaults.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

import yaml

from .chroma import SlopeClamp
from .denoise import NlmParams
from .detail import DetailSolverParams


@dataclass
class FusionConfig:
    """All pipeline tunables.

    ``mu_d`` is authoritative for the detail stage and is mirrored into
    ``detail_solver.mu_d`` on construction.
    """

    patch_m: int = 5
    mu_c: float = 0.05
    mu_d: float = 0.1
    nlm_initial: NlmParams = field(default_factory=NlmParams)
    nlm_base: NlmParams = field(default_factory=NlmParams)
    detail_solver: DetailSolverParams = field(default_factory=DetailSolverParams)
    slope_clamp: SlopeClamp = field(default_factory=SlopeClamp)
    dump_intermediates: bool = False

    def __post_init__(self):
        self.detail_solver = dataclasses.replace(self.detail_solver, mu_d=self.mu_d)

    def validate(self) -> None:
        if self.patch_m < 3 or self.patch_m % 2 == 0:
            raise ValueError(f"patch_m must be odd and >= 3, got {self.patch_m}")
        if not self.mu_c > 0:
            raise ValueError(f"mu_c must be positive, got {self.mu_c}")
        self.nlm_initial.validate()
        self.nlm_base.validate()
        self.detail_solver.validate()
        self.slope_clamp.validate()


_TOP_KEYS = ("patch_m", "mu_c", "mu_d", "dump_intermediates")
_GROUPS = {
    "nlm_initial": ("patch_radius", "search_radius", "h"),
    "nlm_base": ("patch_radius", "search_radius", "h"),
    "detail_solver": ("beta0", "beta_growth", "outer_iters", "inner_tol"),
    "slope_clamp": ("eps_slope", "max_gain"),
}


def config_to_dict(cfg: FusionConfig) -> dict:
    """Flatten a config to the dotted-key dictionary of the file format."""
    out: dict = {k: getattr(cfg, k) for k in _TOP_KEYS}
    for group, keys in _GROUPS.items():
        sub = getattr(cfg, group)
        for k in keys:
            out[f"{group}.{k}"] = getattr(sub, k)
    return out


def config_from_dict(data: dict) -> FusionConfig:
    """Build a config from a flat dictionary; unknown keys are an error."""
    known = set(_TOP_KEYS) | {f"{g}.{k}" for g, keys in _GROUPS.items() for k in keys}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ValueError(f"unknown config keys: {', '.join(unknown)}")

    kwargs: dict = {k: data[k] for k in _TOP_KEYS if k in data}
    group_types = {
        "nlm_initial": NlmParams,
        "nlm_base": NlmParams,
        "detail_solver": DetailSolverParams,
        "slope_clamp": SlopeClamp,
    }
    for group, keys in _GROUPS.items():
        sub_kwargs = {k: data[f"{group}.{k}"] for k in keys if f"{group}.{k}" in data}
        if sub_kwargs:
            kwargs[group] = group_types[group](**sub_kwargs)
    cfg = FusionConfig(**kwargs)
    cfg.validate()
    return cfg


def load_config(path) -> FusionConfig:
    with open(path, "r", encoding="utf-8") as f:
        data = yaml.safe_load(f)
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ValueError(f"config file must be a flat key/value mapping: {path}")
    return config_from_dict(data)


def save_config(cfg: FusionConfig, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        yaml.safe_dump(config_to_dict(cfg), f, sort_keys=False)
