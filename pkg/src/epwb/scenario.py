"""Scenario files: which ring, module, group, weight and bounds to run."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

from .errors import SpecError
from .module import build_module, parse_module_spec
from .ring import build_ring, canonical_json, parse_ring_spec
from .symmetry import aut_group, subgroup_closure, trivial_group
from .weights import KINDS

MODES = ("verify", "search", "certify")


def load_json_arg(value, what):
    """Accept inline JSON or a path to a JSON file."""
    if isinstance(value, (dict, list)):
        return value
    if isinstance(value, str) and os.path.isfile(value):
        try:
            with open(value) as fh:
                return json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise SpecError(f"cannot read {what} from {value}: {exc}") from None
    try:
        return json.loads(value)
    except (TypeError, json.JSONDecodeError):
        raise SpecError(f"{what} is neither a file nor valid JSON: {value!r}") from None


def parse_group_spec(value):
    if value is None:
        return "full-aut"
    if isinstance(value, str) and value in ("full-aut", "trivial"):
        return value
    if isinstance(value, str):
        value = load_json_arg(value, "group spec")
        if isinstance(value, str):
            return parse_group_spec(value)
    if isinstance(value, list) and all(isinstance(g, list) for g in value):
        return [[int(x) for x in g] for g in value]
    raise SpecError('group spec must be "full-aut", "trivial" or a list of image arrays')


def build_group(A, spec, full=None):
    if spec == "full-aut":
        return full if full is not None else aut_group(A)
    if spec == "trivial":
        return trivial_group(A)
    return subgroup_closure(A, spec)


@dataclass
class Scenario:
    ring: dict
    module: dict
    group: object = "full-aut"
    weight: str = "swc"
    n_min: int = 1
    n_max: int = 3
    gen_max: int = 2
    mode: str = "verify"

    def __post_init__(self):
        self.ring = parse_ring_spec(self.ring)
        self.module = parse_module_spec(self.module)
        self.group = parse_group_spec(self.group)
        if self.weight not in KINDS:
            raise SpecError(f"weight must be one of {KINDS}")
        if self.mode not in MODES:
            raise SpecError(f"mode must be one of {MODES}")
        for name in ("n_min", "n_max", "gen_max"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise SpecError(f"{name} must be a nonnegative integer")
        if self.n_min < 1 or self.n_min > self.n_max:
            raise SpecError("need 1 <= n_min <= n_max")

    @classmethod
    def from_dict(cls, data):
        known = {"ring", "module", "group", "weight", "n_min", "n_max", "gen_max", "mode"}
        extra = set(data) - known - {"out"}
        if extra:
            raise SpecError(f"unknown scenario keys {sorted(extra)}")
        if "ring" not in data or "module" not in data:
            raise SpecError("scenario needs ring and module")
        return cls(**{k: v for k, v in data.items() if k in known})

    def to_dict(self):
        return {"ring": self.ring, "module": self.module, "group": self.group,
                "weight": self.weight, "n_min": self.n_min, "n_max": self.n_max,
                "gen_max": self.gen_max, "mode": self.mode}

    def canonical(self):
        return canonical_json(self.to_dict())

    def build(self):
        ring = build_ring(self.ring)
        return ring, build_module(ring, self.module)
