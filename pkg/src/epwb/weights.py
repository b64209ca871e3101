"""Hamming weight, symmetrized weight composition and annihilator weight.

Profiles are sparse maps with canonical keys (orbit representatives for
swc, ideal element tuples for aw), so two profiles are equal exactly when
their ``counts`` are equal.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .module import FiniteModule
from .symmetry import OrbitIndex, SymmetryGroup, aut_group, orbits

KINDS = ("hamming", "swc", "aw")


@dataclass(frozen=True)
class WeightProfile:
    kind: str
    counts: tuple  # sorted (key, count) pairs; for hamming a single (None, weight)

    @property
    def n(self):
        if self.kind == "hamming":
            raise AttributeError("hamming profiles do not record length")
        return sum(c for _, c in self.counts)

    def as_dict(self):
        return dict(self.counts)

    def get(self, key, default=0):
        return self.as_dict().get(key, default)

    def to_json(self):
        if self.kind == "hamming":
            return {"kind": "hamming", "weight": self.counts[0][1]}
        if self.kind == "swc":
            return {"kind": "swc", "counts": [{"orbit": k, "n": c} for k, c in self.counts]}
        return {"kind": "aw", "counts": [{"ideal": list(k), "n": c} for k, c in self.counts]}


def hamming(x, zero=0) -> int:
    return sum(1 for a in x if a != zero)


def hamming_profile(x, zero=0):
    return WeightProfile("hamming", ((None, hamming(x, zero)),))


def swc_profile(x, orbit_index: OrbitIndex) -> WeightProfile:
    counts = Counter(orbit_index.representative(a) for a in x)
    return WeightProfile("swc", tuple(sorted(counts.items())))


def aw_profile(x, A: FiniteModule) -> WeightProfile:
    counts = Counter(A.annihilator(a).elements for a in x)
    return WeightProfile("aw", tuple(sorted(counts.items(), key=lambda kv: (len(kv[0]), kv[0]))))


class WeightContext:
    """Everything needed to evaluate one weight kind on words over A."""

    def __init__(self, A: FiniteModule, kind="swc", group: SymmetryGroup | None = None):
        if kind not in KINDS:
            raise ValueError(f"unknown weight kind {kind!r}")
        self.module = A
        self.kind = kind
        if kind == "swc" and group is None:
            group = aut_group(A)
        self.group = group

    @cached_property
    def orbit_index(self):
        return orbits(self.module, self.group)

    @cached_property
    def classes(self):
        """Per element of A, the class id whose multiset defines the profile."""
        A = self.module
        if self.kind == "hamming":
            return (np.arange(A.order) != A.zero).astype(np.int64)
        if self.kind == "swc":
            return np.asarray(self.orbit_index.orbit_of, dtype=np.int64)
        return np.asarray(A.ann_keys, dtype=np.int64)

    def profile(self, x):
        if self.kind == "hamming":
            return hamming_profile(x, self.module.zero)
        if self.kind == "swc":
            return swc_profile(x, self.orbit_index)
        return aw_profile(x, self.module)

    def profile_ids(self, digits):
        """Integer id per row of an ``(m, n)`` word array; equal iff equal profiles."""
        digits = np.asarray(digits)
        if digits.shape[1] == 0:
            return np.zeros(len(digits), dtype=np.int64)
        cls = self.classes[digits]
        if self.kind == "hamming":
            return cls.sum(axis=1)
        k = int(self.classes.max()) + 1
        hist = np.zeros((len(digits), k), dtype=np.int64)
        rows = np.repeat(np.arange(len(digits)), digits.shape[1])
        np.add.at(hist, (rows, cls.ravel()), 1)
        weights = (digits.shape[1] + 1) ** np.arange(k, dtype=object)
        if (digits.shape[1] + 1) ** k < 2**62:
            return hist @ np.asarray(weights, dtype=np.int64)
        _, inv = np.unique(hist, axis=0, return_inverse=True)
        return inv.reshape(-1)


def profile_preserved(f, kind, context: WeightContext) -> bool:
    """True iff every codeword of ``f``'s source has the profile of its image.

    ``f`` is anything exposing ``codeword_pairs()`` as ``(digits, image_digits)``
    arrays, e.g. an IsometryWitness.
    """
    if context.kind != kind:
        context = WeightContext(context.module, kind, context.group)
    src, dst = f.codeword_pairs()
    return bool((context.profile_ids(src) == context.profile_ids(dst)).all())
