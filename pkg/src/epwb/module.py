"""Finite left modules over a FiniteRing.

A module stores an ``add`` table (M x M) and an ``act`` table (N x M) with
``act[r, a]`` the element ``r a``. Homomorphisms are image arrays indexed by
source element. Maps are searched by assigning images to a fixed generating
set in increasing index order, so every search is deterministic and yields
results lexicographically by generator images.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ._lattice import closure_lattice
from .errors import AxiomError, ResourceBoundError, SpecError
from .ring import (
    FiniteRing,
    LeftIdeal,
    is_field_like,
    matmul_tables,
    matrix_digits,
    matrix_index,
    galois_field_tables,
)

MAX_MODULE_ORDER = 256
DEFAULT_SUBMODULE_BOUND = 10**5

MODULE_KINDS = ("regular", "matrix-cols", "power", "tables")


class FiniteModule:
    def __init__(self, ring: FiniteRing, add, act, zero=None, spec=None, check=True):
        self.ring = ring
        self.add = np.asarray(add, dtype=np.int64)
        self.act = np.asarray(act, dtype=np.int64)
        if zero is None:
            zero = _find_identity(self.add)
        self.zero = int(zero)
        self.spec = spec
        if check:
            check_module_axioms(ring, self.add, self.act, self.zero)
        self.add.setflags(write=False)
        self.act.setflags(write=False)

    @property
    def order(self):
        return self.add.shape[0]

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"FiniteModule(order={self.order}, ring_order={self.ring.order})"

    @cached_property
    def ann_keys(self):
        """Per element, an int identifying its annihilator (equal iff equal ideals)."""
        zero_mask = self.act == self.zero
        _, inv = np.unique(zero_mask.T, axis=0, return_inverse=True)
        return inv.reshape(-1)

    def annihilator(self, a) -> LeftIdeal:
        return self.ring.ideal(np.flatnonzero(self.act[:, a] == self.zero))

    def span(self, gens):
        """Sorted elements of the submodule generated by ``gens``."""
        sp = np.array([self.zero])
        for g in gens:
            sp = np.unique(self.add[sp[:, None], self.act[:, g][None, :]])
        return sp

    @cached_property
    def generators(self):
        """Greedy generating set: repeatedly the smallest element not yet spanned."""
        gens = []
        covered = np.zeros(self.order, dtype=bool)
        covered[self.zero] = True
        sp = np.array([self.zero])
        while not covered.all():
            g = int(np.argmin(covered))
            gens.append(g)
            sp = np.unique(self.add[sp[:, None], self.act[:, g][None, :]])
            covered[sp] = True
        return tuple(gens)

    def submodule(self, elements):
        return Submodule(tuple(sorted(int(e) for e in set(elements))), self)

    @cached_property
    def whole(self):
        return self.submodule(range(self.order))

    def restrict(self, sub):
        """The submodule ``sub`` as a FiniteModule of its own.

        Returns ``(module, embed)`` where ``embed[i]`` is the parent index of
        local element ``i``.
        """
        elems = np.asarray(sub.elements)
        local = np.full(self.order, -1)
        local[elems] = np.arange(len(elems))
        add = local[self.add[np.ix_(elems, elems)]]
        act = local[self.act[:, elems]]
        return FiniteModule(self.ring, add, act, local[self.zero], check=False), elems


@dataclass(frozen=True, eq=False)
class Submodule:
    elements: tuple
    parent: FiniteModule = field(repr=False, compare=False)

    def __eq__(self, other):
        return isinstance(other, Submodule) and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return int(x) in self._set

    def __le__(self, other):
        return self._set <= other._set

    def __lt__(self, other):
        return self._set < other._set

    @cached_property
    def _set(self):
        return frozenset(self.elements)


@dataclass(frozen=True)
class ModuleMap:
    """An R-linear map given by the image of every source element."""

    source: FiniteModule = field(repr=False)
    target: FiniteModule = field(repr=False)
    images: tuple

    def __call__(self, a):
        return self.images[a]

    def is_additive(self):
        img = np.asarray(self.images)
        s = self.source
        return bool((img[s.add] == self.target.add[img[:, None], img[None, :]]).all())

    def is_equivariant(self):
        img = np.asarray(self.images)
        return bool((img[self.source.act] == self.target.act[:, img]).all())

    def is_injective(self):
        return len(set(self.images)) == len(self.images)


def _find_identity(add):
    r = np.arange(add.shape[0])
    hits = np.flatnonzero((add == r[None, :]).all(axis=1))
    if len(hits) == 0:
        raise AxiomError("additive identity")
    return int(hits[0])


def _first(bad):
    idx = np.argwhere(bad)
    return tuple(int(i) for i in idx[0]) if len(idx) else None


def check_module_axioms(ring, add, act, zero):
    add = np.asarray(add)
    act = np.asarray(act)
    if add.ndim != 2 or add.shape[0] != add.shape[1]:
        raise AxiomError("addition table must be square")
    m = add.shape[0]
    if act.shape != (ring.order, m):
        raise AxiomError(f"action table must have shape ({ring.order}, {m})")
    for name, t in (("addition", add), ("action", act)):
        if t.min() < 0 or t.max() >= m:
            raise AxiomError(f"{name} closure", _first((t < 0) | (t >= m)))
    a = np.arange(m)
    R = np.arange(ring.order)
    checks = [
        ("additive identity", lambda: (add[zero] != a) | (add[:, zero] != a)),
        ("additive associativity", lambda:
            add[add[:, :, None], a[None, None, :]] != add[a[:, None, None], add[None, :, :]]),
        ("additive commutativity", lambda: add != add.T),
        ("additive inverses", lambda: ~(add == zero).any(axis=1)),
        ("r(a+b) = ra + rb", lambda: act[:, add] != add[act[:, :, None], act[:, None, :]]),
        ("(r+s)a = ra + sa", lambda:
            act[ring.add] != add[act[:, None, :], act[None, :, :]]),
        ("(rs)a = r(sa)", lambda:
            act[ring.mul] != act[R[:, None, None], act[None, :, :]]),
        ("1a = a", lambda: act[ring.one] != a),
    ]
    for axiom, test in checks:
        bad = test()
        if bad.any():
            raise AxiomError(axiom, _first(bad))


# -- construction ------------------------------------------------------------


def parse_module_spec(spec):
    if isinstance(spec, str):
        try:
            spec = json.loads(spec)
        except json.JSONDecodeError as exc:
            raise SpecError(f"module spec is not valid JSON: {exc}") from None
    if not isinstance(spec, dict) or spec.get("kind") not in MODULE_KINDS:
        raise SpecError(f"module spec needs kind in {MODULE_KINDS}, got {spec!r}")
    kind = spec["kind"]
    allowed = {
        "regular": set(), "matrix-cols": {"k"}, "power": {"base", "n"},
        "tables": {"add", "act", "zero"},
    }[kind]
    extra = set(spec) - allowed - {"kind"}
    if extra:
        raise SpecError(f"{kind} module spec has unknown keys {sorted(extra)}")
    required = {"regular": (), "matrix-cols": ("k",), "power": ("base", "n"),
                "tables": ("add", "act")}[kind]
    missing = [k for k in required if k not in spec]
    if missing:
        raise SpecError(f"{kind} module spec missing {missing}")
    if kind == "matrix-cols" and (not isinstance(spec["k"], int) or spec["k"] < 1):
        raise SpecError("matrix-cols needs an integer k >= 1")
    if kind == "power":
        if not isinstance(spec["n"], int) or spec["n"] < 0:
            raise SpecError("power needs an integer n >= 0")
        spec = dict(spec, base=parse_module_spec(spec["base"]))
    return dict(spec)


def _module_order(ring, spec):
    kind = spec["kind"]
    if kind == "regular":
        return ring.order
    if kind == "matrix-cols":
        shape = is_field_like(ring)
        if shape is None:
            raise SpecError("matrix-cols module needs a matrix ring or a finite field")
        m, q = shape
        return q ** (m * spec["k"])
    if kind == "power":
        return _module_order(ring, spec["base"]) ** spec["n"]
    return len(spec["add"])


def build_module(ring: FiniteRing, spec) -> FiniteModule:
    """Construct a module over ``ring`` from a module spec."""
    spec = parse_module_spec(spec)
    order = _module_order(ring, spec)
    if order > MAX_MODULE_ORDER:
        raise SpecError(f"module order {order} exceeds supported limit {MAX_MODULE_ORDER}")
    kind = spec["kind"]
    if kind == "regular":
        return FiniteModule(ring, ring.add, ring.mul, ring.zero, spec, check=False)
    if kind == "matrix-cols":
        m, q = is_field_like(ring)
        k = spec["k"]
        fadd, fmul = galois_field_tables(q)
        left = matrix_digits(q, m, m)
        cols = matrix_digits(q, m, k)
        n = len(cols)
        add = matrix_index(fadd[cols[:, None], cols[None, :]].reshape(-1, m, k), q)
        act = matrix_index(matmul_tables(left, cols, fadd, fmul).reshape(-1, m, k), q)
        return FiniteModule(ring, add.reshape(n, n), act.reshape(ring.order, n), 0, spec,
                            check=False)
    if kind == "power":
        base = build_module(ring, spec["base"])
        return direct_power(base, spec["n"], spec)
    return FiniteModule(ring, spec["add"], spec["act"], spec.get("zero"), spec)


def direct_power(base, n, spec=None):
    """``base^n`` with lexicographic element indexing (first coordinate most significant)."""
    b = base.order
    count = b**n
    idx = np.arange(count)
    powers = b ** np.arange(n - 1, -1, -1)
    dig = (idx[:, None] // powers[None, :]) % b if n else np.zeros((1, 0), dtype=np.int64)
    add = (base.add[dig[:, None, :], dig[None, :, :]] @ powers) if n else np.zeros((1, 1))
    act = (base.act[:, dig] @ powers) if n else np.zeros((base.ring.order, 1))
    zero = int(np.dot([base.zero] * n, powers)) if n else 0
    return FiniteModule(base.ring, add, act, zero, spec, check=False)


def direct_sum(first, second):
    """``first x second`` with index ``a * |second| + b``."""
    assert first.ring is second.ring
    m1, m2 = first.order, second.order
    a = np.repeat(np.arange(m1), m2)
    b = np.tile(np.arange(m2), m1)
    add = first.add[a[:, None], a[None, :]] * m2 + second.add[b[:, None], b[None, :]]
    act = first.act[:, a] * m2 + second.act[:, b]
    return FiniteModule(first.ring, add, act, first.zero * m2 + second.zero, check=False)


# -- structure ---------------------------------------------------------------


def annihilator(A: FiniteModule, a) -> LeftIdeal:
    return A.annihilator(a)


def rho_classes(A: FiniteModule) -> list:
    """Partition of A by equal annihilator, as ``(ideal, members)`` pairs.

    Classes are ordered by their smallest member.
    """
    groups = {}
    for a in range(A.order):
        groups.setdefault(int(A.ann_keys[a]), []).append(a)
    classes = sorted(groups.values(), key=lambda c: c[0])
    return [(A.annihilator(c[0]), tuple(c)) for c in classes]


def submodules(A: FiniteModule, bound=DEFAULT_SUBMODULE_BOUND) -> list:
    if A.order > MAX_MODULE_ORDER:
        raise ResourceBoundError("module order", MAX_MODULE_ORDER, A.order)
    return [A.submodule(t) for t in closure_lattice(A.add, A.act, bound)]


def minimal_submodules(A: FiniteModule) -> list:
    """Minimal nonzero submodules; each is ``R a`` for any nonzero member ``a``."""
    seen = {}
    for a in range(A.order):
        if a == A.zero:
            continue
        ra = A.span([a])
        minimal = all(len(A.span([b])) == len(ra) for b in ra if b != A.zero)
        if minimal:
            seen.setdefault(tuple(int(x) for x in ra), None)
    subs = [A.submodule(t) for t in seen]
    subs.sort(key=lambda s: (len(s), s.elements))
    return subs


def socle(A: FiniteModule) -> Submodule:
    """Sum of all minimal nonzero submodules."""
    total = np.array([A.zero])
    for S in minimal_submodules(A):
        total = np.unique(A.add[total[:, None], np.asarray(S.elements)[None, :]])
    return A.submodule(total)


def is_cyclic(A: FiniteModule, S: Submodule) -> bool:
    n = len(S)
    return any(len(np.unique(A.act[:, a])) == n for a in S.elements)


def cyclic_generator(A, S):
    for a in S.elements:
        if len(np.unique(A.act[:, a])) == len(S):
            return a
    return None


# -- homomorphism search ------------------------------------------------------


def injective_homs(src, dst, gens=None, allowed=None):
    """Yield image arrays of every injective R-linear map ``src -> dst``.

    Images are assigned to ``gens`` (default: the greedy generating set) in
    increasing index order, so maps come out lexicographically by generator
    images. ``allowed[j]``, if given, is a boolean mask over ``dst`` that
    restricts the image of the j-th generator.
    """
    gens = src.generators if gens is None else tuple(gens)
    if src.order > dst.order:
        return
    key_map = _shared_ann_keys(src, dst)
    src_keys, dst_keys = key_map
    masks = []
    for j, g in enumerate(gens):
        mask = dst_keys == src_keys[g]
        if allowed is not None:
            mask = mask & allowed[j]
        masks.append(np.flatnonzero(mask))
    full = np.full(src.order, -1)
    yield from _extend(src, dst, gens, masks, 0, np.array([src.zero]), np.array([dst.zero]), full)


def _extend(src, dst, gens, masks, j, sp, img, scratch):
    if j == len(gens):
        out = np.empty(src.order, dtype=np.int64)
        out[sp] = img
        yield out
        return
    g = gens[j]
    src_new = src.add[sp[:, None], src.act[:, g][None, :]].ravel()
    for h in masks[j]:
        dst_new = dst.add[img[:, None], dst.act[:, h][None, :]].ravel()
        scratch[src_new] = dst_new
        if not (scratch[src_new] == dst_new).all():
            continue
        dom = np.unique(src_new)
        cod = scratch[dom]
        if len(np.unique(cod)) != len(dom):
            continue
        yield from _extend(src, dst, gens, masks, j + 1, dom, cod.copy(), scratch)


def _shared_ann_keys(src, dst):
    """Annihilator keys of two modules over one ring, on a common scale."""
    zs = (src.act == src.zero).T
    zd = (dst.act == dst.zero).T
    _, inv = np.unique(np.vstack([zs, zd]), axis=0, return_inverse=True)
    inv = inv.reshape(-1)
    return inv[: src.order], inv[src.order:]


def embeds_in(A: FiniteModule, B: FiniteModule):
    """First injective R-linear map A -> B in generator-image order, or None."""
    if A.ring is not B.ring and A.ring.order != B.ring.order:
        raise SpecError("modules must be over the same ring")
    if A.order > B.order:
        return None
    for img in injective_homs(A, B):
        return ModuleMap(A, B, tuple(int(x) for x in img))
    return None


# -- character module --------------------------------------------------------


def _additive_exponent(ring):
    order = 1
    for x in range(ring.order):
        k, y = 1, x
        while y != ring.zero:
            y = ring.add[y, x]
            k += 1
        order = np.lcm(order, k)
    return int(order)


def character_module(ring: FiniteRing) -> FiniteModule:
    """Characters of (R, +) valued in Z/e, with ``(r chi)(s) = chi(s r)``.

    A character is stored as its value array over ring elements; characters
    are indexed in lexicographic order of value arrays, so the zero character
    is element 0.
    """
    e = _additive_exponent(ring)
    # additive generating set of R, with a spanning tree listed parent-first
    n = ring.order
    gens = []
    parent = {ring.zero: None}
    order = [ring.zero]
    while len(parent) < n:
        gens.append(min(x for x in range(n) if x not in parent))
        queue = list(order)
        while queue:
            x = queue.pop(0)
            for gi, g in enumerate(gens):
                y = int(ring.add[x, g])
                if y not in parent:
                    parent[y] = (x, gi)
                    order.append(y)
                    queue.append(y)
    chars = []
    for values in itertools.product(range(e), repeat=len(gens)):
        chi = np.zeros(n, dtype=np.int64)
        for y in order[1:]:
            x, gi = parent[y]
            chi[y] = (chi[x] + values[gi]) % e
        if ((chi[:, None] + chi[None, :]) % e == chi[ring.add]).all():
            chars.append(tuple(int(v) for v in chi))
    chars.sort()
    if len(chars) != n:
        raise AssertionError(f"found {len(chars)} characters for a ring of order {n}")
    index = {c: i for i, c in enumerate(chars)}
    arr = np.array(chars)
    add = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            add[i, j] = index[tuple((arr[i] + arr[j]) % e)]
    act = np.empty((n, n), dtype=np.int64)
    for r in range(n):
        for i in range(n):
            act[r, i] = index[tuple(arr[i][ring.mul[:, r]])]
    mod = FiniteModule(ring, add, act, 0, {"kind": "character"}, check=False)
    mod.values = arr
    mod.exponent = e
    return mod


# -- pseudo-injectivity ------------------------------------------------------


@dataclass
class PseudoInjectivity:
    """Outcome of the pseudo-injectivity test; truthy iff pseudo-injective."""

    holds: bool
    submodule: Submodule | None = None
    map: tuple | None = None
    checked_maps: int = 0

    def __bool__(self):
        return self.holds


def is_pseudo_injective(A: FiniteModule, auts=None, bound=DEFAULT_SUBMODULE_BOUND):
    """Every injective map from a submodule into A extends to an automorphism.

    On failure the result carries the first submodule B (in lattice order)
    and the first non-extendable map on B, as parent element images.
    """
    if auts is None:
        from .symmetry import aut_group
        auts = aut_group(A)
    aut_images = auts.images
    checked = 0
    for B in submodules(A, bound):
        local, embed = A.restrict(B)
        for img in injective_homs(local, A):
            checked += 1
            ok = (aut_images[:, embed] == img[None, :]).all(axis=1).any()
            if not ok:
                g = {int(embed[i]): int(img[i]) for i in range(len(embed))}
                return PseudoInjectivity(False, B, tuple(sorted(g.items())), checked)
    return PseudoInjectivity(True, checked_maps=checked)
