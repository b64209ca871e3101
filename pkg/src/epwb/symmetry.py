"""Automorphism groups, their orbits, and G-monomial transformations.

Automorphisms act on the right: ``a tau`` is ``tau.images[a]``, and the
product ``sigma tau`` means "first sigma, then tau".
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import ResourceBoundError, SpecError
from .module import FiniteModule, ModuleMap, injective_homs

DEFAULT_MAX_GENERATORS = 8


@dataclass(frozen=True)
class Automorphism:
    images: tuple

    @cached_property
    def inverse(self):
        inv = [0] * len(self.images)
        for a, b in enumerate(self.images):
            inv[b] = a
        return tuple(inv)

    def __call__(self, a):
        return self.images[a]

    def then(self, other):
        """The automorphism ``a -> (a self) other``."""
        return Automorphism(tuple(other.images[b] for b in self.images))


class SymmetryGroup:
    """A group of automorphisms of one module, in lexicographic image order."""

    def __init__(self, module, images):
        arr = np.unique(np.asarray(images, dtype=np.int64).reshape(-1, module.order), axis=0)
        arr.setflags(write=False)
        self.module = module
        self.images = arr
        ident = np.arange(module.order)
        self.identity = int(np.flatnonzero((arr == ident).all(axis=1))[0])

    @property
    def order(self):
        return len(self.images)

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    @cached_property
    def elements(self):
        return [Automorphism(tuple(int(x) for x in row)) for row in self.images]

    @cached_property
    def _index(self):
        return {row.images: i for i, row in enumerate(self.elements)}

    def index(self, aut):
        images = aut.images if isinstance(aut, Automorphism) else tuple(aut)
        return self._index[images]

    def __contains__(self, aut):
        images = aut.images if isinstance(aut, Automorphism) else tuple(aut)
        return images in self._index

    def __repr__(self):
        return f"SymmetryGroup(order={self.order})"


def is_automorphism(A: FiniteModule, images) -> bool:
    images = tuple(int(x) for x in images)
    if len(images) != A.order or sorted(images) != list(range(A.order)):
        return False
    m = ModuleMap(A, A, images)
    return m.is_additive() and m.is_equivariant()


def aut_group(A: FiniteModule, max_generators=DEFAULT_MAX_GENERATORS) -> SymmetryGroup:
    """All of Aut_R(A), found by assigning images to A's greedy generators."""
    if len(A.generators) > max_generators:
        raise ResourceBoundError("generator count", max_generators, len(A.generators))
    return SymmetryGroup(A, list(injective_homs(A, A)))


def subgroup_closure(A: FiniteModule, gens) -> SymmetryGroup:
    """Smallest group of automorphisms of A containing ``gens``."""
    gens = [tuple(int(x) for x in (g.images if isinstance(g, Automorphism) else g))
            for g in gens]
    for g in gens:
        if not is_automorphism(A, g):
            raise SpecError(f"not an automorphism of the module: {list(g)}")
    ident = tuple(range(A.order))
    found = {ident}
    queue = [ident]
    while queue:
        s = queue.pop()
        for g in gens:
            t = tuple(g[b] for b in s)
            if t not in found:
                found.add(t)
                queue.append(t)
    return SymmetryGroup(A, sorted(found))


def trivial_group(A):
    return SymmetryGroup(A, [list(range(A.order))])


@dataclass(frozen=True)
class OrbitIndex:
    """Orbit id of every element and the smallest member of each orbit."""

    orbit_of: tuple
    representatives: tuple

    def representative(self, a):
        return self.representatives[self.orbit_of[a]]

    def members(self, orbit):
        return tuple(a for a, o in enumerate(self.orbit_of) if o == orbit)

    def partition(self):
        return [self.members(o) for o in range(len(self.representatives))]


def orbits(A: FiniteModule, G: SymmetryGroup) -> OrbitIndex:
    """Orbits of A under the right action of G; ids follow smallest members."""
    orbit_of = [-1] * A.order
    reps = []
    for a in range(A.order):
        if orbit_of[a] >= 0:
            continue
        for b in np.unique(G.images[:, a]):
            orbit_of[int(b)] = len(reps)
        reps.append(a)
    return OrbitIndex(tuple(orbit_of), tuple(reps))


@dataclass(frozen=True)
class MonomialTransformation:
    """``(x_1..x_n) T = (x_{sigma(1)} tau_1, ..., x_{sigma(n)} tau_n)``.

    ``sigma`` is a 0-based permutation tuple and ``taus`` holds the image
    tuple of each coordinate automorphism.
    """

    sigma: tuple
    taus: tuple

    def __post_init__(self):
        if sorted(self.sigma) != list(range(len(self.sigma))):
            raise SpecError(f"sigma is not a permutation: {self.sigma}")
        if len(self.taus) != len(self.sigma):
            raise SpecError("need one automorphism per coordinate")

    @property
    def n(self):
        return len(self.sigma)

    @classmethod
    def identity(cls, n, module_order):
        ident = tuple(range(module_order))
        return cls(tuple(range(n)), (ident,) * n)

    def then(self, other):
        """The transformation ``x -> (x self) other``."""
        sigma = tuple(self.sigma[other.sigma[i]] for i in range(self.n))
        taus = tuple(
            tuple(other.taus[i][b] for b in self.taus[other.sigma[i]]) for i in range(self.n)
        )
        return MonomialTransformation(sigma, taus)

    def inverse(self):
        n = self.n
        sigma = [0] * n
        taus = [None] * n
        for i, j in enumerate(self.sigma):
            sigma[j] = i
            inv = [0] * len(self.taus[i])
            for a, b in enumerate(self.taus[i]):
                inv[b] = a
            taus[j] = tuple(inv)
        return MonomialTransformation(tuple(sigma), tuple(taus))

    def in_group(self, G: SymmetryGroup):
        return all(t in G for t in self.taus)

    def apply_digits(self, digits):
        """Apply to an ``(m, n)`` array of coordinate tuples."""
        digits = np.asarray(digits)
        out = np.empty_like(digits)
        for i in range(self.n):
            out[:, i] = np.asarray(self.taus[i])[digits[:, self.sigma[i]]]
        return out


def apply_monomial(T: MonomialTransformation, x) -> tuple:
    if len(x) != T.n:
        raise ValueError(f"tuple of length {len(x)} for a transformation of length {T.n}")
    return tuple(T.taus[i][x[T.sigma[i]]] for i in range(T.n))


def _refines(fine, coarse):
    where = {a: i for i, block in enumerate(coarse) for a in block}
    return all(len({where[a] for a in block}) == 1 for block in fine)


def lemma1_equivalence_check(A: FiniteModule, G: SymmetryGroup | None = None):
    """Compare the equal-annihilator partition with the Aut-orbit partition.

    Automorphisms preserve annihilators, so orbits always refine the
    annihilator classes; for pseudo-injective A the two coincide.
    """
    from .module import is_pseudo_injective, rho_classes

    G = aut_group(A) if G is None else G
    rho = sorted(tuple(m) for _, m in rho_classes(A))
    orb = sorted(orbits(A, G).partition())
    return {
        "pseudo_injective": bool(is_pseudo_injective(A, G)),
        "rho": rho,
        "orbits": orb,
        "equal": rho == orb,
        "orbits_refine_rho": _refines(orb, rho),
    }
