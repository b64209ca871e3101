"""Linear codes in A^n, their isomorphisms, and monomial extensions.

Words of A^n are integers: the coordinate tuple read as a base-|A| numeral
with the first coordinate most significant, so integer order is
lexicographic tuple order.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import ResourceBoundError
from .module import FiniteModule, injective_homs
from .symmetry import MonomialTransformation, SymmetryGroup

DEFAULT_WORD_BOUND = 10**5
DEFAULT_CODE_BOUND = 10**5
MAX_AMBIENT_WORDS = 2**20


class Ambient:
    """Coordinate arithmetic on A^n."""

    def __init__(self, A: FiniteModule, n: int):
        self.module = A
        self.n = n
        self.size = A.order**n
        if self.size > MAX_AMBIENT_WORDS:
            raise ResourceBoundError("ambient word count", MAX_AMBIENT_WORDS, self.size)
        self.powers = A.order ** np.arange(n - 1, -1, -1, dtype=np.int64)
        self.zero_word = int(np.dot([A.zero] * n, self.powers)) if n else 0

    def digits(self, words):
        words = np.asarray(words, dtype=np.int64).reshape(-1)
        return (words[:, None] // self.powers[None, :]) % self.module.order

    def encode(self, digits):
        digits = np.asarray(digits, dtype=np.int64)
        return digits.reshape(-1, self.n) @ self.powers

    def encode_one(self, x):
        if len(x) != self.n:
            raise ValueError(f"expected a tuple of length {self.n}, got {len(x)}")
        return int(np.dot(np.asarray(x, dtype=np.int64), self.powers)) if self.n else 0

    def sumset(self, u, v):
        """Sorted distinct sums of two word arrays."""
        du, dv = self.digits(u), self.digits(v)
        s = self.module.add[du[:, None, :], dv[None, :, :]]
        return np.unique(s.reshape(-1, self.n) @ self.powers)

    def multiples(self, w):
        """``r w`` for every ring element r, indexed by r."""
        d = self.digits([w])[0]
        return self.module.act[:, d] @ self.powers

    @cached_property
    def all_multiples(self):
        d = self.digits(np.arange(self.size))
        return np.einsum("rwn,n->rw", self.module.act[:, d], self.powers)


class Code:
    """A submodule of A^n with the generating tuple it was found from."""

    def __init__(self, ambient: Ambient, words, generators):
        self.ambient = ambient
        self.words = np.asarray(words, dtype=np.int64)
        self.words.setflags(write=False)
        self.generators = tuple(int(g) for g in generators)

    @property
    def n(self):
        return self.ambient.n

    def __len__(self):
        return len(self.words)

    def __repr__(self):
        return f"Code(n={self.n}, size={len(self)}, generators={self.generator_tuples()})"

    @cached_property
    def key(self):
        return self.words.tobytes()

    def sort_key(self):
        return (len(self.words), tuple(int(w) for w in self.words))

    @cached_property
    def digits(self):
        return self.ambient.digits(self.words)

    def local(self, words):
        return np.searchsorted(self.words, words)

    def __contains__(self, word):
        i = np.searchsorted(self.words, word)
        return i < len(self.words) and self.words[i] == word

    @cached_property
    def module(self) -> FiniteModule:
        """The code as an abstract module on local indices ``0..|C|-1``."""
        amb = self.ambient
        d = self.digits
        add = self.local(amb.module.add[d[:, None, :], d[None, :, :]] @ amb.powers)
        act = self.local(amb.module.act[:, d] @ amb.powers)
        zero = int(self.local(amb.zero_word))
        return FiniteModule(amb.module.ring, add, act, zero, check=False)

    @cached_property
    def local_generators(self):
        return tuple(int(i) for i in self.local(np.asarray(self.generators, dtype=np.int64)))

    def generator_tuples(self):
        return [tuple(int(x) for x in row) for row in self.ambient.digits(self.generators)]

    def to_json(self):
        return {"n": self.n, "size": len(self), "generators": [list(g) for g in self.generator_tuples()]}


def span_code(A: FiniteModule, n, gens, word_bound=DEFAULT_WORD_BOUND, ambient=None) -> Code:
    """Closure of ``gens`` (tuples over A) under coordinatewise addition and action."""
    amb = ambient or Ambient(A, n)
    words = [amb.encode_one(g) for g in gens]
    sp = np.array([amb.zero_word], dtype=np.int64)
    for w in words:
        sp = amb.sumset(sp, np.unique(amb.multiples(w)))
        if len(sp) > word_bound:
            raise ResourceBoundError("code size", word_bound, len(sp))
    return Code(amb, sp, words)


def enumerate_codes(A: FiniteModule, n, gen_max, word_bound=DEFAULT_WORD_BOUND,
                    code_bound=DEFAULT_CODE_BOUND, ambient=None) -> list:
    """Every code generated by at most ``gen_max`` words, once each, canonically sorted.

    Each code keeps the first generating tuple that reached it, scanning by
    generator count and then lexicographically.
    """
    amb = ambient or Ambient(A, n)
    zero = Code(amb, [amb.zero_word], ())
    found = {zero.key: zero}
    level = [zero]
    mult = amb.all_multiples
    cyclic = {}
    for _ in range(gen_max):
        nxt = []
        for D in level:
            for w in range(amb.size):
                if w in D:
                    continue
                rw = cyclic.get(w)
                if rw is None:
                    rw = cyclic[w] = np.unique(mult[:, w])
                words = amb.sumset(D.words, rw)
                if len(words) > word_bound:
                    raise ResourceBoundError("code size", word_bound, len(words))
                key = words.tobytes()
                if key in found:
                    continue
                code = Code(amb, words, D.generators + (w,))
                found[key] = code
                nxt.append(code)
                if len(found) > code_bound:
                    raise ResourceBoundError("code count", code_bound)
        level = nxt
    return sorted(found.values(), key=Code.sort_key)


@dataclass
class IsometryWitness:
    """An R-linear bijection between two codes, given on local indices."""

    source: Code
    target: Code
    images: np.ndarray
    kind: str | None = None

    def codeword_pairs(self):
        return self.source.digits, self.target.digits[self.images]

    def image_of(self, word):
        return int(self.target.words[self.images[self.source.local(word)]])

    @property
    def generator_images(self):
        return tuple(int(self.target.words[self.images[g]]) for g in self.source.local_generators)

    def generator_image_tuples(self):
        amb = self.target.ambient
        return [tuple(int(x) for x in row) for row in amb.digits(list(self.generator_images))]

    def to_json(self):
        return {
            "kind": self.kind,
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "generator_images": [list(t) for t in self.generator_image_tuples()],
        }

    def is_valid_isomorphism(self):
        """Additive, equivariant and bijective, checked on every codeword."""
        img = np.asarray(self.images)
        s, t = self.source.module, self.target.module
        if len(np.unique(img)) != len(img) or len(img) != t.order:
            return False
        return bool((img[s.add] == t.add[img[:, None], img[None, :]]).all()
                    and (img[s.act] == t.act[:, img]).all())


def linear_isomorphisms(C1: Code, C2: Code, allowed=None):
    """Yield every R-linear bijection C1 -> C2 in generator-image order."""
    if len(C1) != len(C2):
        return
    for img in injective_homs(C1.module, C2.module, C1.local_generators, allowed):
        yield IsometryWitness(C1, C2, img)


def _compatibility(f: IsometryWitness, G: SymmetryGroup):
    """``comp[t, i, j]``: tau_t maps source coordinate j onto image coordinate i
    for every generator."""
    gd = f.source.ambient.digits(list(f.source.generators))
    hd = f.target.ambient.digits(list(f.generator_images))
    n = f.source.n
    if len(gd) == 0:
        return np.ones((G.order, n, n), dtype=bool)
    moved = G.images[:, gd]  # (|G|, k, n_j)
    return (moved[:, :, None, :] == hd[None, :, :, None]).all(axis=1)


def _matchings(ok, i, used, sigma):
    n = ok.shape[0]
    if i == n:
        yield tuple(sigma)
        return
    for j in np.flatnonzero(ok[i]):
        if not used[j]:
            used[j] = True
            sigma.append(int(j))
            yield from _matchings(ok, i + 1, used, sigma)
            sigma.pop()
            used[j] = False


def extend_to_monomial(f: IsometryWitness, G: SymmetryGroup):
    """Lexicographically first G-monomial T with ``c T = f(c)`` on the code, or None.

    Candidates are ordered by (sigma, tau_1, ..., tau_n) with taus by group
    index. Generator images prune the search; every candidate is then
    confirmed on the whole code.
    """
    comp = _compatibility(f, G)
    ok = comp.any(axis=0)
    src, dst = f.codeword_pairs()
    for sigma in _matchings(ok, 0, np.zeros(f.source.n, dtype=bool), []):
        taus = tuple(G.elements[int(np.argmax(comp[:, i, j]))].images for i, j in enumerate(sigma))
        T = MonomialTransformation(sigma, taus)
        if (T.apply_digits(src) == dst).all():
            return T
    return None


def search_space_size(n, group_order):
    return math.factorial(n) * group_order**n


def extend_exhaustive(f: IsometryWitness, G: SymmetryGroup):
    """Brute-force oracle: scan all n! |G|^n transformations in the same order.

    Returns ``(T or None, candidates_examined)``.
    """
    src, dst = f.codeword_pairs()
    n = f.source.n
    count = 0
    for sigma in itertools.permutations(range(n)):
        for tidx in itertools.product(range(G.order), repeat=n):
            count += 1
            T = MonomialTransformation(sigma, tuple(G.elements[t].images for t in tidx))
            if (T.apply_digits(src) == dst).all():
                return T, count
    return None, count


def restrict_monomial(T: MonomialTransformation, C: Code) -> IsometryWitness:
    """The isometry ``C -> C T`` induced by a monomial transformation."""
    amb = C.ambient
    img_words = amb.encode(T.apply_digits(C.digits))
    order = np.argsort(img_words)
    target = Code(amb, img_words[order], amb.encode(T.apply_digits(amb.digits(list(C.generators)))))
    return IsometryWitness(C, target, target.local(img_words))
