"""Finite unital rings as index tables, and their left-ideal structure.

Elements are the integers ``0..N-1``. Every ring carries an ``add`` and a
``mul`` table (``mul[a, b]`` is the product ``a*b``) plus the indices of zero
and one. Rings built from a declarative spec remember the spec so modules
that need coordinates (matrix columns) can recover them.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ._lattice import closure_lattice
from .errors import AxiomError, NotChainRingError, SpecError

MAX_RING_ORDER = 256

RING_KINDS = ("zn", "gf", "matrix", "chain", "tables")


def canonical_json(obj) -> str:
    """Sorted keys, no whitespace. Used as cache key and report header."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


# -- prime fields and polynomials -------------------------------------------


def factor_prime_power(q):
    """Return ``(p, k)`` with ``q == p**k``, or None if q is not a prime power."""
    if q < 2:
        return None
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        return q, 1
    k = 0
    while q % p == 0:
        q //= p
        k += 1
    return (p, k) if q == 1 else None


def _poly_mod(a, m, p):
    # a, m: coefficient lists, lowest degree first; m monic
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return [c % p for c in a[:dm]] + [0] * max(0, dm - len(a))


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _digits(x, base, width):
    out = []
    for _ in range(width):
        out.append(x % base)
        x //= base
    return out


def _is_irreducible(poly, p):
    k = len(poly) - 1
    for d in range(1, k // 2 + 1):
        for low in range(p**d):
            div = _digits(low, p, d) + [1]
            if not any(_poly_mod(poly, div, p)):
                return False
    return True


def smallest_irreducible(p, k):
    """Lexicographically smallest monic irreducible polynomial of degree k.

    Candidates ``x^k + c_{k-1} x^{k-1} + ... + c_0`` are ordered by the
    integer ``sum c_i p^i``, i.e. lexicographically on ``(c_{k-1}, ..., c_0)``.
    """
    for low in range(p**k):
        poly = _digits(low, p, k) + [1]
        if k == 1 or (poly[0] != 0 and _is_irreducible(poly, p)):
            return poly
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def galois_field_tables(q):
    """``(add, mul)`` tables of GF(q); element ``sum c_i p^i`` is ``sum c_i x^i``."""
    pk = factor_prime_power(q)
    if pk is None:
        raise SpecError(f"q={q} is not a prime power")
    p, k = pk
    digits = np.array([_digits(x, p, k) for x in range(q)], dtype=np.int64)
    weights = p ** np.arange(k)
    add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
    modulus = smallest_irreducible(p, k)
    mul = np.empty((q, q), dtype=np.int64)
    for a in range(q):
        for b in range(q):
            prod = _poly_mod(_poly_mul(list(digits[a]), list(digits[b]), p), modulus, p)
            mul[a, b] = int(np.dot(prod, weights))
    return add, mul


# -- rings -------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class LeftIdeal:
    """A left ideal, stored as its strictly increasing element indices."""

    elements: tuple
    ring: "FiniteRing" = field(repr=False, compare=False)

    def __eq__(self, other):
        return isinstance(other, LeftIdeal) and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return int(x) in self._set

    def __iter__(self):
        return iter(self.elements)

    def __le__(self, other):
        return self._set <= other._set

    def __lt__(self, other):
        return self._set < other._set

    @cached_property
    def _set(self):
        return frozenset(self.elements)

    def sort_key(self):
        return (len(self.elements), self.elements)


class FiniteRing:
    """A finite ring with unity given by addition and multiplication tables."""

    def __init__(self, add, mul, zero, one, spec=None, check=True):
        self.add = np.asarray(add, dtype=np.int64)
        self.mul = np.asarray(mul, dtype=np.int64)
        self.zero = int(zero)
        self.one = int(one)
        self.spec = spec
        if check:
            check_ring_axioms(self.add, self.mul, self.zero, self.one)
        self.add.setflags(write=False)
        self.mul.setflags(write=False)

    @property
    def order(self):
        return self.add.shape[0]

    def __len__(self):
        return self.order

    def __repr__(self):
        tag = canonical_json(self.spec) if self.spec else "tables"
        return f"FiniteRing({tag}, order={self.order})"

    @cached_property
    def neg(self):
        return np.argmax(self.add == self.zero, axis=1)

    def ideal(self, elements):
        return LeftIdeal(tuple(sorted(int(e) for e in set(elements))), self)

    @cached_property
    def whole(self):
        return self.ideal(range(self.order))

    @cached_property
    def zero_ideal(self):
        return self.ideal([self.zero])

    def left_multiples(self, e):
        """The set ``R e``."""
        return self.ideal(np.unique(self.mul[:, e]))


def _first(bad):
    idx = np.argwhere(bad)
    return tuple(int(i) for i in idx[0]) if len(idx) else None


def check_ring_axioms(add, mul, zero, one):
    """Raise AxiomError naming the first violated ring axiom."""
    add = np.asarray(add)
    mul = np.asarray(mul)
    if add.ndim != 2 or add.shape[0] != add.shape[1] or mul.shape != add.shape:
        raise AxiomError("tables must be square and of equal size")
    n = add.shape[0]
    if n == 0:
        raise AxiomError("ring must be nonempty")
    for name, t in (("addition", add), ("multiplication", mul)):
        if t.min() < 0 or t.max() >= n:
            raise AxiomError(f"{name} closure", _first((t < 0) | (t >= n)))
    if not (0 <= zero < n and 0 <= one < n):
        raise AxiomError("zero and one must be element indices")
    r = np.arange(n)
    checks = [
        ("additive identity", lambda: (add[zero] != r) | (add[:, zero] != r)),
        ("additive associativity", lambda:
            add[add[:, :, None], r[None, None, :]] != add[r[:, None, None], add[None, :, :]]),
        ("additive commutativity", lambda: add != add.T),
        ("additive inverses", lambda: ~(add == zero).any(axis=1)),
        ("multiplicative associativity", lambda:
            mul[mul[:, :, None], r[None, None, :]] != mul[r[:, None, None], mul[None, :, :]]),
        ("left distributivity", lambda:
            mul[r[:, None, None], add[None, :, :]]
            != add[mul[:, :, None], mul[:, None, :]]),
        ("right distributivity", lambda:
            mul[add[:, :, None], r[None, None, :]]
            != add[mul[:, None, :], mul[None, :, :]]),
        ("multiplicative unity", lambda: (mul[one] != r) | (mul[:, one] != r)),
    ]
    for axiom, test in checks:
        bad = test()
        if bad.any():
            raise AxiomError(axiom, _first(bad))


# -- construction ------------------------------------------------------------


def parse_ring_spec(spec):
    """Validate a RingSpec mapping (or JSON string) and return a plain dict."""
    if isinstance(spec, str):
        try:
            spec = json.loads(spec)
        except json.JSONDecodeError as exc:
            raise SpecError(f"ring spec is not valid JSON: {exc}") from None
    if not isinstance(spec, dict) or spec.get("kind") not in RING_KINDS:
        raise SpecError(f"ring spec needs kind in {RING_KINDS}, got {spec!r}")
    kind = spec["kind"]
    required = {
        "zn": ("n",), "gf": ("q",), "matrix": ("m", "q"), "chain": ("p", "e"),
        "tables": ("add", "mul", "zero", "one"),
    }[kind]
    missing = [k for k in required if k not in spec]
    if missing:
        raise SpecError(f"{kind} ring spec missing {missing}")
    extra = set(spec) - set(required) - {"kind"}
    if extra:
        raise SpecError(f"{kind} ring spec has unknown keys {sorted(extra)}")
    if kind != "tables":
        for k in required:
            if not isinstance(spec[k], int) or isinstance(spec[k], bool):
                raise SpecError(f"{kind} ring parameter {k} must be an integer")
    if kind == "zn" and spec["n"] < 2:
        raise SpecError("zn ring needs n >= 2")
    if kind in ("gf", "matrix") and factor_prime_power(spec["q"]) is None:
        raise SpecError(f"q={spec['q']} is not a prime power")
    if kind == "matrix" and spec["m"] < 1:
        raise SpecError("matrix ring needs m >= 1")
    if kind == "chain":
        pk = factor_prime_power(spec["p"])
        if pk is None or pk[1] != 1:
            raise SpecError(f"chain ring needs a prime p, got {spec['p']}")
        if spec["e"] < 1:
            raise SpecError("chain ring needs e >= 1")
    return dict(spec)


def _predicted_order(spec):
    kind = spec["kind"]
    if kind == "zn":
        return spec["n"]
    if kind == "gf":
        return spec["q"]
    if kind == "matrix":
        return spec["q"] ** (spec["m"] ** 2)
    if kind == "chain":
        return spec["p"] ** spec["e"]
    return len(spec["add"])


def matrix_digits(q, rows, cols):
    """Entry array of shape ``(q**(rows*cols), rows, cols)``.

    Element index is the row-major entry sequence read as a base-q numeral,
    most significant first, so index order is lexicographic entry order.
    """
    size = rows * cols
    count = q**size
    idx = np.arange(count)
    powers = q ** np.arange(size - 1, -1, -1)
    return ((idx[:, None] // powers[None, :]) % q).reshape(count, rows, cols)


def matrix_index(entries, q):
    flat = np.asarray(entries).reshape(entries.shape[0], -1)
    powers = q ** np.arange(flat.shape[1] - 1, -1, -1)
    return flat @ powers


def matmul_tables(left, right, fadd, fmul):
    """Index table of all products ``left[i] @ right[j]`` over a field."""
    nl, m, k = left.shape
    nr, k2, c = right.shape
    assert k == k2
    out = np.zeros((nl, nr, m, c), dtype=np.int64)
    for t in range(k):
        prod = fmul[left[:, None, :, t, None], right[None, :, None, t, :]]
        out = fadd[out, prod]
    return out


def build_ring(spec) -> FiniteRing:
    """Construct the ring described by a RingSpec."""
    spec = parse_ring_spec(spec)
    order = _predicted_order(spec)
    if order > MAX_RING_ORDER:
        raise SpecError(f"ring order {order} exceeds supported limit {MAX_RING_ORDER}")
    kind = spec["kind"]
    if kind == "zn":
        n = spec["n"]
        r = np.arange(n)
        return FiniteRing((r[:, None] + r) % n, (r[:, None] * r) % n, 0, 1, spec, check=False)
    if kind == "gf":
        add, mul = galois_field_tables(spec["q"])
        return FiniteRing(add, mul, 0, 1, spec, check=False)
    if kind == "matrix":
        m, q = spec["m"], spec["q"]
        fadd, fmul = galois_field_tables(q)
        ent = matrix_digits(q, m, m)
        add = matrix_index(fadd[ent[:, None], ent[None, :]].reshape(-1, m, m), q)
        mul = matrix_index(matmul_tables(ent, ent, fadd, fmul).reshape(-1, m, m), q)
        n = len(ent)
        one = int(matrix_index(np.eye(m, dtype=np.int64)[None], q)[0])
        return FiniteRing(add.reshape(n, n), mul.reshape(n, n), 0, one, spec, check=False)
    if kind == "chain":
        p, e = spec["p"], spec["e"]
        n = p**e
        dig = np.array([_digits(x, p, e) for x in range(n)], dtype=np.int64)
        w = p ** np.arange(e)
        add = ((dig[:, None, :] + dig[None, :, :]) % p) @ w
        mul = np.zeros((n, n), dtype=np.int64)
        for a, b in itertools.product(range(n), repeat=2):
            prod = _poly_mul(list(dig[a]), list(dig[b]), p)[:e]
            mul[a, b] = int(np.dot(prod + [0] * (e - len(prod)), w))
        return FiniteRing(add, mul, 0, 1, spec, check=False)
    return FiniteRing(spec["add"], spec["mul"], spec["zero"], spec["one"], spec)


def is_field_like(ring):
    """``(1, q)`` if the ring was built as GF(q) / Z/p / M_1(F_q), else None."""
    spec = ring.spec or {}
    kind = spec.get("kind")
    if kind == "gf":
        return 1, spec["q"]
    if kind == "zn" and factor_prime_power(spec["n"]) == (spec["n"], 1):
        return 1, spec["n"]
    if kind == "matrix":
        return spec["m"], spec["q"]
    return None


# -- ideal structure ---------------------------------------------------------


def left_ideals(ring: FiniteRing) -> list:
    """Every left ideal, sorted by (cardinality, element tuple)."""
    return [ring.ideal(t) for t in closure_lattice(ring.add, ring.mul)]


def maximal_left_ideals(ring, ideals=None):
    ideals = left_ideals(ring) if ideals is None else ideals
    proper = [I for I in ideals if len(I) < ring.order]
    return [I for I in proper if not any(I < J for J in proper)]


def jacobson_radical(ring: FiniteRing) -> LeftIdeal:
    """Intersection of all maximal left ideals."""
    common = set(range(ring.order))
    for I in maximal_left_ideals(ring):
        common &= set(I.elements)
    return ring.ideal(common)


def _incomparable_pair(ideals):
    for I, J in itertools.combinations(ideals, 2):
        if not (I <= J or J <= I):
            return I, J
    return None


def is_chain_ring(ring: FiniteRing) -> bool:
    return _incomparable_pair(left_ideals(ring)) is None


def chain_levels(ring: FiniteRing) -> list:
    """The ideal chain, largest first, each with its smallest new element.

    Each level ``(I_j, x_j)`` has ``x_j`` the smallest index in ``I_j`` but not
    in ``I_{j+1}``; the final level is the zero ideal paired with zero.
    """
    ideals = left_ideals(ring)
    bad = _incomparable_pair(ideals)
    if bad is not None:
        raise NotChainRingError(*bad)
    chain = ideals[::-1]
    levels = []
    for j, I in enumerate(chain):
        if j + 1 < len(chain):
            below = chain[j + 1]
            rep = min(x for x in I.elements if x not in below)
        else:
            rep = ring.zero
        levels.append((I, rep))
    return levels


def idempotent_generator(ring: FiniteRing, ideal: LeftIdeal):
    """Smallest idempotent ``e`` with ``R e == ideal``, or None."""
    for e in ideal.elements:
        if ring.mul[e, e] == e and ring.left_multiples(e) == ideal:
            return e
    return None


def central_idempotents(ring):
    r = np.arange(ring.order)
    diag = ring.mul[r, r] == r
    central = (ring.mul == ring.mul.T).all(axis=0)
    return [int(e) for e in r[diag & central]]


def is_simple_artinian(ring):
    """True for a semisimple ring with one isomorphism class of simple modules.

    Over a finite ring this is M_m(F_q): zero radical and no central
    idempotents besides 0 and 1.
    """
    if len(jacobson_radical(ring)) != 1:
        return False
    return central_idempotents(ring) == sorted({ring.zero, ring.one})
