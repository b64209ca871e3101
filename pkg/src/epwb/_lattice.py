"""Subset-closure enumeration shared by left ideals and submodules.

A set is encoded as a Python int bitmask over element indices, which keeps
subset tests and hashing cheap for the orders the workbench supports.
"""

import numpy as np

from .errors import ResourceBoundError

DEFAULT_LATTICE_BOUND = 10**5


def mask_of(elements):
    m = 0
    for e in elements:
        m |= 1 << int(e)
    return m


def elements_of(mask):
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def cyclic_masks(add, act):
    """Bitmask of ``R a`` for every element ``a``."""
    return [mask_of(np.unique(act[:, a])) for a in range(add.shape[0])]


def sum_mask(add, u, v):
    eu = np.asarray(elements_of(u))
    ev = np.asarray(elements_of(v))
    return mask_of(np.unique(add[np.ix_(eu, ev)]))


def closure_lattice(add, act, bound=DEFAULT_LATTICE_BOUND):
    """All subsets closed under ``add`` and the action, as sorted tuples.

    Starts from the cyclic subsets ``R a`` and closes under pairwise sums
    with cyclic ones until no new set appears. Every closed subset is a sum
    of cyclic ones, so the fixpoint is the complete lattice.
    """
    cyc = sorted(set(cyclic_masks(add, act)))
    found = set(cyc)
    if len(found) > bound:
        raise ResourceBoundError("submodule count", bound, len(found))
    queue = list(cyc)
    while queue:
        u = queue.pop()
        for c in cyc:
            if c & u == c:
                continue
            s = sum_mask(add, u, c)
            if s not in found:
                found.add(s)
                if len(found) > bound:
                    raise ResourceBoundError("submodule count", bound)
                queue.append(s)
    tuples = [tuple(elements_of(m)) for m in found]
    tuples.sort(key=lambda t: (len(t), t))
    return tuples
