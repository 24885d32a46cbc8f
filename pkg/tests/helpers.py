"""Shared test utilities: seeded instance builders and an independent
structural signature for draw equivalence."""

import numpy as np

from bkt import validate_matrix


def random_matrix(rng, size, interior=False):
    """Random valid comparison matrix from a seeded generator.

    interior=True keeps every off-diagonal entry in [0.05, 0.95] so that
    perturbation validity bounds stay comfortably positive.
    """
    a = rng.random((size, size))
    if interior:
        a = 0.05 + 0.9 * a
    upper = np.triu(a, 1)
    arr = upper + (1.0 - upper.T) * (np.tri(size, k=-1) > 0)
    return validate_matrix(arr)


def random_deterministic(rng, size):
    """Random 0/1 comparison matrix (each pair's orientation a coin flip)."""
    a = (rng.random((size, size)) < 0.5).astype(float)
    upper = np.triu(a, 1)
    arr = upper + (1.0 - upper.T) * (np.tri(size, k=-1) > 0)
    return validate_matrix(arr)


def round_signature(leaves):
    """Hashable invariant of a leaf sequence's bracket-equivalence class.

    Collects, for every level of the tree, the set of player groups that
    share a subtree of that size.  Swapping the two children of any node
    leaves every group unchanged, and two sequences with identical groups
    induce identical brackets, so equal signatures certify equivalence
    without relying on the canonicalization code under test.
    """
    sig = []
    width = 2
    while width <= len(leaves):
        sig.append(frozenset(
            frozenset(leaves[k:k + width])
            for k in range(0, len(leaves), width)
        ))
        width *= 2
    return tuple(sig)


def scramble(rng, leaves):
    """Apply random subtree swaps: an equivalent, usually different, sequence."""
    out = list(leaves)
    width = 1
    while width < len(out):
        for start in range(0, len(out), 2 * width):
            if rng.random() < 0.5:
                left = out[start:start + width]
                right = out[start + width:start + 2 * width]
                out[start:start + 2 * width] = right + left
        width *= 2
    return tuple(out)
