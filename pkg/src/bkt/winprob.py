"""Winning probabilities of complete tournaments.

The workhorse is a bottom-up "reach" table over the bracket: for every tree
node, the probability that each player ends up labelling it.  A separate
oracle enumerates all 2**(N-1) joint match outcomes instead and exists only
to cross-check the recursion.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .draws import Draw, canonicalize
from .errors import DimensionMismatch, NotDeterministic, ScaleError
from .matrix import ComparisonMatrix

# 2**(N-1) outcome combinations; 16 players (32768 rows) is the sane limit.
OUTCOME_ENUMERATION_LIMIT = 16


def _as_draw(d) -> Draw:
    return d if isinstance(d, Draw) else Draw(tuple(d))


def _check_dims(m: ComparisonMatrix, d: Draw) -> None:
    if m.size != d.size:
        raise DimensionMismatch(f"matrix has {m.size} players, draw has {d.size}")


class _TreeEvaluator:
    """Reach arrays for one bracket, with fast single-pair re-evaluation.

    Arrays are kept in leaf order so that every subtree is a contiguous
    block: levels[k][t] is the probability that the player on leaf t wins
    their first k rounds.  Changing the entry of one pair only invalidates
    the merges from the pair's meeting node up to the root, so a two-point
    re-evaluation costs O(N) instead of O(N^2).
    """

    def __init__(self, matrix: ComparisonMatrix, leaves: tuple[int, ...]):
        self.size = len(leaves)
        self.rounds = self.size.bit_length() - 1
        self.perm = np.asarray(leaves, dtype=np.intp) - 1
        self.pos = np.empty(self.size, dtype=np.intp)
        self.pos[self.perm] = np.arange(self.size)
        self.pq = matrix.probs[np.ix_(self.perm, self.perm)]  # copy, leaf order
        self.levels = [np.ones(self.size)]
        for k in range(self.rounds):
            self.levels.append(self._merge_level(self.levels[k], k))

    def _merge_level(self, prev: np.ndarray, k: int) -> np.ndarray:
        half = 1 << k
        out = np.empty(self.size)
        for lo in range(0, self.size, 2 * half):
            mid, hi = lo + half, lo + 2 * half
            left, right = prev[lo:mid], prev[mid:hi]
            out[lo:mid] = left * (self.pq[lo:mid, mid:hi] @ right)
            out[mid:hi] = right * (self.pq[mid:hi, lo:mid] @ left)
        return out

    def root_by_player(self) -> np.ndarray:
        out = np.empty(self.size)
        out[self.perm] = self.levels[-1]
        return out

    def wp_with_pair(self, a: int, b: int, p: float, player: int) -> float:
        """Root probability of `player` after setting P[a,b]=p, P[b,a]=1-p."""
        pa, pb = int(self.pos[a - 1]), int(self.pos[b - 1])
        keep_ab, keep_ba = self.pq[pa, pb], self.pq[pb, pa]
        self.pq[pa, pb], self.pq[pb, pa] = p, 1.0 - p
        try:
            cur = None
            meet = (pa ^ pb).bit_length()  # level at which the pair can first play
            for k in range(meet, self.rounds + 1):
                half = 1 << (k - 1)
                lo = (pa >> k) << k
                mid, hi = lo + half, lo + 2 * half
                prev = self.levels[k - 1]
                left, right = prev[lo:mid], prev[mid:hi]
                if cur is not None:
                    if pa < mid:
                        left = cur
                    else:
                        right = cur
                nxt = np.empty(2 * half)
                nxt[:half] = left * (self.pq[lo:mid, mid:hi] @ right)
                nxt[half:] = right * (self.pq[mid:hi, lo:mid] @ left)
                cur = nxt
            return float(cur[self.pos[player - 1]])
        finally:
            self.pq[pa, pb], self.pq[pb, pa] = keep_ab, keep_ba


@dataclass(frozen=True, eq=False)
class ReachTable:
    """Per-node labelling probabilities, on the draw's own tree shape.

    levels[k] is leaf-ordered with blocks of size 2**k, one per node at
    height k; level 0 are the leaves and the last level is the root.
    """

    leaves: tuple[int, ...]
    levels: tuple[np.ndarray, ...]

    @property
    def rounds(self) -> int:
        return len(self.levels) - 1

    def players_under(self, level: int, index: int) -> tuple[int, ...]:
        width = 1 << level
        return self.leaves[index * width:(index + 1) * width]

    def distribution(self, level: int, index: int) -> dict[int, float]:
        width = 1 << level
        block = self.levels[level][index * width:(index + 1) * width]
        return {p: float(v) for p, v in zip(self.players_under(level, index), block)}

    def probability(self, level: int, index: int, player: int) -> float:
        """Probability that `player` labels the node; 0 for players elsewhere."""
        return self.distribution(level, index).get(player, 0.0)

    def root_distribution(self) -> np.ndarray:
        out = np.empty(len(self.leaves))
        out[np.asarray(self.leaves) - 1] = self.levels[-1]
        return out


def reach_table(m: ComparisonMatrix, d) -> ReachTable:
    """Full reach table of C(P, d), keeping d's literal tree layout."""
    d = _as_draw(d)
    _check_dims(m, d)
    ev = _TreeEvaluator(m, d.leaves)
    return ReachTable(leaves=d.leaves, levels=tuple(ev.levels))


def win_probabilities(m: ComparisonMatrix, d) -> np.ndarray:
    """Vector of winning probabilities; entry i-1 belongs to player i.

    The canonical representative of the draw is evaluated, so equivalent
    draws give bit-identical results.
    """
    d = _as_draw(d)
    _check_dims(m, d)
    ev = _TreeEvaluator(m, canonicalize(d).leaves)
    return ev.root_by_player()


def winner(m: ComparisonMatrix, d) -> int:
    """Winner of a deterministic tournament, in O(N) match lookups."""
    d = _as_draw(d)
    _check_dims(m, d)
    if not m.deterministic:
        raise NotDeterministic("winner is defined only for 0/1 matrices")
    probs = m.probs
    cur = [x - 1 for x in d.leaves]
    while len(cur) > 1:
        cur = [a if probs[a, b] == 1.0 else b for a, b in zip(cur[::2], cur[1::2])]
    return cur[0] + 1


def outcome_win_distribution(m: ComparisonMatrix, d) -> np.ndarray:
    """Winner distribution by enumerating all 2**(N-1) joint match outcomes.

    Deliberately independent of the reach recursion: each outcome vector is
    played out match by match and contributes the product of its per-match
    probabilities.
    """
    d = _as_draw(d)
    _check_dims(m, d)
    N = m.size
    if N > OUTCOME_ENUMERATION_LIMIT:
        raise ScaleError(
            f"outcome enumeration is limited to {OUTCOME_ENUMERATION_LIMIT} players"
        )
    B = 1 << (N - 1)
    sel = np.arange(B)
    probs = m.probs
    layer = [np.full(B, x - 1, dtype=np.intp) for x in d.leaves]
    weight = np.ones(B)
    match_bit = 0
    while len(layer) > 1:
        nxt = []
        for x, y in zip(layer[::2], layer[1::2]):
            first_wins = ((sel >> match_bit) & 1) == 0
            weight = weight * np.where(first_wins, probs[x, y], probs[y, x])
            nxt.append(np.where(first_wins, x, y))
            match_bit += 1
        layer = nxt
    out = np.zeros(N)
    np.add.at(out, layer[0], weight)
    return out


def wp_by_outcome_enumeration(m: ComparisonMatrix, d, player: int) -> float:
    """Winning probability of one player by brute-force outcome enumeration."""
    return float(outcome_win_distribution(m, d)[player - 1])


def _win_probabilities_stack(stack: np.ndarray, leaves: tuple[int, ...]) -> np.ndarray:
    """Reach recursion for a (B, N, N) stack of matrices sharing one draw.

    Returns a (B, N) array of winning probabilities in player order.
    """
    B, N = stack.shape[0], stack.shape[1]
    perm = np.asarray(leaves, dtype=np.intp) - 1
    pq = stack[:, perm][:, :, perm]
    reach = np.ones((B, N))
    half = 1
    while half < N:
        for lo in range(0, N, 2 * half):
            mid, hi = lo + half, lo + 2 * half
            left = reach[:, lo:mid].copy()
            right = reach[:, mid:hi].copy()
            reach[:, lo:mid] = left * np.einsum("bij,bj->bi", pq[:, lo:mid, mid:hi], right)
            reach[:, mid:hi] = right * np.einsum("bij,bj->bi", pq[:, mid:hi, lo:mid], left)
        half *= 2
    out = np.empty((B, N))
    out[:, perm] = reach
    return out
