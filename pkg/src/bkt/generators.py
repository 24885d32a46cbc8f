"""Instance families with known structure, plus their closed-form anchors."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, RangeError
from .matrix import ComparisonMatrix, validate_matrix


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ParameterError(f"round count must be a positive integer, got {n!r}")


def gen_hard(n: int) -> ComparisonMatrix:
    """Deterministic family where only the identity-like draw crowns player 1.

    Built by n doubling steps: every player spawns a new one seated to its
    right.  A spawned player beats everyone to its left except its spawner,
    and loses to everything on its right.  Player numbering follows final
    seating order.
    """
    _check_n(n)
    players = [0]  # working ids in seating order
    spawner = {0: None}
    nxt = 1
    for _ in range(n):
        seated = []
        for p in players:
            spawner[nxt] = p
            seated += [p, nxt]
            nxt += 1
        players = seated
    size = len(players)
    rank = {p: k for k, p in enumerate(players)}  # final 0-based position
    arr = np.zeros((size, size))
    for p in players:
        for q in players:
            if p == q:
                continue
            # default: the right-seated player wins; spawners beat their spawn
            left_wins = rank[p] < rank[q]
            if spawner.get(q) == p:
                winner_is_p = True
            elif spawner.get(p) == q:
                winner_is_p = False
            else:
                winner_is_p = not left_wins
            arr[rank[p], rank[q]] = 1.0 if winner_is_p else 0.0
    return validate_matrix(arr)


def gen_unbalanced(n: int) -> ComparisonMatrix:
    """Hard core of 2^(n-1) players padded with weak spoilers.

    Added players lose to player 1, beat the rest of the core, and among
    themselves the higher index wins.  Player 1 then wins many draws but
    every one of them leans on fragile matches.
    """
    _check_n(n)
    if n < 2:
        raise ParameterError("gen_unbalanced needs n >= 2")
    half = 1 << (n - 1)
    core = gen_hard(n - 1).probs
    size = 2 * half
    arr = np.zeros((size, size))
    arr[:half, :half] = core
    for a in range(half, size):
        arr[0, a] = 1.0
        arr[a, 0] = 0.0
        for c in range(1, half):
            arr[a, c] = 1.0
            arr[c, a] = 0.0
        for b in range(half, size):
            if a == b:
                continue
            arr[a, b] = 1.0 if a > b else 0.0
    return validate_matrix(arr)


@dataclass(frozen=True)
class BigSmallInstance:
    n: int
    p: float
    matrix: ComparisonMatrix
    big: tuple[int, ...]
    small: tuple[int, ...]


def gen_bigsmall(n: int, p: float) -> BigSmallInstance:
    """The upper half of the players beats the lower half with probability p.

    Matches inside either half are even coin flips; p must sit strictly
    between 0.5 and 1.
    """
    _check_n(n)
    if not 0.5 < p < 1.0:
        raise RangeError(f"p must lie strictly between 0.5 and 1, got {p}")
    size = 1 << n
    half = size // 2
    arr = np.full((size, size), 0.5)
    arr[half:, :half] = p
    arr[:half, half:] = 1.0 - p
    np.fill_diagonal(arr, 0.0)
    return BigSmallInstance(
        n=n,
        p=p,
        matrix=validate_matrix(arr),
        big=tuple(range(half + 1, size + 1)),
        small=tuple(range(1, half + 1)),
    )


def gen_threetier(n: int, eps: float) -> ComparisonMatrix:
    """Favourite plus small, medium and big tiers over 2^(n+1) players.

    Player 1 crushes the small tier (players 2..2^n), is a slight underdog
    against every medium player (2^n+1..2^n+2^(n-1)) and a slight
    favourite against every big player (the rest).  Small players lose all
    cross-tier matches; medium beats big with probability 1/2 - eps/2.
    """
    _check_n(n)
    if n < 2:
        raise ParameterError("gen_threetier needs n >= 2")
    if not 0.0 < eps < 0.5:
        raise RangeError(f"eps must lie strictly between 0 and 0.5, got {eps}")
    size = 1 << (n + 1)
    half = size // 2
    small = slice(1, half)
    medium = slice(half, half + half // 2)
    big = slice(half + half // 2, size)
    arr = np.full((size, size), 0.5)
    arr[0, small] = 1.0
    arr[small, 0] = 0.0
    arr[0, medium] = 0.4
    arr[medium, 0] = 0.6
    arr[0, big] = 0.6
    arr[big, 0] = 0.4
    arr[small, medium] = 0.0
    arr[medium, small] = 1.0
    arr[small, big] = 0.0
    arr[big, small] = 1.0
    arr[medium, big] = 0.5 - eps / 2.0
    arr[big, medium] = 0.5 + eps / 2.0
    np.fill_diagonal(arr, 0.0)
    return validate_matrix(arr)


def uniform_perturbation(m: ComparisonMatrix, eps: float) -> ComparisonMatrix:
    """Pull every off-diagonal entry eps away from its nearest boundary.

    0 becomes eps, 1 becomes 1 - eps, interior values stay put.  Useful for
    smoothing a deterministic instance before sensitivity analysis.
    """
    if not 0.0 < eps < 0.5:
        raise RangeError(f"eps must lie strictly between 0 and 0.5, got {eps}")
    arr = m.probs.copy()
    off = ~np.eye(m.size, dtype=bool)
    arr[off & (arr == 0.0)] = eps
    arr[off & (arr == 1.0)] = 1.0 - eps
    return validate_matrix(arr)


def hard_path_probability(k: int, eps: float) -> float:
    """Winning probability of player 1 in the smoothed k-round hard family.

    Exact recursion over rounds: the favourite's survival chance composes
    with itself once per round.
    """
    _check_n(k)
    if not 0.0 <= eps < 0.5:
        raise RangeError(f"eps must lie in [0, 0.5), got {eps}")
    p = 1.0 - eps
    for _ in range(k - 1):
        p = p * (p * (1.0 - eps) + (1.0 - p) * eps)
    return p


def bigsmall_even_probability(k: int, eps: float) -> float:
    """Chance a big player wins a k-round mixed big-vs-small tournament.

    Exact recursion e_{k+1} = e_k + 2 e_k (1 - e_k) eps starting from
    e_1 = 1/2 + eps, where eps = p - 1/2.
    """
    _check_n(k)
    if not 0.0 <= eps < 0.5:
        raise RangeError(f"eps must lie in [0, 0.5), got {eps}")
    e = 0.5 + eps
    for _ in range(k - 1):
        e = e + 2.0 * e * (1.0 - e) * eps
    return e


def compose_big_win(left: float, right: float, p: float) -> float:
    """Chance some strong player emerges from a merge of two subtrees.

    left and right are the chances a strong player wins each half; the
    final is won by the strong side with probability p when exactly one
    half sends a strong player, so the merge is
    p*(left + right) + (1 - 2p)*left*right.
    """
    for name, v in (("left", left), ("right", right), ("p", p)):
        if not 0.0 <= v <= 1.0:
            raise RangeError(f"{name} must lie in [0, 1], got {v}")
    return p * (left + right) + (1.0 - 2.0 * p) * left * right
