"""First-order robustness of a draw under bounded probability errors.

Winning probability is multilinear in the matrix entries, hence affine in
each unordered pair on its own.  The per-pair slopes give a drop
coefficient S such that an adversary moving every entry by at most eps can
lower the winning probability by S*eps + O(eps^2).  For deterministic
instances the same quantity counts the "crucial" matches whose lone flip
dethrones the winner.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .draws import Draw, canonicalize
from .errors import (
    EpsilonTooLarge,
    NonpositiveEpsilon,
    NotDeterministic,
    NotWinner,
    ScaleError,
)
from .matrix import ComparisonMatrix, validate_matrix
from .winprob import (
    _TreeEvaluator,
    _as_draw,
    _check_dims,
    _win_probabilities_stack,
    win_probabilities,
)

# Corner-scan oracle: candidate sets of size <= 3 per unordered pair keep the
# exhaustive product tractable only for very small instances.
CORNER_ORACLE_PAIR_LIMIT = 13
_CORNER_CHUNK = 4096

DECREASE, INCREASE, HOLD = "decrease", "increase", "hold"


class PairSensitivity(NamedTuple):
    i: int
    j: int
    alpha: float  # slope of wp in the entry P[i,j]
    beta: float  # wp at P[i,j] = 0
    p: float  # the entry itself
    contribution: float  # clipped |alpha|, honouring the boundary


@dataclass(frozen=True, eq=False)
class SensitivityReport:
    """Per-pair affine decomposition of wp plus the aggregate drop coefficient."""

    player: int
    wp: float
    pairs: tuple[PairSensitivity, ...]
    drop_coefficient: float
    validity_bound: float

    def __post_init__(self):
        object.__setattr__(self, "_by_pair", {(ps.i, ps.j): ps for ps in self.pairs})

    def pair(self, i: int, j: int) -> PairSensitivity:
        return self._by_pair[(i, j) if i < j else (j, i)]

    def alpha(self, i: int, j: int) -> float:
        return self.pair(i, j).alpha

    @property
    def alphas(self) -> dict[tuple[int, int], float]:
        return {(ps.i, ps.j): ps.alpha for ps in self.pairs}

    @property
    def betas(self) -> dict[tuple[int, int], float]:
        return {(ps.i, ps.j): ps.beta for ps in self.pairs}

    def to_json_dict(self) -> dict:
        return {
            "player": self.player,
            "wp": self.wp,
            "alphas": [
                {
                    "i": ps.i,
                    "j": ps.j,
                    "alpha": ps.alpha,
                    "beta": ps.beta,
                    "p": ps.p,
                    "contribution": ps.contribution,
                }
                for ps in self.pairs
            ],
            "drop_coefficient": self.drop_coefficient,
            "validity_bound": self.validity_bound,
        }


def _clipped(alpha: float, p: float) -> float:
    # at the boundary only the feasible direction can hurt
    if 0.0 < p < 1.0:
        return abs(alpha)
    if p == 1.0:
        return max(alpha, 0.0)
    return max(-alpha, 0.0)


def sensitivity(m: ComparisonMatrix, d, player: int) -> SensitivityReport:
    """Slopes alpha, intercepts beta and the drop coefficient for one draw.

    Each alpha is obtained from two evaluations of wp with the pair entry
    forced to 0 and to 1; multilinearity makes that exact.  The sum runs
    over unordered pairs {i, j} in lexicographic order.
    """
    d = _as_draw(d)
    _check_dims(m, d)
    ev = _TreeEvaluator(m, canonicalize(d).leaves)
    base = float(ev.root_by_player()[player - 1])
    pairs = []
    total = 0.0
    for i, j in itertools.combinations(range(1, m.size + 1), 2):
        lo = ev.wp_with_pair(i, j, 0.0, player)
        hi = ev.wp_with_pair(i, j, 1.0, player)
        alpha = hi - lo
        p = float(m.probs[i - 1, j - 1])
        contribution = _clipped(alpha, p)
        pairs.append(PairSensitivity(i, j, alpha, lo, p, contribution))
        total += contribution
    return SensitivityReport(
        player=player,
        wp=base,
        pairs=tuple(pairs),
        drop_coefficient=total,
        validity_bound=m.xi,
    )


@dataclass(frozen=True)
class DropEstimate:
    """First-order worst-case drop S*eps and the guaranteed remainder."""

    epsilon: float
    drop: float
    guaranteed: float
    clamped: bool
    exceeds_validity: bool

    def to_json_dict(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "drop": self.drop,
            "guaranteed": self.guaranteed,
            "clamped": self.clamped,
            "exceeds_validity": self.exceeds_validity,
        }


def drop_estimate(report: SensitivityReport, eps: float) -> DropEstimate:
    """First-order estimate of the eps-adversary's damage."""
    if eps <= 0.0:
        raise NonpositiveEpsilon(f"eps must be positive, got {eps}")
    drop = report.drop_coefficient * eps
    raw = report.wp - drop
    guaranteed = min(1.0, max(0.0, raw))
    return DropEstimate(
        epsilon=eps,
        drop=drop,
        guaranteed=guaranteed,
        clamped=guaranteed != raw,
        exceeds_validity=eps > report.validity_bound,
    )


@dataclass(frozen=True, eq=False)
class WorstPerturbationWitness:
    """Realized adversarial matrix moving each pair against the player."""

    directions: dict[tuple[int, int], str]
    epsilon: float
    matrix: ComparisonMatrix

    def to_json_dict(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "directions": [
                {"i": i, "j": j, "direction": way}
                for (i, j), way in sorted(self.directions.items())
            ],
            "matrix": self.matrix.to_json_dict(),
        }


def worst_perturbation_witness(
    report: SensitivityReport, m: ComparisonMatrix, eps: float
) -> WorstPerturbationWitness:
    """Move each pair entry by eps against the sign of its slope.

    Requires eps <= xi(P) so no entry leaves [0, 1].  The result realizes
    the first-order drop up to O(eps^2).
    """
    if eps <= 0.0:
        raise NonpositiveEpsilon(f"eps must be positive, got {eps}")
    if eps > m.xi:
        raise EpsilonTooLarge(f"eps {eps} exceeds the validity bound xi = {m.xi}")
    arr = m.probs.copy()
    directions = {}
    for ps in report.pairs:
        if ps.alpha > 0.0 and ps.p > 0.0:
            way, new = DECREASE, ps.p - eps
        elif ps.alpha < 0.0 and ps.p < 1.0:
            way, new = INCREASE, ps.p + eps
        else:
            way, new = HOLD, ps.p
        directions[(ps.i, ps.j)] = way
        arr[ps.i - 1, ps.j - 1] = new
        arr[ps.j - 1, ps.i - 1] = 1.0 - new
    return WorstPerturbationWitness(
        directions=directions, epsilon=eps, matrix=validate_matrix(arr)
    )


class Match(NamedTuple):
    round: int  # 1-based round
    node: int  # 0-based slot within the round, left to right
    first: int  # player arriving from the left child
    second: int  # player arriving from the right child


@dataclass(frozen=True, eq=False)
class CrucialMatchReport:
    """Matches whose lone flipped outcome makes the player lose the title."""

    player: int
    crucial: tuple[Match, ...]

    @property
    def count(self) -> int:
        return len(self.crucial)

    def ids(self) -> set[tuple[int, int]]:
        return {(mt.round, mt.node) for mt in self.crucial}

    def to_json_dict(self) -> dict:
        return {
            "player": self.player,
            "count": self.count,
            "crucial": [
                {"round": mt.round, "node": mt.node, "first": mt.first, "second": mt.second}
                for mt in self.crucial
            ],
        }


def _winner_levels(m: ComparisonMatrix, d: Draw) -> list[list[int]]:
    probs = m.probs
    levels = [[x - 1 for x in d.leaves]]
    while len(levels[-1]) > 1:
        prev = levels[-1]
        levels.append(
            [a if probs[a, b] == 1.0 else b for a, b in zip(prev[::2], prev[1::2])]
        )
    return levels


def _require_winner(m: ComparisonMatrix, d: Draw, player: int) -> list[list[int]]:
    if not m.deterministic:
        raise NotDeterministic("crucial matches need a 0/1 matrix")
    levels = _winner_levels(m, d)
    if levels[-1][0] != player - 1:
        raise NotWinner(f"player {player} does not win this draw")
    return levels


def crucial_matches(m: ComparisonMatrix, d, player: int) -> CrucialMatchReport:
    """All crucial matches, in O(N log N).

    Subtree winners are computed once; flipping one match then only needs
    the winners recomputed along its ancestor path.
    """
    d = _as_draw(d)
    _check_dims(m, d)
    levels = _require_winner(m, d, player)
    probs = m.probs
    rounds = d.rounds
    found = []
    for r in range(1, rounds + 1):
        below = levels[r - 1]
        for node in range(len(levels[r])):
            a, b = below[2 * node], below[2 * node + 1]
            cur = b if levels[r][node] == a else a  # the flipped outcome
            idx = node
            for rr in range(r + 1, rounds + 1):
                sib = levels[rr - 1][idx ^ 1]
                cur = cur if probs[cur, sib] == 1.0 else sib
                idx >>= 1
            if cur != player - 1:
                found.append(Match(r, node, a + 1, b + 1))
    return CrucialMatchReport(player=player, crucial=tuple(found))


def _replay_with_flip(probs: np.ndarray, leaves0: list[int], fr: int, fnode: int) -> int:
    cur = leaves0
    r = 1
    while len(cur) > 1:
        nxt = []
        for k, (a, b) in enumerate(zip(cur[::2], cur[1::2])):
            w = a if probs[a, b] == 1.0 else b
            if r == fr and k == fnode:
                w = b if w == a else a
            nxt.append(w)
        cur = nxt
        r += 1
    return cur[0]


def crucial_matches_oracle(m: ComparisonMatrix, d, player: int) -> CrucialMatchReport:
    """Naive O(N^2) check: replay the whole bracket once per flipped match."""
    d = _as_draw(d)
    _check_dims(m, d)
    if m.size > 64:
        raise ScaleError("the replay oracle is limited to 64 players")
    levels = _require_winner(m, d, player)
    probs = m.probs
    leaves0 = [x - 1 for x in d.leaves]
    found = []
    for r in range(1, d.rounds + 1):
        below = levels[r - 1]
        for node in range(len(levels[r])):
            if _replay_with_flip(probs, leaves0, r, node) != player - 1:
                found.append(Match(r, node, below[2 * node] + 1, below[2 * node + 1] + 1))
    return CrucialMatchReport(player=player, crucial=tuple(found))


def _corner_candidates(p: float, eps: float) -> list[float]:
    vals = {v for v in (p - eps, p + eps) if 0.0 <= v <= 1.0}
    vals |= {v for v in (0.0, 1.0) if p - eps <= v <= p + eps}
    return sorted(vals)


def exact_worst_drop_oracle(
    m: ComparisonMatrix, d, player: int, eps: float, *, allow_large: bool = False
) -> tuple[float, ComparisonMatrix]:
    """Exact worst-case drop by exhaustive corner evaluation.

    Multilinearity puts the minimum of wp over the eps-box at a corner, so
    scanning the per-pair interval endpoints (plus 0/1 when reachable) is
    exact.  Returns (drop, minimizing matrix).
    """
    d = _as_draw(d)
    _check_dims(m, d)
    if eps <= 0.0:
        raise NonpositiveEpsilon(f"eps must be positive, got {eps}")
    pair_list = list(itertools.combinations(range(1, m.size + 1), 2))
    if len(pair_list) > CORNER_ORACLE_PAIR_LIMIT and not allow_large:
        raise ScaleError(
            f"{len(pair_list)} pairs exceed the corner-scan limit "
            f"{CORNER_ORACLE_PAIR_LIMIT}; pass allow_large=True to force"
        )
    candidates = [
        _corner_candidates(float(m.probs[i - 1, j - 1]), eps) for i, j in pair_list
    ]
    leaves = canonicalize(d).leaves
    base_wp = float(win_probabilities(m, d)[player - 1])
    best_wp = None
    best_matrix = None
    corners = itertools.product(*candidates)
    while True:
        chunk = list(itertools.islice(corners, _CORNER_CHUNK))
        if not chunk:
            break
        stack = np.repeat(m.probs[None, :, :], len(chunk), axis=0)
        for k, (i, j) in enumerate(pair_list):
            col = np.array([c[k] for c in chunk])
            stack[:, i - 1, j - 1] = col
            stack[:, j - 1, i - 1] = 1.0 - col
        wps = _win_probabilities_stack(stack, leaves)[:, player - 1]
        k = int(np.argmin(wps))
        if best_wp is None or wps[k] < best_wp:
            best_wp = float(wps[k])
            best_matrix = stack[k].copy()
    return base_wp - best_wp, validate_matrix(best_matrix)
