"""Comparison matrices: validated pairwise win probabilities."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ComplementarityError, DimensionError, RangeError

# Tolerance for P[i,j] + P[j,i] = 1.  Entries themselves are checked against
# [0, 1] exactly.
COMPLEMENT_ATOL = 1e-9


def _is_power_of_two(k: int) -> bool:
    return k >= 2 and (k & (k - 1)) == 0


@dataclass(frozen=True, eq=False)
class ComparisonMatrix:
    """N x N pairwise win probabilities for N = 2**n players.

    probs[i-1, j-1] holds the probability that player i beats player j.
    Diagonal entries are meaningless; they are stored as 0.0 and never read.
    Instances are created through validate_matrix and treated as immutable.
    """

    probs: np.ndarray
    n: int
    deterministic: bool
    xi: float

    @property
    def size(self) -> int:
        """Number of players N = 2**n."""
        return self.probs.shape[0]

    def probability(self, i: int, j: int) -> float:
        """Probability that player i beats player j (1-based, i != j)."""
        if i == j:
            raise ValueError("probability is undefined for i == j")
        return float(self.probs[i - 1, j - 1])

    def with_entry(self, i: int, j: int, p: float) -> "ComparisonMatrix":
        """New matrix with P[i,j] = p and P[j,i] = 1 - p."""
        if not 0.0 <= p <= 1.0:
            raise RangeError(f"entry {p!r} outside [0, 1]")
        out = self.probs.copy()
        out[i - 1, j - 1] = p
        out[j - 1, i - 1] = 1.0 - p
        return validate_matrix(out)

    def to_json_dict(self) -> dict:
        """Serializable form {"n": ..., "matrix": [...]} with a null diagonal."""
        rows = [
            [None if i == j else float(self.probs[i, j]) for j in range(self.size)]
            for i in range(self.size)
        ]
        return {"n": self.n, "matrix": rows}


def _to_float(v) -> float:
    # non-numbers become NaN here; validate_matrix rejects NaN off-diagonal
    try:
        return float(v)
    except (TypeError, ValueError):
        return np.nan


def _coerce(raw) -> np.ndarray:
    if isinstance(raw, np.ndarray) and raw.dtype != object:
        arr = raw.astype(float, copy=True)
    else:
        try:
            arr = np.array([[_to_float(v) for v in row] for row in raw], dtype=float)
        except (TypeError, ValueError):
            raise DimensionError("matrix must be a rectangular table of numbers") from None
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"matrix must be square, got shape {arr.shape}")
    if not _is_power_of_two(arr.shape[0]):
        raise DimensionError(f"side {arr.shape[0]} is not a power of two >= 2")
    return arr


def validate_matrix(raw) -> ComparisonMatrix:
    """Validate a square probability table and wrap it.

    Accepts any nested sequence or array.  Diagonal entries may be None, NaN
    or arbitrary numbers; they are ignored.  Raises DimensionError on bad
    shape, RangeError for entries outside [0, 1] and ComplementarityError
    when some P[i,j] + P[j,i] differs from 1 by more than 1e-9.
    """
    if isinstance(raw, ComparisonMatrix):
        return raw
    arr = _coerce(raw)
    side = arr.shape[0]
    diag = np.eye(side, dtype=bool)
    vals = arr[~diag]
    if np.isnan(vals).any():
        raise RangeError("off-diagonal entries must be numbers")
    if (vals < 0.0).any() or (vals > 1.0).any():
        bad = float(vals[(vals < 0.0) | (vals > 1.0)][0])
        raise RangeError(f"entry {bad!r} outside [0, 1]")
    gap = np.abs(arr + arr.T - 1.0)
    gap[diag] = 0.0
    if (gap > COMPLEMENT_ATOL).any():
        i, j = np.unravel_index(int(np.argmax(gap)), gap.shape)
        raise ComplementarityError(
            f"P[{i + 1},{j + 1}] + P[{j + 1},{i + 1}] = {float(arr[i, j] + arr[j, i])!r} != 1"
        )
    np.fill_diagonal(arr, 0.0)
    arr.setflags(write=False)
    deterministic = bool(np.all((vals == 0.0) | (vals == 1.0)))
    xi = float(vals[vals > 0.0].min())
    return ComparisonMatrix(
        probs=arr,
        n=side.bit_length() - 1,
        deterministic=deterministic,
        xi=xi,
    )


def matrix_from_json_dict(obj) -> ComparisonMatrix:
    """Build a matrix from the {"n": ..., "matrix": [...]} file format."""
    if not isinstance(obj, dict) or "matrix" not in obj:
        raise DimensionError('matrix file must be an object with a "matrix" key')
    m = validate_matrix(obj["matrix"])
    declared = obj.get("n")
    if declared is not None and declared != m.n:
        raise DimensionError(f"declared n={declared} but matrix side is {m.size}")
    return m
