"""Computing who wins a knockout bracket.

A tournament is described by two objects: a comparison matrix (entry (i, j)
is the probability that player i beats player j) and a draw (the left-to-
right assignment of players to the leaves of the balanced bracket).  This
script builds a small example and walks through the core evaluation calls.
"""

import numpy as np

from bkt import (
    canonicalize,
    outcome_win_distribution,
    reach_table,
    validate_matrix,
    win_probabilities,
)

# Four players.  1 is a solid favourite, 4 upsets 1 more often than not.
matrix = validate_matrix([
    [0.0, 0.8, 0.7, 0.4],
    [0.2, 0.0, 0.5, 0.3],
    [0.3, 0.5, 0.0, 0.6],
    [0.6, 0.7, 0.4, 0.0],
])

print("win probability of each player, by draw:")
for leaves in [(1, 2, 3, 4), (1, 3, 2, 4), (1, 4, 2, 3)]:
    wp = win_probabilities(matrix, leaves)
    cells = "  ".join(f"{p}:{w:.4f}" for p, w in enumerate(wp, start=1))
    print(f"  {leaves}: {cells}")

# Draws that differ only by swapping the two sides of a match are the same
# tournament.  Evaluation goes through the canonical form, so the numbers
# are not merely close -- they are identical.
a = win_probabilities(matrix, (1, 2, 3, 4))
b = win_probabilities(matrix, (4, 3, 2, 1))
print("\n(1,2,3,4) and (4,3,2,1) are the same bracket:",
      bool(np.array_equal(a, b)))
print("canonical form of (4,3,2,1):", canonicalize((4, 3, 2, 1)).leaves)

# The reach table gives the round-by-round picture: for every node of the
# bracket, the distribution over players that survive to it.
table = reach_table(matrix, (1, 4, 2, 3))
print("\nround-by-round survival for draw (1,4,2,3):")
for level in range(1, table.rounds + 1):
    for node in range(4 >> level):
        dist = table.distribution(level, node)
        cells = "  ".join(f"{p}:{v:.4f}" for p, v in sorted(dist.items()))
        print(f"  after round {level}, node {node}: {cells}")

# For small brackets the recursion can be cross-checked against summing
# over every complete outcome of all N-1 matches.
direct = outcome_win_distribution(matrix, (1, 4, 2, 3))
fast = win_probabilities(matrix, (1, 4, 2, 3))
print("\nrecursion vs full outcome enumeration, max difference:",
      float(np.abs(direct - fast).max()))
