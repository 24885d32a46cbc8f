"""Can the organizer fix the bracket for a chosen player?

Four decision problems, all answered through one entry point:

  TFP    is there a draw player i wins for sure?        (deterministic P)
  PTFP   is there a draw with wp >= q?
  RTFP   ... a winning draw with drop coefficient <= c? (deterministic P)
  RPTFP  ... a draw with wp >= q and coefficient <= s?

Up to 8 players the solver scans every draw class in lexicographic order
and the answer is exact.  Beyond that it switches to a seeded hill-climb
over block swaps: a found witness is still independently verified, but
"not found" is inconclusive.
"""

import numpy as np

from bkt import (
    SolveRequest,
    gen_hard,
    gen_unbalanced,
    solve,
    validate_matrix,
    win_probabilities,
)

hard = gen_hard(3)
for player in (1, 2):
    res = solve(SolveRequest("TFP", hard, player))
    extra = f", witness {res.witness.leaves}" if res.witness else ""
    print(f"TFP for player {player}: {res.verdict}"
          f" after {res.draws_examined} draw(s){extra}")

unbal = gen_unbalanced(3)
for c in (4.0, 3.0, 2.0):
    res = solve(SolveRequest("RTFP", unbal, 1, c=c))
    extra = (f", witness {res.witness.leaves} with coefficient "
             f"{res.drop_coefficient}" if res.witness else "")
    print(f"RTFP with c={c}: {res.verdict}{extra}")

# A 16-player random instance: too large for the exact scan, so the
# heuristic searches for a draw beating the sorted draw's wp by 5 points.
rng = np.random.default_rng(5)
a = 0.05 + 0.9 * rng.random((16, 16))
upper = np.triu(a, 1)
matrix = validate_matrix(upper + (1.0 - upper.T) * (np.tri(16, k=-1) > 0))
base = float(win_probabilities(matrix, tuple(range(1, 17)))[0])
res = solve(SolveRequest("PTFP", matrix, 1, q=base + 0.05))
print(f"\n16-player PTFP, q = {base + 0.05:.4f}: {res.verdict} "
      f"(exact={res.exact}, {res.draws_examined} draws evaluated)")
if res.witness is not None:
    print(f"witness {res.witness.leaves} reaches wp {res.wp:.4f}")
