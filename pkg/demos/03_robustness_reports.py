"""Measuring how much a draw protects its winner.

Two draws can both make player 1 a sure winner and still react very
differently to noise.  The sensitivity report measures this: for every
pair it fits wp as an affine function of that entry, clips the slope by
which directions an adversary can actually move, and sums.  The resulting
drop coefficient S bounds the first-order loss: wp can fall by at most
S * eps for perturbations up to eps (within the validity bound).
"""

from bkt import (
    drop_estimate,
    exact_worst_drop_oracle,
    gen_unbalanced,
    sensitivity,
    win_probabilities,
    worst_perturbation_witness,
)

matrix = gen_unbalanced(3)  # 8 players; 1 beats everyone, 2 beats no one
ident = (1, 2, 3, 4, 5, 6, 7, 8)
spread = (1, 2, 3, 5, 4, 6, 7, 8)

for leaves in (ident, spread):
    rep = sensitivity(matrix, leaves, 1)
    print(f"draw {leaves}: wp={rep.wp}, drop coefficient={rep.drop_coefficient}")

print("""
Both draws win outright, but the second exposes player 1 to fewer decisive
matches.  First-order estimates for eps = 0.05:""")
for leaves in (ident, spread):
    rep = sensitivity(matrix, leaves, 1)
    est = drop_estimate(rep, 0.05)
    print(f"  {leaves}: drop <= {est.drop:.3f}, guaranteed wp >= {est.guaranteed:.3f}")

# The witness realizes the first-order worst case: decrease pairs whose
# slope helps player 1, increase pairs whose slope hurts, hold the rest.
rep = sensitivity(matrix, spread, 1)
wit = worst_perturbation_witness(rep, matrix, 0.05)
moved = {pair: d for pair, d in sorted(wit.directions.items()) if d != "hold"}
print("\nadversarial directions against the second draw:", moved)
print("wp under that matrix:",
      float(win_probabilities(wit.matrix, spread)[0]))

# At 4 players the exact worst case over all corner perturbations is
# enumerable, which keeps the first-order machinery honest.
import numpy as np
from bkt import validate_matrix

small = validate_matrix(np.full((4, 4), 0.5) - 0.5 * np.eye(4))
rep = sensitivity(small, (1, 2, 3, 4), 1)
exact, worst = exact_worst_drop_oracle(small, (1, 2, 3, 4), 1, 0.1)
print(f"\neven 4-player field, eps=0.1: first-order drop "
      f"{rep.drop_coefficient * 0.1:.3f}, exact worst drop {exact:.3f}")
print("adversary's matrix, row of player 1:", worst.probs[0].tolist())
