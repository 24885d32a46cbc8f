"""A sure winner who cannot survive any noise.

The hard family gen_hard(n) is a deterministic instance on 2**n players
where player 1 wins the sorted draw with certainty, yet every single one
of the 2**n - 1 matches in that bracket is crucial: flip any match and
player 1 is out.  Under uniform noise of size eps the winning probability
collapses geometrically with the number of rounds.
"""

from bkt import (
    crucial_matches,
    gen_hard,
    hard_path_probability,
    uniform_perturbation,
    win_probabilities,
    winner,
)

n = 6
size = 1 << n
matrix = gen_hard(n)
ident = tuple(range(1, size + 1))

print(f"hard instance on {size} players; winner of the sorted draw:",
      winner(matrix, ident))

rep = crucial_matches(matrix, ident, 1)
print(f"crucial matches: {rep.count} of {size - 1} played")
print("first few:", [(m.round, m.first, m.second) for m in rep.crucial[:4]])

print("\nwinning probability after uniform noise eps on every 0/1 entry:")
print(f"  {'eps':>6}  {'evaluated':>12}  {'closed form':>12}")
for eps in (0.01, 0.05, 0.1, 0.2):
    noisy = uniform_perturbation(matrix, eps)
    wp = float(win_probabilities(noisy, ident)[0])
    closed = hard_path_probability(n, eps)
    print(f"  {eps:>6}  {wp:>12.6f}  {closed:>12.6f}")

print("""
Even one-percent noise already costs player 1 nearly half of the win
probability; at ten percent the "sure" winner is down to about one percent.
The closed form tracks the recursion p(k+1) = p(k) * (p(k)(1-eps) +
(1-p(k))eps) exactly.""")
