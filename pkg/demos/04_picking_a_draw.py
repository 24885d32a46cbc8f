"""Choosing a draw: best chances now, or fewer ways to lose later.

First the mixing effect: when half the field beats the other half with a
fixed probability p > 1/2, seeding every strong player against a weak one
in round one maximizes the strong side's win probability.  Then a
trade-off: the draw with the best headline probability is not always the
one that degrades most gracefully, and a tiny tolerance can buy a lot of
robustness.
"""

from bkt import (
    best_draw,
    bigsmall_even_probability,
    enumerate_delta_optimal,
    gen_bigsmall,
    gen_threetier,
    most_robust_winning_draw,
    win_probabilities,
)

inst = gen_bigsmall(2, 0.6)
print("big players:", inst.big, " small players:", inst.small)
for leaves in [(1, 2, 3, 4), (1, 3, 2, 4)]:
    wp = win_probabilities(inst.matrix, leaves)
    big_total = sum(float(wp[b - 1]) for b in inst.big)
    kind = "banked together" if leaves == (1, 2, 3, 4) else "spread out"
    print(f"  {leaves} ({kind}): big side wins {big_total:.4f}")
print("closed form for the spread-out draw:",
      bigsmall_even_probability(2, 0.1))

d, wp = best_draw(inst.matrix, 3)
print(f"best draw for player 3: {d.leaves} with wp {wp:.4f}")

# An 8-player three-tier instance where the headline-optimal draws are the
# fragile ones.
t = gen_threetier(2, 0.02)
print("\nthree-tier instance, draws within delta of player 1's best wp:")
for delta in (0.0, 0.001):
    entries = enumerate_delta_optimal(t, 1, delta)
    print(f"  delta={delta}: {len(entries)} draw(s), "
          f"drop coefficients {sorted({round(e.drop_coefficient, 4) for e in entries})}")

tight = most_robust_winning_draw(t, 1, 0.0)
loose = most_robust_winning_draw(t, 1, 0.001)
print(f"""
sturdiest draw at delta=0:     {tight.draw.leaves}
    wp {tight.wp:.6f}, drop coefficient {tight.drop_coefficient:.4f}
sturdiest draw at delta=0.001: {loose.draw.leaves}
    wp {loose.wp:.6f}, drop coefficient {loose.drop_coefficient:.4f}

Giving up 0.001 of winning probability lowers the first-order exposure:
under noise the nominally best draws lose their edge.""")
