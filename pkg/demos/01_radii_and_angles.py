"""How big is the rose, and how fast do its petals turn?

Petal P_n has a median of length r_n with r_n^2 = 1 + 1/4 + ... + 1/n^2,
so the radii climb towards pi/sqrt(6) without reaching it.  The apex angle
theta_n shrinks like 1/n, which means the angles keep adding up forever:
a long enough branch of petals winds past any angle you like.
"""

import math

from rose import FLAT, HYPERBOLIC, get_metric, get_table

flat = get_table(FLAT)
limit = math.pi / math.sqrt(6)

print(f"radius bound pi/sqrt(6) = {limit:.12f}")
print(f"{'n':>6} {'r_n':>16} {'theta_n (deg)':>14} {'sum theta (deg)':>16}")
for n in (1, 2, 3, 4, 10, 100, 1000, 10_000):
    print(f"{n:>6} {flat.radius(n):16.12f} {math.degrees(flat.theta(n)):14.6f} "
          f"{math.degrees(flat.theta_sum(1, n)):16.4f}")

# r_3 is a rational square root: 1 + 1/4 + 1/9 = 49/36
print("r_3 - 7/6 =", flat.radius(3) - 7 / 6)

# sin(theta_n) * pi (n+1) / sqrt 6 stays above 1, but only just
worst = min(math.sin(flat.theta(n)) * limit * (n + 1) for n in range(1, 10_001))
print(f"min over n <= 10^4 of sin(theta_n) pi (n+1)/sqrt 6 = {worst:.9f}")

# once the angles past level 1 reach pi, the shortest way out to that
# petal runs through the center
for kappa in (FLAT, HYPERBOLIC):
    m = get_metric(kappa)
    print(f"{kappa.name.lower():>10}: through-center level for pi = {m.through_center_level(1, math.pi)}, "
          f"for pi/3 = {m.through_center_level(1, math.pi / 3)}")

hyp = get_table(HYPERBOLIC)
print(f"hyperbolic radii: s_1000 = {hyp.radius(1000):.10f}, s_2000 = {hyp.radius(2000):.10f}")
