"""Two-sided dimension estimation for the fourth-power family.

The box-cover count gives an upper estimate, the kept-children count of the
nested subdivision a lower one; both converge to d(1 - tau*alpha)/(tau + 1)
as depth grows.  For q_{j+1} = q_j^4 with tau = 1 the limit is exactly 1/3.
Writes an SVG of the closing bracket next to this script.
"""

from fractions import Fraction as F
from pathlib import Path

from liminfdim import (
    PowerSpec,
    exponent_stats,
    generate,
    lower_cantor_count,
    theoretical_dimension,
    upper_dim_estimate,
)
from liminfdim.svg import Plot

qs = generate(PowerSpec(4, F(4)), 6)
stats = exponent_stats(qs)
limit = theoretical_dimension(F(1), stats.alpha_last, 1).as_enclosure()
print("formula value from the prefix:", float(limit.midpoint()), "(limit: 1/3)")

print(f"\n{'depth':>5} {'lower':>12} {'upper':>12} {'bracket width':>14}")
rows = []
for depth in range(2, 7):
    up = upper_dim_estimate(qs, F(1), depth=depth)
    low = lower_cantor_count(qs, F(1), depth=depth).s_hat
    width = float(up.hi.as_fraction() - low.lo.as_fraction())
    print(f"{depth:>5} {float(low.midpoint()):>12.6f} "
          f"{float(up.midpoint()):>12.6f} {width:>14.2e}")
    rows.append((depth, float(low.midpoint()), float(up.midpoint())))

sub = lower_cantor_count(qs, F(1))
print("\ndepth-6 subdivision exponent exactly:",
      sub.s_hat.lo.as_fraction(), "=", float(sub.s_hat.lo.as_fraction()))

plot = Plot("dimension estimates by depth", "depth", "estimate")
plot.add_series("upper estimate", [(d, u) for d, _, u in rows], color="crimson")
plot.add_series("lower estimate", [(d, l) for d, l, _ in rows], color="steelblue")
plot.add_hline(1 / 3, "1/3")
out = Path(__file__).with_name("dimension_bracket.svg")
out.write_text(plot.render(), encoding="ascii")
print("wrote", out)
