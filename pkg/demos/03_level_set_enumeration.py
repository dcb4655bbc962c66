"""Exact enumeration of nested level-set intersections.

A level set for modulus q is a union of q arcs around the shifted rationals
(p + theta)/q.  Intersecting the first J of them gives a certified component
count, component sizes and gaps per level; everything is exact interval
arithmetic on a dyadic grid, so the counts are ranges that collapse to a
point whenever the precision suffices.
"""

from fractions import Fraction as F

from liminfdim import LevelParams, QSequence, build_level, prefix_intersection

# One level: 5 arcs of radius 1/25 around the fifths.
params = LevelParams(theta=(F(0),), tau=F(1))
level = build_level(5, params)
print("q=5 level set: components", level.count,
      "total length in", tuple(map(float, level.length_bounds())))

# Two levels, q = 3 then 81: the 81 small arcs survive only inside the
# 3 big ones.  The count is certified exact here.
res = prefix_intersection(QSequence((3, 81)), params)
print("\nintersection of levels (3, 81):")
print(f"  {'level':>5} {'q':>5} {'count':>12} {'max len':>12} {'min gap':>12}")
for st in res.levels:
    cnt = f"[{st.count.min},{st.count.max}]"
    print(f"  {st.level:>5} {st.q:>5} {cnt:>12} {float(st.max_len):>12.3e} "
          f"{float(st.min_gap):>12.3e}")

# A shifted target works the same way:
res = prefix_intersection(QSequence((3, 81)), LevelParams(theta=(F(1, 3),), tau=F(1)))
print("\nsame moduli, theta = 1/3: final count", res.final_count)

# The critical-growth family collapses: however deep we go, everything
# stays inside the q_1 = 64 first-level arcs and the total length dies.
qs = QSequence((64, 512, 32768))
res = prefix_intersection(qs, params)
print("\ncontractive family (64, 512, 32768):")
for st in res.levels:
    print(f"  level {st.level}: count [{st.count.min},{st.count.max}]"
          f"  total length {float(st.total_len):.3e}")
print("  never exceeds q1 = 64 components; length shrinks like 128/q_J^2")
