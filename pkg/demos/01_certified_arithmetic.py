"""Tour of the certified arithmetic kernel.

Every irrational quantity the library touches is produced as an enclosure:
a pair of dyadic numbers (integer mantissa times a power of two) guaranteed
to bracket the true value.  Dyadic addition and multiplication are exact;
powers, logs and divisions round outward at a chosen precision.
"""

from fractions import Fraction as F

from liminfdim import dir_pow, log2_int, log_ratio

# Integer powers with rational exponents.  Perfect powers come out exact:
e = dir_pow(4, F(-1, 2), prec=64)
print("4^(-1/2)      =", e.lo.as_fraction(), "(exact)" if e.is_exact else "")

# 3^(-1) = 1/3 is not dyadic, so we get a bracket of the requested width:
e = dir_pow(3, -1, prec=16)
print("3^(-1)        in", e.float_bounds(), "width", float(e.width()))

# The enclosure narrows as precision grows, and never widens:
for prec in (16, 32, 64, 128):
    print(f"  prec {prec:>3}: width {float(dir_pow(3, -1, prec).width()):.3e}")

# Logarithm ratios detect power relations and are exact there:
print("log 16 / log 2   =", log_ratio(16, 2).lo.as_fraction())
print("log 10 / log 1000 =", log_ratio(10, 1000).float_bounds(), "(contains 1/3)")

# General case: a tight certified bracket around an irrational value.
e = log_ratio(100, 3, prec=64)
print("log 100 / log 3  in", e.float_bounds())

# The same machinery handles very large arguments without losing soundness:
n = 3 ** 4000 + 12345
e = log2_int(n, prec=64)
print("log2(3^4000 + 12345) ~", e.float_bounds()[0])

# Soundness is decidable: comparing an enclosure against any rational is an
# exact integer comparison, never a float guess.
e = dir_pow(2, F(1, 2), prec=128)
print("sqrt(2) > 1.41421356?", e.certainly_gt(F(141421356, 10 ** 8)))
print("sqrt(2) > 1.41421357?", e.certainly_gt(F(141421357, 10 ** 8)))
