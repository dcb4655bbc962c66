"""Sequence families and their growth exponents.

The geometry downstream is controlled by two statistics of the modulus
sequence q_1 < q_2 < ...: the step exponent log q_{j+1} / log q_j (how fast
the sequence accelerates) and the cumulative exponent
(log q_1 + ... + log q_{j-1}) / log q_j.  The dimension machinery needs the
step exponent to stay above tau + 1.
"""

from fractions import Fraction as F

from liminfdim import (
    AlternatingSpec,
    ContractiveSpec,
    PowerSpec,
    exponent_stats,
    generate,
    reindex_even,
    validate_regime,
)

# A power family q_{j+1} = q_j^4: the cumulative exponent converges to
# 1/(4-1) = 1/3, which will reappear as the dimension value.
qs = generate(PowerSpec(4, F(4)), 6)
stats = exponent_stats(qs)
print("power family:", [f"2^{q.bit_length() - 1}" for q in qs.terms])
print("  step exponents:", [float(h.midpoint()) for h in stats.h_list])
print("  cumulative:    ", [round(float(a.midpoint()), 6) for a in stats.alpha_list])
print("  regime (tau=1):", validate_regime(qs, F(1)).status.value)

# The contractive family sits exactly at the critical growth rate
# q_{j+1} ~ q_j^(1+tau)/8; the regime check must fail.
qs = generate(ContractiveSpec(64, F(1)), 4)
print("\ncontractive family:", qs.terms)
res = validate_regime(qs, F(1))
print("  regime (tau=1):", res.status.value, "at step", res.index)

# Alternating slow/fast steps fail the regime as given...
qs = generate(AlternatingSpec(3, F(1), F(5)), 6)
print("\nalternating family:", [str(q) if q < 10 ** 12 else f"~1e{len(str(q)) - 1}"
                                for q in qs.terms])
print("  regime (tau=1):", validate_regime(qs, F(1)).status.value)

# ...but keeping every second term restores it for the rescaled exponent
# tau * (2 + tau): the slow steps are absorbed into the faster shrinking.
sub, tau_hat = reindex_even(qs, F(1))
print("  keep even positions, tau ->", tau_hat)
print("  regime (tau_hat):", validate_regime(sub, tau_hat).status.value)
sub_stats = exponent_stats(sub)
print("  reindexed step exponents:", [round(float(h.midpoint()), 3)
                                      for h in sub_stats.h_list])
