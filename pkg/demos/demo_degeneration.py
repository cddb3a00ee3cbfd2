#!/usr/bin/env python3
"""First-order degeneration q -> 1 and the annihilating operator.

With q = 1 + h and h^2 = 0, every finite q-Pochhammer expands exactly;
tuple by tuple the powers of h cancel between numerator and denominator
of the partition-function weights, so the limit series has plain rational
coefficients.  A second-order differential-shift operator then kills the
limit series identically -- checked coefficient by coefficient.
"""

from fractions import Fraction

from qlaumon.fourd import (AdditiveParams, annihilator_op, fst_check,
                           jet_poch, laumon_4d, poch_expansion_formula)

print("=== jet expansion of a finite q-Pochhammer ===")
a, b, x = 2, 3, Fraction(1, 4)
got = jet_poch(a, b, x)
print("(q^%d x; q)_%d at x = %s, q = 1 + h:" % (a, b, x))
print("  jet value          :", got)
print("  first-order formula:", poch_expansion_formula(a, b, x))

print()
print("=== limit of the rank-one series is a binomial series ===")
ap = AdditiveParams(1, Fraction(10, 7), [Fraction(2, 11)],
                    [Fraction(5, 13)], [Fraction(7, 17)])
psi = laumon_4d(ap, 5)
print("exponent of (1-x):", ap.m[0] * ap.mbar[0] / ap.eps)
for k in range(6):
    print("  coefficient of x^%d = %s" % (k, psi.get((k,))))

print()
print("=== annihilation at rank two and three ===")
for (N, D) in ((2, 5), (3, 4)):
    ap = AdditiveParams.sample(3, N)
    psi = laumon_4d(ap, D)
    residual = annihilator_op(ap, D)(psi)
    through, offender = fst_check(ap, D)
    print("N=%d, cap %d: %d limit coefficients, operator image zero: %s"
          % (N, D, len(psi.terms), residual.is_zero()))
