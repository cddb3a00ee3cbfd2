#!/usr/bin/env python3
"""The finite connection matrix two ways.

After the mass truncation the difference equation closes on a finite
lattice of exponent classes, counted by a binomial coefficient.  Two
polynomial bases of homogeneous degree M are related by a matrix R; we
compute R once by evaluating one basis at reference points and
contracting with the closed-form inverse of the other basis' value
matrix, and once from the explicit kernel formula, then compare entry by
entry.
"""

import random

from qlaumon.params import sample_params
from qlaumon.qfun import QContext
from qlaumon.rmatrix import (closed_matrix, connection_matrix, draw_mass_data,
                             gauge_match_to_hamiltonian, s_of_m,
                             support_polyhedron_vertices,
                             support_size_formula)

N, M = 3, 2
ps = sample_params(seed=5, N=N)
ctx = QContext(ps.sqrt_q, ps.field)
rng = random.Random(5)
mus, sqrt_mus, lam = draw_mass_data(rng, ps.field, ctx, N, M)

print("=== support lattice ===")
for m in ((2, 0, 0), (1, 1, 0), (1, 0, 1)):
    S = s_of_m(m)
    print("  truncation %s: %d classes (formula %d), polyhedron vertices %s"
          % (m, len(S), support_size_formula(3, sum(m)),
             support_polyhedron_vertices(m)))

print()
print("=== connection solve vs closed form, N=%d M=%d ===" % (N, M))
rc, idx = connection_matrix(N, M, lam, mus, ctx)
rx, _ = closed_matrix(N, M, lam, mus, sqrt_mus, ctx)
print("index set (%d compositions):" % len(idx), idx)
print("entrywise equal:", rc == rx)
print("sample entry R[%s][%s] = %s" % (idx[0], idx[1], rc[0][1]))

print()
print("=== diagonal gauge against the truncated equation matrix (N=2) ===")
ps2 = sample_params(seed=5, N=2)
ctx2 = QContext(ps2.sqrt_q, ps2.field)
mus2, sqrt_mus2, lam2 = draw_mass_data(rng, ps2.field, ctx2, 2, 2)
rep = gauge_match_to_hamiltonian((1, 1), mus2, sqrt_mus2, lam2, ctx2)
print("found:", rep.found)
print("transform:", rep.transform)
print("note:", rep.note)
