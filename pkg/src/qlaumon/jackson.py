"""Symmetrized cocycle polynomials and their rank.

The building blocks are degree-(N-1) factors

    f_l(z) = (1 - a_{l+2}^{-1} z) ... (1 - a_N^{-1} z) (1 - b_1 z) ... (1 - b_l z)

for l = 0..N-1, combined into symmetric functions of M variables by an
antisymmetrized product against the q-deformed Vandermonde and divided by
the plain Vandermonde.  The family is indexed by the compositions
(r_0..r_{N-1}) of M and is expected to span a space of dimension
binomial(N+M-1, M); the rank computation checks that expectation at desk
scale.

The antisymmetrizer is the plain signed sum over all M! permutations
(M <= 5 here): correctness over speed.
"""

from __future__ import annotations

from itertools import permutations
from math import comb

from .rmatrix import compositions
from .scalars import spow


class CocycleSpec:
    """Parameter families a_k, b_k (k = 1..N) and the sizes (N, M)."""

    def __init__(self, N, M, a_params, b_params, q, field):
        self.N = N
        self.M = M
        self.a = list(a_params)
        self.b = list(b_params)
        self.q = q
        self.field = field

    @staticmethod
    def from_params(ps, mvec):
        """The parametrization induced by a sampled parameter set and a
        truncation vector: a_k = b_k^{-1} q^{1-m_k} kappa^{k-1},
        b_k = b_k d_k^{-1} kappa^{1-k}."""
        N = ps.N
        a = [spow(ps.q, 1 - mvec[k]) * spow(ps.kappa, k) / ps.b(k)
             for k in range(N)]
        b = [ps.b(k) / ps.d(k) * spow(ps.kappa, -k) for k in range(N)]
        return CocycleSpec(N, sum(mvec), a, b, ps.q, ps.field)


def cocycle_factor(spec, ell, z):
    """f_ell evaluated at the scalar z (0-based ell in 0..N-1)."""
    f = spec.field
    out = f.one
    for k in range(ell + 1, spec.N):      # paper's a_{l+2}..a_N, 0-based a[k]
        out = out * (f.one - z / spec.a[k])
    for k in range(ell):                  # paper's b_1..b_l, 0-based b[k]
        out = out * (f.one - spec.b[k] * z)
    return out


def _vandermonde(zs, field, shift=None):
    """prod_{i<j} (z_i - c z_j) with c = 1 by default."""
    c = shift if shift is not None else field.one
    out = field.one
    for i in range(len(zs)):
        for j in range(i + 1, len(zs)):
            out = out * (zs[i] - c * zs[j])
    return out


def cocycle_eval(spec, rvec, zs):
    """The symmetrized cocycle function at a tuple of distinct points:

        prod_k 1/[r_k]! * Vand(z)^{-1} *
        sum over permutations of sgn * prod blocks f_l * q-Vandermonde,

    where the first r_0 slots take f_0, the next r_1 take f_1, and so on,
    [r]! = prod_{j<=r} (1 - q^{-j})/(1 - q^{-1}), with q taken from the
    parameter object.
    """
    f = spec.field
    M = spec.M
    if len(zs) != M:
        raise ValueError("need %d points" % M)
    if sum(rvec) != M or len(rvec) != spec.N:
        raise ValueError("bad block sizes")
    for i in range(M):
        for j in range(i + 1, M):
            if zs[i] == zs[j]:
                raise ValueError("evaluation points must be distinct")
    q = spec.q
    qinv = 1 / q
    norm = f.one
    for r in range(spec.N):
        for j in range(1, rvec[r] + 1):
            norm = norm * (f.one - spow(qinv, j)) / (f.one - qinv)
    blocks = []
    for ell, r in enumerate(rvec):
        blocks.extend([ell] * r)

    total = f.zero
    for perm in permutations(range(M)):
        sgn = _perm_sign(perm)
        term = f.one
        pz = [zs[p] for p in perm]
        for slot, ell in enumerate(blocks):
            term = term * cocycle_factor(spec, ell, pz[slot])
        term = term * _vandermonde(pz, f, qinv)
        total = total + (term if sgn > 0 else -term)
    return total / (_vandermonde(zs, f) * norm)


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def cocycle_rank(spec, point_sets):
    """Rank of the family {phi_r} evaluated at the supplied generic point
    configurations (one row per r, one column per configuration)."""
    rvecs = compositions(spec.N, spec.M)
    rows = [[cocycle_eval(spec, r, zs) for zs in point_sets] for r in rvecs]
    return _rank(rows, spec.field), len(rvecs)


def expected_rank(N, M):
    return comb(N + M - 1, M)


def _rank(rows, field):
    mat = [row[:] for row in rows]
    nrow = len(mat)
    ncol = len(mat[0]) if mat else 0
    rank = 0
    for col in range(ncol):
        piv = next((r for r in range(rank, nrow) if mat[r][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [x * inv for x in mat[rank]]
        for r in range(nrow):
            if r != rank and mat[r][col]:
                fac = mat[r][col]
                mat[r] = [x - fac * y for x, y in zip(mat[r], mat[rank])]
        rank += 1
    return rank


# -- dense polynomial form (small M): divisibility by the Vandermonde ---------


def cocycle_poly(spec, rvec):
    """The symmetrized cocycle as a dense polynomial (dict exponent tuple
    -> coefficient) in z_1..z_M, obtained by exact division of the
    antisymmetrized product by the Vandermonde.  Raises if the division
    leaves a remainder."""
    f = spec.field
    M = spec.M
    q = spec.q
    qinv = 1 / q
    blocks = []
    for ell, r in enumerate(rvec):
        blocks.extend([ell] * r)

    def poly_mul(a, b):
        out = {}
        for ka, va in a.items():
            for kb, vb in b.items():
                k = tuple(x + y for x, y in zip(ka, kb))
                w = out.get(k, f.zero) + va * vb
                if w:
                    out[k] = w
                elif k in out:
                    del out[k]
        return out

    def factor_poly(ell, slot):
        # f_ell(z_slot) as a polynomial
        out = {(0,) * M: f.one}
        for k in range(ell + 1, spec.N):
            lin = {(0,) * M: f.one,
                   tuple(1 if p == slot else 0 for p in range(M)): -1 / spec.a[k]}
            out = poly_mul(out, lin)
        for k in range(ell):
            lin = {(0,) * M: f.one,
                   tuple(1 if p == slot else 0 for p in range(M)): -spec.b[k]}
            out = poly_mul(out, lin)
        return out

    total = {}
    for perm in permutations(range(M)):
        sgn = _perm_sign(perm)
        term = {(0,) * M: f.one if sgn > 0 else -f.one}
        for slot, ell in enumerate(blocks):
            term = poly_mul(term, factor_poly(ell, perm[slot]))
        for i in range(M):
            for j in range(i + 1, M):
                lin = {tuple(1 if p == perm[i] else 0 for p in range(M)): f.one,
                       tuple(1 if p == perm[j] else 0 for p in range(M)): -qinv}
                term = poly_mul(term, lin)
        for k, v in term.items():
            w = total.get(k, f.zero) + v
            if w:
                total[k] = w
            elif k in total:
                del total[k]

    for i in range(M):
        for j in range(i + 1, M):
            total = _divide_linear(total, i, j, M, f)
    norm = f.one
    for r in range(spec.N):
        for jj in range(1, rvec[r] + 1):
            norm = norm * (f.one - spow(qinv, jj)) / (f.one - qinv)
    return {k: v / norm for k, v in total.items()}


def _divide_linear(poly, i, j, M, field):
    """Exact division by (z_i - z_j): synthetic division in z_i treating
    z_j as the root; remainder must vanish."""
    # collect by z_i-degree
    by_deg = {}
    for k, v in poly.items():
        by_deg.setdefault(k[i], {})[k] = v
    if not poly:
        return {}
    max_deg = max(by_deg)
    out = {}
    carry = {}
    for d in range(max_deg, 0, -1):
        level = dict(carry)
        for k, v in by_deg.get(d, {}).items():
            level[k] = level.get(k, field.zero) + v
        carry = {}
        for k, v in level.items():
            if not v:
                continue
            kq = list(k)
            kq[i] -= 1
            out_k = tuple(kq)
            out[out_k] = out.get(out_k, field.zero) + v
            kc = list(kq)
            kc[j] += 1
            carry[tuple(kc)] = carry.get(tuple(kc), field.zero) + v
    # remainder check at z_i-degree 0
    rem = dict(carry)
    for k, v in by_deg.get(0, {}).items():
        rem[k] = rem.get(k, field.zero) + v
    for v in rem.values():
        if v:
            raise ArithmeticError("not divisible by the Vandermonde")
    return {k: v for k, v in out.items() if v}
