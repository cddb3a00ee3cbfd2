"""Orbifolded Nekrasov factors and the affine Laumon partition function.

The color-k factor pairing two partitions comes in two flavours:

  * sinh type, built from brackets [u;q]_n (row-indexed double product,
    or the equivalent box-indexed product used by the Pochhammer/sinh
    comparison machinery),
  * Pochhammer type, the box-indexed product of (1 - ...) factors.

Arguments are always handed over through their square roots where the
sinh brackets need them.  The partition function is a sum over N-tuples
of partitions graded by colored box counts; its vector-multiplet
denominator is nonzero for the generic parameter sets produced by
``params.sample_params``.
"""

from __future__ import annotations

from .partitions import (colored_counts, conjugate, enumerate_tuples, part)
from .qfun import QContext, bracket, bracket_base, single_bracket
from .scalars import spow
from .series import (MultiSeries, delta_quadratic, diagonal_op, exp_series)


class NekContext:
    """q and kappa with square roots, shared by all factor evaluations."""

    def __init__(self, sqrt_q, sqrt_kappa, field):
        self.qctx = QContext(sqrt_q, field)
        self.sqrt_q = sqrt_q
        self.q = sqrt_q * sqrt_q
        self.sqrt_kappa = sqrt_kappa
        self.kappa = sqrt_kappa * sqrt_kappa
        self.field = field


class LaumonParams:
    """Spectral data of the partition function: three parameter families
    a, b, c (through square roots) and the q/kappa context."""

    def __init__(self, N, nc, sqrt_a, sqrt_b, sqrt_c):
        self.N = N
        self.nc = nc
        self.sqrt_a = list(sqrt_a)
        self.sqrt_b = list(sqrt_b)
        self.sqrt_c = list(sqrt_c)
        for s in self.sqrt_a + self.sqrt_b + self.sqrt_c:
            if not s:
                raise ValueError("zero spectral parameter")

    def inverted(self):
        return LaumonParams(self.N,
                            NekContext(1 / self.nc.sqrt_q, 1 / self.nc.sqrt_kappa,
                                       self.nc.field),
                            [1 / s for s in self.sqrt_a],
                            [1 / s for s in self.sqrt_b],
                            [1 / s for s in self.sqrt_c])


class DegenerateParameters(Exception):
    """Vanishing vector-multiplet denominator; carries the offending tuple."""

    def __init__(self, tup, pair):
        super().__init__("vanishing denominator at tuple %r, pair %r" % (tup, pair))
        self.tup = tup
        self.pair = pair


# -- factor evaluations ----------------------------------------------------


def nek_sinh(k, N, lam, mu, sqrt_u, nc):
    """Color-k sinh-type factor, row-indexed double product.

    First product: rows j of lam against the congruence j - i = k (mod N),
    bracket length lam_j - lam_{j+1}; second product: rows beta of mu
    against beta - alpha = -k-1 (mod N), length mu_beta - mu_{beta+1}.
    Rows beyond the diagram lengths contribute empty brackets.
    """
    k = k % N
    out = nc.field.one
    for j in range(1, len(lam) + 1):
        n = part(lam, j) - part(lam, j + 1)
        if n == 0:
            continue
        start = (j - k - 1) % N + 1
        for i in range(start, j + 1, N):
            arg = sqrt_u * spow(nc.sqrt_q, -part(mu, i) + part(lam, j + 1)) \
                * spow(nc.sqrt_kappa, j - i)
            out = out * bracket(arg, n, nc.qctx)
    for beta in range(1, len(mu) + 1):
        n = part(mu, beta) - part(mu, beta + 1)
        if n == 0:
            continue
        start = (beta + k) % N + 1
        for alpha in range(start, beta + 1, N):
            arg = sqrt_u * spow(nc.sqrt_q, part(lam, alpha) - part(mu, beta)) \
                * spow(nc.sqrt_kappa, alpha - beta - 1)
            out = out * bracket(arg, n, nc.qctx)
    return out


def _boxes_with_colors(lam):
    """Yield (i, j, conj_j) over boxes (row i, column j) of lam."""
    conj = conjugate(lam)
    for i, row in enumerate(lam, start=1):
        for j in range(1, row + 1):
            yield i, j, conj[j - 1]


def nek_sinh_box(k, N, lam, mu, sqrt_u, nc):
    """Box-indexed form of the sinh-type factor (same value as nek_sinh)."""
    k = k % N
    out = nc.field.one
    for i, j, cj in _boxes_with_colors(mu):
        if (cj - i) % N == (-k - 1) % N:
            arg = sqrt_u * spow(nc.sqrt_q, part(lam, i) - j) \
                * spow(nc.sqrt_kappa, i - cj - 1)
            out = out * single_bracket(arg)
    for i, j, cj in _boxes_with_colors(lam):
        if (cj - i) % N == k % N:
            arg = sqrt_u * spow(nc.sqrt_q, -part(mu, i) + j - 1) \
                * spow(nc.sqrt_kappa, cj - i)
            out = out * single_bracket(arg)
    return out


def nek_poch_box(k, N, lam, mu, u, nc):
    """Color-k Pochhammer-type factor (box-indexed product of 1 - ...)."""
    k = k % N
    out = nc.field.one
    for i, j, cj in _boxes_with_colors(mu):
        if (cj - i) % N == (-k - 1) % N:
            arg = u * spow(nc.q, part(lam, i) - j) * spow(nc.kappa, i - cj - 1)
            out = out * (nc.field.one - arg)
    for i, j, cj in _boxes_with_colors(lam):
        if (cj - i) % N == k % N:
            arg = u * spow(nc.q, -part(mu, i) + j - 1) * spow(nc.kappa, cj - i)
            out = out * (nc.field.one - arg)
    return out


def nek_bracket_count(k, N, lam, mu):
    """Number of bracket factors of the color-k pair (row sums of the two
    colored residue classes: |mu|_{-k} + |lam|_{k+1})."""
    k = k % N
    total = 0
    for i, j, cj in _boxes_with_colors(mu):
        if (cj - i) % N == (-k - 1) % N:
            total += 1
    for i, j, cj in _boxes_with_colors(lam):
        if (cj - i) % N == k % N:
            total += 1
    return total


def nek_matter_fund(lam, k, sqrt_u, nc, N):
    """Finite-product form of the factor with empty second partition:
    product over columns i of [u q^{i-1} kappa^k ; kappa^N]_m with
    m = floor((conj_i + N - 1 - k)/N)."""
    k = k % N
    sqrt_base = spow(nc.sqrt_kappa, N)
    conj = conjugate(lam)
    out = nc.field.one
    for i, ci in enumerate(conj, start=1):
        m = (ci + N - 1 - k) // N
        if m == 0:
            continue
        arg = sqrt_u * spow(nc.sqrt_q, i - 1) * spow(nc.sqrt_kappa, k)
        out = out * bracket_base(arg, m, sqrt_base)
    return out


def nek_matter_anti(lam, ell, sqrt_u, nc, N):
    """Finite-product form of the factor with empty first partition:
    product over columns i of [u q^{-i} kappa^{ell - N m} ; kappa^N]_m
    with m = floor((conj_i + ell)/N)."""
    ell = ell % N
    sqrt_base = spow(nc.sqrt_kappa, N)
    conj = conjugate(lam)
    out = nc.field.one
    for i, ci in enumerate(conj, start=1):
        m = (ci + ell) // N
        if m == 0:
            continue
        arg = sqrt_u * spow(nc.sqrt_q, -i) * spow(nc.sqrt_kappa, ell - N * m)
        out = out * bracket_base(arg, m, sqrt_base)
    return out


def infprod_double_ratio(k, N, lam, mu, sqrt_u, nc):
    """The double ratio  N(lam,mu) N(0,0) / (N(lam,0) N(0,mu))  evaluated
    through the infinite-product form of the factor, reduced to finite
    brackets: all strip contributions cancel between the four diagrams and
    only the core box  i <= width(mu), j <= width(lam)  survives, each
    cell contributing

        prod over the three floor offsets of
            bracket-at-(u q^{j-i-1} kappa^{k-N}) / bracket-at-(u q^{j-i}),

    with base t = kappa^{-N} and offsets F(mu,lam), -F(mu,0), -F(0,lam).
    """
    lamc = conjugate(lam)
    muc = conjugate(mu)
    wl = len(lamc)
    wm = len(muc)
    sqrt_t = spow(nc.sqrt_kappa, -N)

    def cell(i, j, F):
        if F == 0:
            return nc.field.one
        sy_hi = sqrt_u * spow(nc.sqrt_q, j - i) * spow(nc.sqrt_kappa, k % N - N)
        sy_lo = sy_hi / nc.sqrt_q
        return bracket_base(sy_lo, F, sqrt_t) / bracket_base(sy_hi, F, sqrt_t)

    out = nc.field.one
    for i in range(1, wm + 1):
        for j in range(1, wl + 1):
            mc = muc[i - 1]
            lc = lamc[j - 1]
            f_full = _floor_div(mc + k - lc, N)
            f_lam = _floor_div(k - lc, N)
            f_mu = _floor_div(mc + k, N)
            out = out * cell(i, j, f_full) / (cell(i, j, f_lam) * cell(i, j, f_mu))
    return out


def _floor_div(a, n):
    return a // n


# -- partition function ------------------------------------------------------


def laumon_partition_function(lp, cap, kind="sinh"):
    """Partition function as a MultiSeries in the N expansion slots,
    truncated at total colored degree ``cap``.  kind is "sinh" or "poch".
    Constant term is one; a vanishing vector-multiplet denominator raises
    DegenerateParameters."""
    N = lp.N
    nc = lp.nc
    out = MultiSeries.zero(N, cap, nc.field)
    for tup in enumerate_tuples(N, cap):
        kvec = colored_counts(tup, N)
        coeff = _tuple_weight(lp, tup, kind)
        key = tuple(kvec)
        prev = out.terms.get(key)
        coeff = coeff if prev is None else prev + coeff
        if coeff:
            out.terms[key] = coeff
        elif prev is not None:
            del out.terms[key]
    return out


def _tuple_weight(lp, tup, kind):
    N = lp.N
    nc = lp.nc
    num = nc.field.one
    den = nc.field.one
    for i in range(N):
        for j in range(N):
            color = j - i
            if kind == "sinh":
                n1 = nek_sinh(color, N, (), tup[j], lp.sqrt_a[i] / lp.sqrt_b[j], nc)
                n2 = nek_sinh(color, N, tup[i], (), lp.sqrt_b[i] / lp.sqrt_c[j], nc)
                dd = nek_sinh(color, N, tup[i], tup[j], lp.sqrt_b[i] / lp.sqrt_b[j], nc)
            else:
                n1 = nek_poch_box(color, N, (), tup[j],
                                  lp.sqrt_a[i] ** 2 / lp.sqrt_b[j] ** 2, nc)
                n2 = nek_poch_box(color, N, tup[i], (),
                                  lp.sqrt_b[i] ** 2 / lp.sqrt_c[j] ** 2, nc)
                dd = nek_poch_box(color, N, tup[i], tup[j],
                                  lp.sqrt_b[i] ** 2 / lp.sqrt_b[j] ** 2, nc)
            if not dd:
                raise DegenerateParameters(tup, (i + 1, j + 1))
            num = num * n1 * n2
            den = den * dd
    return num / den


def pure_tuple_weight(lp, tup, kind="sinh"):
    """Vector-multiplet-only weight (numerators dropped)."""
    N = lp.N
    nc = lp.nc
    den = nc.field.one
    for i in range(N):
        for j in range(N):
            color = j - i
            if kind == "sinh":
                dd = nek_sinh(color, N, tup[i], tup[j], lp.sqrt_b[i] / lp.sqrt_b[j], nc)
            else:
                dd = nek_poch_box(color, N, tup[i], tup[j],
                                  lp.sqrt_b[i] ** 2 / lp.sqrt_b[j] ** 2, nc)
            if not dd:
                raise DegenerateParameters(tup, (i + 1, j + 1))
            den = den * dd
    return 1 / den


# -- parametrization of the difference-equation solution ---------------------


def nek_context(ps):
    return NekContext(ps.sqrt_q, ps.sqrt_kappa, ps.field)


def solution_spectral_params(ps):
    """Spectral data (a, b, c) of the solution series, in square roots:
    a_i = q kappa b_{i-1} / d_{i-1},  c_i = b_i / dbar_i."""
    N = ps.N
    nc = nek_context(ps)
    sqrt_a = [ps.sqrt_q * ps.sqrt_kappa * ps.sqrt_b[(i - 1) % N] / ps.sqrt_d[(i - 1) % N]
              for i in range(N)]
    sqrt_c = [ps.sqrt_b[i] / ps.sqrt_dbar[i] for i in range(N)]
    return LaumonParams(N, nc, sqrt_a, list(ps.sqrt_b), sqrt_c)


def solution_slot_scalings(ps, extra=None):
    """Per-slot scaling sqrt(b_{i+1} d_i dbar_i / (q kappa b_i)) relating
    the expansion slots to the equation variables x_i."""
    N = ps.N
    out = []
    for i in range(N):
        r = ps.sqrt_b[(i + 1) % N] * ps.sqrt_d[i] * ps.sqrt_dbar[i] \
            / (ps.sqrt_q * ps.sqrt_kappa * ps.sqrt_b[i])
        if extra is not None:
            r = r * extra
        out.append(r)
    return out


def solution_series(ps, cap, extra_scale=None):
    """The conjectural eigenfunction: partition function at the solution
    parametrization with the slot scalings folded into the variables."""
    lp = solution_spectral_params(ps)
    z = laumon_partition_function(lp, cap, "sinh")
    scal = solution_slot_scalings(ps, extra_scale)
    out = MultiSeries.zero(ps.N, cap, ps.field)
    for k, v in z.terms.items():
        f = v
        for r, e in zip(scal, k):
            f = f * spow(r, e)
        out.terms[k] = f
    return out


# -- rank-one closed forms ----------------------------------------------------


def gl1_closed_solution(ps, cap):
    """Closed form of the N=1 eigenfunction:
    exp(-sum_n (1/n) (1-d^n)(1-dbar^n) / ((1-q^n)(1-kappa^n)) x^n)."""
    assert ps.N == 1
    f = ps.field
    s = MultiSeries.zero(1, cap, f)
    for n in range(1, cap + 1):
        num = (f.one - spow(ps.d(0), n)) * (f.one - spow(ps.dbar(0), n))
        den = (f.one - spow(ps.q, n)) * (f.one - spow(ps.kappa, n))
        s.terms[(n,)] = -num / den / n
    return exp_series(s)


def gl1_closed_partition(sqrt_a, sqrt_b, sqrt_c, nc, cap):
    """Closed form of the N=1 partition function:
    exp(sum_n (1/n) [b^n/c^n][a^n/(q^n kappa^n b^n)] / ([q^n][kappa^n]) x^n)."""
    f = nc.field
    s = MultiSeries.zero(1, cap, f)
    rb = sqrt_b / sqrt_c
    ra = sqrt_a / (nc.sqrt_q * nc.sqrt_kappa * sqrt_b)
    for n in range(1, cap + 1):
        num = single_bracket(spow(rb, n)) * single_bracket(spow(ra, n))
        den = single_bracket(spow(nc.sqrt_q, n)) * single_bracket(spow(nc.sqrt_kappa, n))
        s.terms[(n,)] = num / den / n
    return exp_series(s)


# -- sinh/Pochhammer comparison and inversion symmetry ------------------------


def poch_vs_sinh_prefactor(lp, kvec, pure=False):
    """Diagonal factor relating the Pochhammer-type and sinh-type terms of
    colored degree kvec: q^{Delta(k)/2} times the product over slots p of
    (a_{p+1} b_p / (b_{p+1} c_p))^{k_p/2}, or (b_p q kappa / b_{p+1})^{k_p/2}
    in the vector-multiplet-only case."""
    N = lp.N
    nc = lp.nc
    out = nc.qctx.qpow_half(delta_quadratic(kvec))
    for p in range(N):
        if pure:
            r = lp.sqrt_b[p] * nc.sqrt_q * nc.sqrt_kappa / lp.sqrt_b[(p + 1) % N]
        else:
            r = lp.sqrt_a[(p + 1) % N] * lp.sqrt_b[p] \
                / (lp.sqrt_b[(p + 1) % N] * lp.sqrt_c[p])
        out = out * spow(r, kvec[p])
    return out


def check_poch_sinh_relation(lp, cap):
    """Tuple-by-tuple comparison of the Pochhammer-type weight against the
    prefactor times the sinh-type weight, full and vector-multiplet-only.
    Returns the list of failures (empty when the relation holds)."""
    bad = []
    for tup in enumerate_tuples(lp.N, cap):
        kvec = colored_counts(tup, lp.N)
        full_p = _tuple_weight(lp, tup, "poch")
        full_s = _tuple_weight(lp, tup, "sinh")
        if full_p != poch_vs_sinh_prefactor(lp, kvec, False) * full_s:
            bad.append(("full", tup))
        pure_p = pure_tuple_weight(lp, tup, "poch")
        pure_s = pure_tuple_weight(lp, tup, "sinh")
        if pure_p != poch_vs_sinh_prefactor(lp, kvec, True) * pure_s:
            bad.append(("pure", tup))
    return bad


def _inversion_side(lp, cap):
    """One side of the inversion symmetry: the normal-ordered dressing
    applied to the Pochhammer-type partition function.

    Dressing = mult by prod_i e_q(x_i sqrt(q d_i/dbar_i)) after the
    normal-ordered prod_i phi(sqrt(q d_i dbar_i) x_i q^{theta_i -
    theta_{i-1}}) after the diagonal prod_i (d_i/(q dbar_i))^{theta_i/2},
    with d_i = q kappa b_i / a_{i+1} and dbar_i = b_i / c_i.
    """
    from .series import compose, eq_of_monomial, mul_op, phi_product_normal_op

    N = lp.N
    nc = lp.nc
    z = laumon_partition_function(lp, cap, "poch")
    sqrt_d = [nc.sqrt_q * nc.sqrt_kappa * lp.sqrt_b[i] / lp.sqrt_a[(i + 1) % N]
              for i in range(N)]
    sqrt_dbar = [lp.sqrt_b[i] / lp.sqrt_c[i] for i in range(N)]

    half_shift = diagonal_op(lambda th: _prodpow(
        [sqrt_d[i] / (nc.sqrt_q * sqrt_dbar[i]) for i in range(N)], th, nc.field))
    dressing_no = phi_product_normal_op(
        [nc.sqrt_q * sqrt_d[i] * sqrt_dbar[i] for i in range(N)], +1, nc.qctx, N, cap)
    cplus = MultiSeries.one(N, cap, nc.field)
    for i in range(N):
        vec = tuple(1 if p == i else 0 for p in range(N))
        cplus = cplus * eq_of_monomial(nc.qctx, N, cap,
                                       nc.sqrt_q * sqrt_d[i] / sqrt_dbar[i], vec)
    op = compose([mul_op(cplus), dressing_no, half_shift])
    return op(z)


def _prodpow(bases, exps, field):
    out = field.one
    for b, e in zip(bases, exps):
        out = out * spow(b, e)
    return out


def check_inversion_symmetry(lp, cap):
    """Both sides of the inversion symmetry (parameters vs inverted
    parameters); returns the first differing exponent or None."""
    lhs = _inversion_side(lp, cap)
    rhs = _inversion_side(lp.inverted(), cap)
    diff = lhs - rhs
    if diff.is_zero():
        return None
    return min(diff.terms)
