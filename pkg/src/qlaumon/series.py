"""Truncated multivariate series and the linear operators acting on them.

A MultiSeries is a sparse map from exponent vectors (tuples of length N,
total degree <= cap, entries >= 0 unless the Laurent flag is set) to
scalars.  Every operator here either preserves or raises total degree, so
coefficients up to the cap are exact: truncation never corrupts the
retained range.

Operators come in a few kinds:

  * multiplication by a series,
  * diagonal operators theta -> scalar (shift scalings, Borel weights),
  * normal-ordered operators: on a monomial x^nu, first evaluate a
    coefficient at the source exponent nu, then multiply by an x-monomial,
  * twisted letters x_i q^{+-(e_i - e_{i-1}).theta} and words of them,
  * q-exponentials of words, summed by explicit operator powers.

Indices on letters are cyclic mod N (position 0 plays x_1; "i-1" at i=0
wraps to N-1).
"""

from __future__ import annotations

from .scalars import spow


class MultiSeries:
    __slots__ = ("N", "cap", "field", "laurent", "terms")

    def __init__(self, N, cap, field, terms=None, laurent=False):
        self.N = N
        self.cap = cap
        self.field = field
        self.laurent = laurent
        self.terms = {}
        if terms:
            for k, v in terms.items():
                if v and sum(k) <= cap:
                    self.terms[k] = v

    # -- constructors -----------------------------------------------------

    @staticmethod
    def zero(N, cap, field, laurent=False):
        return MultiSeries(N, cap, field, None, laurent)

    @staticmethod
    def one(N, cap, field, laurent=False):
        return MultiSeries(N, cap, field, {(0,) * N: field.one}, laurent)

    @staticmethod
    def monomial(N, cap, field, exponent, coeff=None, laurent=False):
        c = coeff if coeff is not None else field.one
        return MultiSeries(N, cap, field, {tuple(exponent): c}, laurent)

    # -- basics ------------------------------------------------------------

    def copy(self):
        s = MultiSeries(self.N, self.cap, self.field, None, self.laurent)
        s.terms = dict(self.terms)
        return s

    def get(self, exponent):
        return self.terms.get(tuple(exponent), self.field.zero)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, MultiSeries) and self.N == other.N
                and self.terms == other.terms)

    def __add__(self, other):
        out = self.copy()
        for k, v in other.terms.items():
            _acc(out.terms, k, v)
        return out

    def __sub__(self, other):
        out = self.copy()
        for k, v in other.terms.items():
            _acc(out.terms, k, -v)
        return out

    def __neg__(self):
        return self.scale(-self.field.one)

    def scale(self, c):
        out = MultiSeries(self.N, self.cap, self.field, None, self.laurent)
        if c:
            out.terms = {k: c * v for k, v in self.terms.items()}
        return out

    def __mul__(self, other):
        out = MultiSeries(self.N, self.cap, self.field, None,
                          self.laurent or other.laurent)
        for ka, va in self.terms.items():
            for kb, vb in other.terms.items():
                k = tuple(a + b for a, b in zip(ka, kb))
                if sum(k) <= self.cap:
                    _acc(out.terms, k, va * vb)
        return out

    def degrees(self):
        """Map total degree -> list of (exponent, coeff)."""
        out = {}
        for k, v in self.terms.items():
            out.setdefault(sum(k), []).append((k, v))
        return out

    def max_degree_terms(self):
        return sorted(self.terms)

    def __repr__(self):
        items = ", ".join("%s: %s" % (k, v) for k, v in sorted(self.terms.items())[:6])
        more = "" if len(self.terms) <= 6 else ", ..."
        return "MultiSeries({%s%s})" % (items, more)


def _acc(d, k, v):
    w = d.get(k)
    if w is None:
        if v:
            d[k] = v
    else:
        w = w + v
        if w:
            d[k] = w
        else:
            del d[k]


def series_pow(s, n):
    out = MultiSeries.one(s.N, s.cap, s.field, s.laurent)
    for _ in range(n):
        out = out * s
    return out


def exp_series(s):
    """exp of a series with zero constant term, exact to the cap."""
    if s.get((0,) * s.N):
        raise ValueError("exp needs zero constant term")
    out = MultiSeries.one(s.N, s.cap, s.field, s.laurent)
    term = MultiSeries.one(s.N, s.cap, s.field, s.laurent)
    for k in range(1, s.cap + 1):
        term = term * s
        if term.is_zero():
            break
        out = out + term.scale(s.field.one / factorial_int(k))
    return out


def factorial_int(k):
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def series_inverse(s):
    """1/s for s with invertible constant term (Neumann series to the cap)."""
    c0 = s.get((0,) * s.N)
    if not c0:
        raise ZeroDivisionError("series has zero constant term")
    ic0 = 1 / c0
    rest = (s - MultiSeries.monomial(s.N, s.cap, s.field, (0,) * s.N, c0,
                                     s.laurent)).scale(ic0)
    out = MultiSeries.one(s.N, s.cap, s.field, s.laurent)
    power = MultiSeries.one(s.N, s.cap, s.field, s.laurent)
    sign = -1
    for _ in range(s.cap):
        power = power * rest
        if power.is_zero():
            break
        out = out + power.scale(s.field.of(sign))
        sign = -sign
    return out.scale(ic0)


# -- q-function series --------------------------------------------------


def eq_of_monomial(ctx, N, cap, prefactor, xvec, laurent=False):
    """e_q(prefactor * x^xvec) = sum_n (pref)^n x^{n.vec} / (q;q)_n."""
    deg = sum(xvec)
    if deg <= 0:
        raise ValueError("argument must have positive total degree")
    out = MultiSeries.one(N, cap, ctx.field, laurent)
    p = ctx.field.one
    for n in range(1, cap // deg + 1):
        p = p * prefactor
        out.terms[tuple(n * e for e in xvec)] = p / ctx.qq(n)
    return out


def phi_of_monomial(ctx, N, cap, prefactor, xvec, laurent=False):
    """phi(prefactor * x^xvec) = sum_n q^{n(n-1)/2} (-pref)^n x^{n.vec} / (q;q)_n.

    Inverse of ``eq_of_monomial`` with the same argument.
    """
    deg = sum(xvec)
    if deg <= 0:
        raise ValueError("argument must have positive total degree")
    out = MultiSeries.one(N, cap, ctx.field, laurent)
    p = ctx.field.one
    for n in range(1, cap // deg + 1):
        p = p * (-prefactor)
        out.terms[tuple(n * e for e in xvec)] = \
            spow(ctx.q, n * (n - 1) // 2) * p / ctx.qq(n)
    return out


# -- operators -----------------------------------------------------------


class Op:
    """Linear operator on MultiSeries; composition with @, linear combos
    with +, -, and scalar .scale().  ``grading`` records whether the
    operator preserves or raises total degree (both respect the cap)."""

    __slots__ = ("fn", "grading")

    def __init__(self, fn, grading="raises"):
        self.fn = fn
        self.grading = grading

    def __call__(self, s):
        return self.fn(s)

    def __matmul__(self, other):
        g = "preserves" if self.grading == other.grading == "preserves" else "raises"
        return Op(lambda s: self.fn(other.fn(s)), g)

    def __add__(self, other):
        return Op(lambda s: self.fn(s) + other.fn(s))

    def __sub__(self, other):
        return Op(lambda s: self.fn(s) - other.fn(s))

    def scale(self, c):
        return Op(lambda s: self.fn(s).scale(c), self.grading)


def identity_op():
    return Op(lambda s: s, "preserves")


def compose(ops):
    """Compose a list of operators, leftmost acting last (product order)."""
    out = identity_op()
    for op in ops:
        out = out @ op
    return out


def mul_op(series):
    return Op(lambda s: series * s)


def diagonal_op(fn):
    """Multiply the coefficient of x^theta by fn(theta)."""
    def apply(s):
        out = MultiSeries(s.N, s.cap, s.field, None, s.laurent)
        for k, v in s.terms.items():
            w = fn(k) * v
            if w:
                out.terms[k] = w
        return out
    return Op(apply, "preserves")


def shift_scaling_op(alphas, field):
    """The substitution x_i -> alpha_i x_i: multiplies x^theta by
    prod alpha_i^theta_i.  Rejects zero alphas."""
    alphas = list(alphas)
    for a in alphas:
        if not a:
            raise ValueError("zero shift parameter")
    def fn(theta):
        out = field.one
        for a, t in zip(alphas, theta):
            out = out * spow(a, t)
        return out
    return diagonal_op(fn)


def delta_quadratic(theta):
    """sum_i (theta_i^2 - theta_i theta_{i-1}) with cyclic index."""
    N = len(theta)
    return sum(theta[i] * theta[i] - theta[i] * theta[i - 1] for i in range(N))


def qborel_op(twice_c, ctx):
    """Diagonal q^{c * Delta(theta)} with c = twice_c/2 (so c is any
    half-integer).  Delta(theta) is an integer, hence the factor is an
    integer power of sqrt_q."""
    return diagonal_op(lambda th: ctx.qpow_half(twice_c * delta_quadratic(th)))


def normal_ordered_op(terms):
    """Normal-ordered operator from static terms [(xvec, coeff_fn)]:
    on x^nu it adds coeff_fn(nu) * x^{nu+xvec}."""
    terms = [(tuple(xv), fn) for xv, fn in terms]
    def apply(s):
        out = MultiSeries(s.N, s.cap, s.field, None, s.laurent)
        for nu, c in s.terms.items():
            for xv, fn in terms:
                k = tuple(a + b for a, b in zip(nu, xv))
                if sum(k) <= s.cap:
                    _acc(out.terms, k, fn(nu) * c)
        return out
    return Op(apply)


def normal_ordered_dynamic_op(expand):
    """Normal-ordered operator whose x-support depends on the source
    exponent: expand(nu) yields (xvec, scalar) pairs."""
    def apply(s):
        out = MultiSeries(s.N, s.cap, s.field, None, s.laurent)
        for nu, c in s.terms.items():
            for xv, coeff in expand(nu):
                k = tuple(a + b for a, b in zip(nu, xv))
                if sum(k) <= s.cap:
                    _acc(out.terms, k, coeff * c)
        return out
    return Op(apply)


def euler_qpow_op(coeffs_twice, ctx):
    """Diagonal q^{(1/2) sum_i coeffs_twice[i] * theta_i}."""
    def fn(theta):
        e = sum(c * t for c, t in zip(coeffs_twice, theta))
        return ctx.qpow_half(e)
    return diagonal_op(fn)


def twisted_letter_op(i, direction, scale, ctx, N):
    """The letter  scale * x_i * q^{direction * (theta_i - theta_{i-1})}
    (0-based position i, cyclic).  Raises degree by one."""
    i = i % N
    j = (i - 1) % N
    def apply(s):
        out = MultiSeries(s.N, s.cap, s.field, None, s.laurent)
        for nu, c in s.terms.items():
            if sum(nu) + 1 > s.cap:
                continue
            k = list(nu)
            k[i] += 1
            w = scale * ctx.qpow_half(2 * direction * (nu[i] - nu[j])) * c
            if w:
                _acc(out.terms, tuple(k), w)
        return out
    return Op(apply)


def word_op(indices, direction, scales, ctx, N):
    """Operator for the word  v_{i_1} v_{i_2} ... v_{i_k}  of twisted
    letters (rightmost letter acts first).  ``scales`` maps position
    (0-based, mod N) to the letter's scalar prefactor."""
    ops = [twisted_letter_op(i, direction, scales[i % N], ctx, N)
           for i in indices]
    return compose(ops), len(indices)


def op_qexp(word, word_degree, sign, ctx, cap):
    """e_q(sign * W) = sum_n sign^n W^n / (q;q)_n, by explicit powers."""
    def apply(s):
        out = s.copy()
        power = s
        sgn = ctx.field.one
        for n in range(1, cap // max(word_degree, 1) + 1):
            power = word(power)
            if power.is_zero():
                break
            sgn = sgn * sign
            out = out + power.scale(sgn / ctx.qq(n))
        return out
    return Op(apply)


def op_qexp_big(word, word_degree, sign, ctx, cap):
    """phi(-sign*W) = E_q(sign*W) = sum_n q^{n(n-1)/2} sign^n W^n/(q;q)_n;
    the two-sided inverse of op_qexp(word, sign)."""
    def apply(s):
        out = s.copy()
        power = s
        sgn = ctx.field.one
        for n in range(1, cap // max(word_degree, 1) + 1):
            power = word(power)
            if power.is_zero():
                break
            sgn = sgn * sign
            out = out + power.scale(spow(ctx.q, n * (n - 1) // 2) * sgn / ctx.qq(n))
        return out
    return Op(apply)


def neumann_inverse_op(op, cap):
    """Inverse of an operator of the form identity + strictly degree
    raising, via the truncated Neumann series."""
    def apply(s):
        out = s.copy()
        term = s
        for _ in range(cap + 1):
            term = op(term) - term
            if term.is_zero():
                break
            term = -term
            out = out + term
        return out
    return Op(apply)


def phi_product_normal_op(scales, direction, ctx, N, cap):
    """Normal-ordered  :prod_i phi(c_i x_i q^{direction (theta_i - theta_{i-1})}):.

    Expanded over multi-exponents a with |a| <= cap; on x^nu the a-term
    contributes prod_i q^{a_i(a_i-1)/2} (-c_i)^{a_i} q^{direction a_i
    (nu_i - nu_{i-1})} / (q;q)_{a_i}  times x^{nu+a}.
    """
    f = ctx.field
    terms = []
    for avec in all_monomials(N, cap):
        pre = f.one
        for i in range(N):
            ai = avec[i]
            if ai:
                pre = pre * spow(ctx.q, ai * (ai - 1) // 2) \
                    * spow(-scales[i], ai) / ctx.qq(ai)
        def coeff(nu, avec=avec, pre=pre):
            e = sum(2 * direction * avec[i] * (nu[i] - nu[i - 1]) for i in range(N))
            return pre * ctx.qpow_half(e)
        terms.append((avec, coeff))
    return normal_ordered_op(terms)


def eq_product_normal_op(scales, direction, ctx, N, cap):
    """Normal-ordered  :prod_i e_q(c_i x_i q^{direction (theta_i - theta_{i-1})}):,
    the coefficient-wise inverse expansion of ``phi_product_normal_op``."""
    f = ctx.field
    terms = []
    for avec in all_monomials(N, cap):
        pre = f.one
        for i in range(N):
            ai = avec[i]
            if ai:
                pre = pre * spow(scales[i], ai) / ctx.qq(ai)
        def coeff(nu, avec=avec, pre=pre):
            e = sum(2 * direction * avec[i] * (nu[i] - nu[i - 1]) for i in range(N))
            return pre * ctx.qpow_half(e)
        terms.append((avec, coeff))
    return normal_ordered_op(terms)


# -- test helpers ---------------------------------------------------------


def all_monomials(N, degree):
    """All exponent vectors with total degree <= degree."""
    out = []
    def rec(prefix, remaining, budget):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for e in range(budget + 1):
            rec(prefix + [e], remaining - 1, budget - e)
    rec([], N, degree)
    return out


def ops_agree_on_monomials(op_a, op_b, N, degree, cap, field):
    """First basis monomial (degree <= degree) where the operators differ,
    or None if they agree up to the cap."""
    for exp in all_monomials(N, degree):
        m = MultiSeries.monomial(N, cap, field, exp)
        if op_a(m) != op_b(m):
            return exp
    return None
