"""Scalar q-special functions: Pochhammer symbols, sinh-type brackets,
Gaussian binomials.

Brackets take the *square root* of their argument, never the argument
itself: every bracket argument that occurs in partition functions is a
word in squared base parameters, so its root is supplied exactly and the
bracket value needs no root extraction.  Powers q^(1/4) never occur in
isolation; all half-integer q-exponents are integer exponents of sqrt_q.
"""

from __future__ import annotations

from .scalars import spow


class QContext:
    """Base q with its square root, plus small caches of (q;q)_n."""

    def __init__(self, sqrt_q, field):
        self.sqrt_q = sqrt_q
        self.q = sqrt_q * sqrt_q
        self.field = field
        self._qq = [field.one]  # (q;q)_n cache

    def qq(self, n):
        """(q;q)_n for n >= 0."""
        while len(self._qq) <= n:
            k = len(self._qq)
            self._qq.append(self._qq[-1] * (self.field.one - spow(self.q, k)))
        return self._qq[n]

    def qpow_half(self, twice_exponent):
        """q**(twice_exponent/2) as an integer power of sqrt_q."""
        return spow(self.sqrt_q, twice_exponent)


def poch(x, q, n):
    """q-shifted factorial (x;q)_n for any integer n.

    n >= 0 is the plain product prod_{k<n} (1 - x q^k); n < 0 is fixed by
    (x;q)_n = 1 / (x q^n; q)_{-n}, which is the unique extension with
    (x;q)_{m+n} = (x;q)_m (x q^m;q)_n.
    """
    one = x - x + 1 if not isinstance(x, int) else 1
    if n >= 0:
        out = one
        f = x
        for _ in range(n):
            out = out * (one - f)
            f = f * q
        return out
    shifted = x * spow(q, n)
    denom = poch(shifted, q, -n)
    if not denom:
        raise ZeroDivisionError("zero factor in (x;q)_n with n < 0")
    return one / denom


def bracket(sqrt_u, n, ctx):
    """Sinh-type bracket [u;q]_n, with u supplied via its square root.

    [u;q]_n = prod_{j<n} (q^{-j/2} u^{-1/2} - q^{j/2} u^{1/2}); negative n
    via [u;q]_n = 1/[u q^n; q]_{-n}.
    """
    if n < 0:
        v = bracket(sqrt_u * spow(ctx.sqrt_q, n), -n, ctx)
        if not v:
            raise ZeroDivisionError("zero bracket in [u;q]_n with n < 0")
        return 1 / v
    inv_su = 1 / sqrt_u
    out = ctx.field.one
    for j in range(n):
        out = out * (spow(ctx.sqrt_q, -j) * inv_su - spow(ctx.sqrt_q, j) * sqrt_u)
    return out


def single_bracket(sqrt_x):
    """[x] = x^{-1/2} - x^{1/2}."""
    return 1 / sqrt_x - sqrt_x


def bracket_base(sqrt_u, n, sqrt_base):
    """[u; p]_n for an arbitrary base p given via sqrt_base (e.g. p = kappa^N)."""
    if n < 0:
        v = bracket_base(sqrt_u * spow(sqrt_base, n), -n, sqrt_base)
        return 1 / v
    out = None
    for j in range(n):
        f = single_bracket(sqrt_u * spow(sqrt_base, j))
        out = f if out is None else out * f
    if out is None:
        return sqrt_u / sqrt_u  # one, in the right field
    return out


def bracket_ratio_finite(sqrt_u, n, ctx):
    """[u;q]_n computed through the half-base product pair

        (u^{1/2}; q^{1/2})_n * (-q^{(1-n)/2} u^{-1/2}; q^{1/2})_n,

    i.e. the finite form of the ratio [u;q]_inf / [q^n u;q]_inf.  Must
    agree with ``bracket``.
    """
    if n < 0:
        return 1 / bracket_ratio_finite(sqrt_u * spow(ctx.sqrt_q, n), -n, ctx)
    p1 = poch(sqrt_u, ctx.sqrt_q, n)
    p2 = poch(-spow(ctx.sqrt_q, 1 - n) / sqrt_u, ctx.sqrt_q, n)
    return p1 * p2


def qbinom(n, k, ctx):
    """Gaussian binomial coefficient; zero outside 0 <= k <= n."""
    if k < 0 or k > n:
        return ctx.field.zero
    return ctx.qq(n) / (ctx.qq(k) * ctx.qq(n - k))
