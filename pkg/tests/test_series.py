import random
from fractions import Fraction

import pytest

from qlaumon.params import sample_params
from qlaumon.qfun import QContext
from qlaumon.scalars import RATIONAL, spow
from qlaumon.series import (MultiSeries, all_monomials, compose, delta_quadratic,
                            diagonal_op, eq_of_monomial, eq_product_normal_op,
                            exp_series, mul_op,
                            neumann_inverse_op, normal_ordered_op, op_qexp,
                            op_qexp_big, ops_agree_on_monomials,
                            phi_of_monomial, phi_product_normal_op, qborel_op,
                            series_inverse, shift_scaling_op,
                            twisted_letter_op, word_op)


def setup():
    ps = sample_params(1, 2)
    return ps, QContext(ps.sqrt_q, ps.field)


def test_normal_ordering_evaluates_at_source_exponent():
    ps, ctx = setup()
    # :q^{theta_1} x_1: acts as x_1 q^{nu_1}
    op = normal_ordered_op([((1, 0), lambda nu: spow(ctx.q, nu[0]))])
    s = MultiSeries.monomial(2, 4, ps.field, (2, 1))
    assert op(s) == MultiSeries.monomial(2, 4, ps.field, (3, 1), spow(ctx.q, 2))


def test_normal_ordering_identity():
    ps, ctx = setup()
    op = normal_ordered_op([((0, 0), lambda nu: ps.field.one)])
    s = MultiSeries(2, 3, ps.field, {(1, 0): Fraction(2), (0, 2): Fraction(-7)})
    assert op(s) == s


def test_normal_ordering_mixed_example():
    # :x_1 x_2 q^{theta_1 - theta_2}: on x_1 gives q x_1^2 x_2
    ps, ctx = setup()
    op = normal_ordered_op([((1, 1), lambda nu: ctx.qpow_half(2 * (nu[0] - nu[1])))])
    s = MultiSeries.monomial(2, 3, ps.field, (1, 0))
    assert op(s) == MultiSeries.monomial(2, 3, ps.field, (2, 1), ctx.q)


def test_shift_scaling():
    ps, _ = setup()
    f = ps.field
    op = shift_scaling_op([f.of(2), f.of(3)], f)
    s = MultiSeries.monomial(2, 5, f, (2, 1), f.of(5))
    assert op(s).get((2, 1)) == f.of(60)
    assert shift_scaling_op([f.one, f.one], f)(s) == s
    with pytest.raises(ValueError):
        shift_scaling_op([f.zero, f.one], f)


def test_shift_on_diagonal_monomial_gives_kappa_power():
    # the parameter shift multiplies x_1...x_N by kappa^N
    for N in (2, 3):
        ps = sample_params(2, N)
        alphas = [ps.kappa * ps.b(i) / ps.b((i + 1) % N) for i in range(N)]
        op = shift_scaling_op(alphas, ps.field)
        s = MultiSeries.monomial(N, N, ps.field, (1,) * N)
        assert op(s).get((1,) * N) == spow(ps.kappa, N)


def test_delta_quadratic():
    assert delta_quadratic((1, 0)) == 1
    assert delta_quadratic((3, 3, 3)) == 0
    th = (2, 5, 1)
    assert 2 * delta_quadratic(th) == sum(
        (th[i] - th[i - 1]) ** 2 for i in range(3))


def test_qborel_values():
    ps, ctx = setup()
    op = qborel_op(1, ctx)  # q^{Delta/2}
    s = MultiSeries.monomial(2, 3, ps.field, (1, 0))
    assert op(s).get((1, 0)) == ctx.sqrt_q
    s2 = MultiSeries.monomial(2, 6, ps.field, (2, 2))
    assert op(s2) == s2


def test_qborel_relative_bookkeeping():
    # q^{Delta/2} p_1^{1/2} p_2^{-1/2} multiplies by q^{n(n+1)/2}, n = diff
    ps, ctx = setup()
    borel = qborel_op(1, ctx)
    halfshift = diagonal_op(lambda th: ctx.qpow_half(th[0] - th[1]))
    for th in all_monomials(2, 4):
        s = MultiSeries.monomial(2, 8, ps.field, th)
        n = th[0] - th[1]
        got = halfshift(borel(s)).get(th)
        assert got == ctx.qpow_half(n * (n + 1))


def test_twisted_letter_and_commutation():
    ps, ctx = setup()
    # q^{c theta_i} (mult by x_j) = q^{c delta_ij} (mult by x_j) q^{c theta_i}
    f = ps.field
    for i in range(2):
        for j in range(2):
            diag = diagonal_op(lambda th, i=i: spow(ctx.q, 3 * th[i]))
            mult = mul_op(MultiSeries.monomial(2, 6, f, tuple(
                1 if p == j else 0 for p in range(2))))
            lhs = compose([diag, mult])
            rhs = compose([mult, diag])
            scale = spow(ctx.q, 3) if i == j else f.one
            rhs = rhs.scale(scale)
            assert ops_agree_on_monomials(lhs, rhs, 2, 3, 6, f) is None


# -- free-word oracle for the twisted letters --------------------------------


def word_commutation_exponent(a, b, N):
    """Exponent e with  v_a v_b = q^e v_b v_a  for letters tagged
    (kind, index), kind +1 for the raising twist, -1 for the lowering."""
    (ka, ia), (kb, ib) = a, b

    def d(x, y):
        return 1 if (x - y) % N == 0 else 0

    if ka == 1 and kb == 1:
        return d(ia, ib - 1) - d(ia - 1, ib)
    if ka == -1 and kb == -1:
        return d(ia - 1, ib) - d(ia, ib - 1)
    if ka == 1 and kb == -1:
        return 2 * d(ia, ib) - d(ia, ib + 1) - d(ia, ib - 1)
    return -(2 * d(ib, ia) - d(ib, ia + 1) - d(ib, ia - 1))


def normalize_word(word, N):
    """Bubble-sort a word of letters into canonical order, accumulating
    the q-exponent from the two-letter exchange rule."""
    word = list(word)
    e = 0
    changed = True
    while changed:
        changed = False
        for i in range(len(word) - 1):
            if word[i] > word[i + 1]:
                e += word_commutation_exponent(word[i], word[i + 1], N)
                word[i], word[i + 1] = word[i + 1], word[i]
                changed = True
    return e, word


def letter_op(letter, scales, ctx, N):
    kind, idx = letter
    return twisted_letter_op(idx, kind, scales[(kind, idx % N)], ctx, N)


def test_word_oracle_matches_operator_composition():
    """Rewriting a word to canonical order with the exchange exponents
    must reproduce the operator composition exactly."""
    rng = random.Random(9)
    for N in (2, 3):
        ps = sample_params(5, N)
        ctx = QContext(ps.sqrt_q, ps.field)
        scales = {}
        for i in range(N):
            scales[(1, i)] = ps.d(i) * ps.dbar(i)
            scales[(-1, i)] = ps.field.one
        for _ in range(30):
            word = [(rng.choice((1, -1)), rng.randrange(N))
                    for _ in range(rng.randrange(1, 5))]
            e, sorted_word = normalize_word(word, N)
            op_plain = compose([letter_op(l, scales, ctx, N) for l in word])
            op_sorted = compose([letter_op(l, scales, ctx, N)
                                 for l in sorted_word]).scale(spow(ctx.q, e))
            cap = 4 + len(word)
            assert ops_agree_on_monomials(op_plain, op_sorted, N, 4, cap,
                                          ps.field) is None


def test_central_words():
    # v_1 ... v_N = q^{-1} (mass product) Lambda;  reversed: q^{1-N} ...
    for N in (2, 3):
        ps = sample_params(5, N)
        ctx = QContext(ps.sqrt_q, ps.field)
        scales = {i: ps.d(i) * ps.dbar(i) for i in range(N)}
        up, _ = word_op(list(range(N)), +1, scales, ctx, N)
        down, _ = word_op(list(range(N - 1, -1, -1)), +1, scales, ctx, N)
        ones = {i: ps.field.one for i in range(N)}
        chk_up, _ = word_op(list(range(N)), -1, ones, ctx, N)
        chk_down, _ = word_op(list(range(N - 1, -1, -1)), -1, ones, ctx, N)
        for th in all_monomials(N, 2):
            s = MultiSeries.monomial(N, N + 2, ps.field, th)
            lam_exp = tuple(t + 1 for t in th)
            dn = ps.mass_product()
            assert up(s).get(lam_exp) == dn / ctx.q
            assert down(s).get(lam_exp) == dn * spow(ctx.q, 1 - N)
            assert chk_up(s).get(lam_exp) == ctx.q
            assert chk_down(s).get(lam_exp) == spow(ctx.q, N - 1)


def test_adjoint_moves_borel_through_powers():
    # Ad(q^{(1/2)(theta_i - theta_{i-1})^2}) (c x_i)^n = q^{n/2} (letter)^n
    ps = sample_params(6, 2)
    ctx = QContext(ps.sqrt_q, ps.field)
    f = ps.field
    c = ps.d(0) * ps.dbar(0)
    borel = qborel_op(1, ctx)
    borel_inv = qborel_op(-1, ctx)
    letter = twisted_letter_op(0, +1, c, ctx, 2)
    for n in (1, 2, 3):
        plain = mul_op(MultiSeries.monomial(2, 8, f, (n, 0), spow(c, n)))
        lhs = compose([borel, plain, borel_inv])
        rhs = compose([letter] * n).scale(spow(ctx.sqrt_q, n))
        assert ops_agree_on_monomials(lhs, rhs, 2, 3, 8, f) is None


def test_qexp_inverse_pair():
    ps = sample_params(1, 2)
    ctx = QContext(ps.sqrt_q, ps.field)
    scales = {i: ps.d(i) * ps.dbar(i) for i in range(2)}
    w, deg = word_op([0], +1, scales, ctx, 2)
    e = op_qexp(w, deg, -ps.field.one, ctx, 5)
    phi = op_qexp_big(w, deg, ps.field.one, ctx, 5)
    for th in all_monomials(2, 2):
        s = MultiSeries.monomial(2, 5, ps.field, th)
        assert phi(e(s)) == s
        assert e(phi(s)) == s


def test_phi_and_eq_series_are_inverse():
    ps = sample_params(1, 2)
    ctx = QContext(ps.sqrt_q, ps.field)
    pref = ps.d(0)
    a = eq_of_monomial(ctx, 2, 6, pref, (1, 0))
    b = phi_of_monomial(ctx, 2, 6, pref, (1, 0))
    assert a * b == MultiSeries.one(2, 6, ps.field)


def test_phi_of_lambda_satisfies_product_functional_equation():
    """Independent oracle for the infinite-product expansion: peeling one
    factor off the product gives  phi(L) = (1 - L) phi(qL), and the first
    coefficient is the closed geometric value -1/(1-q) (the numeric-q
    expansion sums every factor's contribution, so partial products are
    not the coefficients)."""
    ps = sample_params(1, 2)
    ctx = QContext(ps.sqrt_q, ps.field)
    cap = 8
    lhs = phi_of_monomial(ctx, 2, cap, ps.field.one, (1, 1))
    one_minus = MultiSeries.one(2, cap, ps.field)
    one_minus.terms[(1, 1)] = -ps.field.one
    rhs = one_minus * phi_of_monomial(ctx, 2, cap, ctx.q, (1, 1))
    assert lhs == rhs
    assert lhs.get((1, 1)) == -1 / (1 - ctx.q)


def test_phi_of_monomial_rejects_degree_zero():
    ps = sample_params(1, 2)
    ctx = QContext(ps.sqrt_q, ps.field)
    with pytest.raises(ValueError):
        phi_of_monomial(ctx, 2, 4, ps.field.one, (0, 0))
    with pytest.raises(ValueError):
        eq_of_monomial(ctx, 2, 4, ps.field.one, (0, 0))


def test_operators_are_linear():
    rng = random.Random(4)
    ps = sample_params(1, 2)
    ctx = QContext(ps.sqrt_q, ps.field)
    f = ps.field
    ops = [
        qborel_op(1, ctx),
        shift_scaling_op([f.of(2), f.of(5)], f),
        mul_op(eq_of_monomial(ctx, 2, 5, ps.d(0), (1, 0))),
        phi_product_normal_op([ps.d(i) * ps.dbar(i) for i in range(2)],
                              +1, ctx, 2, 5),
        neumann_inverse_op(eq_product_normal_op([f.one, f.one], -1, ctx, 2, 5), 5),
    ]
    for op in ops:
        for _ in range(5):
            sa = MultiSeries(2, 5, f, {
                tuple(rng.randrange(3) for _ in range(2)):
                Fraction(rng.randrange(1, 9)) for _ in range(3)})
            sb = MultiSeries(2, 5, f, {
                tuple(rng.randrange(3) for _ in range(2)):
                Fraction(rng.randrange(1, 9)) for _ in range(3)})
            a = Fraction(rng.randrange(1, 7))
            b = Fraction(rng.randrange(1, 7))
            assert op(sa.scale(a) + sb.scale(b)) == \
                op(sa).scale(a) + op(sb).scale(b)


def test_neumann_inverse():
    ps = sample_params(1, 2)
    ctx = QContext(ps.sqrt_q, ps.field)
    op = eq_product_normal_op([ps.field.one, ps.field.one], -1, ctx, 2, 5)
    inv = neumann_inverse_op(op, 5)
    for th in all_monomials(2, 3):
        s = MultiSeries.monomial(2, 5, ps.field, th)
        assert inv(op(s)) == s
        assert op(inv(s)) == s


def test_exp_and_inverse_series():
    f = RATIONAL
    s = MultiSeries(1, 6, f, {(1,): Fraction(1, 2), (2,): Fraction(-1, 3)})
    e = exp_series(s)
    assert e.get((0,)) == 1
    loge_back = series_inverse(e) * e
    assert loge_back == MultiSeries.one(1, 6, f)


def test_single_variable_borel_commutations():
    # Ad(q^{(1/2) theta_i^2}) x_i = q^{1/2} x_i p_i  and
    # Ad(q^{theta_i theta_j}) x_i = x_i p_j  (i != j)
    ps = sample_params(6, 2)
    ctx = QContext(ps.sqrt_q, ps.field)
    f = ps.field
    sq_diag = diagonal_op(lambda th: ctx.qpow_half(th[0] * th[0]))
    sq_diag_inv = diagonal_op(lambda th: ctx.qpow_half(-th[0] * th[0]))
    x0 = mul_op(MultiSeries.monomial(2, 6, f, (1, 0)))
    p0 = diagonal_op(lambda th: spow(ctx.q, th[0]))
    lhs = compose([sq_diag, x0, sq_diag_inv])
    rhs = compose([x0, p0]).scale(ctx.sqrt_q)
    assert ops_agree_on_monomials(lhs, rhs, 2, 3, 6, f) is None

    cross = diagonal_op(lambda th: spow(ctx.q, th[0] * th[1]))
    cross_inv = diagonal_op(lambda th: spow(ctx.q, -th[0] * th[1]))
    p1 = diagonal_op(lambda th: spow(ctx.q, th[1]))
    lhs = compose([cross, x0, cross_inv])
    rhs = compose([x0, p1])
    assert ops_agree_on_monomials(lhs, rhs, 2, 3, 6, f) is None
