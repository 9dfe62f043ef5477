from __future__ import annotations

import pytest

from qch import qma
from qch.domains import QQ
from qch.ideal import QuadraticIdeal
from qch.ncpoly import NCPoly, QMatrix
from qch.qma import AlgebraContext, star_word
from qch.rmatrix import build_standard_sp, flip_context
from qch.scalar import LAMBDA, ONE, Q, QINV, QScalar, sample_points
from qch.tensor import matrix_unit


def qp(e):
    return QScalar.q_power(e)


def gen(a, b):
    return NCPoly.generator(QQ, a, b)


@pytest.fixture(scope="module")
def rtt2():
    return AlgebraContext(build_standard_sp(1), flip_context(QQ, 2),
                          label="sp2-rtt")


@pytest.fixture(scope="module")
def re2():
    r = build_standard_sp(1)
    return AlgebraContext(r, r, label="sp2-re")


@pytest.fixture(scope="module")
def rtt4():
    return AlgebraContext(build_standard_sp(2), flip_context(QQ, 4),
                          label="sp4-rtt")


@pytest.fixture(scope="module")
def ideal2(rtt2):
    return QuadraticIdeal(QQ, 2, rtt2.defining_relations(), label="sp2-rtt")


@pytest.fixture(scope="module")
def ideal2_re(re2):
    return QuadraticIdeal(QQ, 2, re2.defining_relations(), label="sp2-re")


@pytest.fixture(scope="module")
def ideal4(rtt4):
    return QuadraticIdeal(QQ, 4, rtt4.defining_relations(), label="sp4-rtt")


def assert_member(ideal, qmat_or_poly):
    if isinstance(qmat_or_poly, NCPoly):
        entries = [qmat_or_poly]
    else:
        entries = [p for row in qmat_or_poly.rows for p in row]
    for p in entries:
        cert = ideal.membership(p)
        assert cert.is_member, cert


def test_pair_tags(rtt2, re2, rtt4):
    assert rtt2.pair == "rtt"
    assert re2.pair == "re"
    assert rtt4.pair == "rtt"


# -- characteristic elements ---------------------------------------------------

def test_a1_calibration_anchor(rtt2, re2):
    expect = gen(0, 0).scale(qp(-5)) + gen(1, 1).scale(qp(-1))
    assert rtt2.a_elem(1) == expect
    assert re2.a_elem(1) == expect
    assert rtt2.p_elem(1) == expect


def test_p0_closed_form(rtt2):
    mu = rtt2.r_ctx.mu_scalar
    expect = (qp(1) - mu) * (qp(-1) + mu) / LAMBDA
    assert rtt2.p_elem(0) == NCPoly.constant(QQ, expect)
    # mu = -q^-3 makes this (q^4+1)/q^5
    assert expect == (qp(4) + ONE) * qp(-5)


def test_sp4_a1(rtt4):
    expect = (gen(0, 0).scale(qp(-9)) + gen(1, 1).scale(qp(-7))
              + gen(2, 2).scale(qp(-3)) + gen(3, 3).scale(qp(-1)))
    assert rtt4.a_elem(1) == expect
    assert rtt4.epsilon_elements(2)[1] == expect


# -- defining relations ---------------------------------------------------------

def sp2_rtt_printed_relations():
    rels = []
    for i in range(2):  # q^2 X_{i2} X_{i1} = X_{i1} X_{i2} rows / columns
        rels.append((gen(i, 1) * gen(i, 0)).scale(qp(2)) - gen(i, 0) * gen(i, 1))
        rels.append((gen(1, i) * gen(0, i)).scale(qp(2)) - gen(0, i) * gen(1, i))
    rels.append(gen(1, 0) * gen(0, 1) - gen(0, 1) * gen(1, 0))
    rels.append(gen(1, 1) * gen(0, 0) - gen(0, 0) * gen(1, 1)
                - (gen(0, 1) * gen(1, 0)).scale(qp(-2) - qp(2)))
    return rels


def test_sp2_rtt_relations_span(ideal2):
    spec_example = (gen(1, 1) * gen(1, 0)).scale(qp(2)) - gen(1, 0) * gen(1, 1)
    assert ideal2.membership(spec_example).status == "member"
    for rel in sp2_rtt_printed_relations():
        assert ideal2.membership(rel).status == "member"
    assert ideal2.rank_of_degree(2)["rank"] == 6


def sp2_re_printed_relations():
    c = ONE - qp(-4)
    rels = []
    for (i, j) in [(0, 1), (1, 0), (1, 1)]:  # X_ij X_11 = q^{4(j-i)} X_11 X_ij
        rels.append(gen(i, j) * gen(0, 0)
                    - (gen(0, 0) * gen(i, j)).scale(qp(4 * (j - i))))
    rels.append(gen(1, 1) * gen(0, 1) - gen(0, 1) * gen(1, 1)
                - (gen(0, 0) * gen(0, 1)).scale(c))
    rels.append(gen(1, 1) * gen(1, 0) - gen(1, 0) * gen(1, 1)
                + (gen(0, 0) * gen(1, 0)).scale(qp(-4) * c))
    rels.append(gen(1, 0) * gen(0, 1) - gen(0, 1) * gen(1, 0)
                - (gen(0, 0) * (gen(0, 0) - gen(1, 1))).scale(c))
    return rels


def test_sp2_re_relations_span(ideal2_re):
    for rel in sp2_re_printed_relations():
        assert ideal2_re.membership(rel).status == "member"
    assert ideal2_re.rank_of_degree(2)["rank"] == 6


def test_sp4_rank_130(ideal4):
    assert ideal4.rank_of_degree(2)["rank"] == 130


# -- two-contraction ------------------------------------------------------------

def test_g_rtt_sp2_forms(rtt2, ideal2):
    half = ONE / (qp(2) + qp(-2))
    first = ((gen(0, 0) * gen(1, 1)).scale(qp(-2))
             + (gen(1, 1) * gen(0, 0)).scale(qp(2))
             - gen(0, 1) * gen(1, 0) - gen(1, 0) * gen(0, 1)
             ).scale(qp(-6) * half)
    assert rtt2.g == first
    second = (gen(0, 0) * gen(1, 1)
              - (gen(0, 1) * gen(1, 0)).scale(qp(2))).scale(qp(-6))
    assert_member(ideal2, rtt2.g - second)


def test_g_re_sp2_forms(re2, ideal2_re):
    half = ONE / (qp(2) + qp(-2))
    first = (gen(0, 0) * gen(1, 1) + gen(1, 1) * gen(0, 0)
             - (gen(0, 0) * gen(0, 0)).scale(ONE - qp(-4))
             - gen(0, 1) * gen(1, 0)
             - (gen(1, 0) * gen(0, 1)).scale(qp(4))).scale(qp(-4) * half)
    assert re2.g == first
    second = (gen(0, 0) * gen(1, 1)
              - (gen(0, 0) * gen(0, 0)).scale(ONE - qp(-4))
              - gen(0, 1) * gen(1, 0)).scale(qp(-2))
    assert_member(ideal2_re, re2.g - second)


def test_two_contraction_residuals(rtt2, ideal2, rtt4, ideal4):
    for ctx, ideal in [(rtt2, ideal2), (rtt4, ideal4)]:
        for op in ctx.two_contraction_residuals():
            for val in op.data.values():
                assert_member(ideal, val)


# -- trace maps ------------------------------------------------------------------

def test_phi_display_sp2(rtt2):
    m = rtt2.m_matrix
    phi = rtt2.phi(m)
    assert phi[(0, 0)] == gen(0, 0).scale(qp(-4)) + gen(1, 1).scale(ONE - qp(-4))
    assert phi[(0, 1)] == gen(0, 1).scale(qp(-6))
    assert phi[(1, 0)] == gen(1, 0).scale(qp(-2))
    assert phi[(1, 1)] == gen(1, 1)


def test_pi_display_sp2_from_linear_identity(rtt2):
    # pi(M) must solve M - q I a1 + q^2 pi(M) = 0 identically, which pins
    # every entry of pi(M); assert the resulting closed form.
    m = rtt2.m_matrix
    pi = rtt2.pi(m)
    a1 = rtt2.a_elem(1)
    expect = (QMatrix.identity(QQ, 2).mul_poly_right(a1).scale(qp(-1))
              - m.scale(qp(-2)))
    assert pi == expect
    assert pi[(0, 0)] == gen(0, 0).scale(qp(-6) - qp(-2)) + gen(1, 1).scale(qp(-2))
    assert pi[(1, 1)] == gen(0, 0).scale(qp(-6))


def test_pi_is_f_independent(rtt2, re2, rtt4):
    assert rtt2.map_tensor("pi") == re2.map_tensor("pi")
    r4 = build_standard_sp(2)
    re4 = AlgebraContext(r4, r4, label="sp4-re")
    assert rtt4.map_tensor("pi") == re4.map_tensor("pi")


def test_pi_matches_composed_map(rtt2, re2, rtt4):
    for ctx in (rtt2, re2, rtt4):
        assert ctx.map_tensor("pi") == ctx.pi_composed_tensor()


def test_pi_trace_order_variants(rtt2):
    rc = rtt2.r_ctx
    for c in range(2):
        for d in range(2):
            u = matrix_unit(QQ, 2, c, d).embed(1, 2)
            op1 = (rc.r @ u @ rc.k_op).r_trace(rc.d_r, 2)
            op2 = (rc.k_op @ u @ rc.r).r_trace(rc.d_r, 2)
            assert op1 == op2


def test_pi_pi_inv_identity(rtt2, rtt4):
    for ctx in (rtt2, rtt4):
        m = ctx.m_matrix
        assert ctx.apply_map("pi_inv", ctx.pi(m)) == m
        assert ctx.pi(ctx.apply_map("pi_inv", m)) == m


def test_phi_xi_inverses(rtt2, rtt4):
    for ctx in (rtt2, rtt4):
        m = ctx.m_matrix
        assert ctx.phi_inv(ctx.phi(m)) == m
        assert ctx.phi(ctx.phi_inv(m)) == m
        assert ctx.xi_inv(ctx.xi(m)) == m
        assert ctx.xi(ctx.xi_inv(m)) == m


def test_re_phi_is_identity(re2):
    m = re2.m_matrix
    assert re2.phi(m) == m
    assert re2.phi_inv(m) == m


def test_g_conjugators_identity_for_rtt(rtt2, rtt4):
    for ctx in (rtt2, rtt4):
        g_mat, g_inv = ctx.g_conjugators()
        ident = QMatrix.identity(QQ, ctx.dim)
        assert g_mat == ident and g_inv == ident


def test_d_rf_factorization(rtt2, re2, rtt4):
    for ctx in (rtt2, re2, rtt4):
        assert ctx.d_rf == ctx.d_rf_factorized()


def test_xi_composite_calibration(rtt2):
    # pi = mu phi^-1 xi pinned against the displayed phi/pi pair:
    # phi(pi(M)) must equal mu xi(M).
    m = rtt2.m_matrix
    mu = rtt2.r_ctx.mu_scalar
    assert rtt2.phi(rtt2.pi(m)) == rtt2.xi(m).scale(mu)


# -- star products ----------------------------------------------------------------

def test_star_with_identity(rtt2):
    m = rtt2.m_matrix
    ident = QMatrix.identity(QQ, 2)
    assert rtt2.star_multiply(m, ident) == m
    assert rtt2.star_power(0) == ident
    assert rtt2.star_power(1) == m


def test_star_power_two(rtt2, re2):
    m = rtt2.m_matrix
    assert rtt2.star_power(2) == m @ rtt2.phi(m)
    # phi = id for RE, so star powers are plain matrix powers
    l = re2.m_matrix
    assert re2.star_power(2) == l @ l


def test_star_power_degrees(rtt2):
    for n in (2, 3):
        for row in rtt2.star_power(n).rows:
            for p in row:
                assert p.is_zero() or list(p.graded_parts()) == [n]


def test_braid_power_matches_star_power(rtt2):
    # M^{(empty)} = M, and the bridge word sigma_1 gives the star square.
    assert (rtt2.m_power((), 1) - rtt2.m_matrix).is_zero()
    w2, n2 = star_word((), 1, (), 1)
    assert w2 == ((1, 1),)
    assert (rtt2.m_power(w2, n2) - rtt2.star_power(2)).is_zero()
    w3, n3 = star_word((), 1, w2, n2)
    assert w3 == ((2, 1), (1, 1))
    assert (rtt2.m_power(w3, n3) - rtt2.star_power(3)).is_zero()


def test_star_associativity_on_powers(rtt2):
    # (M*M)*M and M*(M*M) compose to the braid words
    # sigma_1 sigma_2 sigma_1 sigma_2^-1 and sigma_2 sigma_1, which agree.
    sq, n2 = star_word((), 1, (), 1)
    left, nl = star_word(sq, n2, (), 1)
    right, nr = star_word((), 1, sq, n2)
    assert nl == nr == 3
    assert (rtt2.m_power(left, nl) - rtt2.m_power(right, nr)).is_zero()


def test_t_map_on_identity(rtt2):
    mu = rtt2.r_ctx.mu_scalar
    p0 = (qp(1) - mu) * (qp(-1) + mu) / LAMBDA
    c = p0 - (ONE - mu * mu) / LAMBDA
    ident = QMatrix.identity(QQ, 2)
    assert rtt2.xi(ident) == ident.map_entries(lambda p: p.scale(c))
    assert rtt2.t_map(ident) == rtt2.m_matrix.map_entries(lambda p: p.scale(c))


def test_t_map_degree(rtt2):
    for n in (1, 2):
        out = rtt2.t_map(rtt2.star_power(n))
        for row in out.rows:
            for p in row:
                assert p.is_zero() or list(p.graded_parts()) == [n + 1]


# -- pi star powers ----------------------------------------------------------------

def test_pi_star_power_one(rtt2):
    m = rtt2.m_matrix
    mu = rtt2.r_ctx.mu_scalar
    assert rtt2.pi_star_power(1) == rtt2.pi(m)
    assert rtt2.pi_star_power(1) == rtt2.phi_inv(rtt2.xi(m)).scale(mu)


def test_pi_star_inverse_relation(rtt2, ideal2):
    # pi(M) * M = g I modulo the ideal
    m = rtt2.m_matrix
    g_ident = QMatrix.identity(QQ, 2).mul_poly_right(rtt2.g)
    assert_member(ideal2, rtt2.pi_star(m) - g_ident)


# -- descendants -------------------------------------------------------------------

def test_descendants_first_column(rtt2):
    for m in (0, 1, 2):
        assert rtt2.descendant_a(m, 1) == rtt2.star_power(m + 1)
    assert rtt2.descendant_a(-1, 1) == QMatrix.identity(QQ, 2)
    zero = QMatrix.zero(QQ, 2)
    assert rtt2.descendant_a(1, 0) == zero
    assert rtt2.descendant_b(1, 0) == zero


def test_descendant_b_closed_form(rtt2, ideal2):
    mu_inv = rtt2.r_ctx.mu_scalar.inv()
    g = rtt2.g
    b11 = rtt2.descendant_b(1, 1)
    expect = QMatrix.identity(QQ, 2).mul_poly_right(g).scale(mu_inv)
    assert_member(ideal2, b11 - expect)
    b21 = rtt2.descendant_b(2, 1)
    expect2 = rtt2.m_matrix.mul_poly_right(g).scale(mu_inv)
    assert_member(ideal2, b21 - expect2)


@pytest.mark.parametrize("m", [0, 1, 2])
@pytest.mark.parametrize("i", [0, 1])
def test_recursion_residuals(rtt2, ideal2, m, i):
    res1, res2 = rtt2.recursion_residuals(m, i)
    assert_member(ideal2, res1)
    assert_member(ideal2, res2)


@pytest.mark.parametrize("m,i", [(-1, 1), (0, 2)])
def test_expansion_a(rtt2, ideal2, m, i):
    assert_member(ideal2, rtt2.expansion_residual_a(m, i))


@pytest.mark.parametrize("m,i", [(1, 1), (2, 2)])
def test_expansion_b(rtt2, ideal2, m, i):
    assert_member(ideal2, rtt2.expansion_residual_b(m, i))


def test_cutting(rtt2):
    assert rtt2.boundary_a(2).is_zero()
    assert rtt2.cutting_dependency(0, 1).is_zero()
    assert rtt2.cutting_dependency(1, 1).is_zero()


# -- characteristic identities -------------------------------------------------------

def test_ch_display_sp2(rtt2, ideal2):
    a1, g = rtt2.a_elem(1), rtt2.g
    hand = (rtt2.star_power(2)
            - rtt2.m_matrix.mul_poly_right(a1).scale(qp(1))
            + QMatrix.identity(QQ, 2).mul_poly_right(g).scale(qp(2)))
    ch = rtt2.ch_identity(1)
    assert ch == hand
    assert_member(ideal2, ch)


def test_ch_display_sp2_re(re2, ideal2_re):
    l = re2.m_matrix
    hand = (l @ l
            - l.mul_poly_right(re2.a_elem(1)).scale(qp(1))
            + QMatrix.identity(QQ, 2).mul_poly_right(re2.g).scale(qp(2)))
    ch = re2.ch_identity(1)
    assert ch == hand
    assert_member(ideal2_re, ch)


def test_parent_identity_vanishes_freely(rtt2, re2):
    assert rtt2.parent_identity(1).is_zero()
    assert re2.parent_identity(1).is_zero()


def test_ch_equals_m_star_parent_k1(rtt2, ideal2):
    parent = rtt2.parent_identity(1)
    assert rtt2.star_multiply(rtt2.star_power(1), parent).is_zero()
    assert_member(ideal2, rtt2.ch_identity(1))


def test_epsilon_tower_sp4(rtt4):
    eps = rtt4.epsilon_elements(2)
    g = rtt4.g
    assert eps[0] == NCPoly.one(QQ)
    assert eps[2] == rtt4.a_elem(2) + g
    assert eps[3] == rtt4.a_elem(1) * g
    assert eps[4] == g * g


def sp4_eps2_printed():
    def G(a, b):
        return gen(a, b)
    return ((G(0, 0) * G(1, 1) - (G(0, 1) * G(1, 0)).scale(qp(1))).scale(qp(-16))
            + (G(2, 2) * G(3, 3) - (G(2, 3) * G(3, 2)).scale(qp(1))).scale(qp(-4))
            + ((G(2, 2) + G(3, 3).scale(qp(2)))
               * (G(0, 0) + G(1, 1).scale(qp(2)))).scale(qp(-12))
            - ((G(2, 0) * G(0, 2)).scale(qp(-1))
               - (G(2, 0) * G(1, 3)).scale(qp(1) - qp(-1))
               + G(2, 1) * G(1, 2) + G(3, 0) * G(0, 3)
               + (G(3, 1) * G(1, 3)).scale(qp(3))).scale(qp(-12)))


def test_epsilon2_printed_form_sp4(rtt4, ideal4):
    eps2 = rtt4.epsilon_elements(2)[2]
    assert_member(ideal4, eps2 - sp4_eps2_printed())


def test_parent_display_sp4(rtt4):
    m = rtt4.m_matrix
    eps = rtt4.epsilon_elements(2)
    hand = (rtt4.star_power(2)
            - m.mul_poly_right(eps[1]).scale(qp(1))
            + QMatrix.identity(QQ, 4).mul_poly_right(eps[2]).scale(qp(2))
            - rtt4.pi(m).mul_poly_right(eps[1]).scale(qp(3))
            + rtt4.pi_star_power(2).scale(qp(4)))
    assert rtt4.parent_identity(2) == hand


def test_ch_display_sp4(rtt4):
    m = rtt4.m_matrix
    eps = rtt4.epsilon_elements(2)
    g = rtt4.g
    hand = (rtt4.star_power(4)
            - rtt4.star_power(3).mul_poly_right(eps[1]).scale(qp(1))
            + rtt4.star_power(2).mul_poly_right(eps[2]).scale(qp(2))
            - m.mul_poly_right(eps[1] * g).scale(qp(3))
            + QMatrix.identity(QQ, 4).mul_poly_right(g * g).scale(qp(4)))
    assert rtt4.ch_identity(2) == hand


# -- invariants ----------------------------------------------------------------------

def test_characteristic_subalgebra_commutes(rtt2, ideal2):
    words = [
        rtt2.a_elem(1),
        rtt2.char_braid([(1, 1)], 2),
        rtt2.char_braid([(1, -1)], 2),
        rtt2.char_braid([(1, 1), (2, 1)], 3),
        rtt2.char_braid([(2, 1), (1, 1)], 3),
        rtt2.char_braid([(1, 1), (2, 1), (1, 1)], 3),
        rtt2.g,
    ]
    for i in range(len(words)):
        for j in range(i + 1, len(words)):
            assert_member(ideal2, words[i] * words[j] - words[j] * words[i])


@pytest.mark.parametrize("n", [1, 2])
def test_g_permutation(rtt2, ideal2, re2, ideal2_re, n):
    for ctx, ideal in [(rtt2, ideal2), (re2, ideal2_re)]:
        assert_member(ideal, ctx.g_permutation_residual(ctx.star_power(n)))


def test_at_point_reduction(rtt2):
    pt = sample_points(17, count=1, bound=12)[0]
    ctx_p = rtt2.at_point(pt)
    assert ctx_p.parent_identity(1).is_zero()
    assert ctx_p.a_elem(1) == rtt2.a_elem(1).reduce_at(pt)


# -- block calibration maps -----------------------------------------------------------

def generic_block():
    return [[gen(0, 0), gen(0, 1)], [gen(1, 0), gen(1, 1)]]


def test_sigma_alpha_beta_identities():
    x = generic_block()
    assert qma.block_sigma(qma.block_sigma(x, Q), QINV) == x
    assert qma.block_alpha(qma.block_alpha(x, Q, +1), QINV, +1) == x
    assert qma.block_alpha(qma.block_alpha(x, Q, -1), QINV, -1) == x
    lhs = qma.block_beta(qma.block_alpha(x, QINV, +1), Q)
    rhs = qma.block_scale(qma.block_alpha(qma.block_beta(x, QINV), Q, +1),
                          qp(-4))
    assert lhs == rhs


def test_sp4_xi_block_display(rtt4):
    m = rtt4.m_matrix
    blk = {c: qma.block_of(m, c) for c in "ABCD"}
    expect = qma.assemble_blocks(QQ, [
        [qma.block_scale(qma.block_sigma(blk["D"], Q), -qp(-5)),
         qma.block_scale(qma.block_sigma(blk["B"], Q), qp(-8))],
        [qma.block_scale(qma.block_sigma(blk["C"], Q), qp(-2)),
         qma.block_scale(qma.block_sigma(blk["A"], Q), -qp(-5))],
    ])
    assert rtt4.xi(m) == expect


def test_sp4_phi_block_display(rtt4):
    m = rtt4.m_matrix
    blk = {c: qma.block_of(m, c) for c in "ABCD"}
    top_left = qma.block_add(
        qma.block_scale(qma.block_alpha(blk["A"], Q, +1), qp(-6)),
        qma.block_scale(qma.block_beta(blk["D"], Q), ONE - qp(-2)))
    expect = qma.assemble_blocks(QQ, [
        [top_left, qma.block_scale(qma.block_alpha(blk["B"], Q, -1), qp(-7))],
        [qma.block_scale(qma.block_alpha(blk["C"], Q, -1), qp(-1)),
         qma.block_alpha(blk["D"], Q, +1)],
    ])
    assert rtt4.phi(m) == expect


def test_sp4_pi_block_display(rtt4):
    m = rtt4.m_matrix
    blk = {c: qma.block_of(m, c) for c in "ABCD"}

    def a_plus(x):
        return qma.block_alpha(qma.block_sigma(x, Q), QINV, +1)

    def a_minus(x):
        return qma.block_alpha(qma.block_sigma(x, Q), QINV, -1)

    def b_comp(x):
        return qma.block_beta(qma.block_sigma(x, Q), QINV)

    expect = qma.assemble_blocks(QQ, [
        [qma.block_add(qma.block_scale(a_plus(blk["D"]), qp(-4)),
                       qma.block_scale(b_comp(blk["A"]),
                                       -(ONE - qp(-2)) * qp(-8))),
         qma.block_scale(a_minus(blk["B"]), -qp(-6))],
        [qma.block_scale(a_minus(blk["C"]), -qp(-6)),
         qma.block_scale(a_plus(blk["A"]), qp(-10))],
    ])
    assert rtt4.pi(m) == expect


def test_sp4_map_inverses_are_q_bar(rtt4):
    m = rtt4.m_matrix

    def bar_matrix(qmat):
        return qmat.map_entries(
            lambda p: p.map_coefficients(QQ, lambda c: c.bar()))

    assert rtt4.xi_inv(m) == bar_matrix(rtt4.xi(m))
    assert rtt4.phi_inv(m) == bar_matrix(rtt4.phi(m))
