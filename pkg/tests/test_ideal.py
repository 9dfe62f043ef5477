from __future__ import annotations

import random

import pytest

from qch.domains import QQ
from qch.ideal import (BudgetError, QuadraticIdeal, default_weights,
                       generator_order, witness_to_json)
from qch.ncpoly import NCPoly
from qch.qma import AlgebraContext
from qch.rmatrix import build_standard_sp, flip_context
from qch.scalar import ONE, QScalar, sample_points


def qp(e):
    return QScalar.q_power(e)


def gen(a, b):
    return NCPoly.generator(QQ, a, b)


def word_poly(w):
    return NCPoly(QQ, {tuple(w): ONE})


@pytest.fixture(scope="module")
def rtt2():
    return AlgebraContext(build_standard_sp(1), flip_context(QQ, 2),
                          label="sp2-rtt")


@pytest.fixture(scope="module")
def ideal2(rtt2):
    return QuadraticIdeal(QQ, 2, rtt2.defining_relations(), label="sp2-rtt")


@pytest.fixture(scope="module")
def ideal2_re():
    r = build_standard_sp(1)
    ctx = AlgebraContext(r, r, label="sp2-re")
    return QuadraticIdeal(QQ, 2, ctx.defining_relations(), label="sp2-re")


@pytest.fixture(scope="module")
def rtt4():
    return AlgebraContext(build_standard_sp(2), flip_context(QQ, 4),
                          label="sp4-rtt")


@pytest.fixture(scope="module")
def ideal4(rtt4):
    return QuadraticIdeal(QQ, 4, rtt4.defining_relations(), label="sp4-rtt")


# -- orders and gradings ---------------------------------------------------------

def test_generator_order_shape():
    order2 = generator_order(2)
    assert sorted(order2.values()) == list(range(4))
    order4 = generator_order(4)
    assert sorted(order4.values()) == list(range(16))
    # the top-left block outranks the bottom-right block
    assert order4[(0, 0)] > order4[(3, 3)]


def test_default_weights():
    assert default_weights(2) == [1, -1]
    assert default_weights(4) == [2, 1, -1, -2]
    assert default_weights(3) is None


def test_weights_dropped_when_not_homogeneous(ideal2, ideal2_re):
    assert ideal2.weights == [1, -1]
    assert ideal2_re.weights is None


# -- span ranks -------------------------------------------------------------------

def test_rank_dim2_degree2(ideal2, ideal2_re):
    stats = ideal2.rank_of_degree(2)
    assert stats == {"degree": 2, "rank": 6, "blocks": 5, "spanning": 12}
    stats_re = ideal2_re.rank_of_degree(2)
    assert stats_re["rank"] == 6
    assert stats_re["blocks"] == 1


def test_rank_dim4_degree2(ideal4):
    stats = ideal4.rank_of_degree(2)
    assert stats["rank"] == 130
    assert stats["degree"] == 2


def test_rank_dim2_degree3_exact_vs_modular(ideal2):
    stats = ideal2.rank_of_degree(3)
    assert stats == {"degree": 3, "rank": 44, "blocks": 12, "spanning": 96}
    for pt in sample_points(11, count=3, bound=ideal2._point_bound()):
        assert ideal2.at_point(pt).rank_of_degree(3) == stats


# -- normal ordering ---------------------------------------------------------------

def test_normal_order_swaps_diagonal_pair(ideal2):
    p = gen(1, 1) * gen(0, 0)
    expect = gen(0, 0) * gen(1, 1) + (gen(0, 1) * gen(1, 0)).scale(
        qp(-2) - qp(2))
    assert (ideal2.normal_order(p) - expect).is_zero()


def test_normal_order_idempotent(ideal2):
    p = gen(1, 1) * gen(0, 0) * gen(0, 1) + gen(1, 0).scale(qp(3))
    once = ideal2.normal_order(p)
    assert (ideal2.normal_order(once) - once).is_zero()


def test_normal_order_congruent_mod_ideal(ideal2):
    rng = random.Random(20240814)
    gens = [(a, b) for a in range(2) for b in range(2)]
    for _ in range(5):
        terms = {}
        for _ in range(rng.randint(2, 5)):
            w = tuple(rng.choice(gens) for _ in range(rng.randint(0, 3)))
            c = QScalar.from_int(rng.randint(-3, 3)) * qp(rng.randint(-2, 2))
            terms[w] = terms.get(w, QScalar.from_int(0)) + c
        p = NCPoly(QQ, {w: c for w, c in terms.items() if not c.is_zero()})
        diff = ideal2.normal_order(p) - p
        cert = ideal2.membership(diff, mode="exact", use_rewrite=False)
        assert cert.is_member, cert


def test_normal_order_budget():
    r = build_standard_sp(1)
    ctx = AlgebraContext(r, flip_context(QQ, 2), label="sp2")
    ideal = QuadraticIdeal(QQ, 2, ctx.defining_relations())
    with pytest.raises(BudgetError):
        ideal.normal_order(gen(1, 1) * gen(0, 0), budget=1)


# -- membership --------------------------------------------------------------------

def test_zero_is_member(ideal2):
    cert = ideal2.membership(NCPoly.zero(QQ))
    assert cert.is_member and cert.status == "member"


def test_low_degree_part_rejected(ideal2):
    cert = ideal2.membership(gen(0, 0) + gen(0, 0) * gen(1, 1))
    assert not cert.is_member
    assert cert.detail == "nonzero part of degree < 2"


def test_commutator_not_member(ideal2):
    p = gen(0, 0) * gen(0, 1) - gen(0, 1) * gen(0, 0)
    cert = ideal2.membership(p)
    assert cert.status == "non-member"
    assert cert.residual is not None and not cert.residual.is_zero()


def test_ch_entries_member_with_witness(rtt2, ideal2):
    rels = dict(ideal2.relations)
    ch = rtt2.ch_identity(1)
    for row in ch.rows:
        for entry in row:
            cert = ideal2.membership(entry, witness=True)
            assert cert.is_member
            acc = NCPoly.zero(QQ)
            for coeff, w1, rid, w2 in cert.witness:
                term = word_poly(w1) * rels[rid] * word_poly(w2)
                acc = acc + term.scale(coeff)
            assert (acc - entry).is_zero()


def test_membership_matrix(rtt2, ideal2):
    cert = ideal2.membership_matrix(rtt2.ch_identity(1))
    assert cert.is_member


def test_mixed_degree_member(ideal2):
    rel = ideal2.relations[0][1]
    p = rel * gen(1, 0) + rel.scale(qp(2))
    cert = ideal2.membership(p)
    assert cert.is_member


def test_modular_probable_member(rtt2, ideal2):
    entry = rtt2.ch_identity(1).rows[0][0]
    cert = ideal2.membership(entry, mode="modular", seed=3)
    assert cert.status == "probable-member" and cert.is_member
    assert cert.kind == "modular"
    assert len(cert.points) >= 3
    assert cert.bound < 1e-12


def test_modular_non_member(ideal2):
    p = gen(0, 0) * gen(0, 1) - gen(0, 1) * gen(0, 0)
    cert = ideal2.membership(p, mode="modular", seed=5)
    assert cert.status == "non-member"


def test_membership_family(rtt2, ideal2):
    entry = rtt2.ch_identity(1).rows[1][0]
    cert = ideal2.membership_family(lambda pt: entry.reduce_at(pt), 2, seed=9)
    assert cert.is_member
    assert cert.bound < 1e-12


def test_sp4_parent_entry_exact_member(rtt4, ideal4):
    parent = rtt4.parent_identity(2)
    cert = ideal4.membership(parent.rows[0][0], mode="exact")
    assert cert.is_member


def test_witness_json_shape(rtt2, ideal2):
    entry = rtt2.ch_identity(1).rows[0][1]
    cert = ideal2.membership(entry, witness=True)
    data = witness_to_json(cert.witness)
    for item in data:
        coeff, w1, rid, w2 = item
        assert isinstance(coeff, str)
        assert isinstance(rid, str)
        for w in (w1, w2):
            assert all(len(pair) == 2 and all(1 <= x <= 2 for x in pair)
                       for pair in w)
