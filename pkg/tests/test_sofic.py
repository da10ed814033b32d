import itertools
import random
from fractions import Fraction

import pytest

from qframes.errors import (
    DomainIncomplete,
    EpsilonTooLarge,
    QuotientNotInjectiveOnK,
)
from qframes.algebra import FiniteGroup
from qframes.sofic import (
    QuasiAction,
    ZGroup,
    compose,
    exact_action,
    finite_quotient_action,
    folner_box_action,
    good_points,
    hamming,
    verify_quasi_action,
)


def test_hamming_examples():
    s = (0, 1, 2, 3)
    assert hamming(s, s) == 0
    assert hamming(s, (1, 0, 2, 3)) == Fraction(1, 2)
    assert hamming(s, (1, 0, 3, 2)) == 1


def test_hamming_is_a_metric():
    # exhaustive on |V| <= 4 (all pairs/triples of permutations)
    perms = list(itertools.permutations(range(4)))
    for a in perms:
        assert hamming(a, a) == 0
    rng = random.Random(0)
    for _ in range(300):
        a, b, c = (rng.choice(perms) for _ in range(3))
        assert hamming(a, b) == hamming(b, a)
        assert hamming(a, c) <= hamming(a, b) + hamming(b, c)
        if a != b:
            assert hamming(a, b) > 0


def test_exact_quotient_certificate():
    qa = finite_quotient_action(8, [-1, 0, 1])
    cert = verify_quasi_action(qa, [-1, 0, 1], Fraction(1, 100))
    assert cert.eps_mult == 0 and cert.eps_free == 0 and cert.valid


def test_constant_map_fails_freeness():
    ctx = ZGroup()
    idp = tuple(range(6))
    qa = QuasiAction(ctx, 6, {g: idp for g in (-2, -1, 0, 1, 2)})
    cert = verify_quasi_action(qa, [-1, 0, 1], Fraction(1, 4))
    assert not cert.free_ok and cert.eps_free == 1


def test_domain_incomplete():
    ctx = ZGroup()
    qa = QuasiAction(ctx, 4, {0: (0, 1, 2, 3), 1: (1, 2, 3, 0)})
    with pytest.raises(DomainIncomplete):
        verify_quasi_action(qa, [0, 1], Fraction(1, 2))


def test_quotient_not_injective():
    with pytest.raises(QuotientNotInjectiveOnK):
        finite_quotient_action(2, [-1, 0, 1])


def test_folner_box_reversed_fill_defects():
    box = folner_box_action(10, [-1, 0, 1], completion="reversed_fill")
    cert = verify_quasi_action(box, [-1, 0, 1], Fraction(2, 10))
    assert cert.eps_mult <= Fraction(2, 10)
    assert cert.valid


def test_good_points_z500():
    qa = finite_quotient_action(500, [-1, 0, 1])
    rep = good_points(qa, [-1, 0, 1], 10)
    b = rep["bounds"]
    assert b["vbar_size"] == 500 and b["vbar_size"] >= b["vbar_lower"] == 450
    assert b["w_size"] == 166 and b["w_size"] >= b["w_lower"] == 50
    # HW covers Vbar (asserted inside; re-derive here)
    hw = set()
    for w in rep["W"]:
        hw |= qa.orbit(rep["H"], w)
    assert rep["Vbar"] <= hw


def test_good_points_exact_group_action():
    G = FiniteGroup.cyclic(6)
    qa = exact_action(G)
    rep = good_points(qa, [G.e, 1, G.inverse(1)], 12)
    assert rep["bounds"]["vbar_size"] == 6  # genuinely free everywhere


def test_good_points_noisy_box():
    box = folner_box_action(1000, [-1, 0, 1], completion="reversed_fill")
    rep = good_points(box, [-1, 0, 1], 2)
    b = rep["bounds"]
    assert b["eps"] > 0
    assert b["vbar_size"] >= b["vbar_lower"]
    assert b["w_size"] >= b["w_lower"]


def test_epsilon_too_large():
    box = folner_box_action(100, [-1, 0, 1], completion="reversed_fill")
    with pytest.raises(EpsilonTooLarge):
        good_points(box, [-1, 0, 1], 10)


def test_z2_box():
    ball = [(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)]
    box = folner_box_action(20, ball, planar=True, completion="cyclic")
    cert = verify_quasi_action(box, ball, Fraction(1, 100))
    assert cert.eps_mult == 0 and cert.valid
    rep = good_points(box, ball, 2)
    assert rep["bounds"]["vbar_size"] == 400


def test_compose_convention():
    s1 = (1, 2, 0)
    s2 = (2, 0, 1)
    assert compose(s1, s2) == tuple(s1[s2[v]] for v in range(3))
