import pytest

from qframes.errors import HypothesisFailed, QframeError, SplittingMissing
from qframes.algebra import GF, FiniteGroup, group_ring_spec, verify_crossed
from qframes.algebra.modules import ModuleHom, ring_as_module
from qframes.engine import (
    MainInstance,
    main_higher_pipeline,
    mutual_exclusivity,
    prel_high_witness,
    verify_main_hypotheses,
)
from qframes.engine_replay import ProofReplay, proof_construction, replay_key_lemma
from qframes.sofic import TableGroupContext, QuasiAction

F2 = GF(2)
C2 = FiniteGroup.cyclic(2)
C3 = FiniteGroup.cyclic(3)


def make_instance(group, coeffs, K=None, name="inst"):
    ring = verify_crossed(group_ring_spec(F2, group))
    module = ring_as_module(ring)
    phi = ModuleHom.left_multiplication(module, ring,
                                        ring.from_coefficients(coeffs))
    K = frozenset(K) if K is not None else frozenset(group.elements())
    return MainInstance(ring, module, phi, K=K, name=name), ring, module


def test_hypotheses_pass_for_zero_divisor():
    inst, ring, module = make_instance(C3, [1, 1, 0], name="(1+t)")
    rep = verify_main_hypotheses(inst)
    assert rep["l"] == 1 and rep["join_independent"] and rep["equivariant"]
    assert sorted(inst.F) == [0, 1, 2]


def test_hypotheses_identity_atom():
    inst, ring, module = make_instance(C3, [1, 0, 0], K=[C3.e], name="id")
    rep = verify_main_hypotheses(inst)
    assert rep["F"] == [C3.e]


def test_hypothesis_b_fails_for_full_ybar():
    """An instance whose distinguished element is the whole module cannot
    have a join-independent orbit (for a nontrivial group)."""
    ring = verify_crossed(group_ring_spec(F2, C2))
    module = ring_as_module(ring)
    phi = ModuleHom.left_multiplication(module, ring, ring.one)

    class FullInstance(MainInstance):
        def _component(self, g):
            return frozenset(module.elements())

    inst = FullInstance(ring, module, phi, K=frozenset(C2.elements()))
    with pytest.raises(HypothesisFailed) as err:
        verify_main_hypotheses(inst)
    assert err.value.name == "b"


def test_mutual_exclusivity_examples():
    ident, *_ = make_instance(C3, [1, 0, 0], K=[C3.e])
    rep = mutual_exclusivity(ident)
    assert rep["cond1"] and not rep["cond2"]
    zd, *_ = make_instance(C3, [1, 1, 0])
    rep = mutual_exclusivity(zd)
    assert rep["cond2"] and not rep["cond1"]
    assert rep["ell_join"] == 2 and rep["budget"] == 2


def test_prel_high_witness():
    ident, *_ = make_instance(C3, [1, 0, 0], K=[C3.e])
    rep = prel_high_witness(ident)
    assert rep["surjectivity_K"] == (C3.e,)
    shift, *_ = make_instance(C3, [0, 1, 0])
    rep = prel_high_witness(shift)
    assert rep["surjectivity_K"] == (2,)  # K = {t^-1}
    zd, ring, module = make_instance(C3, [1, 1, 0])
    rep = prel_high_witness(zd)
    assert not rep["phi_surjective"]
    K, x = rep["noninjectivity"]["K"], rep["noninjectivity"]["x"]
    assert zd.phi(x) == module.zero and x != module.zero
    assert ring.from_coefficients([1, 1, 1]) == x


def test_main_higher_pipeline_a_star():
    shift, *_ = make_instance(C3, [0, 1, 0])
    rep = main_higher_pipeline(shift, mode="a_star")
    assert rep["pipeline_injective"] and rep["direct_injective"]
    assert rep["alpha"] == 0
    with pytest.raises(HypothesisFailed):
        zd, *_ = make_instance(C3, [1, 1, 0])
        main_higher_pipeline(zd, mode="a_star")


def test_main_higher_pipeline_a_prime():
    shift, ring, module = make_instance(C3, [0, 1, 0])
    psi = ModuleHom.left_multiplication(module, ring,
                                        ring.from_coefficients([0, 0, 1]))
    rep = main_higher_pipeline(shift, mode="a_prime_star", psi=psi)
    assert rep["socle_size"] == module.n  # Maschke: semisimple group ring
    assert rep["socle_length"] == 3
    with pytest.raises(SplittingMissing):
        main_higher_pipeline(shift, mode="a_prime_star")


def test_replay_trivial_group():
    ring = verify_crossed(group_ring_spec(F2, FiniteGroup.cyclic(1)))
    module = ring_as_module(ring)
    phi = ModuleHom.left_multiplication(module, ring, ring.one)
    inst = MainInstance(ring, module, phi, K=frozenset([0]), name="trivial")
    replay = ProofReplay(inst, dense_cap=0)
    assert replay.checks["x_covering"] and replay.checks["pi2_injective"]


def test_replay_dense_z2():
    inst, *_ = make_instance(C2, [1, 1], name="z2")
    replay = proof_construction(inst)
    assert replay.dense is not None
    rep = replay.dense.report
    assert rep["quotient_modular"]
    assert rep["pi2_Qe_injective"]
    assert rep["ell_pi2_Qe_exact"] == 2
    key = replay_key_lemma(replay)
    assert key["satisfied"]
    assert key["im_length_exact"] <= key["im_length_upper"]


def test_replay_records_meet_instability():
    """The Psi-equality relation fails (Cong.3); the replay must detect it
    and carry a witness rather than hard-fail."""
    inst, *_ = make_instance(C3, [1, 1, 0])
    replay = proof_construction(inst)
    assert replay.checks["cong3_meet_stable"] is False
    assert replay.checks["cong3_witness"] is not None
    assert replay.dense.report["cong3_meet_failures"] > 0
    assert replay.checks["congruence_joins"]


def test_replay_key_lemma_rejects_full_length():
    """An injective full-length instance fails hypothesis (2)."""
    ident, *_ = make_instance(C3, [1, 0, 0], K=[C3.e])
    replay = proof_construction(ident)
    with pytest.raises(HypothesisFailed):
        replay_key_lemma(replay)


def test_replay_cond1_lower_bound():
    """For instances satisfying condition (1), the replay certifies the
    pi2(Q^e) lower bound (the unit-multiplication instance)."""
    shift, *_ = make_instance(C3, [0, 1, 0], K=[0, 1, 2])
    replay = proof_construction(shift)
    assert replay.conditions["cond1"]
    assert replay.checks.get("cond1_transported")
    assert replay.checks["ell_pi2_Qe"] == 3


def test_fault_injected_sigma_breaks_well_definedness():
    """Corrupting sigma_v must break the x-family comparison."""
    inst, *_ = make_instance(C3, [1, 1, 0])
    replay = proof_construction(inst)
    v0, v1 = replay.Vbar[0], replay.Vbar[1]
    # swap two sigma values at one good point
    tab = dict(replay.sigma[v0])
    keys = sorted(tab)
    tab[keys[0]], tab[keys[1]] = tab[keys[1]], tab[keys[0]]
    replay.sigma[v0] = tab
    broken = False
    for k in replay.K:
        for v in replay.Vbar:
            for k2 in replay.K:
                for v2 in replay.Vbar:
                    same = replay.qa.act(k, v) == replay.qa.act(k2, v2)
                    rel = replay.related(replay.x_elem(k, v),
                                         replay.x_elem(k2, v2))
                    if rel != same:
                        broken = True
    assert broken


def test_replay_with_doubled_quasi_action():
    """A non-self exact quasi-action (two disjoint copies of the group)
    exercises the sigma bookkeeping with V != G."""
    inst, ring, module = make_instance(C3, [1, 1, 0])
    G = C3
    perms = {}
    for g in G.elements():
        perm = []
        for v in range(2 * G.n):
            block, pos = divmod(v, G.n)
            perm.append(block * G.n + G.op(g, pos))
        perms[g] = tuple(perm)
    qa = QuasiAction(TableGroupContext(G), 2 * G.n, perms)
    replay = ProofReplay(inst, qa=qa, dense_cap=0)
    assert len(replay.Vbar) == 6
    key = replay_key_lemma(replay)
    assert key["satisfied"]
    assert key["V"] == 6
