import pytest

from qframes.errors import CrossViolation, QframeError, UnsupportedRing
from qframes.algebra import (
    GF,
    FiniteGroup,
    MatrixRing,
    Zmod,
    galois_crossed_spec,
    group_ring_spec,
    induced_module,
    lattice_hom_from_module_hom,
    lattice_model,
    module_length,
    restrict_to_base_ring,
    stable_finiteness_check,
    submodule_length,
    surj_implies_inj_check,
    verify_crossed,
    verify_ring,
)
from qframes.algebra.crossed import CrossedProductSpec, twisted_sign_spec
from qframes.algebra.finiteness import right_inverse
from qframes.algebra.modules import (
    ModuleHom,
    all_submodules,
    ring_as_module,
    span,
)
from qframes.lattice import length


F2 = GF(2)
F4 = GF(2, [1, 1, 1])
Z4 = Zmod(4)
C2 = FiniteGroup.cyclic(2)
C3 = FiniteGroup.cyclic(3)


def test_rings():
    assert verify_ring(F4)["ok"]
    assert F4.frobenius(F4.frobenius(2)) == 2
    assert sorted(F4.units()) == [1, 2, 3]
    with pytest.raises(UnsupportedRing):
        GF(2, [1, 0, 1])  # x^2 + 1 = (x+1)^2 over F_2
    mat = MatrixRing(F2, 2)
    assert mat.n == 16
    assert verify_ring(mat)["ok"]


def test_groups():
    V4 = FiniteGroup.klein_four()
    assert V4.n == 4 and all(V4.op(g, g) == V4.e for g in V4.elements())
    assert C3.inverse(1) == 2
    subs = C3.symmetric_subsets()
    assert frozenset({C3.e}) in subs and frozenset(C3.elements()) in subs


def test_group_ring_f2c3():
    R = verify_crossed(group_ring_spec(F2, C3))
    assert R.n == 8
    assert R.is_commutative()
    # canonical base embedding is an injective ring hom
    seen = set()
    for r in F2.elements():
        for s in F2.elements():
            assert R.mul(R.embed_base(r), R.embed_base(s)) \
                == R.embed_base(F2.mul(r, s))
        seen.add(R.embed_base(r))
    assert len(seen) == F2.n


def test_galois_crossed():
    R = verify_crossed(galois_crossed_spec(F4, C2, F4.frobenius))
    assert R.n == 16
    assert not R.is_commutative()
    # tau values are units and the two convolution routes agree
    import random

    rng = random.Random(1)
    for _ in range(50):
        a, b = rng.randrange(16), rng.randrange(16)
        assert R._convolve(a, b) == R._convolve_grouped(a, b)


def test_cross_violation():
    # tau(t,t) = a non-unit-compatible value breaks the cocycle law
    ident = tuple(range(Z4.n))
    bad_tau = ((Z4.one, Z4.one), (Z4.one, 2))  # 2 is not a unit of Z/4
    spec = CrossedProductSpec(Z4, C2, (ident, ident), bad_tau)
    with pytest.raises(CrossViolation):
        verify_crossed(spec)


def test_twisted_spec():
    R = verify_crossed(twisted_sign_spec(Z4, 3))
    assert R.n == 16
    # (1 t)(1 t) = tau(t,t) e = 3 e
    tbar = R.basis_element(Z4.one, 1)
    assert R.mul(tbar, tbar) == R.embed_base(3)


def test_induced_module_sizes():
    R = verify_crossed(group_ring_spec(F2, C3))
    M = induced_module(ring_as_module(F2), R)
    assert M.n == 8
    RZ = verify_crossed(group_ring_spec(Z4, C2))
    MZ = induced_module(ring_as_module(Z4), RZ)
    assert MZ.n == 16
    RG = verify_crossed(galois_crossed_spec(F4, C2, F4.frobenius))
    MG = induced_module(ring_as_module(F4), RG)
    assert MG.n == F4.n ** C2.n  # |M| = |N|^|G| = 16


def test_lattice_model_f2c3():
    R = verify_crossed(group_ring_spec(F2, C3))
    M = ring_as_module(R)
    model = lattice_model(M, R)
    lat = model["lattice"]
    assert lat.n == 16
    ranks = {}
    for s in model["submodules"]:
        ranks.setdefault(len(s), 0)
        ranks[len(s)] += 1
    assert ranks == {1: 1, 2: 7, 4: 7, 8: 1}  # Gaussian binomials of F_2^3
    assert model["rho"][C3.e].table == tuple(range(lat.n))
    # right multiplication by t permutes the seven lines, equivariantly
    t_elem = R.from_coefficients([0, 1, 0])
    phi = ModuleHom.left_multiplication(M, R, t_elem)
    Phi = model["lift"](phi)
    lines = [i for i, s in enumerate(model["submodules"]) if len(s) == 2]
    assert {Phi(i) for i in lines} == set(lines)
    for g in C3.elements():
        rho = model["rho"][g]
        assert tuple(Phi(rho(i)) for i in range(lat.n)) \
            == tuple(rho(Phi(i)) for i in range(lat.n))


def test_lemma_pipeline_mult_by_units_and_zero_divisors():
    R = verify_crossed(group_ring_spec(F2, C3))
    M = ring_as_module(R)
    for a in R.elements():
        phi = ModuleHom.left_multiplication(M, R, a)
        rep = lattice_hom_from_module_hom(phi)
        assert rep["phi_injective"] == rep["Phi_injective"]
        assert rep["phi_surjective"] == rep["Phi_surjective"]
    one_plus_t = R.from_coefficients([1, 1, 0])
    phi = ModuleHom.left_multiplication(M, R, one_plus_t)
    ker = phi.kernel_set()
    assert len(ker) == 2  # span(1 + t + t^2)
    all_ones = R.from_coefficients([1, 1, 1])
    assert all_ones in ker


def test_module_lengths():
    R = verify_crossed(group_ring_spec(F2, C3))
    MR = restrict_to_base_ring(ring_as_module(R), R)
    assert module_length(MR) == 3
    assert submodule_length(MR, span(MR, [R.embed_base(F2.one)])) == 1
    ZR = verify_crossed(group_ring_spec(Z4, C2))
    MZ = restrict_to_base_ring(ring_as_module(ZR), ZR)
    assert module_length(MZ) == 4  # log_2 of 16


def test_stable_finiteness_fields_and_galois():
    rep = stable_finiteness_check(F2, 1)
    assert rep["mode"] == "exhaustive" and not rep["violations"]
    RG = verify_crossed(galois_crossed_spec(F4, C2, F4.frobenius))
    rep = stable_finiteness_check(RG, 1)
    assert rep["checked"] == 16 and rep["right_invertible"] == 6
    assert not rep["violations"]


def test_right_inverse_solver():
    RG = verify_crossed(galois_crossed_spec(F4, C2, F4.frobenius))
    for x in RG.elements():
        y = right_inverse(RG, x)
        if y is not None:
            assert RG.mul(x, y) == RG.one
            assert RG.mul(y, x) == RG.one


def test_stable_finiteness_z4_sampled():
    rep = stable_finiteness_check(Zmod(4), 2, mode="sample", samples=2000)
    assert not rep["violations"]
    assert rep["checked"] == 2000


def test_surj_implies_inj_f2c3():
    R = verify_crossed(group_ring_spec(F2, C3))
    rep = surj_implies_inj_check(ring_as_module(R))
    assert rep["endomorphisms"] == 8  # the 2^9 additive maps filter to R*G
    assert rep["enumeration"] == "exhaustive-additive"
    assert rep["surjective"] == rep["injective"] == 3


def test_submodule_enumeration_z4():
    M = ring_as_module(Zmod(4))
    subs = all_submodules(M)
    assert len(subs) == 3  # 0 < (2) < Z/4
