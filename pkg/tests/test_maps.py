import itertools

import pytest

from qframes.errors import (
    NotCongruence,
    NotSegmentPreserving,
    NotStrongCongruence,
    ZeroNotPreserved,
)
from qframes.lattice import (
    chain,
    divisor_lattice,
    length,
    segment_length,
    socle_series,
    subspace_lattice,
)
from qframes.maps import (
    QframeHom,
    congruence_closure,
    kernel_and_algebraicity,
    quotient_by_congruence,
    verify_congruence,
    verify_hom,
)


def by_label(L, value):
    return next(i for i in L.elements() if L.label(i) == value)


def test_identity_hom():
    D = divisor_lattice(12)
    phi = verify_hom(D, D, list(range(D.n)))
    assert phi.is_injective() and phi.is_surjective()


def test_segment_gap_rejected():
    # chain(2) = {0 < 1} into chain(3) = {0 < m < 1} skipping the middle
    with pytest.raises(NotSegmentPreserving) as exc:
        verify_hom(chain(2), chain(3), [0, 2])
    assert exc.value.witness[2] == 1  # the missing middle element


def test_zero_not_preserved():
    with pytest.raises(ZeroNotPreserved):
        verify_hom(chain(2), chain(3), [1, 2])


def test_module_surjection_lift_z4_to_z2():
    """The submodule-lattice map of Z/4 ->> Z/2 is a hom with kernel the
    unique middle submodule, and it is algebraic."""
    # submodule chains: 0 < (2) < Z/4 and 0 < Z/2
    z4 = chain(3)
    z2 = chain(2)
    phi = verify_hom(z4, z2, [0, 0, 1])  # (2) maps onto 0 under x -> x mod 2?
    # the image of the middle submodule (2)/(0) under the surjection is 0
    info = kernel_and_algebraicity(phi)
    assert info["kernel"] == 1
    assert info["algebraic"]
    assert not phi.is_injective() and phi.is_surjective()


def test_kernel_and_algebraicity_examples():
    D = divisor_lattice(12)
    ident = QframeHom.identity(D)
    info = kernel_and_algebraicity(ident)
    assert info["kernel"] == D.bottom and info["algebraic"]
    # constant-to-0 on chain(3): kernel is the top, restriction trivial
    const = verify_hom(chain(3), chain(3), [0, 0, 0])
    info = kernel_and_algebraicity(const)
    assert info["kernel"] == 2 and info["algebraic"]


def test_own_non_algebraic_example():
    """A hom with kernel 0 that is not injective: 3-chain onto 2-chain
    collapsing the top two elements.  (Constructed here; not taken from
    any external source.)"""
    phi = verify_hom(chain(3), chain(2), [0, 1, 1])
    info = kernel_and_algebraicity(phi)
    assert info["kernel"] == 0
    assert not info["algebraic"]
    assert not info["injective"]


def odd_part_endo(D):
    """x -> its odd part; join-preserving, 0-preserving, segment-onto."""
    def odd(v):
        while v % 2 == 0:
            v //= 2
        return v

    return verify_hom(D, D, [by_label(D, odd(D.label(x)))
                             for x in D.elements()])


def test_composition_and_identity_closure():
    D = divisor_lattice(12)
    into = verify_hom(chain(2), D, [D.bottom, by_label(D, 2)])
    up = odd_part_endo(D)
    comp = up.compose(into)
    # composites of verified homs satisfy the definitional checks again
    verify_hom(comp.source, comp.target, comp.table)


def test_quotient_two_primary():
    D = divisor_lattice(12)
    classes = [frozenset(by_label(D, v) for v in (1, 2, 4)),
               frozenset(by_label(D, v) for v in (3, 6, 12))]
    cong = verify_congruence(D, classes)
    out = quotient_by_congruence(D, cong)
    Q = out["quotient"]
    assert Q.n == 2
    pi = out["projection"]
    assert pi.is_surjective()
    assert pi(by_label(D, 1)) == pi(by_label(D, 4))


def test_quotient_degenerate():
    D = divisor_lattice(12)
    equality = verify_congruence(D, [frozenset({x}) for x in D.elements()])
    Q = quotient_by_congruence(D, equality)["quotient"]
    assert Q.n == D.n
    single = verify_congruence(D, [frozenset(D.elements())])
    Q1 = quotient_by_congruence(D, single)["quotient"]
    assert Q1.n == 1


def test_congruence_violations():
    D = divisor_lattice(12)
    bad = [frozenset({by_label(D, 1), by_label(D, 12)})] + [
        frozenset({x}) for x in D.elements()
        if D.label(x) not in (1, 12)]
    with pytest.raises(NotCongruence):
        verify_congruence(D, bad)
    # a partition failing only strongness needs a class without a maximum,
    # which on finite carriers would already break (Cong.2); check that the
    # strongness flag can be bypassed for plain congruences
    cong = verify_congruence(D, [frozenset(D.elements())], strong=True)
    assert cong.maxima[0] == D.top


def test_congruence_closure():
    D = divisor_lattice(12)
    classes = congruence_closure(D, [(by_label(D, 1), by_label(D, 2))])
    cong = verify_congruence(D, classes)
    out = quotient_by_congruence(D, cong)
    # gluing 1~2 collapses to {1,2},{3,6},{4},{12}: a 4-element diamond
    assert out["quotient"].n == 4


def test_projection_commutes_with_joins_and_segments():
    D = divisor_lattice(36)
    classes = congruence_closure(D, [(by_label(D, 1), by_label(D, 2))])
    cong = verify_congruence(D, classes)
    out = quotient_by_congruence(D, cong)
    pi, Q = out["projection"], out["quotient"]
    for x in D.elements():
        for y in D.elements():
            assert pi(D.join(x, y)) == Q.join(pi(x), pi(y))
    # segment preservation is part of verify_hom, re-checked here on a pair
    seg_image = {pi(s) for s in D.interval(D.bottom, by_label(D, 12))}
    assert seg_image == set(Q.interval(pi(D.bottom), pi(by_label(D, 12))))


def test_length_monotone_under_homs():
    D = divisor_lattice(12)
    Q2 = chain(2)
    pi = verify_hom(D, Q2, [0 if D.label(x) in (1, 2, 4) else 1
                            for x in D.elements()])
    assert pi.is_surjective()
    assert length(Q2) <= length(D)
    into = verify_hom(chain(2), D, [D.bottom, by_label(D, 2)])
    assert into.is_injective()
    assert length(chain(2)) <= length(D)


def generated_endos(D):
    """Identity plus the p-part stripping endomorphisms that exist on a
    divisor lattice (x -> x with all factors p removed)."""
    endos = [QframeHom.identity(D)]
    for p in (2, 3, 5):
        def strip(v, p=p):
            while v % p == 0:
                v //= p
            return v

        labels = {D.label(x) for x in D.elements()}
        if all(strip(v) in labels for v in labels):
            endos.append(verify_hom(
                D, D, [by_label(D, strip(D.label(x))) for x in D.elements()]))
    return endos


def test_injective_iff_surjective_on_endos():
    """Equal-length source and target force injective <=> surjective."""
    for n in (12, 36, 30):
        D = divisor_lattice(n)
        for phi in generated_endos(D):
            assert phi.is_injective() == phi.is_surjective()


def test_image_is_segment():
    D = divisor_lattice(12)
    phi = odd_part_endo(D)
    image = set(phi.table)
    assert image == set(D.interval(phi(D.bottom), phi(D.top)))
    assert {D.label(x) for x in image} == {1, 3}


def test_hom_socle_compatible():
    """phi(s(L)) <= s(image segment) for the generated endomorphisms."""
    from qframes.lattice import Segment

    D = divisor_lattice(12)
    s_D = socle_series(D)["socle"]
    for phi in generated_endos(D):
        sub, ids = Segment(D, phi(D.bottom), phi(D.top)).sublattice()
        s_img = ids[socle_series(sub)["socle"]]
        assert D.leq(phi(s_D), s_img)


def test_socle_restriction_is_functorial():
    """Soc(psi o phi) = Soc(psi) o Soc(phi): restricting to the socle
    commutes with composition for the generated endomorphisms."""
    from qframes.lattice import Segment

    D = divisor_lattice(12)
    s = socle_series(D)["socle"]
    soc_ids = D.interval(D.bottom, s)
    endos = generated_endos(D)
    for phi in endos:
        for psi in endos:
            comp = psi.compose(phi)
            for x in soc_ids:
                assert comp(x) == psi(phi(x))
                assert D.leq(phi(x), s)  # socle is preserved (Soc functor)
