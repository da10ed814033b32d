import random

import pytest

from qframes.errors import NotALattice, NotAPoset, ZeroMember
from qframes.lattice import (
    FiniteLattice,
    Segment,
    boolean_lattice,
    chain,
    chain_conditions,
    composition_refine,
    diamond_m3,
    divisor_lattice,
    family_props,
    is_transpose_pair,
    lattice_props,
    length,
    matched_factor_transposes,
    maximal_chain,
    modularity_witness,
    pentagon_witness,
    pentagon_n5,
    product,
    schreier_pair,
    segment_length,
    socle_series,
    subspace_lattice,
    verify_lattice,
)


def by_label(L, value):
    return next(i for i in L.elements() if L.label(i) == value)


def test_verify_divisor_relation():
    divs = [1, 2, 3, 4, 6, 12]
    rel = [[1 if b % a == 0 else 0 for b in divs] for a in divs]
    L = verify_lattice(rel, labels=divs)
    assert L.label(L.top) == 12 and L.label(L.bottom) == 1
    # exhaustive lub/glb oracle over all pairs
    for i in L.elements():
        for j in L.elements():
            join = L.label(L.join(i, j))
            meet = L.label(L.meet(i, j))
            a, b = L.label(i), L.label(j)
            assert join == min(d for d in divs if d % a == 0 and d % b == 0)
            assert meet == max(d for d in divs if a % d == 0 and b % d == 0)


def test_verify_trivial_lattice():
    L = verify_lattice([[1]])
    assert L.n == 1 and L.top == L.bottom


def test_two_maximal_elements_rejected():
    # bottom below three pairwise-incomparable elements: (1, 2) has no lub
    rel = [
        [1, 1, 1, 1],
        [0, 1, 0, 0],
        [0, 0, 1, 0],
        [0, 0, 0, 1],
    ]
    with pytest.raises(NotALattice):
        verify_lattice(rel)


def test_non_poset_rejected():
    rel = [[1, 1], [1, 1]]  # antisymmetry fails
    with pytest.raises(NotAPoset):
        verify_lattice(rel)


def test_props_m3_n5_chain():
    m3 = lattice_props(diamond_m3())
    assert m3["modular"] and not m3["distributive"]
    n5 = lattice_props(pentagon_n5())
    assert not n5["modular"] and n5["modular_witness"] is not None
    a, b, c = n5["modular_witness"]
    L = pentagon_n5()
    assert L.join(a, L.meet(b, c)) != L.meet(L.join(a, b), c)
    ch = lattice_props(chain(4))
    assert ch["modular"] and ch["distributive"]


def test_modularity_agrees_with_pentagon_oracle():
    """Definitional triple scan vs the no-pentagon-sublattice oracle on a
    corpus of small lattices (builders plus random sublattice closures)."""
    rng = random.Random(0)
    corpus = [chain(2), chain(4), diamond_m3(), pentagon_n5(),
              boolean_lattice(3), divisor_lattice(12), divisor_lattice(30),
              subspace_lattice(2), subspace_lattice(3),
              product(pentagon_n5(), chain(2))]
    for big in (subspace_lattice(3), product(pentagon_n5(), chain(2)),
                boolean_lattice(3)):
        for _ in range(8):
            seed = set(rng.sample(range(big.n), 4)) | {big.bottom, big.top}
            closed = set(seed)
            frontier = list(seed)
            while frontier:
                x = frontier.pop()
                for y in list(closed):
                    for z in (big.join(x, y), big.meet(x, y)):
                        if z not in closed:
                            closed.add(z)
                            frontier.append(z)
            ids = sorted(closed)
            pos = {e: i for i, e in enumerate(ids)}
            rel = [[1 if big.leq(a, b) else 0 for b in ids] for a in ids]
            corpus.append(verify_lattice(rel))
    for L in corpus:
        assert (modularity_witness(L) is None) == (pentagon_witness(L) is None)


def test_family_props():
    sub = subspace_lattice(3)
    lines = [by_label(sub, frozenset({0, v})) for v in (1, 2, 4)]
    rep = family_props(sub, lines)
    assert rep["join_independent"] and rep["basis"]
    D = divisor_lattice(12)
    assert family_props(D, [by_label(D, 4)])["join_independent"]
    rep = family_props(D, [by_label(D, 4), by_label(D, 6)])
    assert not rep["join_independent"]
    with pytest.raises(ZeroMember):
        family_props(D, [D.bottom])


def test_product():
    P = product(chain(2), chain(3))
    assert P.n == 6 and length(P) == 3
    L = divisor_lattice(12)
    T = product(L, chain(1))
    assert T.n == L.n and length(T) == length(L)
    PM = product(diamond_m3(), chain(2))
    assert PM.n == 10
    props = lattice_props(PM)
    assert props["modular"] and not props["distributive"]
    assert length(PM) == 3


def test_product_length_additivity():
    factors = [divisor_lattice(12), chain(3), diamond_m3()]
    P = product(*factors)
    assert length(P) == sum(length(f) for f in factors)


def test_length():
    assert length(divisor_lattice(12)) == 3
    assert length(verify_lattice([[1]])) == 0
    assert length(chain(2)) == 1  # an atom
    sub = subspace_lattice(4)
    assert length(sub) == 4


def test_segment():
    D = divisor_lattice(12)
    seg = Segment(D, by_label(D, 2), by_label(D, 12))
    assert segment_length(D, seg.a, seg.b) == 2
    sub, ids = seg.sublattice()
    assert sub.n == len(ids) == 4  # divisors of 12 that are multiples of 2: 2,4,6,12
    assert length(sub) == 2


def test_composition_refine_divisor12():
    D = divisor_lattice(12)
    series = composition_refine(D, [D.bottom, D.top])
    assert len(series) - 1 == 3
    for a, b in zip(series, series[1:]):
        assert D.is_atom_segment(a, b)
    # idempotence on an existing composition series
    assert composition_refine(D, series) == series


def test_jordan_holder_exhaustive_divisor12():
    """All maximal chains of divisor(12) have the same length."""
    D = divisor_lattice(12)
    chains = []

    def extend(chain_so_far):
        last = chain_so_far[-1]
        if last == D.top:
            chains.append(chain_so_far)
            return
        for c in D.covers()[last]:
            extend(chain_so_far + [c])

    extend([D.bottom])
    lengths = {len(c) - 1 for c in chains}
    assert lengths == {3}
    assert len(chains) > 1


def test_schreier_pair_and_transposes():
    D = divisor_lattice(12)
    c1 = [D.bottom, by_label(D, 2), by_label(D, 4), D.top]
    c2 = [D.bottom, by_label(D, 3), by_label(D, 6), D.top]
    r1, r2, _grids = schreier_pair(D, c1, c2)
    strict1 = sum(1 for a, b in zip(r1, r1[1:]) if a != b)
    strict2 = sum(1 for a, b in zip(r2, r2[1:]) if a != b)
    assert strict1 == strict2 == 3
    # matched factors both transpose down to a common interval
    for (s1, s2, common) in matched_factor_transposes(D, c1, c2):
        for seg in (s1, s2):
            if seg[0] != seg[1]:
                assert is_transpose_pair(D, common, seg) or \
                    is_transpose_pair(D, seg, common) or common == seg


def test_socle_series():
    D = divisor_lattice(12)
    rep = socle_series(D)
    assert D.label(rep["socle"]) == 6
    assert rep["semi_artinian"]
    atom = chain(2)
    assert socle_series(atom)["socle"] == atom.top
    # the series of divisor(12): socle 6, then everything
    assert [D.label(x) for x in rep["series"]] == [6, 12]


def test_chain_conditions_finite():
    D = divisor_lattice(12)
    rep = chain_conditions(D)
    assert rep["noetherian"] and rep["artinian"]
    assert rep["cross_check_compact"] and rep["cross_check_finite_length"]


def test_length_sum_small():
    for L in (divisor_lattice(36), subspace_lattice(3), diamond_m3()):
        depth = L.depths()
        for x in L.elements():
            for y in L.elements():
                assert (depth[L.join(x, y)] + depth[L.meet(x, y)]
                        == depth[x] + depth[y])


def test_socle_join_independent():
    """s(join of an independent family) = join of the socles; >= in general."""
    sub = subspace_lattice(3)
    soc = {x: socle_series(Segment(sub, sub.bottom, x).sublattice()[0])
           for x in sub.elements()}

    def socle_of(x):
        inner, ids = Segment(sub, sub.bottom, x).sublattice()
        rep = socle_series(inner)
        return ids[rep["socle"]]

    lines = [by_label(sub, frozenset({0, v})) for v in (1, 2)]
    joined = sub.join_all(lines)
    assert socle_of(joined) == sub.join_all([socle_of(x) for x in lines])
    for x in sub.elements():
        for y in sub.elements():
            j = sub.join(x, y)
            assert sub.leq(sub.join(socle_of(x), socle_of(y)), socle_of(j))
