import pytest

from qframes.chains import INF, ChainLattice
from qframes.errors import NotAChain, UnsupportedCarrier
from qframes.lattice import chain_conditions, lattice_props, length, socle_series
from qframes.ordinals import parse_ordinal


def test_order_and_bounds():
    C = ChainLattice("w+5", "standard")
    assert C.bottom == parse_ordinal("0") and C.top == parse_ordinal("w+5")
    assert C.leq(3, "w") and not C.leq("w", 3)
    R = ChainLattice("w+5", "reversed")
    assert R.bottom == parse_ordinal("w+5") and R.top == parse_ordinal("0")
    assert R.leq("w", 3) and not R.leq(3, "w")
    assert R.join(3, "w") == parse_ordinal("3")
    assert R.meet(3, "w") == parse_ordinal("w")
    with pytest.raises(NotAChain):
        C.leq("w^2", 0)


def test_props_dispatch():
    rep = lattice_props(ChainLattice("w", "standard"))
    assert rep["modular"] and rep["distributive"]
    assert "successor" in rep["compact_elements"]
    assert lattice_props(ChainLattice("w", "reversed"))["compact_elements"] \
        == "all elements"


def test_length():
    assert length(ChainLattice(5)) == 5
    assert length(ChainLattice("w")) == INF
    assert ChainLattice("w^2+3", "reversed").chain_length() == INF


def test_segments_are_chains():
    R = ChainLattice("w*2+3", "reversed")
    seg = R.segment(parse_ordinal("w*2+3"), parse_ordinal("w"))
    assert seg.alpha == parse_ordinal("w+3") and seg.orientation == "reversed"
    S = ChainLattice("w*2", "standard")
    assert S.segment_extent("w", "w*2") == parse_ordinal("w")
    with pytest.raises(NotAChain):
        S.segment("w", 3)


def test_compactness():
    S = ChainLattice("w*2", "standard")
    assert S.is_compact_element(0)
    assert S.is_compact_element(parse_ordinal("w+1"))
    assert not S.is_compact_element("w")
    R = ChainLattice("w*2", "reversed")
    assert all(R.is_compact_element(x) for x in R.sample_elements())


def test_socle_series():
    std = socle_series(ChainLattice("w", "standard"))
    assert std["semi_artinian"] and std["socle"] == parse_ordinal("1")
    rev = socle_series(ChainLattice("w", "reversed"))
    assert not rev["semi_artinian"]
    assert rev["socle"] == parse_ordinal("w")  # the bottom: no atom exists
    rev2 = socle_series(ChainLattice("w+5", "reversed"))
    assert not rev2["semi_artinian"]
    assert rev2["socle"] == parse_ordinal("w+4")
    assert rev2["stabilizes_at"] == parse_ordinal("w")
    fin = socle_series(ChainLattice(4, "reversed"))
    assert fin["semi_artinian"]


def test_chain_conditions():
    std = chain_conditions(ChainLattice("w", "standard"))
    assert std == {"noetherian": False, "artinian": True,
                   "cross_check_compact": True,
                   "cross_check_finite_length": True}
    rev = chain_conditions(ChainLattice("w", "reversed"))
    assert rev["noetherian"] and not rev["artinian"]
    assert rev["cross_check_compact"] and rev["cross_check_finite_length"]
    fin = chain_conditions(ChainLattice(7, "standard"))
    assert fin["noetherian"] and fin["artinian"]


def test_materialize():
    L = ChainLattice(3, "reversed").to_finite_lattice()
    assert L.n == 4 and L.label(L.bottom) == 3
    with pytest.raises(UnsupportedCarrier):
        ChainLattice("w").to_finite_lattice()
