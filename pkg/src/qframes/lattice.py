"""Finite bounded lattices: verification, length, series, socle calculus.

Elements are ids 0..n-1.  The order is stored as bitmask up-sets/down-sets,
so joins and meets are two integer ANDs plus a dictionary lookup; this keeps
every downstream algorithm (composition series, socle towers, congruence
quotients, product lattices) linear-algebra free.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (
    NotAChain,
    NotALattice,
    NotAPoset,
    SizeLimitExceeded,
    ZeroMember,
)

DEFAULT_ELEMENT_CAP = 1 << 16


class FiniteLattice:
    """A validated finite bounded lattice.

    `up[i]`/`down[i]` are bitmasks of the elements >=/<= i.  `labels` is an
    optional per-element payload (divisor values, subspace descriptors, ...)
    used by label-aware predicates and exports.
    """

    __slots__ = (
        "n", "up", "down", "bottom", "top", "labels",
        "_join_index", "_meet_index", "_covers", "_depth",
    )

    def __init__(self, up, down, bottom, top, labels=None):
        self.n = len(up)
        self.up = tuple(up)
        self.down = tuple(down)
        self.bottom = bottom
        self.top = top
        self.labels = tuple(labels) if labels is not None else None
        self._join_index = {mask: i for i, mask in enumerate(self.up)}
        self._meet_index = {mask: i for i, mask in enumerate(self.down)}
        self._covers = None
        self._depth = None

    # -- basic order operations --------------------------------------------

    def leq(self, x, y) -> bool:
        return bool(self.up[x] >> y & 1)

    def lt(self, x, y) -> bool:
        return x != y and self.leq(x, y)

    def join(self, x, y) -> int:
        z = self._join_index.get(self.up[x] & self.up[y])
        if z is None:
            raise NotALattice(f"no join for ({x},{y})", witness=(x, y))
        return z

    def meet(self, x, y) -> int:
        z = self._meet_index.get(self.down[x] & self.down[y])
        if z is None:
            raise NotALattice(f"no meet for ({x},{y})", witness=(x, y))
        return z

    def join_all(self, xs) -> int:
        acc = self.bottom
        for x in xs:
            acc = self.join(acc, x)
        return acc

    def meet_all(self, xs) -> int:
        acc = self.top
        for x in xs:
            acc = self.meet(acc, x)
        return acc

    def elements(self):
        return range(self.n)

    def interval(self, a, b):
        """Element ids in the segment [a, b]."""
        mask = self.up[a] & self.down[b]
        return _bits(mask)

    # -- covers and length ---------------------------------------------------

    def covers(self):
        """cover[i] = sorted list of j covering i (transitive reduction)."""
        if self._covers is None:
            cov = []
            for i in range(self.n):
                strict = self.up[i] & ~(1 << i)
                out = []
                for j in _bits(strict):
                    # j covers i iff nothing lies strictly between them
                    between = self.up[i] & self.down[j] & ~(1 << i) & ~(1 << j)
                    if between == 0:
                        out.append(j)
                cov.append(out)
            self._covers = cov
        return self._covers

    def depths(self):
        """depth[x] = length of the longest chain from bottom to x."""
        if self._depth is None:
            order = sorted(range(self.n), key=lambda x: bin(self.down[x]).count("1"))
            depth = [0] * self.n
            cov = self.covers()
            for x in order:
                for y in cov[x]:
                    depth[y] = max(depth[y], depth[x] + 1)
            self._depth = depth
        return self._depth

    def atoms(self):
        return self.covers()[self.bottom]

    def is_atom_segment(self, a, b) -> bool:
        """True iff [a, b] is a two-element segment, i.e. b covers a."""
        if not self.lt(a, b):
            return False
        between = self.up[a] & self.down[b] & ~(1 << a) & ~(1 << b)
        return between == 0

    def label(self, x):
        return self.labels[x] if self.labels is not None else x

    def __repr__(self):
        return f"FiniteLattice(n={self.n})"


def _bits(mask):
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class Segment:
    """The interval [a, b] of a carrier, itself a qframe."""

    carrier: FiniteLattice
    a: int
    b: int

    def __post_init__(self):
        if not self.carrier.leq(self.a, self.b):
            raise NotAChain(f"segment endpoints not ordered: {self.a}, {self.b}")

    def element_ids(self):
        return self.carrier.interval(self.a, self.b)

    def sublattice(self):
        """Materialize the segment as a FiniteLattice (with an id map)."""
        ids = self.element_ids()
        pos = {e: i for i, e in enumerate(ids)}
        up = []
        down = []
        for e in ids:
            um = 0
            dm = 0
            for f in ids:
                if self.carrier.leq(e, f):
                    um |= 1 << pos[f]
                if self.carrier.leq(f, e):
                    dm |= 1 << pos[f]
            up.append(um)
            down.append(dm)
        labels = None
        if self.carrier.labels is not None:
            labels = [self.carrier.labels[e] for e in ids]
        return FiniteLattice(up, down, pos[self.a], pos[self.b], labels), ids


# -- construction and verification ------------------------------------------


def verify_lattice(relation, labels=None) -> FiniteLattice:
    """Validate a reflexive boolean relation as a bounded lattice.

    `relation` is a square matrix (list of rows of 0/1) with relation[i][j]
    meaning i <= j.  Returns the validated lattice or raises NotAPoset /
    NotALattice with a witness.
    """
    n = len(relation)
    if n == 0:
        raise NotALattice("empty carrier")
    for row in relation:
        if len(row) != n:
            raise NotAPoset("relation matrix is not square")
    up = [0] * n
    down = [0] * n
    for i in range(n):
        for j in range(n):
            if relation[i][j]:
                up[i] |= 1 << j
                down[j] |= 1 << i
    for i in range(n):
        if not relation[i][i]:
            raise NotAPoset(f"not reflexive at {i}", witness=(i,))
    for i in range(n):
        for j in _bits(up[i]):
            if j != i and (up[j] >> i & 1):
                raise NotAPoset(f"antisymmetry fails at ({i},{j})", witness=(i, j))
            if up[j] & ~up[i]:
                k = _bits(up[j] & ~up[i])[0]
                raise NotAPoset(
                    f"transitivity fails at ({i},{j},{k})", witness=(i, j, k)
                )
    # locate top/bottom before building: lub/glb checks need them anyway
    full = (1 << n) - 1
    bottoms = [i for i in range(n) if up[i] == full]
    tops = [i for i in range(n) if down[i] == full]
    if not bottoms or not tops:
        # no global bound: exhibit a pair with no lub or no glb
        pair = _pair_without_bound(n, up, down)
        raise NotALattice("carrier is not a bounded lattice", witness=pair)
    up_index = {}
    down_index = {}
    for i in range(n):
        up_index[up[i]] = i
        down_index[down[i]] = i
    for i in range(n):
        for j in range(i + 1, n):
            if (up[i] & up[j]) not in up_index:
                raise NotALattice(f"pair ({i},{j}) has no join", witness=(i, j))
            if (down[i] & down[j]) not in down_index:
                raise NotALattice(f"pair ({i},{j}) has no meet", witness=(i, j))
    return FiniteLattice(up, down, bottoms[0], tops[0], labels)


def _pair_without_bound(n, up, down):
    for i in range(n):
        for j in range(i + 1, n):
            common_up = up[i] & up[j]
            if not any(up[k] == common_up for k in _bits(common_up)):
                return (i, j)
            common_down = down[i] & down[j]
            if not any(down[k] == common_down for k in _bits(common_down)):
                return (i, j)
    return None


def lattice_from_leq_pairs(n, pairs, labels=None) -> FiniteLattice:
    """Build from the set of pairs (i, j) with i <= j; closure is verified."""
    rel = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in pairs:
        rel[i][j] = 1
    return verify_lattice(rel, labels)


def lattice_from_order(elements, leq, labels=None) -> FiniteLattice:
    """Build from an explicit element list and a comparison callable."""
    n = len(elements)
    rel = [[1 if leq(elements[i], elements[j]) else 0 for j in range(n)]
           for i in range(n)]
    return verify_lattice(rel, labels if labels is not None else list(elements))


# -- standard builders --------------------------------------------------------


def chain(k: int) -> FiniteLattice:
    """Total order with k elements (length k-1)."""
    if k < 1:
        raise NotALattice("chain needs at least one element")
    return lattice_from_order(range(k), lambda a, b: a <= b)


def divisor_lattice(n: int) -> FiniteLattice:
    """Divisors of n under divisibility; labels are the divisor values."""
    if n < 1:
        raise NotALattice("divisor lattice needs n >= 1")
    divs = [d for d in range(1, n + 1) if n % d == 0]
    return lattice_from_order(divs, lambda a, b: b % a == 0)


def diamond_m3() -> FiniteLattice:
    """M3: bottom, three incomparable atoms, top (modular, not distributive)."""
    pairs = [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4), (0, 4)]
    return lattice_from_leq_pairs(5, pairs)


def pentagon_n5() -> FiniteLattice:
    """N5: the canonical non-modular lattice 0 < a < c < 1 with b aside."""
    pairs = [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4), (0, 4)]
    return lattice_from_leq_pairs(5, pairs)


def boolean_lattice(k: int) -> FiniteLattice:
    """Subsets of a k-set ordered by inclusion."""
    return lattice_from_order(
        range(1 << k), lambda a, b: a & b == a,
    )


def subspace_lattice(dim: int, q: int = 2) -> FiniteLattice:
    """All F_q-subspaces of F_q^dim (q prime); labels are vector frozensets.

    Vectors are encoded as base-q integers; subspaces as frozensets of them.
    """
    vectors = list(range(q ** dim))

    def add(u, v):
        w = 0
        mult = 1
        for _ in range(dim):
            w += ((u + v) % q) * mult
            u //= q
            v //= q
            mult *= q
        return w

    def scale(c, v):
        w = 0
        mult = 1
        for _ in range(dim):
            w += ((c * v) % q) * mult
            v //= q
            mult *= q
        return w

    def span(gens):
        space = {0}
        frontier = [0]
        while frontier:
            x = frontier.pop()
            for g in gens:
                for c in range(1, q):
                    y = add(x, scale(c, g))
                    if y not in space:
                        space.add(y)
                        frontier.append(y)
        return frozenset(space)

    subs = {frozenset({0})}
    frontier = [frozenset({0})]
    while frontier:
        s = frontier.pop()
        for v in vectors:
            if v not in s:
                t = span(list(s) + [v])
                if t not in subs:
                    subs.add(t)
                    frontier.append(t)
    ordered = sorted(subs, key=lambda s: (len(s), sorted(s)))
    return lattice_from_order(ordered, lambda a, b: a <= b)


def product(*factors, cap: int = DEFAULT_ELEMENT_CAP) -> FiniteLattice:
    """Componentwise-ordered product; labels are the coordinate tuples."""
    size = 1
    for f in factors:
        size *= f.n
    if size > cap:
        raise SizeLimitExceeded(f"product would have {size} > {cap} elements")
    tuples = list(itertools.product(*[range(f.n) for f in factors]))
    pos = {t: i for i, t in enumerate(tuples)}
    n = len(tuples)
    # per-coordinate masks of product elements whose i-th entry is >= / <= v
    up = [0] * n
    down = [0] * n
    coord_up = []
    coord_down = []
    for idx, f in enumerate(factors):
        cu = {}
        cd = {}
        for v in range(f.n):
            mu = 0
            md = 0
            for i, t in enumerate(tuples):
                if f.leq(v, t[idx]):
                    mu |= 1 << i
                if f.leq(t[idx], v):
                    md |= 1 << i
            cu[v] = mu
            cd[v] = md
        coord_up.append(cu)
        coord_down.append(cd)
    full = (1 << n) - 1
    for i, t in enumerate(tuples):
        mu = full
        md = full
        for idx in range(len(factors)):
            mu &= coord_up[idx][t[idx]]
            md &= coord_down[idx][t[idx]]
        up[i] = mu
        down[i] = md
    bottom = pos[tuple(f.bottom for f in factors)]
    top = pos[tuple(f.top for f in factors)]
    return FiniteLattice(up, down, bottom, top, labels=tuples)


# -- property reports ---------------------------------------------------------


def modularity_witness(L: FiniteLattice):
    """First triple (a, b, c) with a <= c violating the modular law, or None."""
    for a in L.elements():
        for c in _bits(L.up[a]):
            for b in L.elements():
                if L.join(a, L.meet(b, c)) != L.meet(L.join(a, b), c):
                    return (a, b, c)
    return None


def distributivity_witness(L: FiniteLattice):
    for a in L.elements():
        for b in L.elements():
            for c in L.elements():
                if L.join(a, L.meet(b, c)) != L.meet(L.join(a, b), L.join(a, c)):
                    return (a, b, c)
                if L.meet(a, L.join(b, c)) != L.join(L.meet(a, b), L.meet(a, c)):
                    return (a, b, c)
    return None


def pentagon_witness(L: FiniteLattice):
    """Search for an N5 sublattice: the order-theoretic modularity oracle.

    Returns (a, b, c) embedding a pentagon (a < c, both incomparable to b,
    same meets and joins with b), or None.  A finite lattice is modular iff
    no such sublattice exists.
    """
    for a in L.elements():
        for c in _bits(L.up[a]):
            if c == a:
                continue
            for b in L.elements():
                if L.leq(b, a) or L.leq(a, b) or L.leq(b, c) or L.leq(c, b):
                    continue
                if L.meet(a, b) == L.meet(c, b) and L.join(a, b) == L.join(c, b):
                    return (a, b, c)
    return None


def lattice_props(L) -> dict:
    """Modularity/distributivity by exhaustive triple check; compact elements.

    Dispatches to the symbolic implementation for ChainLattice carriers.
    Upper-continuity is automatic for finite lattices and structural for
    chains, so the report states it rather than testing it.
    """
    if hasattr(L, "chain_props"):
        return L.chain_props()
    mw = modularity_witness(L)
    dw = distributivity_witness(L)
    return {
        "modular": mw is None,
        "modular_witness": mw,
        "distributive": dw is None,
        "distributive_witness": dw,
        "compact_elements": list(L.elements()),
        "upper_continuous": "automatic (finite complete lattice)",
    }


def family_props(L: FiniteLattice, family) -> dict:
    """Join-independence and basis test for a family of nonzero elements."""
    family = list(family)
    for x in family:
        if x == L.bottom:
            raise ZeroMember("family contains the zero element", witness=(x,))
    independent = True
    witness = None
    for i, x in enumerate(family):
        rest = L.join_all(family[:i] + family[i + 1:])
        if L.meet(rest, x) != L.bottom:
            independent = False
            witness = (x, rest)
            break
    return {
        "join_independent": independent,
        "witness": witness,
        "basis": independent and L.join_all(family) == L.top,
    }


# -- length and composition series -------------------------------------------


def length(obj) -> int:
    """Composition length: longest-chain length; chains may report infinity."""
    if hasattr(obj, "chain_length"):
        return obj.chain_length()
    if isinstance(obj, Segment):
        return segment_length(obj.carrier, obj.a, obj.b)
    return obj.depths()[obj.top]


def segment_length(L: FiniteLattice, a, b) -> int:
    ids = L.interval(a, b)
    depth = {e: 0 for e in ids}
    for e in sorted(ids, key=lambda x: bin(L.down[x]).count("1")):
        for f in ids:
            if L.is_atom_segment(e, f):
                depth[f] = max(depth[f], depth[e] + 1)
    return depth[b]


def maximal_chain(L: FiniteLattice, a, b):
    """One longest chain from a to b, via covers inside [a, b]."""
    ids = L.interval(a, b)
    depth = {e: 0 for e in ids}
    parent = {a: None}
    for e in sorted(ids, key=lambda x: bin(L.down[x]).count("1")):
        for f in ids:
            if L.is_atom_segment(e, f) and depth[e] + 1 > depth[f]:
                depth[f] = depth[e] + 1
                parent[f] = e
    chain_rev = [b]
    while chain_rev[-1] != a:
        chain_rev.append(parent[chain_rev[-1]])
    return list(reversed(chain_rev))


def composition_refine(L: FiniteLattice, chain_elems) -> list:
    """Refine a weakly increasing 0-to-1 chain to a composition series.

    Every consecutive segment of the output is an atom; by Jordan-Holder the
    output length is independent of the refinement choices.
    """
    chain_elems = list(chain_elems)
    if not chain_elems or chain_elems[0] != L.bottom or chain_elems[-1] != L.top:
        raise NotAChain("chain must run from bottom to top")
    for x, y in zip(chain_elems, chain_elems[1:]):
        if not L.leq(x, y):
            raise NotAChain(f"{x} !<= {y}", witness=(x, y))
    out = [L.bottom]
    for x, y in zip(chain_elems, chain_elems[1:]):
        if x == y:
            continue
        piece = maximal_chain(L, x, y)
        out.extend(piece[1:])
    return out


def schreier_pair(L: FiniteLattice, chain1, chain2):
    """Equal-length refinements of two chains with matched projective factors.

    Between x_i <= x_{i+1} the first refinement inserts x_i v (x_{i+1} ^ y_j);
    dually for the second.  Matched factors share, by modularity, a common
    transpose interval, which `matched_factor_transposes` exhibits.
    """
    c1 = list(chain1)
    c2 = list(chain2)
    if c1[0] != c2[0] or c1[-1] != c2[-1]:
        raise NotAChain("chains must share endpoints")
    grid1 = []
    for i in range(len(c1) - 1):
        row = [L.join(c1[i], L.meet(c1[i + 1], y)) for y in c2]
        grid1.append(row)
    grid2 = []
    for j in range(len(c2) - 1):
        row = [L.join(c2[j], L.meet(c2[j + 1], x)) for x in c1]
        grid2.append(row)
    ref1 = [c1[0]] + [e for row in grid1 for e in row[1:]]
    ref2 = [c2[0]] + [e for row in grid2 for e in row[1:]]
    return ref1, ref2, (grid1, grid2)


def matched_factor_transposes(L: FiniteLattice, chain1, chain2):
    """Zassenhaus pairing: each matched factor pair transposes to a common
    interval [ (x'^y) v (y'^x), x'^y' ].  Returns the list of matched
    triples ((a1,b1), (a2,b2), (c,d)) for the nontrivial factors."""
    c1, c2 = list(chain1), list(chain2)
    out = []
    for i in range(len(c1) - 1):
        for j in range(len(c2) - 1):
            x, x1 = c1[i], c1[i + 1]
            y, y1 = c2[j], c2[j + 1]
            a1 = L.join(x, L.meet(x1, y))
            b1 = L.join(x, L.meet(x1, y1))
            a2 = L.join(y, L.meet(y1, x))
            b2 = L.join(y, L.meet(y1, x1))
            c = L.join(L.meet(x1, y), L.meet(y1, x))
            d = L.meet(x1, y1)
            out.append(((a1, b1), (a2, b2), (c, d)))
    return out


def is_transpose_pair(L: FiniteLattice, seg_low, seg_high) -> bool:
    """[a, b] and [c, d] are transposes when a = b^c... standard up-transpose:
    seg_high = [c, d] with c v b = d and c ^ b = a for seg_low = [a, b]."""
    (a, b), (c, d) = seg_low, seg_high
    return L.meet(b, c) == a and L.join(b, c) == d


# -- socle series and chain conditions ----------------------------------------


def socle_series(L) -> dict:
    """Socle, iterated relative socles, and the semi-Artinian verdict."""
    if hasattr(L, "chain_socle_series"):
        return L.chain_socle_series()
    s = L.join_all(L.covers()[L.bottom])
    series = [s]
    while series[-1] != L.top:
        cur = series[-1]
        covers_of_cur = [y for y in L.elements() if L.is_atom_segment(cur, y)]
        nxt = L.join_all([cur] + covers_of_cur)
        if nxt == cur:
            break
        series.append(nxt)
    return {
        "socle": s,
        "series": series,
        "semi_artinian": series[-1] == L.top or L.bottom == L.top,
    }


def chain_conditions(L) -> dict:
    """Noetherian/Artinian verdicts, cross-checked against compactness and
    the finite-length criterion (semi-Artinian and Noetherian)."""
    if hasattr(L, "chain_chain_conditions"):
        return L.chain_chain_conditions()
    report = {"noetherian": True, "artinian": True}
    props = lattice_props(L)
    compact_ok = set(props["compact_elements"]) == set(L.elements())
    semi = socle_series(L)["semi_artinian"]
    finite_len = length(L) < float("inf")
    report["cross_check_compact"] = compact_ok == report["noetherian"]
    report["cross_check_finite_length"] = (semi and report["noetherian"]) == finite_len
    return report
