"""Homomorphisms of qframes, kernels, algebraicity, congruences, quotients.

A homomorphism preserves all joins (for a finite source: binary joins plus
the empty join 0 -> 0) and maps segments onto segments.  Congruences are
given as explicit partitions; a closure helper turns a seed relation into
the congruence it generates.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    NotCongruence,
    NotJoinPreserving,
    NotSegmentPreserving,
    NotStrongCongruence,
    ZeroNotPreserved,
)
from .lattice import FiniteLattice, verify_lattice


@dataclass(frozen=True)
class QframeHom:
    """A verified join-and-segment-preserving map between finite lattices."""

    source: FiniteLattice
    target: FiniteLattice
    table: tuple

    def __call__(self, x):
        return self.table[x]

    def image_elements(self):
        return sorted(set(self.table))

    def is_injective(self) -> bool:
        return len(set(self.table)) == self.source.n

    def is_surjective(self) -> bool:
        return len(set(self.table)) == self.target.n

    def compose(self, other: "QframeHom") -> "QframeHom":
        """self after other (other's target must be self's source)."""
        if other.target is not self.source and other.target.up != self.source.up:
            raise NotJoinPreserving("composition carriers do not match")
        return QframeHom(
            other.source, self.target,
            tuple(self.table[other.table[x]] for x in range(other.source.n)),
        )

    @staticmethod
    def identity(L: FiniteLattice) -> "QframeHom":
        return QframeHom(L, L, tuple(range(L.n)))


def verify_hom(source: FiniteLattice, target: FiniteLattice, table) -> QframeHom:
    """Validate a candidate element map as a qframe homomorphism.

    For finite sources, commuting with arbitrary joins reduces to binary
    joins plus the empty join; segment preservation is checked on every
    ordered pair.  Raises with a witness naming the violated clause.
    """
    table = tuple(table)
    if len(table) != source.n:
        raise NotJoinPreserving("map table has the wrong size")
    if table[source.bottom] != target.bottom:
        raise ZeroNotPreserved(
            f"0 maps to {table[source.bottom]}", witness=(source.bottom,)
        )
    for x in source.elements():
        for y in range(x + 1, source.n):
            lhs = table[source.join(x, y)]
            rhs = target.join(table[x], table[y])
            if lhs != rhs:
                raise NotJoinPreserving(
                    f"phi({x} v {y}) = {lhs} != {rhs}", witness=(x, y)
                )
    for a in source.elements():
        for b in source.elements():
            if not source.leq(a, b):
                continue
            image = {table[s] for s in source.interval(a, b)}
            segment = set(target.interval(table[a], table[b]))
            if image != segment:
                missing = sorted(segment - image)
                raise NotSegmentPreserving(
                    f"phi([{a},{b}]) misses {missing}",
                    witness=(a, b, missing[0] if missing else None),
                )
    return QframeHom(source, target, table)


def kernel_and_algebraicity(phi: QframeHom) -> dict:
    """Kernel (join of everything sent to 0) and the algebraicity verdict.

    phi is algebraic when it is injective on [ker, 1]; an algebraic hom is
    injective iff its kernel is 0, which is reported as a cross-check.
    """
    src, tgt = phi.source, phi.target
    ker = src.join_all(x for x in src.elements() if phi(x) == tgt.bottom)
    upper = src.interval(ker, src.top)
    images = [phi(x) for x in upper]
    algebraic = len(set(images)) == len(upper)
    return {
        "kernel": ker,
        "algebraic": algebraic,
        "injective": phi.is_injective(),
        "injectivity_criterion": phi.is_injective()
        == (algebraic and ker == src.bottom),
    }


@dataclass(frozen=True)
class Congruence:
    """A partition of a finite lattice verified against (Cong.1-4)."""

    carrier: FiniteLattice
    classes: tuple  # tuple of frozensets
    class_of: tuple = field(default=None)
    maxima: tuple = field(default=None)

    def __post_init__(self):
        class_of = [None] * self.carrier.n
        for ci, cls in enumerate(self.classes):
            for x in cls:
                class_of[x] = ci
        object.__setattr__(self, "class_of", tuple(class_of))


def verify_congruence(L: FiniteLattice, classes, strong: bool = True) -> Congruence:
    """Check a partition against (Cong.1-3) and, if `strong`, (Cong.4)."""
    classes = tuple(frozenset(c) for c in classes)
    seen = set()
    for cls in classes:
        if not cls:
            raise NotCongruence("empty class")
        if seen & cls:
            raise NotCongruence("classes overlap", witness=tuple(seen & cls))
        seen |= cls
    if seen != set(L.elements()):
        raise NotCongruence("classes do not cover the carrier",
                            witness=tuple(set(L.elements()) - seen))
    cong = Congruence(L, classes)
    cls_of = cong.class_of
    # a ~ rep and b ~ rep imply the binary clauses for (a, b) by transitivity,
    # so checking every element against its class representative suffices
    for cls in classes:
        rep = min(cls)
        for a in cls:
            if a == rep:
                continue
            for c in L.elements():
                if cls_of[L.join(a, c)] != cls_of[L.join(rep, c)]:
                    raise NotCongruence(
                        f"(Cong.2) fails: {a}~{rep} but join with {c} splits",
                        witness=(a, rep, c),
                    )
                if cls_of[L.meet(a, c)] != cls_of[L.meet(rep, c)]:
                    raise NotCongruence(
                        f"(Cong.3) fails: {a}~{rep} but meet with {c} splits",
                        witness=(a, rep, c),
                    )
    maxima = []
    for cls in classes:
        m = L.join_all(cls)
        if strong and m not in cls:
            raise NotStrongCongruence(
                f"class {sorted(cls)} has no maximum", witness=tuple(sorted(cls))
            )
        maxima.append(m if m in cls else None)
    object.__setattr__(cong, "maxima", tuple(maxima))
    return cong


def congruence_closure(L: FiniteLattice, seed_pairs):
    """Smallest partition containing the seeds and closed under (Cong.2-3).

    Fixpoint iteration over a union-find; explicit partitions keep the
    verification exact instead of trusting the closure.
    """
    parent = list(range(L.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx == ry:
            return False
        parent[max(rx, ry)] = min(rx, ry)
        return True

    for a, b in seed_pairs:
        union(a, b)
    changed = True
    while changed:
        changed = False
        groups = {}
        for x in L.elements():
            groups.setdefault(find(x), []).append(x)
        for members in list(groups.values()):
            rep = members[0]
            for a in members[1:]:
                for c in L.elements():
                    if union(L.join(a, c), L.join(rep, c)):
                        changed = True
                    if union(L.meet(a, c), L.meet(rep, c)):
                        changed = True
    groups = {}
    for x in L.elements():
        groups.setdefault(find(x), []).append(x)
    return [frozenset(v) for v in groups.values()]


def quotient_by_congruence(L: FiniteLattice, cong: Congruence) -> dict:
    """The quotient qframe of a strong congruence, with its projection.

    Class order is computed through class maxima ([a] <= [b] iff a <= max[b])
    and cross-checked against the definitional order; the projection is
    re-verified as a surjective hom and the class-wise join/meet identities
    are asserted.
    """
    if cong.maxima is None or any(m is None for m in cong.maxima):
        raise NotStrongCongruence("congruence was not verified strong")
    k = len(cong.classes)
    order = [[0] * k for _ in range(k)]
    for i, cls_i in enumerate(cong.classes):
        for j in range(k):
            via_max = any(L.leq(a, cong.maxima[j]) for a in cls_i)
            definitional = any(
                L.leq(a, b) for a in cls_i for b in cong.classes[j]
            )
            if via_max != definitional:
                raise NotCongruence(
                    "class-maximum order disagrees with definitional order",
                    witness=(i, j),
                )
            order[i][j] = 1 if via_max else 0
    quotient = verify_lattice(order)
    projection = verify_hom(L, quotient, tuple(cong.class_of))
    for x in L.elements():
        for y in L.elements():
            jx = cong.class_of[L.join(x, y)]
            if quotient.join(cong.class_of[x], cong.class_of[y]) != jx:
                raise NotCongruence("[x] v [y] != [x v y]", witness=(x, y))
            mx = cong.class_of[L.meet(x, y)]
            if quotient.meet(cong.class_of[x], cong.class_of[y]) != mx:
                raise NotCongruence("[x] ^ [y] != [x ^ y]", witness=(x, y))
    return {"quotient": quotient, "projection": projection, "congruence": cong}


def module_hom_lift(phi):
    """Lift a finite-module homomorphism to its submodule-lattice hom.

    Thin re-export; the construction lives with the module machinery.
    """
    from .algebra.modules import lattice_hom_from_module_hom

    return lattice_hom_from_module_hom(phi)
