"""Finite groups as verified multiplication tables."""

from __future__ import annotations

import itertools

from ..errors import QframeError


class FiniteGroup:
    """Elements 0..n-1 with a multiplication table; axioms are verified
    exhaustively at construction."""

    __slots__ = ("n", "mul", "e", "inv", "names")

    def __init__(self, mul, names=None):
        self.mul = tuple(tuple(row) for row in mul)
        self.n = len(self.mul)
        identity = None
        for c in range(self.n):
            if all(self.mul[c][x] == x == self.mul[x][c] for x in range(self.n)):
                identity = c
                break
        if identity is None:
            raise QframeError("no identity element")
        self.e = identity
        inv = [None] * self.n
        for x in range(self.n):
            for y in range(self.n):
                if self.mul[x][y] == self.e and self.mul[y][x] == self.e:
                    inv[x] = y
                    break
            if inv[x] is None:
                raise QframeError(f"element {x} has no inverse")
        self.inv = tuple(inv)
        for a, b, c in itertools.product(range(self.n), repeat=3):
            if self.mul[self.mul[a][b]][c] != self.mul[a][self.mul[b][c]]:
                raise QframeError("multiplication is not associative",
                                  witness=(a, b, c))
        self.names = tuple(names) if names else tuple(f"g{i}" for i in range(self.n))

    def op(self, a, b):
        return self.mul[a][b]

    def inverse(self, a):
        return self.inv[a]

    def elements(self):
        return range(self.n)

    def name(self, x):
        return self.names[x]

    def index_of(self, name):
        return self.names.index(name)

    def __repr__(self):
        return f"FiniteGroup({self.n})"

    # -- builders -----------------------------------------------------------

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        names = ["e"] + [f"t^{k}" if k > 1 else "t" for k in range(1, n)]
        return cls([[(i + j) % n for j in range(n)] for i in range(n)], names)

    @classmethod
    def direct_product(cls, G: "FiniteGroup", H: "FiniteGroup") -> "FiniteGroup":
        pairs = list(itertools.product(range(G.n), range(H.n)))
        pos = {p: i for i, p in enumerate(pairs)}
        mul = [[pos[(G.op(a, c), H.op(b, d))] for (c, d) in pairs]
               for (a, b) in pairs]
        names = [f"({G.name(a)},{H.name(b)})" for (a, b) in pairs]
        return cls(mul, names)

    @classmethod
    def klein_four(cls) -> "FiniteGroup":
        return cls.direct_product(cls.cyclic(2), cls.cyclic(2))

    # -- subset helpers -----------------------------------------------------

    def symmetric_closure(self, subset) -> frozenset:
        """Smallest symmetric subset containing the input and the identity."""
        out = set(subset) | {self.e}
        out |= {self.inv[x] for x in out}
        return frozenset(out)

    def set_product(self, A, B) -> frozenset:
        return frozenset(self.op(a, b) for a in A for b in B)

    def symmetric_subsets(self, containing=()):
        """All symmetric subsets containing `containing` and the identity,
        ordered by size (inverse-orbit powerset)."""
        base = self.symmetric_closure(containing)
        orbits = []
        seen = set(base)
        for x in self.elements():
            if x in seen:
                continue
            orb = frozenset({x, self.inv[x]})
            orbits.append(orb)
            seen |= orb
        out = []
        for r in range(len(orbits) + 1):
            for combo in itertools.combinations(orbits, r):
                s = set(base)
                for orb in combo:
                    s |= orb
                out.append(frozenset(s))
        return sorted(out, key=lambda s: (len(s), sorted(s)))
