"""Finite modules, their homomorphisms, submodule lattices, G-actions.

A module is additively a product of Z/d components (element ids are
mixed-radix integers); the scalar action is a memoized table.  Submodules
are frozensets of element ids, enumerated by closing cyclic submodules
under joins; the submodule lattice is handed to the lattice layer with the
sets as labels.
"""

from __future__ import annotations

import itertools
import random

from ..errors import NotEquivariant, QframeError, SizeLimitExceeded
from ..lattice import lattice_from_order
from ..maps import QframeHom, verify_hom


class FiniteModule:
    """Right module over a finite ring; `act(x, s)` is x * s."""

    __slots__ = ("ring", "dims", "n", "name", "_act", "_act_table")

    def __init__(self, ring, dims, act, name="module", verify=True,
                 sample_cap: int = 60_000, rng=None):
        self.ring = ring
        self.dims = tuple(dims)
        n = 1
        for d in self.dims:
            n *= d
        self.n = n
        self.name = name
        self._act = act
        self._act_table = {}
        if verify:
            self.verify_axioms(sample_cap=sample_cap, rng=rng)

    # -- additive structure ---------------------------------------------------

    def decode(self, x):
        out = []
        for d in self.dims:
            out.append(x % d)
            x //= d
        return tuple(out)

    def encode(self, coords):
        x = 0
        mult = 1
        for c, d in zip(coords, self.dims):
            x += (c % d) * mult
            mult *= d
        return x

    @property
    def zero(self):
        return 0

    def add(self, x, y):
        return self.encode([a + b for a, b in zip(self.decode(x), self.decode(y))])

    def neg(self, x):
        return self.encode([-a for a in self.decode(x)])

    def scalar(self, x, s):
        key = (x, s)
        if key not in self._act_table:
            self._act_table[key] = self._act(x, s)
        return self._act_table[key]

    def elements(self):
        return range(self.n)

    def additive_generators(self):
        """One generator per coordinate: the unit vectors."""
        gens = []
        mult = 1
        for d in self.dims:
            gens.append(mult)
            mult *= d
        return gens

    def verify_axioms(self, sample_cap: int = 60_000, rng=None):
        ring = self.ring
        rng = rng or random.Random(2)
        for x in self.elements():
            if self.scalar(x, ring.one) != x:
                raise QframeError("unit law fails", witness=(x,))
        if self.n * ring.n * ring.n <= sample_cap:
            triples = itertools.product(self.elements(), ring.elements(),
                                        ring.elements())
        else:
            triples = ((rng.randrange(self.n), rng.randrange(ring.n),
                        rng.randrange(ring.n)) for _ in range(sample_cap))
        for x, s, t in triples:
            if self.scalar(self.scalar(x, s), t) != self.scalar(x, ring.mul(s, t)):
                raise QframeError("associativity of the action fails",
                                  witness=(x, s, t))
            if self.scalar(x, ring.add(s, t)) != self.add(
                    self.scalar(x, s), self.scalar(x, t)):
                raise QframeError("distributivity over ring addition fails",
                                  witness=(x, s, t))
        if self.n * self.n * ring.n <= sample_cap:
            addtriples = itertools.product(self.elements(), self.elements(),
                                           ring.elements())
        else:
            addtriples = ((rng.randrange(self.n), rng.randrange(self.n),
                           rng.randrange(ring.n)) for _ in range(sample_cap))
        for x, y, s in addtriples:
            if self.scalar(self.add(x, y), s) != self.add(
                    self.scalar(x, s), self.scalar(y, s)):
                raise QframeError("additivity of the action fails",
                                  witness=(x, y, s))
        return True

    def __repr__(self):
        return f"FiniteModule({self.name}, |M|={self.n})"


def ring_as_module(ring) -> FiniteModule:
    """The ring as a right module over itself (right multiplication)."""
    return FiniteModule(ring, ring.add_dims, ring.mul,
                        name=f"{ring.name} (right regular)", verify=False)


def restrict_to_base_ring(M: FiniteModule, crossed) -> FiniteModule:
    """View a right R*G-module as an R-module via r -> r e-bar."""
    base = crossed.base

    def act(x, r):
        return M.scalar(x, crossed.embed_base(r))

    return FiniteModule(base, M.dims, act, name=f"{M.name} over {base.name}",
                        verify=False)


def module_length(M: FiniteModule) -> int:
    """Composition length over the base ring: log_simple |M|.

    Valid for the supported homogeneous backends (fields: all composition
    factors are F_q; Z/p^k: all factors are Z/p)."""
    s = getattr(M.ring, "simple_size", None)
    if not s:
        raise QframeError(f"no composition-length rule for ring {M.ring.name}")
    return _int_log(M.n, s)


def submodule_length(M: FiniteModule, subset) -> int:
    s = getattr(M.ring, "simple_size", None)
    if not s:
        raise QframeError(f"no composition-length rule for ring {M.ring.name}")
    return _int_log(len(subset), s)


def _int_log(n, base) -> int:
    k = 0
    while n > 1:
        if n % base:
            raise QframeError(f"{n} is not a power of {base}")
        n //= base
        k += 1
    return k


# -- spans and submodule enumeration -------------------------------------------


def span(M: FiniteModule, gens) -> frozenset:
    """Smallest submodule containing `gens`: closure under addition and the
    full scalar action."""
    out = {M.zero}
    frontier = list(set(gens) - out)
    out |= set(frontier)
    while frontier:
        x = frontier.pop()
        for s in M.ring.elements():
            y = M.scalar(x, s)
            if y not in out:
                out.add(y)
                frontier.append(y)
        for y in list(out):
            z = M.add(x, y)
            if z not in out:
                out.add(z)
                frontier.append(z)
    return frozenset(out)


def all_submodules(M: FiniteModule, cap: int = 20_000):
    """Every submodule, as frozensets, by closing cyclic spans under joins."""
    cyclic = {span(M, [x]) for x in M.elements()}
    subs = set(cyclic) | {frozenset({M.zero})}
    worklist = list(subs)
    while worklist:
        S = worklist.pop()
        for C in cyclic:
            if C <= S:
                continue
            T = span_join(M, S, C)
            if T not in subs:
                subs.add(T)
                if len(subs) > cap:
                    raise SizeLimitExceeded(
                        f"more than {cap} submodules in {M.name}")
                worklist.append(T)
    return sorted(subs, key=lambda s: (len(s), sorted(s)))


def span_join(M: FiniteModule, S, T) -> frozenset:
    """Join of two submodules: the sumset (already action-closed)."""
    out = set()
    for x in S:
        for y in T:
            out.add(M.add(x, y))
    return frozenset(out)


# -- module homomorphisms --------------------------------------------------------


class ModuleHom:
    """A map between finite modules, stored as a full element table."""

    __slots__ = ("source", "target", "table", "name")

    def __init__(self, source: FiniteModule, target: FiniteModule, table,
                 name="phi", verify=True):
        self.source = source
        self.target = target
        self.table = tuple(table)
        self.name = name
        if verify:
            self.verify_linear()

    @classmethod
    def from_function(cls, source, target, fn, name="phi", verify=True):
        return cls(source, target, [fn(x) for x in source.elements()],
                   name=name, verify=verify)

    @classmethod
    def left_multiplication(cls, module: FiniteModule, ring, a, verify=True):
        """x -> a*x on the ring viewed as a right module over itself."""
        return cls(module, module,
                   [ring.mul(a, x) for x in module.elements()],
                   name=f"mult-by-{a}", verify=verify)

    def __call__(self, x):
        return self.table[x]

    def verify_linear(self):
        M, N = self.source, self.target
        for x in M.elements():
            for y in M.elements():
                if self.table[M.add(x, y)] != N.add(self.table[x], self.table[y]):
                    raise QframeError(f"{self.name} is not additive",
                                      witness=(x, y))
        for x in M.elements():
            for s in M.ring.elements():
                if self.table[M.scalar(x, s)] != N.scalar(self.table[x], s):
                    raise QframeError(f"{self.name} is not linear",
                                      witness=(x, s))
        return True

    def is_injective(self) -> bool:
        return len(set(self.table)) == self.source.n

    def is_surjective(self) -> bool:
        return len(set(self.table)) == self.target.n

    def kernel_set(self) -> frozenset:
        z = self.target.zero
        return frozenset(x for x in self.source.elements() if self.table[x] == z)

    def image_set(self) -> frozenset:
        return frozenset(self.table)

    def compose(self, other: "ModuleHom") -> "ModuleHom":
        return ModuleHom(other.source, self.target,
                         [self.table[other.table[x]]
                          for x in other.source.elements()],
                         name=f"{self.name}o{other.name}", verify=False)


# -- the submodule-lattice model --------------------------------------------------


def submodule_lattice(M: FiniteModule, cap: int = 20_000):
    """The lattice of submodules ordered by inclusion, sets as labels."""
    subs = all_submodules(M, cap=cap)
    lattice = lattice_from_order(subs, lambda a, b: a <= b)
    index = {s: i for i, s in enumerate(subs)}
    return lattice, subs, index


def lattice_model(M: FiniteModule, crossed, cap: int = 20_000) -> dict:
    """L_R(M) with its right G-action rho_g(K) = K g-bar and the lift of
    module endomorphisms to qframe homs.

    Verifies: each rho_g is a lattice automorphism, rho is a group
    anti-homomorphism, and lifted endomorphisms are equivariant homs.
    """
    G = crossed.group
    MR = restrict_to_base_ring(M, crossed)
    lattice, subs, index = submodule_lattice(MR, cap=cap)
    rho = {}
    for g in G.elements():
        gbar = crossed.basis_element(crossed.base.one, g)
        table = []
        for S in subs:
            Sg = frozenset(M.scalar(x, gbar) for x in S)
            table.append(index[Sg])
        hom = verify_hom(lattice, lattice, table)
        if not (hom.is_injective() and hom.is_surjective()):
            raise QframeError(f"rho_{G.name(g)} is not an automorphism")
        rho[g] = hom
    for g in G.elements():
        for h in G.elements():
            composed = tuple(rho[g].table[rho[h].table[s]]
                             for s in range(lattice.n))
            if composed != rho[G.op(h, g)].table:
                raise NotEquivariant(
                    "rho is not a group anti-homomorphism", witness=(g, h))

    def lift(phi: ModuleHom) -> QframeHom:
        table = []
        for S in subs:
            img = frozenset(phi(x) for x in S)
            table.append(index[img])
        return verify_hom(lattice, lattice, table)

    return {
        "lattice": lattice,
        "submodules": subs,
        "index": index,
        "rho": rho,
        "lift": lift,
        "module": M,
        "module_over_base": MR,
    }


def lattice_hom_from_module_hom(phi: ModuleHom, cap: int = 20_000) -> dict:
    """The induced hom Phi(K) = phi(K) on submodule lattices, with the
    surjective/algebraic/injectivity contract checked.

    For surjective phi: Phi is surjective and algebraic, and Phi is
    injective iff phi is; all four implications are asserted.
    """
    from ..maps import kernel_and_algebraicity

    src_lat, src_subs, src_index = submodule_lattice(phi.source, cap=cap)
    if phi.source is phi.target:
        tgt_lat, tgt_subs, tgt_index = src_lat, src_subs, src_index
    else:
        tgt_lat, tgt_subs, tgt_index = submodule_lattice(phi.target, cap=cap)
    table = []
    for S in src_subs:
        img = frozenset(phi(x) for x in S)
        table.append(tgt_index[img])
    Phi = verify_hom(src_lat, tgt_lat, table)
    info = kernel_and_algebraicity(Phi)
    report = {
        "Phi": Phi,
        "lattice_source": src_lat,
        "lattice_target": tgt_lat,
        "kernel": info["kernel"],
        "algebraic": info["algebraic"],
    }
    if phi.is_surjective():
        assert Phi.is_surjective(), "Phi must be surjective for surjective phi"
        assert info["algebraic"], "Phi must be algebraic for surjective phi"
        assert Phi.is_injective() == phi.is_injective(), (
            "Phi-injectivity must match phi-injectivity for surjective phi")
    report["phi_injective"] = phi.is_injective()
    report["phi_surjective"] = phi.is_surjective()
    report["Phi_injective"] = Phi.is_injective()
    report["Phi_surjective"] = Phi.is_surjective()
    return report
