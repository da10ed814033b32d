"""(K, eps)-quasi-actions on finite sets, with exact rational bookkeeping.

A quasi-action is a partial map from a group into the permutations of a
finite set V, almost multiplicative and almost free on a window K under the
normalized Hamming distance.  Everything here is exact: distances and
thresholds are fractions, never floats.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BoxTooSmall,
    DomainIncomplete,
    DomainMismatch,
    EpsilonTooLarge,
    QframeError,
    QuotientNotInjectiveOnK,
)


class ZGroup:
    """The integers, as a group context for quasi-actions."""

    e = 0
    name = "Z"

    def op(self, a, b):
        return a + b

    def inverse(self, a):
        return -a


class Z2Group:
    """Z^2 with componentwise addition."""

    e = (0, 0)
    name = "Z^2"

    def op(self, a, b):
        return (a[0] + b[0], a[1] + b[1])

    def inverse(self, a):
        return (-a[0], -a[1])


class TableGroupContext:
    """Adapter exposing a FiniteGroup through the context protocol."""

    def __init__(self, group):
        self.group = group
        self.e = group.e
        self.name = f"finite({group.n})"

    def op(self, a, b):
        return self.group.op(a, b)

    def inverse(self, a):
        return self.group.inverse(a)


def hamming(s1, s2) -> Fraction:
    """Normalized Hamming distance between two permutations of the same V."""
    if len(s1) != len(s2):
        raise DomainMismatch("permutations act on different sets")
    diff = sum(1 for a, b in zip(s1, s2) if a != b)
    return Fraction(diff, len(s1))


def compose(s1, s2):
    """(s1 s2)(v) = s1(s2(v))."""
    return tuple(s1[s2[v]] for v in range(len(s2)))


@dataclass
class QuasiAction:
    """Partial map group -> Sym(V) with the identity pinned at e."""

    context: object
    V: int
    perms: dict

    def __post_init__(self):
        for g, p in self.perms.items():
            if sorted(p) != list(range(self.V)):
                raise QframeError(f"phi({g}) is not a permutation of V")
        e = self.context.e
        if e not in self.perms:
            raise DomainIncomplete("identity missing from the domain")
        if tuple(self.perms[e]) != tuple(range(self.V)):
            raise QframeError("phi(e) is not the identity")

    def perm(self, g):
        if g not in self.perms:
            raise DomainIncomplete(f"{g} not in the quasi-action domain",
                                   witness=(g,))
        return self.perms[g]

    def act(self, g, v):
        return self.perm(g)[v]

    def orbit(self, subset, v):
        return frozenset(self.act(g, v) for g in subset)


@dataclass
class SoficCertificate:
    K: tuple
    eps: Fraction
    eps_mult: Fraction
    eps_free: Fraction
    mult_ok: bool
    free_ok: bool
    valid: bool
    worst_mult: tuple = None
    worst_free: tuple = None


def verify_quasi_action(qa: QuasiAction, K, eps) -> SoficCertificate:
    """Exact measured deviations of (QA.2) and (QA.3) on the window K."""
    eps = Fraction(eps)
    K = sorted(set(K), key=repr)
    ctx = qa.context
    eps_mult = Fraction(0)
    worst_mult = None
    for k1, k2 in itertools.product(K, repeat=2):
        product = ctx.op(k1, k2)
        d = hamming(qa.perm(product), compose(qa.perm(k1), qa.perm(k2)))
        if d > eps_mult:
            eps_mult = d
            worst_mult = (k1, k2)
    eps_free = Fraction(0)
    worst_free = None
    for k1, k2 in itertools.combinations(K, 2):
        d = Fraction(1) - hamming(qa.perm(k1), qa.perm(k2))
        if d > eps_free:
            eps_free = d
            worst_free = (k1, k2)
    return SoficCertificate(
        K=tuple(K), eps=eps, eps_mult=eps_mult, eps_free=eps_free,
        mult_ok=eps_mult <= eps, free_ok=eps_free <= eps,
        valid=eps_mult <= eps and eps_free <= eps,
        worst_mult=worst_mult, worst_free=worst_free,
    )


# -- builders -----------------------------------------------------------------


def exact_action(group) -> QuasiAction:
    """The genuine left translation action of a finite group on itself."""
    ctx = TableGroupContext(group)
    perms = {g: tuple(group.op(g, v) for v in range(group.n))
             for g in group.elements()}
    return QuasiAction(ctx, group.n, perms)


def finite_quotient_action(modulus, K, domain=None, planar=False) -> QuasiAction:
    """Z -> Z/m (or Z^2 -> (Z/m)^2 when planar): exact quasi-action with
    eps = 0, provided the quotient is injective on K."""
    if planar:
        ctx = Z2Group()
        m = modulus
        V = m * m

        def reduce_elem(g):
            return (g[0] % m, g[1] % m)

        def perm_of(g):
            out = []
            for v in range(V):
                x, y = v % m, v // m
                out.append(((x + g[0]) % m) + m * ((y + g[1]) % m))
            return tuple(out)
    else:
        ctx = ZGroup()
        m = modulus
        V = m

        def reduce_elem(g):
            return g % m

        def perm_of(g):
            return tuple((v + g) % m for v in range(V))

    K = list(K)
    seen = {}
    for k in K:
        r = reduce_elem(k)
        if r in seen and seen[r] != k:
            raise QuotientNotInjectiveOnK(
                f"{k} and {seen[r]} collide modulo {modulus}", witness=(k, seen[r]))
        seen[r] = k
    if domain is None:
        domain = window_closure(ctx, K, 2)
    perms = {g: perm_of(g) for g in domain}
    perms.setdefault(ctx.e, tuple(range(V)))
    return QuasiAction(ctx, V, perms)


def folner_box_action(length, K, domain=None, planar=False,
                      completion: str = "cyclic") -> QuasiAction:
    """Shift action on a box {0..L-1} (or its square).

    Out-of-box points are completed to a permutation either cyclically
    (`cyclic`: wrap modulo the box, which reproduces the exact quotient) or
    by filling the vacated slots in reverse order (`reversed_fill`: genuine
    boundary defects, deviations of order |boundary| / |V|).
    """
    if length < 2:
        raise BoxTooSmall("box needs at least 2 points", witness=(length,))
    if completion not in ("cyclic", "reversed_fill"):
        raise QframeError(f"unknown completion {completion!r}")
    if planar:
        ctx = Z2Group()
        L = length
        V = L * L

        def perm_of(g):
            if completion == "cyclic":
                return tuple(((v % L + g[0]) % L) + L * ((v // L + g[1]) % L)
                             for v in range(V))
            dest = [None] * V
            leftovers = []
            for v in range(V):
                x, y = v % L, v // L
                nx, ny = x + g[0], y + g[1]
                if 0 <= nx < L and 0 <= ny < L:
                    dest[v] = nx + L * ny
                else:
                    leftovers.append(v)
            taken = set(d for d in dest if d is not None)
            vacancies = [v for v in range(V) if v not in taken]
            for src, tgt in zip(leftovers, reversed(vacancies)):
                dest[src] = tgt
            return tuple(dest)
    else:
        ctx = ZGroup()
        L = length
        V = L

        def perm_of(g):
            if completion == "cyclic":
                return tuple((v + g) % L for v in range(V))
            dest = [None] * V
            leftovers = []
            for v in range(V):
                nv = v + g
                if 0 <= nv < L:
                    dest[v] = nv
                else:
                    leftovers.append(v)
            taken = set(d for d in dest if d is not None)
            vacancies = [v for v in range(V) if v not in taken]
            for src, tgt in zip(leftovers, reversed(vacancies)):
                dest[src] = tgt
            return tuple(dest)

    K = list(K)
    if domain is None:
        domain = window_closure(ctx, K, 2)
    perms = {g: perm_of(g) for g in domain}
    perms.setdefault(ctx.e, tuple(range(V)))
    return QuasiAction(ctx, V, perms)


def build_quasi_action(kind: str, **params) -> QuasiAction:
    if kind == "finite_quotient":
        return finite_quotient_action(**params)
    if kind == "folner_box":
        return folner_box_action(**params)
    raise QframeError(f"unknown quasi-action kind {kind!r}")


def window_closure(ctx, K, doublings: int) -> frozenset:
    """K closed under inverses and `doublings` rounds of set product with
    itself (enough domain for the (H, eps) certificate with H = KK)."""
    out = set(K) | {ctx.e}
    out |= {ctx.inverse(k) for k in out}
    for _ in range(doublings):
        out = {ctx.op(a, b) for a in out for b in out}
    return frozenset(out)


# -- the good-point analysis ----------------------------------------------------


def good_points(qa: QuasiAction, K, n: int, eps=None) -> dict:
    """The set of points where H = KK acts freely and associatively, plus a
    greedily grown family of pairwise K-disjoint orbit centers.

    Asserts |Vbar| >= (1 - 1/n)|V| and |W| >= |V| / (2|H|) and that HW
    covers Vbar; all arithmetic is exact.
    """
    ctx = qa.context
    K = sorted(set(K), key=repr)
    H = sorted({ctx.op(a, b) for a in K for b in K}, key=repr)
    bound = Fraction(1, 2 * n * len(H) ** 2)
    cert = verify_quasi_action(qa, H, bound)
    measured = max(cert.eps_mult, cert.eps_free)
    eps = measured if eps is None else Fraction(eps)
    if eps < measured:
        raise EpsilonTooLarge(
            f"claimed eps {eps} below the measured deviation {measured}")
    if not eps < bound:
        raise EpsilonTooLarge(
            f"need eps < 1/(2 n |H|^2) = {bound}, measured/claimed {eps}")
    V = qa.V
    vbar = []
    for v in range(V):
        ok = True
        for h1 in H:
            if not ok:
                break
            p1 = qa.act(h1, v)
            for h2 in H:
                if h1 != h2 and qa.act(h2, v) == p1:
                    ok = False
                    break
        if ok:
            for h1 in H:
                if not ok:
                    break
                for h2 in H:
                    if qa.act(ctx.op(h1, h2), v) != qa.act(h1, qa.act(h2, v)):
                        ok = False
                        break
        if ok:
            vbar.append(v)
    vbar_set = frozenset(vbar)
    lower_vbar = (1 - Fraction(1, n)) * V
    assert len(vbar) >= lower_vbar, (
        f"|Vbar| = {len(vbar)} < (1 - 1/n)|V| = {lower_vbar}")
    # greedy maximal family with pairwise disjoint K-orbits,
    # lowest-index-first tie-break (recorded for reproducibility)
    W = []
    covered = set()
    orbits = {}
    for v in vbar:
        orb = qa.orbit(K, v)
        if orb & covered:
            continue
        W.append(v)
        covered |= orb
        orbits[v] = orb
    lower_w = Fraction(V, 2 * len(H))
    assert len(W) >= lower_w, f"|W| = {len(W)} < |V|/(2|H|) = {lower_w}"
    hw = set()
    for w in W:
        hw |= qa.orbit(H, w)
    assert vbar_set <= hw, "HW does not cover Vbar"
    return {
        "Vbar": vbar_set,
        "W": tuple(W),
        "H": tuple(H),
        "K": tuple(K),
        "bounds": {
            "V": V,
            "vbar_size": len(vbar),
            "vbar_lower": lower_vbar,
            "w_size": len(W),
            "w_lower": lower_w,
            "eps": eps,
            "eps_bound": bound,
            "eps_mult": cert.eps_mult,
            "eps_free": cert.eps_free,
            "tie_break": "lowest-index-first greedy",
        },
    }
