"""Finite rings: Z/n, F_q from an irreducible polynomial, matrix rings,
and generic table-backed rings.

Every ring here is additively a product of Z/d components; elements are
mixed-radix integer ids over `add_dims`, so additive linear algebra can
treat ring elements as coordinate vectors uniformly.
"""

from __future__ import annotations

import itertools
import random

from ..errors import QframeError, UnsupportedRing
from ..linalg import is_prime


class RingBase:
    """Shared additive structure; subclasses provide `mul` and `one`."""

    add_dims: tuple
    one: int
    name: str = "ring"

    def __init_subclass__(cls, **kw):
        super().__init_subclass__(**kw)

    @property
    def n(self):
        size = 1
        for d in self.add_dims:
            size *= d
        return size

    def elements(self):
        return range(self.n)

    def decode(self, x):
        out = []
        for d in self.add_dims:
            out.append(x % d)
            x //= d
        return tuple(out)

    def encode(self, coords):
        x = 0
        mult = 1
        for c, d in zip(coords, self.add_dims):
            x += (c % d) * mult
            mult *= d
        return x

    @property
    def zero(self):
        return 0

    def add(self, a, b):
        return self.encode(
            [x + y for x, y in zip(self.decode(a), self.decode(b))]
        )

    def neg(self, a):
        return self.encode([-x for x in self.decode(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):  # pragma: no cover - abstract
        raise NotImplementedError

    def is_unit(self, a) -> bool:
        return self.inverse(a) is not None

    def inverse(self, a):
        for b in self.elements():
            if self.mul(a, b) == self.one and self.mul(b, a) == self.one:
                return b
        return None

    def units(self):
        return [a for a in self.elements() if self.is_unit(a)]

    def is_commutative(self) -> bool:
        return all(
            self.mul(a, b) == self.mul(b, a)
            for a in self.elements() for b in self.elements()
        )

    def power(self, a, k):
        out = self.one
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def __repr__(self):
        return f"{self.__class__.__name__}({self.name})"


class Zmod(RingBase):
    """The ring Z/n."""

    def __init__(self, n: int):
        if n < 2:
            raise UnsupportedRing("Z/n needs n >= 2")
        self.modulus = n
        self.add_dims = (n,)
        self.one = 1
        self.name = f"Z/{n}"
        # composition factors of Z/p^k-modules are all Z/p
        p = _smallest_prime_factor(n)
        self.simple_size = p if n == p ** _padic_valuation(n, p) else None

    def mul(self, a, b):
        return (a * b) % self.modulus


def _smallest_prime_factor(n):
    d = 2
    while d * d <= n:
        if n % d == 0:
            return d
        d += 1
    return n


def _padic_valuation(n, p):
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


class GF(RingBase):
    """The field F_q for q = p^deg, built from a supplied irreducible
    polynomial (ascending coefficients, monic).  No Conway table is
    bundled; the polynomial is part of the input."""

    def __init__(self, p: int, poly=None):
        if not is_prime(p):
            raise UnsupportedRing(f"{p} is not prime")
        if poly is None:
            poly = [0, 1]  # x: degree-1, gives F_p itself
        poly = [c % p for c in poly]
        if poly[-1] != 1:
            raise UnsupportedRing("polynomial must be monic")
        self.p = p
        self.poly = tuple(poly)
        self.deg = len(poly) - 1
        if self.deg < 1:
            raise UnsupportedRing("polynomial must have degree >= 1")
        self._check_irreducible()
        self.q = p ** self.deg
        self.add_dims = (p,) * self.deg
        self.one = self.encode([1] + [0] * (self.deg - 1))
        self.name = f"F_{self.q}"
        self.simple_size = self.q
        self._mul_table = None

    def _poly_mulmod(self, a, b):
        p, deg = self.p, self.deg
        prod = [0] * (2 * deg - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % p
        for i in range(len(prod) - 1, deg - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j in range(deg):
                    prod[i - deg + j] = (prod[i - deg + j] - c * self.poly[j]) % p
        return prod[:deg]

    def _check_irreducible(self):
        p, deg = self.p, self.deg
        if deg == 1:
            return
        # trial division by every monic polynomial of degree <= deg/2
        for d in range(1, deg // 2 + 1):
            for coeffs in itertools.product(range(p), repeat=d):
                divisor = list(coeffs) + [1]
                if _poly_divides(divisor, list(self.poly), p):
                    raise UnsupportedRing(
                        f"polynomial {list(self.poly)} is divisible by {divisor}"
                    )

    def mul(self, a, b):
        if self._mul_table is None:
            self._mul_table = {}
        key = (a, b)
        if key not in self._mul_table:
            val = self.encode(self._poly_mulmod(self.decode(a), self.decode(b)))
            self._mul_table[key] = val
        return self._mul_table[key]

    def frobenius(self, a):
        return self.power(a, self.p)


def _poly_divides(d, f, p):
    f = list(f)
    while len(f) >= len(d) and any(f):
        while f and f[-1] == 0:
            f.pop()
        if len(f) < len(d):
            break
        c = f[-1]  # d is monic
        shift = len(f) - len(d)
        for i, x in enumerate(d):
            f[shift + i] = (f[shift + i] - c * x) % p
        while f and f[-1] == 0:
            f.pop()
    return not any(f)


class TableRing(RingBase):
    """Generic ring over given additive dims with a multiplication callable;
    results are memoized into a table."""

    def __init__(self, add_dims, mul_fn, one, name="table-ring"):
        self.add_dims = tuple(add_dims)
        self._mul_fn = mul_fn
        self.one = one
        self.name = name
        self._table = {}

    def mul(self, a, b):
        key = (a, b)
        if key not in self._table:
            self._table[key] = self._mul_fn(a, b)
        return self._table[key]


class MatrixRing(RingBase):
    """Mat_k(S) for a base ring S; structured, no global tables."""

    def __init__(self, base: RingBase, k: int):
        self.base = base
        self.k = k
        self.add_dims = tuple(base.add_dims) * (k * k)
        self.name = f"Mat_{k}({base.name})"
        ident = []
        for i in range(k):
            for j in range(k):
                ident.append(base.one if i == j else base.zero)
        self.one = self.encode_matrix(ident)

    def encode_matrix(self, entries):
        """entries: row-major list of k*k base-ring element ids."""
        coords = []
        for e in entries:
            coords.extend(self.base.decode(e))
        return self.encode(coords)

    def decode_matrix(self, x):
        coords = self.decode(x)
        step = len(self.base.add_dims)
        return [
            self.base.encode(coords[i * step:(i + 1) * step])
            for i in range(self.k * self.k)
        ]

    def mul(self, a, b):
        k, base = self.k, self.base
        A = self.decode_matrix(a)
        B = self.decode_matrix(b)
        out = []
        for i in range(k):
            for j in range(k):
                acc = base.zero
                for t in range(k):
                    acc = base.add(acc, base.mul(A[i * k + t], B[t * k + j]))
                out.append(acc)
        return self.encode_matrix(out)


def verify_ring(ring: RingBase, triple_cap: int = 200_000, rng=None) -> dict:
    """Exhaustive (or sampled) associativity/distributivity/unit check."""
    n = ring.n
    triples = n ** 3
    report = {"ring": ring.name, "elements": n}
    if triples <= triple_cap:
        source = itertools.product(range(n), repeat=3)
        report["mode"] = "exhaustive"
    else:
        rng = rng or random.Random(0)
        source = (
            (rng.randrange(n), rng.randrange(n), rng.randrange(n))
            for _ in range(triple_cap)
        )
        report["mode"] = f"sampled({triple_cap})"
    for a, b, c in source:
        if ring.mul(ring.mul(a, b), c) != ring.mul(a, ring.mul(b, c)):
            raise QframeError("multiplication not associative", witness=(a, b, c))
        lhs = ring.mul(a, ring.add(b, c))
        rhs = ring.add(ring.mul(a, b), ring.mul(a, c))
        if lhs != rhs:
            raise QframeError("left distributivity fails", witness=(a, b, c))
        lhs = ring.mul(ring.add(a, b), c)
        rhs = ring.add(ring.mul(a, c), ring.mul(b, c))
        if lhs != rhs:
            raise QframeError("right distributivity fails", witness=(a, b, c))
    for a in range(n):
        if ring.mul(ring.one, a) != a or ring.mul(a, ring.one) != a:
            raise QframeError("unit law fails", witness=(a,))
    report["ok"] = True
    return report
