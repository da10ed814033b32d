"""Ordinal arithmetic in Cantor normal form, capped below w^w.

Ordinals are written as sums  w^k1*c1 + w^k2*c2 + ... + ck  with strictly
descending natural-number exponents and positive integer coefficients.
Keeping the exponents in N (instead of allowing ordinal exponents) caps the
representable ordinals below w^w, which is all the chain carriers need.
"""

from __future__ import annotations

import re
from functools import total_ordering


class OrdinalBoundError(ValueError):
    """Raised when an operation would leave the supported range [0, w^w)."""


@total_ordering
class Ordinal:
    """An ordinal below w^w, immutable and hashable.

    `terms` is a tuple of (exponent, coefficient) pairs with exponents
    strictly descending and coefficients >= 1; the empty tuple is 0.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        terms = tuple((int(e), int(c)) for e, c in terms)
        for e, c in terms:
            if e < 0 or c < 1:
                raise OrdinalBoundError(f"bad CNF term (w^{e})*{c}")
        if any(terms[i][0] <= terms[i + 1][0] for i in range(len(terms) - 1)):
            raise OrdinalBoundError("CNF exponents must be strictly descending")
        object.__setattr__(self, "terms", terms)

    def __setattr__(self, name, value):
        raise AttributeError("Ordinal is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_int(cls, n: int) -> "Ordinal":
        if n < 0:
            raise OrdinalBoundError("ordinals are non-negative")
        return cls(((0, n),)) if n else cls()

    @classmethod
    def omega(cls) -> "Ordinal":
        return cls(((1, 1),))

    @classmethod
    def omega_pow(cls, k: int, coeff: int = 1) -> "Ordinal":
        if coeff == 0:
            return cls()
        return cls(((k, coeff),))

    # -- predicates --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_finite(self) -> bool:
        return not self.terms or self.terms[0][0] == 0

    @property
    def is_successor(self) -> bool:
        return bool(self.terms) and self.terms[-1][0] == 0

    @property
    def is_limit(self) -> bool:
        return bool(self.terms) and self.terms[-1][0] > 0

    @property
    def finite_part(self) -> int:
        if self.terms and self.terms[-1][0] == 0:
            return self.terms[-1][1]
        return 0

    @property
    def leading_exponent(self) -> int:
        """Degree of the ordinal: largest k with w^k <= self (-1 for 0)."""
        return self.terms[0][0] if self.terms else -1

    def as_int(self) -> int:
        if not self.is_finite:
            raise OrdinalBoundError(f"{self} is not finite")
        return self.finite_part

    # -- order -------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            if other < 0:
                return False
            other = Ordinal.from_int(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms == other.terms

    def __lt__(self, other):
        if isinstance(other, int):
            if other < 0:
                return False
            other = Ordinal.from_int(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        for (e1, c1), (e2, c2) in zip(self.terms, other.terms):
            if e1 != e2:
                return e1 < e2
            if c1 != c2:
                return c1 < c2
        return len(self.terms) < len(other.terms)

    def __hash__(self):
        return hash(self.terms)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        """Ordinal addition: lower terms of the left summand are absorbed."""
        if isinstance(other, int):
            other = Ordinal.from_int(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        if other.is_zero:
            return self
        lead = other.terms[0][0]
        kept = [t for t in self.terms if t[0] > lead]
        merged = list(other.terms)
        for e, c in self.terms:
            if e == lead:
                merged[0] = (lead, c + merged[0][1])
        return Ordinal(tuple(kept) + tuple(merged))

    def successor(self) -> "Ordinal":
        return self + 1

    def predecessor(self) -> "Ordinal":
        if not self.is_successor:
            raise OrdinalBoundError(f"{self} is not a successor")
        e, c = self.terms[-1]
        rest = self.terms[:-1]
        if c > 1:
            return Ordinal(rest + ((0, c - 1),))
        return Ordinal(rest)

    def times_omega(self) -> "Ordinal":
        """self * w;  (w^k*c + lower)*w = w^(k+1) for self >= 1."""
        if self.is_zero:
            return self
        return Ordinal.omega_pow(self.leading_exponent + 1)

    def left_subtract(self, x: "Ordinal") -> "Ordinal":
        """The unique d with x + d == self; requires x <= self."""
        if isinstance(x, int):
            x = Ordinal.from_int(x)
        if x > self:
            raise OrdinalBoundError(f"{x} > {self}: difference undefined")
        a, b = list(x.terms), list(self.terms)
        i = 0
        while i < len(a) and i < len(b) and a[i] == b[i]:
            i += 1
        if i == len(a):
            return Ordinal(tuple(b[i:]))
        ea, ca = a[i]
        eb, cb = b[i]
        if ea == eb and ca < cb:
            return Ordinal(((eb, cb - ca),) + tuple(b[i + 1:]))
        if ea < eb:
            return Ordinal(tuple(b[i:]))
        raise OrdinalBoundError(f"{x} > {self}: difference undefined")

    def split_at_exponent(self, k: int):
        """Write self = head + tail with head the terms of exponent >= k.

        head + tail == self and tail < w^k.
        """
        head = tuple(t for t in self.terms if t[0] >= k)
        tail = tuple(t for t in self.terms if t[0] < k)
        return Ordinal(head), Ordinal(tail)

    def shift_down(self, k: int) -> "Ordinal":
        """Quotient by w^k: keep terms of exponent >= k, exponents lowered."""
        return Ordinal(tuple((e - k, c) for e, c in self.terms if e >= k))

    # -- text --------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            if e == 0:
                parts.append(str(c))
            else:
                base = "w" if e == 1 else f"w^{e}"
                parts.append(base if c == 1 else f"{base}*{c}")
        return "+".join(parts)

    def __repr__(self):
        return f"Ordinal({self})"


_TERM_RE = re.compile(
    r"^(?:(?P<nat>\d+)|w(?:\^(?P<exp>\d+))?(?:[*.x·×](?P<coeff>\d+))?)$"
)


def parse_ordinal(text) -> Ordinal:
    """Parse CNF text such as 'w^2+3', 'w*2', 'w.2+5' or '17'.

    Terms are summed left to right with ordinal addition, so non-canonical
    inputs normalize (e.g. '3+w' parses to w).
    """
    if isinstance(text, Ordinal):
        return text
    if isinstance(text, int):
        return Ordinal.from_int(text)
    total = Ordinal()
    cleaned = str(text).replace(" ", "").replace("ω", "w")
    if not cleaned:
        raise OrdinalBoundError("empty ordinal string")
    for chunk in cleaned.split("+"):
        m = _TERM_RE.match(chunk)
        if not m:
            raise OrdinalBoundError(f"cannot parse ordinal term {chunk!r}")
        if m.group("nat") is not None:
            total = total + Ordinal.from_int(int(m.group("nat")))
        else:
            exp = int(m.group("exp")) if m.group("exp") else 1
            coeff = int(m.group("coeff")) if m.group("coeff") else 1
            total = total + Ordinal.omega_pow(exp, coeff)
    return total


ZERO = Ordinal()
ONE = Ordinal.from_int(1)
OMEGA = Ordinal.omega()
