"""Symbolic chain carriers: the ordinals below a bound, possibly reversed.

A ChainLattice never enumerates its elements.  Every segment of a chain is
again a chain (same orientation) whose extent is an ordinal difference, so
all structural questions reduce to Cantor-normal-form arithmetic.
"""

from __future__ import annotations

from .errors import NotAChain, UnsupportedCarrier
from .ordinals import Ordinal, parse_ordinal

INF = float("inf")

STANDARD = "standard"
REVERSED = "reversed"


class ChainLattice:
    """Complete chain of the ordinals 0..alpha under <= or its reverse.

    Standard orientation is well-ordered from the bottom (hence Artinian);
    reversed orientation is well-ordered from the top (hence Noetherian).
    """

    __slots__ = ("alpha", "orientation")

    def __init__(self, alpha, orientation: str = STANDARD):
        if orientation not in (STANDARD, REVERSED):
            raise UnsupportedCarrier(f"unknown orientation {orientation!r}")
        object.__setattr__(self, "alpha", parse_ordinal(alpha))
        object.__setattr__(self, "orientation", orientation)

    def __setattr__(self, name, value):
        raise AttributeError("ChainLattice is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, ChainLattice)
            and self.alpha == other.alpha
            and self.orientation == other.orientation
        )

    def __hash__(self):
        return hash((self.alpha, self.orientation))

    def __repr__(self):
        return f"ChainLattice({self.alpha}, {self.orientation})"

    # -- elements are ordinals <= alpha -------------------------------------

    def contains(self, beta) -> bool:
        return parse_ordinal(beta) <= self.alpha

    def _check(self, beta) -> Ordinal:
        beta = parse_ordinal(beta)
        if beta > self.alpha:
            raise NotAChain(f"{beta} exceeds the chain bound {self.alpha}")
        return beta

    @property
    def bottom(self) -> Ordinal:
        return self.alpha if self.orientation == REVERSED else Ordinal()

    @property
    def top(self) -> Ordinal:
        return Ordinal() if self.orientation == REVERSED else self.alpha

    def leq(self, x, y) -> bool:
        x, y = self._check(x), self._check(y)
        return y <= x if self.orientation == REVERSED else x <= y

    def join(self, x, y) -> Ordinal:
        x, y = self._check(x), self._check(y)
        return min(x, y) if self.orientation == REVERSED else max(x, y)

    def meet(self, x, y) -> Ordinal:
        x, y = self._check(x), self._check(y)
        return max(x, y) if self.orientation == REVERSED else min(x, y)

    def join_all(self, xs) -> Ordinal:
        acc = self.bottom
        for x in xs:
            acc = self.join(acc, x)
        return acc

    # -- segments ------------------------------------------------------------

    def segment_extent(self, a, b) -> Ordinal:
        """Ordinal extent e of [a, b]: the segment is a chain of 0..e."""
        a, b = self._check(a), self._check(b)
        if not self.leq(a, b):
            raise NotAChain(f"segment endpoints not ordered: {a}, {b}")
        if self.orientation == REVERSED:
            return a.left_subtract(b)
        return b.left_subtract(a)

    def segment(self, a, b) -> "ChainLattice":
        """The segment [a, b] as an abstract chain (same orientation)."""
        return ChainLattice(self.segment_extent(a, b), self.orientation)

    def sub_qframe(self, x) -> "ChainLattice":
        return self.segment(self.bottom, x)

    # -- structural reports ----------------------------------------------------

    def chain_length(self):
        return self.alpha.as_int() if self.alpha.is_finite else INF

    def is_compact_element(self, x) -> bool:
        """[0, x] is compact iff joins up to x are attained.

        Reversed chains: joins are ordinal minima, always attained, so every
        element is compact.  Standard: x must be 0 or a successor.
        """
        x = self._check(x)
        if self.orientation == REVERSED:
            return True
        return x.is_zero or x.is_successor

    def chain_props(self) -> dict:
        return {
            "modular": True,
            "modular_witness": None,
            "distributive": True,
            "distributive_witness": None,
            "compact_elements": (
                "all elements"
                if self.orientation == REVERSED
                else "0 and the successor ordinals"
            ),
            "upper_continuous": "structural (complete chain)",
        }

    def atom_over_bottom(self):
        """The unique atom, if the bottom has a cover."""
        if self.alpha.is_zero:
            return None
        if self.orientation == STANDARD:
            return Ordinal.from_int(1)
        # reversed: the cover of the bottom (= alpha) is its predecessor
        return self.alpha.predecessor() if self.alpha.is_successor else None

    def chain_socle_series(self) -> dict:
        """Socle tower, decided symbolically.

        Standard chains are semi-Artinian (every proper element has a
        successor above it).  A reversed chain is semi-Artinian iff alpha is
        finite: the descent from the top stalls at the first limit ordinal.
        """
        if self.alpha.is_zero:
            return {"socle": self.bottom, "series": [self.bottom],
                    "semi_artinian": True, "stabilizes_at": self.bottom}
        if self.orientation == STANDARD:
            one = Ordinal.from_int(1)
            series = [one]
            k = 1
            while series[-1] < self.alpha and k < 4:
                k += 1
                series.append(Ordinal.from_int(k))
            return {
                "socle": one,
                "series": series,
                "series_note": "s_tau continues transfinitely to alpha",
                "semi_artinian": True,
                "stabilizes_at": self.alpha,
            }
        atom = self.atom_over_bottom()
        if atom is None:
            return {"socle": self.bottom, "series": [self.bottom],
                    "semi_artinian": False, "stabilizes_at": self.bottom}
        head, tail = self.alpha.split_at_exponent(1)
        # the tower strips the finite part and stalls at the limit head
        series = []
        cur = self.alpha
        for _ in range(tail.as_int()):
            cur = cur.predecessor()
            series.append(cur)
        stabilizes = head
        return {
            "socle": atom,
            "series": series or [self.bottom],
            "semi_artinian": head.is_zero,
            "stabilizes_at": stabilizes,
        }

    def chain_chain_conditions(self) -> dict:
        finite = self.alpha.is_finite
        if self.orientation == STANDARD:
            report = {"noetherian": finite, "artinian": True}
            all_compact = finite  # a limit <= alpha exists iff alpha >= w
        else:
            report = {"noetherian": True, "artinian": finite}
            all_compact = True
        semi = self.chain_socle_series()["semi_artinian"]
        finite_len = self.chain_length() != INF
        report["cross_check_compact"] = all_compact == report["noetherian"]
        report["cross_check_finite_length"] = (
            (semi and report["noetherian"]) == finite_len
        )
        return report

    def to_finite_lattice(self):
        """Materialize as a FiniteLattice; only for finite alpha."""
        from .lattice import lattice_from_order

        if not self.alpha.is_finite:
            raise UnsupportedCarrier("cannot materialize an infinite chain")
        n = self.alpha.as_int() + 1
        vals = list(range(n))
        if self.orientation == REVERSED:
            return lattice_from_order(vals, lambda a, b: b <= a)
        return lattice_from_order(vals, lambda a, b: a <= b)

    def sample_elements(self, limit: int = 12):
        """A finite probe set of elements: bounds, small ordinals, limits."""
        out = {Ordinal(), self.alpha}
        for k in (1, 2, 3):
            v = Ordinal.from_int(k)
            if v <= self.alpha:
                out.add(v)
        for e, _c in self.alpha.terms:
            for coeff in (1, 2, 3):
                v = Ordinal.omega_pow(e, coeff)
                if Ordinal() < v <= self.alpha:
                    out.add(v)
                w = v + 1
                if w <= self.alpha:
                    out.add(w)
        return sorted(out)[:limit]
