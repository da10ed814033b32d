"""Slow direct-definition evaluator for chain dimensions.

This is the oracle the closed CNF recursion in `dimension` is diffed
against: it replays the transfinite definitions over a finite descriptor
pool instead of reading anything off the normal form.

Finitization notes (reversed chains of extent e, elements = ordinals <= e,
larger ordinal = lower element):

* Krull: an infinite descending chain with infinitely many segments of
  dimension >= a exists iff some gamma with K.dim(gamma) >= a satisfies
  gamma * w <= e: partial sums of infinitely many summands >= gamma majorize
  gamma * w, and repeating the minimal such gamma realizes it.  gamma * w is
  computed by genuine ordinal arithmetic, and the minimum is found by
  scanning the pool in increasing order (K.dim is monotone on segments), so
  no closed form enters.
* Gabriel: the definition is replayed literally, stratified by the candidate
  dimension: deciding G.dim <= sigma consults beta-simplicity only for
  beta < sigma, and beta-simplicity consults G.dim <= beta, so the mutual
  recursion terminates.
* Quantifiers over all ordinals <= e are restricted to the pool.  Every
  condition used depends on an ordinal only through its CNF with the finite
  coefficients truncated at the pool cap, and the pool realizes each such
  shape, so the restriction is faithful for extents <= w*3 (the contract of
  this module).
"""

from __future__ import annotations

from .ordinals import Ordinal


def descriptor_pool(bound: Ordinal, coeff_cap: int = 6):
    """All CNF ordinals <= bound with coefficients <= coeff_cap, sorted."""
    max_exp = max(bound.leading_exponent, 0)
    pool = set()

    def build(exp, terms):
        pool.add(Ordinal(tuple(terms)))
        if exp < 0:
            return
        for c in range(1, coeff_cap + 1):
            cand = terms + [(exp, c)]
            if Ordinal(tuple(cand)) <= bound:
                build(exp - 1, cand)
        build(exp - 1, terms)

    build(max_exp, [])
    return sorted(x for x in pool if x <= bound)


class ChainDimensionOracle:
    """Direct-definition K.dim / G.dim / simplicity for reversed chains."""

    def __init__(self, bound, coeff_cap: int = 6):
        self.bound = bound
        self.pool = descriptor_pool(bound, coeff_cap)
        self._kdim = {}
        self._gdim_le = {}
        self._simple = {}

    # -- Krull ----------------------------------------------------------------

    def kdim(self, extent: Ordinal) -> int:
        """K.dim as an integer, with -1 for the trivial chain."""
        if extent in self._kdim:
            return self._kdim[extent]
        if extent.is_zero:
            val = -1
        else:
            val = 0
            while self._kdim_bad(extent, val):
                val += 1
        self._kdim[extent] = val
        return val

    def _kdim_bad(self, extent, a) -> bool:
        """Is there a descending chain with infinitely many segments of
        K.dim >= a inside a reversed chain of this extent?"""
        for gamma in self.pool:
            # gamma == extent cannot witness badness (gamma*w > extent), so
            # the scan stays strictly below and the recursion is well-founded
            if gamma.is_zero or gamma >= extent:
                continue
            if self.kdim(gamma) >= a:
                # minimal such gamma by the ascending scan; the infinite
                # repetition of gamma needs room gamma * w
                return gamma.times_omega() <= extent
        return False

    # -- Gabriel ----------------------------------------------------------------

    def gdim(self, extent: Ordinal) -> int:
        if extent.is_zero:
            return 0
        sigma = 1
        while not self.gdim_le(extent, sigma):
            sigma += 1
        return sigma

    def gdim_le(self, extent, sigma) -> bool:
        """Replay: G.dim <= sigma iff every element below the top admits a
        beta-simple step upward for some beta < sigma."""
        key = (extent, sigma)
        if key in self._gdim_le:
            return self._gdim_le[key]
        result = True
        for x in self.pool:
            # lattice element at ordinal position x; skip the top (x = 0)
            if x.is_zero or x > extent:
                continue
            if not any(
                self._simple_lt(x.left_subtract(y), sigma)
                for y in self.pool
                if y < x
            ):
                result = False
                break
        self._gdim_le[key] = result
        return result

    def _simple_lt(self, extent, sigma) -> bool:
        return any(self.alpha_simple(extent, beta) for beta in range(sigma))

    def alpha_simple(self, extent, beta) -> bool:
        """Definitional a-simplicity of a reversed chain segment.

        For every nonzero lattice element (ordinal position x < extent) the
        lower segment must have G.dim > beta and the upper one <= beta.
        """
        key = (extent, beta)
        if key in self._simple:
            return self._simple[key]
        if extent.is_zero:
            result = False
        else:
            result = True
            for x in self.pool:
                if x >= extent:
                    continue
                lower = extent.left_subtract(x)
                if self.gdim_le(lower, beta) or not self.gdim_le(x, beta):
                    result = False
                    break
        self._simple[key] = result
        return result


def standard_chain_kdim(extent: Ordinal) -> int:
    """Standard orientation: the carrier is well-ordered, so every
    descending chain stabilizes; -1 for trivial, else 0."""
    return -1 if extent.is_zero else 0


def standard_chain_gdim(extent: Ordinal) -> int:
    """Standard orientation: every proper element has its successor above
    it, an atom step, so nontrivial standard chains have G.dim 1."""
    return 0 if extent.is_zero else 1
