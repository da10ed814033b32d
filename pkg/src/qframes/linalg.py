"""Exact linear algebra over Z/m: Gaussian elimination and Howell form.

Every module in the workbench is additively a product of Z/m components,
so injectivity/surjectivity of additive maps, kernels, spans and solving
all reduce to row computations over Z/m.  Prime moduli go through ordinary
Gaussian elimination; composite moduli (zero divisors) through the Howell
normal form, whose span is closed under leading-zero truncation, which is
what makes kernel extraction by augmentation valid.
"""

from __future__ import annotations

from math import gcd


def _ext_gcd(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def modinv(a, m):
    g, u, _ = _ext_gcd(a % m, m)
    if g != 1:
        raise ValueError(f"{a} is not a unit mod {m}")
    return u % m


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


def _stabilize_unit(u, m, step):
    """Lift u (a unit mod m/step) to a unit mod m by adding multiples of
    m/step; a valid lift exists by CRT and is found within `step` tries."""
    cand = u % m
    for _ in range(step + 1):
        if gcd(cand, m) == 1:
            return cand
        cand = (cand + m // step) % m
    raise ArithmeticError("no unit lift found")  # unreachable for d | m


def howell(rows, m, width=None):
    """Howell normal form of the row span of `rows` over Z/m.

    Returns a list of canonical rows in echelon order.  Each pivot divides
    m, entries above a pivot are reduced below it, and every span element
    whose first j coordinates vanish is a combination of the rows whose
    first j coordinates vanish.
    """
    rows = [list(r) for r in rows]
    if width is None:
        if not rows:
            return []
        width = len(rows[0])
    work = [[x % m for x in r] for r in rows if any(x % m for x in r)]
    result = []
    for col in range(width):
        cand = [r for r in work if r[col]]
        rest = [r for r in work if not r[col]]
        if not cand:
            work = rest
            continue
        piv = cand[0]
        for r in cand[1:]:
            a, b = piv[col], r[col]
            g, u, v = _ext_gcd(a, b)
            combo = [(u * x + v * y) % m for x, y in zip(piv, r)]
            cleared = [((b // g) * x - (a // g) * y) % m for x, y in zip(piv, r)]
            piv = combo
            if any(cleared):
                rest.append(cleared)
        d = gcd(piv[col], m)
        # lift the inverse of piv[col]/d (a unit mod m/d) to a unit mod m:
        # candidates differ by multiples of m/d, so at most d tries
        scale = _stabilize_unit(modinv(piv[col] // d, m // d), m, d)
        piv = [(scale * x) % m for x in piv]
        for prev in result:
            if prev[col]:
                c = prev[col] // d
                for j in range(width):
                    prev[j] = (prev[j] - c * piv[j]) % m
        ann = [((m // d) * x) % m for x in piv]
        if any(ann):
            rest.append(ann)
        result.append(piv)
        work = rest
    return [tuple(r) for r in result]


def _pivot_col(row):
    for j, x in enumerate(row):
        if x:
            return j
    return None


def span_size(hrows, m) -> int:
    """Cardinality of the row span, read off the Howell pivots."""
    size = 1
    for r in hrows:
        j = _pivot_col(r)
        if j is not None:
            size *= m // r[j]
    return size


def reduce_vector(hrows, v, m):
    """Reduce v against Howell rows; returns (residue, coefficients)."""
    v = [x % m for x in v]
    coeffs = []
    for r in hrows:
        j = _pivot_col(r)
        if j is None:
            coeffs.append(0)
            continue
        d = r[j]
        if v[j] % d == 0:
            c = (v[j] // d) % (m // d)
        else:
            c = 0
        if c:
            for k in range(len(v)):
                v[k] = (v[k] - c * r[k]) % m
        coeffs.append(c)
    return v, coeffs


def in_span(hrows, v, m) -> bool:
    residue, _ = reduce_vector(hrows, v, m)
    return not any(residue)


def kernel_basis(rows, m, width=None):
    """Generators of {x : sum x_i rows[i] = 0} over Z/m, via augmentation.

    Howell of [rows | I]: the rows with vanishing left half have right
    halves generating the kernel (leading-zero truncation property).
    """
    rows = [list(r) for r in rows]
    n = len(rows)
    if n == 0:
        return []
    if width is None:
        width = len(rows[0])
    aug = [list(r) + [1 if i == j else 0 for j in range(n)]
           for i, r in enumerate(rows)]
    h = howell(aug, m, width + n)
    return [tuple(r[width:]) for r in h if not any(r[:width])]


def solve(rows, target, m):
    """x with sum x_i rows[i] = target over Z/m, or None."""
    rows = [list(r) for r in rows]
    n = len(rows)
    if n == 0:
        return None if any(x % m for x in target) else ()
    width = len(rows[0])
    aug = [list(r) + [1 if i == j else 0 for j in range(n)]
           for i, r in enumerate(rows)]
    h = howell(aug, m, width + n)
    v = [x % m for x in target] + [0] * n
    for r in h:
        j = _pivot_col(r)
        if j is None or j >= width:
            continue
        d = r[j]
        if v[j] % d == 0:
            c = v[j] // d
            for k in range(len(v)):
                v[k] = (v[k] - c * r[k]) % m
    if any(v[:width]):
        return None
    return tuple((-x) % m for x in v[width:])


def matrix_image_size(rows, m) -> int:
    return span_size(howell(rows, m), m)


def map_is_injective(rows, m, domain_size=None) -> bool:
    """rows[i] = image of the i-th generator; injective iff the image is as
    large as the domain (finite sets) iff the kernel is trivial."""
    if not rows:
        return True
    if domain_size is None:
        domain_size = m ** len(rows)
    return matrix_image_size(rows, m) == domain_size


def map_is_surjective(rows, m, codomain_size=None) -> bool:
    if not rows:
        return codomain_size in (None, 1)
    if codomain_size is None:
        codomain_size = m ** len(rows[0])
    return matrix_image_size(rows, m) == codomain_size


# -- prime-field fast path -----------------------------------------------------


def rref_prime(rows, p):
    """Reduced row echelon form over the field Z/p; returns (rows, pivots)."""
    rows = [[x % p for x in r] for r in rows]
    if not rows:
        return [], []
    width = len(rows[0])
    pivots = []
    r = 0
    for col in range(width):
        pivot = None
        for i in range(r, len(rows)):
            if rows[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = modinv(rows[r][col], p)
        rows[r] = [(inv * x) % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                c = rows[i][col]
                rows[i] = [(x - c * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    return [tuple(x) for x in rows[:r]], pivots


def rank_prime(rows, p) -> int:
    return len(rref_prime(rows, p)[0])
