"""Direct/stable finiteness harness: xy = 1 must force yx = 1.

For finite rings this is automatic mathematically, so a violation here is
a bug report for the machinery, not a refutation of anything; the harness
exists to validate the right-inverse solver and the lattice pipeline
against each other.
"""

from __future__ import annotations

import itertools
import random

from ..errors import QframeError
from ..linalg import solve
from .modules import ModuleHom, lattice_hom_from_module_hom
from .rings import MatrixRing, RingBase


def _homogeneous_modulus(ring: RingBase) -> int:
    dims = set(ring.add_dims)
    if len(dims) != 1:
        raise QframeError(f"{ring.name} is not additively homogeneous")
    return dims.pop()


def right_inverse(ring: RingBase, x):
    """Solve x*y = 1 for y by additive linear algebra over Z/m.

    The map y -> x*y is additive, so its matrix over the coordinate basis
    feeds the Howell/Gauss solver; returns a ring element or None.
    """
    m = _homogeneous_modulus(ring)
    width = len(ring.add_dims)
    rows = []
    for j in range(width):
        basis = ring.encode([1 if i == j else 0 for i in range(width)])
        rows.append(list(ring.decode(ring.mul(x, basis))))
    target = list(ring.decode(ring.one))
    coeffs = solve(rows, target, m)
    if coeffs is None:
        return None
    return ring.encode(coeffs)


def stable_finiteness_check(ring: RingBase, k: int, mode: str = "auto",
                            samples: int = 100_000, seed: int = 0,
                            exhaustive_cap: int = 70_000) -> dict:
    """Scan Mat_k(ring) for x with a right inverse y and assert y*x = 1.

    mode: 'exhaustive', 'sample', or 'auto' (exhaustive when the matrix
    ring is small enough).  A violation is reported as a finding, never
    raised: it would falsify direct finiteness of a finite ring and so
    indicates an implementation bug.
    """
    mat = MatrixRing(ring, k) if k > 1 else ring
    total = mat.n
    if mode == "auto":
        mode = "exhaustive" if total <= exhaustive_cap else "sample"
    if mode == "exhaustive":
        candidates = range(total)
        checked = total
    else:
        rng = random.Random(seed)
        candidates = (rng.randrange(total) for _ in range(samples))
        checked = samples
    right_invertible = 0
    violations = []
    for x in candidates:
        y = right_inverse(mat, x)
        if y is None:
            continue
        if mat.mul(x, y) != mat.one:
            raise QframeError("right-inverse solver returned a non-inverse",
                              witness=(x, y))
        right_invertible += 1
        if mat.mul(y, x) != mat.one:
            violations.append((x, y))
    return {
        "ring": ring.name,
        "k": k,
        "mode": mode,
        "checked": checked,
        "right_invertible": right_invertible,
        "violations": violations,
        "note": (
            "finite rings are directly finite; a violation indicates an "
            "implementation bug, so this validates the solver pipeline"
        ),
    }


def all_linear_endomorphisms(module, additive_cap: int = 4096):
    """Every ring-linear endomorphism of a finite module.

    When the count of additive candidate maps is small the scan runs over
    all additive maps determined by generator images; otherwise (free
    rank-1 modules) the left multiplications enumerate the endomorphism
    ring directly.
    """
    gens = module.additive_generators()
    count = module.n ** len(gens)
    ring = module.ring
    out = []
    if count <= additive_cap:
        for images in itertools.product(module.elements(), repeat=len(gens)):
            table = _table_from_generator_images(module, gens, images)
            if table is None:
                continue
            if _commutes_with_scalars(module, table):
                out.append(ModuleHom(module, module, table,
                                     name=f"endo{len(out)}", verify=False))
        return out, "exhaustive-additive"
    # fall back to left multiplications, which enumerate End(ring) exactly
    # when the module is the right regular one
    if module.n != ring.n or tuple(module.dims) != tuple(ring.add_dims):
        raise QframeError(
            f"endomorphism enumeration too large for {module.name}")
    for a in ring.elements():
        out.append(ModuleHom(module, module,
                             [ring.mul(a, x) for x in module.elements()],
                             name=f"mult-by-{a}", verify=False))
    return out, "left-multiplications"


def _table_from_generator_images(module, gens, images):
    """Extend generator images additively; None when inconsistent with the
    component orders (which cannot happen for homogeneous dims)."""
    table = [None] * module.n
    table[0] = 0
    for x in module.elements():
        coords = module.decode(x)
        acc = 0
        for c, g, img in zip(coords, gens, images):
            for _ in range(c):
                acc = module.add(acc, img)
        table[x] = acc
    return table


def _commutes_with_scalars(module, table):
    for x in module.elements():
        for s in module.ring.elements():
            if table[module.scalar(x, s)] != module.scalar(table[x], s):
                return False
    return True


def surj_implies_inj_check(module, lattice_cap: int = 20_000,
                           with_lattice: bool = True) -> dict:
    """Enumerate linear endomorphisms, assert surjective => injective, and
    cross-check the verdicts against the submodule-lattice pipeline."""
    endos, endo_mode = all_linear_endomorphisms(module)
    surjective = injective = 0
    for phi in endos:
        s = phi.is_surjective()
        i = phi.is_injective()
        surjective += s
        injective += i
        if s and not i:
            raise QframeError(
                "surjective but not injective endomorphism on a finite module",
                witness=(phi.name,))
        if with_lattice:
            rep = lattice_hom_from_module_hom(phi, cap=lattice_cap)
            if rep["Phi_injective"] != i or rep["Phi_surjective"] != s:
                raise QframeError(
                    "lattice verdict disagrees with direct linear algebra",
                    witness=(phi.name,))
    return {
        "module": module.name,
        "endomorphisms": len(endos),
        "enumeration": endo_mode,
        "surjective": surjective,
        "injective": injective,
        "lattice_cross_check": with_lattice,
    }
