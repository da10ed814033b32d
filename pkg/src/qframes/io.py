"""JSON schemas (versioned qfw/1) and DOT export for the workbench objects.

Serialization is canonical and byte-stable: keys sorted, element order
fixed, fractions and ordinals rendered as strings.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .errors import ConfigError, UnsupportedFormat
from .chains import ChainLattice
from .lattice import (
    chain,
    divisor_lattice,
    lattice_from_leq_pairs,
    subspace_lattice,
)
from .maps import Congruence, verify_congruence, verify_hom
from .ordinals import Ordinal

SCHEMA = "qfw/1"


def to_jsonable(obj):
    """Recursively render workbench values into JSON-safe structures."""
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(to_jsonable(v) for v in obj)
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, Ordinal):
        return str(obj)
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, (int, float, str)):
        return obj
    if hasattr(obj, "report") and isinstance(getattr(obj, "report"), dict):
        return to_jsonable(obj.report)
    return repr(obj)


def canonical_json(obj) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, separators=(",", ":"))


# -- lattices ------------------------------------------------------------------


def lattice_to_json(L) -> dict:
    if isinstance(L, ChainLattice):
        return {"schema": SCHEMA, "kind": "chain", "alpha": str(L.alpha),
                "orientation": L.orientation}
    pairs = []
    for i in L.elements():
        for j in L.elements():
            if i != j and L.leq(i, j):
                pairs.append([i, j])
    return {"schema": SCHEMA, "kind": "explicit", "elements": L.n,
            "leq": pairs}


def lattice_from_json(data):
    if isinstance(data, str):
        data = json.loads(data)
    kind = data.get("kind", "explicit")
    if kind == "divisor":
        return divisor_lattice(int(data["n"]))
    if kind == "chain":
        if "n" in data:
            return chain(int(data["n"]))
        return ChainLattice(data["alpha"], data.get("orientation", "standard"))
    if kind == "subspace":
        return subspace_lattice(int(data["dim"]), int(data.get("q", 2)))
    if kind == "explicit":
        n = int(data["elements"])
        return lattice_from_leq_pairs(n, [tuple(p) for p in data["leq"]])
    raise ConfigError(f"unknown lattice kind {kind!r}")


def hom_from_json(source, target, data):
    if isinstance(data, str):
        data = json.loads(data)
    return verify_hom(source, target, data["map"])


def congruence_from_json(L, data) -> Congruence:
    if isinstance(data, str):
        data = json.loads(data)
    return verify_congruence(L, [frozenset(c) for c in data["classes"]])


def serre_class_from_json(data):
    """Serre-class selector: {"kind":"gdim_le","alpha":"1"} or
    {"kind":"primary","p":2}."""
    from .dimension import gdim_le_class, primary_class

    if isinstance(data, str):
        data = json.loads(data)
    kind = data["kind"]
    if kind == "gdim_le":
        return gdim_le_class(data["alpha"])
    if kind == "primary":
        return primary_class(int(data["p"]))
    raise ConfigError(f"unknown Serre class kind {kind!r}")


# -- DOT ------------------------------------------------------------------------


def lattice_to_dot(L) -> str:
    """Hasse diagram in DOT; only finite carriers."""
    if isinstance(L, ChainLattice):
        raise UnsupportedFormat("cannot draw an infinite chain")
    lines = ["digraph hasse {", "  rankdir=BT;"]
    for i in L.elements():
        lines.append(f'  n{i} [label="{L.label(i)}"];')
    cov = L.covers()
    for i in L.elements():
        for j in cov[i]:
            lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


_DOT_NODE = re.compile(r"^\s*n(\d+)\s*\[label=\"(.*)\"\];$")
_DOT_EDGE = re.compile(r"^\s*n(\d+)\s*->\s*n(\d+);$")


def parse_dot(text):
    """Parse our own DOT output back to (node labels, cover edges)."""
    nodes = {}
    edges = []
    for line in text.splitlines():
        m = _DOT_NODE.match(line)
        if m:
            nodes[int(m.group(1))] = m.group(2)
            continue
        m = _DOT_EDGE.match(line)
        if m:
            edges.append((int(m.group(1)), int(m.group(2))))
    return nodes, sorted(edges)


def export(obj, fmt: str) -> str:
    if fmt == "json":
        return canonical_json(obj)
    if fmt == "dot":
        return lattice_to_dot(obj)
    raise UnsupportedFormat(f"unknown format {fmt!r}")


# -- rings, groups, crossed products, CAs, quasi-actions --------------------------


def ring_from_json(data):
    from .algebra.rings import GF, Zmod

    if isinstance(data, str):
        data = json.loads(data)
    if "ring" in data:
        data = data["ring"]
    kind = data["kind"]
    if kind == "Fq":
        return GF(int(data["p"]), data.get("poly"))
    if kind in ("Zmod", "Zn"):
        return Zmod(int(data["n"]))
    raise ConfigError(f"unknown ring kind {kind!r}")


def group_from_json(data):
    from .algebra.groups import FiniteGroup

    if isinstance(data, str):
        data = json.loads(data)
    if "group" in data:
        data = data["group"]
    kind = data["kind"]
    if kind == "cyclic":
        return FiniteGroup.cyclic(int(data["n"]))
    if kind == "klein":
        return FiniteGroup.klein_four()
    if kind == "table":
        return FiniteGroup(data["mul"], data.get("names"))
    raise ConfigError(f"unknown group kind {kind!r}")


def crossed_from_json(data):
    from .algebra.crossed import CrossedProductSpec, verify_crossed

    if isinstance(data, str):
        data = json.loads(data)
    body = data.get("crossed", data)
    ring = ring_from_json(body["ring"])
    group = group_from_json(body["group"])
    sigma = body.get("sigma")
    tau = body.get("tau")
    if sigma is None:
        sigma = [list(range(ring.n)) for _ in range(group.n)]
    if tau is None:
        tau = [[ring.one] * group.n for _ in range(group.n)]
    spec = CrossedProductSpec(ring, group,
                              tuple(tuple(p) for p in sigma),
                              tuple(tuple(t) for t in tau))
    return verify_crossed(spec)


def ca_from_json(data):
    from .algebra.modules import FiniteModule, ring_as_module
    from .automata import LinearCA

    if isinstance(data, str):
        data = json.loads(data)
    group = group_from_json(data["group"])
    ring = ring_from_json(data["module"]["ring"])
    k = int(data["module"].get("rank", 1))
    if k == 1:
        module = ring_as_module(ring)
    else:
        dims = tuple(ring.add_dims) * k

        def act(x, r):
            comps = []
            base = ring.n
            for _ in range(k):
                comps.append(ring.mul(x % base, r))
                x //= base
            out = 0
            mult = 1
            for c in comps:
                out += c * mult
                mult *= base
            return out

        module = FiniteModule(ring, dims, act, name=f"{ring.name}^{k}",
                              verify=False)
    memory = [group.index_of(nm) if isinstance(nm, str) else int(nm)
              for nm in data["memory"]]
    return LinearCA(group, module, memory, data["local"],
                    name=data.get("name", "ca"))


def qa_from_json(data):
    from .sofic import QuasiAction, ZGroup

    if isinstance(data, str):
        data = json.loads(data)
    V = int(data["V"])
    perms = {}
    for key, perm in data["perms"].items():
        g = int(key.replace("−", "-"))
        perms[g] = tuple(perm)
    perms.setdefault(0, tuple(range(V)))
    return QuasiAction(ZGroup(), V, perms)
