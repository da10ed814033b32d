"""Batch entry point: subcommands for the individual checkers and a suite
orchestrator with deterministic, replayable reports.

Exit codes: 0 all assertions pass, 1 an assertion failed, 2 usage or
configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .errors import ConfigError, QframeError
from .io import (
    SCHEMA,
    ca_from_json,
    canonical_json,
    congruence_from_json,
    lattice_from_json,
    lattice_to_dot,
    qa_from_json,
    ring_from_json,
)


def _load(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read {path}: {exc}")


def cmd_check_qframe(args):
    L = lattice_from_json(_load(args.infile))
    from .lattice import lattice_props

    report = lattice_props(L)
    report["elements"] = getattr(L, "n", "infinite chain")
    return report


def cmd_length(args):
    from .lattice import length

    L = lattice_from_json(_load(args.infile))
    return {"length": length(L)}


def cmd_dimension(args):
    from .dimension import gabriel_dim, krull_dim

    L = lattice_from_json(_load(args.infile))
    if args.what == "krull":
        return {"krull_dim": str(krull_dim(L))}
    if args.what == "gabriel":
        return {"gabriel_dim": str(gabriel_dim(L))}
    return {"krull_dim": str(krull_dim(L)),
            "gabriel_dim": str(gabriel_dim(L))}


def cmd_quotient(args):
    from .maps import quotient_by_congruence

    L = lattice_from_json(_load(args.infile))
    cong = congruence_from_json(L, _load(args.congruence))
    out = quotient_by_congruence(L, cong)
    return {
        "quotient_elements": out["quotient"].n,
        "projection": list(out["projection"].table),
        "surjective": out["projection"].is_surjective(),
    }


def cmd_sofic_verify(args):
    from .sofic import good_points, verify_quasi_action

    qa = qa_from_json(_load(args.qa))
    K = [int(k) for k in args.K.split(",")]
    cert = verify_quasi_action(qa, K, Fraction(args.eps))
    report = {
        "eps_mult": cert.eps_mult,
        "eps_free": cert.eps_free,
        "valid": cert.valid,
    }
    if args.n:
        gp = good_points(qa, K, args.n)
        report["good_points"] = gp["bounds"]
    return report


def cmd_surjunctivity(args):
    from .automata import inj_surj_analysis, surjunctivity_suite

    data = _load(args.shape)
    if "local" in data:
        ca = ca_from_json(data)
        verdict = inj_surj_analysis(ca)
        return {
            "injective": verdict["injective"],
            "surjective": verdict["surjective"],
            "image_index": verdict["image_index"],
            "surjunctive": (not verdict["injective"]) or verdict["surjective"],
        }
    shapes = _shapes_from_config(data)
    return surjunctivity_suite(shapes)


def _shapes_from_config(data):
    from .algebra.modules import ring_as_module
    from .io import group_from_json

    shapes = []
    for item in data["shapes"]:
        group = group_from_json(item["group"])
        ring = ring_from_json(item["module"]["ring"])
        rank = int(item["module"].get("rank", 1))
        if rank == 1:
            module = ring_as_module(ring)
        else:
            from .algebra.modules import FiniteModule

            dims = tuple(ring.add_dims) * rank

            def act(x, r, base=ring.n, k=rank):
                comps = []
                for _ in range(k):
                    comps.append(ring.mul(x % base, r))
                    x //= base
                out = 0
                mult = 1
                for c in comps:
                    out += c * mult
                    mult *= base
                return out

            module = FiniteModule(ring, dims, act, verify=False,
                                  name=f"{ring.name}^{rank}")
        shapes.append({"group": group, "module": module})
    return shapes


def cmd_stable_finiteness(args):
    from .algebra.finiteness import stable_finiteness_check

    ring = ring_from_json(_load(args.ring))
    rep = stable_finiteness_check(
        ring, args.k,
        mode=args.mode, samples=args.samples)
    rep["pass"] = not rep["violations"]
    return rep


def cmd_duality(args):
    from .algebra.groups import FiniteGroup
    from .duality import DModule, all_linear_maps, double_dual_check, end_anti_iso

    ring = ring_from_json(_ring_arg(args.ring))
    if args.check == "double-dual":
        M = DModule.free(ring, args.n)
        maps = all_linear_maps(M, M) if M.size() <= 64 else []
        return double_dual_check(M, maps)
    if args.check == "anti-iso":
        kind, gn = args.G.split(":")
        if kind != "cyclic":
            raise ConfigError("only cyclic groups via the CLI")
        return end_anti_iso(FiniteGroup.cyclic(int(gn)), args.n, ring)
    raise ConfigError(f"unknown duality check {args.check!r}")


def _ring_arg(text):
    if text.startswith("Z/"):
        return {"kind": "Zmod", "n": int(text[2:])}
    if text.startswith("F"):
        q = int(text[1:])
        if q == 2:
            return {"kind": "Fq", "p": 2}
        if q == 4:
            return {"kind": "Fq", "p": 2, "poly": [1, 1, 1]}
    raise ConfigError(f"unknown ring spec {text!r}")


def cmd_replay(args):
    from .corpus import standard_rings
    from .algebra.modules import ModuleHom, ring_as_module
    from .engine import MainInstance
    from .engine_replay import proof_construction, replay_key_lemma

    data = _load(args.instance)
    rings = standard_rings()
    ring = rings[data["ring"]]
    module = ring_as_module(ring)
    phi = ModuleHom.left_multiplication(module, ring, int(data["mult_by"]))
    K = frozenset(data["K"]) if "K" in data else None
    inst = MainInstance(ring, module, phi, K=K, name=data.get("name", "cli"))
    qa = qa_from_json(_load(args.qa)) if args.qa else None
    replay = proof_construction(inst, qa=qa, n=args.n)
    report = replay.report()
    try:
        report["key_lemma"] = replay_key_lemma(replay)
    except QframeError as exc:
        report["key_lemma"] = {"skipped": str(exc)}
    return report


def cmd_export(args):
    L = lattice_from_json(_load(args.infile))
    if args.format == "dot":
        return lattice_to_dot(L)
    from .io import lattice_to_json

    return canonical_json(lattice_to_json(L))


# -- the orchestrator -----------------------------------------------------------


SUITES = {}


def suite(name):
    def wrap(fn):
        SUITES[name] = fn
        return fn
    return wrap


@suite("lattice")
def _suite_lattice(cfg, rng):
    from .lattice import (
        chain, composition_refine, diamond_m3, divisor_lattice, length,
        lattice_props, pentagon_n5, product, socle_series,
    )

    out = {}
    D = divisor_lattice(12)
    out["divisor12_length"] = length(D)
    out["m3_modular"] = lattice_props(diamond_m3())["modular"]
    out["n5_modular"] = lattice_props(pentagon_n5())["modular"]
    out["product_length"] = length(product(chain(2), chain(3)))
    out["socle_semi_artinian"] = socle_series(D)["semi_artinian"]
    series = composition_refine(D, [D.bottom, D.top])
    out["composition_length"] = len(series) - 1
    ok = (out["divisor12_length"] == 3 and out["m3_modular"]
          and not out["n5_modular"] and out["product_length"] == 3
          and out["composition_length"] == 3)
    return ok, out


@suite("dimension")
def _suite_dimension(cfg, rng):
    from .chains import ChainLattice
    from .dimension import gabriel_dim, krull_dim
    from .dimension_oracle import ChainDimensionOracle
    from .ordinals import parse_ordinal

    oracle = ChainDimensionOracle(parse_ordinal("w*3"), coeff_cap=4)
    mismatches = []
    for extent in oracle.pool:
        closed = krull_dim(ChainLattice(extent, "reversed"))
        closed_val = -1 if closed.kind == "minus_one" else closed.ordinal.as_int()
        if closed_val != oracle.kdim(extent):
            mismatches.append(str(extent))
        gd = gabriel_dim(ChainLattice(extent, "reversed"))
        if (not extent.is_zero
                and gd.ordinal.as_int() != oracle.gdim(extent)):
            mismatches.append(str(extent))
    return not mismatches, {"pool": len(oracle.pool),
                            "mismatches": mismatches}


@suite("torsion")
def _suite_torsion(cfg, rng):
    from .dimension import (
        localize, primary_class, serre_verify, torsion,
        torsion_localize_pipeline,
    )
    from .lattice import divisor_lattice

    D = divisor_lattice(12)
    cls = serre_verify(primary_class(2), D)
    tors = torsion(D, cls)
    out = {"torsion_element": D.label(tors["t"])}
    loc = localize(D, cls)
    out["localized_size"] = loc["Q"].n
    pipe = torsion_localize_pipeline(D, 0)
    out["pipeline_semi_artinian"] = pipe["semi_artinian"]
    ok = out["torsion_element"] == 4 and out["localized_size"] == 2
    return ok and pipe["semi_artinian"], out


@suite("sofic")
def _suite_sofic(cfg, rng):
    from .sofic import finite_quotient_action, good_points

    qa = finite_quotient_action(500, [-1, 0, 1])
    rep = good_points(qa, [-1, 0, 1], 10)
    out = {"vbar": rep["bounds"]["vbar_size"], "w": rep["bounds"]["w_size"]}
    return out["vbar"] == 500 and out["w"] == 166, out


@suite("exclusivity")
def _suite_exclusivity(cfg, rng):
    from .corpus import exclusivity_sweep, instance_corpus

    count = cfg.get("caps", {}).get("exclusivity_instances", 60)
    instances = instance_corpus(seed=cfg.get("seed", 0), min_count=1)
    report = exclusivity_sweep(instances[:count])
    return report["both"] == 0, report


@suite("surjunctivity")
def _suite_surjunctivity(cfg, rng):
    from .algebra import GF, FiniteGroup
    from .algebra.modules import ring_as_module
    from .automata import surjunctivity_suite

    F2 = GF(2)
    shapes = [
        {"group": FiniteGroup.cyclic(2), "module": ring_as_module(F2)},
        {"group": FiniteGroup.cyclic(3), "module": ring_as_module(F2)},
    ]
    rep = surjunctivity_suite(shapes)
    return True, rep


@suite("stable_finiteness")
def _suite_stable_finiteness(cfg, rng):
    from .algebra import GF, FiniteGroup, galois_crossed_spec, verify_crossed
    from .algebra.finiteness import stable_finiteness_check

    F4 = GF(2, [1, 1, 1])
    ring = verify_crossed(
        galois_crossed_spec(F4, FiniteGroup.cyclic(2), F4.frobenius))
    rep = stable_finiteness_check(ring, 1)
    return not rep["violations"], rep


@suite("duality")
def _suite_duality(cfg, rng):
    from .algebra import GF, FiniteGroup
    from .duality import end_anti_iso

    rep = end_anti_iso(FiniteGroup.cyclic(2), 1, GF(2))
    return rep["bijective_onto_matrices"], rep


@suite("replay")
def _suite_replay(cfg, rng):
    from .corpus import standard_rings
    from .algebra.modules import ModuleHom, ring_as_module
    from .engine import MainInstance
    from .engine_replay import proof_construction, replay_key_lemma

    ring = standard_rings()["F2[C3]"]
    module = ring_as_module(ring)
    phi = ModuleHom.left_multiplication(
        module, ring, ring.from_coefficients([1, 1, 0]))
    inst = MainInstance(ring, module, phi,
                        K=frozenset(ring.group.elements()), name="suite")
    replay = proof_construction(inst)
    key = replay_key_lemma(replay)
    return key["satisfied"], {"replay": replay.report(), "key": key}


@suite("fault_injection")
def _suite_fault_injection(cfg, rng):
    """Deliberately broken inputs must be rejected; the report records the
    rejections as expected failures (still exit 0)."""
    from .errors import NotALattice, NotSegmentPreserving, QframeError
    from .lattice import chain, verify_lattice
    from .maps import verify_hom

    out = {}
    try:
        verify_lattice([[1, 0, 0, 0], [0, 1, 0, 0],
                        [0, 0, 1, 0], [1, 1, 0, 1]])
        out["no_top"] = "UNEXPECTED PASS"
    except NotALattice:
        out["no_top"] = "rejected as expected"
    try:
        verify_hom(chain(2), chain(3), [0, 2])
        out["segment_gap"] = "UNEXPECTED PASS"
    except NotSegmentPreserving:
        out["segment_gap"] = "rejected as expected"
    ok = all(v == "rejected as expected" for v in out.values())
    return ok, out


def cmd_run(args):
    cfg = _load(args.config) if args.config else {
        "schema": SCHEMA, "seed": 0,
        "suites": sorted(SUITES),
        "caps": {},
    }
    if "suites" not in cfg:
        raise ConfigError("config needs a 'suites' list")
    import random as _random

    rng = _random.Random(cfg.get("seed", 0))
    report = {"schema": SCHEMA, "seed": cfg.get("seed", 0), "suites": {}}
    all_ok = True
    for name in cfg["suites"]:
        if name not in SUITES:
            raise ConfigError(f"unknown suite {name!r}")
        ok, out = SUITES[name](cfg, rng)
        report["suites"][name] = {"pass": bool(ok), "report": out}
        all_ok = all_ok and ok
    report["pass"] = all_ok
    return report, (0 if all_ok else 1)


def build_parser():
    p = argparse.ArgumentParser(
        prog="qframes",
        description="lattice workbench: qframes, dimensions, crossed "
                    "products, cellular automata, sofic approximations")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check-qframe", help="validate a lattice file")
    s.add_argument("--in", dest="infile", required=True)
    s.set_defaults(fn=cmd_check_qframe)

    s = sub.add_parser("length", help="composition length")
    s.add_argument("--in", dest="infile", required=True)
    s.set_defaults(fn=cmd_length)

    s = sub.add_parser("dimension", help="Krull/Gabriel dimension")
    s.add_argument("--in", dest="infile", required=True)
    s.add_argument("--what", choices=["krull", "gabriel", "both"],
                   default="both")
    s.set_defaults(fn=cmd_dimension)

    s = sub.add_parser("quotient", help="quotient by a strong congruence")
    s.add_argument("--in", dest="infile", required=True)
    s.add_argument("--congruence", required=True)
    s.set_defaults(fn=cmd_quotient)

    s = sub.add_parser("sofic-verify", help="certify a quasi-action")
    s.add_argument("--qa", required=True)
    s.add_argument("--K", required=True, help="comma-separated window")
    s.add_argument("--eps", required=True)
    s.add_argument("--n", type=int, default=0)
    s.set_defaults(fn=cmd_sofic_verify)

    s = sub.add_parser("surjunctivity", help="CA analysis or shape suite")
    s.add_argument("--shape", required=True)
    s.add_argument("--mode", choices=["exhaustive"], default="exhaustive")
    s.set_defaults(fn=cmd_surjunctivity)

    s = sub.add_parser("stable-finiteness", help="xy=1 => yx=1 harness")
    s.add_argument("--ring", required=True)
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--mode", choices=["auto", "exhaustive", "sample"],
                   default="auto")
    s.add_argument("--samples", type=int, default=100_000)
    s.set_defaults(fn=cmd_stable_finiteness)

    s = sub.add_parser("duality", help="double-dual / anti-isomorphism")
    s.add_argument("--ring", required=True, help="e.g. Z/4 or F2")
    s.add_argument("--check", choices=["double-dual", "anti-iso"],
                   required=True)
    s.add_argument("--G", default="cyclic:2")
    s.add_argument("--n", type=int, default=1)
    s.set_defaults(fn=cmd_duality)

    s = sub.add_parser("replay-main-theorem", help="proof replay")
    s.add_argument("--instance", required=True)
    s.add_argument("--qa", default=None)
    s.add_argument("--n", type=int, default=None)
    s.set_defaults(fn=cmd_replay)

    s = sub.add_parser("export", help="emit JSON or DOT")
    s.add_argument("--in", dest="infile", required=True)
    s.add_argument("--format", choices=["json", "dot"], default="json")
    s.set_defaults(fn=cmd_export)

    s = sub.add_parser("run", help="run the orchestrated suites")
    s.add_argument("--config", default=None)
    s.add_argument("--out", default=None)
    s.set_defaults(fn=cmd_run)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0,) else 0
    try:
        result = args.fn(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (QframeError, AssertionError) as exc:
        print(f"assertion failure: {exc}", file=sys.stderr)
        return 1
    code = 0
    if isinstance(result, tuple):
        result, code = result
    text = result if isinstance(result, str) else canonical_json(result)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
