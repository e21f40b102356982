"""Command line front end.

Reports go to stdout as JSON, diagnostics to stderr. Exit codes: 0 when
every requested check holds, 1 when a check fails or a wrapped operation
raises, 2 on unreadable or invalid input.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Sequence

from . import sampling
from .algebra import AlgebraSpec, StructureTensor, check_axioms, multiply
from .constructions import GALLERY_NAMES, ast_product, gallery, ideal_Ae, star_product
from .errors import SpecFormatError, WorkbenchError
from .lattice import Element, Functional, fraction_str, is_am_norm, norm, order_unit_of_ball
from .representation import martignon_products, quotient_representation, represent_am_unit, subalgebra_check
from .sparse import (SparseSeq, approx_algebraic_identity_witness, approx_order_unit_witness, identity_failure,
                     seq_norm, seq_ops, unit_prefix, verify_f_algebra_sparse)
from .specfile import emit_spec, parse_constraints, parse_spec

TAGS = {
    "positive_product": "lattice algebra: products of positive elements are positive",
    "associative": "Banach algebra: associativity",
    "submultiplicative": "Banach algebra: submultiplicative norm",
    "identity": "algebra with identity",
    "identity_norm_one": "Banach lattice algebra with identity of norm one",
    "f_algebra": "f-algebra: necessary for a sublattice-algebra of C(K)",
    "almost_f_algebra": "almost f-algebra: disjoint elements multiply to zero",
    "am_norm": "AM-space: ||x v y|| = max(||x||, ||y||) on positives",
    "am_unit": "AM-algebra with unit: the identity is the order unit",
}


class InputError(Exception):
    pass


def jsonify(obj: Any, shift: int = 0) -> Any:
    """Plain JSON data; ``shift`` is added to bare ints, which in witnesses are indices."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, float)):
        return obj
    if isinstance(obj, int):
        return obj + shift
    if isinstance(obj, Fraction):
        return fraction_str(obj)
    if isinstance(obj, Element):
        return [fraction_str(a) for a in obj]
    if isinstance(obj, dict):
        return {str(k): jsonify(v, shift) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [jsonify(v, shift) for v in items]
    return repr(obj)


def tensor_entries(t: StructureTensor) -> list:
    return [[i + 1, j + 1, k + 1, fraction_str(v)] for i, j, k, v in t.entries]


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def _load_spec(path: str) -> AlgebraSpec:
    try:
        return parse_spec(_read(path))
    except SpecFormatError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _vector(text: str, dim: int, what: str) -> list[Fraction]:
    try:
        vals = [Fraction(v.strip()) for v in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{what}: {exc}") from exc
    if len(vals) != dim:
        raise InputError(f"{what}: expected {dim} comma-separated values, got {len(vals)}")
    return vals


def _sampled_submultiplicativity(a: AlgebraSpec, bound: Fraction, rng: random.Random, count: int) -> dict:
    """Random re-check that ``||xy|| <= bound ||x|| ||y||``, independent of the extreme-point argument."""
    for _ in range(count):
        x, y = sampling.element(rng, a.dim), sampling.element(rng, a.dim)
        if norm(multiply(x, y, a.tensor), a.norm) > bound * norm(x, a.norm) * norm(y, a.norm):
            return {"samples": count, "consistent": False, "x": jsonify(x), "y": jsonify(y)}
    return {"samples": count, "consistent": True}


def cmd_check(args) -> tuple[dict, int]:
    a = _load_spec(args.file)
    rep = check_axioms(a)
    am = is_am_norm(a.norm)
    unit = order_unit_of_ball(a.norm)
    flags = {
        "positive_product": rep.positive_product,
        "associative": rep.associative,
        "submultiplicative": rep.submultiplicative,
        "identity": rep.identity is not None,
        "identity_norm_one": rep.identity_norm_one,
        "f_algebra": rep.f_algebra,
        "almost_f_algebra": rep.almost_f_algebra,
        "am_norm": am.holds,
        "am_unit": rep.identity is not None and rep.identity == unit,
    }
    witnesses = dict(rep.witnesses)
    if not am:
        witnesses["am_norm"] = {"x": am.witness[0], "y": am.witness[1]}
    if not flags["am_unit"]:
        witnesses["am_unit"] = {"identity": rep.identity, "order_unit": unit}
    required = args.require.split(",") if args.require else list(flags)
    unknown = set(required) - flags.keys()
    if unknown:
        raise InputError(f"--require: unknown check(s) {sorted(unknown)}")
    checks = {}
    for name, value in flags.items():
        entry = {"holds": value, "tag": TAGS[name]}
        if name in witnesses and not value:
            # bare ints in witnesses are 0-based indices
            entry["witness"] = jsonify(witnesses[name], shift=1)
        checks[name] = entry
    rng = random.Random(args.seed)
    report = {
        "command": "check",
        "label": a.label,
        "dimension": a.dim,
        "identity": jsonify(rep.identity),
        "product_norm": fraction_str(rep.product_norm),
        "checks": checks,
        "sampled_submultiplicativity": _sampled_submultiplicativity(a, rep.product_norm, rng, args.samples),
        "seed": args.seed,
        "required": required,
    }
    ok = all(flags[name] is True for name in required)
    report["all_hold"] = ok
    return report, 0 if ok else 1


def cmd_represent(args) -> tuple[dict, int]:
    a = _load_spec(args.file)
    r = represent_am_unit(a)
    return {"command": "represent", "label": a.label, "scaling": jsonify(r.scaling),
            "transported_tensor": tensor_entries(r.transported_tensor), "is_pointwise": r.is_pointwise}, 0


def cmd_quotient(args) -> tuple[dict, int]:
    try:
        cs = parse_constraints(_read(args.file))
    except SpecFormatError as exc:
        raise InputError(f"{args.file}: {exc}") from exc
    verdict = subalgebra_check(cs)
    if not verdict:
        return {"command": "quotient", "subalgebra": False, "witness": jsonify(verdict.witness)}, 1
    q = quotient_representation(cs)
    return {
        "command": "quotient",
        "subalgebra": True,
        "classes": jsonify(q.classes, shift=1),
        "zero_set": jsonify(q.zero_set, shift=1),
        "solution_dimension": q.dimension,
        "vanishing_ideal_dimension": len(q.classes) - len(q.zero_set),
        "basis": jsonify(q.basis),
        "images": jsonify(q.images),
    }, 0


def cmd_alt_product(args) -> tuple[dict, int]:
    a = _load_spec(args.file)
    if args.kind == "star":
        if args.alpha is None or args.beta is None:
            raise InputError("--kind star needs --alpha and --beta")
        res = star_product(a, args.alpha - 1, args.beta - 1)
    else:
        if args.phi is None or args.x0 is None:
            raise InputError("--kind ast needs --phi and --x0")
        phi = Functional(_vector(args.phi, a.dim, "--phi"))
        x0 = Element(_vector(args.x0, a.dim, "--x0"))
        res = ast_product(a, phi, x0)
    label = f"{args.kind} product of {a.label}" if a.label else f"{args.kind} product"
    new_spec = AlgebraSpec(a.norm, res.tensor, label)
    text = emit_spec(new_spec)
    report = {
        "command": "alt-product",
        "kind": res.kind,
        "associative": res.associative,
        "positive": res.positive,
        "identity_preserved": res.identity_preserved,
        "identity": jsonify(res.identity),
        "differences": jsonify(res.differences, shift=1),
        "witness": jsonify(res.witness, shift=1),
    }
    if args.output:
        Path(args.output).write_text(text)
        report["output"] = args.output
    else:
        report["spec"] = json.loads(text)
    return report, 0


def cmd_martignon(args) -> tuple[dict, int]:
    sols = martignon_products(args.n)
    unique = sols == {StructureTensor.kronecker(args.n)}
    msg = "unique solution: pointwise" if unique else f"{len(sols)} solution(s), not the pointwise singleton"
    return {"command": "martignon", "n": args.n, "solutions": [tensor_entries(t) for t in sols],
            "unique_pointwise": unique, "message": msg}, 0 if unique else 1


def cmd_gallery(args) -> tuple[Any, int]:
    if args.action == "list":
        return {"command": "gallery", "names": list(GALLERY_NAMES)}, 0
    if not args.name:
        raise InputError("gallery emit needs a name")
    weights = _vector(args.weights, args.n or 0, "--weights") if args.weights else None
    try:
        spec = gallery(args.name, args.n, weights)
    except WorkbenchError as exc:
        raise InputError(str(exc)) from exc
    return emit_spec(spec), 0


def cmd_ideal(args) -> tuple[dict, int]:
    a = _load_spec(args.file)
    r = ideal_Ae(a, samples=args.samples, seed=args.seed)
    ok = r.norms_agree and r.spectral_max_error <= 1e-9
    return {"command": "ideal", "support": jsonify(r.support, shift=1), "identity": jsonify(r.identity),
            "norms_agree": r.norms_agree, "ambient_submultiplicative": r.ambient_submultiplicative,
            "samples": r.samples_checked, "spectral_max_error": r.spectral_max_error,
            "order_unit_weights": jsonify(r.sub_spec.norm.weights)}, 0 if ok else 1


def cmd_demo_sparse(args) -> tuple[dict, int]:
    rng = random.Random(args.seed)
    unit_ok = ident_ok = True
    for _ in range(args.samples):
        f = sampling.sparse_functional(rng)
        n0 = approx_order_unit_witness(f)
        unit_ok &= all(f(unit_prefix(n)) == f.norm() for n in range(n0, n0 + 5))
        x = sampling.sparse_seq(rng)
        m0 = approx_algebraic_identity_witness(x)
        ident_ok &= all(seq_norm(seq_ops(seq_ops(unit_prefix(n), x, "mul"), x, "sub")) == 0
                        for n in range(m0, m0 + 5))
    triples = []
    for _ in range(args.samples):
        x = sampling.sparse_seq(rng, positive=True)
        y = sampling.sparse_seq(rng, positive=True)
        y = SparseSeq({i: v for i, v in y.entries if i not in x.support})
        triples.append((x, y, sampling.sparse_seq(rng, positive=True)))
    x = sampling.sparse_seq(rng)
    j, _ = identity_failure(x)
    f_ok = verify_f_algebra_sparse(triples)
    ok = unit_ok and ident_ok and f_ok
    return {"command": "demo-sparse", "seed": args.seed, "samples": args.samples,
            "approximate_order_unit": unit_ok, "approximate_identity": ident_ok, "f_algebra_samples": f_ok,
            "identity_failure_example": {"x": {str(i): fraction_str(v) for i, v in x.entries}, "atom": j}}, 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    p = argparse.ArgumentParser(prog="blalg", description="Banach lattice algebra workbench")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="run the axiom battery on a spec file")
    c.add_argument("file")
    c.add_argument("--require", help="comma-separated checks that decide the exit code (default: all)")
    c.add_argument("--samples", type=int, default=200)
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("represent", parents=[common], help="isometry of an AM-algebra with unit onto pointwise R^n")
    c.add_argument("file")
    c.set_defaults(func=cmd_represent)

    c = sub.add_parser("quotient", parents=[common], help="quotient representation of a constraint system")
    c.add_argument("file")
    c.set_defaults(func=cmd_quotient)

    c = sub.add_parser("alt-product", parents=[common], help="build an alternative product with the same identity")
    c.add_argument("file")
    c.add_argument("--kind", choices=("star", "ast"), required=True)
    c.add_argument("--alpha", type=int, help="star: 1-based index of the left point evaluation")
    c.add_argument("--beta", type=int, help="star: 1-based index of the right point evaluation")
    c.add_argument("--phi", help="ast: functional as comma-separated rationals")
    c.add_argument("--x0", help="ast: element as comma-separated rationals")
    c.add_argument("--output", "-o", help="write the new spec here instead of embedding it in the report")
    c.set_defaults(func=cmd_alt_product)

    c = sub.add_parser("martignon", parents=[common], help="all positive products on R^n with identity (1,...,1)")
    c.add_argument("n", type=int)
    c.set_defaults(func=cmd_martignon)

    c = sub.add_parser("gallery", parents=[common], help="list or emit the example algebras")
    c.add_argument("action", choices=("list", "emit"))
    c.add_argument("name", nargs="?")
    c.add_argument("n", nargs="?", type=int)
    c.add_argument("--weights", help="pointwise: comma-separated weights")
    c.set_defaults(func=cmd_gallery)

    c = sub.add_parser("ideal", parents=[common], help="ideal generated by the identity, with norm comparison")
    c.add_argument("file")
    c.add_argument("--samples", type=int, default=100)
    c.set_defaults(func=cmd_ideal)

    c = sub.add_parser("demo-sparse", parents=[common], help="approximate units in finitely supported sequences")
    c.add_argument("--samples", type=int, default=100)
    c.set_defaults(func=cmd_demo_sparse)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out, code = args.func(args)
    except InputError as exc:
        print(f"blalg: error: {exc}", file=sys.stderr)
        return 2
    except WorkbenchError as exc:
        print(f"blalg: {type(exc).__name__}: {exc}", file=sys.stderr)
        print(json.dumps({"command": args.command, "error": type(exc).__name__, "message": str(exc)}, indent=2))
        return 1
    sys.stdout.write(out if isinstance(out, str) else json.dumps(out, indent=2) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
