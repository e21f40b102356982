"""JSON file formats: algebra specs and constraint systems.

Files use 1-based indices and rationals written as ``"p/q"`` strings in
lowest terms with ``q > 0`` (``"p"`` for integers; bare JSON integers are
accepted too). In memory everything is 0-based.

Algebra spec::

    {"dimension": 2,
     "norm": {"kind": "weighted_sup", "weights": ["1", "1"]},
     "product": {"entries": [[1, 1, 2, "1"]]}}

Constraint system::

    {"ambient": 3, "constraints": [[1, 2, "1"], [3, 1, "0"]]}
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from math import gcd
from typing import Any, Optional

from .algebra import AlgebraSpec, StructureTensor
from .errors import SpecFormatError
from .lattice import NormKind, NormSpec, fraction_str
from .representation import ConstraintSystem

_RATIONAL = re.compile(r"^(-?\d+)(?:/(\d+))?$")


def _line_of(text: Optional[str], needle: str) -> str:
    if not text:
        return ""
    pos = text.find(needle)
    if pos < 0:
        return ""
    return f" (line {text.count(chr(10), 0, pos) + 1})"


class _Reader:
    def __init__(self, text: Optional[str]):
        self.text = text

    def fail(self, path: str, message: str, needle: Optional[str] = None) -> SpecFormatError:
        return SpecFormatError(f"{path}: {message}{_line_of(self.text, needle or path.rsplit('.', 1)[-1])}")

    def rational(self, value: Any, path: str) -> Fraction:
        if isinstance(value, bool) or isinstance(value, float):
            raise self.fail(path, f"expected a rational string, got {value!r}", json.dumps(value))
        if isinstance(value, int):
            return Fraction(value)
        if not isinstance(value, str):
            raise self.fail(path, f"expected a rational string, got {value!r}", json.dumps(value))
        m = _RATIONAL.match(value.strip())
        if not m:
            raise self.fail(path, f"{value!r} is not of the form 'p/q'", json.dumps(value))
        p, q = int(m.group(1)), int(m.group(2) or 1)
        if q == 0:
            raise self.fail(path, f"{value!r} has zero denominator", json.dumps(value))
        if gcd(p, q) != 1 and p != 0:
            raise self.fail(path, f"{value!r} is not in lowest terms", json.dumps(value))
        return Fraction(p, q)

    def integer(self, value: Any, path: str, lo: int, hi: Optional[int] = None) -> int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise self.fail(path, f"expected an integer, got {value!r}", json.dumps(value))
        if value < lo or (hi is not None and value > hi):
            bound = f"[{lo}, {hi}]" if hi is not None else f">= {lo}"
            raise self.fail(path, f"{value} is out of range {bound}", json.dumps(value))
        return value

    def obj(self, value: Any, path: str, keys: set, optional: set = frozenset()) -> dict:
        if not isinstance(value, dict):
            raise self.fail(path, "expected a JSON object")
        missing = keys - value.keys()
        extra = value.keys() - keys - optional
        if missing:
            raise self.fail(path, f"missing key(s) {sorted(missing)}")
        if extra:
            raise self.fail(path, f"unknown key(s) {sorted(extra)}", f'"{sorted(extra)[0]}"')
        return value

    def array(self, value: Any, path: str) -> list:
        if not isinstance(value, list):
            raise self.fail(path, "expected a JSON array")
        return value


def _load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFormatError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def parse_spec(text: str) -> AlgebraSpec:
    r = _Reader(text)
    doc = r.obj(_load_json(text), "spec", {"dimension", "norm", "product"}, {"label"})
    dim = r.integer(doc["dimension"], "dimension", 1)
    label = doc.get("label")
    if label is not None and not isinstance(label, str):
        raise r.fail("label", "expected a string")

    nrm = r.obj(doc["norm"], "norm", {"kind", "weights"})
    kinds = [k.value for k in NormKind]
    if nrm["kind"] not in kinds:
        raise r.fail("norm.kind", f"{nrm['kind']!r} is not one of {kinds}", "kind")
    weights = r.array(nrm["weights"], "norm.weights")
    if len(weights) != dim:
        raise r.fail("norm.weights", f"expected {dim} weights, got {len(weights)}", "weights")
    w = [r.rational(v, f"norm.weights[{n}]") for n, v in enumerate(weights)]
    for n, v in enumerate(w):
        if v <= 0:
            raise r.fail(f"norm.weights[{n}]", f"weight {fraction_str(v)} is not positive", json.dumps(weights[n]))

    prod = r.obj(doc["product"], "product", {"entries"})
    seen = set()
    entries = []
    for n, item in enumerate(r.array(prod["entries"], "product.entries")):
        path = f"product.entries[{n}]"
        item = r.array(item, path)
        if len(item) != 4:
            raise r.fail(path, f"expected [i, j, k, value], got {item!r}", json.dumps(item))
        i, j, k = (r.integer(v, path, 1, dim) for v in item[:3])
        if (i, j, k) in seen:
            raise r.fail(path, f"duplicate entry for ({i}, {j}, {k})", json.dumps(item[:3])[:-1])
        seen.add((i, j, k))
        entries.append((i - 1, j - 1, k - 1, r.rational(item[3], path)))
    return AlgebraSpec(NormSpec(nrm["kind"], w), StructureTensor.from_entries(dim, entries), label)


def emit_spec(a: AlgebraSpec) -> str:
    """Canonical text: one tensor entry per line, entries sorted, zeros omitted."""
    head = [f'  "dimension": {a.dim},']
    if a.label is not None:
        head.append(f'  "label": {json.dumps(a.label)},')
    weights = ", ".join(json.dumps(fraction_str(w)) for w in a.norm.weights)
    head.append(f'  "norm": {{"kind": "{a.norm.kind.value}", "weights": [{weights}]}},')
    rows = [f'      [{i + 1}, {j + 1}, {k + 1}, {json.dumps(fraction_str(v))}]' for i, j, k, v in a.tensor.entries]
    body = "\n" + ",\n".join(rows) + "\n    " if rows else ""
    return "{\n" + "\n".join(head) + f'\n  "product": {{\n    "entries": [{body}]\n  }}\n}}\n'


def parse_constraints(text: str) -> ConstraintSystem:
    r = _Reader(text)
    doc = r.obj(_load_json(text), "constraints file", {"ambient", "constraints"})
    m = r.integer(doc["ambient"], "ambient", 1)
    cons = []
    for n, item in enumerate(r.array(doc["constraints"], "constraints")):
        path = f"constraints[{n}]"
        item = r.array(item, path)
        if len(item) != 3:
            raise r.fail(path, f"expected [t, s, lambda], got {item!r}", json.dumps(item))
        t, s = (r.integer(v, path, 1, m) for v in item[:2])
        lam = r.rational(item[2], path)
        if lam < 0:
            raise r.fail(path, f"scalar {fraction_str(lam)} is negative", json.dumps(item[2]))
        cons.append((t - 1, s - 1, lam))
    return ConstraintSystem(m, cons)


def emit_constraints(cs: ConstraintSystem) -> str:
    rows = [f"    [{t + 1}, {s + 1}, {json.dumps(fraction_str(lam))}]" for t, s, lam in cs.constraints]
    body = "\n" + ",\n".join(rows) + "\n  " if rows else ""
    return f'{{\n  "ambient": {cs.ambient_dim},\n  "constraints": [{body}]\n}}\n'
