"""Named example algebras, the ideal generated by the identity, and alternative products.

The alternative products show that an identity and an order do not pin
down the product unless the algebra is a full ``C(K)``:

* ``star``: ``x * y = Px Py + alpha(Px) Pd y + Pd x beta(Py)`` where ``P``
  is the band projection onto the ideal ``A_e`` and ``alpha``, ``beta`` are
  point evaluations on ``A_e``.
* ``ast``: when ``A_e`` is one-dimensional and the complement multiplies
  to zero, ``x = lam e + x'`` and
  ``x * y = lam mu e + lam y' + mu x' + phi(x') phi(y') x0``.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct
from typing import Optional, Sequence

from .algebra import (AlgebraSpec, AxiomReport, StructureTensor, associativity_witness, check_axioms, is_identity, multiply,
                      negative_entry)
from .errors import (AxiomFailure, BadParameter, IndexOutsideSupport, NoIdentity, PreconditionViolated,
                     TheoremViolation)
from .lattice import (Element, Functional, NormSpec, Scalar, as_fraction, band_projection, norm,
                      order_unit_norm)
from .representation import RepresentationResult, represent_am_unit

GALLERY_NAMES = ("pointwise", "twisted_linf2", "c0_R", "cyclic_convolution", "zero_product")


def pointwise(n: int, weights: Optional[Sequence[Scalar]] = None) -> AlgebraSpec:
    """``R^n`` with weighted sup norm and ``e_k e_k = w_k e_k``: an AM-algebra with unit ``(1/w_k)``."""
    w = [as_fraction(v) for v in weights] if weights is not None else [Fraction(1)] * n
    if len(w) != n:
        raise BadParameter(f"pointwise({n}) needs {n} weights, got {len(w)}")
    return AlgebraSpec(NormSpec.sup(w), StructureTensor.kronecker(n, w), f"pointwise({n})")


def twisted_linf2() -> AlgebraSpec:
    """``(x1, y1)(x2, y2) = (0, x1 x2)`` on sup-normed ``R^2``."""
    return AlgebraSpec(NormSpec.sup(2), StructureTensor.from_entries(2, [(0, 0, 1, 1)]), "twisted_linf2")


def c0_R(n: int) -> AlgebraSpec:
    """``R^n + R`` with ``(x, lam)(y, mu) = (xy + lam y + mu x, lam mu)``."""
    u = n
    entries = [(k, k, k, 1) for k in range(n)]
    entries += [(u, k, k, 1) for k in range(n)]
    entries += [(k, u, k, 1) for k in range(n)]
    entries.append((u, u, u, 1))
    return AlgebraSpec(NormSpec.sup(n + 1), StructureTensor.from_entries(n + 1, entries), f"c0_R({n})")


def cyclic_convolution(n: int) -> AlgebraSpec:
    """Group algebra of ``Z/n`` with the l1 norm; ``e_i e_j = e_{i+j mod n}``."""
    entries = [(i, j, (i + j) % n, 1) for i, j in iproduct(range(n), repeat=2)]
    return AlgebraSpec(NormSpec.l1(n), StructureTensor.from_entries(n, entries), f"cyclic_convolution({n})")


def zero_product(n: int) -> AlgebraSpec:
    """Sup-normed ``R^n`` with the zero product, with an identity atom adjoined at index ``n``."""
    u = n
    entries = [(u, k, k, 1) for k in range(n)] + [(k, u, k, 1) for k in range(n)] + [(u, u, u, 1)]
    return AlgebraSpec(NormSpec.sup(n + 1), StructureTensor.from_entries(n + 1, entries), f"zero_product({n})")


def gallery(name: str, n: Optional[int] = None, weights: Optional[Sequence[Scalar]] = None) -> AlgebraSpec:
    if name not in GALLERY_NAMES:
        raise BadParameter(f"unknown gallery entry {name!r}; choose from {', '.join(GALLERY_NAMES)}")
    if name == "twisted_linf2":
        if n not in (None, 2):
            raise BadParameter("twisted_linf2 has no size parameter")
        return twisted_linf2()
    if n is None or n < 1:
        raise BadParameter(f"{name} needs a size n >= 1")
    if weights is not None and name != "pointwise":
        raise BadParameter(f"{name} takes no weights")
    try:
        builder = {"pointwise": lambda: pointwise(n, weights), "c0_R": lambda: c0_R(n),
                   "cyclic_convolution": lambda: cyclic_convolution(n), "zero_product": lambda: zero_product(n)}
        return builder[name]()
    except ValueError as exc:
        raise BadParameter(str(exc)) from exc


def _unital_report(a: AlgebraSpec) -> AxiomReport:
    """Axiom report of a vector lattice algebra with identity; the norm is not required to behave."""
    report = check_axioms(a)
    for flag in ("positive_product", "associative"):
        if not getattr(report, flag):
            raise AxiomFailure(f"{flag} fails: {report.witnesses.get(flag)}")
    if report.identity is None:
        raise NoIdentity("the product has no two-sided identity")
    return report


def _unital(a: AlgebraSpec) -> Element:
    return _unital_report(a).identity


def restrict(a: AlgebraSpec, support: Sequence[int], weights: Sequence[Fraction]) -> AlgebraSpec:
    """The subalgebra on coordinates ``support`` (in that order), with a sup norm."""
    idx = {p: q for q, p in enumerate(support)}
    entries = []
    for i, j, k, v in a.tensor.entries:
        if i in idx and j in idx:
            if k not in idx:
                raise TheoremViolation(f"product of e_{i}, e_{j} leaves the ideal")
            entries.append((idx[i], idx[j], idx[k], v))
    return AlgebraSpec(NormSpec.sup(weights), StructureTensor.from_entries(len(support), entries))


@dataclass(frozen=True)
class IdealReport:
    """The ideal ``A_e`` with its order-unit norm, and how that norm compares to the ambient one."""

    support: tuple[int, ...]
    identity: Element
    sub_spec: AlgebraSpec
    representation: RepresentationResult
    samples_checked: int
    norms_agree: bool
    ambient_submultiplicative: bool
    norm_mismatch: Optional[Element] = None
    spectral_checked: int = 0
    spectral_max_error: float = 0.0


def spectral_radius_estimate(x: Element, a: AlgebraSpec, depth: int = 12) -> float:
    """``||x^(2^depth)||^(1 / 2^depth)`` by repeated squaring in floating point.

    Each square is renormalised to keep the numbers finite; the logarithm
    of the discarded scale is accumulated.
    """
    t, w = a.tensor, a.norm
    y = [float(v) for v in x]
    nrm = float(norm(x, w))
    if nrm == 0:
        return 0.0
    log_norm = math.log(nrm)
    y = [v / nrm for v in y]
    entries = [(i, j, k, float(v)) for i, j, k, v in t.entries]
    weights = [float(v) for v in w.weights]
    for _ in range(depth):
        sq = [0.0] * t.dim
        for i, j, k, v in entries:
            sq[k] += y[i] * y[j] * v
        terms = [wk * abs(v) for wk, v in zip(weights, sq)]
        s = max(terms) if w.kind.value == "weighted_sup" else sum(terms)
        if s == 0:
            return 0.0
        log_norm = 2 * log_norm + math.log(s)
        y = [v / s for v in sq]
    return math.exp(log_norm / 2 ** depth)


def ideal_Ae(a: AlgebraSpec, samples: int = 100, seed: int = 0, spectral: bool = True,
             depth: int = 12) -> IdealReport:
    """Restrict to the ideal generated by the identity and compare norms on it.

    ``A_e`` is the band of coordinates where ``e`` is positive, normed by
    ``||x||_e = max |x_k| / e_k``. For an identity of norm one this order-unit
    norm agrees with the ambient norm, and for positive ``x`` it is the
    spectral radius. Both facts rely on the ambient norm being
    submultiplicative, which is reported rather than required.
    """
    report = _unital_report(a)
    e = report.identity
    if norm(e, a.norm) != 1:
        raise PreconditionViolated("identity of norm one", f"||e|| = {norm(e, a.norm)}")
    band = band_projection(e)
    support = tuple(sorted(band.support))
    sub = restrict(a, support, [1 / e[k] for k in support])
    rep = represent_am_unit(sub)

    rng = random.Random(seed)
    mismatch = None
    max_err = 0.0
    checked = 0
    for _ in range(samples):
        coords = [Fraction(0)] * a.dim
        for k in support:
            coords[k] = Fraction(rng.randint(-50, 50), rng.randint(1, 12))
        x = Element(coords)
        if order_unit_norm(x, e) != norm(x, a.norm) and mismatch is None:
            mismatch = x
        if spectral:
            xp = Element(abs(v) for v in x)
            max_err = max(max_err, abs(spectral_radius_estimate(xp, a, depth) - float(order_unit_norm(xp, e))))
            checked += 1
    return IdealReport(support, e, sub, rep, samples, mismatch is None, report.submultiplicative, mismatch,
                       checked, max_err)


@dataclass(frozen=True)
class ProductConstruction:
    """An alternative product together with the checks it passed.

    ``differences`` lists basis pairs ``(i, j)`` where the new product
    disagrees with the original one. ``witness`` is construction specific.
    """

    kind: str
    tensor: StructureTensor
    identity: Element
    associative: bool
    positive: bool
    identity_preserved: bool
    differences: tuple[tuple[int, int], ...]
    witness: dict = field(default_factory=dict)


def _tensor_from_rule(d: int, rule) -> StructureTensor:
    entries = []
    for i, j in iproduct(range(d), repeat=2):
        prod = rule(Element.atom(d, i), Element.atom(d, j))
        entries.extend((i, j, k, v) for k, v in enumerate(prod) if v)
    return StructureTensor.from_entries(d, entries)


def _finish(kind: str, a: AlgebraSpec, t: StructureTensor, e: Element, witness: dict) -> ProductConstruction:
    d = a.dim
    diffs = tuple((i, j) for i, j in iproduct(range(d), repeat=2)
                  if t.c[i][j] != a.tensor.c[i][j])
    result = ProductConstruction(kind, t, e, associativity_witness(t) is None, negative_entry(t) is None,
                                 is_identity(e, t), diffs, witness)
    if not (result.associative and result.positive and result.identity_preserved):
        raise TheoremViolation(f"{kind} product fails its checks: {result}")
    return result


def star_product(a: AlgebraSpec, alpha_idx: int, beta_idx: int) -> ProductConstruction:
    """``x * y = Px Py + alpha(Px) Pd y + Pd x beta(Py)`` with point evaluations ``alpha``, ``beta``.

    ``alpha(x) = x_alpha / e_alpha`` is the evaluation that corresponds to a
    point of ``K`` once ``A_e`` is identified with ``C(K)``.
    """
    e = _unital(a)
    band = band_projection(e)
    for name, idx in (("alpha", alpha_idx), ("beta", beta_idx)):
        if idx not in band.support:
            raise IndexOutsideSupport(f"{name} index {idx} is outside the support {sorted(band.support)} of e")
    t = a.tensor

    def alpha(x: Element) -> Fraction:
        return x[alpha_idx] / e[alpha_idx]

    def beta(x: Element) -> Fraction:
        return x[beta_idx] / e[beta_idx]

    def rule(x: Element, y: Element) -> Element:
        px, py = band.P(x), band.P(y)
        return multiply(px, py, t) + alpha(px) * band.Pd(y) + beta(py) * band.Pd(x)

    new = _tensor_from_rule(a.dim, rule)
    witness = {}
    comp = sorted(band.complement)
    for u, v in iproduct(comp, repeat=2):
        orig = multiply(Element.atom(a.dim, u), Element.atom(a.dim, v), t)
        if not orig.is_zero():
            witness = {"pair": (u, v), "original": orig,
                       "star": multiply(Element.atom(a.dim, u), Element.atom(a.dim, v), new)}
            break
    return _finish("star", a, new, e, witness)


def ast_product(a: AlgebraSpec, phi: Functional, x0: Element) -> ProductConstruction:
    """``x * y = lam mu e + lam y' + mu x' + phi(x') phi(y') x0`` on ``A = R e + A_e^d``."""
    e = _unital(a)
    band = band_projection(e)
    if len(band.support) != 1:
        raise PreconditionViolated("A_e one-dimensional", f"support of e is {sorted(band.support)}")
    (s,) = band.support
    comp = sorted(band.complement)
    for i, j in iproduct(comp, repeat=2):
        prod = multiply(Element.atom(a.dim, i), Element.atom(a.dim, j), a.tensor)
        if not prod.is_zero():
            raise PreconditionViolated("zero products on the complement", f"e_{i} e_{j} = {prod!r}")
    if phi.dim != a.dim or x0.dim != a.dim:
        raise PreconditionViolated("matching dimensions", f"phi has dim {phi.dim}, x0 has dim {x0.dim}")
    if not phi.is_positive() or phi.is_zero() or phi[s] != 0:
        raise PreconditionViolated("phi positive, nonzero, supported on the complement", repr(phi))
    if not x0.is_positive() or x0.is_zero() or x0[s] != 0:
        raise PreconditionViolated("x0 positive, nonzero, in the complement", repr(x0))

    def split(x: Element) -> tuple[Fraction, Element]:
        return x[s] / e[s], band.Pd(x)

    def rule(x: Element, y: Element) -> Element:
        lam, xr = split(x)
        mu, yr = split(y)
        return (lam * mu) * e + lam * yr + mu * xr + (phi(xr) * phi(yr)) * x0

    new = _tensor_from_rule(a.dim, rule)
    j = next(k for k in comp if phi[k] != 0)
    x = Element.atom(a.dim, j)
    witness = {"x": x, "original_square": multiply(x, x, a.tensor), "ast_square": multiply(x, x, new),
               "phi_x": phi(x)}
    if not witness["original_square"].is_zero() or witness["ast_square"] != (phi(x) ** 2) * x0:
        raise TheoremViolation(f"non-uniqueness witness failed: {witness}")
    return _finish("ast", a, new, e, witness)
