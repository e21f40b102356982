"""Complexification ``A + iA`` of a coordinatewise lattice algebra.

The only module that uses floating point: the modulus
``|z|_k = sqrt(re_k^2 + im_k^2)`` leaves the rationals. A coordinate is
kept exact (as a ``Fraction``) whenever ``re_k^2 + im_k^2`` is the square of
a rational, which covers ``im = 0`` and Pythagorean triples. All float
comparisons use ``TOL``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .algebra import AlgebraSpec, StructureTensor, multiply, negative_entry
from .errors import DimensionMismatch, NotPositiveProduct, NotRepresentedPointwise
from .lattice import Element, NormKind, NormSpec, Verdict

TOL = 1e-12

Real = Union[Fraction, float]
Modulus = tuple[Real, ...]


@dataclass(frozen=True)
class ComplexElement:
    re: Element
    im: Element

    def __post_init__(self):
        if self.re.dim != self.im.dim:
            raise DimensionMismatch(f"real part has dim {self.re.dim}, imaginary part {self.im.dim}")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple]) -> "ComplexElement":
        pairs = list(pairs)
        return cls(Element(p[0] for p in pairs), Element(p[1] for p in pairs))

    @property
    def dim(self) -> int:
        return self.re.dim

    def conj(self) -> "ComplexElement":
        return ComplexElement(self.re, -self.im)

    def __neg__(self) -> "ComplexElement":
        return ComplexElement(-self.re, -self.im)

    def __add__(self, other: "ComplexElement") -> "ComplexElement":
        return ComplexElement(self.re + other.re, self.im + other.im)


def cx_product(z1: ComplexElement, z2: ComplexElement, t: StructureTensor) -> ComplexElement:
    """``(x1 + i x2)(y1 + i y2) = (x1 y1 - x2 y2) + i (x1 y2 + x2 y1)``."""
    if z1.dim != t.dim or z2.dim != t.dim:
        raise DimensionMismatch(f"factors of dims {z1.dim}, {z2.dim} for a dim-{t.dim} product")
    x1, x2, y1, y2 = z1.re, z1.im, z2.re, z2.im
    return ComplexElement(multiply(x1, y1, t) - multiply(x2, y2, t), multiply(x1, y2, t) + multiply(x2, y1, t))


def _exact_sqrt(q: Fraction):
    p, r = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if p * p == q.numerator and r * r == q.denominator:
        return Fraction(p, r)
    return None


def cx_modulus(z: ComplexElement) -> Modulus:
    out: list[Real] = []
    for a, b in zip(z.re, z.im):
        if b == 0:
            out.append(abs(a))
            continue
        exact = _exact_sqrt(a * a + b * b)
        out.append(exact if exact is not None else math.hypot(float(a), float(b)))
    return tuple(out)


def float_multiply(x: Sequence[Real], y: Sequence[Real], t: StructureTensor) -> tuple[float, ...]:
    out = [0.0] * t.dim
    for i, j, k, c in t.entries:
        out[k] += float(x[i]) * float(y[j]) * float(c)
    return tuple(out)


def real_norm(v: Sequence[Real], n: NormSpec) -> float:
    terms = [float(w) * abs(float(a)) for w, a in zip(n.weights, v)]
    return max(terms) if n.kind is NormKind.WEIGHTED_SUP else math.fsum(terms)


def cx_norm(z: ComplexElement, n: NormSpec) -> float:
    """``||z|| = || |z| ||``."""
    return real_norm(cx_modulus(z), n)


def _close_le(a: float, b: float) -> bool:
    return a <= b + TOL * max(1.0, abs(b))


def check_modulus_submultiplicative(t: StructureTensor, samples: Sequence[tuple[ComplexElement, ComplexElement]]
                                    ) -> Verdict:
    """``|z1 z2| <= |z1| |z2|`` coordinatewise (relative tolerance ``TOL``) on each sample."""
    bad = negative_entry(t)
    if bad is not None:
        raise NotPositiveProduct(f"negative structure constant at {bad}")
    for z1, z2 in samples:
        left = cx_modulus(cx_product(z1, z2, t))
        right = float_multiply(cx_modulus(z1), cx_modulus(z2), t)
        for k, (a, b) in enumerate(zip(left, right)):
            if not _close_le(float(a), b):
                return Verdict(False, {"z1": z1, "z2": z2, "coordinate": k, "lhs": float(a), "rhs": b})
    return Verdict(True)


def is_represented_pointwise(a: AlgebraSpec) -> bool:
    return (a.norm.kind is NormKind.WEIGHTED_SUP and all(w == 1 for w in a.norm.weights)
            and a.tensor == StructureTensor.kronecker(a.dim))


def check_cstar_identity(a: AlgebraSpec, samples: Sequence[ComplexElement]) -> Verdict:
    """``||conj(z) z|| = ||z||^2`` on each sample, for the pointwise algebra with unit weights.

    Other algebras must be moved to that form first; a weighted sup norm
    breaks the identity even when the product is pointwise.
    """
    if not is_represented_pointwise(a):
        raise NotRepresentedPointwise(f"{a.label or 'spec'} is not pointwise with unit weights")
    for z in samples:
        lhs = cx_norm(cx_product(z.conj(), z, a.tensor), a.norm)
        rhs = cx_norm(z, a.norm) ** 2
        if abs(lhs - rhs) > TOL * max(1.0, rhs):
            return Verdict(False, {"z": z, "lhs": lhs, "rhs": rhs})
    return Verdict(True)
