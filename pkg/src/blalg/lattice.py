"""Coordinatewise vector lattices of finite dimension.

Every finite-dimensional Archimedean vector lattice is lattice isomorphic
to R^n with the coordinatewise order, so elements are stored in an atom
basis. Scalars are :class:`fractions.Fraction` throughout; nothing here
touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Sequence, Union

from .errors import DimensionMismatch, NotPositive

Scalar = Union[Fraction, int, str]


def as_fraction(value: Scalar) -> Fraction:
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(value)


def fraction_str(q: Fraction) -> str:
    """Canonical text form: ``"p/q"`` in lowest terms, or ``"p"`` for integers."""
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class Verdict(NamedTuple):
    """A boolean decision together with the evidence for a negative answer."""

    holds: bool
    witness: object = None

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class Element:
    coords: tuple[Fraction, ...]

    def __init__(self, coords: Iterable[Scalar]):
        object.__setattr__(self, "coords", tuple(as_fraction(c) for c in coords))
        if not self.coords:
            raise ValueError("an element needs at least one coordinate")

    @property
    def dim(self) -> int:
        return len(self.coords)

    @classmethod
    def zero(cls, dim: int) -> "Element":
        return cls([0] * dim)

    @classmethod
    def atom(cls, dim: int, k: int, value: Scalar = 1) -> "Element":
        """The scaled basis vector ``value * e_k`` (0-based ``k``)."""
        coords = [Fraction(0)] * dim
        coords[k] = as_fraction(value)
        return cls(coords)

    def __getitem__(self, k: int) -> Fraction:
        return self.coords[k]

    def __iter__(self):
        return iter(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def _check(self, other: "Element") -> None:
        if other.dim != self.dim:
            raise DimensionMismatch(f"dimensions {self.dim} and {other.dim} differ")

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        return Element(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other: "Element") -> "Element":
        self._check(other)
        return Element(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self) -> "Element":
        return Element(-a for a in self.coords)

    def __rmul__(self, scalar: Scalar) -> "Element":
        s = as_fraction(scalar)
        return Element(s * a for a in self.coords)

    def __le__(self, other: "Element") -> bool:
        """Coordinatewise (lattice) order, not a total order."""
        self._check(other)
        return all(a <= b for a, b in zip(self.coords, other.coords))

    def __ge__(self, other: "Element") -> bool:
        return other <= self

    def is_positive(self) -> bool:
        return all(a >= 0 for a in self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def support(self) -> frozenset[int]:
        return frozenset(k for k, a in enumerate(self.coords) if a != 0)

    def __repr__(self) -> str:
        return "Element(" + ", ".join(fraction_str(a) for a in self.coords) + ")"


class Functional(Element):
    """A linear functional, acting by the coordinate pairing ``sum f_k x_k``."""

    def __call__(self, x: Element) -> Fraction:
        self._check(x)
        return sum((f * a for f, a in zip(self.coords, x.coords)), Fraction(0))

    def __repr__(self) -> str:
        return "Functional(" + ", ".join(fraction_str(a) for a in self.coords) + ")"


class NormKind(str, Enum):
    WEIGHTED_SUP = "weighted_sup"
    WEIGHTED_L1 = "weighted_l1"


@dataclass(frozen=True)
class NormSpec:
    kind: NormKind
    weights: tuple[Fraction, ...]

    def __init__(self, kind: Union[NormKind, str], weights: Iterable[Scalar]):
        object.__setattr__(self, "kind", NormKind(kind))
        object.__setattr__(self, "weights", tuple(as_fraction(w) for w in weights))
        if not self.weights:
            raise ValueError("a norm needs at least one weight")
        if any(w <= 0 for w in self.weights):
            raise ValueError("norm weights must be strictly positive")

    @property
    def dim(self) -> int:
        return len(self.weights)

    @classmethod
    def sup(cls, weights: Union[int, Iterable[Scalar]]) -> "NormSpec":
        if isinstance(weights, int):
            weights = [1] * weights
        return cls(NormKind.WEIGHTED_SUP, weights)

    @classmethod
    def l1(cls, weights: Union[int, Iterable[Scalar]]) -> "NormSpec":
        if isinstance(weights, int):
            weights = [1] * weights
        return cls(NormKind.WEIGHTED_L1, weights)


def _same_dim(*dims: int) -> None:
    if len(set(dims)) != 1:
        raise DimensionMismatch(f"dimensions differ: {dims}")


def lattice_combine(x: Element, y: Optional[Element], op: str) -> Element:
    """Coordinatewise ``sup``, ``inf``, ``abs``, ``pos`` or ``neg``.

    The unary operations ignore ``y``.
    """
    if op == "abs":
        return Element(abs(a) for a in x)
    if op == "pos":
        return Element(max(a, 0) for a in x)
    if op == "neg":
        return Element(max(-a, 0) for a in x)
    if y is None:
        raise TypeError(f"{op!r} needs two operands")
    _same_dim(x.dim, y.dim)
    if op == "sup":
        return Element(max(a, b) for a, b in zip(x, y))
    if op == "inf":
        return Element(min(a, b) for a, b in zip(x, y))
    raise ValueError(f"unknown lattice operation {op!r}")


def sup(x: Element, y: Element) -> Element:
    return lattice_combine(x, y, "sup")


def inf(x: Element, y: Element) -> Element:
    return lattice_combine(x, y, "inf")


def absolute(x: Element) -> Element:
    return lattice_combine(x, None, "abs")


def norm(x: Element, n: NormSpec) -> Fraction:
    _same_dim(x.dim, n.dim)
    terms = (w * abs(a) for w, a in zip(n.weights, x))
    if n.kind is NormKind.WEIGHTED_SUP:
        return max(terms)
    return sum(terms, Fraction(0))


def dual_norm(f: Functional, n: NormSpec) -> Fraction:
    """Norm of ``f`` as a functional on ``(R^n, n)``.

    The dual of a weighted sup norm is the l1 norm with reciprocal weights
    and vice versa.
    """
    _same_dim(f.dim, n.dim)
    terms = (abs(a) / w for w, a in zip(n.weights, f))
    if n.kind is NormKind.WEIGHTED_SUP:
        return sum(terms, Fraction(0))
    return max(terms)


def ball_extreme_points(n: NormSpec) -> list[Element]:
    """Extreme points of the closed unit ball.

    ``2**dim`` sign vectors for the sup norm, ``2*dim`` signed scaled atoms
    for the l1 norm.
    """
    d = n.dim
    if n.kind is NormKind.WEIGHTED_L1:
        pts = []
        for k, w in enumerate(n.weights):
            pts.append(Element.atom(d, k, 1 / w))
            pts.append(Element.atom(d, k, -1 / w))
        return pts
    pts = []
    for mask in range(2 ** d):
        pts.append(Element((-1 if mask >> k & 1 else 1) / w for k, w in enumerate(n.weights)))
    return pts


def is_am_norm(n: NormSpec) -> Verdict:
    """Does ``||x v y|| = max(||x||, ||y||)`` hold for all positive x, y?

    Weighted sup norms always satisfy it. A weighted l1 norm in dimension
    at least two fails on the first two atoms.
    """
    if n.kind is NormKind.WEIGHTED_SUP or n.dim == 1:
        return Verdict(True)
    x, y = Element.atom(n.dim, 0), Element.atom(n.dim, 1)
    assert norm(sup(x, y), n) != max(norm(x, n), norm(y, n))
    return Verdict(False, (x, y))


def order_unit_of_ball(n: NormSpec) -> Optional[Element]:
    """The positive ``e`` with unit ball ``[-e, e]``, if there is one."""
    if n.kind is NormKind.WEIGHTED_SUP or n.dim == 1:
        return Element(1 / w for w in n.weights)
    return None


def verify_unit_duality(n: NormSpec, e: Element, samples: Sequence[Functional] = ()) -> bool:
    """Check ``f(e) = ||f||`` exactly for positive functionals ``f``.

    Tested on every dual atom, on the sum of all dual atoms, and on the
    caller's samples. Atoms pin ``e_k`` down; the sum detects a dual norm
    that is not additive on the positive cone, so the check is a decision
    procedure even with no samples.
    """
    _same_dim(n.dim, e.dim)
    if not e.is_positive():
        raise NotPositive("the candidate unit must be positive")
    tests = [Functional(Element.atom(n.dim, k)) for k in range(n.dim)]
    tests.append(Functional([1] * n.dim))
    for f in samples:
        _same_dim(n.dim, f.dim)
        if not f.is_positive():
            raise NotPositive(f"sample {f!r} is not a positive functional")
        tests.append(f)
    return all(f(e) == dual_norm(f, n) for f in tests)


@dataclass(frozen=True)
class BandProjectionPair:
    """Coordinate projection ``P`` onto a support set and its complement ``Pd``."""

    dim: int
    support: frozenset[int]

    def P(self, x: Element) -> Element:
        _same_dim(self.dim, x.dim)
        return Element(a if k in self.support else 0 for k, a in enumerate(x))

    def Pd(self, x: Element) -> Element:
        _same_dim(self.dim, x.dim)
        return Element(0 if k in self.support else a for k, a in enumerate(x))

    @property
    def complement(self) -> frozenset[int]:
        return frozenset(range(self.dim)) - self.support

    def in_range(self, x: Element) -> bool:
        return x.support() <= self.support


def band_projection(e: Element) -> BandProjectionPair:
    """Band projection onto the ideal generated by ``e >= 0``.

    In coordinates that ideal is every element supported where ``e`` is
    nonzero, which is already a projection band.
    """
    if not e.is_positive():
        raise NotPositive(f"{e!r} is not positive")
    return BandProjectionPair(e.dim, e.support())


def in_principal_ideal(x: Element, e: Element) -> bool:
    """Is ``|x| <= lam * e`` for some ``lam > 0``? Decided via supports."""
    _same_dim(x.dim, e.dim)
    return x.support() <= e.support()


def order_unit_norm(x: Element, e: Element) -> Fraction:
    """``inf{lam > 0 : |x| <= lam e}`` for ``x`` in the ideal generated by ``e``."""
    if not in_principal_ideal(x, e):
        raise ValueError(f"{x!r} is not in the ideal generated by {e!r}")
    return max((abs(x[k]) / e[k] for k in e.support()), default=Fraction(0))
