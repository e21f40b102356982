"""Bilinear products given by structure constants, and the axioms they must satisfy.

A product on R^d is stored as ``c[i][j][k]`` with ``e_i e_j = sum_k c[i][j][k] e_k``
(0-based indices). All checks are exact.

Two reductions keep the checks finite:

* Submultiplicativity. ``x -> ||x y||`` is convex for fixed ``y`` (and vice
  versa), so the supremum of ``||x y||`` over the unit ball is attained at
  extreme points. For the weighted l1 ball those are the signed scaled
  atoms ``+-e_i/w_i``. For the weighted sup ball and a positive tensor,
  ``|x y| <= |x| |y| <= u u`` coordinatewise where ``u_k = 1/w_k``, so one
  product decides it. A non-positive tensor under a sup norm is handled by
  enumerating sign vectors of the first factor.
* f-algebras. Disjoint positive elements have disjoint supports and every
  positive element is a positive combination of atoms, so the defining
  implication only needs to be tested on atoms. It then says that
  ``c[i][j][k] = 0`` unless ``i == j == k``. The almost-f condition
  becomes ``c[i][j][k] = 0`` whenever ``i != j``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product as iproduct
from typing import Iterable, Optional, Sequence

from . import linalg
from .errors import DimensionMismatch, NotPositiveProduct
from .lattice import Element, NormKind, NormSpec, Scalar, as_fraction, norm

Cube = tuple[tuple[tuple[Fraction, ...], ...], ...]


def _freeze(c, shape: tuple[int, int, int]) -> Cube:
    a, b, d = shape
    out = tuple(tuple(tuple(as_fraction(c[i][j][k]) for k in range(d)) for j in range(b)) for i in range(a))
    return out


@dataclass(frozen=True)
class BilinearMap:
    """``P : R^a x R^b -> R^c`` with ``P(e_i, e_j) = sum_k t[i][j][k] e_k``."""

    shape: tuple[int, int, int]
    tensor: Cube

    def __init__(self, shape: Sequence[int], tensor):
        shape = tuple(int(s) for s in shape)
        if len(shape) != 3 or min(shape) < 1:
            raise ValueError(f"bad shape {shape}")
        try:
            frozen = _freeze(tensor, shape)
        except (IndexError, TypeError) as exc:
            raise DimensionMismatch(f"tensor does not have shape {shape}") from exc
        if len(tensor) != shape[0] or any(len(r) != shape[1] for r in tensor) or any(
                len(col) != shape[2] for r in tensor for col in r):
            raise DimensionMismatch(f"tensor does not have shape {shape}")
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "tensor", frozen)

    def __call__(self, x: Element, y: Element) -> Element:
        a, b, d = self.shape
        if x.dim != a or y.dim != b:
            raise DimensionMismatch(f"arguments of dims {x.dim}, {y.dim} for shape {self.shape}")
        out = [Fraction(0)] * d
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                s = xi * yj
                for k, c in enumerate(self.tensor[i][j]):
                    if c:
                        out[k] += s * c
        return Element(out)


@dataclass(frozen=True)
class StructureTensor:
    """Structure constants of a bilinear product on ``R^dim``."""

    dim: int
    c: Cube

    def __init__(self, dim: int, c):
        object.__setattr__(self, "dim", int(dim))
        object.__setattr__(self, "c", BilinearMap((dim, dim, dim), c).tensor)

    @classmethod
    def from_entries(cls, dim: int, entries: Iterable[tuple[int, int, int, Scalar]]) -> "StructureTensor":
        """Build from sparse 0-based ``(i, j, k, value)`` entries; repeats accumulate."""
        c = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        for i, j, k, v in entries:
            if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
                raise IndexError(f"entry {(i, j, k)} out of range for dim {dim}")
            c[i][j][k] += as_fraction(v)
        return cls(dim, c)

    @classmethod
    def zeros(cls, dim: int) -> "StructureTensor":
        return cls.from_entries(dim, [])

    @classmethod
    def kronecker(cls, dim: int, diagonal: Optional[Sequence[Scalar]] = None) -> "StructureTensor":
        """Pointwise product; with ``diagonal`` given, ``e_k e_k = d_k e_k``."""
        d = diagonal if diagonal is not None else [1] * dim
        if len(d) != dim:
            raise DimensionMismatch("diagonal length differs from dim")
        return cls.from_entries(dim, [(k, k, k, d[k]) for k in range(dim)])

    @classmethod
    def from_bilinear(cls, p: BilinearMap) -> "StructureTensor":
        if len(set(p.shape)) != 1:
            raise DimensionMismatch(f"bilinear map of shape {p.shape} is not a product")
        return cls(p.shape[0], p.tensor)

    def as_bilinear(self) -> BilinearMap:
        return BilinearMap((self.dim,) * 3, self.c)

    @cached_property
    def entries(self) -> tuple[tuple[int, int, int, Fraction], ...]:
        """Nonzero entries as 0-based ``(i, j, k, value)``, sorted."""
        return tuple((i, j, k, self.c[i][j][k])
                     for i, j, k in iproduct(range(self.dim), repeat=3) if self.c[i][j][k])

    def __getitem__(self, ijk: tuple[int, int, int]) -> Fraction:
        i, j, k = ijk
        return self.c[i][j][k]

    def __repr__(self) -> str:
        from .lattice import fraction_str
        body = ", ".join(f"{(i, j, k)}: {fraction_str(v)}" for i, j, k, v in self.entries)
        return f"StructureTensor(dim={self.dim}, {{{body}}})"


@dataclass(frozen=True)
class AlgebraSpec:
    """A candidate Banach lattice algebra: a norm and a product on ``R^dim``."""

    norm: NormSpec
    tensor: StructureTensor
    label: Optional[str] = None

    def __post_init__(self):
        if self.norm.dim != self.tensor.dim:
            raise DimensionMismatch(f"norm has dim {self.norm.dim}, tensor has dim {self.tensor.dim}")

    @property
    def dim(self) -> int:
        return self.tensor.dim


def multiply(x: Element, y: Element, t: StructureTensor) -> Element:
    if x.dim != t.dim or y.dim != t.dim:
        raise DimensionMismatch(f"factors of dims {x.dim}, {y.dim} for a dim-{t.dim} product")
    out = [Fraction(0)] * t.dim
    for i, j, k, c in t.entries:
        if x[i] and y[j]:
            out[k] += x[i] * y[j] * c
    return Element(out)


def _identity_equations(t: StructureTensor):
    # e * e_j = e_j and e_j * e = e_j, unknowns e_0..e_{d-1}
    d = t.dim
    rows, rhs = [], []
    for j, k in iproduct(range(d), repeat=2):
        target = Fraction(int(j == k))
        rows.append([t.c[i][j][k] for i in range(d)])
        rhs.append(target)
        rows.append([t.c[j][i][k] for i in range(d)])
        rhs.append(target)
    return rows, rhs


def find_identity(t: StructureTensor) -> Optional[Element]:
    """The two-sided identity, or ``None`` if the product has none."""
    rows, rhs = _identity_equations(t)
    sol = linalg.solve_affine(rows, rhs, t.dim)
    if sol is None:
        return None
    particular, free = sol
    # a two-sided identity is unique: e = e e' = e'
    assert not free, "identity equations with a solvable, non-unique system"
    return Element(particular)


def is_identity(e: Element, t: StructureTensor) -> bool:
    return all(multiply(e, a, t) == a == multiply(a, e, t)
               for a in (Element.atom(t.dim, j) for j in range(t.dim)))


def associativity_witness(t: StructureTensor) -> Optional[tuple[int, int, int, int]]:
    """First ``(i, j, l, m)`` with ``((e_i e_j) e_l)_m != (e_i (e_j e_l))_m``."""
    d, c = t.dim, t.c
    for i, j, l in iproduct(range(d), repeat=3):
        for m in range(d):
            left = sum((c[i][j][k] * c[k][l][m] for k in range(d) if c[i][j][k]), Fraction(0))
            right = sum((c[j][l][k] * c[i][k][m] for k in range(d) if c[j][l][k]), Fraction(0))
            if left != right:
                return (i, j, l, m)
    return None


def negative_entry(t: StructureTensor) -> Optional[tuple[int, int, int]]:
    return next(((i, j, k) for i, j, k, v in t.entries if v < 0), None)


def product_norm_bound(t: StructureTensor, n: NormSpec) -> tuple[Fraction, tuple[Element, Element]]:
    """``sup{||x y|| : ||x||, ||y|| <= 1}`` with a maximizing pair of ball points."""
    if n.dim != t.dim:
        raise DimensionMismatch("norm and tensor dims differ")
    d, w = t.dim, n.weights
    if n.kind is NormKind.WEIGHTED_L1:
        best = None
        for i, j in iproduct(range(d), repeat=2):
            x, y = Element.atom(d, i, 1 / w[i]), Element.atom(d, j, 1 / w[j])
            val = norm(multiply(x, y, t), n)
            if best is None or val > best[0]:
                best = (val, (x, y))
        return best
    u = Element(1 / wk for wk in w)
    if negative_entry(t) is None:
        return norm(multiply(u, u, t), n), (u, u)
    # sign-vector enumeration for x; for fixed x and output k the best y
    # takes y_j = sign(coefficient) / w_j
    best = None
    for mask in range(2 ** d):
        x = Element((-1 if mask >> i & 1 else 1) / w[i] for i in range(d))
        for k in range(d):
            coef = [sum((x[i] * t.c[i][j][k] for i in range(d)), Fraction(0)) for j in range(d)]
            y = Element((1 if a >= 0 else -1) / w[j] for j, a in enumerate(coef))
            val = w[k] * sum((abs(a) / w[j] for j, a in enumerate(coef)), Fraction(0))
            if best is None or val > best[0]:
                best = (val, (x, y))
    return best


@dataclass(frozen=True)
class FClassification:
    f_algebra: bool
    almost_f_algebra: bool
    witness: dict = field(default_factory=dict)


def classify_f_algebra(t: StructureTensor) -> FClassification:
    """Decide the f-algebra and almost f-algebra properties of a positive product.

    Witnesses use 0-based indices. For a failed f-algebra test the witness
    names atoms ``f``, ``g`` (disjoint) and ``h`` with ``(h f) ^ g != 0``
    (``side="left"``) or ``(f h) ^ g != 0`` (``side="right"``).
    """
    bad = negative_entry(t)
    if bad is not None:
        raise NotPositiveProduct(f"negative structure constant at {bad}")
    witness: dict = {}
    f_ok = almost_ok = True
    for i, j, k, _ in t.entries:
        if f_ok and not i == j == k:
            f_ok = False
            if i != k:
                witness["f_algebra"] = {"entry": (i, j, k), "f": i, "g": k, "h": j, "side": "right"}
            else:
                witness["f_algebra"] = {"entry": (i, j, k), "f": j, "g": k, "h": i, "side": "left"}
        if almost_ok and i != j:
            almost_ok = False
            witness["almost_f_algebra"] = {"entry": (i, j, k), "pair": (i, j)}
    return FClassification(f_ok, almost_ok, witness)


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of the axiom battery. Failed flags carry a witness in ``witnesses``.

    ``f_algebra`` and ``almost_f_algebra`` are ``None`` when the product is
    not positive (the notions are only defined for lattice algebras).
    """

    positive_product: bool
    associative: bool
    submultiplicative: bool
    identity: Optional[Element]
    identity_norm_one: bool
    f_algebra: Optional[bool]
    almost_f_algebra: Optional[bool]
    product_norm: Fraction
    witnesses: dict

    @property
    def banach_lattice_algebra(self) -> bool:
        return self.positive_product and self.associative and self.submultiplicative


def check_axioms(a: AlgebraSpec) -> AxiomReport:
    t, n = a.tensor, a.norm
    witnesses: dict = {}

    neg = negative_entry(t)
    if neg is not None:
        witnesses["positive_product"] = {"entry": neg, "value": t[neg]}

    assoc = associativity_witness(t)
    if assoc is not None:
        witnesses["associative"] = {"indices": assoc}

    bound, (bx, by) = product_norm_bound(t, n)
    if bound > 1:
        witnesses["submultiplicative"] = {"x": bx, "y": by, "norm_xy": bound}

    e = find_identity(t)
    if e is None:
        witnesses["identity"] = "no two-sided identity"
        norm_one = False
    else:
        norm_one = norm(e, n) == 1
        if not norm_one:
            witnesses["identity_norm_one"] = {"identity": e, "norm": norm(e, n)}

    f_alg = almost = None
    if neg is None:
        cls = classify_f_algebra(t)
        f_alg, almost = cls.f_algebra, cls.almost_f_algebra
        witnesses.update(cls.witness)

    return AxiomReport(
        positive_product=neg is None,
        associative=assoc is None,
        submultiplicative=bound <= 1,
        identity=e,
        identity_norm_one=norm_one,
        f_algebra=f_alg,
        almost_f_algebra=almost,
        product_norm=bound,
        witnesses=witnesses,
    )


def arens_adjoint(p: BilinearMap) -> BilinearMap:
    """``P* : C* x A -> B*``, ``P*(phi, a)(b) = phi(P(a, b))``.

    Dual spaces are identified with coordinate space, so the new tensor is
    ``d[k][i][j] = t[i][j][k]``.
    """
    a, b, c = p.shape
    t = p.tensor
    return BilinearMap((c, a, b), [[[t[i][j][k] for j in range(b)] for i in range(a)] for k in range(c)])


def transpose(p: BilinearMap) -> BilinearMap:
    """``P^t(b, a) = P(a, b)``."""
    a, b, c = p.shape
    t = p.tensor
    return BilinearMap((b, a, c), [[[t[i][j][k] for k in range(c)] for i in range(a)] for j in range(b)])


@dataclass(frozen=True)
class ArensProducts:
    first: StructureTensor
    second: StructureTensor
    regular: bool


def arens_products(t: StructureTensor) -> ArensProducts:
    """First (``P***``) and second (``P^t***t``) Arens products, by literal composition."""
    p = t.as_bilinear()
    first = arens_adjoint(arens_adjoint(arens_adjoint(p)))
    second = transpose(arens_adjoint(arens_adjoint(arens_adjoint(transpose(p)))))
    first_t, second_t = StructureTensor.from_bilinear(first), StructureTensor.from_bilinear(second)
    return ArensProducts(first_t, second_t, first_t == second_t)
