"""Representations of AM-algebras as algebras of functions on a finite set.

Functions on ``{0, ..., m-1}`` are vectors in ``R^m`` with pointwise order
and product, so a closed sublattice of ``C(K)`` cut out by constraints
``f(t) = lam * f(s)`` is the null space of a sparse rational matrix.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, product as iproduct
from typing import Iterable, Optional, Sequence

from networkx.utils import UnionFind

from . import linalg
from .algebra import AlgebraSpec, StructureTensor, check_axioms, classify_f_algebra, multiply
from .errors import (AxiomFailure, ContradictsSubalgebra, IdentityNotOrderUnit, NoIdentity, NotAM,
                     NotSubalgebra, TheoremViolation)
from .lattice import Element, NormKind, Scalar, Verdict, as_fraction, order_unit_of_ball


@dataclass(frozen=True)
class RepresentationResult:
    """Diagonal lattice isometry ``x -> (w_k x_k)`` onto ``(R^d, plain sup)``."""

    scaling: tuple[Fraction, ...]
    transported_tensor: StructureTensor
    is_pointwise: bool

    def apply(self, x: Element) -> Element:
        return Element(w * a for w, a in zip(self.scaling, x))

    def inverse(self, y: Element) -> Element:
        return Element(a / w for w, a in zip(self.scaling, y))


def transport_tensor(t: StructureTensor, scaling: Sequence[Fraction]) -> StructureTensor:
    """Structure constants of the product moved along ``x -> (w_k x_k)``."""
    w = scaling
    return StructureTensor.from_entries(t.dim, [(i, j, k, w[k] / (w[i] * w[j]) * v) for i, j, k, v in t.entries])


def _require(report, flags: Sequence[str]) -> None:
    for flag in flags:
        if not getattr(report, flag):
            raise AxiomFailure(f"{flag} fails: {report.witnesses.get(flag)}")


def represent_am_unit(a: AlgebraSpec) -> RepresentationResult:
    """Lattice and algebra isometry of an AM-algebra with unit onto pointwise ``R^d``.

    The scaling ``D = diag(w)`` maps the weighted sup norm to the plain one
    and the unit ``(1/w_k)`` to the constant one function. Since the order
    unit is the identity, uniqueness of the product with identity one
    forces the transported product to be pointwise.

    Submultiplicativity is checked last: once the identity is the order
    unit it follows from ``|xy| <= |x||y| <= ||x|| ||y|| e``.
    """
    report = check_axioms(a)
    _require(report, ("positive_product", "associative"))
    if a.norm.kind is not NormKind.WEIGHTED_SUP:
        raise NotAM(f"norm kind {a.norm.kind.value} is not a sup norm")
    e = report.identity
    if e is None:
        raise NoIdentity("the product has no two-sided identity")
    unit = order_unit_of_ball(a.norm)
    if e != unit:
        raise IdentityNotOrderUnit(f"identity {e!r} differs from the order unit {unit!r}")
    _require(report, ("submultiplicative",))
    scaling = a.norm.weights
    moved = transport_tensor(a.tensor, scaling)
    pointwise = moved == StructureTensor.kronecker(a.dim)
    if not pointwise:
        raise TheoremViolation(f"transported product {moved!r} is not pointwise")
    return RepresentationResult(scaling, moved, pointwise)


@dataclass(frozen=True)
class NonnegativeSolution:
    """Solution set of ``A x = b, x >= 0`` after exact reduction.

    ``point`` is set when the set is a single point, ``empty`` when it is
    empty. Otherwise ``free_dimension`` is the dimension of the affine hull
    left after zero forcing and the set is not claimed to be finite.
    """

    point: Optional[tuple[Fraction, ...]]
    empty: bool
    free_dimension: int
    forced_zero: frozenset[int]


def solve_nonnegative(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction], ncols: int) -> NonnegativeSolution:
    """Exact reduction of a nonnegative linear system.

    An equation with zero right-hand side whose remaining coefficients all
    share a sign forces every variable it touches to zero. That rule is
    applied to a fixed point; the reduced system is then solved exactly.
    """
    zero: set[int] = set()
    changed = True
    while changed:
        changed = False
        for r, b in zip(rows, rhs):
            if b != 0:
                continue
            live = [(p, a) for p, a in enumerate(r) if a and p not in zero]
            if live and (all(a > 0 for _, a in live) or all(a < 0 for _, a in live)):
                zero.update(p for p, _ in live)
                changed = True
    keep = [p for p in range(ncols) if p not in zero]
    reduced = [[r[p] for p in keep] for r in rows]
    sol = linalg.solve_affine(reduced, rhs, len(keep))
    if sol is None:
        return NonnegativeSolution(None, True, 0, frozenset(zero))
    particular, free = sol
    if free:
        return NonnegativeSolution(None, False, len(free), frozenset(zero))
    x = [Fraction(0)] * ncols
    for p, v in zip(keep, particular):
        x[p] = v
    if any(v < 0 for v in x):
        return NonnegativeSolution(None, True, 0, frozenset(zero))
    return NonnegativeSolution(tuple(x), False, 0, frozenset(zero))


def unit_identity_system(n: int) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Equations saying the constant one function is a two-sided identity.

    Unknown ``c[i][j][k]`` sits at column ``(i*n + j)*n + k``. Rows:
    ``sum_i c[i][j][k] = delta_jk`` then ``sum_j c[i][j][k] = delta_ik``.
    """
    col = lambda i, j, k: (i * n + j) * n + k  # noqa: E731
    rows, rhs = [], []
    for j, k in iproduct(range(n), repeat=2):
        r = [Fraction(0)] * n ** 3
        for i in range(n):
            r[col(i, j, k)] = Fraction(1)
        rows.append(r)
        rhs.append(Fraction(int(j == k)))
    for i, k in iproduct(range(n), repeat=2):
        r = [Fraction(0)] * n ** 3
        for j in range(n):
            r[col(i, j, k)] = Fraction(1)
        rows.append(r)
        rhs.append(Fraction(int(i == k)))
    return rows, rhs


def martignon_products(n: int) -> set[StructureTensor]:
    """Every positive product on ``R^n`` whose identity is ``(1, ..., 1)``.

    Associativity is not imposed, which makes the uniqueness statement
    stronger. The result is the singleton holding the pointwise product.
    """
    if n < 1:
        raise ValueError("n must be positive")
    rows, rhs = unit_identity_system(n)
    sol = solve_nonnegative(rows, rhs, n ** 3)
    if sol.empty:
        return set()
    if sol.point is None:
        raise TheoremViolation(f"solution set has free dimension {sol.free_dimension}")
    x = sol.point
    c = [[[x[(i * n + j) * n + k] for k in range(n)] for j in range(n)] for i in range(n)]
    return {StructureTensor(n, c)}


@dataclass(frozen=True)
class ConstraintSystem:
    """Constraints ``f(t) = lam * f(s)`` on functions on ``{0, ..., m-1}`` (0-based)."""

    ambient_dim: int
    constraints: tuple[tuple[int, int, Fraction], ...]

    def __init__(self, ambient_dim: int, constraints: Iterable[tuple[int, int, Scalar]] = ()):
        cons = tuple((int(t), int(s), as_fraction(lam)) for t, s, lam in constraints)
        if ambient_dim < 1:
            raise ValueError("ambient dimension must be positive")
        for t, s, lam in cons:
            if not (0 <= t < ambient_dim and 0 <= s < ambient_dim):
                raise IndexError(f"constraint {(t, s)} out of range for m={ambient_dim}")
            if lam < 0:
                raise ValueError(f"constraint scalar {lam} is negative")
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "constraints", cons)

    def equations(self) -> list[list[Fraction]]:
        rows = []
        for t, s, lam in self.constraints:
            r = [Fraction(0)] * self.ambient_dim
            r[t] += 1
            r[s] -= lam
            rows.append(r)
        return rows

    def contains(self, f: Sequence[Fraction]) -> bool:
        return all(f[t] == lam * f[s] for t, s, lam in self.constraints)

    def solution_basis(self) -> list[list[Fraction]]:
        return linalg.nullspace(self.equations(), self.ambient_dim)


def forced_zero_coordinates(cs: ConstraintSystem) -> frozenset[int]:
    """Points where every function of the constrained sublattice vanishes."""
    basis = cs.solution_basis()
    return frozenset(p for p in range(cs.ambient_dim) if all(b[p] == 0 for b in basis))


def subalgebra_check(cs: ConstraintSystem) -> Verdict:
    """Is the solution space closed under pointwise product?

    Products of all pairs of basis vectors are tested for membership; by
    bilinearity this decides closure. The witness is ``(u, v, u*v)``.
    """
    basis = cs.solution_basis()
    for u, v in combinations_with_replacement(basis, 2):
        uv = [a * b for a, b in zip(u, v)]
        if not cs.contains(uv):
            return Verdict(False, (tuple(u), tuple(v), tuple(uv)))
    return Verdict(True)


@dataclass(frozen=True)
class QuotientResult:
    """Embedding of the constrained sublattice-algebra into functions on the classes.

    ``classes`` partition ``{0, ..., m-1}``; ``zero_set`` lists the indices
    (into ``classes``) of the classes where every function vanishes.
    ``basis`` spans the solution space and ``images`` holds the embedded
    basis vectors, as functions on the classes.
    """

    ambient_dim: int
    classes: tuple[tuple[int, ...], ...]
    zero_set: tuple[int, ...]
    basis: tuple[tuple[Fraction, ...], ...]
    images: tuple[tuple[Fraction, ...], ...]
    dimension: int

    def class_of(self, p: int) -> int:
        return next(ci for ci, cl in enumerate(self.classes) if p in cl)

    def embed(self, f: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """``f -> f~`` with ``f~(class) = f(any representative)``."""
        return tuple(Fraction(f[cl[0]]) for cl in self.classes)

    def pullback(self, g: Sequence[Fraction]) -> tuple[Fraction, ...]:
        out = [Fraction(0)] * self.ambient_dim
        for ci, cl in enumerate(self.classes):
            for p in cl:
                out[p] = Fraction(g[ci])
        return tuple(out)

    def in_image(self, g: Sequence[Fraction]) -> bool:
        return all(g[ci] == 0 for ci in self.zero_set)


def quotient_representation(cs: ConstraintSystem) -> QuotientResult:
    """Glue points the sublattice-algebra cannot separate and record its zero set.

    Each constraint ``f(t) = lam f(s)`` is sorted into one of three cases:
    ``s`` is a common zero (then so is ``t``), ``lam = 0`` (``t`` is a
    common zero) or ``lam = 1`` (``t`` and ``s`` are glued). On a
    subalgebra nothing else can happen, because ``f`` and ``f**2`` both
    satisfy the constraint.
    """
    verdict = subalgebra_check(cs)
    if not verdict:
        raise NotSubalgebra(f"pointwise product leaves the solution space: {verdict.witness}")
    m = cs.ambient_dim
    forced = forced_zero_coordinates(cs)
    marks = set(forced)
    uf = UnionFind(range(m))
    for t, s, lam in cs.constraints:
        if s in forced or lam == 0:
            marks.add(t)
        elif lam == 1:
            uf.union(t, s)
        else:
            raise ContradictsSubalgebra(f"constraint f({t}) = {lam} f({s}) on a subalgebra with f({s}) not forced to 0")

    classes = tuple(sorted(tuple(sorted(g)) for g in uf.to_sets()))
    zero_set = tuple(ci for ci, cl in enumerate(classes) if marks.intersection(cl))
    zero_points = {p for ci in zero_set for p in classes[ci]}
    if zero_points != forced:
        raise TheoremViolation(f"zero classes {sorted(zero_points)} differ from forced zeros {sorted(forced)}")

    basis = [tuple(b) for b in cs.solution_basis()]
    # glued classes must match the semantic relation f(t) = f(s) for all f, off the zero set
    live = [p for p in range(m) if p not in forced]
    for p, q in combinations_with_replacement(live, 2):
        same_class = uf[p] == uf[q]
        inseparable = all(b[p] == b[q] for b in basis)
        if same_class != inseparable:
            raise TheoremViolation(f"points {p}, {q}: glued={same_class}, inseparable={inseparable}")

    images = tuple(tuple(b[cl[0]] for cl in classes) for b in basis)
    result = QuotientResult(m, classes, zero_set, tuple(basis), images, len(basis))
    _verify_embedding(cs, result)
    return result


def _verify_embedding(cs: ConstraintSystem, q: QuotientResult) -> None:
    for f, g in zip(q.basis, q.images):
        if q.pullback(g) != tuple(f):
            raise TheoremViolation(f"{f} is not constant on the classes")
        if not q.in_image(g):
            raise TheoremViolation(f"image {g} does not vanish on the zero set")
    n_classes = len(q.classes)
    if linalg.rank([list(g) for g in q.images], n_classes) != q.dimension:
        raise TheoremViolation("embedding is not injective")
    if n_classes - len(q.zero_set) != q.dimension:
        raise TheoremViolation("image is smaller than the vanishing ideal")
    for f, g in zip(q.basis, q.images):
        if q.embed([abs(a) for a in f]) != tuple(abs(a) for a in g):
            raise TheoremViolation("embedding does not preserve the modulus")
    for (f1, g1), (f2, g2) in combinations_with_replacement(list(zip(q.basis, q.images)), 2):
        if q.embed([a * b for a, b in zip(f1, f2)]) != tuple(a * b for a, b in zip(g1, g2)):
            raise TheoremViolation("embedding does not preserve products")


@dataclass(frozen=True)
class AMClassification:
    """Outcome of trying to identify an algebra with pointwise functions on a finite set.

    On success ``scaling`` is the isometry ``x -> (w_k x_k)`` and
    ``zero_set_size`` is 0 (a finite-dimensional closed ideal of functions
    on a finite set is a full function algebra on fewer points). On
    failure ``reason`` names the first condition that broke.
    """

    ok: bool
    zero_set_size: Optional[int] = None
    scaling: Optional[tuple[Fraction, ...]] = None
    reason: Optional[str] = None


def classify_am_algebra(a: AlgebraSpec) -> AMClassification:
    report = check_axioms(a)
    for flag in ("positive_product", "associative", "submultiplicative"):
        if not getattr(report, flag):
            return AMClassification(False, reason=f"not a Banach lattice algebra: {flag} fails")
    if a.norm.kind is not NormKind.WEIGHTED_SUP:
        return AMClassification(False, reason="norm is not an AM-norm")
    if not classify_f_algebra(a.tensor).f_algebra:
        return AMClassification(False, reason="not an f-algebra: product tensor is not diagonal")
    w = a.norm.weights
    for k in range(a.dim):
        if a.tensor[k, k, k] != w[k]:
            return AMClassification(False, reason=f"diagonal entry {k} is {a.tensor[k, k, k]}, weight is {w[k]}")
    return AMClassification(True, zero_set_size=0, scaling=tuple(w))


def transported_product_matches(rep: RepresentationResult, x: Element, y: Element, t: StructureTensor) -> bool:
    return rep.apply(multiply(x, y, t)) == multiply(rep.apply(x), rep.apply(y), rep.transported_tensor)
