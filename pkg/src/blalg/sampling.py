"""Seeded random objects for property checks. Every generator takes a ``random.Random``."""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .algebra import AlgebraSpec, StructureTensor
from .complexify import ComplexElement
from .lattice import Element, Functional, NormSpec
from .representation import ConstraintSystem
from .sparse import SparseFunctional, SparseSeq


def rational(rng: random.Random, bound: int = 20, max_den: int = 9, positive: bool = False) -> Fraction:
    num = rng.randint(1, bound) if positive else rng.randint(-bound, bound)
    return Fraction(num, rng.randint(1, max_den))


def element(rng: random.Random, dim: int, positive: bool = False, **kw) -> Element:
    if positive:
        return Element(abs(rational(rng, **kw)) for _ in range(dim))
    return Element(rational(rng, **kw) for _ in range(dim))


def functional(rng: random.Random, dim: int, positive: bool = False) -> Functional:
    return Functional(element(rng, dim, positive=positive))


def weights(rng: random.Random, dim: int) -> list[Fraction]:
    return [rational(rng, bound=12, positive=True) for _ in range(dim)]


def diagonal_spec(rng: random.Random, max_dim: int = 8) -> AlgebraSpec:
    """AM-algebra with unit: sup norm with weights ``w`` and ``e_k e_k = w_k e_k``."""
    n = rng.randint(1, max_dim)
    w = weights(rng, n)
    return AlgebraSpec(NormSpec.sup(w), StructureTensor.kronecker(n, w))


def nonnegative_tensor(rng: random.Random, max_dim: int = 5, density: float = 0.4) -> StructureTensor:
    d = rng.randint(1, max_dim)
    entries = [(i, j, k, rational(rng, positive=True))
               for i in range(d) for j in range(d) for k in range(d) if rng.random() < density]
    return StructureTensor.from_entries(d, entries)


def constraint_system(rng: random.Random, max_dim: int = 10, scalars=(0, 1),
                      max_constraints: Optional[int] = None) -> ConstraintSystem:
    m = rng.randint(1, max_dim)
    count = rng.randint(0, max_constraints if max_constraints is not None else m)
    cons = [(rng.randrange(m), rng.randrange(m), Fraction(rng.choice(scalars))) for _ in range(count)]
    return ConstraintSystem(m, cons)


def sparse_seq(rng: random.Random, max_index: int = 30, max_terms: int = 6, positive: bool = False) -> SparseSeq:
    count = rng.randint(0, max_terms)
    return SparseSeq({rng.randint(1, max_index): rational(rng, positive=positive) for _ in range(count)})


def sparse_functional(rng: random.Random, max_index: int = 30, max_terms: int = 6) -> SparseFunctional:
    return SparseFunctional(sparse_seq(rng, max_index, max_terms, positive=True).entries)


def complex_element(rng: random.Random, dim: int) -> ComplexElement:
    return ComplexElement(element(rng, dim), element(rng, dim))
