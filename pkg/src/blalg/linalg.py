"""Exact rational linear algebra, backed by sympy's domain matrices over QQ."""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

Row = Sequence[Fraction]


def _to_dm(rows: Sequence[Row], ncols: int) -> DomainMatrix:
    data = [[QQ(int(Fraction(a).numerator), int(Fraction(a).denominator)) for a in r] for r in rows]
    if not data:
        data = [[QQ(0)] * ncols]
    return DomainMatrix(data, (len(data), ncols), QQ)


def primitive(v: Sequence[Fraction]) -> list[Fraction]:
    """Scale a nonzero rational vector to coprime integers, first nonzero entry positive."""
    den = lcm(*(Fraction(a).denominator for a in v))
    ints = [int(Fraction(a) * den) for a in v]
    g = 0
    for a in ints:
        g = gcd(g, a)
    lead = next(a for a in ints if a)
    if lead < 0:
        g = -g
    return [Fraction(a, g) for a in ints]


def nullspace(rows: Sequence[Row], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{x : A x = 0}``, each vector made primitive."""
    if ncols == 0:
        return []
    basis = _to_dm(rows, ncols).nullspace().to_Matrix().tolist()
    return [primitive([Fraction(str(a)) for a in b]) for b in basis]


def rank(rows: Sequence[Row], ncols: int) -> int:
    if not rows or ncols == 0:
        return 0
    return _to_dm(rows, ncols).rank()


def solve_affine(rows: Sequence[Row], rhs: Sequence[Fraction], ncols: int
                 ) -> Optional[tuple[list[Fraction], list[list[Fraction]]]]:
    """Solve ``A x = b`` exactly.

    Returns ``(particular, nullspace_basis)`` or ``None`` when inconsistent.
    """
    aug = [list(r) + [Fraction(b)] for r, b in zip(rows, rhs)]
    if not aug:
        return [Fraction(0)] * ncols, nullspace([], ncols) if ncols else []
    red, pivots = _to_dm(aug, ncols + 1).rref()
    if ncols in pivots:
        return None
    red = red.to_Matrix()
    x = [Fraction(0)] * ncols
    for r, p in enumerate(pivots):
        x[p] = Fraction(str(red[r, ncols]))
    return x, nullspace(rows, ncols)
