"""Finitely supported sequences with the sup norm and coordinatewise product.

This is a dense subalgebra of ``c0`` with no identity. The prefix units
``e_n = e_1 + ... + e_n`` form an approximate order unit and an
approximate identity at the same time, and on finitely supported data
both limits are reached after finitely many steps, so "convergence" is
decided exactly by returning the index from which equality holds.

Indices are positive integers, as in the usual notation for sequences.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

from .errors import NotPositive, PreconditionViolated
from .lattice import Scalar, as_fraction, fraction_str


@dataclass(frozen=True)
class SparseSeq:
    entries: tuple[tuple[int, Fraction], ...]

    def __init__(self, entries: Union[Mapping[int, Scalar], Iterable[tuple[int, Scalar]]] = ()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        clean: dict[int, Fraction] = {}
        for i, v in items:
            if int(i) < 1:
                raise IndexError(f"sequence indices start at 1, got {i}")
            clean[int(i)] = clean.get(int(i), Fraction(0)) + as_fraction(v)
        object.__setattr__(self, "entries", tuple(sorted((i, v) for i, v in clean.items() if v)))

    def __getitem__(self, i: int) -> Fraction:
        return dict(self.entries).get(i, Fraction(0))

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.entries)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, _ in self.entries)

    @property
    def max_index(self) -> int:
        return self.entries[-1][0] if self.entries else 0

    def is_positive(self) -> bool:
        return all(v > 0 for _, v in self.entries)

    def __repr__(self) -> str:
        body = ", ".join(f"{i}: {fraction_str(v)}" for i, v in self.entries)
        return f"{type(self).__name__}({{{body}}})"


class SparseFunctional(SparseSeq):
    """Finitely supported element of ``l1``, acting by ``sum f_i x_i``."""

    def __call__(self, x: SparseSeq) -> Fraction:
        xs = x.as_dict()
        return sum((v * xs.get(i, 0) for i, v in self.entries), Fraction(0))

    def norm(self) -> Fraction:
        return sum((abs(v) for _, v in self.entries), Fraction(0))


def unit_prefix(n: int) -> SparseSeq:
    """``e_n = sum_{i <= n} e_i``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return SparseSeq({i: 1 for i in range(1, n + 1)})


_OPS = {
    "sup": max,
    "inf": min,
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
}


def seq_ops(x: SparseSeq, y: SparseSeq, op: str) -> SparseSeq:
    """Coordinatewise ``sup``, ``inf``, ``add``, ``sub`` or ``mul``.

    Coordinates outside both supports are 0, and every operation maps
    ``(0, 0)`` to 0, so only the union of the supports is visited.
    """
    fn = _OPS[op]
    xs, ys = x.as_dict(), y.as_dict()
    zero = Fraction(0)
    return SparseSeq({i: fn(xs.get(i, zero), ys.get(i, zero)) for i in xs.keys() | ys.keys()})


def seq_norm(x: SparseSeq) -> Fraction:
    return max((abs(v) for _, v in x.entries), default=Fraction(0))


def seq_abs(x: SparseSeq) -> SparseSeq:
    return SparseSeq({i: abs(v) for i, v in x.entries})


def approx_order_unit_witness(f: SparseFunctional) -> int:
    """Least ``N`` with ``f(e_n) = ||f||`` for every ``n >= N``.

    The partial sums ``f(e_n)`` of a positive functional increase to
    ``||f||`` and stay there, so the scan stops at the first exact hit.
    """
    if any(v < 0 for _, v in f.entries):
        raise NotPositive(f"{f!r} is not a positive functional")
    target = f.norm()
    if target == 0:
        return 0
    running = Fraction(0)
    for i, v in f.entries:
        running += v
        if running == target:
            return i
    raise AssertionError("partial sums never reached the norm")


def approx_algebraic_identity_witness(x: SparseSeq) -> int:
    """Least ``N`` with ``e_n x = x`` for every ``n >= N``."""
    best = 0
    for i, _ in x.entries:
        if seq_norm(seq_ops(seq_ops(unit_prefix(i - 1), x, "mul"), x, "sub")) != 0:
            best = i
    return best


def identity_failure(x: SparseSeq) -> tuple[int, SparseSeq]:
    """An atom ``e_j`` with ``x e_j = 0 != e_j``: no finite element is an identity."""
    j = x.max_index + 1
    ej = SparseSeq({j: 1})
    assert seq_norm(seq_ops(x, ej, "mul")) == 0
    return j, ej


def _disjoint(x: SparseSeq, y: SparseSeq) -> bool:
    return seq_norm(seq_ops(seq_abs(x), seq_abs(y), "inf")) == 0


def verify_f_algebra_sparse(samples: Sequence[tuple[SparseSeq, SparseSeq, SparseSeq]]) -> bool:
    """Check ``(h x) ^ y = 0 = (x h) ^ y`` for each disjoint ``x, y`` and ``h >= 0``."""
    for x, y, h in samples:
        if not _disjoint(x, y):
            raise PreconditionViolated("disjoint pair", f"{x!r} and {y!r} overlap")
        if any(v < 0 for _, v in h.entries):
            raise PreconditionViolated("positive multiplier", f"{h!r} has a negative entry")
    return all(_disjoint(seq_ops(h, x, "mul"), y) and _disjoint(seq_ops(x, h, "mul"), y) for x, y, h in samples)


def first_mismatch(n_from: int, n_to: int, check) -> Optional[int]:
    """First ``n`` in ``[n_from, n_to]`` where ``check(n)`` is false."""
    return next((n for n in range(n_from, n_to + 1) if not check(n)), None)
