from fractions import Fraction

import pytest

from blalg import sampling
from blalg.errors import NotPositive, PreconditionViolated
from blalg.sparse import (SparseFunctional, SparseSeq, approx_algebraic_identity_witness,
                          approx_order_unit_witness, first_mismatch, identity_failure, seq_abs, seq_norm,
                          seq_ops, unit_prefix, verify_f_algebra_sparse)

F = Fraction


def dense(x, n):
    return [x[i] for i in range(1, n + 1)]


class TestSparseSeq:
    def test_construction(self):
        x = SparseSeq({3: 1, 1: F(-1, 2), 7: 0})
        assert x.entries == ((1, F(-1, 2)), (3, F(1)))
        assert x.support == {1, 3} and x.max_index == 3 and x[2] == 0
        assert SparseSeq([(2, 1), (2, -1)]).entries == ()
        with pytest.raises(IndexError):
            SparseSeq({0: 1})

    def test_ops_match_dense(self, rng):
        ops = {"sup": max, "inf": min, "add": lambda a, b: a + b, "sub": lambda a, b: a - b,
               "mul": lambda a, b: a * b}
        for _ in range(100):
            x, y = sampling.sparse_seq(rng), sampling.sparse_seq(rng)
            n = max(x.max_index, y.max_index) + 2
            for op, fn in ops.items():
                assert dense(seq_ops(x, y, op), n) == [fn(a, b) for a, b in zip(dense(x, n), dense(y, n))]
            assert seq_norm(x) == max((abs(v) for v in dense(x, n)), default=0)
            assert seq_abs(x) == SparseSeq({i: abs(v) for i, v in x.entries})

    def test_norm_submultiplicative(self, rng):
        for _ in range(100):
            x, y = sampling.sparse_seq(rng), sampling.sparse_seq(rng)
            assert seq_norm(seq_ops(x, y, "mul")) <= seq_norm(x) * seq_norm(y)


class TestApproximateUnits:
    def test_unit_prefix(self):
        assert unit_prefix(0) == SparseSeq()
        assert unit_prefix(3).support == {1, 2, 3}
        with pytest.raises(ValueError):
            unit_prefix(-1)

    def test_order_unit(self, rng):
        for _ in range(100):
            f = sampling.sparse_functional(rng)
            big = f.max_index
            n_star = approx_order_unit_witness(f)
            assert n_star <= big
            for n in range(big, big + 5):
                assert f(unit_prefix(n)) == f.norm()
            if n_star:
                assert f(unit_prefix(n_star - 1)) < f.norm()
            # positive functionals attain their norm on the positive unit ball only in the limit
            assert first_mismatch(n_star, big + 3, lambda n: f(unit_prefix(n)) == f.norm()) is None

    def test_order_unit_rejects_signed(self):
        with pytest.raises(NotPositive):
            approx_order_unit_witness(SparseFunctional({1: 1, 2: -1}))
        assert approx_order_unit_witness(SparseFunctional()) == 0

    def test_algebraic_identity(self, rng):
        for _ in range(100):
            x = sampling.sparse_seq(rng)
            n_star = approx_algebraic_identity_witness(x)
            assert n_star == x.max_index
            for n in range(x.max_index, x.max_index + 5):
                assert seq_norm(seq_ops(seq_ops(unit_prefix(n), x, "mul"), x, "sub")) == 0
                assert seq_norm(seq_ops(seq_ops(x, unit_prefix(n), "mul"), x, "sub")) == 0
            if n_star:
                assert seq_norm(seq_ops(seq_ops(unit_prefix(n_star - 1), x, "mul"), x, "sub")) > 0

    def test_no_identity(self, rng):
        for _ in range(50):
            x = sampling.sparse_seq(rng)
            j, ej = identity_failure(x)
            assert seq_norm(seq_ops(x, ej, "mul")) == 0 != seq_norm(ej)


class TestFAlgebra:
    def test_random_disjoint(self, rng):
        samples = []
        for _ in range(50):
            x = sampling.sparse_seq(rng)
            y = SparseSeq({i: v for i, v in sampling.sparse_seq(rng).entries if i not in x.support})
            samples.append((x, y, sampling.sparse_seq(rng, positive=True)))
        assert verify_f_algebra_sparse(samples)

    def test_preconditions(self):
        with pytest.raises(PreconditionViolated):
            verify_f_algebra_sparse([(SparseSeq({1: 1}), SparseSeq({1: 1}), SparseSeq())])
        with pytest.raises(PreconditionViolated):
            verify_f_algebra_sparse([(SparseSeq({1: 1}), SparseSeq({2: 1}), SparseSeq({3: -1}))])
