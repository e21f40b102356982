from fractions import Fraction
from itertools import product

import numpy as np
import pytest
import sympy
from scipy.optimize import linprog

from blalg import sampling
from blalg.algebra import AlgebraSpec, StructureTensor
from blalg.constructions import c0_R, cyclic_convolution, pointwise, twisted_linf2, zero_product
from blalg.errors import (AxiomFailure, ContradictsSubalgebra, IdentityNotOrderUnit, NoIdentity, NotAM,
                          NotSubalgebra)
from blalg.lattice import NormSpec
from blalg.representation import (ConstraintSystem, classify_am_algebra, forced_zero_coordinates,
                                  martignon_products, quotient_representation, represent_am_unit,
                                  solve_nonnegative, subalgebra_check, transport_tensor,
                                  transported_product_matches, unit_identity_system)

F = Fraction
HALF = F(1, 2)


def lp_feasible_box(n):
    """Range of each unknown over {c >= 0 : e = 1 is a two-sided identity}, by LP."""
    rows, rhs = unit_identity_system(n)
    a = np.array(rows, dtype=float)
    b = np.array(rhs, dtype=float)
    lo, hi = [], []
    for p in range(n ** 3):
        cost = np.zeros(n ** 3)
        cost[p] = 1.0
        rmin = linprog(cost, A_eq=a, b_eq=b, bounds=(0, None), method="highs")
        rmax = linprog(-cost, A_eq=a, b_eq=b, bounds=(0, None), method="highs")
        assert rmin.status == 0 and rmax.status == 0
        lo.append(rmin.fun)
        hi.append(-rmax.fun)
    return lo, hi


def sympy_nullspace(cs):
    m = cs.ambient_dim
    if not cs.constraints:
        return [[F(int(p == q)) for p in range(m)] for q in range(m)]
    rows = [[sympy.Rational(a.numerator, a.denominator) for a in r] for r in cs.equations()]
    return [[F(int(v.p), int(v.q)) for v in vec] for vec in sympy.Matrix(rows).nullspace()]


class TestRepresentAMUnit:
    def test_random_diagonal(self, rng):
        for _ in range(50):
            spec = sampling.diagonal_spec(rng)
            rep = represent_am_unit(spec)
            assert rep.is_pointwise and rep.transported_tensor == StructureTensor.kronecker(spec.dim)
            for _ in range(5):
                x, y = sampling.element(rng, spec.dim), sampling.element(rng, spec.dim)
                assert rep.inverse(rep.apply(x)) == x
                assert transported_product_matches(rep, x, y, spec.tensor)
                # isometry onto plain sup
                assert max(abs(v) for v in rep.apply(x)) == max(abs(v) * w for v, w in zip(x, spec.norm.weights))

    def test_rejections(self):
        with pytest.raises(IdentityNotOrderUnit):
            represent_am_unit(c0_R(2))
        with pytest.raises(NoIdentity):
            represent_am_unit(twisted_linf2())
        with pytest.raises(NotAM):
            represent_am_unit(cyclic_convolution(3))
        neg = AlgebraSpec(NormSpec.sup(1), StructureTensor(1, [[[-1]]]))
        with pytest.raises(AxiomFailure):
            represent_am_unit(neg)
        # d != w: identity (1/2) is not the order unit 1
        with pytest.raises(IdentityNotOrderUnit):
            represent_am_unit(AlgebraSpec(NormSpec.sup(1), StructureTensor(1, [[[2]]])))

    def test_transport_roundtrip(self, rng):
        for _ in range(20):
            t = sampling.nonnegative_tensor(rng)
            w = sampling.weights(rng, t.dim)
            back = transport_tensor(transport_tensor(t, w), [1 / v for v in w])
            assert back == t

    def test_three_way_classification(self, rng):
        # represent_am_unit, classify_am_algebra and a direct oracle agree
        cases = [pointwise(3), pointwise(2, [F(1, 3), 5]), twisted_linf2(), c0_R(2), cyclic_convolution(3),
                 zero_product(2)]
        for _ in range(40):
            n = rng.randint(1, 4)
            w = sampling.weights(rng, n)
            d = [v if rng.random() < 0.7 else v * 2 for v in w]
            cases.append(AlgebraSpec(NormSpec.sup(w), StructureTensor.kronecker(n, d)))
        verdicts = set()
        for spec in cases:
            oracle = spec.norm.kind.value == "weighted_sup" and spec.tensor == StructureTensor.kronecker(
                spec.dim, spec.norm.weights)
            try:
                represent_am_unit(spec)
                rep_ok = True
            except Exception:
                rep_ok = False
            assert classify_am_algebra(spec).ok == rep_ok == oracle
            verdicts.add(oracle)
        assert verdicts == {True, False}


class TestMartignon:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_lp_oracle(self, n):
        lo, hi = lp_feasible_box(n)
        kron = StructureTensor.kronecker(n)
        for p, (i, j, k) in enumerate(product(range(n), repeat=3)):
            want = float(kron[i, j, k])
            assert abs(lo[p] - want) < 1e-9 and abs(hi[p] - want) < 1e-9
        assert martignon_products(n) == {kron}

    def test_solve_nonnegative(self):
        # x + y = 0 forces both to zero, then z = 2
        sol = solve_nonnegative([[F(1), F(1), F(0)], [F(0), F(0), F(1)]], [F(0), F(2)], 3)
        assert sol.point == (0, 0, 2) and sol.forced_zero == {0, 1}
        assert solve_nonnegative([[F(1)]], [F(-1)], 1).empty
        free = solve_nonnegative([[F(1), F(1)]], [F(1)], 2)
        assert free.point is None and free.free_dimension == 1
        with pytest.raises(ValueError):
            martignon_products(0)


class TestConstraints:
    def test_examples(self):
        cs = ConstraintSystem(3, [(0, 1, 1), (2, 2, 0)])
        assert forced_zero_coordinates(cs) == {2}
        assert subalgebra_check(cs)
        q = quotient_representation(cs)
        assert q.classes == ((0, 1), (2,))
        assert q.zero_set == (1,) and q.dimension == 1

        bad = ConstraintSystem(2, [(0, 1, HALF)])
        v = subalgebra_check(bad)
        assert not v
        u, w, uw = v.witness
        assert not bad.contains(uw)
        with pytest.raises(NotSubalgebra):
            quotient_representation(bad)

        # 1/2 on a forced-zero source is harmless
        ok = ConstraintSystem(3, [(1, 1, 0), (0, 1, HALF)])
        q = quotient_representation(ok)
        assert forced_zero_coordinates(ok) == {0, 1}
        assert q.dimension == 1

    def test_validation(self):
        with pytest.raises(ValueError):
            ConstraintSystem(2, [(0, 1, -1)])
        with pytest.raises(IndexError):
            ConstraintSystem(2, [(0, 2, 1)])

    def test_random_quotients_against_oracle(self, rng):
        for _ in range(60):
            cs = sampling.constraint_system(rng, scalars=(0, 1))
            m = cs.ambient_dim
            basis = sympy_nullspace(cs)
            zeros = {p for p in range(m) if all(b[p] == 0 for b in basis)}
            assert forced_zero_coordinates(cs) == zeros
            q = quotient_representation(cs)
            assert q.dimension == len(basis)
            # classes are exactly the inseparability classes off the zero set
            for p, r in product(range(m), repeat=2):
                if p in zeros or r in zeros:
                    continue
                assert (q.class_of(p) == q.class_of(r)) == all(b[p] == b[r] for b in basis)
            # membership: every g vanishing on the zero set pulls back into the solution space
            for _ in range(5):
                g = [F(0) if ci in q.zero_set else sampling.rational(rng) for ci in range(len(q.classes))]
                f = q.pullback(g)
                assert cs.contains(f) and q.embed(f) == tuple(g)
            if q.zero_set:
                g = [F(int(ci == q.zero_set[0])) for ci in range(len(q.classes))]
                assert not q.in_image(g) and not cs.contains(q.pullback(g))

    def test_half_without_forced_zero_rejected(self, rng):
        hits = 0
        for _ in range(200):
            cs = sampling.constraint_system(rng, max_dim=6, scalars=(0, 1, HALF))
            forced = forced_zero_coordinates(cs)
            if not any(lam == HALF and s not in forced for _, s, lam in cs.constraints):
                continue
            hits += 1
            assert not subalgebra_check(cs)
            with pytest.raises(NotSubalgebra):
                quotient_representation(cs)
        assert hits > 20

    def test_never_contradicts(self, rng):
        for _ in range(200):
            cs = sampling.constraint_system(rng, max_dim=6, scalars=(0, 1, HALF, 2))
            try:
                quotient_representation(cs)
            except NotSubalgebra:
                pass
            except ContradictsSubalgebra:  # pragma: no cover
                pytest.fail(f"ContradictsSubalgebra on {cs}")
