from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mckay_dt.checks import random_series
from mckay_dt.coeff_ring import ONE, L, MotiveScalar, V, pochhammer
from mckay_dt.errors import (
    ConstantTermNotOne,
    GradingMismatch,
    NotAntisymmetric,
    NonzeroConstantTerm,
    NotNilpotent,
    ZeroExponentVector,
)
from mckay_dt.series import (
    Grading,
    MSeries,
    adams_series,
    exp_lambda,
    geometric_factor,
    log_lambda,
    monomial_substitution,
    pow_structure,
    product,
    quantum_mul,
    sign_flip,
    twist_Sv,
)

G1 = Grading(("y",), (1,), 6)
G2 = Grading(("y0", "y1"), (1, 1), 4)


def y(k=1, c=1, G=G1):
    return MSeries(G, {(k,): c})


def mono(e, c=1, G=G2):
    return MSeries(G, {tuple(e): c})


class TestGrading:
    def test_truncation_drops_high_terms(self):
        f = MSeries(Grading(("y",), (1,), 2), {(3,): 1, (2,): 5})
        assert f.terms == {(2,): MotiveScalar.from_int(5)}

    def test_points_respect_caps(self):
        G = Grading(("a", "b"), (1, 0), 2, (2, 1))
        assert list(G.points()) == [(0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (2, 1)]

    def test_unbounded_points(self):
        with pytest.raises(NotNilpotent):
            list(Grading(("a", "b"), (1, 0), 2).points())

    def test_json_round_trip(self):
        f = MSeries(G2, {(1, 0): V, (0, 2): ONE / (ONE - L)})
        assert MSeries.from_json(f.to_json()) == f
        assert [t["exp"] for t in f.to_json()["terms"]] == [[0, 2], [1, 0]]

    def test_mismatch(self):
        with pytest.raises(GradingMismatch):
            y() + mono((1, 0))


class TestProducts:
    def test_difference_of_squares(self):
        assert (1 + y()) * (1 - y()) == 1 - y(2)

    def test_unit(self):
        f = 1 + y(1, V) + y(3, L)
        assert f * MSeries.one(G1) == f

    def test_square(self):
        f = 1 + y(1, L)
        assert f * f == 1 + y(1, 2 * L) + y(2, L**2)

    def test_quantum_reduces_to_commutative(self):
        f, g = 1 + mono((1, 0)), 1 + mono((0, 1), V)
        assert quantum_mul(f, g, [[0, 0], [0, 0]]) == f * g

    def test_quantum_sign(self):
        assert quantum_mul(mono((1, 0)), mono((0, 1)), [[0, 1], [-1, 0]]) == mono((1, 1), -V)

    def test_quantum_noncommutative(self):
        S = [[0, 2], [-2, 0]]
        assert quantum_mul(mono((1, 0)), mono((0, 1)), S) == mono((1, 1), L)
        assert quantum_mul(mono((0, 1)), mono((1, 0)), S) == mono((1, 1), L.inverse())

    def test_antisymmetry_required(self):
        with pytest.raises(NotAntisymmetric):
            quantum_mul(mono((1, 0)), mono((0, 1)), [[0, 1], [1, 0]])

    @settings(max_examples=25, deadline=None)
    @given(
        st.lists(st.integers(-2, 2), min_size=3, max_size=3),
        st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 1)), min_size=3, max_size=3),
    )
    def test_quantum_associative_on_monomials(self, entries, exps):
        a, b, c = entries
        S = [[0, a, b], [-a, 0, c], [-b, -c, 0]]
        G = Grading(("x", "y", "z"), (1, 1, 1), 4)
        m = [MSeries(G, {e: 1}) for e in exps]
        left = quantum_mul(quantum_mul(m[0], m[1], S), m[2], S)
        right = quantum_mul(m[0], quantum_mul(m[1], m[2], S), S)
        assert left == right


class TestLambdaRing:
    def test_exp_geometric(self):
        assert exp_lambda(y(1, L)) == geometric_factor(L, (1,), 1, G1)

    def test_geometric_brute_expansion(self):
        expected = MSeries(G1, {(k,): L**k for k in range(7)})
        assert exp_lambda(y(1, L)) == expected

    @pytest.mark.parametrize("q", [V, L.inverse(), MotiveScalar.monomial(3)])
    def test_heine(self, q):
        G = Grading(("x",), (1,), 8)
        lhs = exp_lambda(MSeries(G, {(1,): (ONE - q).inverse()}))
        rhs = MSeries(G, {(n,): pochhammer(q, n).inverse() for n in range(9)})
        assert lhs == rhs

    def test_exp_is_additive(self):
        f, g = y(1, V) + y(2, 3), y(1, L) - y(3, V**3)
        assert exp_lambda(f + g) == exp_lambda(f) * exp_lambda(g)

    def test_log_geometric(self):
        assert log_lambda(geometric_factor(L, (1,), 1, G1)) == y(1, L)

    def test_log_one(self):
        assert log_lambda(MSeries.one(G1)) == MSeries.zero(G1)

    def test_constant_term_checks(self):
        with pytest.raises(NonzeroConstantTerm):
            exp_lambda(1 + y())
        with pytest.raises(ConstantTermNotOne):
            log_lambda(2 + y())

    def test_weight_zero_variable_is_rejected(self):
        G = Grading(("s", "q"), (1, 0), 3)
        with pytest.raises(NotNilpotent):
            exp_lambda(MSeries(G, {(0, 1): 1}))

    @settings(max_examples=30, deadline=None)
    @given(st.dictionaries(st.tuples(st.integers(1, 4), st.integers(-3, 3)), st.integers(-3, 3), max_size=4))
    def test_exp_of_effective_classes_is_a_product(self, data):
        # Exp(sum c v^k y^a) = prod (1 - v^k y^a)^(-c)
        f = MSeries(G1, {})
        factors = []
        for (a, k), c in data.items():
            f = f + y(a, MotiveScalar.monomial(k, c))
            factors.append(geometric_factor(MotiveScalar.monomial(k), (a,), c, G1))
        assert exp_lambda(f) == product(factors, G1)

    def test_random_round_trips(self):
        rng = random.Random(7)
        for _ in range(50):
            f = random_series(rng, rng.randint(1, 3), 6, rng.randint(1, 5))
            assert log_lambda(exp_lambda(f)) == f
            assert exp_lambda(log_lambda(1 + f)) == 1 + f


class TestPowerStructure:
    def test_pow_one(self):
        f = 1 + y(1, V) + y(2, 3)
        assert pow_structure(f, 1) == f

    def test_affine_line(self):
        # Sym^n of the affine line is A^n
        assert pow_structure(geometric_factor(1, (1,), 1, G1), L) == geometric_factor(L, (1,), 1, G1)

    def test_sum_over_maps_for_two_points(self):
        # Pow(f, [X]) for a two-point X is the sum over maps X -> N of prod a_{k(x)} y^{sum k}
        G = Grading(("y",), (1,), 3)
        a = [ONE, MotiveScalar.from_int(2), V, L - 1]
        f = MSeries(G, {(n,): a[n] for n in range(4)})
        terms = {}
        for k1, k2 in itertools.product(range(4), repeat=2):
            if k1 + k2 <= 3:
                terms[(k1 + k2,)] = terms.get((k1 + k2,), 0) + a[k1] * a[k2]
        assert pow_structure(f, 2) == MSeries(G, terms)

    def test_exponent_additive(self):
        f = 1 + y(1, V) - y(2, L)
        a, b = L, V + 2
        assert pow_structure(f, a + b) == pow_structure(f, a) * pow_structure(f, b)

    @settings(max_examples=15, deadline=None)
    @given(st.integers(-2, 2), st.integers(0, 3), st.integers(-2, 2), st.integers(0, 3))
    def test_exponent_multiplicative(self, c1, k1, c2, k2):
        G = Grading(("y", "z"), (1, 1), 4)
        f = MSeries(G, {(0, 0): 1, (1, 0): V, (0, 1): 2, (1, 1): L})
        g, h = MotiveScalar.monomial(k1, c1), MotiveScalar.monomial(k2, c2)
        assert pow_structure(f, g * h) == pow_structure(pow_structure(f, g), h)


class TestSubstitutions:
    def test_adams(self):
        assert adams_series(y(1, V), 2) == y(2, L)
        f = 1 + y(1, V)
        assert adams_series(f, 1) == f
        G = Grading(("a", "b"), (1, 1), 6)
        assert adams_series(MSeries(G, {(1, 0): 1, (0, 1): 1}), 3) == MSeries(G, {(3, 0): 1, (0, 3): 1})

    def test_twist(self):
        f = mono((1, 1), 3)
        assert twist_Sv(f, (1, 1)) == mono((1, 1), 3 * L)
        assert twist_Sv(f, (1, 0)) == mono((1, 1), -3 * V)
        g = 1 + mono((1, 0), V) + mono((1, 2), L)
        assert twist_Sv(g, (0, 0)) == g
        assert twist_Sv(twist_Sv(g, (2, -1)), (-2, 1)) == g

    def test_geometric(self):
        assert geometric_factor(V, (1,), 1, G1) == MSeries(G1, {(k,): V**k for k in range(7)})
        assert geometric_factor(V, (1,), 0, G1) == MSeries.one(G1)
        assert geometric_factor(V, (1,), 2, G1) == MSeries(G1, {(k,): (k + 1) * V**k for k in range(7)})
        assert geometric_factor(V, (1,), -2, G1) == 1 - y(1, 2 * V) + y(2, L)
        with pytest.raises(ZeroExponentVector):
            geometric_factor(V, (0,), 1, G1)

    def test_sign_flip(self):
        assert sign_flip(1 + mono((1, 0)), 0) == 1 - mono((1, 0))
        f = 1 + mono((1, 2)) + mono((2, 1), V)
        assert sign_flip(sign_flip(f, 0), 0) == f
        assert sign_flip(1 + mono((1, 2)), 0) == 1 - mono((1, 2))

    def test_monomial_substitution(self):
        f = 1 + y(1) + y(2, V)
        out = monomial_substitution(f, [(1, 1)], G2)
        assert out == 1 + mono((1, 1)) + mono((2, 2), V)
