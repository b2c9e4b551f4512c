from __future__ import annotations

import json
import random
from fractions import Fraction

import pytest

from mckay_dt.coeff_ring import ONE, L, MotiveScalar, V, pochhammer
from mckay_dt.dtinv import (
    EulerSeries,
    OmegaTable,
    SQSeries,
    affine_kac_table,
    c3_series,
    euler_limit,
    framed_series,
    gv_extract,
    hilbert_series_ZY,
    hilbert_series_ZY_exp,
    is_positive,
    jordan_kac_table,
    local_factor,
    local_factor_data,
    macmahon,
    macmahon_coefficients,
    mckay_box_grading,
    mckay_grading,
    mckay_series,
    omega_extract,
    pt_euler_symbolic,
    universal_series,
    universal_series_via_pow,
)
from mckay_dt.dtinv.limits import T_VARIABLE, _multiplicity_generating_function
from mckay_dt.errors import ConstantTermNotOne, MissingKacEntry, NotGeneric, NotPolynomialInT
from mckay_dt.repcount import IntPolynomial, KacTable
from mckay_dt.roots import Root, from_type, positive_roots_up_to
from mckay_dt.series import Grading, MSeries, geometric_factor, product, sign_flip

INV = (ONE - L.inverse()).inverse()


def jordan_grading(N):
    return Grading(("y",), (1,), N)


class TestUniversal:
    def test_jordan_first_coefficient(self):
        A = universal_series(jordan_kac_table(), jordan_grading(3))
        assert A.coefficient((1,)) == L**2 / (L - 1)

    def test_a1_imaginary_argument(self):
        R = from_type("A1~")
        K = affine_kac_table(R)
        assert K.motive((1, 1)) * INV == (L + 1) / (ONE - L.inverse())
        A = universal_series(K, mckay_box_grading(R, 1))
        # y^{(1,1)}: the imaginary term plus the product of the two simple terms
        assert A.coefficient((1, 1)) == (L + 1) * INV + INV * INV

    def test_paths_agree_on_jordan(self):
        G = jordan_grading(4)
        assert universal_series(jordan_kac_table(), G) == universal_series_via_pow(jordan_kac_table(), G)

    def test_paths_agree_on_a1(self):
        R = from_type("A1~")
        G = mckay_box_grading(R, 2)
        K = affine_kac_table(R)
        assert universal_series(K, G) == universal_series_via_pow(K, G)

    def test_single_real_root(self):
        G = jordan_grading(5)
        K = KacTable({(1,): IntPolynomial((1,))})
        expected = MSeries(G, {(m,): pochhammer(L.inverse(), m).inverse() for m in range(6)})
        assert universal_series(K, G) == expected == universal_series_via_pow(K, G)

    def test_empty_table(self):
        G = jordan_grading(3)
        assert universal_series(KacTable(), G) == MSeries.one(G)
        assert universal_series_via_pow(KacTable(), G) == MSeries.one(G)

    def test_missing_entry(self):
        K = KacTable({(1,): IntPolynomial((0, 1))}, source="oracle-interpolated", complete=False)
        with pytest.raises(MissingKacEntry):
            universal_series(K, jordan_grading(2))

    def test_omega_requires_unit_constant(self):
        with pytest.raises(ConstantTermNotOne):
            omega_extract(MSeries(jordan_grading(2), {(0,): 2}))

    def test_jordan_omega(self):
        om = omega_extract(universal_series(jordan_kac_table(), jordan_grading(5)))
        assert om.items() == [((n,), L) for n in range(1, 6)]

    def test_a1_omega(self):
        R = from_type("A1~")
        G = mckay_box_grading(R, 3)
        om = omega_extract(universal_series(affine_kac_table(R), G))
        for a in G.points():
            root = R.classify(a) if any(a) else None
            expected = ONE if root and root.is_real else (L + 1 if root else MotiveScalar.from_int(0))
            assert om.get(a) == expected

    def test_random_round_trips(self):
        rng = random.Random(3)
        for _ in range(10):
            G = Grading(("a", "b"), (1, 1), rng.randint(2, 5))
            pts = [e for e in G.points() if any(e)]
            entries = {
                e: IntPolynomial(tuple(rng.randint(-2, 2) for _ in range(rng.randint(1, 3))))
                for e in rng.sample(pts, min(5, len(pts)))
            }
            K = KacTable(entries)
            om = omega_extract(universal_series(K, G))
            for e in pts:
                assert om.get(e) == K.motive(e)

    def test_positivity(self):
        assert is_positive(L + 3)
        assert is_positive(ONE)
        assert not is_positive(L - 1)
        assert not is_positive(ONE / (ONE - L))
        assert is_positive(-V)


class TestFactors:
    def test_finite_root_factor_is_one(self):
        R = from_type("A2~")
        G = mckay_grading(R, 3)
        root = positive_roots_up_to(R, 0)[0]
        assert local_factor(root, R.rank, G) == MSeries.one(G)

    def test_real_level_one(self):
        R = from_type("A1~")
        G = mckay_grading(R, 3)
        root = R.classify((1, 0))
        assert local_factor(root, 1, G) == geometric_factor(V, (1, 0), 1, G)

    def test_imaginary_level_one(self):
        R = from_type("A1~")
        G = mckay_grading(R, 3)
        root = R.classify((1, 1))
        expected = geometric_factor(V**3, (1, 1), 1, G) * geometric_factor(V, (1, 1), 1, G)
        assert local_factor(root, 1, G) == expected

    def test_factor_data(self):
        root = Root(2, "im", (2, 2), (0, 0))
        assert local_factor_data(root, 3) == [(2, 1), (0, 3), (4, 1), (2, 3)]


class TestFramed:
    def setup_method(self):
        self.R = from_type("A1~")
        self.G = mckay_grading(self.R, 3)
        self.w = (1, 0)

    def test_empty(self):
        assert framed_series(OmegaTable(), (-1, 1), self.w, self.G) == MSeries.one(self.G)

    def test_all_positive(self):
        om = OmegaTable({(1, 0): ONE, (1, 1): L + 1})
        assert framed_series(om, (1, 1), self.w, self.G) == MSeries.one(self.G)

    def test_not_generic(self):
        om = OmegaTable({(1, 1): L + 1})
        with pytest.raises(NotGeneric) as err:
            framed_series(om, (-1, 1), self.w, self.G)
        assert err.value.alpha == (1, 1)

    def test_single_real_root(self):
        om = OmegaTable({(2, 1): ONE})
        F = framed_series(om, (-2, 1), self.w, self.G)
        root = self.R.classify((2, 1))
        assert sign_flip(F, 0) == local_factor(root, 1, self.G)

    @pytest.mark.parametrize("tag", ["A1~", "A2~"])
    def test_factorization(self, tag):
        R = from_type(tag)
        N = 4 if tag == "A1~" else 3
        G = mckay_grading(R, N)
        om = OmegaTable.from_kac(affine_kac_table(R), [r.vector for r in positive_roots_up_to(R, N)])
        zeta = (Fraction(-R.r) - Fraction(1, 100),) + (Fraction(1),) * R.rank
        assert sign_flip(framed_series(om, zeta, (1,) + (0,) * R.rank, G), 0) == mckay_series(R, "dt", N).series


class TestMcKaySeries:
    def test_a1_pt_first_coefficient(self):
        Z = mckay_series(from_type("A1~"), "pt", 2)
        assert Z.coefficient(1, (1,)) == V
        assert Z.convention == "minus_s"

    def test_order_zero(self):
        for tag in ("A1~", "D4~"):
            R = from_type(tag)
            for mode in ("pt", "dt", "ncdt"):
                assert mckay_series(R, mode, 0).series == MSeries.one(mckay_grading(R, 0))

    def test_a1_dt_is_pt_times_explicit_product(self):
        R = from_type("A1~")
        N = 4
        G = mckay_grading(R, N)
        extra = [
            geometric_factor(MotiveScalar.monomial(2 * j + 2 - n), (n, n), 1, G)
            * geometric_factor(MotiveScalar.monomial(2 * j - n), (n, n), 1, G)
            for n in range(1, N + 1)
            for j in range(1, n + 1)
        ]
        assert mckay_series(R, "dt", N).series == mckay_series(R, "pt", N).series * product(extra, G)

    def test_convention_flag(self):
        Z = mckay_series(from_type("A1~"), "pt", 2)
        plus = Z.with_convention("plus_s")
        assert plus.coefficient(1, (1,)) == -V
        assert plus.with_convention("minus_s") == Z

    @pytest.mark.parametrize("tag", ["A1~", "D4~"])
    def test_json_round_trip_is_byte_identical(self, tag):
        Z = mckay_series(from_type(tag), "ncdt", 2)
        text = json.dumps(Z.to_json(), sort_keys=True)
        again = SQSeries.from_json(json.loads(text))
        assert again == Z
        assert json.dumps(again.to_json(), sort_keys=True) == text

    def test_ncdt_has_negative_q_exponents(self):
        Z = mckay_series(from_type("A1~"), "ncdt", 1)
        assert Z.coefficient(1, (-1,)) != 0


class TestHilbert:
    def test_c3_first_coefficient(self):
        assert hilbert_series_ZY(0, 3).coefficient((1,)) == V**3

    def test_l_zero_is_c3(self):
        assert hilbert_series_ZY(0, 4) == c3_series(4)

    @pytest.mark.parametrize("l", [0, 1, 2, 5])
    def test_two_closed_forms_agree(self, l):
        assert hilbert_series_ZY(l, 5) == hilbert_series_ZY_exp(l, 5)

    @pytest.mark.parametrize("tag", ["A3~", "D5~"])
    def test_dt_pt_identity_other_types(self, tag):
        R = from_type(tag)
        N = 3
        assert mckay_series(R, "dt", N) / mckay_series(R, "pt", N) == hilbert_series_ZY(R.rank, N, R)


class TestLimits:
    def test_macmahon(self):
        assert macmahon_coefficients(5) == [1, 1, 3, 6, 13, 24]
        M = macmahon((1,), 3)
        assert [M.coefficient(n, (1,)) for n in range(4)] == [0, 1, 2, 3]
        assert all(M.coefficient(n, (0,)) == (n == 0) for n in range(4))

    def test_a1_pt_limit(self):
        E = euler_limit(mckay_series(from_type("A1~"), "pt", 3))
        assert E.coefficient(1, (1,)) == 1

    def test_dt_over_pt_limit(self):
        R = from_type("A1~")
        N = 5
        ratio = euler_limit(mckay_series(R, "dt", N) / mckay_series(R, "pt", N))
        M = macmahon(None, N, 1)
        assert ratio == M * M

    @pytest.mark.parametrize("tag", ["A1~", "A2~", "D4~"])
    def test_pt_limit(self, tag):
        R = from_type(tag)
        N = 4
        expected = EulerSeries.one(R.rank, N)
        for b in R.finite_positive_roots:
            expected = expected * macmahon(b[1:], N)
        assert euler_limit(mckay_series(R, "pt", N)) == expected


class TestGV:
    def grading(self):
        return Grading(("Q",), (1,), 3)

    def test_conifold_like(self):
        f = MotiveScalar.laurent(-1, [1, -2, 1]).inverse()  # 1/(q + 1/q - 2)
        G = self.grading()
        from mckay_dt.series import exp_lambda

        assert gv_extract(exp_lambda(MSeries(G, {(1,): f}))) == {(0, (1,)): -1}

    def test_zero(self):
        assert gv_extract(MSeries.one(self.grading())) == {}

    def test_higher_genus(self):
        from mckay_dt.series import exp_lambda

        f = 3 * ONE + 2 * T_VARIABLE  # n_1 = 3, n_2 = 2
        assert gv_extract(exp_lambda(MSeries(self.grading(), {(1,): f}))) == {(1, (1,)): 3, (2, (1,)): 2}

    def test_not_polynomial(self):
        from mckay_dt.series import exp_lambda

        with pytest.raises(NotPolynomialInT):
            gv_extract(exp_lambda(MSeries(self.grading(), {(1,): V})))

    @pytest.mark.parametrize("tag", ["A1~", "A2~", "D4~"])
    def test_mckay(self, tag):
        R = from_type(tag)
        assert gv_extract(pt_euler_symbolic(R)) == {(0, b[1:]): -1 for b in R.finite_positive_roots}

    @pytest.mark.parametrize("tag", ["A2~", "D4~"])
    def test_symbolic_matches_numeric_limit(self, tag):
        R = from_type(tag)
        N = 4
        Z = pt_euler_symbolic(R)
        E = euler_limit(mckay_series(R, "pt", N))
        for beta, c in Z.terms.items():
            t = c.taylor(N)
            assert all(t.get(n, 0) == E.coefficient(n, beta) for n in range(N + 1))

    def test_multiplicity_sums(self):
        one_minus = MotiveScalar.laurent(0, [1, -1])
        assert _multiplicity_generating_function([1, 2, 3, 4, 5, 6]) == V / one_minus**2
        squares = [n * n for n in range(1, 8)]
        assert _multiplicity_generating_function(squares) == V * (ONE + V) / one_minus**3
        with pytest.raises(NotPolynomialInT):
            _multiplicity_generating_function([2**n for n in range(1, 8)])
