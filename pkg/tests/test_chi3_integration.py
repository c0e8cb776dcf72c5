#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Integration tests reproducing the chi3 results on the shipped fixtures

These run the quick profile; they are marked slow.
"""

import os
from fractions import Fraction

import mpmath as mp
import pytest
import sympy

from asymptotics import chi3_limit, leading_limit, model_from_singular
from connect import convergence_radius, path_consistency
from defaults import get_profile
from diffop import load_operator, op_mul, singular_points, verify_factor
from exactalg import parse_poly
from fixtures_loader import FIXTURE_DIR, load_fixture
from frobenius import local_basis, to_num
from monodromy import global_monodromy, jordan_blocks, local_monodromy, product_identity
from mpkernel import i3_plus, tolerance
from physical import cancellation_test, decompose_at, log_forms, physical_series, singular_part
from recognize import RecognitionBasis, recognize_matrix, recognize_value

pytestmark = [pytest.mark.slow, pytest.mark.integration]

PRECISION, TERMS = get_profile("quick")

TABLE = {
    "0": ((1, 1, 2), 1, 1, (1, 1, 1, 2, 2, 3), 3, 2),
    "-1/4": (("-1/2", 0, 1), 0, 0, ("-1/2", 0, 0, 0, 1, 2), 2, 2),
    "1/4": (("-3/2", -1, -1), 1, 1, ("-3/2", -1, -1, 0, 0, 0), 3, 2),
    "inf": ((0, 0, 1), 1, 1, (0, 0, 1, 1, 1, 2), 3, 2),
    "-1/2": ((0, 1, 3), 1, 1, (0, 1, 2, 3, 3, 4), 1, 1),
    "1": ((0, 1, 3), 1, 1, (0, 1, 2, 3, 3, 4), 1, 1),
    "w1": ((0, 1, 1), 1, 1, (0, 1, 1, 2, 3, 4), 1, 1),
    "w2": ((0, 1, 1), 1, 1, (0, 1, 1, 2, 3, 4), 1, 1),
}


def close(a, b, digits=20):
    """Numeric agreement of exact or mpmath values"""
    return abs(to_num(a) - to_num(b)) <= mp.mpf(10) ** (-digits) * max(1, abs(to_num(b)))


def fractions(values):
    return tuple(Fraction(str(v)) for v in values)


@pytest.fixture(autouse=True, scope="module")
def quick_precision():
    """Run the module at the quick profile precision"""
    saved = mp.mp.dps
    mp.mp.dps = PRECISION
    yield
    mp.mp.dps = saved


@pytest.fixture(scope="module")
def z2n1(quick_precision):
    return load_fixture("chi3-Z2N1")


@pytest.fixture(scope="module")
def l6(quick_precision):
    return load_fixture("chi3-L6")


class TestLocalStructure:
    """Test exponents and log counts at every singular point"""

    @pytest.mark.parametrize("name", sorted(TABLE))
    def test_z2n1(self, z2n1, name):
        exps, count, power = TABLE[name][:3]
        info = z2n1.point_info(name)
        assert tuple(sorted(info.exponents)) == fractions(exps)
        assert info.log_count == count
        assert info.max_log_power == power

    @pytest.mark.parametrize("name", sorted(TABLE))
    def test_l6(self, l6, name):
        exps, count, power = TABLE[name][3:]
        info = l6.point_info(name)
        assert tuple(sorted(info.exponents)) == fractions(exps)
        assert info.log_count == count
        assert info.max_log_power == power


class TestPinnedSeries:
    """Test pinned bases against the quoted series"""

    def test_z2n1_at_zero(self, z2n1):
        basis = z2n1.basis("0", TERMS)
        s2, s3 = basis.solutions[1], basis.solutions[2]
        for n, v in enumerate([0, 1, 5, 26, 106, 484]):
            assert close(s2.coefficient(n, 0), v)
            assert close(s3.coefficient(n, 1), v)
        s30 = [0, 0, 0, 6, 26, Fraction(529, 3), Fraction(2149, 3)]
        for n, v in enumerate(s30):
            assert close(s3.coefficient(n, 0), v)

    def test_z2n1_at_quarter(self, z2n1):
        """Test the pole solution and the log(x/24) chain"""
        basis = z2n1.basis("1/4", TERMS)
        s2, s3 = basis.solutions[1], basis.solutions[2]
        s2_coeffs = [1, Fraction(-3, 4), Fraction(-5, 96), Fraction(-3, 64), Fraction(-1801, 55296)]
        for n, v in enumerate(s2_coeffs):
            assert close(s2.coefficient(n - 1, 0), v)
            assert close(s3.coefficient(n - 1, 1), v)
        shift = mp.mpf(2) / 3 - mp.log(24)
        assert close(s3.coefficient(-1, 0), shift)
        assert close(s3.coefficient(0, 0), Fraction(3, 8) + shift * Fraction(-3, 4))

    def test_l6_at_zero(self, l6):
        basis = l6.basis("0", TERMS)
        s4, s5, s6 = basis.solutions[3:]
        s4_coeffs = [0, 1, 9, 34, 178, 692]
        s50 = [0, 0, 0, -2, 34, Fraction(241, 3)]
        s60 = [0, 0, 0, 0, Fraction(-19, 3), Fraction(-7693, 72)]
        for n in range(6):
            assert close(s4.coefficient(n, 0), s4_coeffs[n])
            assert close(s5.coefficient(n, 1), s4_coeffs[n])
            assert close(s5.coefficient(n, 0), s50[n] - Fraction(s4_coeffs[n], 4))
            assert close(s6.coefficient(n, 0), s60[n] - Fraction(s50[n]) / 2 + Fraction(25, 16) * s4_coeffs[n])

    def test_l6_at_quarter(self, l6):
        basis = l6.basis("1/4", TERMS)
        s4 = basis.solutions[3]
        for n, v in enumerate([1, Fraction(-1, 8), Fraction(3, 16), Fraction(29, 512)]):
            assert close(s4.coefficient(n, 0), v)


class TestConnection:
    """Test C(0, 1/4) against closed forms"""

    @pytest.fixture
    def closed_rows(self):
        pi = mp.pi
        s3 = mp.sqrt(3)
        return [
            [1, 0, 0, 0, 0, 0],
            [1, 0, -9 * s3 / (64 * pi), 0, 0, 0],
            [0, -3 * pi * s3 / 32, 0, 0, 0, 0],
            [5, mp.mpf(1) / 3 - 2 * i3_plus(), 3 * s3 / (64 * pi), 0, 0, 1 / (16 * pi ** 2)],
            [mp.mpf(-5) / 4, -3 * pi * s3 / 32, 45 * s3 / (256 * pi), 0, mp.mpf(1) / 32, 0],
            [mp.mpf(29) / 16 - 2 * pi ** 2 / 3, 15 * pi * s3 / 64,
             -225 * s3 / (1024 * pi) - 3 * pi * s3 / 64, pi ** 2 / 64, 0, 0],
        ]

    def test_z2n1(self, z2n1, closed_rows):
        conn = z2n1.connection("1/4", TERMS)
        assert conn.order == 3
        for i in range(3):
            for j in range(3):
                assert close(conn.entries[i, j], closed_rows[i][j], 25)

    def test_l6(self, l6, closed_rows):
        conn = l6.connection("1/4", TERMS)
        assert conn.order == 6
        for i in range(6):
            for j in range(6):
                assert close(conn.entries[i, j], closed_rows[i][j], 20)


class TestDesignatedSolution:
    """Test the susceptibility series and its growth"""

    @pytest.fixture(scope="class")
    def setup(self, l6):
        phys = l6.physical
        weights = [Fraction(w) for w in phys["weights"]]
        rational = sympy.sympify(phys["rational"], locals={"w": sympy.Symbol("w")})
        return weights, rational

    def test_leading_terms(self, l6, setup):
        weights, rational = setup
        series = physical_series(l6.basis("0", TERMS), weights, 15, rational)
        expected = [0] * 9 + [8, 0, 288, 32, 7072, 1568]
        for n, v in enumerate(expected):
            assert close(series[n], v, 25)

    def test_parity_at_500(self, l6, setup):
        """Test the even/odd split of c(n)/4^n near n = 500"""
        weights, rational = setup
        length = 511
        series = physical_series(l6.basis("0", length), weights, length, rational)
        values = sorted(to_num(series[n + 9]) / 8 / mp.mpf(4) ** n for n in (500, 501))
        assert abs(values[0] / 11 - 1) < 0.02
        assert abs(values[1] / mp.mpf("13.5") - 1) < 0.02

    def test_pole_limit(self, l6, setup):
        """Test that the pole amplitude at 1/4 gives 2^14 I3"""
        weights, rational = setup
        conn = l6.connection("1/4", TERMS)
        d = decompose_at(weights, conn, l6.basis("1/4", TERMS), rational)
        parts = {l6.point_info("1/4").value(): singular_part(d, 3, 15)}
        model = model_from_singular(parts, 9, mp.mpf(8))
        assert abs(leading_limit(model) - chi3_limit()) < mp.mpf(10) ** -10
        assert close(chi3_limit(), mp.mpf("13.34415467"), 8)


@pytest.fixture(scope="module")
def designated(l6):
    """Weights and rational summand of the susceptibility"""
    phys = l6.physical
    weights = [Fraction(w) for w in phys["weights"]]
    rational = sympy.sympify(phys["rational"], locals={"w": sympy.Symbol("w")})
    return weights, rational


def monodromy_at(fx, name):
    return global_monodromy(fx.connection(name, TERMS), local_monodromy(fx.basis(name, TERMS)))


def matrix_close(m, rows, digits):
    n = len(rows)
    return all(close(m[i, j], rows[i][j], digits) for i in range(n) for j in range(n))


class TestAlgebraicPoints:
    """Test points whose locations are roots of irreducible factors of degree above one"""

    @pytest.fixture(scope="class")
    def y3_points(self, quick_precision):
        return singular_points(load_operator(os.path.join(FIXTURE_DIR, "Y3.op")))

    def test_y3_apparent_points(self, y3_points):
        """Test the 28 roots of the large factor"""
        large = [p for p in y3_points if not p.is_infinity and p.location.degree == 28]
        assert len(large) == 28
        assert all(p.apparent and p.log_count == 0 for p in large)

    def test_y3_quartic_points(self, y3_points):
        """Test the pole solution at the roots of the quartic factor"""
        quartic = [p for p in y3_points if not p.is_infinity and p.location.degree == 4]
        assert len(quartic) == 4
        for p in quartic:
            assert tuple(sorted(p.exponents)) == (Fraction(-1), Fraction(1), Fraction(2))
            assert p.log_count == 0
            assert not p.apparent

    def test_l6_extra_points(self, l6):
        """Test that no irrational point beyond w1, w2 carries monodromy"""
        extra = [p for p in l6.singular() if not p.is_infinity and p.location.degree > 2]
        assert extra
        assert all(p.apparent for p in extra)

    def test_z2n1_quartic_points(self, z2n1):
        quartic = [p for p in z2n1.singular("Z2N1") if not p.is_infinity and p.location.degree == 4]
        assert len(quartic) == 4
        assert all(p.apparent for p in quartic)

    def test_radius_ignores_apparent_points(self, l6):
        radius = convergence_radius(l6.point_info("0"), l6.singular())
        assert close(radius, Fraction(1, 4), 30)

    @pytest.mark.parametrize("fixture_name, label", [("chi3-Z2N1", "Z2N1"), ("chi3-L6", "L6")])
    def test_fuchs_relation(self, quick_precision, fixture_name, label):
        """Test that all exponents sum to n(n-1)/2 (points - 2)"""
        fx = load_fixture(fixture_name)
        points = fx.singular(label)
        n = fx.operator(label).order
        total = sum(sum(p.exponents, Fraction(0)) for p in points)
        assert total == Fraction(n * (n - 1), 2) * (len(points) - 2)


class TestFactorization:
    """Test the factor chain Y3 Z2 N1"""

    def test_z2n1_divides_l6(self, l6):
        ok, q = verify_factor(l6.operator("L6"), l6.operator("Z2N1"), monic=True)
        assert ok
        assert op_mul(q, l6.operator("Z2N1"), monic=True) == l6.operator("L6")
        y3 = load_operator(os.path.join(FIXTURE_DIR, "Y3.op"))
        assert q.order == y3.order == 3
        assert all(a * y3.leading.lead == b * q.leading.lead for a, b in zip(q.coeffs, y3.coeffs))

    def test_n1_divides_z2n1(self, l6):
        ok, q = verify_factor(l6.operator("Z2N1"), l6.operator("N1"), monic=True)
        assert ok and q.order == 2


class TestLargeBasis:
    """Test numeric recurrences past the exact limit"""

    def test_numeric_matches_exact(self, l6):
        """Test 420 terms at 0 against exact rational coefficients"""
        op = l6.operator()
        info = l6.point_info("0")
        exact = local_basis(op, info, 420, exact=True)
        numeric = local_basis(op, info, 420, exact=False, points=l6.singular())
        for s, t in zip(exact.solutions, numeric.solutions):
            for k in range(s.max_log + 1):
                for n in (100, 250, 419):
                    a, b = to_num(s.coefficient(n, k)), t.coefficient(n, k)
                    assert abs(a - b) <= tolerance(PRECISION // 2) * max(1, abs(a))


class TestConnectionRelations:
    """Test relations among connection matrix entries that stay unrecognized"""

    def test_minus_quarter_minor(self, l6):
        c = l6.connection("-1/4", TERMS).entries
        minor = c[1, 1] * c[2, 2] - c[1, 2] * c[2, 1]
        assert close(minor, Fraction(25, 12288), 15)

    def test_one_block_determinant(self, l6):
        c = l6.connection("1", TERMS).entries
        block = mp.matrix([[c[i, j] for j in range(3, 6)] for i in range(3, 6)])
        assert close(mp.det(block), Fraction(234199, 75937500), 12)

    def test_infinity(self, l6):
        """Test C(0, inf), with two entries known only as decimals"""
        pi, i = mp.pi, mp.mpc(0, 1)
        y41, x42 = mp.mpf("-22.932479960454"), mp.mpf("-1.534248223197")
        c = l6.connection("inf", TERMS).entries
        expected = {
            (0, 0): 1, (1, 0): 1, (1, 1): mp.mpf(-1) / 16, (1, 2): -3 * i / (16 * pi),
            (2, 0): -pi * i, (2, 2): mp.mpf(-1) / 16,
            (3, 0): -11 + y41 * i, (3, 1): x42 - i / pi, (3, 2): 2 / pi ** 2 - 15 * i / (16 * pi),
            (3, 5): 1 / (4 * pi ** 2),
            (4, 2): mp.mpf(-9) / 16 - 49 * i / (64 * pi), (4, 4): mp.mpf(1) / 16, (4, 5): -i / (8 * pi),
            (5, 3): pi ** 2 / 64, (5, 4): -pi * i / 16, (5, 5): mp.mpf(-1) / 16,
        }
        for r in range(6):
            for col in range(6):
                assert close(c[r, col], expected.get((r, col), 0), 10)

    def test_unrecognized_entry(self, l6):
        """Test that the decimal entry of C(0, inf) is reported, not forced"""
        c = l6.connection("inf", TERMS).entries
        basis = RecognitionBasis.from_names(["1", "pi"], max_height=100)
        result = recognize_matrix(mp.matrix([[c[3, 0], c[2, 0]]]), basis, 12)
        assert [(i, j) for i, j, _ in result.unrecognized] == [(1, 1)]
        assert result.forms[0][1].imag == {"pi": Fraction(-1)}

    def test_z2n1_recognized(self, z2n1):
        """Test closed forms of C(0, 1/4) for the order three factor"""
        basis = RecognitionBasis.from_names(["1", "sqrt3/pi", "sqrt3*pi"], max_height=100)
        result = recognize_matrix(z2n1.connection("1/4", TERMS).entries, basis, 20)
        assert result.recognized == 9
        forms = [[f.real for f in row] for row in result.forms]
        assert forms == [
            [{"1": 1}, {}, {}],
            [{"1": 1}, {}, {"sqrt3/pi": Fraction(-9, 64)}],
            [{}, {"sqrt3*pi": Fraction(-3, 32)}, {}],
        ]

    def test_l6_entries_recognized(self, l6):
        c = l6.connection("1/4", TERMS).entries
        cases = [
            ((3, 1), ["1", "I3p"], {"1": Fraction(1, 3), "I3p": Fraction(-2)}),
            ((5, 0), ["1", "pi^2"], {"1": Fraction(29, 16), "pi^2": Fraction(-2, 3)}),
            ((1, 2), ["sqrt3/pi"], {"sqrt3/pi": Fraction(-9, 64)}),
        ]
        for (r, col), names, form in cases:
            found = recognize_value(c[r, col], RecognitionBasis.from_names(names, max_height=100), 16)
            assert found is not None and found.real == form


class TestSusceptibilityAtPoints:
    """Test the susceptibility in the local bases away from 0"""

    def test_quarter_coefficients(self, l6, designated):
        """Test that only the pole and the log squared element remain at 1/4"""
        weights, _ = designated
        d = decompose_at(weights, l6.connection("1/4", TERMS))
        expected = [0, -(mp.mpf(1) / 3 - 2 * i3_plus()) / 4, 0, 0, 0, -1 / (64 * mp.pi ** 2)]
        for c, v in zip(d.coefficients, expected):
            assert abs(c - v) < tolerance(18)

    def test_singular_part_at_one(self, l6, designated):
        weights, rational = designated
        d = decompose_at(weights, l6.connection("1", TERMS), l6.basis("1", TERMS), rational)
        terms = singular_part(d, 3, 15)
        assert len(terms) == 1
        assert (terms[0].exponent, terms[0].log_power) == (3, 1)
        assert close(terms[0].coefficient, mp.sqrt(3) / (27 * mp.pi), 12)

    def test_singular_part_at_minus_half(self, l6, designated):
        weights, rational = designated
        d = decompose_at(weights, l6.connection("-1/2", TERMS), l6.basis("-1/2", TERMS), rational)
        terms = singular_part(d, 3, 15)
        assert len(terms) == 1
        assert (terms[0].exponent, terms[0].log_power) == (3, 1)
        assert close(terms[0].coefficient, -8 * mp.sqrt(3) / (27 * mp.pi), 12)

    def test_singular_part_at_infinity(self, l6, designated):
        weights, rational = designated
        d = decompose_at(weights, l6.connection("inf", TERMS), l6.basis("inf", TERMS), rational)
        terms = singular_part(d, 3, 12)
        assert terms
        assert terms[0].log_power == 2
        assert all(t.exponent >= 0 for t in terms)

    def test_log_free_at_w1(self, l6, designated):
        """Test the cancellation at w1 and its sensitivity to a shifted coefficient"""
        weights, rational = designated
        d = decompose_at(weights, l6.connection("w1", TERMS), l6.basis("w1", TERMS), rational)
        assert cancellation_test(d) < tolerance(12)
        forms = log_forms(d.basis)
        assert forms
        row = max((r for _, _, r in forms), key=lambda r: max(abs(v) for v in r))
        j = max(range(len(row)), key=lambda k: abs(row[k]))
        shifted = list(d.coefficients)
        shifted[j] += mp.mpf("1e-6")
        d.coefficients = shifted
        assert cancellation_test(d) >= mp.mpf("0.99e-6") * abs(row[j])


class TestMonodromyMatrices:
    """Test monodromy in the basis at 0 against closed forms in alpha = Omega = 2 pi i"""

    @staticmethod
    def _scaled(rows, alpha):
        """Matrix from rows of 8 alpha^2 M"""
        return [[v / (8 * alpha ** 2) for v in row] for row in rows]

    def test_around_one(self, l6):
        a = o = mp.mpc(0, 2 * mp.pi)
        d = 8 * a ** 2
        rows = [
            [d, 0, 0, 0, 0, 0],
            [-48 * a * o, d, -48 * o, 0, 0, 0],
            [0, 0, d, 0, 0, 0],
            [-1008 * a * o, 0, -1008 * o, d, 0, 0],
            [12 * a * (5 + 16 * a) * o, 0, 12 * (5 + 16 * a) * o, 0, d, 0],
            [-a * (75 + 44 * a ** 2) * o, 0, -(75 + 44 * a ** 2) * o, 0, 0, d],
        ]
        assert matrix_close(monodromy_at(l6, "1").entries, self._scaled(rows, a), 12)

    @pytest.mark.parametrize("name, sign", [("w1", 1), ("w2", -1)])
    def test_around_w(self, l6, name, sign):
        """Test the pair at the roots of 1 + 3w + 4w^2, conjugate by alpha -> -alpha"""
        o = mp.mpc(0, 2 * mp.pi)
        a = sign * o
        d = 8 * a ** 2
        g = (-40 * a + 12 * a ** 2 + 75) * o
        head = [
            [d, 0, 0],
            [48 * a * o, 8 * a * (a + 6 * o), -144 * o],
            [16 * o * a ** 2, 16 * o * a ** 2, -8 * a * (-a + 6 * o)],
            [-16 * a * o, -16 * a * o, 48 * o],
            [4 * a * (4 * a - 15) * o, 4 * a * (4 * a - 15) * o, -12 * (4 * a - 15) * o],
            [a * g, a * g, -3 * g],
        ]
        rows = [head[r] + [d if r == c + 3 else 0 for c in range(3)] for r in range(6)]
        assert matrix_close(monodromy_at(l6, name).entries, self._scaled(rows, a), 12)

    def test_product_identity(self, l6):
        mats = [monodromy_at(l6, name) for name in l6.monodromy_order]
        assert product_identity(mats) < tolerance(12)

    @pytest.mark.parametrize("name, unipotent, negative", [
        ("1/4", [3, 2], [1]),
        ("-1/4", [3, 1, 1], [1]),
        ("0", [3, 2, 1], []),
        ("w1", [2, 1, 1, 1, 1], []),
    ])
    def test_l6_jordan_blocks(self, l6, name, unipotent, negative):
        m = monodromy_at(l6, name)
        assert jordan_blocks(m, 1, 10) == unipotent
        assert jordan_blocks(m, -1, 10) == negative

    def test_z2n1_jordan_blocks(self, z2n1):
        m = monodromy_at(z2n1, "1/4")
        assert jordan_blocks(m, 1, 10) == [2]
        assert jordan_blocks(m, -1, 10) == [1]

    def test_base_point_change(self, l6):
        """Test that monodromy based at 1/4 is the conjugate of the one based at 0"""
        from_quarter = l6.connection("1", TERMS, path=["1/4", "1"])
        m_quarter = global_monodromy(from_quarter, local_monodromy(l6.basis("1", TERMS)))
        t = mp.inverse(l6.connection("1/4", TERMS).entries)
        expected = t * monodromy_at(l6, "1").entries * mp.inverse(t)
        assert m_quarter.base_point == "1/4"
        assert matrix_close(m_quarter.entries, [[expected[i, j] for j in range(6)] for i in range(6)], 12)

    def test_alternative_route(self, l6):
        """Test C(0, w1) directly and through -1/4"""
        terms = 450
        direct = l6.connection("w1", terms, path=["0", "w1"])
        routed = l6.connection("w1", terms)
        assert path_consistency(direct, routed) < tolerance(15)


class TestY3Solutions:
    """Test solutions of Y3 built from complete elliptic integrals"""

    P1 = ("-(1+4*w)*(1-5*w-69*w^2+537*w^3+2964*w^4-4100*w^5-46816*w^6-74688*w^7+230656*w^8"
          "+647680*w^9+475136*w^10-8192*w^11+720896*w^12)")
    P2 = "-1+5*w+25*w^2-9*w^3-2408*w^4-17460*w^5-19696*w^6+28800*w^7-3328*w^8-62464*w^9-36864*w^10"
    P3 = ("2*(1-3*w-65*w^2+143*w^3+3888*w^4+15144*w^5-10624*w^6-172416*w^7-241536*w^8+111616*w^9"
          "+282624*w^10+180224*w^11+98304*w^12)")
    S = "w^2*(1-16*w^2)^3*(1+2*w)*(1-w)*(1+3*w+4*w^2)*(1-3*w-18*w^2+104*w^3+96*w^4)"

    @pytest.fixture(scope="class")
    def y3(self, quick_precision):
        return load_operator(os.path.join(FIXTURE_DIR, "Y3.op"))

    def _solution(self, argument, swap):
        p1, p2, p3, s = (parse_poly(t) for t in (self.P1, self.P2, self.P3, self.S))
        half = mp.mpf(1) / 2

        def f(w):
            x = argument(w)
            k = mp.hyp2f1(half, half, 1, x)
            e = mp.hyp2f1(half, -half, 1, x)
            a, b, c = (p1(w), p2(w), p3(w)) if not swap else (p1(w) + p2(w) + p3(w), p2(w), -(2 * p2(w) + p3(w)))
            return (a * k ** 2 + b * e ** 2 + c * k * e) / s(w)
        return f

    def _residual(self, op, f, w):
        derivs = list(mp.diffs(f, w, op.order))
        terms = [p(w) * d for p, d in zip(op.coeffs, derivs)]
        return abs(mp.fsum(terms)) / max(abs(t) for t in terms)

    def test_around_zero(self, y3):
        f = self._solution(lambda w: 16 * w ** 2, False)
        assert self._residual(y3, f, mp.mpf(1) / 20) < tolerance(25)

    def test_around_quarter(self, y3):
        f = self._solution(lambda w: 1 - 16 * w ** 2, True)
        assert self._residual(y3, f, mp.mpf(1) / 5) < tolerance(25)
