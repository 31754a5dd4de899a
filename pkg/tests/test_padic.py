import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import classical_log_oracle
from morava_powops.padic import (
    ZERO_TO_PRECISION,
    PAdicInt,
    PrecisionError,
    hensel_unit_root,
    rezk_log,
    theta,
    val,
)


class TestPAdicInt:
    def test_residue_normalized(self):
        assert PAdicInt(3, -1, 2).residue == 8

    def test_precision_is_min(self):
        x = PAdicInt(5, 7, 6) + PAdicInt(5, 3, 4)
        assert x.precision == 4
        assert (PAdicInt(5, 7, 6) * PAdicInt(5, 3, 2)).precision == 2

    def test_divide_by_p(self):
        x = PAdicInt(3, 18, 5).divide_by_p()
        assert (x.residue, x.precision) == (6, 4)
        with pytest.raises(ArithmeticError):
            PAdicInt(3, 10, 5).divide_by_p()

    def test_inverse(self):
        x = PAdicInt(7, 10, 5)
        assert x * x.inverse() == 1
        with pytest.raises(ZeroDivisionError):
            PAdicInt(7, 14, 5).inverse()


@pytest.mark.parametrize(
    "p, residue, N, expected",
    [(3, 9, 4, 2), (3, 0, 4, ZERO_TO_PRECISION), (2, 12, 5, 2), (3, 81, 4, ZERO_TO_PRECISION)],
)
def test_val(p, residue, N, expected):
    assert val(PAdicInt(p, residue, N)) == expected


class TestHensel:
    def test_k1_is_identity(self):
        assert hensel_unit_root(3, 1, 1).residue == 1

    def test_p3_k2_brute_force(self):
        q = 3 ** 4
        solutions = [c for c in range(q) if pow(1 + 3 * c, 3, q) == 10 % q]
        c = hensel_unit_root(3, 2, 1, 4)
        assert c.residue in solutions
        # the congruence pins c down only modulo 3^(4-2)
        assert solutions == [s for s in range(q) if (s - c.residue) % 9 == 0]

    def test_p5_k3_brute_force(self):
        q = 5 ** 4
        solutions = [c for c in range(q) if pow(1 + 5 * c, 25, q) == (1 + 2 * 125) % q]
        c = hensel_unit_root(5, 3, 2, 4)
        assert c.residue in solutions
        assert all(s % 5 == c.residue % 5 for s in solutions)
        assert c.is_unit()

    @pytest.mark.parametrize("p", [3, 5, 7, 11])
    @pytest.mark.parametrize("k", [1, 2, 3, 5])
    def test_reproduces_target(self, p, k):
        for b in (1, 2, p - 1, p + 1):
            N = 12
            c = hensel_unit_root(p, k, b, N)
            q = p ** N
            assert pow(1 + p * c.residue, p ** (k - 1), q) == (1 + b * p ** k) % q

    def test_rejects_p2_and_nonunits(self):
        with pytest.raises(ValueError):
            hensel_unit_root(2, 2, 1)
        with pytest.raises(ValueError):
            hensel_unit_root(3, 2, 3)


class TestTheta:
    def test_theta_one(self):
        assert theta(PAdicInt(3, 1, 6)).residue == 0

    def test_theta_ten_mod_nine(self):
        # theta(1 + p^n) = p^(n-1) mod p^n with p = 3, n = 2
        assert theta(PAdicInt(3, 10, 6)).residue % 9 == 3

    def test_theta_direct(self):
        t = theta(PAdicInt(3, 10, 6))
        assert t.precision == 5
        assert t.residue == (10 - 1000) // 3 % 3 ** 5

    @given(st.sampled_from([2, 3, 5, 7]), st.integers(min_value=0, max_value=10 ** 9))
    def test_frobenius_lift(self, p, r):
        x = PAdicInt(p, r, 10)
        lhs = x ** p + theta(x) * p
        assert (lhs.residue - x.residue) % p ** 9 == 0


class TestRezkLog:
    def test_log_one(self):
        assert rezk_log(PAdicInt(3, 1, 12)).residue == 0

    @pytest.mark.parametrize("p", [3, 5, 7])
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_valuation(self, p, n):
        log = rezk_log(PAdicInt(p, 1 + p ** n, 12))
        assert val(log) == n - 1
        # evaluated as printed, the sign comes out negative
        assert log.residue % p ** n == -p ** (n - 1) % p ** n

    def test_p3_x4_against_classical_log(self):
        log = rezk_log(PAdicInt(3, 4, 4))
        assert log.precision == 3
        assert log.residue == classical_log_oracle(4, 3, 3)

    @settings(max_examples=60, deadline=None)
    @given(st.sampled_from([3, 5, 7]), st.integers(min_value=0, max_value=10 ** 8))
    def test_matches_classical_log(self, p, t):
        x = 1 + p * t
        log = rezk_log(PAdicInt(p, x, 10))
        assert log.residue == classical_log_oracle(x, p, 9)

    @settings(max_examples=40, deadline=None)
    @given(st.sampled_from([3, 5]), st.integers(0, 10 ** 6), st.integers(0, 10 ** 6))
    def test_homomorphism(self, p, s, t):
        x, y = PAdicInt(p, 1 + p * s, 10), PAdicInt(p, 1 + p * t, 10)
        assert rezk_log(x * y) == rezk_log(x) + rezk_log(y)

    def test_rejects(self):
        with pytest.raises(ValueError):
            rezk_log(PAdicInt(2, 5, 8))
        with pytest.raises(ValueError):
            rezk_log(PAdicInt(3, 2, 8))
        with pytest.raises(PrecisionError):
            rezk_log(PAdicInt(3, 1, 1))
