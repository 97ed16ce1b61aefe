import math
from fractions import Fraction

import pytest

from rootoidlab.builders.numfield import CosineField, cyclotomic, lcm_all, minimal_polynomial_2cos


def evaluate(coeffs, x):
    return sum(c * x ** i for i, c in enumerate(coeffs))


def euler_phi(n):
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 8, 10, 12])
def test_cyclotomic_roots(n):
    p = cyclotomic(n)
    assert len(p) - 1 == euler_phi(n)
    z = complex(math.cos(2 * math.pi / n), math.sin(2 * math.pi / n))
    assert abs(evaluate(p, z)) < 1e-9


@pytest.mark.parametrize("M", [2, 3, 4, 5, 6, 8, 10, 12])
def test_minimal_polynomial(M):
    p = minimal_polynomial_2cos(M)
    assert p[-1] == 1
    # degree phi(2M)/2 for M >= 2
    assert len(p) - 1 == euler_phi(2 * M) // 2
    assert abs(evaluate(p, 2 * math.cos(math.pi / M))) < 1e-9


def test_known_polynomials():
    assert minimal_polynomial_2cos(3) == (-1, 1)         # c = 1
    assert minimal_polynomial_2cos(4) == (-2, 0, 1)      # c^2 = 2
    assert minimal_polynomial_2cos(5) == (-1, -1, 1)     # golden ratio
    assert minimal_polynomial_2cos(6) == (-3, 0, 1)


def to_float(F, x):
    c = 2 * math.cos(math.pi / F.M)
    return sum(a * c ** i for i, a in enumerate(x))


@pytest.mark.parametrize("M", [2, 3, 4, 5, 6, 10, 12])
def test_two_cos_of_divisors(M):
    F = CosineField(M)
    for m in range(2, M + 1):
        if M % m == 0:
            assert abs(to_float(F, F.two_cos(m)) - 2 * math.cos(math.pi / m)) < 1e-9
    assert F.two_cos(None) == F.const(2)
    with pytest.raises(ValueError):
        F.two_cos(M + 1)


def test_field_arithmetic_is_exact():
    F = CosineField(5)
    c = F.two_cos(5)
    # c^2 = c + 1
    assert F.mul(c, c) == F.add(c, F.one)
    assert F.add(c, F.neg(c)) == F.zero
    F12 = CosineField(12)
    a = F12.two_cos(12)
    # (2cos(pi/12))^2 = 2 + 2cos(pi/6)
    assert F12.mul(a, a) == F12.add(F12.const(2), F12.two_cos(6))


def test_lcm_all():
    assert lcm_all([2, 3, 4]) == 12
    assert lcm_all([]) == 1
