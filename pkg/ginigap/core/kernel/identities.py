"""Rational identities behind the integrable form of the kernel, checked in
exact arithmetic at pseudo-random rational points."""
from fractions import Fraction
from math import factorial

import numpy as np

from ginigap.core.specialfns.gamma import pochhammer

MAX_ORDER = 6
MAX_DENOMINATOR = 10_000


def _random_rational(rng: np.random.Generator) -> Fraction:
    denominator = int(rng.integers(1, MAX_DENOMINATOR + 1))
    numerator = int(rng.integers(-5 * denominator, 5 * denominator + 1))
    return Fraction(numerator, denominator)


def _nonpole(
        rng: np.random.Generator,
        *forbidden: Fraction) -> Fraction:
    while True:
        value = _random_rational(rng)
        if value not in forbidden and value.denominator != 1:
            return value


def _binomial_weight(j: int, k: int) -> Fraction:
    return Fraction(1, factorial(j) * factorial(k - j))


def partial_fraction_sum(
        n: int, x: Fraction, y: Fraction, power: int) -> Fraction:
    return sum(
        (
            (-1)**i * _binomial_weight(i, n) * (x - i)**power / (y + i)
            for i in range(n + 1)),
        Fraction(0))


def check_partial_fraction(n: int, x: Fraction, y: Fraction) -> bool:
    """sum_i (-1)^i (x-i)^n / (i!(n-i)!(y+i)) = (x+y)^n / (y)_{n+1}."""
    return partial_fraction_sum(n, x, y, n) \
        == (x + y)**n / pochhammer(y, n + 1)


def check_partial_fraction_shifted(
        n: int, x: Fraction, y: Fraction) -> bool:
    """Same sum with power n+1 equals (x+y)^{n+1} / (y)_{n+1} - 1."""
    return partial_fraction_sum(n, x, y, n + 1) \
        == (x + y)**(n + 1) / pochhammer(y, n + 1) - 1


def check_triple_sum(
        l: int, x: Fraction, y: Fraction, z: Fraction) -> bool:
    lhs = Fraction(0)
    for k in range(1, l + 1):
        for m in range(k):
            for j in range(k + 2):
                lhs += (-1)**(j + m) * _binomial_weight(j, k + 1) \
                    * pochhammer(x, k - m) * pochhammer(y, m) \
                    * (z + m - j + 1)**(l + 1)
    rhs = z**(l + 1) / (1 - y) \
        - (x + z)**(l + 1) / (1 - x - y) \
        + x * (1 - y + z)**(l + 1) / ((1 - y) * (1 - x - y))
    return lhs == rhs


def check_operator_identity(
        M: int, l: int, n: int, X: Fraction, Y: Fraction) -> bool:
    """Polynomial identity in commuting variables X, Y (stand-ins for
    delta_x, delta_y) behind the numerator of the integrable kernel."""
    lhs = Fraction(0)
    for k in range(1, M + 1):
        for m in range(k):
            for j in range(k + 2):
                lhs += (-1)**(j + m) * _binomial_weight(j, k + 1) \
                    * pochhammer(X - n, k - m) * pochhammer(Y + n + 1, m) \
                    * Fraction(n + m - j + 1)**(l + 1)
    rhs = sum((X**(l - i) * (-Y)**i for i in range(l + 1)), Fraction(0)) \
        - sum((Fraction(n)**(l - i) * (-Y)**i for i in range(l + 1)),
              Fraction(0))
    return lhs == rhs


def check_exact_identities(seed: int) -> dict[str, bool]:
    """Pass/fail per identity over all orders up to six, one random
    rational point per case."""
    rng = np.random.default_rng(seed)
    report = {
        'partial_fraction': True,
        'partial_fraction_shifted': True,
        'triple_sum': True,
        'operator_identity': True,
    }

    for n in range(MAX_ORDER + 1):
        x = _random_rational(rng)
        # y away from 0, -1, ..., -n
        y = _nonpole(rng)
        report['partial_fraction'] &= check_partial_fraction(n, x, y)
        report['partial_fraction_shifted'] &= \
            check_partial_fraction_shifted(n, x, y)

    for l in range(MAX_ORDER + 1):
        x = _random_rational(rng)
        y = _nonpole(rng, 1 - x)
        z = _random_rational(rng)
        report['triple_sum'] &= check_triple_sum(l, x, y, z)

    for M in range(1, MAX_ORDER + 1):
        for l in range(M + 1):
            for n in range(MAX_ORDER + 1):
                X = _random_rational(rng)
                Y = _random_rational(rng)
                report['operator_identity'] &= \
                    check_operator_identity(M, l, n, X, Y)

    return report
