import random
from fractions import Fraction

import pytest

from etaram.series import (
    QSeries, ZeroSeries, euler_product, pair_product, pochhammer, theta_pair,
)


def partitions_oracle(n_max):
    """Partition counts by direct dynamic programming over part sizes."""
    p = [0] * (n_max + 1)
    p[0] = 1
    for part in range(1, n_max + 1):
        for n in range(part, n_max + 1):
            p[n] += p[n - part]
    return p


def random_series(rng, denom=1, span=8):
    coeffs = {}
    trunc = rng.randint(3, span) * denom
    for _ in range(rng.randint(0, 6)):
        n = rng.randint(-4, trunc - 1)
        if n < trunc:
            coeffs[n] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    coeffs = {n: c for n, c in coeffs.items() if c}
    return QSeries(coeffs, trunc, denom)


def test_add_cancellation():
    one_minus_q = QSeries({0: 1, 1: -1}, 10)
    q = QSeries({1: 1}, 10)
    s = one_minus_q + q
    assert s.coefficient(0) == 1
    assert s.coefficient(1) == 0
    assert list(s.coeffs) == [0]


def test_add_identity():
    f = QSeries({0: 2, 3: Fraction(1, 2)}, 7)
    assert (f + QSeries.zero(7)) == f


def test_add_denominator_reconciliation():
    f = QSeries.monomial(Fraction(1, 2), 1, 2)
    g = QSeries.monomial(Fraction(1, 3), 1, 2)
    s = f + g
    assert s.denom == 6
    assert s.coefficient(Fraction(1, 2)) == 1
    assert s.coefficient(Fraction(1, 3)) == 1


def test_mul_telescoping():
    T = 20
    f = QSeries({0: 1, 1: -1}, T + 10)
    g = QSeries({n: 1 for n in range(T + 1)}, T + 1)
    prod = f * g
    assert prod.coefficient(0) == 1
    assert all(prod.coefficient(n) == 0 for n in range(1, T))


def test_mul_identity():
    f = QSeries({-1: 2, 0: 3, 4: Fraction(1, 3)}, 9)
    assert (f * QSeries.one(100)).agrees_with(f)


def test_mul_laurent_shift():
    f = QSeries({-1: 1, 0: 2}, 10)
    g = QSeries({1: 1}, 10)
    p = f * g
    assert p.coefficient(0) == 1
    assert p.coefficient(1) == 2


def test_invert_geometric():
    f = QSeries({0: 1, 1: -1}, 5)
    inv = f.invert()
    assert [inv.coefficient(n) for n in range(4)] == [1, 1, 1, 1]


def test_invert_monomial():
    q = QSeries({1: 1}, 6)
    inv = q.invert()
    lead = inv.leading()
    assert lead == (Fraction(-1), Fraction(1))


def test_invert_partition_count():
    # coefficient of q^4 in 1/(q;q)_inf counts the partitions of 4
    inv = pochhammer(0, 1, 30).invert()
    oracle = partitions_oracle(20)
    assert inv.coefficient(4) == oracle[4] == 5
    for n in range(20):
        assert inv.coefficient(n) == oracle[n]


def test_invert_non_unit_leading():
    f = QSeries({0: 2, 1: 1}, 8)
    inv = f.invert()
    assert (f * inv).agrees_with(QSeries.one(8))


def test_pochhammer_examples():
    f = pochhammer(0, 1, 13)
    assert dict(f.coeffs) == {0: 1, 1: -1, 2: -1, 5: 1, 7: 1, 12: -1}
    g = pochhammer(5, 10, 6)
    assert dict(g.coeffs) == {0: 1, 5: -1}


def test_pochhammer_pair_composition():
    T = 40
    direct = pochhammer(1, 5, T) * pochhammer(4, 5, T)
    # reference: expand the double product over both residues in one pass
    c = [0] * T
    c[0] = 1
    for n in range(1, T):
        if n % 5 in (1, 4):
            for i in range(T - 1 - n, -1, -1):
                if c[i]:
                    c[i + n] -= c[i]
    for n in range(T):
        assert direct.coefficient(n) == c[n]


def test_pentagonal_oracle_to_200():
    T = 200
    fast = euler_product(1, T)
    direct = pochhammer(0, 1, T)
    assert fast == direct


def test_theta_pair_matches_products():
    T = 60
    for g, d in [(1, 5), (2, 5), (1, 10), (5, 10), (3, 8), (1, 2)]:
        lhs = pochhammer(g, d, T) * pochhammer(d - g, d, T) * pochhammer(0, d, T)
        assert lhs.agrees_with(theta_pair(g, d, T))
        assert pair_product(g, d, T).agrees_with(pochhammer(g, d, T) * pochhammer(d - g, d, T))


def test_ring_axioms_randomized():
    rng = random.Random(20240817)
    for _ in range(120):
        denom = rng.choice([1, 1, 2, 3])
        f = random_series(rng, denom)
        g = random_series(rng, denom)
        h = random_series(rng, denom)
        assert ((f * g) * h).agrees_with(f * (g * h))
        assert (f * (g + h)).agrees_with(f * g + f * h)
        assert (f * g).agrees_with(g * f)
        assert (f + g).agrees_with(g + f)


def test_invert_round_trip_randomized():
    rng = random.Random(97)
    for _ in range(60):
        f = random_series(rng, rng.choice([1, 2]))
        if f.is_known_zero():
            continue
        inv = f.invert()
        assert (f * inv).agrees_with(QSeries.one(1))
        assert inv.leading()[0] == -f.leading()[0]


def test_truncation_soundness():
    rng = random.Random(5)
    for _ in range(40):
        f = random_series(rng)
        g = random_series(rng)
        small = f.truncated(3) * g.truncated(3)
        big = f * g
        assert big.agrees_with(small)


def test_zero_series_inversion_raises():
    with pytest.raises(ZeroSeries):
        QSeries.zero(5).invert()


def test_pow_matches_repeated_mul():
    f = QSeries({0: 1, 1: 1, 2: Fraction(1, 2)}, 12)
    assert (f ** 3).agrees_with(f * f * f)
    assert (f ** -2).agrees_with(f.invert() * f.invert())
    assert (f ** 0).coefficient(0) == 1


def test_sift():
    f = QSeries({n: n * n + 1 for n in range(17)}, 17)
    s = f.sift(5, 2)
    assert s.coefficient(0) == 5          # exponent 2
    assert s.coefficient(1) == 50         # exponent 7
    assert s.coefficient(2) == 145        # exponent 12
    assert s.bound() == 3


def test_shift_and_canonical_denominator():
    f = QSeries({0: 1, 2: 1}, 10, 2)  #  1 + q, known to q^5
    assert f.denom == 1               # canonicalized
    g = f.shift(Fraction(1, 3))
    assert g.coefficient(Fraction(1, 3)) == 1
    assert g.coefficient(Fraction(4, 3)) == 1


def test_mul_truncation_rule():
    # f known to q^5 with lead 2, g known to q^4 with lead 1:
    # product valid strictly below min(5+1, 4+2) = 6
    f = QSeries({2: 1}, 5)
    g = QSeries({1: 1}, 4)
    assert (f * g).bound() == 6
