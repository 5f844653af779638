import random
from fractions import Fraction
from math import gcd

import pytest

from etaram.eta import GenEtaQuotient, PartitionSpec
from etaram.modularity import (
    NoPhiFound, check_level, find_level, find_prefactor, is_modular_prefactor,
    jacobi_symbol, _criterion_parts,
)

OVERPARTITION = PartitionSpec(2, {1: -2, 2: 1})
PARTITION = PartitionSpec(1, {1: -1})
SINGULAR = PartitionSpec(6, {1: -1, 3: 1}, {(3, 1): -1, (6, 2): 1})
RR = PartitionSpec(5, rg={(5, 1): -1, (5, 2): 1})


def test_jacobi_symbol_against_eulers_criterion():
    for p in [3, 5, 7, 11, 13]:
        for a in range(1, p):
            assert jacobi_symbol(a, p) == (1 if pow(a, (p - 1) // 2, p) == 1 else -1)
    assert jacobi_symbol(2, 15) == jacobi_symbol(2, 3) * jacobi_symbol(2, 5)


def test_check_level_published_cases():
    assert check_level(OVERPARTITION, 5, 2, 10).ok
    assert check_level(PARTITION, 11, 6, 11).ok
    assert check_level(SINGULAR, 9, 3, 6).ok


def test_find_level_published_cases():
    assert find_level(OVERPARTITION, 5, 2) == 10
    assert find_level(PARTITION, 11, 6) == 11
    assert find_level(SINGULAR, 9, 3) == 6
    assert find_level(SINGULAR, 9, 6) == 6
    assert find_level(RR, 2, 0) == 10


def test_degenerate_progression_level():
    N = find_level(PARTITION, 1, 0)
    assert check_level(PARTITION, 1, 0, N).ok


def test_full_level_always_admissible():
    rng = random.Random(77)
    for _ in range(12):
        M = rng.choice([1, 2, 3, 4, 6])
        r = {d: rng.randint(-3, 3) for d in range(1, M + 1) if M % d == 0}
        rg = {}
        if rng.random() < 0.5:
            d = rng.choice([x for x in range(2, M + 1) if M % x == 0] or [None])
            if d:
                rg[(d, rng.randint(1, d - 1))] = rng.randint(-2, 2)
        spec = PartitionSpec(M, r, rg)
        m = rng.choice([2, 3, 5])
        t = rng.randrange(m)
        assert check_level(spec, m, t, 24 * m * M).ok, (spec, m, t)


def test_prefactor_criterion_published_vector():
    phi = GenEtaQuotient(10, a={10: 1}, ag={(10, 4): -8, (10, 5): 9})
    assert is_modular_prefactor(OVERPARTITION, 5, 2, 10, phi)
    perturbed = GenEtaQuotient(10, a={10: 1}, ag={(10, 4): -8, (10, 5): 8})
    assert not is_modular_prefactor(OVERPARTITION, 5, 2, 10, perturbed)


def test_prefactor_for_partition_progression():
    phi = find_prefactor(PARTITION, 11, 6, 11)
    assert phi.a == {11: 1} and phi.ag == {}
    # eta(11 tau) makes F = q (q^11; q^11) * sum p(11n+6) q^n: check exponents
    F = phi.expansion(30) * PARTITION.slice_expansion(11, 6, 30)
    assert F.denom == 1
    assert F.leading()[0] == 1


def test_prefactor_trivial_progression():
    phi = find_prefactor(PARTITION, 1, 0, 1)
    assert phi.a == {1: 1}
    F = phi.expansion(60) * PARTITION.slice_expansion(1, 0, 60)
    assert F.coefficient(0) == 1
    assert all(F.coefficient(n) == 0 for n in range(1, 50))


def test_found_prefactors_pass_and_give_integral_exponents():
    cases = [(OVERPARTITION, 5, 2, 10), (OVERPARTITION, 5, 3, 10),
             (SINGULAR, 9, 3, 6), (RR, 2, 1, 10)]
    for spec, m, t, N in cases:
        phi = find_prefactor(spec, m, t, N)
        assert is_modular_prefactor(spec, m, t, N, phi)
        F = phi.expansion(110) * spec.slice_expansion(m, t, 110)
        assert F.denom == 1, (spec, m, t)


def test_sign_condition_multiplicative():
    rng = random.Random(31)
    spec = OVERPARTITION
    N, m, t = 10, 5, 2
    plain, paired, c1, _, _, sign_rows = _criterion_parts(spec, m, t, N)
    by_a = {a: (row, const) for a, row, const in sign_rows}

    def val(a, vec):
        row, const = by_a[a]
        return (-1) ** ((sum(c * v for c, v in zip(row, vec)) + const) % 2)

    alist = sorted(by_a)
    for _ in range(40):
        vec = [rng.randint(-4, 4) for _ in range(len(plain) + len(paired))]
        a1, a2 = rng.choice(alist), rng.choice(alist)
        prod = (a1 * a2) % (12 * N)
        if prod in by_a:
            assert val(prod, vec) == val(a1, vec) * val(a2, vec)


def test_no_prefactor_within_tiny_weight():
    with pytest.raises(NoPhiFound):
        find_prefactor(OVERPARTITION, 5, 2, 10, weight_cap=1)
