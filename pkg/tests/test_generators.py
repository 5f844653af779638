from fractions import Fraction

from etaram.cusps import INFINITY, cusp_set, order_at_cusp
from etaram.eta import GenEtaQuotient
from etaram.generators import (
    chi_weight, exponent_slots, generators, pole_free_system,
    quotient_from_scaled, unit_lattice,
)
from etaram.lattice import enumerate_coset, in_lattice, lattice_hnf

# published solution of the level-10 system: five base vectors and six units
# (first 12 entries are the scaled exponents; the slack tail is recomputed)
ALPHAS_10 = [
    (-1, 2, 0, 1, 2, 0, -2, -4, 0, 0, 0, 0),
    (-1, -1, 0, 3, 4, 0, -1, -3, 0, 0, 0, 0),
    (1, -2, 0, -1, 2, 0, 2, -4, 0, 0, 0, 0),
    (1, 0, 0, 1, -2, 0, -2, -1, 0, 0, 0, 0),
    (4, -3, 0, 0, 2, 0, -1, -4, 0, 0, 0, 0),
]
BETAS_10 = [
    (0, 0, 0, -1, 0, 0, 1, 0, 0, 0, 0, 1),
    (-1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    (-1, 0, 0, 1, 1, 1, 0, 0, 0, 0, 0, 0),
    (0, -1, 0, 0, 1, 0, 1, -1, 1, 0, 0, 0),
    (-1, 1, 0, 1, 0, 0, -1, 1, 0, 1, 0, 0),
    (0, 0, 0, 0, -1, 0, 0, 1, 0, 0, 1, 0),
]

PAPER_QUOTIENTS_10 = {
    "z":  GenEtaQuotient(10, a={1: 1, 5: 1, 10: -2}, ag={(5, 1): -2, (10, 1): -1}),
    "z1": GenEtaQuotient(10, a={1: -1, 2: 2, 5: 1, 10: -2}, ag={(5, 1): 2, (10, 1): -4}),
    "z2": GenEtaQuotient(10, a={1: -1, 2: -1, 5: 3, 10: -1}, ag={(5, 1): 4, (10, 1): -3}),
    "z3": GenEtaQuotient(10, a={1: 1, 2: -2, 5: -1, 10: 2}, ag={(5, 1): 2, (10, 1): -4}),
    "z4": GenEtaQuotient(10, a={1: 4, 2: -3, 10: -1}, ag={(5, 1): 2, (10, 1): -4}),
}


def test_system_shape_level_10():
    pfs = pole_free_system(10)
    assert len(pfs.slots) == 12
    assert pfs.system.nvars == 12 + 6          # six cusps survive deduplication
    assert len(pfs.system.equalities) == 7     # weight row + one per kept cusp
    assert len(pfs.system.nonneg) == 5         # the infinity slack is free


def test_system_row_coefficients_level_10():
    # the order form at the cusp 0 in the scaled variables
    pfs = pole_free_system(10)
    slots = list(pfs.slots)
    data = next(d for d in pfs.retained if str(d.cusp) == "0/1")
    idx = pfs.retained.index(data)
    row = pfs.system.equalities[1 + idx]
    den = -row[12 + idx]
    coeff = {s: Fraction(c, den) for s, c in zip(slots, row)}
    assert coeff[(1, 0)] == Fraction(5, 12)
    assert coeff[(2, 0)] == Fraction(5, 24)
    assert coeff[(2, 1)] == Fraction(5, 24)
    assert coeff[(5, 1)] == Fraction(1, 6)
    assert coeff[(10, 5)] == Fraction(1, 24)


def test_trivial_level_one_system():
    gens = generators(1)
    assert gens == ()


def test_level_10_generator_functions_match_published_set():
    gens = generators(10)
    assert len(gens) == 5
    T = 40
    mine = [g.expansion(T) for g in gens]
    for name, q in PAPER_QUOTIENTS_10.items():
        hits = [i for i, e in enumerate(mine) if e.agrees_with(q.expansion(T))]
        assert len(hits) == 1, name
    # the module variable (first generator) is the published z
    assert mine[0].agrees_with(PAPER_QUOTIENTS_10["z"].expansion(T))


def test_level_11_generator_count():
    assert len(generators(11)) == 27


def test_generator_orders_nonnegative_and_integral():
    for N in [6, 10, 11]:
        for g in generators(N):
            for data in cusp_set(N):
                o = order_at_cusp(g.quotient, N, data)
                assert o.denominator == 1
                if not data.cusp.is_infinity:
                    assert o >= 0
            assert g.orders[INFINITY] == -g.pole


def _monoid_membership(vec, alphas, alpha_grades, unit_cols, grade_of):
    """vec = sum u_i alpha_i + (unit lattice), u_i >= 0, graded search."""
    target = grade_of(vec)

    def rec(idx, remaining, acc):
        if remaining == 0:
            diff = [a - b for a, b in zip(vec, acc)]
            return in_lattice(diff, unit_cols) if unit_cols else not any(diff)
        if idx == len(alphas):
            return False
        g = alpha_grades[idx]
        u = 0
        while u * g <= remaining:
            acc2 = [a + u * b for a, b in zip(acc, alphas[idx])]
            if rec(idx + 1, remaining - u * g, acc2):
                return True
            if g == 0:
                break
            u += 1
        return False

    return rec(0, target, [0] * len(vec))


def test_mutual_membership_with_published_basis():
    pfs = pole_free_system(10)
    slots = list(pfs.slots)
    n = len(slots)

    def finite_grade(vec):
        q = quotient_from_scaled(10, slots, vec)
        total = 0
        for data in cusp_set(10):
            if not data.cusp.is_infinity:
                total += int(order_at_cusp(q, 10, data))
        return total

    units_mine = [list(u) for u in unit_lattice(10)]
    unit_cols_mine = lattice_hnf(units_mine, n)
    unit_cols_paper = lattice_hnf([list(b) for b in BETAS_10], n)

    paper_alphas = [list(a) for a in ALPHAS_10]
    paper_grades = [finite_grade(a) for a in paper_alphas]
    mine_alphas = [list(g.scaled_vector) for g in generators(10)]
    mine_grades = [finite_grade(a) for a in mine_alphas]

    # the published unit lattice and ours coincide
    for u in units_mine:
        assert in_lattice(u, unit_cols_paper)
    for b in BETAS_10:
        assert in_lattice(list(b), unit_cols_mine)

    for vec in mine_alphas:
        assert _monoid_membership(vec, paper_alphas, paper_grades,
                                  unit_cols_paper, finite_grade)
    for vec in paper_alphas:
        assert _monoid_membership(vec, mine_alphas, mine_grades,
                                  unit_cols_mine, finite_grade)


def test_published_vectors_solve_the_system():
    pfs = pole_free_system(10)
    slots = list(pfs.slots)
    for vec in ALPHAS_10 + BETAS_10:
        q = quotient_from_scaled(10, slots, vec)
        for data in pfs.retained:
            o = order_at_cusp(q, 10, data)
            assert o.denominator == 1
            if not data.cusp.is_infinity:
                assert o >= 0, (vec, data.cusp)


def test_completeness_small_box_level_6():
    # every small solution vector lies in the generated monoid
    pfs = pole_free_system(6)
    slots = list(pfs.slots)
    n = len(slots)
    gens = generators(6)

    def finite_grade(vec):
        q = quotient_from_scaled(6, slots, vec)
        return sum(int(order_at_cusp(q, 6, d)) for d in cusp_set(6)
                   if not d.cusp.is_infinity)

    units = [list(u) for u in unit_lattice(6)]
    unit_cols = lattice_hnf(units, n)
    alphas = [list(g.scaled_vector) for g in gens]
    grades = [finite_grade(a) for a in alphas]

    # walk every exponent vector of the solution lattice in a small box and
    # confirm the generated monoid contains all of them
    lat = lattice_hnf(alphas + units, n)
    checked = 0
    for vec in enumerate_coset([0] * n, lat, weight_bound=3 * n, box_bound=3):
        q = quotient_from_scaled(6, slots, vec)
        orders = {d.cusp: order_at_cusp(q, 6, d) for d in cusp_set(6)}
        if any(o.denominator != 1 for o in orders.values()):
            continue
        if any(o < 0 for c, o in orders.items() if not c.is_infinity):
            continue
        assert _monoid_membership(vec, alphas, grades, unit_cols, finite_grade), vec
        checked += 1
    assert checked > 50
