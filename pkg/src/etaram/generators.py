"""Generators of the monoid of eta-quotient modular functions whose only
pole sits at infinity.

A generalized eta-quotient is such a modular function exactly when one linear
form in its exponents vanishes, its order at every finite cusp is a
nonnegative integer, and its order at infinity is an integer.  After scaling
the half-integral slots these conditions become an integer Diophantine system
whose solution monoid has a finite Hilbert basis; the pointed generators give
the quotient generators, the lineality part only produces the constant 1.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .cusps import INFINITY, cusp_set, order_at_cusp, order_form_coefficient
from .eta import GenEtaQuotient, divisors
from .lattice import DioSystem, hilbert_basis


def chi_weight(d: int, g: int) -> int:
    """Scaling factor making every exponent slot integral (2 on half slots)."""
    return 2 if g == 0 or 2 * g == d else 1


def exponent_slots(N: int):
    return [(d, g) for d in divisors(N) for g in range(0, d // 2 + 1)]


@dataclass(frozen=True)
class PoleFreeSystem:
    """The cleared integer system cutting out the monoid at level N."""
    system: DioSystem
    slots: tuple          # (delta, g) per exponent variable
    retained: tuple       # CuspData for each slack variable, infinity last

    @property
    def nslots(self):
        return len(self.slots)


def _order_form(N: int, data) -> list:
    """Rational coefficients of the cusp-order form over the scaled slots."""
    out = []
    for d, g in exponent_slots(N):
        out.append(order_form_coefficient(N, data.lam, data.eps, d, g)
                   / chi_weight(d, g))
    return out


@functools.lru_cache(maxsize=None)
def pole_free_system(N: int) -> PoleFreeSystem:
    slots = exponent_slots(N)
    all_cusps = cusp_set(N)
    finite = [c for c in all_cusps if not c.cusp.is_infinity]
    inf = next(c for c in all_cusps if c.cusp.is_infinity)

    retained = []
    forms = []
    for data in finite:
        form = _order_form(N, data)
        if form not in forms:
            forms.append(form)
            retained.append(data)
    retained.append(inf)
    forms.append(_order_form(N, inf))

    nv = len(slots)
    rows = []
    labels = ["a'(%d,%d)" % s for s in slots]
    # weight condition: the g = 0 scaled exponents sum to zero
    rows.append([1 if g == 0 else 0 for d, g in slots] + [0] * len(retained))
    for i, form in enumerate(forms):
        den = 1
        for c in form:
            den = den * c.denominator // gcd(den, c.denominator)
        row = [int(c * den) for c in form] + [0] * len(retained)
        row[nv + i] = -den
        rows.append(row)
        labels.append("ord@%s" % retained[i].cusp)
    nonneg = [nv + i for i in range(len(retained) - 1)]  # infinity slack is free
    return PoleFreeSystem(system=DioSystem(rows, nonneg, labels),
                          slots=tuple(slots), retained=tuple(retained))


def quotient_from_scaled(N: int, slots, vector) -> GenEtaQuotient:
    ag = {}
    for (d, g), v in zip(slots, vector):
        if v:
            ag[(d, g)] = Fraction(v, chi_weight(d, g))
    return GenEtaQuotient(N, ag=ag)


def is_constant_one(q: GenEtaQuotient, N: int) -> bool:
    """Constant detection by two independent routes that must agree.

    Exponent identities beyond the plain-eta reductions can hide the constant
    1 inside a nonempty product (odd residues regrouped across divisors), so
    emptiness of the canonical form is sufficient but not necessary.
    """
    if q.is_one():
        return True
    exp = q.expansion(50)
    by_series = (exp.leading() == (Fraction(0), Fraction(1))
                 and len(exp.coeffs) == 1)
    by_orders = all(order_at_cusp(q, N, d) == 0 for d in cusp_set(N))
    if by_series != by_orders:
        raise AssertionError("constant detection disagrees for %r" % q)
    return by_series


@dataclass
class Generator:
    quotient: GenEtaQuotient
    orders: dict          # Cusp -> int
    pole: int             # -order at infinity (> 0)
    scaled_vector: tuple  # solution vector of the pole_free_system
    head: tuple = ()      # leading expansion coefficients, the canonical sort key

    def expansion(self, terms, reference=False):
        return self.quotient.expansion(terms, reference=reference)


@functools.lru_cache(maxsize=None)
def unit_lattice(N: int):
    """Exponent vectors (scaled slots) of quotients equal to the constant 1."""
    pfs = pole_free_system(N)
    _, lineality = hilbert_basis(pfs.system)
    return tuple(tuple(v[:pfs.nslots]) for v in lineality)


def generator_from_quotient(N: int, q: GenEtaQuotient) -> Generator:
    """Generator record (orders, pole, sort head) for an explicit quotient."""
    q = q.canonicalize()
    orders = {}
    for data in cusp_set(N):
        o = order_at_cusp(q, N, data)
        if o.denominator != 1 or (not data.cusp.is_infinity and o < 0):
            raise ValueError("quotient is not pole-free away from infinity")
        orders[data.cusp] = int(o)
    pole = -orders[INFINITY]
    if pole <= 0:
        raise ValueError("quotient has no pole at infinity")
    exp = q.expansion(16)
    head = tuple(exp.coefficient(n) for n in range(-pole, -pole + 14))
    slots = exponent_slots(N)
    vec = []
    for d, g in slots:
        v = q.ag.get((d, g), Fraction(0))
        if g == 0:
            v += Fraction(q.a.get(d, 0), 2)
        vec.append(int(v * chi_weight(d, g)))
    return Generator(quotient=q, orders=orders, pole=pole,
                     scaled_vector=tuple(vec), head=head)


def sort_generators(gens) -> tuple:
    out = sorted(gens, key=lambda g: (g.pole, tuple(-c for c in g.head)))
    return tuple(out)


@functools.lru_cache(maxsize=None)
def generators(N: int) -> tuple:
    """Deterministically ordered generator list for level N."""
    pfs = pole_free_system(N)
    pointed, lineality = hilbert_basis(pfs.system)
    for v in lineality:
        q = quotient_from_scaled(N, pfs.slots, v[:pfs.nslots])
        if not is_constant_one(q, N):
            raise AssertionError("lineality vector did not canonicalize to 1")
    out = []
    for v in pointed:
        q = quotient_from_scaled(N, pfs.slots, v[:pfs.nslots]).canonicalize()
        if is_constant_one(q, N):
            continue
        orders = {}
        for data in cusp_set(N):
            o = order_at_cusp(q, N, data)
            if o.denominator != 1:
                raise AssertionError("non-integral cusp order for a generator")
            if not data.cusp.is_infinity and o < 0:
                raise AssertionError("generator has a finite pole")
            orders[data.cusp] = int(o)
        pole = -orders[INFINITY]
        if pole <= 0:
            raise AssertionError("generator without a pole at infinity")
        exp = q.expansion(16)
        head = tuple(exp.coefficient(n) for n in range(-pole, -pole + 14))
        out.append(Generator(quotient=q, orders=orders, pole=pole,
                             scaled_vector=tuple(v[:pfs.nslots]), head=head))
    # exponent presentations are only unique up to unit factors, so order by
    # the expansion itself: smallest pole first, then largest head sequence
    out.sort(key=lambda g: (g.pole, tuple(-c for c in g.head)))
    if any(a.pole == b.pole and a.head == b.head for a, b in zip(out, out[1:])):
        raise AssertionError("generator sort key collision")
    return tuple(out)
