"""Module bases and reduction for modular functions with poles only at
infinity.

The generator quotients span a polynomial algebra that is finitely generated
as a module over the polynomial ring in a single distinguished generator z
(the one of smallest pole order).  module_basis computes a basis 1, e_1, ...
whose pole orders are pairwise incongruent modulo the pole order of z, which
makes leading-term reduction unambiguous: reduce_by_basis strips poles one at
a time, and express certifies membership through the constancy principle
(a remainder with no poles anywhere and positive order at infinity is zero),
double-checked coefficientwise to the certified truncation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .series import QSeries


class InsufficientTruncation(RuntimeError):
    """Expansions are too short to continue reducing; retry with more terms."""


class NotMember(RuntimeError):
    """Reduction stalled: no basis element covers the current pole class."""


class VerificationFailure(RuntimeError):
    """A coefficient survived where the constancy principle demands zero."""


def _combo_axpy(target: dict, c: Fraction, combo: dict, shift_index=None, shift_by=0):
    for mono, coeff in combo.items():
        if shift_by:
            mono = tuple(e + (shift_by if i == shift_index else 0)
                         for i, e in enumerate(mono))
        v = target.get(mono, Fraction(0)) - c * coeff
        if v:
            target[mono] = v
        elif mono in target:
            del target[mono]


@dataclass
class BasisElement:
    combo: dict      # monomial (exponents over the generator list) -> coefficient
    pole: int

    def scaled(self, c: Fraction) -> "BasisElement":
        return BasisElement({m: v * c for m, v in self.combo.items()}, self.pole)


@dataclass
class ModuleBasis:
    gens: tuple                      # Generator records, z first
    n: int                           # pole order of z
    elements: list = field(default_factory=list)  # [unit, e_1, ...]
    _terms: int = 0
    _gen_series: list = field(default_factory=list)
    _mono_cache: dict = field(default_factory=dict)

    @property
    def z(self):
        return self.gens[0]

    @property
    def width(self) -> int:
        return len(self.elements) - 1

    def by_class(self):
        return {e.pole % self.n: e for e in self.elements}

    def ensure_terms(self, terms: int):
        if terms > self._terms:
            self._terms = terms
            self._gen_series = [g.expansion(terms + g.pole + 2) for g in self.gens]
            self._mono_cache = {}

    def monomial_series(self, mono: tuple) -> QSeries:
        cached = self._mono_cache.get(mono)
        if cached is not None:
            return cached
        if not any(mono):
            out = QSeries.one(self._terms)
        else:
            i = max(j for j, e in enumerate(mono) if e)
            below = tuple(e if j != i else e - 1 for j, e in enumerate(mono))
            out = self.monomial_series(below) * self._gen_series[i]
        self._mono_cache[mono] = out
        return out

    def combo_series(self, combo: dict) -> QSeries:
        total = None
        for mono, c in sorted(combo.items()):
            term = self.monomial_series(mono).scale(c)
            total = term if total is None else total + term
        return total if total is not None else QSeries.zero(self._terms)

    def element_series(self, idx: int) -> QSeries:
        return self.combo_series(self.elements[idx].combo)


def _pole_of(series: QSeries):
    """Pole order of a series, or None when no pole is visible.

    Raises when the known range cannot even decide the sign of the order.
    """
    lead = series.leading()
    if lead is None:
        if series.bound() <= 0:
            raise InsufficientTruncation("series known to no terms")
        return None
    e, _ = lead
    if e >= 0:
        return None
    if e.denominator != 1:
        raise ValueError("pole order is not an integer: %s" % e)
    return -int(e)


def module_basis(gens, start_terms: int = 48) -> ModuleBasis:
    """Module basis of the span of the generators (an adaptation of the
    classical basis-completion over the smallest-pole generator).

    Candidates enter one residue class each; products of the basis with all
    generators are reduced until nothing new appears.  New class
    representatives are chosen with minimal pole, seeding from single
    generators in order of their expansion head.
    """
    if not gens:
        # no nonconstant functions at all: the span is the constants
        mb = ModuleBasis(gens=(), n=1)
        mb.ensure_terms(start_terms)
        mb.elements = [BasisElement({(): Fraction(1)}, 0)]
        return mb
    n = gens[0].pole
    assert all(g.pole >= n for g in gens)
    mb = ModuleBasis(gens=tuple(gens), n=n)
    terms = max(start_terms, 4 * max(g.pole for g in gens))
    while True:
        try:
            _module_basis_attempt(mb, terms)
            return mb
        except InsufficientTruncation:
            terms *= 2
            if terms > 1 << 14:
                raise


def _module_basis_attempt(mb: ModuleBasis, terms: int):
    mb.elements = []
    mb.ensure_terms(terms)
    k = len(mb.gens)
    zero_mono = tuple([0] * k)
    unit = BasisElement({zero_mono: Fraction(1)}, 0)
    mb.elements = [unit]
    basis = {0: unit}

    def install(elem):
        r = elem.pole % mb.n
        old = basis.get(r)
        basis[r] = elem
        return old

    def reduce_elem(combo):
        """Strip reducible leading poles; None when absorbed into the span."""
        combo = dict(combo)
        series = mb.combo_series(combo)
        while True:
            p = _pole_of(series)
            if p is None:
                return None
            e = basis.get(p % mb.n)
            if e is None or e.pole > p:
                lead_c = series.leading()[1]
                combo2 = {m: v / lead_c for m, v in combo.items()}
                return BasisElement(combo2, p)
            j = (p - e.pole) // mb.n
            c = series.leading()[1]
            mono_shift = {tuple(m_e + (j if i == 0 else 0) for i, m_e in enumerate(mono)): v
                          for mono, v in e.combo.items()}
            sub = mb.combo_series(mono_shift).scale(c)
            series2 = series - sub
            p2 = _pole_of(series2)
            if p2 is not None and p2 >= p:
                raise AssertionError("reduction failed to decrease the pole order")
            _combo_axpy(combo, c, mono_shift)
            series = series2

    # seed classes with single generators (smallest pole, then leanest head)
    for i in sorted(range(k), key=lambda i: (mb.gens[i].pole, mb.gens[i].head)):
        g = mb.gens[i]
        r = g.pole % mb.n
        if r not in basis or basis[r].pole > g.pole:
            mono = tuple(1 if j == i else 0 for j in range(k))
            elem = BasisElement({mono: Fraction(1)}, g.pole)
            old = install(elem)
            assert old is None or old.pole > g.pole

    rounds = 0
    changed = True
    while changed:
        rounds += 1
        if rounds > 10 * max(k, 1):
            raise RuntimeError("basis closure failed to stabilize")
        changed = False
        for r in sorted(basis):
            elem = basis[r]
            for i in range(k):
                combo = {}
                _combo_axpy(combo, Fraction(-1), elem.combo, shift_index=i, shift_by=1)
                red = reduce_elem(combo)
                if red is None:
                    continue
                cls = red.pole % mb.n
                old = basis.get(cls)
                if old is None or old.pole > red.pole:
                    basis[cls] = red
                    changed = True
                    break
                raise AssertionError("irreducible element in an occupied class")
            if changed:
                break
    mb.elements = [unit] + sorted(
        (e for r, e in basis.items() if r != 0), key=lambda e: e.pole)
    return mb


def reduce_by_basis(f: QSeries, mb: ModuleBasis):
    """Leading-pole reduction of f against the basis.

    Returns ({(element index, z degree): coefficient}, remainder); the
    remainder has no visible pole.  Raises NotMember when a pole class has no
    usable basis element and InsufficientTruncation when the series runs out.
    """
    coeffs = {}
    series = f
    by_class = mb.by_class()
    guard = 0
    budget = None
    while True:
        p = _pole_of(series)
        if p is None:
            return coeffs, series
        if budget is None:
            budget = 8 * (p + len(mb.elements) + 4)
        guard += 1
        if guard > budget:
            raise RuntimeError("reduction loop failed to terminate")
        if not mb.gens:
            raise NotMember("a pole of order %d over an empty basis" % p)
        elem = by_class.get(p % mb.n)
        if elem is None or elem.pole > p:
            raise NotMember("no basis element matches pole order %d" % p)
        j = (p - elem.pole) // mb.n
        c = series.leading()[1]
        idx = mb.elements.index(elem)
        mono_shift = {tuple(me + (j if i == 0 else 0) for i, me in enumerate(mono)): v
                      for mono, v in elem.combo.items()}
        series2 = series - mb.combo_series(mono_shift).scale(c)
        p2 = _pole_of(series2)
        if p2 is not None and p2 >= p:
            raise AssertionError("reduction failed to decrease the pole order")
        key = (idx, j)
        coeffs[key] = coeffs.get(key, Fraction(0)) + c
        series = series2


def express(f: QSeries, mb: ModuleBasis, certify_to: int):
    """Membership test and expression of f over the basis.

    The caller certifies that f has nonnegative order at every finite cusp;
    then a remainder with positive order at infinity is identically zero, and
    we additionally verify its coefficients vanish up to certify_to.
    """
    lead = f.leading()
    pole0 = int(-lead[0]) if lead is not None and lead[0] < 0 else 0
    mb.ensure_terms(max(mb._terms, certify_to + pole0 + 8))
    coeffs, rem = reduce_by_basis(f, mb)
    if rem.bound() <= 0:
        raise InsufficientTruncation("remainder undetermined at order zero")
    c0 = rem.coefficient(0)
    if c0:
        key = (0, 0)
        coeffs[key] = coeffs.get(key, Fraction(0)) + c0
        rem = rem - QSeries.monomial(0, c0, rem.bound())
    if rem.bound() < certify_to:
        raise InsufficientTruncation(
            "remainder known to %s, need %d" % (rem.bound(), certify_to))
    if not rem.is_known_zero():
        e, c = rem.leading()
        raise VerificationFailure(
            "coefficient %s at q^%s survives the reduction" % (c, e))
    coeffs = {k: v for k, v in coeffs.items() if v}
    return coeffs
