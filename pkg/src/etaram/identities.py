"""End-to-end derivation and certification of progression identities.

derive_identity runs the whole chain: admissible level, modular prefactor,
generator monoid, module basis, pole-clearing multiplier, reduction, and a
final independent re-expansion of both sides.  dissect applies it to every
residue class of a modulus, and verify_identity checks quoted q-series
identities written in the small expression language.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, gcd

from . import exprs
from .cusps import INFINITY, cusp_order_bounds, cusp_set
from .eta import GenEtaQuotient, PartitionSpec
from .generators import generators
from .lattice import DioSystem, hilbert_basis
from .modularity import NoPhiFound, check_level, find_level, find_prefactor
from .reduction import (
    InsufficientTruncation, ModuleBasis, NotMember, VerificationFailure,
    express, module_basis,
)
from .series import QSeries


class NoHFound(RuntimeError):
    """The pole-clearing inequality system has no usable solution."""


@dataclass
class DeriveOptions:
    N: int = 0                # 0 = choose the smallest admissible level
    order: int = 0            # minimum certification order
    phi_weight: int = 32      # search weight cap for the prefactor
    guard: int = 50           # certification margin past the pole budget
    verify: bool = True       # re-expand both sides through the plain route


def find_multiplier(bounds: dict, gens, N: int):
    """Multiplier h = prod generators**t clearing every finite pole of F.

    Solves the integral inequalities ord(h at cusp) + bound > -1 per finite
    cusp, decomposes the solution set into finitely many base points plus a
    recession monoid, and returns the base point maximizing the order of hF
    at infinity (ties: lexicographically smallest power vector).
    """
    k = len(gens)
    rows = []
    rhs = []
    seen = set()
    for data in cusp_set(N):
        if data.cusp.is_infinity:
            continue
        row = tuple(g.orders[data.cusp] for g in gens)
        d = bounds[data.cusp]
        # integer order strictly above -1 - d means order >= floor(-1-d) + 1
        bound_floor = (-1 - d).__floor__() + 1
        key = (row, bound_floor)
        if key in seen:
            continue
        seen.add(key)
        rows.append(list(row))
        rhs.append(bound_floor)
    nv = k + 1 + len(rows)  # t variables, the scale s, one slack per row
    eqs = []
    for i, (row, g0) in enumerate(zip(rows, rhs)):
        eq = row + [-g0] + [0] * len(rows)
        eq[k + 1 + i] = -1
        eqs.append(eq)
    labels = ["t%d" % i for i in range(k)] + ["s"] + ["y%d" % i for i in range(len(rows))]
    system = DioSystem(eqs, nonneg=list(range(k, nv)), labels=labels)
    pointed, _lineality = hilbert_basis(system)
    alphas = [p for p in pointed if p[k] == 1]
    if not alphas:
        raise NoHFound("no multiplier clears the finite poles")
    best = None
    for p in alphas:
        t = tuple(p[:k])
        gain = sum(tj * (-g.pole) for tj, g in zip(t, gens))
        key = (-gain, t)
        if best is None or key < best:
            best = key
    t = best[1]
    h = GenEtaQuotient(N)
    for tj, g in zip(t, gens):
        if tj:
            h = h * (g.quotient ** tj)
    return h.canonicalize(), t


@dataclass
class Identity:
    spec: PartitionSpec
    m: int
    t: int
    status: str                      # "Derived" or "Failed"
    N: int = 0
    phi: GenEtaQuotient = None
    h: GenEtaQuotient = None
    h_powers: tuple = ()
    basis: ModuleBasis = None
    rhs: dict = field(default_factory=dict)   # (element index, z degree) -> Fraction
    certified_to: int = 0
    failure: str = ""

    # -- series reconstruction -------------------------------------------------

    def prefactor(self) -> GenEtaQuotient:
        return (self.phi * self.h).canonicalize()

    def lhs_series(self, terms: int, reference=False) -> QSeries:
        quot = self.prefactor()
        span = terms + int(ceil(-min(0, quot.lead_exponent()
                                     + self.spec.slice_prefactor(self.m, self.t)))) + 8
        return (quot.expansion(span, reference=reference)
                * self.spec.slice_expansion(self.m, self.t, span, reference=reference))

    def rhs_series(self, terms: int, reference=False) -> QSeries:
        gens = self.basis.gens
        cache = {}

        def gen_pow(i, e):
            if (i, e) not in cache:
                cache[(i, e)] = gens[i].quotient.expansion(
                    terms + e * gens[i].pole + 4, reference=reference) ** e
            return cache[(i, e)]

        total = QSeries.zero(terms)
        for (idx, j), c in sorted(self.rhs.items()):
            mono = QSeries.one(terms + 4)
            if j:
                mono = mono * gen_pow(0, j)
            for combo_mono, coef in self.basis.elements[idx].combo.items():
                term = mono.scale(c * coef)
                for gi, ge in enumerate(combo_mono):
                    if ge:
                        term = term * gen_pow(gi, ge)
                total = total + term.truncated(terms)
        return total

    def slice_series(self, terms: int) -> QSeries:
        """sum a(m n + t) q^n recovered from the certified right-hand side."""
        quot = self.prefactor()
        pole = int(ceil(-min(0, quot.lead_exponent())))
        span = terms + 2 * pole + 8
        rhs = self.rhs_series(span)
        inv = quot.expansion(span).invert()
        shift = -self.spec.slice_prefactor(self.m, self.t)
        return (rhs * inv).shift(shift).truncated(terms)

    def polynomial(self, element_index: int = 0) -> dict:
        """z-degree -> coefficient for one basis element's polynomial part."""
        return {j: c for (i, j), c in self.rhs.items() if i == element_index}

    def polynomial_over(self, target_z: GenEtaQuotient, element_index: int = 0) -> dict:
        """The element's polynomial re-expressed over a stated variable.

        The internal module variable is only determined up to an additive
        constant (distinct minimal-pole generators differ by constants), so a
        published identity may use a different translate.  The offset is read
        off the expansions, certified to be an exact constant, and
        substituted binomially.
        """
        diff = self.basis.z.quotient.expansion(30) - target_z.expansion(30)
        nonconstant = [(e, c) for e, c in diff.terms() if e != 0]
        if nonconstant:
            raise ValueError("target differs from the module variable "
                             "by more than a constant: %s" % nonconstant)
        shift = diff.coefficient(0) if diff.bound() > 0 else Fraction(0)
        out = {}
        for j, c in self.polynomial(element_index).items():
            for i in range(j + 1):
                binom = 1
                for u in range(i):
                    binom = binom * (j - u) // (u + 1)
                out[i] = out.get(i, Fraction(0)) + c * binom * shift ** (j - i)
        return {j: c for j, c in out.items() if c}

    def congruence_modulus(self) -> int:
        """gcd of the numerators when every coefficient is an integer."""
        g = 0
        for c in self.rhs.values():
            if c.denominator != 1:
                return 1
            g = gcd(g, abs(c.numerator))
        return g or 1

    # -- reporting ----------------------------------------------------------------

    def pretty(self) -> str:
        if self.status != "Derived":
            return "Failed(%s)" % self.failure
        names = {0: ""}
        for i in range(1, len(self.basis.elements)):
            names[i] = "e%d" % i if len(self.basis.elements) > 2 else "e"
        parts = []
        for (idx, j), c in sorted(self.rhs.items(), key=lambda kv: (kv[0][0], -kv[0][1])):
            term = str(c)
            if j:
                term += "*z^%d" % j if j > 1 else "*z"
            if idx:
                term += "*%s" % names[idx]
            parts.append(term)
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict:
        def combo_json(elem):
            out = []
            for mono, coef in sorted(elem.combo.items()):
                q = GenEtaQuotient(self.N)
                for gi, ge in enumerate(mono):
                    if ge:
                        q = q * (self.basis.gens[gi].quotient ** ge)
                out.append([str(coef), q.canonicalize().to_json()])
            return out

        doc = {
            "spec": self.spec.to_json(),
            "m": self.m,
            "t": self.t,
            "N": self.N,
            "phi": self.phi.to_json() if self.phi else None,
            "h": self.h.to_json() if self.h else None,
            "z": (self.basis.z.quotient.to_json()
                  if self.basis and self.basis.gens else None),
            "basis": [combo_json(e) for e in self.basis.elements] if self.basis else [],
            "rhs": [[i, j, str(c)] for (i, j), c in sorted(self.rhs.items())],
            "certified_to": str(self.certified_to),
            "status": self.status if self.status == "Derived" else
                      "Failed(%s)" % self.failure,
        }
        return doc


_BASIS_CACHE = {}


def level_basis(N: int) -> ModuleBasis:
    if N not in _BASIS_CACHE:
        _BASIS_CACHE[N] = module_basis(generators(N))
    return _BASIS_CACHE[N]


def derive_identity(spec: PartitionSpec, m: int, t: int,
                    options: DeriveOptions = None) -> Identity:
    opts = options or DeriveOptions()
    stage = "level"
    try:
        N = opts.N or find_level(spec, m, t)
        report = check_level(spec, m, t, N)
        if not report.ok:
            raise RuntimeError("level %d fails: %s" % (N, sorted(report.failures())))
        stage = "prefactor"
        phi = find_prefactor(spec, m, t, N, opts.phi_weight)
        stage = "generators"
        gens = generators(N)
        mb = level_basis(N)
        stage = "multiplier"
        bounds = cusp_order_bounds(spec, m, t, phi, N)
        h, h_powers = find_multiplier(bounds, gens, N)
        stage = "reduction"
        inf_bound = bounds[INFINITY] + sum(
            tj * (-g.pole) for tj, g in zip(h_powers, gens))
        pole_budget = max(0, int(ceil(-inf_bound)))
        target = max(pole_budget + opts.guard, opts.order)
        quot = (phi * h).canonicalize()
        rhs_coeffs, certified = _reduce_with_retry(spec, m, t, quot, mb, target)
        identity = Identity(spec=spec, m=m, t=t, status="Derived", N=N, phi=phi,
                            h=h, h_powers=h_powers, basis=mb, rhs=rhs_coeffs,
                            certified_to=certified)
        if opts.verify:
            stage = "verification"
            _independent_check(identity, certified)
        return identity
    except (NoPhiFound, NoHFound, NotMember, VerificationFailure,
            RuntimeError, ValueError) as exc:
        return Identity(spec=spec, m=m, t=t, status="Failed",
                        failure="%s: %s" % (stage, exc))


def _reduce_with_retry(spec, m, t, quot, mb, target):
    span = target + int(ceil(abs(quot.lead_exponent()))) + 16
    for _ in range(6):
        hF = quot.expansion(span) * spec.slice_expansion(m, t, span)
        if hF.denom != 1:
            raise VerificationFailure("fractional exponents survive in the product")
        if hF.bound() >= target:
            mb.ensure_terms(max(int(hF.bound()), target) + 4)
            try:
                coeffs = express(hF.truncated(target), mb, target)
                return coeffs, target
            except InsufficientTruncation:
                pass
        span *= 2
    raise RuntimeError("could not certify to order %d" % target)


def _independent_check(identity: Identity, order: int):
    lhs = identity.lhs_series(order, reference=True)
    rhs = identity.rhs_series(order, reference=True)
    diff = lhs - rhs
    if not diff.truncated(order).is_known_zero():
        lead = diff.truncated(order).leading()
        raise VerificationFailure(
            "independent re-expansion differs at q^%s" % (lead[0],))


def verify_identity(lhs: str, rhs: str, order: int):
    """Expand both expressions to the given order and compare exactly."""
    left = exprs.expand(lhs, order)
    right = exprs.expand(rhs, order)
    diff = (left - right).truncated(min(left.bound(), right.bound(), order))
    if diff.is_known_zero():
        return True, {"order": order, "status": "equal"}
    e, c = diff.leading()
    return False, {"order": order, "status": "mismatch",
                   "exponent": str(e), "difference": str(c)}


def dissect(spec: PartitionSpec, m: int, options: DeriveOptions = None):
    """Identities for every residue class mod m, plus the interleaving check."""
    out = [derive_identity(spec, m, t, options) for t in range(m)]
    if all(i.status == "Derived" for i in out):
        terms = 60
        recombined = QSeries.zero(terms)
        for t, ident in enumerate(out):
            n_slice = (terms - t) // m + 1
            s = ident.slice_series(n_slice)
            stretched = QSeries({m * n + t: s.coefficient(n) for n in range(n_slice)},
                                m * n_slice + t, 1)
            recombined = recombined + stretched
        direct = spec.product_expansion(terms)
        if not (recombined - direct).truncated(recombined.bound()).is_known_zero():
            raise VerificationFailure("dissection slices fail to interleave")
    return out
