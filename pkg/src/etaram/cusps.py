"""Cusp geometry for the congruence subgroup of SL2(Z) with a = d = 1 and
c = 0 mod N (upper-triangular reduction), the group all modularity statements
in this package refer to.

Provides a complete set of inequivalent cusps with representative matrices,
widths, order formulas for generalized eta-quotients at each cusp, and the
two exponent maps used to bound the cusp orders of a prefactored progression
slice.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .eta import GenEtaQuotient, PartitionSpec, bernoulli_p2


@dataclass(frozen=True, order=True)
class Cusp:
    """Rational cusp a/c in lowest terms; c = 0 encodes infinity."""
    a: int
    c: int

    def __post_init__(self):
        if self.c < 0:
            raise ValueError("cusp denominators are normalized nonnegative")
        if gcd(self.a, self.c) != 1:
            raise ValueError("cusp %d/%d is not reduced" % (self.a, self.c))
        if self.c == 0 and self.a != 1:
            raise ValueError("infinity is stored as 1/0")

    @property
    def is_infinity(self) -> bool:
        return self.c == 0

    def __str__(self):
        return "oo" if self.c == 0 else "%d/%d" % (self.a, self.c)


INFINITY = Cusp(1, 0)


@dataclass(frozen=True)
class SL2Matrix:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError("matrix determinant must be 1")

    def apply_to_infinity(self) -> Cusp:
        a, c = self.a, self.c
        if c == 0:
            return INFINITY
        if c < 0:
            a, c = -a, -c
        g = gcd(abs(a), c)
        return Cusp(a // g, c // g)


def make_cusp(a: int, c: int) -> Cusp:
    if c == 0:
        return INFINITY
    if c < 0:
        a, c = -a, -c
    g = gcd(abs(a), c)
    return Cusp(a // g, c // g)


def cusps_equivalent(N: int, s1: Cusp, s2: Cusp) -> bool:
    """Equivalence of cusps under the level-N group.

    (a2, c2) must match +-(a1 + j c1, c1) mod N for some integer j; this is
    the standard criterion and is cross-checked against published cusp data and
    index formulas in the tests.
    """
    a1, c1, a2, c2 = s1.a, s1.c, s2.a, s2.c
    if (c2 - c1) % N == 0:
        for j in range(N):
            if (a2 - a1 - j * c1) % N == 0:
                return True
    if (c2 + c1) % N == 0:
        for j in range(N):
            if (a2 + a1 + j * c1) % N == 0:
                return True
    return False


def _xgcd(a: int, b: int):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def completion_matrix(cusp: Cusp) -> SL2Matrix:
    """Some matrix with first column (a, c); ties broken by smallest |b|."""
    if cusp.is_infinity:
        return SL2Matrix(1, 0, 0, 1)
    a, c = cusp.a, cusp.c
    g, x, y = _xgcd(a, c)
    # a x + c y = 1, so rows (a, -y; c, x) has det a x + c y = 1
    b, d = -y, x
    if a:
        k = round(Fraction(b, a))
        b, d = b - k * a, d - k * c
        if abs(b + abs(a)) < abs(b):
            b, d = b + abs(a), d + (c if a > 0 else -c)
    return SL2Matrix(a, b, c, d)


def width(N: int, cusp: Cusp) -> int:
    """Width of a cusp (the stated level-4 anomaly included)."""
    if N == 4 and gcd(cusp.c, 4) == 2:
        return 1
    return N // gcd(cusp.c, N)


@dataclass(frozen=True)
class CuspData:
    cusp: Cusp
    alpha: SL2Matrix     # alpha(infinity) = cusp
    lam: int             # equivalent form lam / (mu * eps)
    mu: int
    eps: int             # eps | N
    width: int


def _lambda_mu_form(N: int, cusp: Cusp):
    eps = gcd(cusp.c, N) if not cusp.is_infinity else N
    for mu in range(1, N * N + 1):
        if gcd(mu, N) != 1:
            continue
        for lam in range(1, N * N + 1):
            if gcd(lam, N) != 1 or gcd(lam, mu) != 1:
                continue
            if cusps_equivalent(N, make_cusp(lam, mu * eps), cusp):
                return lam, mu, eps
    raise RuntimeError("no lambda/(mu eps) form found for %s at level %d" % (cusp, N))


@functools.lru_cache(maxsize=None)
def cusp_set(N: int) -> tuple:
    """A complete, duplicate-free tuple of CuspData for the level-N group.

    Infinity is listed last; the finite representatives keep their discovery
    order (increasing denominator, then numerator).
    """
    reps: list[Cusp] = []
    candidates = [Cusp(0, 1)] if N == 1 else [
        make_cusp(a, c)
        for c in range(1, N + 1)
        for a in range(N)
        if gcd(a, c) == 1
    ]
    for s in candidates:
        if not any(cusps_equivalent(N, s, r) for r in reps):
            reps.append(s)
    # rotate the representative of the infinite class to the canonical 1/0
    for i, r in enumerate(reps):
        if cusps_equivalent(N, r, INFINITY):
            reps.pop(i)
            break
    reps.append(INFINITY)
    out = []
    for s in reps:
        lam, mu, eps = _lambda_mu_form(N, s)
        out.append(CuspData(cusp=s, alpha=completion_matrix(s),
                            lam=lam, mu=mu, eps=eps, width=width(N, s)))
    return tuple(out)


def find_cusp_class(N: int, cusp: Cusp) -> CuspData:
    for data in cusp_set(N):
        if cusps_equivalent(N, data.cusp, cusp):
            return data
    raise LookupError("cusp %s not matched at level %d" % (cusp, N))


# ---------------------------------------------------------------------------
# order formulas
# ---------------------------------------------------------------------------

def _combined_exponents(h: GenEtaQuotient):
    """Exponents with plain eta powers folded into the g = 0 slots."""
    combined = {}
    for d, e in h.a.items():
        combined[(d, 0)] = combined.get((d, 0), Fraction(0)) + Fraction(e, 2)
    for k, e in h.ag.items():
        combined[k] = combined.get(k, Fraction(0)) + e
    return combined


def order_form_coefficient(N: int, lam: int, eps: int, d: int, g: int) -> Fraction:
    """Coefficient of the (d, g) exponent in the order value at lam/(mu*eps)."""
    gde = gcd(d, eps)
    return (Fraction(N, 2) * Fraction(gde * gde, d * eps)
            * bernoulli_p2(Fraction(lam * g, gde)))


def order_at_cusp(h: GenEtaQuotient, N: int, cusp) -> Fraction:
    """Order of a generalized eta-quotient at a cusp, by the closed formula.

    Exact rational; an integer whenever h is modular for the level-N group.
    """
    data = cusp if isinstance(cusp, CuspData) else find_cusp_class(N, cusp)
    total = Fraction(0)
    for (d, g), e in _combined_exponents(h).items():
        if e:
            total += order_form_coefficient(N, data.lam, data.eps, d, g) * e
    return total


def kappa(m: int) -> int:
    return gcd(m * m - 1, 24)


def slice_min_exponent(spec: PartitionSpec, m: int, gamma: SL2Matrix) -> Fraction:
    """Least q-exponent contributed by the progression slice at gamma.

    Minimum over the residue twist parameter of an exact rational expression
    in gcd's of the matrix entries; the generalized factors of the spec
    contribute a second Bernoulli term.
    """
    k = kappa(m)
    a, c = gamma.a, gamma.c
    best = None
    for lam in range(m):
        total = Fraction(0)
        u = a + k * lam * c
        for d, e in spec.r.items():
            gg = gcd(d * u, m * c)
            total += Fraction(gg * gg, 24 * d * m) * e
        for (d, g), e in spec.rg.items():
            gg = gcd(d * u, m * c)
            total += (Fraction(gg * gg, 2 * d * m)
                      * bernoulli_p2(Fraction(u * g, gg)) * e)
        if best is None or total < best:
            best = total
    return best


def quotient_min_exponent(phi: GenEtaQuotient, gamma: SL2Matrix) -> Fraction:
    """Least q-exponent contributed by the prefactor quotient at gamma.

    Constant on double cosets, so any representative matrix of a cusp gives
    the same value.
    """
    a, c = gamma.a, gamma.c
    total = Fraction(0)
    for d, e in phi.a.items():
        gg = gcd(d, c)
        total += Fraction(gg * gg, 24 * d) * e
    for (d, g), e in phi.ag.items():
        gg = gcd(d, c)
        total += Fraction(gg * gg, 2 * d) * bernoulli_p2(Fraction(a * g, gg)) * e
    return total


def cusp_order_bounds(spec: PartitionSpec, m: int, t: int,
                      phi: GenEtaQuotient, N: int) -> dict:
    """Lower bounds width * (slice + prefactor exponents) for every cusp."""
    out = {}
    for data in cusp_set(N):
        bound = data.width * (slice_min_exponent(spec, m, data.alpha)
                              + quotient_min_exponent(phi, data.alpha))
        out[data.cusp] = bound
    return out
