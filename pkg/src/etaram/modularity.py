"""Level admissibility conditions and the prefactor search.

Given a partition spec and a progression m n + t, a level N has to satisfy a
finite list of congruence conditions before any quotient prefactor phi can
make  phi * (shifted progression series)  modular.  check_level evaluates the
list (seven conditions for plain specs, ten for specs with generalized
factors), find_level picks the smallest admissible divisor of 24 m M, and
find_prefactor solves the exponent conditions for a sparse integral phi.

Congruences with rational left-hand sides are read exactly: the value must be
an integer divisible by the stated modulus.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .eta import GenEtaQuotient, PartitionSpec, bernoulli_p2, divisors
from .lattice import enumerate_coset, kernel_basis, solve_diophantine
from .cusps import kappa


class NoPhiFound(RuntimeError):
    """No prefactor exponent vector inside the configured search weight."""


def jacobi_symbol(a: int, n: int) -> int:
    """Jacobi symbol (a / n) for odd positive n."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("n must be odd and positive")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _is_divisible(value: Fraction, modulus: int) -> bool:
    q = Fraction(value, modulus)
    return q.denominator == 1


def _alpha_t(spec: PartitionSpec, t: int) -> int:
    if spec.is_plain():
        return -sum(d * e for d, e in spec.r.items()) - 24 * t
    M = spec.M
    val = -M * sum(d * e for d, e in spec.r.items()) - 24 * M * t
    extra = Fraction(0)
    for (d, g), e in spec.rg.items():
        extra += 12 * M * d * bernoulli_p2(Fraction(g, d)) * e
    total = val - extra
    if total.denominator != 1:
        raise ArithmeticError("alpha(t) failed to be integral")
    return int(total)


@dataclass
class LevelReport:
    N: int
    kappa: int
    alpha_t: int
    conditions: dict   # name -> (ok, detail)

    @property
    def ok(self) -> bool:
        return all(flag for flag, _ in self.conditions.values())

    def failures(self):
        return {k: d for k, (f, d) in self.conditions.items() if not f}


def _square_class_sweep(spec, m, t, N):
    """The progression-compatibility sweep over square residues."""
    n = 24 * m * spec.M
    seen = set()
    plain_sum = sum(d * e for d, e in spec.r.items())
    gen_sum = sum(Fraction(d, 2) * bernoulli_p2(Fraction(g, d)) * e
                  for (d, g), e in spec.rg.items())
    for j in range(1, n):
        if gcd(j, n) != 1 or j % N != 1:
            continue
        s = (j * j) % n
        if s in seen:
            continue
        seen.add(s)
        value = Fraction(s - 1, 24) * plain_sum + (s - 1) * gen_sum + t * s - t
        if not _is_divisible(value, m):
            return False, "fails at square residue s=%d" % s
    return True, "all %d residues pass" % len(seen)


def check_level(spec: PartitionSpec, m: int, t: int, N: int) -> LevelReport:
    if not (m >= 1 and 0 <= t < m):
        raise ValueError("need m >= 1 and 0 <= t < m")
    k = kappa(m)
    alpha = _alpha_t(spec, t)
    M = spec.M
    conds = {}

    conds["M | N"] = (N % M == 0, "M=%d, N=%d" % (M, N))
    bad_p = [p for p in range(2, m + 1) if m % p == 0 and N % p
             and all(p % q for q in range(2, p))]
    conds["primes of m divide N"] = (not bad_p, "missing %s" % bad_p if bad_p else "ok")

    if not spec.is_plain():
        v3 = k * N * sum(Fraction(g, d) * e for (d, g), e in spec.rg.items())
        conds["paired exponent residue (mod 2)"] = (_is_divisible(v3, 2), str(v3))
        v4 = k * N * sum(spec.rg.values())
        conds["paired exponent count (mod 4)"] = (v4 % 4 == 0, str(v4))
        v5 = k * m * N * N * sum(Fraction(e, d) for (d, g), e in spec.rg.items())
        conds["paired scaled sum (mod 12)"] = (_is_divisible(v5, 12), str(v5))

    v6 = k * N * sum(spec.r.values())
    conds["plain exponent count (mod 8)"] = (v6 % 8 == 0, str(v6))
    v7 = k * m * N * N * sum(Fraction(e, d) for d, e in spec.r.items())
    conds["plain scaled sum (mod 24)"] = (_is_divisible(v7, 24), str(v7))

    base = 24 * m * (1 if spec.is_plain() else M)
    need = base // gcd(k * alpha, base) if alpha or k else base
    conds["shift divisibility"] = (N % need == 0, "requires %d | N" % need)

    prod = 1
    for d, e in spec.r.items():
        prod *= d ** abs(e)
    z2 = 0
    while prod % 2 == 0:
        prod //= 2
        z2 += 1
    if m % 2 == 0:
        ok = (k * N % 4 == 0 and N * z2 % 8 == 0) or (z2 % 2 == 0 and N * (prod - 1) % 8 == 0)
        conds["even progression parity"] = (ok, "2^%d * %d" % (z2, prod))
    else:
        conds["even progression parity"] = (True, "m odd")

    conds["square residue sweep"] = _square_class_sweep(spec, m, t, N)
    return LevelReport(N=N, kappa=k, alpha_t=alpha, conditions=conds)


def find_level(spec: PartitionSpec, m: int, t: int) -> int:
    """Smallest admissible N among the divisors of 24 m M."""
    bound = 24 * m * spec.M
    for N in divisors(bound):
        if check_level(spec, m, t, N).ok:
            return N
    raise RuntimeError("no admissible level found below %d" % bound)


# ---------------------------------------------------------------------------
# the modularity criterion for a candidate prefactor
# ---------------------------------------------------------------------------

def _phi_variables(N: int):
    plain = divisors(N)
    paired = [(d, g) for d in plain for g in range(1, d // 2 + 1)]
    return plain, paired


def _criterion_parts(spec: PartitionSpec, m: int, t: int, N: int):
    """Linear forms (over the phi exponent variables) for the four conditions."""
    plain, paired = _phi_variables(N)
    alpha = _alpha_t(spec, t)
    M = spec.M

    c1 = ([1] * len(plain) + [0] * len(paired), Fraction(sum(spec.r.values())))

    row2 = [Fraction(N, d) for d in plain] + [Fraction(2 * N, d) for d, _ in paired]
    const2 = Fraction(N * m) * sum(Fraction(e, d) for d, e in spec.r.items())
    const2 += 2 * N * m * sum(Fraction(e, d) for (d, g), e in spec.rg.items())

    row3 = [Fraction(d) for d in plain]
    row3 += [12 * d * bernoulli_p2(Fraction(g, d)) for d, g in paired]
    const3 = Fraction(m) * sum(d * e for d, e in spec.r.items())
    const3 += 12 * m * sum(d * bernoulli_p2(Fraction(g, d)) * e for (d, g), e in spec.rg.items())
    const3 += Fraction((m * m - 1) * alpha, m * (1 if spec.is_plain() else M))

    sign_rows = []
    for a in range(1, 12 * N):
        if gcd(a, 6) != 1 or a % N != 1 or a == 1:
            continue
        row = []
        for d in plain:
            row.append(1 if jacobi_symbol(d, a) == -1 else 0)
        for d, g in paired:
            coef = Fraction((a - 1) * (2 * g - d), 2 * d)
            if coef.denominator != 1:
                raise ArithmeticError("non-integral sign exponent")
            row.append(int(coef) % 2)
        const = 0
        for d, e in spec.r.items():
            if jacobi_symbol(m * d, a) == -1:
                const += abs(e)
        for (d, g), e in spec.rg.items():
            coef = Fraction((a - 1) * (2 * g - d), 2 * d)
            const += int(coef) * e
        sign_rows.append((a, row, const % 2))
    return plain, paired, c1, (row2, const2), (row3, const3), sign_rows


def is_modular_prefactor(spec: PartitionSpec, m: int, t: int, N: int,
                         phi: GenEtaQuotient) -> bool:
    """Exact test of the four exponent conditions for phi."""
    plain, paired, c1, (row2, const2), (row3, const3), sign_rows = \
        _criterion_parts(spec, m, t, N)
    phi = phi.canonicalize()
    vec = [phi.a.get(d, Fraction(0)) for d in plain]
    vec += [phi.ag.get(k, Fraction(0)) for k in paired]
    if any(v.denominator != 1 for v in vec):
        return False
    vec = [int(v) for v in vec]

    if sum(c * v for c, v in zip(c1[0], vec)) + c1[1] != 0:
        return False
    v2 = sum(c * v for c, v in zip(row2, vec)) + const2
    if not _is_divisible(v2, 24):
        return False
    v3 = sum(c * v for c, v in zip(row3, vec)) + const3
    if not _is_divisible(v3, 24):
        return False
    for _, row, const in sign_rows:
        if (sum(c * v for c, v in zip(row, vec)) + const) % 2:
            return False
    return True


def find_prefactor(spec: PartitionSpec, m: int, t: int, N: int,
                   weight_cap: int = 32) -> GenEtaQuotient:
    """Sparse integral prefactor passing the modularity criterion.

    Strategy: conditions (1)-(3) and the finitely many sign conditions are
    all linear (equalities or congruences) in the exponents, so the passers
    form a coset of an integer lattice.  We enumerate the coset in growing
    l1-balls and return the passer minimizing sum |exponents|, breaking ties
    lexicographically; a found optimum w is certified once w <= current ball
    radius.
    """
    plain, paired, c1, (row2, const2), (row3, const3), sign_rows = \
        _criterion_parts(spec, m, t, N)
    nv = len(plain) + len(paired)

    # assemble (row, const, modulus): modulus 0 means exact equality
    constraints = [(list(c1[0]), c1[1], 0)]
    for row, const, modulus in ((row2, const2, 24), (row3, const3, 24)):
        den = 1
        for c in list(row) + [const]:
            den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
        constraints.append(([int(c * den) for c in row], int(const * den), modulus * den))
    for _, row, const in sign_rows:
        constraints.append((list(row), const, 2))

    nslack = sum(1 for _, _, mod in constraints if mod)
    A = []
    b = []
    si = 0
    for row, const, mod in constraints:
        full = row + [0] * nslack
        if mod:
            full[nv + si] = mod
            si += 1
        A.append(full)
        b.append(-int(const))
    x0 = solve_diophantine(A, b)
    if x0 is None:
        raise NoPhiFound("the exponent conditions are inconsistent at level %d" % N)
    kern = kernel_basis(A)
    v0 = x0[:nv]
    basis = [v[:nv] for v in kern]
    basis = [v for v in basis if any(v)]

    best = None
    radius = 4
    while True:
        radius = min(radius, weight_cap)
        for v in enumerate_coset(v0, basis, radius):
            w = sum(abs(c) for c in v)
            key = (w, tuple(v))
            if best is None or key < best:
                best = key
        if best is not None and best[0] <= radius:
            break
        if radius >= weight_cap:
            break
        radius = min(radius * 2, weight_cap)
    if best is None:
        raise NoPhiFound("no prefactor with exponent weight <= %d" % weight_cap)

    vec = best[1]
    a = {d: vec[i] for i, d in enumerate(plain) if vec[i]}
    ag = {key: vec[len(plain) + i] for i, key in enumerate(paired) if vec[len(plain) + i]}
    phi = GenEtaQuotient(N, a, ag)
    if not is_modular_prefactor(spec, m, t, N, phi):
        raise AssertionError("lattice enumeration produced a non-passer")
    return phi
