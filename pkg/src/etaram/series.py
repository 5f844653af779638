"""Exact truncated power series in fractional powers of q.

A series is  sum_n c[n] * q**(n/w)  with integer scaled exponents n, a shared
positive denominator w and exact rational coefficients.  Coefficients at
scaled exponents >= trunc are unknown, so a series represents its value up to
O(q**(trunc/w)).  Truncation bookkeeping is pessimistic: an operation never
reports a coefficient that the inputs do not fully determine.

All arithmetic is exact; floating point is never used.  Values are immutable
after construction and safe to share between threads.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

_SPARSE_LIMIT = 10  # below this many stored terms, dict convolution beats packing


class ZeroSeries(ArithmeticError):
    """Inversion of a series with no nonzero term below its truncation."""


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


# ---------------------------------------------------------------------------
# integer polynomial kernels (dense lists of python ints)
# ---------------------------------------------------------------------------

def _int_poly_mul(a: list[int], b: list[int]) -> list[int]:
    """Product of two dense integer coefficient lists.

    Large products are computed by packing each polynomial into a single big
    integer (evaluation at a power of two) so that CPython's subquadratic
    integer multiplication does the convolution.
    """
    if not a or not b:
        return []
    if len(a) > len(b):
        a, b = b, a
    n_out = len(a) + len(b) - 1
    if len(a) <= 16 or len(a) * len(b) <= 4096:
        out = [0] * n_out
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] += x * y
        return out

    amax = max(abs(c) for c in a)
    bmax = max(abs(c) for c in b)
    if amax == 0 or bmax == 0:
        return [0] * n_out
    bound = amax * bmax * len(a)
    nbytes = (bound.bit_length() + 2 + 7) // 8
    bits = nbytes * 8
    base = 1 << bits
    half = base >> 1

    def pack(cs: list[int]) -> int:
        buf = bytearray(nbytes * len(cs))
        carry = 0
        for i, c in enumerate(cs):
            v = c + carry
            carry = 0
            while v < 0:
                v += base
                carry -= 1
            buf[i * nbytes:(i + 1) * nbytes] = v.to_bytes(nbytes, "little")
        x = int.from_bytes(buf, "little")
        if carry:
            x += carry << (bits * len(cs))
        return x

    prod = pack(a) * pack(b)
    sign = 1
    if prod < 0:
        sign = -1
        prod = -prod
    raw = prod.to_bytes(nbytes * n_out + nbytes + 8, "little")
    out = []
    carry = 0
    for i in range(n_out):
        v = int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") + carry
        if v >= half:
            v -= base
            carry = 1
        else:
            carry = 0
        out.append(sign * v)
    return out


def _int_poly_mul_trunc(a: list[int], b: list[int], n: int) -> list[int]:
    out = _int_poly_mul(a[:n], b[:n])[:n]
    if len(out) < n:
        out.extend([0] * (n - len(out)))
    return out


def _int_poly_inv(a: list[int], n: int) -> list[int]:
    """First n coefficients of 1/a for an integer series with a[0] = +-1."""
    c0 = a[0]
    if abs(c0) != 1:
        raise ValueError("leading coefficient must be a unit")
    v = [c0]
    while len(v) < n:
        m = min(2 * len(v), n)
        t = _int_poly_mul_trunc(a, v, m)
        t[0] -= 1
        corr = _int_poly_mul_trunc(v, t, m)
        v = [(v[i] if i < len(v) else 0) - corr[i] for i in range(m)]
    return v[:n]


# ---------------------------------------------------------------------------
# the series type
# ---------------------------------------------------------------------------

class QSeries:
    """Truncated Laurent series in q**(1/denom) with exact rational coefficients."""

    __slots__ = ("denom", "coeffs", "trunc")

    def __init__(self, coeffs: dict, trunc: int, denom: int = 1):
        if denom < 1:
            raise ValueError("denominator must be a positive integer")
        cleaned = {}
        for n, c in coeffs.items():
            c = c if isinstance(c, Fraction) else Fraction(c)
            if c:
                if n >= trunc:
                    raise ValueError("stored exponent %r not below truncation %r" % (n, trunc))
                cleaned[n] = c
        g = denom
        g = gcd(g, trunc)
        for n in cleaned:
            g = gcd(g, n)
        if g > 1:
            cleaned = {n // g: c for n, c in cleaned.items()}
            trunc //= g
            denom //= g
            denom = max(denom, 1)
        object.__setattr__(self, "coeffs", cleaned)
        object.__setattr__(self, "trunc", trunc)
        object.__setattr__(self, "denom", denom)

    def __setattr__(self, name, value):
        raise AttributeError("QSeries is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> "QSeries":
        return cls({}, order, 1)

    @classmethod
    def one(cls, order: int) -> "QSeries":
        return cls({0: Fraction(1)}, order, 1)

    @classmethod
    def monomial(cls, exponent, coeff=1, order: int = 1) -> "QSeries":
        """coeff * q**exponent, known up to q**order (both may be fractions)."""
        e = Fraction(exponent)
        t = Fraction(order)
        den = _lcm(e.denominator, t.denominator)
        e_s = int(e * den)
        t_s = int(t * den)
        if e_s >= t_s:
            raise ValueError("monomial exponent not below requested order")
        return cls({e_s: Fraction(coeff)}, t_s, den)

    # -- inspection --------------------------------------------------------

    def bound(self) -> Fraction:
        """First unknown exponent, as an exact rational."""
        return Fraction(self.trunc, self.denom)

    def is_known_zero(self) -> bool:
        return not self.coeffs

    def leading(self):
        """(exponent, coefficient) of the smallest stored term, or None."""
        if not self.coeffs:
            return None
        n = min(self.coeffs)
        return Fraction(n, self.denom), self.coeffs[n]

    def coefficient(self, exponent) -> Fraction:
        e = Fraction(exponent) * self.denom
        if e >= self.trunc:
            raise LookupError("coefficient of q^%s is beyond the truncation" % exponent)
        if e.denominator != 1:
            return Fraction(0)   # below the bound but off the exponent grid
        return self.coeffs.get(int(e), Fraction(0))

    def coefficients_range(self, lo, hi) -> list:
        """Coefficients of q**e for e = lo, lo+1, ..., hi-1 (integer exponents)."""
        return [self.coefficient(e) for e in range(lo, hi)]

    def terms(self):
        """Sorted (exponent, coefficient) pairs with exact rational exponents."""
        return [(Fraction(n, self.denom), c) for n, c in sorted(self.coeffs.items())]

    def agrees_with(self, other: "QSeries") -> bool:
        """Equality of all coefficients on the common known range."""
        f, g = self._align(other)
        t = min(f.trunc, g.trunc)
        for n, c in f.coeffs.items():
            if n < t and g.coeffs.get(n, 0) != c:
                return False
        for n, c in g.coeffs.items():
            if n < t and f.coeffs.get(n, 0) != c:
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return (self.denom == other.denom and self.trunc == other.trunc
                and self.coeffs == other.coeffs)

    def __repr__(self):
        return "QSeries(%s)" % self

    def __str__(self):
        parts = []
        for e, c in self.terms()[:12]:
            parts.append("%s*q^(%s)" % (c, e))
        if len(self.coeffs) > 12:
            parts.append("...")
        body = " + ".join(parts) if parts else "0"
        return "%s + O(q^(%s))" % (body, self.bound())

    # -- rescaling helpers ---------------------------------------------------

    def _scaled(self, den: int) -> "QSeries":
        if den == self.denom:
            return self
        if den % self.denom:
            raise ValueError("cannot rescale to a non-multiple denominator")
        k = den // self.denom
        s = QSeries.__new__(QSeries)
        object.__setattr__(s, "coeffs", {n * k: c for n, c in self.coeffs.items()})
        object.__setattr__(s, "trunc", self.trunc * k)
        object.__setattr__(s, "denom", den)
        return s

    def _align(self, other: "QSeries"):
        den = _lcm(self.denom, other.denom)
        return self._scaled(den), other._scaled(den)

    def _lead_scaled(self) -> int:
        # first potentially-nonzero scaled exponent: pessimistically the
        # truncation itself when nothing is stored
        return min(self.coeffs) if self.coeffs else self.trunc

    # -- ring operations -----------------------------------------------------

    def __neg__(self):
        return QSeries({n: -c for n, c in self.coeffs.items()}, self.trunc, self.denom)

    def __add__(self, other):
        if not isinstance(other, QSeries):
            other = _scalar_series(other, self)
        f, g = self._align(other)
        t = min(f.trunc, g.trunc)
        out = {n: c for n, c in f.coeffs.items() if n < t}
        for n, c in g.coeffs.items():
            if n < t:
                s = out.get(n, Fraction(0)) + c
                if s:
                    out[n] = s
                elif n in out:
                    del out[n]
        return QSeries(out, t, f.denom)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, QSeries):
            other = _scalar_series(other, self)
        return self + (-other)

    def __rsub__(self, other):
        return _scalar_series(other, self) - self

    def scale(self, c) -> "QSeries":
        c = Fraction(c)
        if not c:
            return QSeries({}, self.trunc, self.denom)
        return QSeries({n: c * v for n, v in self.coeffs.items()}, self.trunc, self.denom)

    def shift(self, exponent) -> "QSeries":
        """Multiply by q**exponent."""
        e = Fraction(exponent)
        den = _lcm(self.denom, e.denominator)
        f = self._scaled(den)
        k = int(e * den)
        return QSeries({n + k: c for n, c in f.coeffs.items()}, f.trunc + k, den)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return self.scale(other)
        f, g = self._align(other)
        lead_f, lead_g = f._lead_scaled(), g._lead_scaled()
        t = min(f.trunc + lead_g, g.trunc + lead_f)
        if not f.coeffs or not g.coeffs:
            return QSeries({}, t, f.denom)
        if min(len(f.coeffs), len(g.coeffs)) <= _SPARSE_LIMIT:
            out = {}
            for n, c in f.coeffs.items():
                for m, d in g.coeffs.items():
                    e = n + m
                    if e < t:
                        s = out.get(e, Fraction(0)) + c * d
                        if s:
                            out[e] = s
                        elif e in out:
                            del out[e]
            return QSeries(out, t, f.denom)
        return _mul_dense(f, g, t)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, QSeries):
            return self * other.invert()
        return self.scale(Fraction(1) / Fraction(other))

    def invert(self) -> "QSeries":
        """Multiplicative inverse, valid to the truncation the input supports."""
        if not self.coeffs:
            raise ZeroSeries("series has no known nonzero term below its truncation")
        lead, stride, den, vec = _dense_parts(self)
        nterms = (self.trunc - lead + stride - 1) // stride
        if len(vec) < nterms:
            vec = vec + [0] * (nterms - len(vec))
        c0 = vec[0]
        out = {}
        if abs(c0) == 1:
            inv = _int_poly_inv(vec, nterms)
            for i, v in enumerate(inv):
                if v:
                    out[-lead + i * stride] = Fraction(den * v)
        else:
            scaled = [1] + [vec[i] * c0 ** (i - 1) for i in range(1, nterms)]
            inv = _int_poly_inv(scaled, nterms)
            for i, v in enumerate(inv):
                if v:
                    out[-lead + i * stride] = Fraction(den * v, c0 ** (i + 1))
        return QSeries(out, self.trunc - 2 * lead, self.denom)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("series powers must be integers")
        if k < 0:
            return self.invert() ** (-k)
        if k == 0:
            lead = self._lead_scaled()
            return QSeries({0: Fraction(1)}, max(self.trunc - lead, 1), self.denom)
        result = None
        base = self
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- structural operations ------------------------------------------------

    def truncated(self, order) -> "QSeries":
        """Forget coefficients at exponents >= order."""
        t = Fraction(order) * self.denom
        if t.denominator != 1:
            den = _lcm(self.denom, Fraction(order).denominator)
            return self._scaled(den).truncated(order)
        t = min(int(t), self.trunc)
        return QSeries({n: c for n, c in self.coeffs.items() if n < t}, t, self.denom)

    def sift(self, m: int, t: int) -> "QSeries":
        """Arithmetic-progression slice: returns sum a[m*n+t] q^n.

        Requires integer exponents.
        """
        if self.denom != 1:
            raise ValueError("sift requires a series with integer exponents")
        out = {}
        for n, c in self.coeffs.items():
            if n % m == t % m:
                out[(n - t) // m] = c
        bound = -((t - self.trunc) // m)  # smallest k with m*k + t >= trunc
        return QSeries(out, bound, 1)


def _scalar_series(c, like: QSeries) -> QSeries:
    return QSeries({0: Fraction(c)} if Fraction(c) else {}, like.trunc, like.denom)


def _dense_parts(f: QSeries):
    """(lead, stride, den, vec) with coeff(lead + i*stride) = vec[i]/den."""
    keys = sorted(f.coeffs)
    lead = keys[0]
    stride = 0
    for k in keys[1:]:
        stride = gcd(stride, k - lead)
    stride = stride or 1
    den = 1
    for c in f.coeffs.values():
        den = _lcm(den, c.denominator)
    vec = [0] * ((keys[-1] - lead) // stride + 1)
    for k in keys:
        vec[(k - lead) // stride] = int(f.coeffs[k] * den)
    return lead, stride, den, vec


def _mul_dense(f: QSeries, g: QSeries, t: int) -> QSeries:
    lead_f, stride_f, den_f, vec_f = _dense_parts(f)
    lead_g, stride_g, den_g, vec_g = _dense_parts(g)
    stride = gcd(stride_f, stride_g)

    def repack(vec, s_old):
        if s_old == stride:
            return vec
        k = s_old // stride
        out = [0] * ((len(vec) - 1) * k + 1)
        for i, v in enumerate(vec):
            out[i * k] = v
        return out

    vec_f = repack(vec_f, stride_f)
    vec_g = repack(vec_g, stride_g)
    n_needed = (t - lead_f - lead_g + stride - 1) // stride
    if n_needed <= 0:
        return QSeries({}, t, f.denom)
    prod = _int_poly_mul_trunc(vec_f, vec_g, n_needed)
    den = den_f * den_g
    base = lead_f + lead_g
    out = {}
    for i, v in enumerate(prod):
        if v:
            e = base + i * stride
            if e < t:
                out[e] = Fraction(v, den)
    return QSeries(out, t, f.denom)


# ---------------------------------------------------------------------------
# infinite-product constructors
# ---------------------------------------------------------------------------

def pochhammer(g: int, delta: int, order: int) -> QSeries:
    """Single-residue factor prod_{n>0, n=g mod delta} (1 - q^n), truncated.

    g = 0 is read as the full factor (q^delta; q^delta)_infinity.  This is the
    straightforward product and doubles as the reference implementation that
    the theta-based fast paths are tested against.
    """
    if delta < 1 or g < 0:
        raise ValueError("need delta >= 1 and g >= 0")
    T = int(order)
    if T < 1:
        raise ValueError("order must be positive")
    c = [0] * T
    c[0] = 1
    n = g if g > 0 else delta
    while n < T:
        for i in range(T - 1 - n, -1, -1):
            if c[i]:
                c[i + n] -= c[i]
        n += delta
    return QSeries({i: Fraction(v) for i, v in enumerate(c) if v}, T, 1)


def euler_product(delta: int, order: int) -> QSeries:
    """(q^delta; q^delta)_infinity via the pentagonal-number expansion."""
    T = int(order)
    out = {}
    k = 1
    out[0] = Fraction(1)
    while delta * k * (3 * k - 1) // 2 < T:
        out[delta * k * (3 * k - 1) // 2] = Fraction((-1) ** k)
        k += 1
    k = -1
    while delta * k * (3 * k - 1) // 2 < T:
        out[delta * k * (3 * k - 1) // 2] = Fraction((-1) ** k)
        k -= 1
    return QSeries(out, T, 1)


def theta_pair(g: int, delta: int, order: int) -> QSeries:
    """sum_k (-1)^k q^(delta*k*(k-1)/2 + g*k), the triple-product theta series.

    Equals (q^g, q^(delta-g); q^delta)_inf * (q^delta; q^delta)_inf for
    0 < g <= delta/2 (and g = delta covers the classical case).
    """
    T = int(order)
    out = {}

    def put(e, s):
        if e < T:
            v = out.get(e, Fraction(0)) + s
            if v:
                out[e] = v
            elif e in out:
                del out[e]

    k = 0
    while True:
        e = delta * k * (k - 1) // 2 + g * k
        if k > 1 and e >= T:
            break
        put(e, Fraction((-1) ** k))
        k += 1
    k = -1
    while True:
        e = delta * k * (k - 1) // 2 + g * k
        if e >= T:
            break
        put(e, Fraction((-1) ** k))
        k -= 1
    return QSeries(out, T, 1)


def pair_product(g: int, delta: int, order: int) -> QSeries:
    """(q^g, q^(delta-g); q^delta)_infinity for 0 < g <= delta/2, theta route."""
    if not 0 < g <= delta // 2 and not (g * 2 == delta):
        if not 0 < g < delta:
            raise ValueError("need 0 < g < delta")
    return theta_pair(g, delta, order) * euler_product(delta, order).invert()
