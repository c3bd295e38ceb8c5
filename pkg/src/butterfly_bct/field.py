"""Arithmetic in GF(2^n) and in the quadratic extension GF(q^2) = GF(q)(gamma).

Elements of GF(q) are plain integers whose bits are polynomial coefficients
over GF(2). Elements of GF(q^2) are written z = u + gamma*v with u, v in GF(q)
and gamma^2 = gamma + 1; they are packed into one integer as ``u << n | v``
(first coordinate in the high bits), which is also the index convention used
by every lookup table in this package.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Iterator

import numpy as np


class FieldConfigError(ValueError):
    """Invalid field parameters, or operands from different fields."""


# lowest-weight irreducibles; other degrees are searched for on demand
DEFAULT_MODULI = {
    3: 0b1011,        # x^3 + x + 1
    5: 0b100101,      # x^5 + x^2 + 1
    7: 0b10000011,    # x^7 + x + 1
}


def clmul(a: int, b: int) -> int:
    """Carry-less product of two GF(2)[x] polynomials."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def poly_mod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a and a.bit_length() - 1 >= dm:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def is_irreducible(poly: int) -> bool:
    """Trial division by every polynomial of degree <= deg/2."""
    deg = poly.bit_length() - 1
    if deg < 1:
        return False
    for d in range(2, 1 << (deg // 2 + 1)):
        if poly_mod(poly, d) == 0:
            return False
    return True


def find_irreducible(n: int) -> int:
    """Lowest-weight irreducible of degree n, smallest bit pattern first."""
    if n in DEFAULT_MODULI:
        return DEFAULT_MODULI[n]
    if n == 1:
        return 0b11
    top = (1 << n) | 1
    for k in range(1, n):
        if is_irreducible(top | (1 << k)):
            return top | (1 << k)
    for a in range(1, n):
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                p = top | (1 << a) | (1 << b) | (1 << c)
                if is_irreducible(p):
                    return p
    raise FieldConfigError(f"no irreducible of degree {n} found")  # unreachable for n >= 1


def prime_factors(k: int) -> list[int]:
    out, p = [], 2
    while p * p <= k:
        if k % p == 0:
            out.append(p)
            while k % p == 0:
                k //= p
        p += 1
    if k > 1:
        out.append(k)
    return out


class FieldSpec:
    """The field GF(2^n) given by an irreducible ``modulus``.

    Scalar operations go through precomputed tables. The quadratic tower
    GF(q^2) is available only for odd n, where x^2 + x + 1 stays irreducible.

    Parameters
    ----------
    n : int
        Extension degree, 1 <= n <= 16.
    modulus : int, optional
        Bit pattern of the reduction polynomial; defaults to a lowest-weight
        irreducible of degree n.
    """

    def __init__(self, n: int, modulus: int | None = None) -> None:
        if not 1 <= n <= 16:
            raise FieldConfigError(f"n={n} outside supported range 1..16")
        if modulus is None:
            modulus = find_irreducible(n)
        if modulus.bit_length() - 1 != n:
            raise FieldConfigError(f"modulus {modulus:#x} does not have degree {n}")
        if not is_irreducible(modulus):
            raise FieldConfigError(f"modulus {modulus:#x} is reducible over GF(2)")
        self.n = n
        self.modulus = modulus
        self.q = 1 << n

        q = self.q
        mul = np.zeros((q, q), dtype=np.int64)
        for x in range(q):
            for y in range(x, q):
                mul[x, y] = mul[y, x] = poly_mod(clmul(x, y), modulus)
        mul.setflags(write=False)
        self.mul_table = mul
        self._mul = mul.tolist()

        self.generator = self._find_generator()
        exp = [0] * (q - 1)
        log = [0] * q
        t = 1
        for k in range(q - 1):
            exp[k] = t
            log[t] = k
            t = self._mul[t][self.generator]
        self._exp, self._log = exp, log
        self._inv = [0] + [exp[(-log[x]) % (q - 1)] for x in range(1, q)]
        self._trace = [self._trace_direct(x) for x in range(q)]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldSpec) and (self.n, self.modulus) == (other.n, other.modulus)

    def __hash__(self) -> int:
        return hash((self.n, self.modulus))

    def __repr__(self) -> str:
        return f"FieldSpec(n={self.n}, modulus={self.modulus:#x})"

    def __reduce__(self):
        return (FieldSpec, (self.n, self.modulus))

    def _find_generator(self) -> int:
        if self.q == 2:
            return 1
        factors = prime_factors(self.q - 1)
        for g in range(2, self.q):
            if all(self._pow_sq(g, (self.q - 1) // p) != 1 for p in factors):
                return g
        raise FieldConfigError("multiplicative group has no generator")  # unreachable

    def _pow_sq(self, x: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._mul[r][x]
            x = self._mul[x][x]
            e >>= 1
        return r

    # -- GF(q) -----------------------------------------------------------

    def elements(self) -> range:
        return range(self.q)

    def check(self, x: int) -> int:
        if not 0 <= x < self.q:
            raise FieldConfigError(f"{x} is not an element of GF(2^{self.n})")
        return x

    def mul(self, x: int, y: int) -> int:
        return self._mul[x][y]

    def inv(self, x: int) -> int:
        """Inverse, i.e. x^(q-2). Zero raises ZeroDivisionError."""
        if x == 0:
            raise ZeroDivisionError("0 has no inverse in GF(2^n)")
        return self._inv[x]

    def div(self, x: int, y: int) -> int:
        return self._mul[x][self.inv(y)]

    def pow(self, x: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(x), -e)
        if x == 0:
            return 1 if e == 0 else 0
        return self._exp[(self._log[x] * e) % (self.q - 1)]

    def frob(self, x: int, k: int = 1) -> int:
        """x^(2^k)."""
        return self.pow(x, 1 << (k % self.n))

    def root(self, x: int, e: int) -> int:
        """The unique y with y^e = x, for e coprime to q - 1."""
        if gcd(e, self.q - 1) != 1:
            raise FieldConfigError(f"x -> x^{e} is not a bijection of GF(2^{self.n})")
        return self.pow(x, pow(e, -1, self.q - 1)) if self.q > 2 else x

    def trace(self, x: int) -> int:
        return self._trace[x]

    def _trace_direct(self, x: int) -> int:
        t, y = 0, x
        for _ in range(self.n):
            t ^= y
            y = self._mul[y][y]
        if t not in (0, 1):
            raise ArithmeticError(f"trace of {x} left GF(2): {t}")
        return t

    # -- GF(q^2) = GF(q)(gamma), packed as u << n | v ---------------------

    def _require_odd(self) -> None:
        if self.n % 2 == 0:
            raise FieldConfigError(
                f"x^2+x+1 is reducible over GF(2^{self.n}); the quadratic tower needs odd n")

    @property
    def q2(self) -> int:
        return self.q * self.q

    @property
    def gamma(self) -> int:
        self._require_odd()
        return 1

    def pack(self, u: int, v: int) -> int:
        return (u << self.n) | v

    def unpack(self, z: int) -> tuple[int, int]:
        return z >> self.n, z & (self.q - 1)

    def q2_mul(self, z1: int, z2: int) -> int:
        """(u1 + g v1)(u2 + g v2) = (u1u2 + v1v2) + g(u1v2 + u2v1 + v1v2)."""
        m = self._mul
        u1, v1 = z1 >> self.n, z1 & (self.q - 1)
        u2, v2 = z2 >> self.n, z2 & (self.q - 1)
        vv = m[v1][v2]
        return ((m[u1][u2] ^ vv) << self.n) | (m[u1][v2] ^ m[u2][v1] ^ vv)

    def q2_scale(self, c: int, z: int) -> int:
        """c*z for c in GF(q)."""
        u, v = self.unpack(z)
        return self.pack(self._mul[c][u], self._mul[c][v])

    def q2_pow_sq(self, z: int, e: int) -> int:
        """Square-and-multiply power using only the coordinate formula."""
        self._require_odd()
        r = self.pack(1, 0)
        while e:
            if e & 1:
                r = self.q2_mul(r, z)
            z = self.q2_mul(z, z)
            e >>= 1
        return r

    def q2_frob(self, z: int) -> int:
        """z^q = (u + v) + gamma v, since gamma^q = gamma + 1 for odd n."""
        self._require_odd()
        u, v = self.unpack(z)
        return self.pack(u ^ v, v)

    @cached_property
    def _q2_logs(self) -> tuple[np.ndarray, np.ndarray, int]:
        self._require_odd()
        order = self.q2 - 1
        factors = prime_factors(order)
        for g in range(2, self.q2):
            if all(self.q2_pow_sq(g, order // p) != self.pack(1, 0) for p in factors):
                break
        exp = np.zeros(order, dtype=np.int64)
        log = np.zeros(self.q2, dtype=np.int64)
        t = self.pack(1, 0)
        for k in range(order):
            exp[k] = t
            log[t] = k
            t = self.q2_mul(t, g)
        exp.setflags(write=False)
        log.setflags(write=False)
        return exp, log, g

    @property
    def q2_generator(self) -> int:
        return self._q2_logs[2]

    def q2_pow(self, z: int, e: int) -> int:
        exp, log, _ = self._q2_logs
        if z == 0:
            return self.pack(1, 0) if e == 0 else 0
        return int(exp[(int(log[z]) * e) % (self.q2 - 1)])

    def q2_inv(self, z: int) -> int:
        if z == 0:
            raise ZeroDivisionError("0 has no inverse in GF(q^2)")
        return self.q2_pow(z, self.q2 - 2)

    def q2_div(self, z1: int, z2: int) -> int:
        return self.q2_mul(z1, self.q2_inv(z2))

    # vectorised forms for table construction

    def q2_mul_vec(self, z1: np.ndarray, z2: np.ndarray) -> np.ndarray:
        exp, log, _ = self._q2_logs
        z1, z2 = np.asarray(z1), np.asarray(z2)
        r = exp[(log[z1] + log[z2]) % (self.q2 - 1)]
        return np.where((z1 == 0) | (z2 == 0), 0, r)

    def q2_pow_vec(self, z: np.ndarray, e: int) -> np.ndarray:
        exp, log, _ = self._q2_logs
        z = np.asarray(z)
        r = exp[(log[z] * (e % (self.q2 - 1))) % (self.q2 - 1)]
        if e == 0:
            return np.full_like(z, self.pack(1, 0))
        return np.where(z == 0, 0, r)

    def q2_scale_vec(self, c: np.ndarray, z: np.ndarray) -> np.ndarray:
        """Componentwise c*z with c in GF(q), broadcasting."""
        u, v = np.asarray(z) >> self.n, np.asarray(z) & (self.q - 1)
        c = np.asarray(c)
        return (self.mul_table[c, u] << self.n) | self.mul_table[c, v]


@dataclass(frozen=True)
class Fq2Elem:
    """A GF(q^2) element u + gamma*v carrying its field."""

    u: int
    v: int
    spec: FieldSpec

    def __post_init__(self) -> None:
        self.spec._require_odd()
        self.spec.check(self.u)
        self.spec.check(self.v)

    @classmethod
    def from_int(cls, z: int, spec: FieldSpec) -> Fq2Elem:
        return cls(*spec.unpack(z), spec)

    def __int__(self) -> int:
        return self.spec.pack(self.u, self.v)

    def _same(self, other: Fq2Elem) -> None:
        if not isinstance(other, Fq2Elem):
            raise TypeError(f"expected Fq2Elem, got {type(other).__name__}")
        if other.spec != self.spec:
            raise FieldConfigError(f"operands live in {self.spec} and {other.spec}")

    def __add__(self, other: Fq2Elem) -> Fq2Elem:
        self._same(other)
        return Fq2Elem(self.u ^ other.u, self.v ^ other.v, self.spec)

    __sub__ = __add__

    def __mul__(self, other: Fq2Elem) -> Fq2Elem:
        self._same(other)
        return Fq2Elem.from_int(self.spec.q2_mul(int(self), int(other)), self.spec)

    def __pow__(self, e: int) -> Fq2Elem:
        if e < 0:
            return self.inverse() ** (-e)
        return Fq2Elem.from_int(self.spec.q2_pow_sq(int(self), e), self.spec)

    def __truediv__(self, other: Fq2Elem) -> Fq2Elem:
        self._same(other)
        return self * other.inverse()

    def inverse(self) -> Fq2Elem:
        return Fq2Elem.from_int(self.spec.q2_inv(int(self)), self.spec)

    def frobenius(self) -> Fq2Elem:
        return Fq2Elem(self.u ^ self.v, self.v, self.spec)

    def __repr__(self) -> str:
        return f"Fq2Elem({self.u:#x} + g*{self.v:#x})"


def to_bivariate(z: int, spec: FieldSpec) -> tuple[int, int]:
    """z -> (x, y) with z = x + gamma*y."""
    return spec.unpack(z)


def from_bivariate(x: int, y: int, spec: FieldSpec) -> int:
    return spec.pack(x, y)


def bivariate_by_formula(z: int, spec: FieldSpec) -> tuple[int, int]:
    """(x, y) = (gamma^2 z + gamma z^q, z^q + z), evaluated inside GF(q^2)."""
    g = spec.pack(0, 1)
    g2 = spec.q2_mul(g, g)
    zq = spec.q2_pow_sq(z, spec.q)
    x = spec.q2_mul(g2, z) ^ spec.q2_mul(g, zq)
    y = zq ^ z
    for w in (x, y):
        if spec.unpack(w)[1] != 0:
            raise ArithmeticError(f"coordinate of {z:#x} is not in GF(q)")
    return x >> spec.n, y >> spec.n


def unit_circle(spec: FieldSpec) -> list[int]:
    """mu_{q+1}: all z in GF(q^2) with z^(q+1) = 1, by direct power test."""
    one = spec.pack(1, 0)
    return [z for z in range(1, spec.q2) if spec.q2_pow(z, spec.q + 1) == one]


def on_unit_circle(z: int, spec: FieldSpec) -> bool:
    return z != 0 and spec.q2_pow(z, spec.q + 1) == spec.pack(1, 0)


def unit_circle_parametrized(spec: FieldSpec) -> Iterator[int]:
    """1 together with (x + gamma)/(x + gamma^q) for x in GF(q)."""
    g = spec.pack(0, 1)
    gq = spec.q2_frob(g)
    yield spec.pack(1, 0)
    for x in spec.elements():
        xz = spec.pack(x, 0)
        yield spec.q2_div(xz ^ g, xz ^ gq)


def dickson(k: int, a: int, x: int, spec: FieldSpec) -> int:
    """D_k(x, a) by the three-term recurrence, D_0 = 2 = 0 and D_1 = x."""
    if k < 0:
        raise ValueError(f"Dickson degree must be non-negative, got {k}")
    prev, cur = 0, x
    if k == 0:
        return prev
    for _ in range(k - 1):
        prev, cur = cur, spec.mul(x, cur) ^ spec.mul(a, prev)
    return cur


def dickson_pow2_minus1(i: int, a: int, x: int, spec: FieldSpec) -> int:
    """Closed form of D_{2^i - 1}(x, a) = sum_j a^(2^j - 1) x^(2^i - 2^(j+1) + 1)."""
    if i < 1:
        raise ValueError(f"i must be positive, got {i}")
    acc = 0
    for j in range(i):
        acc ^= spec.mul(spec.pow(a, (1 << j) - 1), spec.pow(x, (1 << i) - (1 << (j + 1)) + 1))
    return acc


def linearized_roots(i: int, a: int, spec: FieldSpec) -> list[int]:
    """All x in GF(q) with x^(2^i) + x = a, by Gaussian elimination over GF(2).

    x -> x^(2^i) + x is GF(2)-linear, so the solutions form a coset of its
    kernel; both are read off a reduced system built from the basis images.
    """
    # rows: (image, preimage combination); reduce a against them
    rows: list[tuple[int, int]] = []
    kern: list[int] = []
    for j in range(spec.n):
        img, combo = spec.frob(1 << j, i) ^ (1 << j), 1 << j
        for r_img, r_combo in rows:
            if img ^ r_img < img:
                img ^= r_img
                combo ^= r_combo
        if img:
            rows.append((img, combo))
            rows.sort(reverse=True)
        else:
            kern.append(combo)
    target, x0 = a, 0
    for r_img, r_combo in rows:
        if target ^ r_img < target:
            target ^= r_img
            x0 ^= r_combo
    if target:
        return []
    sols = [x0]
    for k in kern:
        sols += [x ^ k for x in sols]
    return sorted(sols)
