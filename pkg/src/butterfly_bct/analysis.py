"""Differential, boomerang and linear properties of S-boxes."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .sbox import NotBijectiveError, Sbox, algebraic_degree, invert, is_permutation

FULL_HISTOGRAM_MAX_BITS = 12


class PreconditionError(ValueError):
    pass


class NotQuadraticError(PreconditionError):
    pass


class DifferentialUniformityError(PreconditionError):
    pass


@dataclass
class SpectrumSummary:
    """Maximum and value histogram over the nontrivial part of a table.

    For the DDT that region is a != 0 (all b); for the BCT it is a, b != 0.
    ``histogram`` is empty when the table was too large to keep.
    """

    max_value: int
    argmax: tuple[int, int]
    histogram: dict[int, int] = field(default_factory=dict)
    table: Optional[np.ndarray] = field(default=None, repr=False)
    per_row_max: Optional[np.ndarray] = field(default=None, repr=False)

    def entry(self, a: int, b: int) -> int:
        if self.table is None:
            raise LookupError("full table was not retained")
        return int(self.table[a, b])


def _summarize(table: np.ndarray, region: np.ndarray, keep: bool) -> SpectrumSummary:
    sub = np.where(region, table, -1)
    flat = int(np.argmax(sub))
    a, b = divmod(flat, table.shape[1])
    hist = {}
    if keep:
        vals, cnt = np.unique(table[region], return_counts=True)
        hist = {int(v): int(c) for v, c in zip(vals, cnt)}
    return SpectrumSummary(int(sub.max()), (a, b), hist, table if keep else None, sub.max(axis=1))


def ddt_table(s: Sbox) -> np.ndarray:
    n = s.size
    out = np.zeros((n, n), dtype=np.int64)
    xs = np.arange(n)
    step = max(1, (1 << 20) // n)
    for a0 in range(0, n, step):
        a = np.arange(a0, min(n, a0 + step))[:, None]
        diff = s.table[xs[None, :] ^ a] ^ s.table[None, :]
        idx = ((a - a0) * n + diff).ravel()
        out[a0:a0 + a.shape[0]] = np.bincount(idx, minlength=a.shape[0] * n).reshape(-1, n)
    return out


def ddt(s: Sbox) -> SpectrumSummary:
    t = ddt_table(s)
    region = np.ones_like(t, dtype=bool)
    region[0] = False
    return _summarize(t, region, keep=s.m <= FULL_HISTOGRAM_MAX_BITS)


def ddt_entry(s: Sbox, a: int, b: int) -> int:
    xs = np.arange(s.size)
    return int(np.count_nonzero(s.table[xs ^ a] ^ s.table == b))


def differential_uniformity(s: Sbox) -> int:
    return ddt(s).max_value


def _require_perm(s: Sbox) -> Sbox:
    """Inverse table, raising NotBijectiveError for non-permutations."""
    return invert(s)


def bct_table(s: Sbox) -> np.ndarray:
    """BCT(a, b) = #{x : s^-1(s(x)+b) + s^-1(s(x+a)+b) = a}.

    With t_b(x) = s^-1(s(x)+b) + x the condition reads t_b(x) = t_b(x+a),
    so column b is obtained by grouping equal values of t_b and counting
    each colliding pair at a = x + x'.
    """
    inv = _require_perm(s).table
    n = s.size
    xs = np.arange(n)
    out = np.zeros((n, n), dtype=np.int64)
    for b in range(n):
        key = inv[s.table ^ b] ^ xs
        order = np.argsort(key, kind="stable")
        k = key[order]
        col = np.zeros(n, dtype=np.int64)
        col[0] = n
        d = 1
        while d < n:
            same = k[d:] == k[:-d]
            if not same.any():
                break
            col += 2 * np.bincount(order[:-d][same] ^ order[d:][same], minlength=n)
            d += 1
        out[:, b] = col
    return out


def bct_system_table(s: Sbox) -> np.ndarray:
    """BCT(a, b) = #{(x, y) : s(x+a) + s(y+a) = b and s(x) + s(y) = b}.

    Sums over c = x + y, so that with d_c(x) = s(x) + s(x+c) both equations
    say d_c(x) = d_c(x+a) = b. Never touches the inverse table.
    """
    _require_perm(s)
    n = s.size
    xs = np.arange(n)
    xor = xs[:, None] ^ xs[None, :]
    out = np.zeros(n * n, dtype=np.int64)
    for c in range(n):
        d = s.table ^ s.table[xs ^ c]
        hit = d[xor] == d[None, :]
        rows, cols = np.nonzero(hit)
        out += np.bincount(rows * n + d[cols], minlength=n * n)
    return out.reshape(n, n)


def _bct_summary(t: np.ndarray, m: int) -> SpectrumSummary:
    region = np.ones_like(t, dtype=bool)
    region[0, :] = False
    region[:, 0] = False
    return _summarize(t, region, keep=m <= FULL_HISTOGRAM_MAX_BITS)


def bct_via_inverse(s: Sbox) -> SpectrumSummary:
    return _bct_summary(bct_table(s), s.m)


def bct_via_system(s: Sbox) -> SpectrumSummary:
    return _bct_summary(bct_system_table(s), s.m)


def boomerang_uniformity(s: Sbox) -> int:
    return bct_via_inverse(s).max_value


# -- Walsh spectrum ---------------------------------------------------------

def fwht(a: np.ndarray) -> np.ndarray:
    """Fast Walsh-Hadamard transform along the last axis (returns a copy)."""
    a = np.array(a)
    n = a.shape[-1]
    lead = a.shape[:-1]
    h = 1
    while h < n:
        v = a.reshape(*lead, -1, 2, h)
        x, y = v[..., 0, :].copy(), v[..., 1, :].copy()
        v[..., 0, :] = x + y
        v[..., 1, :] = x - y
        h *= 2
    return a


def walsh_spectrum(s: Sbox, components: Optional[Iterable[int]] = None) -> np.ndarray:
    """W[v, u] = sum_x (-1)^(v.s(x) + u.x), one row per component v."""
    vs = np.arange(s.size) if components is None else np.fromiter(components, dtype=np.int64)
    rows = []
    for chunk in np.array_split(vs, max(1, vs.size * s.size >> 22)):
        signs = 1 - 2 * (np.bitwise_count(chunk[:, None] & s.table[None, :]) & 1).astype(np.int32)
        rows.append(fwht(signs))
    return np.concatenate(rows)


def walsh_nonlinearity(s: Sbox) -> tuple[int, int]:
    """(nonlinearity, max |W(u, v)| over v != 0)."""
    w = walsh_spectrum(s, range(1, s.size))
    wmax = int(np.abs(w).max())
    return (s.size - wmax) // 2, wmax


# -- GF(2) linear algebra on bit-vector ints --------------------------------

def echelon(vectors: Iterable[int]) -> tuple[int, ...]:
    """Reduced row echelon basis of the span, pivots descending; canonical."""
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    for i, b in enumerate(basis):
        p = b.bit_length() - 1
        for j in range(len(basis)):
            if j != i and basis[j] >> p & 1:
                basis[j] ^= b
    return tuple(sorted(basis, reverse=True))


def kernel(images: list[int]) -> tuple[int, ...]:
    """Kernel of the linear map sending basis vector e_j to images[j]."""
    rows: list[tuple[int, int]] = []
    kern = []
    for j, img in enumerate(images):
        combo = 1 << j
        for bimg, bcombo in rows:
            if img ^ bimg < img:
                img ^= bimg
                combo ^= bcombo
        if img:
            rows.append((img, combo))
            rows.sort(reverse=True)
        else:
            kern.append(combo)
    return echelon(kern)


def span(basis: Iterable[int]) -> list[int]:
    out = [0]
    for b in basis:
        out += [x ^ b for x in out]
    return out


@dataclass(frozen=True)
class BilinearImage:
    """Image and kernel of x -> S_f(a, x) = f(a+x) + f(a) + f(x) + f(0)."""

    a: int
    basis: tuple[int, ...]
    kernel_basis: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def elements(self) -> set[int]:
        return set(span(self.basis))


def _derivative_vector(s: Sbox, a: int) -> np.ndarray:
    t = s.table
    return t[np.arange(s.size) ^ a] ^ t[a] ^ t ^ t[0]


def bilinear_image(s: Sbox, a: int, check: bool = True) -> BilinearImage:
    if a == 0:
        raise PreconditionError("direction a must be nonzero")
    if check and algebraic_degree(s) > 2:
        raise NotQuadraticError(f"degree {algebraic_degree(s)} > 2: S_f is not bilinear")
    sa = _derivative_vector(s, a)
    images = [int(sa[1 << j]) for j in range(s.m)]
    if check:
        lin = np.array(span(images), dtype=np.int64)
        if not np.array_equal(lin, sa):
            raise NotQuadraticError(f"x -> S_f({a:#x}, x) is not linear")
    return BilinearImage(a, echelon(images), kernel(images))


def quadratic_boomerang4_check(s: Sbox, *, return_witness: bool = False):
    """Decide boomerang uniformity 4 of a quadratic permutation with DU 4.

    True iff Im S_f(a, .) = Im S_f(b, .) for every nonzero a, b with
    S_f(a, b) = 0. With ``return_witness`` a failing pair (or None) is
    returned alongside the verdict.
    """
    if not is_permutation(s):
        invert(s)  # raises with a colliding pair
    deg = algebraic_degree(s)
    if deg > 2:
        raise NotQuadraticError(f"algebraic degree {deg} > 2")
    du = differential_uniformity(s)
    if du != 4:
        raise DifferentialUniformityError(f"differential uniformity {du} != 4")
    images = {}
    kernels = {}
    for a in range(1, s.size):
        bi = bilinear_image(s, a, check=False)
        images[a] = bi.basis
        kernels[a] = bi.kernel_basis
    for a in range(1, s.size):
        for b in span(kernels[a]):
            if b > a and images[a] != images[b]:
                return (False, (a, b)) if return_witness else False
    return (True, None) if return_witness else True


__all__ = [
    "BilinearImage", "DifferentialUniformityError", "NotBijectiveError", "NotQuadraticError",
    "PreconditionError", "SpectrumSummary", "bct_system_table", "bct_table", "bct_via_inverse",
    "bct_via_system", "bilinear_image", "boomerang_uniformity", "ddt", "ddt_entry", "ddt_table",
    "differential_uniformity", "echelon", "fwht", "kernel", "quadratic_boomerang4_check", "span",
    "walsh_nonlinearity", "walsh_spectrum",
]
