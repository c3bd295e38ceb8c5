"""Affine equivalence of closed butterflies with twisted Gold functions.

Maps are L(x) = A x^q + B x on GF(q^2) with A, B in GF(q), and the
twisted Gold function is G(x) = L2(L1(x)^(2^i + I)) with I = 1 for even i
and I = q for odd i.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Optional

import numpy as np

from .analysis import PreconditionError
from .butterfly import ButterflyParams, phi_from_eps, univariate_coeffs, univariate_exponents, univariate_sbox
from .field import FieldSpec
from .sbox import Sbox, sbox_from_univariate


@dataclass(frozen=True)
class LinMapQ2:
    """x -> A x^q + B x with A, B in GF(q); bijective iff A != B."""

    A: int
    B: int

    @property
    def invertible(self) -> bool:
        return self.A != self.B

    def table(self, spec: FieldSpec) -> np.ndarray:
        z = np.arange(spec.q2)
        return _lin_apply(spec, np.int64(self.A), np.int64(self.B), z)

    def kernel(self, spec: FieldSpec) -> list[int]:
        return [int(z) for z in np.flatnonzero(self.table(spec) == 0)]


def _frob_vec(spec: FieldSpec, z: np.ndarray) -> np.ndarray:
    u, v = z >> spec.n, z & (spec.q - 1)
    return ((u ^ v) << spec.n) | v


def _lin_apply(spec: FieldSpec, A, B, z):
    return spec.q2_scale_vec(A, _frob_vec(spec, z)) ^ spec.q2_scale_vec(B, z)


def gold_exponent(spec: FieldSpec, i: int) -> int:
    return (1 << i) + (1 if i % 2 == 0 else spec.q)


def _check_i(spec: FieldSpec, i: int) -> None:
    spec._require_odd()
    if not 1 <= i < spec.n or gcd(i, spec.n) != 1:
        raise PreconditionError(f"need 1 <= i < n and gcd(i, n) = 1, got i={i}, n={spec.n}")


def gold_construct(L1: LinMapQ2, L2: LinMapQ2, i: int, spec: FieldSpec) -> Sbox:
    """Table of x -> L2(L1(x)^(2^i + I))."""
    _check_i(spec, i)
    for name, L in (("L1", L1), ("L2", L2)):
        if not L.invertible:
            raise PreconditionError(f"{name} = {L} is not invertible (needs A != B)")
    inner = spec.q2_pow_vec(L1.table(spec), gold_exponent(spec, i))
    return Sbox(2 * spec.n, _lin_apply(spec, np.int64(L2.A), np.int64(L2.B), inner))


def gold_coefficients(A: int, B: int, C: int, D: int, i: int, spec: FieldSpec) -> tuple[int, int, int, int]:
    """Coefficients of the expanded twisted Gold function.

    Ordered against the monomials z^(q(2^i+1)), z^(q 2^i+1), z^(2^i+q),
    z^(2^i+1), i.e. the same basis as the butterfly's univariate form.
    """
    m, f = spec.mul, spec.frob
    t = 1 << i
    Ae, Be = spec.pow(A, t + 1), spec.pow(B, t + 1)
    AtB, ABt = m(f(A, i), B), m(A, f(B, i))
    if i % 2 == 0:
        return (m(D, Ae) ^ m(C, Be), m(D, AtB) ^ m(C, ABt),
                m(D, ABt) ^ m(C, AtB), m(D, Be) ^ m(C, Ae))
    return (m(C, ABt) ^ m(D, AtB), m(C, Be) ^ m(D, Ae),
            m(C, Ae) ^ m(D, Be), m(C, AtB) ^ m(D, ABt))


def gold_univariate(A: int, B: int, C: int, D: int, i: int, spec: FieldSpec) -> Sbox:
    eps = gold_coefficients(A, B, C, D, i, spec)
    exps = univariate_exponents(spec, i)
    return sbox_from_univariate([(spec.pack(c, 0), e) for c, e in zip(eps, exps)], spec)


def gold_phi_check(A: int, B: int, C: int, D: int, i: int, spec: FieldSpec) -> bool:
    """Whether the expanded coefficients satisfy phi2^(2^i) = phi1 phi4^(2^i-1), phi4 != 0."""
    if A == B or C == D:
        raise PreconditionError("maps must be invertible (A != B and C != D)")
    p1, p2, _, p4 = phi_from_eps(gold_coefficients(A, B, C, D, i, spec), spec)
    return p4 != 0 and spec.frob(p2, i) == spec.mul(p1, spec.pow(p4, (1 << i) - 1))


# -- witness search -----------------------------------------------------------

@dataclass(frozen=True)
class GoldWitness:
    A: int
    B: int
    C: int
    D: int
    i: int
    matched_params: Optional[tuple[int, int]] = None
    probe_points: tuple[int, ...] = ()

    @property
    def maps(self) -> tuple[LinMapQ2, LinMapQ2]:
        return LinMapQ2(self.A, self.B), LinMapQ2(self.C, self.D)

    def replay(self, spec: FieldSpec) -> Sbox:
        return gold_construct(*self.maps, self.i, spec)


@dataclass
class SearchResult:
    """Outcome of a witness search; ``witness`` is None when the space was exhausted."""

    witness: Optional[GoldWitness]
    tuples_searched: int
    probe_survivors: int
    all_witnesses: list[tuple[int, int, int, int]] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.witness is not None


def probe_points(spec: FieldSpec) -> tuple[int, ...]:
    """1, gamma, gamma + 1 and a generator of GF(q^2)*, packed.

    gamma^2 + gamma would repeat 1 (gamma is a cube root of unity), so the
    fourth point is the multiplicative generator instead.
    """
    g = spec.pack(0, 1)
    one = spec.pack(1, 0)
    pts = [one, g, g ^ one]
    if spec.q2_generator not in pts:  # only GF(4) has no room for a fourth point
        pts.append(spec.q2_generator)
    return tuple(pts)


def find_gold_equivalence(target: Sbox, i: int, spec: FieldSpec, *,
                          all_witnesses: bool = False,
                          matched_params: Optional[tuple[int, int]] = None) -> SearchResult:
    """Search (A, B, C, D) in GF(q)^4, A != B, C != D, with G_i equal to ``target``.

    Candidates are filtered on four probe points, then compared on the full
    table. The reported witness is the lexicographically smallest match.
    """
    _check_i(spec, i)
    if target.m != 2 * spec.n:
        raise PreconditionError(f"target has m={target.m}, field needs {2 * spec.n}")
    q = spec.q
    pts = np.array(probe_points(spec), dtype=np.int64)
    want = target.table[pts]
    e = gold_exponent(spec, i)

    ab = np.array([(a, b) for a in range(q) for b in range(q) if a != b], dtype=np.int64)
    cd = ab  # same domain for the outer map
    inner = spec.q2_pow_vec(_lin_apply(spec, ab[:, :1], ab[:, 1:2], pts[None, :]), e)  # (nAB, 4)
    inner_q = _frob_vec(spec, inner)
    full = np.arange(spec.q2)
    want_full = target.table

    found: list[tuple[int, int, int, int]] = []
    survivors = searched = 0
    C, D = cd[:, 0], cd[:, 1]
    for k in range(ab.shape[0]):
        searched += cd.shape[0]
        vals = (spec.q2_scale_vec(C[:, None], inner_q[k][None, :])
                ^ spec.q2_scale_vec(D[:, None], inner[k][None, :]))
        hit = np.flatnonzero((vals == want[None, :]).all(axis=1))
        survivors += hit.size
        if not hit.size:
            continue
        a, b = (int(v) for v in ab[k])
        g_in = spec.q2_pow_vec(_lin_apply(spec, np.int64(a), np.int64(b), full), e)
        for h in hit:
            c, d = int(C[h]), int(D[h])
            if np.array_equal(_lin_apply(spec, np.int64(c), np.int64(d), g_in), want_full):
                found.append((a, b, c, d))
                if not all_witnesses:
                    break
        if found and not all_witnesses:
            break
    witness = None
    if found:
        a, b, c, d = min(found)
        witness = GoldWitness(a, b, c, d, i, matched_params, tuple(int(p) for p in pts))
    return SearchResult(witness, searched, survivors,
                        sorted(found) if all_witnesses else [])


def gold_witness_for(p: ButterflyParams, *, all_witnesses: bool = False) -> SearchResult:
    """Search against the four-term univariate form of the closed butterfly.

    That form equals gamma * V(gamma^2 z) on packed indices, so a witness
    also fixes V up to those two scalings.
    """
    target = univariate_sbox(univariate_coeffs(p).eps, p.spec, p.i)
    return find_gold_equivalence(target, p.i, p.spec, all_witnesses=all_witnesses,
                                 matched_params=(p.alpha, p.beta))


# -- reference families with known boomerang uniformity -----------------------

REFERENCE_KINDS = ("inverse", "gold_power", "mesnager_trinomial")


def _power_sbox(spec: FieldSpec, e: int, coeff: int | None = None, *, base: bool = False) -> Sbox:
    if base:
        return Sbox(spec.n, np.array([spec.pow(x, e) for x in spec.elements()]))
    one = spec.pack(1, 0)
    return sbox_from_univariate([(one if coeff is None else coeff, e)], spec)


def reference_family(kind: str, n: int, *, i: int = 1, k: int | None = None, s: int | None = None,
                     base_field: bool = False) -> Sbox:
    """Lookup table of a known boomerang-4 family.

    ``inverse``: x^-1 over GF(2^(2n)). ``gold_power``: x^(2^(2i)+1) over
    GF(2^(2n)), or over GF(2^n) with ``base_field`` (where it is APN).
    ``mesnager_trinomial``: a x^(2^(2s)+1) + a^(2^(2k)) x^(2^(-2k)+2^(2k+2s))
    over GF(2^(2n)) with n = 3k and a the generator of the multiplicative group.
    """
    if kind not in REFERENCE_KINDS:
        raise PreconditionError(f"unknown family {kind!r}; expected one of {REFERENCE_KINDS}")
    if n % 2 == 0:
        raise PreconditionError(f"n must be odd, got {n}")
    if kind == "inverse":
        F = FieldSpec(n)
        return _power_sbox(F, F.q2 - 2)
    if kind == "gold_power":
        if i < 1 or gcd(i, n) != 1:
            raise PreconditionError(f"gold_power needs gcd(i, n) = 1, got i={i}, n={n}")
        return _power_sbox(FieldSpec(n), (1 << 2 * i) + 1, base=base_field)
    if k is None or s is None:
        raise PreconditionError("mesnager_trinomial needs k and s")
    if n != 3 * k:
        raise PreconditionError(f"mesnager_trinomial needs n = 3k, got n={n}, k={k}")
    if k % 3 == 0:
        raise PreconditionError(f"mesnager_trinomial needs 3 not dividing k, got k={k}")
    if (k + s) % 3:
        raise PreconditionError(f"mesnager_trinomial needs 3 | k+s, got k={k}, s={s}")
    if gcd(3 * k, s) != 1:
        raise PreconditionError(f"mesnager_trinomial needs gcd(3k, s) = 1, got k={k}, s={s}")
    F = FieldSpec(n)
    order = F.q2 - 1
    a = F.q2_generator
    e1 = ((1 << 2 * s) + 1) % order
    inv_2k = pow(2, 2 * n - 2 * k, order)  # 2^(-2k) modulo 2^(2n) - 1
    e2 = (inv_2k + pow(2, 2 * k + 2 * s, order)) % order
    c2 = F.q2_pow(a, 1 << 2 * k)
    if e1 == e2:
        return _power_sbox(F, e1, a ^ c2)
    return sbox_from_univariate([(a, e1), (c2, e2)], F)
