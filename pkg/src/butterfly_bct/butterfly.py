"""Closed and open butterflies built from R(x, y) = (x + alpha y)^(2^i+1) + beta y^(2^i+1).

Besides the constructions this module holds the coefficient algebra of the
univariate form, membership in the coefficient set Gamma, and exhaustive
checkers for the algebraic facts that the permutation and boomerang
arguments rest on. Checkers return reports instead of raising, so a sweep
can collect every violation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Optional

import numpy as np

from .analysis import bilinear_image
from .field import FieldSpec, FieldConfigError, unit_circle
from .sbox import Sbox, is_permutation, sbox_from_univariate


@dataclass(frozen=True)
class ButterflyParams:
    spec: FieldSpec
    i: int
    alpha: int
    beta: int

    def __post_init__(self) -> None:
        n = self.spec.n
        if n % 2 == 0:
            raise FieldConfigError(f"butterflies here need odd n, got n={n}")
        if self.i < 1 or gcd(self.i, n) != 1:
            raise FieldConfigError(f"need i >= 1 with gcd(i, n) = 1, got i={self.i}, n={n}")
        self.spec.check(self.alpha)
        self.spec.check(self.beta)

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def e(self) -> int:
        """The exponent 2^i + 1."""
        return (1 << self.i) + 1

    @property
    def d(self) -> int:
        """Inverse of 2^i + 1 modulo q - 1."""
        return pow(self.e, -1, self.spec.q - 1)

    @property
    def odd(self) -> bool:
        return self.i % 2 == 1

    def key(self) -> tuple[int, int, int]:
        return (self.i, self.alpha, self.beta)


# -- evaluation ---------------------------------------------------------------

def r_i(x: int, y: int, p: ButterflyParams) -> int:
    F = p.spec
    return F.pow(x ^ F.mul(p.alpha, y), p.e) ^ F.mul(p.beta, F.pow(y, p.e))


def r_inverse(z: int, y: int, p: ButterflyParams) -> int:
    """The x with R(x, y) = z, i.e. (z + beta y^e)^d + alpha y."""
    F = p.spec
    return F.pow(z ^ F.mul(p.beta, F.pow(y, p.e)), p.d) ^ F.mul(p.alpha, y)


def _power_table(F: FieldSpec, e: int) -> np.ndarray:
    return np.array([F.pow(x, e) for x in F.elements()], dtype=np.int64)


def r_table(p: ButterflyParams) -> np.ndarray:
    """R[x, y] for all x, y."""
    F = p.spec
    pw = _power_table(F, p.e)
    xs = np.arange(F.q)
    ay = F.mul_table[p.alpha, xs]
    return pw[xs[:, None] ^ ay[None, :]] ^ F.mul_table[p.beta, pw][None, :]


def closed_butterfly(p: ButterflyParams) -> Sbox:
    """V(x, y) = (R(x, y), R(y, x)) on packed indices x*2^n + y."""
    r = r_table(p)
    return Sbox(2 * p.n, ((r << p.n) | r.T).ravel())


def open_butterfly(p: ButterflyParams) -> Sbox:
    """H(x, y) = (R(y, t), t) with t = R_y^-1(x)."""
    F = p.spec
    r = r_table(p)
    pe = _power_table(F, p.e)
    pd = _power_table(F, p.d)
    xs = np.arange(F.q)
    t = pd[xs[:, None] ^ F.mul_table[p.beta, pe][None, :]] ^ F.mul_table[p.alpha, xs][None, :]
    ygrid = np.broadcast_to(xs[None, :], t.shape)
    return Sbox(2 * p.n, ((r[ygrid, t] << p.n) | t).ravel())


# -- coefficient algebra ------------------------------------------------------

@dataclass(frozen=True)
class EpsilonPhi:
    """Coefficients of the four-term univariate form and their derived phi values.

    ``eps`` is already reordered for the parity of i. ``phi`` is computed from
    ``eps``, so phi[2] (phi_3) is parity dependent; ``phi3_even`` is the
    even-i value (alpha^(2^i+1) + beta + 1)^2 used by the derivative analysis.
    """

    eps: tuple[int, int, int, int]
    phi: tuple[int, int, int, int]
    phi3_even: int
    eps_even: tuple[int, int, int, int]


def phi_from_eps(eps, F: FieldSpec) -> tuple[int, int, int, int]:
    e1, e2, e3, e4 = eps
    m, sq = F.mul, (lambda t: F.mul(t, t))
    return (
        m(e1, e3) ^ m(e2, e4),
        m(e1, e2) ^ m(e3, e4),
        sq(e1) ^ sq(e4),
        sq(e1) ^ sq(e2) ^ sq(e3) ^ sq(e4),
    )


def univariate_coeffs(p: ButterflyParams) -> EpsilonPhi:
    F = p.spec
    a, b = p.alpha, p.beta
    a2i = F.frob(a, p.i)
    ae = F.pow(a, p.e)
    ev = (a2i ^ a ^ 1, ae ^ a ^ b ^ 1, ae ^ a2i ^ b ^ 1, ae ^ a2i ^ a ^ b)
    eps = (ev[2], ev[3], ev[0], ev[1]) if p.odd else ev
    t = ae ^ b ^ 1
    return EpsilonPhi(eps, phi_from_eps(eps, F), F.mul(t, t), ev)


def univariate_exponents(spec: FieldSpec, i: int) -> tuple[int, int, int, int]:
    q, t = spec.q, 1 << i
    return (q * (t + 1), q * t + 1, t + q, t + 1)


def univariate_sbox(eps, spec: FieldSpec, i: int) -> Sbox:
    """Table of eps1 z^(q(2^i+1)) + eps2 z^(q 2^i+1) + eps3 z^(2^i+q) + eps4 z^(2^i+1)."""
    exps = univariate_exponents(spec, i)
    return sbox_from_univariate([(spec.pack(c, 0), e) for c, e in zip(eps, exps)], spec)


def scaling_constant(p: ButterflyParams) -> tuple[int, int]:
    """(c_in, c_out) with univariate(z) = c_out * V(c_in * z), packed.

    Found by exhaustive search at n=3 and n=5: c_in = gamma^2 and
    c_out = gamma for both parities of i.
    """
    F = p.spec
    g = F.pack(0, 1)
    return F.q2_mul(g, g), g


def scaled_input(s: Sbox, c: int, spec: FieldSpec) -> Sbox:
    """z -> s(c z)."""
    return Sbox(s.m, s.table[spec.q2_mul_vec(np.int64(c), np.arange(spec.q2))])


# -- the set Gamma ------------------------------------------------------------

@dataclass(frozen=True)
class GammaWitness:
    alpha: int
    beta: int
    in_gamma: bool
    reason: str  # "ok", "phi4_zero", "relation_fails" or "zero_coefficient"
    phi: tuple[int, int, int, int] = (0, 0, 0, 0)


def gamma_membership(alpha: int, beta: int, spec: FieldSpec, i: int) -> GammaWitness:
    if alpha == 0 or beta == 0:
        return GammaWitness(alpha, beta, False, "zero_coefficient")
    ep = univariate_coeffs(ButterflyParams(spec, i, alpha, beta))
    p1, p2, _, p4 = ep.phi
    if p4 == 0:
        return GammaWitness(alpha, beta, False, "phi4_zero", ep.phi)
    lhs = spec.frob(p2, i)
    rhs = spec.mul(p1, spec.pow(p4, (1 << i) - 1))
    if lhs != rhs:
        return GammaWitness(alpha, beta, False, "relation_fails", ep.phi)
    return GammaWitness(alpha, beta, True, "ok", ep.phi)


def gamma_enumerate(spec: FieldSpec, i: int) -> list[tuple[int, int]]:
    """All (alpha, beta) in Gamma, sorted."""
    return [(a, b) for a in range(1, spec.q) for b in range(1, spec.q)
            if gamma_membership(a, b, spec, i).in_gamma]


# -- reports ------------------------------------------------------------------

@dataclass
class CheckReport:
    """Named boolean checks; ``ok`` when every check holds."""

    context: dict
    checks: dict[str, bool] = field(default_factory=dict)
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    @property
    def violations(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]

    def __bool__(self) -> bool:
        return self.ok


def _ctx(p: ButterflyParams, **extra) -> dict:
    return {"n": p.n, "i": p.i, "alpha": p.alpha, "beta": p.beta, **extra}


def gamma_identities(p: ButterflyParams) -> CheckReport:
    """Check every algebraic property that membership in Gamma is claimed to imply."""
    F = p.spec
    i, a, b = p.i, p.alpha, p.beta
    rep = CheckReport(_ctx(p))
    rep.checks["in_gamma"] = gamma_membership(a, b, F, i).in_gamma
    if not rep.checks["in_gamma"]:
        return rep

    ep = univariate_coeffs(p)
    p1, p2, p3, p4 = ep.phi
    p3e = ep.phi3_even
    mul, div, frob = F.mul, F.div, F.frob
    sq = lambda t: mul(t, t)
    a2i, ae = frob(a, i), F.pow(a, p.e)

    # phi in expanded form
    a_2i1 = F.pow(a, 1 << (i + 1))
    p1x = mul(a_2i1, sq(a)) ^ a_2i1 ^ mul(a2i, sq(a)) ^ a2i ^ sq(a) ^ mul(a, b) ^ sq(b) ^ 1
    p2x = (mul(a_2i1, sq(a)) ^ mul(a_2i1, a) ^ a_2i1 ^ sq(a) ^ a ^ mul(a2i, b) ^ sq(b) ^ 1)
    p4x = mul(a_2i1, sq(a)) ^ a_2i1 ^ sq(a) ^ sq(b) ^ 1
    p3x = (mul(a_2i1, sq(a)) ^ sq(b) ^ 1) if not p.odd else (a_2i1 ^ sq(a))
    rep.checks["phi_expanded"] = (p1, p2, p3, p4) == (p1x, p2x, p3x, p4x)
    rep.checks["phi3_even_value"] = p3e == (mul(a_2i1, sq(a)) ^ sq(b) ^ 1)

    s14, s24, s34 = p1 ^ p4, p2 ^ p4, p3 ^ p4
    rep.checks["nonvanishing_product"] = bool(s14 and s24 and s34 and p3)
    # (phi1+phi4)(phi2+phi4) alone keeps the ratios below defined; at
    # alpha = 1 the factor phi3 (phi3+phi4) vanishes while these do not.
    if not (s14 and s24):
        rep.checks["ratios_defined"] = False
        return rep

    rep.checks["frobenius_ratio"] = frob(div(p4, s24), i) == div(p4, s14)
    rep.checks["root_ratio"] = F.root(div(s14, s24), (1 << i) - 1) == div(s24, p4)

    w = div(s24, p4)
    u = mul(w, a)
    # x^(2^i) + x = (phi3+phi4)/phi4 has roots u, u+1, so that value has
    # trace 0 and tr(phi3/phi4) = 1 for even i; phi3 grows by phi4 for odd i.
    tr34 = F.trace(div(p3, p4))
    rep.notes["stated_trace_value_holds"] = tr34 == (1 if p.odd else 0)
    if not p.odd:
        rep.checks["trace_phi3_even_i"] = tr34 == 1
        roots = sorted(x for x in F.elements() if frob(x, i) ^ x ^ div(s34, p4) == 0)
        rep.checks["linear_roots_even_i"] = roots == sorted([u, u ^ 1])
    else:
        rep.checks["trace_phi3_odd_i"] = tr34 == 0
    rep.checks["trace_phi2"] = F.trace(div(p2, p4)) == 0

    t1 = a2i ^ a
    t2 = ae ^ b ^ 1
    rep.checks["phi1_plus_phi2"] = p1 ^ p2 == mul(t1, t2)
    rep.checks["phi3_pair"] = sorted([p3, s34]) == sorted([sq(t1), sq(t2)])
    rep.checks["alpha_combination"] = mul(a, s24) ^ mul(a2i, s14) == p3e ^ p4
    rep.checks["phi34_ratio"] = div(p3e ^ p4, p4) == u ^ frob(u, i)
    rep.checks["phi2_ratio_square"] = sq(div(p2, p4)) == u ^ sq(u)
    rep.checks["phi_square_sum"] = sq(p1) ^ sq(p2) == sq(p3) ^ mul(p3, p4)
    rep.notes["u"] = u
    return rep


# -- permutation criterion on the unit circle -------------------------------

def t_set(spec: FieldSpec) -> set[tuple[int, int]]:
    """{((xy+1)/(x+y), xy/(x^2+y^2)) : x, y in mu \\ {1}, y != x, x^q}, as GF(q) pairs."""
    one = spec.pack(1, 0)
    mu = [z for z in unit_circle(spec) if z != one]
    out = set()
    mul, div = spec.q2_mul, spec.q2_div
    for x in mu:
        xq = spec.q2_frob(x)
        for y in mu:
            if y == x or y == xq:
                continue
            xy = mul(x, y)
            s = x ^ y
            X = div(xy ^ one, s)
            Y = div(xy, mul(s, s))
            if (X | Y) & (spec.q - 1):
                raise ArithmeticError(f"T element outside GF(q) for x={x:#x}, y={y:#x}")
            out.add((X >> spec.n, Y >> spec.n))
    return out


def permutation_conditions(eps, spec: FieldSpec, i: int,
                           tset: Optional[set[tuple[int, int]]] = None) -> CheckReport:
    """The four conditions characterising when the univariate form permutes GF(q^2).

    ``eps`` may be any coefficient vector. The report also records whether
    the univariate table is in fact a permutation.
    """
    F = spec
    q, t = F.q, 1 << i
    one = F.pack(1, 0)
    rep = CheckReport({"n": F.n, "i": i, "eps": tuple(eps)})
    rep.checks["gcd"] = gcd(t + 1, q - 1) == 1

    e1, e2, e3, e4 = (F.pack(c, 0) for c in eps)
    mu = unit_circle(F)

    def h(x: int) -> int:
        xt = F.q2_pow(x, t)
        return (F.q2_mul(e1, F.q2_mul(xt, x)) ^ F.q2_mul(e2, xt) ^ F.q2_mul(e3, x) ^ e4)

    hv = {x: h(x) for x in mu}
    rep.checks["h_no_root"] = all(hv.values())
    g_one = {x for x in mu if hv[x] and F.q2_mul(F.q2_pow(x, t + 1), F.q2_pow(hv[x], q - 1)) == one}
    rep.checks["g_fixes_only_1"] = g_one == {one}

    p1, p2, p3, p4 = phi_from_eps(eps, F)
    if tset is None:
        tset = t_set(F)
    bad = []
    for X, Y in sorted(tset):
        ysum = 0
        for j in range(i):
            ysum ^= F.frob(Y, j)
        if F.mul(p1, F.frob(X, i)) ^ F.mul(p2, X) ^ p3 ^ F.mul(p4, ysum) == 0:
            bad.append((X, Y))
    rep.checks["no_T_solution"] = not bad
    rep.notes["T_solutions"] = bad
    rep.notes["is_permutation"] = is_permutation(univariate_sbox(eps, F, i))
    return rep


# -- the derivative equation S_(a1,b1)(a2,b2) = (0, 0) ---------------------------

def derivative_system(a1: int, b1: int, p: ButterflyParams) -> np.ndarray:
    """Both coordinates of S_{V,(a1,b1)}(a2,b2) for all (a2,b2), from the expanded
    bilinear system; returns a (q, q, 2) array indexed [a2, b2]."""
    F = p.spec
    M, i = F.mul, p.i
    a, b = p.alpha, p.beta
    k = F.pow(a, p.e) ^ b
    a2i = F.frob(a, i)
    a1t, b1t = F.frob(a1, i), F.frob(b1, i)
    c1 = (a1 ^ M(a, b1), a1t ^ M(a2i, b1t), M(a2i, a1) ^ M(k, b1), M(a, a1t) ^ M(k, b1t))
    c2 = (M(k, a1) ^ M(a2i, b1), M(k, a1t) ^ M(a, b1t), M(a, a1) ^ b1, M(a2i, a1t) ^ b1t)
    xs = np.arange(F.q)
    ft = np.array([F.frob(x, i) for x in xs], dtype=np.int64)
    mt = F.mul_table
    a2, b2 = xs[:, None], xs[None, :]
    out = np.empty((F.q, F.q, 2), dtype=np.int64)
    for idx, c in enumerate((c1, c2)):
        out[..., idx] = mt[c[0], ft[a2]] ^ mt[c[1], a2] ^ mt[c[2], ft[b2]] ^ mt[c[3], b2]
    return out


@dataclass
class SolutionReport:
    a1: int
    b1: int
    closed_form: set
    brute_force: set

    @property
    def equal(self) -> bool:
        return self.closed_form == self.brute_force

    @property
    def extra(self) -> set:
        return self.brute_force - self.closed_form


def derivative_solutions_closed_form(a1: int, b1: int, p: ButterflyParams) -> set[tuple[int, int]]:
    F = p.spec
    p1, p2, p3, p4 = univariate_coeffs(p).phi
    w = F.div(p2 ^ p4, p4)
    u = F.mul(w, p.alpha)
    M = F.mul
    return {
        (a1, b1),
        (M(u ^ 1, a1) ^ M(w, b1), M(w, a1) ^ M(u, b1)),
        (M(u, a1) ^ M(w, b1), M(w, a1) ^ M(u ^ 1, b1)),
    }


def derivative_solutions(a1: int, b1: int, p: ButterflyParams) -> SolutionReport:
    """Closed-form nonzero solutions (a2, b2) against exhaustive search."""
    if a1 == 0 and b1 == 0:
        raise ValueError("(a1, b1) must be nonzero")
    sys_ = derivative_system(a1, b1, p)
    zeros = np.argwhere((sys_ == 0).all(axis=2))
    brute = {(int(x), int(y)) for x, y in zeros if (x, y) != (0, 0)}
    return SolutionReport(a1, b1, derivative_solutions_closed_form(a1, b1, p), brute)


# -- coefficient matrices of the derivative ----------------------------------

Mat = tuple[tuple[int, int], tuple[int, int]]


def mat_mul(F: FieldSpec, x: Mat, y: Mat) -> Mat:
    m = F.mul
    return tuple(tuple(m(x[r][0], y[0][c]) ^ m(x[r][1], y[1][c]) for c in range(2)) for r in range(2))


def mat_det(F: FieldSpec, x: Mat) -> int:
    return F.mul(x[0][0], x[1][1]) ^ F.mul(x[0][1], x[1][0])


def mat_inv(F: FieldSpec, x: Mat) -> Mat:
    di = F.inv(mat_det(F, x))
    return ((F.mul(di, x[1][1]), F.mul(di, x[0][1])), (F.mul(di, x[1][0]), F.mul(di, x[0][0])))


def derivative_matrices(a1: int, b1: int, p: ButterflyParams) -> tuple[Mat, Mat]:
    """(A, B) with S_{V,(a1,b1)}(x, y) = A [x^(2^i), x]^T + B [y^(2^i), y]^T."""
    F = p.spec
    M, i = F.mul, p.i
    a, b = p.alpha, p.beta
    k = F.pow(a, p.e) ^ b
    a2i = F.frob(a, i)
    a1t, b1t = F.frob(a1, i), F.frob(b1, i)
    A = ((a1 ^ M(a, b1), a1t ^ M(a2i, b1t)), (M(k, a1) ^ M(a2i, b1), M(k, a1t) ^ M(a, b1t)))
    B = ((M(a2i, a1) ^ M(k, b1), M(a, a1t) ^ M(k, b1t)), (M(a, a1) ^ b1, M(a2i, a1t) ^ b1t))
    return A, B


def matrix_identity_check(a1: int, b1: int, p: ButterflyParams,
                          vsbox: Optional[Sbox] = None) -> CheckReport:
    """Verify the matrix description of the derivative for one (a1, b1).

    Covers the closed forms of the transformed matrices and determinants,
    the determinant zero loci, the identities B2 B1^-1 A1 = A2 and
    A2 A1^-1 B1 = B2 where defined, and equality of the two bilinear images.
    """
    F = p.spec
    M, D, i = F.mul, F.div, p.i
    a, b = p.alpha, p.beta
    ep = univariate_coeffs(p)
    p1, p2, _, p4 = ep.phi
    p3 = ep.phi3_even
    s14, s24, s34 = p1 ^ p4, p2 ^ p4, p3 ^ p4
    w = D(s24, p4)
    v = D(s14, p4)
    u = M(w, a)
    k = F.pow(a, p.e) ^ b
    a2i = F.frob(a, i)
    a1t, b1t = F.frob(a1, i), F.frob(b1, i)
    a2 = M(u ^ 1, a1) ^ M(w, b1)
    b2 = M(w, a1) ^ M(u, b1)
    rep = CheckReport(_ctx(p, a1=a1, b1=b1, a2=a2, b2=b2))

    A1, B1 = derivative_matrices(a1, b1, p)
    A2, B2 = derivative_matrices(a2, b2, p)
    wv = D(M(s24, s14), p4)
    asq = M(a, a)
    a2i1 = F.frob(a, i + 1)
    A2x = ((a1 ^ M(M(asq ^ 1, w), b1), a1t ^ M(M(a2i1 ^ 1, v), b1t)),
           (M(wv ^ k, a1) ^ M(M(w, b), b1), M(wv ^ k, a1t) ^ M(M(v, b), b1t)))
    B2x = ((M(a2i ^ M(w, b), a1) ^ M(wv, b1), M(a ^ M(v, b), a1t) ^ M(wv, b1t)),
           (M(M(w, asq ^ 1) ^ a, a1), M(M(v, a2i1 ^ 1) ^ a2i, a1t)))
    rep.checks["A2_closed_form"] = A2 == A2x
    rep.checks["B2_closed_form"] = B2 == B2x

    detA, detB = mat_det(F, A1), mat_det(F, B1)
    detAx = M(s14, M(a1t, b1)) ^ M(s24, M(a1, b1t)) ^ M(s34, M(b1t, b1))
    detBx = M(s34, M(a1t, a1)) ^ M(s24, M(a1t, b1)) ^ M(s14, M(a1, b1t))
    rep.checks["detA_closed_form"] = detA == detAx
    rep.checks["detB_closed_form"] = detB == detBx
    c = a ^ D(p4, s24)
    rep.checks["detA_zero_locus"] = (detA == 0) == (b1 == 0 or a1 == M(a, b1) or a1 == M(c, b1))
    rep.checks["detB_zero_locus"] = (detB == 0) == (a1 == 0 or b1 == M(a, a1) or b1 == M(c, a1))
    if detB:
        rep.checks["B2_B1inv_A1_eq_A2"] = mat_mul(F, mat_mul(F, B2, mat_inv(F, B1)), A1) == A2
    if detA:
        rep.checks["A2_A1inv_B1_eq_B2"] = mat_mul(F, mat_mul(F, A2, mat_inv(F, A1)), B1) == B2
    if detA == 0 and detB == 0:
        # a1 = 0 or b1 = 0 also make both vanish at alpha = 1, where the
        # second root alpha + phi4/(phi2+phi4) of each locus is 0
        rep.checks["both_singular_only_at_alpha1"] = a == 1 and (a1 == b1 or a1 == 0 or b1 == 0)
        rep.notes["both_singular_off_diagonal"] = a1 != b1
    rep.notes["detA"], rep.notes["detB"] = detA, detB

    if vsbox is None:
        vsbox = closed_butterfly(p)
    im1 = bilinear_image(vsbox, F.pack(a1, b1), check=False).elements()
    im2 = bilinear_image(vsbox, F.pack(a2, b2), check=False).elements()
    rep.checks["images_equal"] = im1 == im2
    return rep
