"""Lookup-table functions on m bits, with the plain-text interchange format."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .field import FieldSpec

MAX_BITS = 20


class NotBijectiveError(ValueError):
    """An operation needing a permutation got a non-injective table."""

    def __init__(self, x1: int, x2: int, y: int) -> None:
        super().__init__(f"not a permutation: inputs {x1:#x} and {x2:#x} both map to {y:#x}")
        self.pair = (x1, x2)


@dataclass(frozen=True, eq=False)
class Sbox:
    """A function on m-bit words stored as its 2^m-entry table (read-only)."""

    m: int
    table: np.ndarray

    def __post_init__(self) -> None:
        if not 1 <= self.m <= MAX_BITS:
            raise ValueError(f"m={self.m} outside 1..{MAX_BITS}")
        t = np.array(self.table, dtype=np.int64)
        if t.shape != (1 << self.m,):
            raise ValueError(f"table length {t.size} != 2^{self.m}")
        if t.size and (t.min() < 0 or t.max() >= 1 << self.m):
            raise ValueError(f"table entries must lie in [0, 2^{self.m})")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    @classmethod
    def from_list(cls, values: Sequence[int]) -> Sbox:
        m = max(len(values) - 1, 1).bit_length()
        return cls(m, np.asarray(values))

    @classmethod
    def identity(cls, m: int) -> Sbox:
        return cls(m, np.arange(1 << m))

    @property
    def size(self) -> int:
        return 1 << self.m

    def __len__(self) -> int:
        return self.size

    def __getitem__(self, x):
        return self.table[x]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Sbox) and self.m == other.m and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash((self.m, self.table.tobytes()))

    def __repr__(self) -> str:
        head = ", ".join(f"{v:x}" for v in self.table[:8])
        return f"Sbox(m={self.m}, [{head}{', ...' if self.size > 8 else ''}])"

    def compose(self, inner: Sbox) -> Sbox:
        """x -> self(inner(x))."""
        return Sbox(self.m, self.table[inner.table])

    def __xor__(self, other: Sbox) -> Sbox:
        return Sbox(self.m, self.table ^ other.table)


def is_permutation(s: Sbox) -> bool:
    return np.unique(s.table).size == s.size


def invert(s: Sbox) -> Sbox:
    inv = np.full(s.size, -1, dtype=np.int64)
    inv[s.table] = np.arange(s.size)
    if (inv < 0).any():
        # locate a colliding pair for the error message
        order = np.argsort(s.table, kind="stable")
        vals = s.table[order]
        k = int(np.flatnonzero(vals[1:] == vals[:-1])[0])
        raise NotBijectiveError(int(order[k]), int(order[k + 1]), int(vals[k]))
    return Sbox(s.m, inv)


def sbox_from_univariate(terms: Iterable[tuple[int, int]], spec: FieldSpec) -> Sbox:
    """Table of z -> sum c_k z^(e_k) over GF(q^2).

    ``terms`` holds (coefficient, exponent) pairs with packed GF(q^2)
    coefficients. Index and value both use the u*2^n + v packing.
    """
    z = np.arange(spec.q2)
    acc = np.zeros(spec.q2, dtype=np.int64)
    seen = set()
    for coeff, e in terms:
        if e in seen:
            raise ValueError(f"exponent {e} repeated")
        seen.add(e)
        if coeff == 0:
            continue
        acc ^= spec.q2_mul_vec(np.int64(coeff), spec.q2_pow_vec(z, e))
    return Sbox(2 * spec.n, acc)


def algebraic_degree(s: Sbox) -> int:
    """Largest ANF degree over all coordinate functions; the zero map has degree 0."""
    anf = moebius(s.table)
    nz = np.flatnonzero(anf)
    if nz.size == 0:
        return 0
    return int(max(bin(int(x)).count("1") for x in nz))


def moebius(table: np.ndarray) -> np.ndarray:
    """Binary Moebius transform applied to all output bits at once.

    Entry x of the result packs the ANF coefficients of monomial x for every
    coordinate function; the transform is its own inverse.
    """
    t = np.array(table, dtype=np.int64)
    m = t.size.bit_length() - 1
    for k in range(m):
        h = 1 << k
        v = t.reshape(-1, 2, h)
        v[:, 1, :] ^= v[:, 0, :]
    return t


# -- file format: "m=<int>" then 2^m hex values, '#' comments ---------------

def dumps(s: Sbox, comments: Sequence[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"m={s.m}")
    width = (s.m + 3) // 4
    lines.extend(f"{int(v):0{width}x}" for v in s.table)
    return "\n".join(lines) + "\n"


def loads(text: str) -> Sbox:
    m = None
    values: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if m is None:
            key, _, val = line.partition("=")
            if key.strip() != "m" or not val.strip().isdigit():
                raise ValueError(f"line {lineno}: expected 'm=<int>' header, got {raw!r}")
            m = int(val)
            continue
        try:
            values.append(int(line, 16))
        except ValueError:
            raise ValueError(f"line {lineno}: bad hex value {raw!r}") from None
    if m is None:
        raise ValueError("missing 'm=<int>' header")
    if len(values) != 1 << m:
        raise ValueError(f"expected {1 << m} values for m={m}, got {len(values)}")
    return Sbox(m, np.asarray(values))


def save(s: Sbox, path: str | Path, comments: Sequence[str] = ()) -> None:
    Path(path).write_text(dumps(s, comments))


def load(path: str | Path) -> Sbox:
    return loads(Path(path).read_text())
