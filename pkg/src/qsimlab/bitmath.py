"""Exact GF(2) arithmetic: fixed-width bit vectors, bit matrices, GF(2^w)
field elements, and invertible linear maps.

All values are immutable and fit in a single machine word (width <= 32),
which keeps every operation exact and lets the rest of the lab use
exhaustive oracles. Bit 0 is the least significant bit; the text form of a
vector is a fixed-width binary string with the most significant bit first.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

MAX_WIDTH = 32

#: Default irreducible reduction polynomials, degree w encoded in w+1 bits.
#: w=4 is x^4+x+1, w=8 is x^8+x^4+x^3+x+1; the rest are standard choices.
DEFAULT_MODULI = {
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0b100011011,
    9: 0b1000010001,
    10: 0b10000001001,
    11: 0b100000000101,
    12: 0b1000001010011,
    13: 0b10000000011011,
    14: 0b100010000000011,
    15: 0b1000000000000011,
    16: 0b10001000000001011,
}


def parity(x: int) -> int:
    """Parity of the popcount of x."""
    return bin(x).count("1") & 1


@dataclass(frozen=True)
class BitVec:
    """A GF(2) vector of fixed width, stored as an unsigned integer."""

    width: int
    bits: int

    def __post_init__(self):
        if not 1 <= self.width <= MAX_WIDTH:
            raise ValueError(f"width {self.width} outside 1..{MAX_WIDTH}")
        if not 0 <= self.bits < (1 << self.width):
            raise ValueError(f"value {self.bits:#x} does not fit in {self.width} bits")

    @classmethod
    def parse(cls, text: str, width: int | None = None) -> "BitVec":
        """Parse a binary string like "0110", or hex with a "0x" prefix."""
        text = text.strip()
        if text.lower().startswith("0x"):
            if width is None:
                raise ValueError("hex input needs an explicit width")
            return cls(width, int(text, 16))
        return cls(width if width is not None else len(text), int(text, 2))

    def __str__(self) -> str:
        return format(self.bits, f"0{self.width}b")

    def __index__(self) -> int:
        return self.bits

    def __xor__(self, other: "BitVec") -> "BitVec":
        if self.width != other.width:
            raise ValueError(f"width mismatch: {self.width} vs {other.width}")
        return BitVec(self.width, self.bits ^ other.bits)

    def dot(self, other: "BitVec") -> int:
        """GF(2) inner product."""
        if self.width != other.width:
            raise ValueError(f"width mismatch: {self.width} vs {other.width}")
        return parity(self.bits & other.bits)

    def concat(self, low: "BitVec") -> "BitVec":
        """Concatenate self (high bits) with `low` (low bits)."""
        return BitVec(self.width + low.width, (self.bits << low.width) | low.bits)

    def msb(self, k: int) -> "BitVec":
        """Top k bits as a k-wide vector."""
        if not 1 <= k <= self.width:
            raise ValueError(f"cannot take {k} msb of width {self.width}")
        return BitVec(k, self.bits >> (self.width - k))

    def lsb(self, k: int) -> "BitVec":
        """Bottom k bits as a k-wide vector."""
        if not 1 <= k <= self.width:
            raise ValueError(f"cannot take {k} lsb of width {self.width}")
        return BitVec(k, self.bits & ((1 << k) - 1))

    def is_zero(self) -> bool:
        return self.bits == 0


@dataclass(frozen=True)
class BitMatrix:
    """A list of equal-width rows over GF(2)."""

    rows: tuple[BitVec, ...]

    def __post_init__(self):
        if not self.rows:
            raise ValueError("BitMatrix needs at least one row")
        w = self.rows[0].width
        if any(r.width != w for r in self.rows):
            raise ValueError("rows must share one width")

    @classmethod
    def from_ints(cls, rows: Iterable[int], width: int) -> "BitMatrix":
        return cls(tuple(BitVec(width, r) for r in rows))

    @property
    def width(self) -> int:
        return self.rows[0].width

    def row_ints(self) -> list[int]:
        return [r.bits for r in self.rows]


@dataclass(frozen=True)
class Indeterminate:
    """Returned by gf2_solve_period when the solution is not unique.

    `dimension` is the nullspace dimension: 0 means no nonzero solution,
    >= 2 means too many candidates.
    """

    dimension: int


def _reduce_rows(rows: Sequence[int], width: int) -> list[tuple[int, int]]:
    """Row-reduce, returning (pivot_position, row) pairs, pivots descending."""
    pivots: list[tuple[int, int]] = []
    for row in rows:
        for pos, prow in pivots:
            if (row >> pos) & 1:
                row ^= prow
        if row:
            pos = row.bit_length() - 1
            pivots.append((pos, row))
            pivots.sort(reverse=True)
    return pivots


def rank_ints(rows: Sequence[int], width: int) -> int:
    """Rank of integer-encoded rows over GF(2)."""
    return len(_reduce_rows(rows, width))


def nullspace_ints(rows: Sequence[int], width: int) -> list[int]:
    """Basis of {s : row . s = 0 for every row}, as integers."""
    reduced = _reduce_rows(rows, width)
    # Gauss-Jordan: clear every pivot column from the other rows. Pivot
    # positions are processed in descending order, so one pass suffices.
    positions = [pos for pos, _ in reduced]
    rref = [row for _, row in reduced]
    for i, pos in enumerate(positions):
        for j in range(len(rref)):
            if j != i and (rref[j] >> pos) & 1:
                rref[j] ^= rref[i]
    pivot_pos = set(positions)
    basis = []
    for free in range(width):
        if free in pivot_pos:
            continue
        v = 1 << free
        for pos, row in zip(positions, rref):
            if (row >> free) & 1:
                v |= 1 << pos
        basis.append(v)
    return basis


def gf2_rank(m: BitMatrix) -> int:
    """Dimension of the row span of m."""
    return rank_ints(m.row_ints(), m.width)


def gf2_nullspace(m: BitMatrix) -> list[BitVec]:
    """Basis of the right nullspace {s : m . s = 0}."""
    return [BitVec(m.width, v) for v in nullspace_ints(m.row_ints(), m.width)]


def gf2_solve_period(vectors: BitMatrix) -> Union[BitVec, Indeterminate]:
    """Solve for the unique nonzero s orthogonal to all measurement vectors.

    Returns the period when the nullspace has dimension exactly 1, else an
    Indeterminate carrying the nullspace dimension. The defining relation is
    s . v_i = 0 for every collected vector v_i.
    """
    basis = gf2_nullspace(vectors)
    if len(basis) == 1:
        return basis[0]
    return Indeterminate(dimension=len(basis))


# ---------------------------------------------------------------------------
# GF(2^w) field arithmetic


def clmul(a: int, b: int) -> int:
    """Carryless (polynomial) product of a and b."""
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out

def poly_mod(v: int, modulus: int) -> int:
    """Reduce polynomial v modulo `modulus`."""
    mdeg = modulus.bit_length() - 1
    while v.bit_length() - 1 >= mdeg and v:
        v ^= modulus << (v.bit_length() - 1 - mdeg)
    return v


def is_irreducible(modulus: int) -> bool:
    """Rabin test for irreducibility of a GF(2) polynomial."""
    w = modulus.bit_length() - 1
    if w < 1:
        return False

    def powx(e: int) -> int:
        # x^(2^e) mod modulus by repeated squaring
        r = 0b10
        for _ in range(e):
            r = poly_mod(clmul(r, r), modulus)
        return r

    def poly_gcd(a: int, b: int) -> int:
        while b:
            deg_a, deg_b = a.bit_length(), b.bit_length()
            if deg_a < deg_b:
                a, b = b, a
                continue
            a ^= b << (deg_a - deg_b)
        return a

    if powx(w) != poly_mod(0b10, modulus):
        return False
    primes = {p for p in (2, 3, 5, 7, 11, 13) if w % p == 0}
    for p in primes:
        if poly_gcd(powx(w // p) ^ 0b10, modulus) != 1:
            return False
    return True


@dataclass(frozen=True)
class FieldElem:
    """An element of GF(2^w) under a fixed degree-w reduction polynomial."""

    width: int
    value: BitVec
    modulus: int

    def __post_init__(self):
        if not 2 <= self.width <= 16:
            raise ValueError(f"field width {self.width} outside 2..16")
        if self.modulus.bit_length() - 1 != self.width:
            raise ValueError("modulus degree must equal field width")
        if self.value.width != self.width:
            raise ValueError("value width must equal field width")

    @classmethod
    def of(cls, value: int, width: int, modulus: int | None = None) -> "FieldElem":
        return cls(width, BitVec(width, value), modulus or DEFAULT_MODULI[width])

    def _check(self, other: "FieldElem"):
        if self.width != other.width or self.modulus != other.modulus:
            raise ValueError("field mismatch")

    def __add__(self, other: "FieldElem") -> "FieldElem":
        self._check(other)
        return FieldElem(self.width, self.value ^ other.value, self.modulus)

    def __mul__(self, other: "FieldElem") -> "FieldElem":
        return gf2n_mul(self, other)

    def square(self) -> "FieldElem":
        return gf2n_mul(self, self)

    def inverse(self) -> "FieldElem":
        if self.value.bits == 0:
            raise ZeroDivisionError("0 has no inverse in GF(2^w)")
        # a^(2^w - 2) by square and multiply
        result = FieldElem.of(1, self.width, self.modulus)
        base = self
        e = (1 << self.width) - 2
        while e:
            if e & 1:
                result = result * base
            base = base.square()
            e >>= 1
        return result

    def __int__(self) -> int:
        return self.value.bits


def gf2n_mul(a: FieldElem, b: FieldElem) -> FieldElem:
    """Product in GF(2^w): carryless multiply then reduce."""
    a._check(b)
    raw = clmul(a.value.bits, b.value.bits)
    return FieldElem(a.width, BitVec(a.width, poly_mod(raw, a.modulus)), a.modulus)


# ---------------------------------------------------------------------------
# Invertible linear maps on {0,1}^w


def _matrix_apply(cols_as_rows: Sequence[int], x: int) -> int:
    out = 0
    for i, row in enumerate(cols_as_rows):
        out |= parity(row & x) << i
    return out


def _matrix_invert(rows: Sequence[int], width: int) -> list[int]:
    """Invert a w x w GF(2) matrix given as per-output-bit row masks."""
    aug = [(rows[i], 1 << i) for i in range(width)]
    # forward eliminate
    out: list[tuple[int, int]] = []
    work = list(aug)
    for col in reversed(range(width)):
        pivot = None
        for idx, (r, inv) in enumerate(work):
            if (r >> col) & 1:
                pivot = idx
                break
        if pivot is None:
            continue
        prow = work.pop(pivot)
        for idx, (r, inv) in enumerate(work):
            if (r >> col) & 1:
                work[idx] = (r ^ prow[0], inv ^ prow[1])
        out.append((col, prow))
    if len(out) != width:
        raise ValueError("matrix is singular over GF(2)")
    # back substitute
    out.sort(reverse=True)
    solved: dict[int, int] = {}
    for col, (r, inv) in out:
        for c2, v2 in solved.items():
            if (r >> c2) & 1:
                r ^= 1 << c2
                inv ^= v2
        solved[col] = inv
    # solved[col] = row of inverse producing input bit `col`
    return [solved[c] for c in range(width)]


@dataclass(frozen=True)
class LinMap:
    """A bijective linear map on {0,1}^w.

    Two kinds: multiplication by a nonzero field constant (the default used
    by the two-permutation PRF builders), or an explicit invertible matrix
    whose i-th row is the mask producing output bit i.
    """

    width: int
    kind: str  # "const" | "matrix"
    const: FieldElem | None = None
    matrix_rows: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind == "const":
            if self.const is None or self.const.width != self.width:
                raise ValueError("const map needs a FieldElem of matching width")
            if self.const.value.bits == 0:
                raise ValueError("constant must be nonzero for a bijection")
        elif self.kind == "matrix":
            rows = self.matrix_rows
            if rows is None or len(rows) != self.width:
                raise ValueError("matrix map needs w rows")
            _matrix_invert(rows, self.width)  # raises if singular
        else:
            raise ValueError(f"unknown LinMap kind {self.kind!r}")

    @classmethod
    def from_const(cls, c: int, width: int, modulus: int | None = None) -> "LinMap":
        return cls(width, "const", const=FieldElem.of(c, width, modulus))

    @classmethod
    def from_matrix(cls, rows: Sequence[int], width: int) -> "LinMap":
        return cls(width, "matrix", matrix_rows=tuple(rows))

    @classmethod
    def identity(cls, width: int, modulus: int | None = None) -> "LinMap":
        if 2 <= width <= 16:
            return cls.from_const(1, width, modulus)
        return cls.from_matrix([1 << i for i in range(width)], width)

    def __call__(self, x: int) -> int:
        return linmap_apply(self, x)


def linmap_apply(lm: LinMap, x: int | BitVec) -> int:
    """Apply the map to an integer-encoded vector."""
    xv = x.bits if isinstance(x, BitVec) else x
    if not 0 <= xv < (1 << lm.width):
        raise ValueError(f"input {xv:#x} does not fit in {lm.width} bits")
    if lm.kind == "const":
        return poly_mod(clmul(lm.const.value.bits, xv), lm.const.modulus)
    return _matrix_apply(lm.matrix_rows, xv)


def linmap_inverse(lm: LinMap) -> LinMap:
    """The inverse bijection, same kind as the input."""
    if lm.kind == "const":
        inv = lm.const.inverse()
        return LinMap(lm.width, "const", const=inv)
    return LinMap(lm.width, "matrix",
                  matrix_rows=tuple(_matrix_invert(lm.matrix_rows, lm.width)))


def linmap_compose(outer: LinMap, inner: LinMap) -> LinMap:
    """The map x -> outer(inner(x))."""
    if outer.width != inner.width:
        raise ValueError("width mismatch in composition")
    if outer.kind == "const" and inner.kind == "const":
        return LinMap(outer.width, "const", const=outer.const * inner.const)
    rows = [0] * outer.width
    for bit in range(outer.width):
        col = linmap_apply(outer, linmap_apply(inner, 1 << bit))
        for i in range(outer.width):
            if (col >> i) & 1:
                rows[i] |= 1 << bit
    return LinMap.from_matrix(rows, outer.width)
