"""Arithmetic in binary fields GF(2^m), 2 <= m <= 32.

Elements are coefficient bit-vectors packed into Python ints (bit i is the
coefficient of t^i), wrapped in :class:`Fe` together with a reference to
their :class:`FieldSpec`.  Addition is xor; multiplication is schoolbook
shift-and-xor followed by reduction mod the field modulus.  The modulus
for each degree comes from a shipped table (lowest weight, then smallest
value) and is re-verified irreducible at construction time.

For bulk scans, :func:`tables` builds log/exp lookup tables usable with
numpy arrays of packed elements.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from importlib import resources

import numpy as np

MIN_DEGREE = 2
MAX_DEGREE = 32
_TABLE_MAX_DEGREE = 16  # log/exp tables above this would be wastefully large


class UnsupportedDegree(ValueError):
    """Extension degree outside the supported 2..32 range."""


class ReducibleModulus(ValueError):
    """The proposed field modulus factors over GF(2)."""


class FieldMismatch(ValueError):
    """Operands belong to different field constructions."""


class DivisionByZero(ZeroDivisionError):
    """Inversion of the zero element."""


class ZeroArgument(ValueError):
    """Operation requires a nonzero element."""


# ---------------------------------------------------------------------------
# bit-polynomial arithmetic over GF(2) (plain ints, bit i = coeff of t^i)

def poly_degree(p: int) -> int:
    """Degree of the bit-polynomial p (-1 for the zero polynomial)."""
    return p.bit_length() - 1


def poly_mul(a: int, b: int) -> int:
    """Carry-less product of two bit-polynomials."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
    return r


def poly_mod(p: int, m: int) -> int:
    """Remainder of bit-polynomial p modulo m."""
    dm = poly_degree(m)
    dp = poly_degree(p)
    while dp >= dm:
        p ^= m << (dp - dm)
        dp = poly_degree(p)
    return p


def poly_gcd(a: int, b: int) -> int:
    """gcd of two bit-polynomials (no normalization needed over GF(2))."""
    while b:
        a, b = b, poly_mod(a, b)
    return a


def poly_sq(p: int) -> int:
    """Square of a bit-polynomial: spreads the bits apart."""
    r = 0
    i = 0
    while p:
        if p & 1:
            r |= 1 << (2 * i)
        p >>= 1
        i += 1
    return r


def is_irreducible(poly: int) -> bool:
    """Irreducibility over GF(2): gcd(t^(2^i) + t, f) = 1 for i <= deg f / 2.

    A reducible f of degree n has an irreducible factor of degree d <= n/2,
    and every such factor divides t^(2^d) + t, so the gcd probe finds it.
    """
    n = poly_degree(poly)
    if n < 1:
        raise ValueError("degree must be >= 1")
    r = poly_mod(0b10, poly)  # t
    for _ in range(n // 2):
        r = poly_mod(poly_sq(r), poly)
        if poly_gcd(r ^ 0b10, poly) != 1:
            return False
    return True


# ---------------------------------------------------------------------------
# field construction

@functools.lru_cache(maxsize=1)
def _modulus_table() -> dict[int, int]:
    text = resources.files("cu_lab").joinpath("data/moduli.txt").read_text()
    table = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        m_str, hex_str = line.split()
        table[int(m_str)] = int(hex_str, 16)
    return table


@dataclass(frozen=True)
class FieldSpec:
    """A binary field GF(2^m) fixed by its modulus polynomial."""

    m: int
    modulus: int

    @property
    def q(self) -> int:
        return 1 << self.m

    def element(self, bits: int) -> "Fe":
        if not 0 <= bits < self.q:
            raise ValueError(f"bits {bits:#x} out of range for GF(2^{self.m})")
        return Fe(bits, self)

    @property
    def zero(self) -> "Fe":
        return Fe(0, self)

    @property
    def one(self) -> "Fe":
        return Fe(1, self)

    def elements(self):
        """All field elements in increasing bit order."""
        return (Fe(b, self) for b in range(self.q))

    def __repr__(self) -> str:
        return f"GF(2^{self.m}; {self.modulus:#x})"


def make_field(m: int, modulus: int | None = None) -> FieldSpec:
    """Construct GF(2^m), verifying the modulus is irreducible of degree m."""
    if not MIN_DEGREE <= m <= MAX_DEGREE:
        raise UnsupportedDegree(f"m={m} outside {MIN_DEGREE}..{MAX_DEGREE}")
    if modulus is None:
        modulus = _modulus_table()[m]
    if poly_degree(modulus) != m:
        raise ValueError(f"modulus {modulus:#x} has degree {poly_degree(modulus)}, want {m}")
    if not is_irreducible(modulus):
        raise ReducibleModulus(f"{modulus:#x} factors over GF(2)")
    return FieldSpec(m, modulus)


@dataclass(frozen=True)
class Fe:
    """A GF(2^m) element: coefficient bits plus its field."""

    bits: int
    field: FieldSpec

    def __post_init__(self):
        if not 0 <= self.bits < self.field.q:
            raise ValueError(f"bits {self.bits:#x} out of range for {self.field}")

    def _check(self, other: "Fe") -> None:
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other: "Fe") -> "Fe":
        self._check(other)
        return Fe(self.bits ^ other.bits, self.field)

    __sub__ = __add__  # characteristic 2

    def __mul__(self, other: "Fe") -> "Fe":
        self._check(other)
        return Fe(poly_mod(poly_mul(self.bits, other.bits), self.field.modulus), self.field)

    def __pow__(self, e: int) -> "Fe":
        if e < 0:
            raise ValueError("negative exponent; use inv()")
        r = Fe(1, self.field)
        b = self
        while e:
            if e & 1:
                r = r * b
            e >>= 1
            b = b * b
        return r

    def inv(self) -> "Fe":
        if self.bits == 0:
            raise DivisionByZero("0 has no inverse")
        return self ** (self.field.q - 2)

    def sqrt(self) -> "Fe":
        """The unique square root: squaring is bijective in characteristic 2."""
        return self ** (1 << (self.field.m - 1))

    def trace(self) -> int:
        acc = 0
        a = self
        for _ in range(self.field.m):
            acc ^= a.bits
            a = a * a
        assert acc in (0, 1)
        return acc

    def __bool__(self) -> bool:
        return self.bits != 0

    def __repr__(self) -> str:
        return f"Fe({self.bits:#x}, GF(2^{self.field.m}))"


# spec-facing functional aliases

def field_mul(a: Fe, b: Fe) -> Fe:
    """Product of two elements of the same field."""
    return a * b


def field_inv(a: Fe) -> Fe:
    """Multiplicative inverse of a nonzero element."""
    return a.inv()


def field_pow(a: Fe, e: int) -> Fe:
    """a^e by square-and-multiply, with 0^0 = 1."""
    return a ** e


def field_sqrt(a: Fe) -> Fe:
    """Square root via a^(2^(m-1))."""
    return a.sqrt()


def field_trace(a: Fe) -> int:
    """Absolute trace sum(a^(2^i)), reduced to {0, 1}."""
    return a.trace()


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (n <= 2^32 here, so cheap)."""
    factors: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


@functools.lru_cache(maxsize=None)
def find_generator(field: FieldSpec) -> Fe:
    """Smallest-bits element of full multiplicative order q-1."""
    n = field.q - 1
    primes = list(factorize(n))
    for bits in range(2, field.q):
        a = Fe(bits, field)
        if all((a ** (n // p)).bits != 1 for p in primes):
            return a
    raise AssertionError("no generator found; field construction is broken")


def is_seventh_power(u: Fe) -> bool:
    """Whether u is a 7th power; always true when 7 does not divide q-1."""
    if u.bits == 0:
        raise ZeroArgument("7th-power test needs u != 0")
    n = u.field.q - 1
    if n % 7 != 0:
        return True
    return (u ** (n // 7)).bits == 1


# ---------------------------------------------------------------------------
# log/exp lookup tables for vectorized scans

class FieldTables:
    """Vectorized GF(2^m) arithmetic on numpy arrays of packed elements.

    log[0] is a sentinel pointing into a zero-filled zone of the extended
    exp table, so mul() is branch-free even with zero operands.
    """

    def __init__(self, field: FieldSpec):
        if field.m > _TABLE_MAX_DEGREE:
            raise ValueError(f"lookup tables limited to m <= {_TABLE_MAX_DEGREE}")
        self.field = field
        q = field.q
        self.q = q
        n = q - 1
        g = find_generator(field).bits
        exp = np.zeros(4 * n + 1, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        v = 1
        for i in range(n):
            exp[i] = v
            exp[i + n] = v
            log[v] = i
            v = poly_mod(poly_mul(v, g), field.modulus)
        assert v == 1
        log[0] = 2 * n  # sentinel: any sum involving it lands in the zero zone
        self.exp = exp
        self.log = log
        self.sq = self.mul(np.arange(q), np.arange(q))
        self.cube = self.mul(self.sq, np.arange(q))

    def mul(self, a, b):
        """Elementwise product of packed-element arrays (or scalars)."""
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a):
        """Elementwise inverse; maps 0 to 0 (callers must mask zeros)."""
        n = self.q - 1
        return self.exp[np.where(np.asarray(a) == 0, 2 * n, (n - self.log[a]) % n)]

    def pow_const(self, a, e: int):
        """Elementwise a**e for a fixed natural exponent (0**0 = 1)."""
        a = np.asarray(a)
        if e == 0:
            return np.ones_like(a)
        n = self.q - 1
        r = self.exp[(self.log[a] * e) % n]
        return np.where(a == 0, 0, r)


@functools.lru_cache(maxsize=None)
def tables(field: FieldSpec) -> FieldTables:
    """Cached log/exp tables for a field."""
    return FieldTables(field)
