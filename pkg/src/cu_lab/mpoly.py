"""Sparse multivariate polynomials over GF(2) in the fixed variables
al, be, ga, X, Y, Z, u.

A polynomial is a set of monomials; a monomial is a vector of seven
exponents packed into one integer, 16 bits per variable, with "al" in the
most significant field.  Packing this way makes integer comparison agree
with lexicographic comparison of exponent vectors under al > be > ga >
X > Y > Z > u, which is the monomial order used for exact division.
Coefficients are implicitly 1: over GF(2) presence means coefficient 1,
addition is symmetric difference, and squaring doubles exponents
monomial by monomial.

Exponents are capped (default 512) so a runaway construction raises
instead of silently exploding.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass

import numpy as np

from . import field2m
from .field2m import Fe, FieldSpec

VARS = ("al", "be", "ga", "X", "Y", "Z", "u")
NVARS = len(VARS)
_VAR_INDEX = {v: i for i, v in enumerate(VARS)}

EXPONENT_CAP = 512

_FIELD_BITS = 16
_FIELD_MASK = (1 << _FIELD_BITS) - 1
_SHIFTS = tuple(_FIELD_BITS * (NVARS - 1 - i) for i in range(NVARS))
# SWAR masks: high bit of each 16-bit field, and "exponent >= 512" probe
_HIGH = sum(0x8000 << s for s in _SHIFTS)
_GE_CAP = sum(0xFE00 << s for s in _SHIFTS)

# above this many monomial pairs, multiplication goes through numpy
_NUMPY_PAIR_THRESHOLD = 1 << 21


class ParseError(ValueError):
    def __init__(self, msg, line=None, col=None):
        loc = f" (line {line}, col {col})" if line is not None else ""
        super().__init__(msg + loc)
        self.line = line
        self.col = col


class DuplicateMonomial(ParseError):
    pass


class ExponentOverflow(OverflowError):
    """An exponent exceeded the configured cap."""


class ZeroDivisor(ZeroDivisionError):
    pass


class InsufficientClearing(ValueError):
    """clear_power smaller than the degree being substituted away."""


class UnassignedVariable(KeyError):
    pass


class ZeroPolynomial(ValueError):
    pass


class DegenerateSpecialization(RuntimeError):
    """Every randomized trial specialized an input to zero."""


def _pack(exps) -> int:
    v = 0
    for e in exps:
        v = (v << _FIELD_BITS) | e
    return v


def _unpack(mono: int) -> tuple[int, ...]:
    return tuple((mono >> s) & _FIELD_MASK for s in _SHIFTS)


def _check_cap(monos) -> None:
    for m in monos:
        if m & _GE_CAP and any(e > EXPONENT_CAP for e in _unpack(m)):
            raise ExponentOverflow(f"monomial {_unpack(m)} beyond cap {EXPONENT_CAP}")


@dataclass(frozen=True)
class MPoly:
    """An element of GF(2)[al, be, ga, X, Y, Z, u], as a set of monomials."""

    monos: frozenset[int]

    @staticmethod
    def zero() -> "MPoly":
        return MPoly(frozenset())

    @staticmethod
    def one() -> "MPoly":
        return MPoly(frozenset((0,)))

    @staticmethod
    def var(name: str, exp: int = 1) -> "MPoly":
        exps = [0] * NVARS
        exps[_VAR_INDEX[name]] = exp
        return MPoly(frozenset((_pack(exps),)))

    @staticmethod
    def from_exponents(vectors) -> "MPoly":
        """Build from an iterable of 7-tuples (al, be, ga, X, Y, Z, u)."""
        monos = frozenset(_pack(v) for v in vectors)
        _check_cap(monos)
        return MPoly(monos)

    def exponents(self) -> list[tuple[int, ...]]:
        """Exponent vectors, leading monomial first."""
        return [_unpack(m) for m in sorted(self.monos, reverse=True)]

    def variables(self) -> set[str]:
        used = [False] * NVARS
        for m in self.monos:
            for i, s in enumerate(_SHIFTS):
                if (m >> s) & _FIELD_MASK:
                    used[i] = True
        return {VARS[i] for i in range(NVARS) if used[i]}

    def degree(self, var: str) -> int:
        """Largest exponent of var (-1 for the zero polynomial)."""
        s = _SHIFTS[_VAR_INDEX[var]]
        return max(((m >> s) & _FIELD_MASK for m in self.monos), default=-1)

    def is_zero(self) -> bool:
        return not self.monos

    def __len__(self) -> int:
        return len(self.monos)

    def __add__(self, other: "MPoly") -> "MPoly":
        return MPoly(self.monos ^ other.monos)

    def __mul__(self, other: "MPoly") -> "MPoly":
        return mp_mul(self, other)

    def __pow__(self, k: int) -> "MPoly":
        return mp_pow(self, k)

    def __repr__(self) -> str:
        if self.is_zero():
            return "MPoly(0)"
        terms = []
        for v in self.exponents()[:6]:
            parts = [f"{VARS[i]}^{e}" if e > 1 else VARS[i] for i, e in enumerate(v) if e]
            terms.append(" ".join(parts) or "1")
        more = f" + ...({len(self.monos)} terms)" if len(self.monos) > 6 else ""
        return "MPoly(" + " + ".join(terms) + more + ")"


def mp_add(p: MPoly, q: MPoly) -> MPoly:
    """Sum over GF(2): symmetric difference of monomial sets."""
    return MPoly(p.monos ^ q.monos)


def _mul_python(a: frozenset[int], b: frozenset[int]) -> set[int]:
    if len(a) > len(b):
        a, b = b, a
    acc: set[int] = set()
    add = acc.add
    discard = acc.remove
    for ma in a:
        for mb in b:
            k = ma + mb
            if k in acc:
                discard(k)
            else:
                add(k)
    return acc


def _mul_numpy(a: frozenset[int], b: frozenset[int]) -> set[int] | None:
    """Chunked outer-sum multiply; returns None when packing cannot fit int64.

    Both operands are repacked into the fewest bits per variable that hold
    the per-variable exponent sums, so the pairwise sums live in int64 and
    cancellation reduces to a sort-and-parity pass.
    """
    maxes = [0] * NVARS
    for ms in (a, b):
        for m in ms:
            for i, s in enumerate(_SHIFTS):
                e = (m >> s) & _FIELD_MASK
                if e > maxes[i]:
                    maxes[i] = e
    widths = [max(1, int(2 * mx + 1).bit_length()) for mx in maxes]
    if sum(widths) > 63:
        return None
    shifts = []
    pos = 0
    for w in reversed(widths):
        shifts.append(pos)
        pos += w
    shifts.reverse()

    def repack(ms):
        out = np.empty(len(ms), dtype=np.int64)
        for j, m in enumerate(ms):
            v = 0
            for i, s in enumerate(_SHIFTS):
                v |= ((m >> s) & _FIELD_MASK) << shifts[i]
            out[j] = v
        return out

    av = repack(sorted(a))
    bv = repack(sorted(b))
    if len(av) > len(bv):
        av, bv = bv, av
    rows = max(1, (1 << 23) // len(bv))
    pending: list[np.ndarray] = []
    pend_size = 0
    for lo in range(0, len(av), rows):
        block = (av[lo:lo + rows, None] + bv[None, :]).ravel()
        pending.append(block)
        pend_size += block.size
        if pend_size > (1 << 24):
            vals, counts = np.unique(np.concatenate(pending), return_counts=True)
            pending = [vals[counts % 2 == 1]]
            pend_size = pending[0].size
    vals, counts = np.unique(np.concatenate(pending), return_counts=True)
    odd = vals[counts % 2 == 1]

    acc = set()
    for v in odd.tolist():
        m = 0
        for i, s in enumerate(_SHIFTS):
            m |= ((v >> shifts[i]) & ((1 << widths[i]) - 1)) << s
        acc.add(m)
    return acc


def mp_mul(p: MPoly, q: MPoly) -> MPoly:
    """Product over GF(2), with cancellation of even-multiplicity monomials."""
    if p.is_zero() or q.is_zero():
        return MPoly.zero()
    if p.monos == q.monos:
        return mp_square(p)
    acc = None
    if len(p.monos) * len(q.monos) > _NUMPY_PAIR_THRESHOLD:
        acc = _mul_numpy(p.monos, q.monos)
    if acc is None:
        acc = _mul_python(p.monos, q.monos)
    _check_cap(acc)
    return MPoly(frozenset(acc))


def mp_square(p: MPoly) -> MPoly:
    """Frobenius: squaring doubles every exponent, no cross terms."""
    monos = frozenset(m << 1 for m in p.monos)
    # m << 1 doubles each 16-bit field as long as exponents stay below 2^15
    _check_cap(monos)
    return MPoly(monos)


def mp_pow(p: MPoly, k: int) -> MPoly:
    if k < 0:
        raise ValueError("negative power")
    result = MPoly.one()
    base = p
    while k:
        if k & 1:
            result = mp_mul(result, base)
        k >>= 1
        if k:
            base = mp_square(base)
    return result


def _divisible(mono: int, d: int) -> bool:
    return ((mono | _HIGH) - d) & _HIGH == _HIGH


def mp_divides(d: MPoly, p: MPoly) -> MPoly | None:
    """Quotient p/d when the division is exact, else None.

    Ordinary multivariate division in the packed-lex order; the remainder
    is never materialized because any non-divisible leading monomial
    terminates with None immediately.
    """
    if d.is_zero():
        raise ZeroDivisor("division by the zero polynomial")
    if p.is_zero():
        return MPoly.zero()
    dl = sorted(d.monos, reverse=True)
    lead_d = dl[0]
    rest_d = dl[1:]
    r = set(p.monos)
    heap = [-m for m in r]
    heapq.heapify(heap)
    quotient = []
    while r:
        lead_r = -heapq.heappop(heap)
        if lead_r not in r:
            continue
        if not _divisible(lead_r, lead_d):
            return None
        t = lead_r - lead_d
        quotient.append(t)
        r.remove(lead_r)
        for m in rest_d:
            k = t + m
            if k in r:
                r.remove(k)
            else:
                r.add(k)
                heapq.heappush(heap, -k)
    return MPoly(frozenset(quotient))


def mp_substitute(p: MPoly, var: str, num: MPoly, den: MPoly, clear_power: int) -> MPoly:
    """den^clear_power * p evaluated at var := num/den, denominators cleared."""
    if den.is_zero():
        raise ZeroDivisor("substitution denominator is zero")
    vi = _VAR_INDEX[var]
    if var in num.variables() or var in den.variables():
        raise ValueError(f"substitution for {var} must not itself involve {var}")
    deg = p.degree(var)
    if clear_power < deg:
        raise InsufficientClearing(f"clear_power {clear_power} < degree {deg} in {var}")
    shift = _SHIFTS[vi]
    by_exp: dict[int, set[int]] = {}
    for m in p.monos:
        e = (m >> shift) & _FIELD_MASK
        by_exp.setdefault(e, set()).add(m - (e << shift))
    num_pow = {0: MPoly.one()}
    den_pow = {0: MPoly.one()}

    def power(cache, base, k):
        if k not in cache:
            cache[k] = mp_pow(base, k)
        return cache[k]

    acc = MPoly.zero()
    for e, base_monos in by_exp.items():
        factor = mp_mul(power(num_pow, num, e), power(den_pow, den, clear_power - e))
        acc = acc + mp_mul(MPoly(frozenset(base_monos)), factor)
    return acc


def mp_eval(p: MPoly, field: FieldSpec, assignment: dict[str, Fe]) -> Fe:
    """Evaluate at field elements; every occurring variable must be assigned."""
    missing = p.variables() - set(assignment)
    if missing:
        raise UnassignedVariable(f"unassigned: {sorted(missing)}")
    for v in assignment.values():
        if v.field != field:
            raise field2m.FieldMismatch("assignment values from a different field")
    acc = 0
    values = [assignment.get(v, field.zero) for v in VARS]
    for m in p.monos:
        term = field.one
        for i, s in enumerate(_SHIFTS):
            e = (m >> s) & _FIELD_MASK
            if e:
                term = term * values[i] ** e
        acc ^= term.bits
    return Fe(acc, field)


def mp_eval_array(p: MPoly, field: FieldSpec, assignment: dict[str, object]) -> np.ndarray:
    """Vectorized evaluation over numpy arrays of packed element bits.

    Assignment values are int arrays (mutually broadcastable) or plain ints;
    returns the packed values of p at every grid point.
    """
    missing = p.variables() - set(assignment)
    if missing:
        raise UnassignedVariable(f"unassigned: {sorted(missing)}")
    tabs = field2m.tables(field)
    arrays = {k: np.asarray(v) for k, v in assignment.items()}
    shape = np.broadcast_shapes(*(a.shape for a in arrays.values()))
    acc = np.zeros(shape, dtype=np.int64)
    logs = {k: tabs.log[a] for k, a in arrays.items()}
    n = field.q - 1
    for m in p.monos:
        logsum = None
        zero_mask = None
        for i, s in enumerate(_SHIFTS):
            e = (m >> s) & _FIELD_MASK
            if not e:
                continue
            name = VARS[i]
            contrib = logs[name] * e
            logsum = contrib if logsum is None else logsum + contrib
            zm = arrays[name] == 0
            zero_mask = zm if zero_mask is None else (zero_mask | zm)
        if logsum is None:
            acc ^= 1  # constant monomial
            continue
        term = tabs.exp[logsum % n]
        if zero_mask is not None:
            term = np.where(zero_mask, 0, term)
        acc = acc ^ term
    return np.broadcast_to(acc, shape) if acc.shape != shape else acc


def homogeneous_degree(p: MPoly, variables) -> int | None:
    """Common total degree of p in the given variables, or None."""
    if p.is_zero():
        raise ZeroPolynomial("homogeneity of the zero polynomial is undefined")
    idxs = [_VAR_INDEX[v] for v in variables]
    degs = {sum((m >> _SHIFTS[i]) & _FIELD_MASK for i in idxs) for m in p.monos}
    return degs.pop() if len(degs) == 1 else None


def var_valuation(p: MPoly, var: str) -> int:
    """Largest k with var^k dividing p."""
    if p.is_zero():
        raise ZeroPolynomial("valuation of the zero polynomial is undefined")
    s = _SHIFTS[_VAR_INDEX[var]]
    return min((m >> s) & _FIELD_MASK for m in p.monos)


def mp_strip_content(p: MPoly) -> tuple[MPoly, MPoly]:
    """Split off the monomial content: returns (content, p/content)."""
    if p.is_zero():
        return MPoly.one(), p
    mins = [min((m >> s) & _FIELD_MASK for m in p.monos) for s in _SHIFTS]
    content = _pack(mins)
    if content == 0:
        return MPoly.one(), p
    return MPoly(frozenset((content,))), MPoly(frozenset(m - content for m in p.monos))


# ---------------------------------------------------------------------------
# text format

def _parse_monomial(tokens, allowed, lineno) -> int:
    exps = [0] * NVARS
    if tokens == ["1"]:
        return 0
    for tok in tokens:
        name, _, e_str = tok.partition("^")
        if name not in _VAR_INDEX:
            raise ParseError(f"unknown variable {name!r}", lineno, 1)
        if allowed is not None and name not in allowed:
            raise ParseError(f"variable {name!r} not in vars: declaration", lineno, 1)
        e = 1
        if e_str:
            try:
                e = int(e_str)
            except ValueError:
                raise ParseError(f"bad exponent in {tok!r}", lineno, 1) from None
        if e < 1:
            raise ParseError(f"exponent must be positive in {tok!r}", lineno, 1)
        i = _VAR_INDEX[name]
        if exps[i]:
            raise ParseError(f"variable {name!r} repeated in monomial", lineno, 1)
        exps[i] = e
    return _pack(exps)


def parse_named(text: str) -> tuple[str, MPoly]:
    """Parse the certificate file format, returning (name, polynomial)."""
    name = None
    allowed = None
    monos: set[int] = set()
    ended = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ended:
            raise ParseError("content after 'end'", lineno, 1)
        if name is None:
            if not line.startswith("poly "):
                raise ParseError("expected 'poly <name>' header", lineno, 1)
            name = line[5:].strip()
            if not name:
                raise ParseError("empty polynomial name", lineno, 6)
            continue
        if allowed is None:
            if not line.startswith("vars:"):
                raise ParseError("expected 'vars:' line", lineno, 1)
            declared = line[5:].split()
            for v in declared:
                if v not in _VAR_INDEX:
                    raise ParseError(f"unknown variable {v!r} in vars:", lineno, 1)
            allowed = set(declared)
            continue
        if line == "end":
            ended = True
            continue
        mono = _parse_monomial(line.split(), allowed, lineno)
        if mono in monos:
            raise DuplicateMonomial(f"monomial repeats: {raw.strip()!r}", lineno, 1)
        monos.add(mono)
    if name is None or allowed is None or not ended:
        raise ParseError("truncated file: need header, vars: and end")
    _check_cap(monos)
    return name, MPoly(frozenset(monos))


def mp_parse(text: str) -> MPoly:
    """Parse a certificate-format polynomial, discarding its name."""
    return parse_named(text)[1]


def _format_monomial(mono: int) -> str:
    if mono == 0:
        return "1"
    parts = []
    for i, s in enumerate(_SHIFTS):
        e = (mono >> s) & _FIELD_MASK
        if e == 1:
            parts.append(VARS[i])
        elif e > 1:
            parts.append(f"{VARS[i]}^{e}")
    return " ".join(parts)


def mp_serialize(p: MPoly, name: str = "p") -> str:
    """Canonical text: monomials sorted leading-first by exponent vector."""
    used = p.variables()
    lines = [f"poly {name}", "vars: " + " ".join(v for v in VARS if v in used)]
    lines += [_format_monomial(m) for m in sorted(p.monos, reverse=True)]
    lines.append("end")
    return "\n".join(lines) + "\n"


def mp_expr(text: str) -> MPoly:
    """Parse '+'-joined monomials, e.g. 'al X^2 + al^2 X + u be^2 Z'."""
    monos: set[int] = set()
    for chunk in text.split("+"):
        tokens = chunk.split()
        if not tokens:
            raise ParseError("empty term in expression")
        monos ^= {_parse_monomial(tokens, None, 1)}
    return MPoly(frozenset(monos))


# ---------------------------------------------------------------------------
# randomized identity machinery over a large extension field

DEFAULT_EXT_DEGREE = 64
DEFAULT_TRIALS = 20
DEFAULT_SEED = 0x5EED


class _BinExt:
    """Minimal GF(2^d) on plain ints, for randomized specializations.

    Independent of FieldSpec so the probe field can exceed the analysis
    range of field2m (degree 64 by default).  Small degrees use log/exp
    lists, which keeps high-volume specializations cheap.
    """

    def __init__(self, degree: int):
        f = (1 << degree) | 1
        while not field2m.is_irreducible(f):
            f += 2
        self.degree = degree
        self.modulus = f
        self.order = 1 << degree
        self._exp = self._log = None
        if 2 <= degree <= 16:
            tabs = field2m.tables(field2m.make_field(degree))
            self.modulus = tabs.field.modulus
            self._exp = tabs.exp.tolist()
            self._log = tabs.log.tolist()

    def mul(self, a: int, b: int) -> int:
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        return field2m.poly_mod(field2m.poly_mul(a, b), self.modulus)

    def pow(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if self._exp is not None:
            if a == 0:
                return 0
            return self._exp[self._log[a] * e % (self.order - 1)]
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            e >>= 1
            a = self.mul(a, a)
        return r

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError
        if self._exp is not None:
            return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]
        return self.pow(a, self.order - 2)


_EXT_CACHE: dict[int, _BinExt] = {}


def _ext_field(degree: int) -> _BinExt:
    if degree not in _EXT_CACHE:
        _EXT_CACHE[degree] = _BinExt(degree)
    return _EXT_CACHE[degree]


def _specialize(p: MPoly, kept: int, values: list[int], ext: _BinExt) -> dict[int, int]:
    """Coefficients (by kept-variable exponent) after fixing all other vars."""
    shift = _SHIFTS[kept]
    pow_cache: dict[tuple[int, int], int] = {}
    coeffs: dict[int, int] = {}
    for m in p.monos:
        c = 1
        for i, s in enumerate(_SHIFTS):
            if i == kept:
                continue
            e = (m >> s) & _FIELD_MASK
            if not e:
                continue
            key = (i, e)
            if key not in pow_cache:
                pow_cache[key] = ext.pow(values[i], e)
            c = ext.mul(c, pow_cache[key])
            if c == 0:
                break
        if c == 0:
            continue
        k = (m >> shift) & _FIELD_MASK
        coeffs[k] = coeffs.get(k, 0) ^ c
        if coeffs[k] == 0:
            del coeffs[k]
    return coeffs


def _upoly_normalize(c: dict[int, int]) -> list[int]:
    if not c:
        return []
    d = max(c)
    return [c.get(i, 0) for i in range(d + 1)]


def _upoly_divmod(num: list[int], den: list[int], ext: _BinExt) -> tuple[list[int], list[int]]:
    num = list(num)
    dd = len(den) - 1
    inv_lead = ext.inv(den[-1])
    quot = [0] * max(0, len(num) - dd)
    while len(num) - 1 >= dd and any(num):
        while num and num[-1] == 0:
            num.pop()
        if len(num) - 1 < dd:
            break
        shift = len(num) - 1 - dd
        factor = ext.mul(num[-1], inv_lead)
        quot[shift] = factor
        for i, c in enumerate(den):
            num[shift + i] ^= ext.mul(factor, c)
    while num and num[-1] == 0:
        num.pop()
    return quot, num


def _upoly_gcd(a: list[int], b: list[int], ext: _BinExt) -> list[int]:
    while b:
        _, r = _upoly_divmod(a, b, ext)
        a, b = b, r
    return a


def randomized_coprimality(p: MPoly, q: MPoly, kept_var: str,
                           ext_degree: int = DEFAULT_EXT_DEGREE,
                           trials: int = DEFAULT_TRIALS,
                           seed: int = DEFAULT_SEED) -> bool:
    """One-sided coprimality probe keeping one variable symbolic.

    Specializes every other variable at random in GF(2^ext_degree) and takes
    the univariate gcd.  A gcd of degree 0 in any trial certifies that no
    common non-constant factor involving kept_var exists; all-trials failure
    only suggests a shared factor.
    """
    if p.is_zero() or q.is_zero():
        raise ZeroPolynomial("coprimality probe needs nonzero inputs")
    if kept_var not in p.variables() or kept_var not in q.variables():
        raise ValueError(f"both inputs must involve {kept_var}")
    kept = _VAR_INDEX[kept_var]
    ext = _ext_field(ext_degree)
    rng = random.Random(seed)
    degenerate = 0
    for _ in range(trials):
        values = [rng.randrange(ext.order) for _ in range(NVARS)]
        cp = _upoly_normalize(_specialize(p, kept, values, ext))
        cq = _upoly_normalize(_specialize(q, kept, values, ext))
        if not cp or not cq:
            degenerate += 1
            continue
        g = _upoly_gcd(cp, cq, ext)
        if len(g) == 1:
            return True
    if degenerate == trials:
        raise DegenerateSpecialization("all specializations vanished")
    return False


def divisibility_probe(d: MPoly, p: MPoly, kept_var: str,
                       ext_degree: int = DEFAULT_EXT_DEGREE,
                       trials: int = DEFAULT_TRIALS,
                       seed: int = DEFAULT_SEED) -> bool:
    """One-sided divisibility probe: False certifies d does not divide p.

    Specializes all variables but kept_var and checks the univariate
    remainder.  If d divides p, every specialization with nonzero divisor
    leaves remainder zero, so a single nonzero remainder is a disproof.
    True only means "no disproof found" and callers wanting certainty must
    run mp_divides.
    """
    if d.is_zero():
        raise ZeroDivisor("probe divisor is zero")
    kept = _VAR_INDEX[kept_var]
    ext = _ext_field(ext_degree)
    rng = random.Random(seed)
    degenerate = 0
    for _ in range(trials):
        values = [rng.randrange(ext.order) for _ in range(NVARS)]
        cd = _upoly_normalize(_specialize(d, kept, values, ext))
        if not cd:
            degenerate += 1
            continue
        cp = _upoly_normalize(_specialize(p, kept, values, ext))
        if not cp:
            continue
        _, rem = _upoly_divmod(cp, cd, ext)
        if rem:
            return False
    if degenerate == trials:
        raise DegenerateSpecialization("divisor vanished in every trial")
    return True
