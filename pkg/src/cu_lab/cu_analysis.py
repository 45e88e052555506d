"""Analysis of the trivariate family C_u(X,Y,Z) = (X^3 + u Y^2 Z,
Y^3 + u X Z^2, Z^3 + u X^2 Y) on GF(2^m)^3.

Exhaustive permutation and differential scans run on numpy lookup-table
kernels; every collision they report is re-verified through the plain
scalar evaluation path before it is returned.  The constructive witness
builders (cube fibers for even m, the 7th-power route for odd m) need no
search at all and work for any supported field size.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import field2m, mpoly
from .certify import CertificateSet
from .field2m import Fe, FieldSpec

MAX_SCAN_BITS = 33   # occupancy table is q^3 bits
MAX_DDT_BITS = 36    # exhaustive differential table touches q^6 pairs
MAX_THETA_BITS = 24  # certified-solution scan enumerates q^4 tuples


class TooLarge(ValueError):
    """Requested exhaustive scan exceeds the configured size bounds."""


class ZeroParameter(ValueError):
    """u = 0 is not a member of the analyzed family here."""


class NotSeventhPower(ValueError):
    pass


class ZeroBeta(ValueError):
    pass


class ScanViolation(AssertionError):
    """A certified tuple failed re-verification: data or transcription bug."""


@dataclass(frozen=True)
class Point3:
    x: Fe
    y: Fe
    z: Fe

    def __post_init__(self):
        if self.x.field != self.y.field or self.x.field != self.z.field:
            raise field2m.FieldMismatch("point components from different fields")

    def __add__(self, other):
        if isinstance(other, (Point3, Delta3)):
            a, b, c = other.components()
            return Point3(self.x + a, self.y + b, self.z + c)
        return NotImplemented

    def components(self):
        return self.x, self.y, self.z

    def bits(self) -> tuple[int, int, int]:
        return self.x.bits, self.y.bits, self.z.bits


@dataclass(frozen=True)
class Delta3:
    a: Fe
    b: Fe
    c: Fe

    def __post_init__(self):
        if self.a.field != self.b.field or self.a.field != self.c.field:
            raise field2m.FieldMismatch("difference components from different fields")

    def components(self):
        return self.a, self.b, self.c

    def bits(self) -> tuple[int, int, int]:
        return self.a.bits, self.b.bits, self.c.bits

    def is_zero(self) -> bool:
        return not (self.a.bits | self.b.bits | self.c.bits)


@dataclass(frozen=True)
class CollisionWitness:
    point: Point3
    delta: Delta3
    u: Fe
    verified: bool

    def __post_init__(self):
        if self.delta.is_zero():
            raise ValueError("witness difference must be nonzero")

    def to_json_dict(self) -> dict:
        f = self.u.field
        return {
            "m": f.m,
            "modulus": f"{f.modulus:#x}",
            "u": f"{self.u.bits:#x}",
            "point": [f"{v:#x}" for v in self.point.bits()],
            "delta": [f"{v:#x}" for v in self.delta.bits()],
            "verified": self.verified,
        }


@dataclass(frozen=True)
class DduReport:
    u: Fe
    uniformity: int
    witness_direction: Delta3
    witness_output: Point3
    exhaustive: bool


def cu_eval(u: Fe, p: Point3) -> Point3:
    """(x^3 + u y^2 z, y^3 + u x z^2, z^3 + u x^2 y)."""
    if u.field != p.x.field:
        raise field2m.FieldMismatch("u and point from different fields")
    x, y, z = p.components()
    return Point3(x * x * x + u * y * y * z,
                  y * y * y + u * x * z * z,
                  z * z * z + u * x * x * y)


def diff_residual(u: Fe, d: Delta3, p: Point3) -> Point3:
    """cu_eval(u, p + d) + cu_eval(u, p); zero iff p and p+d collide."""
    if u.field != d.a.field:
        raise field2m.FieldMismatch("u and difference from different fields")
    a = cu_eval(u, p)
    b = cu_eval(u, p + d)
    return Point3(a.x + b.x, a.y + b.y, a.z + b.z)


def make_witness(u: Fe, point: Point3, delta: Delta3) -> CollisionWitness:
    """Build a witness, re-verifying the collision through cu_eval."""
    r = diff_residual(u, delta, point)
    if r.x.bits | r.y.bits | r.z.bits:
        raise ScanViolation(f"claimed collision does not verify: residual {r.bits()}")
    return CollisionWitness(point, delta, u, verified=True)


# ---------------------------------------------------------------------------
# exhaustive permutation scan

def _slice_images(tabs, u_bits: int, x: int, yz_first, ids, sq, cube, m: int):
    """Packed images of the whole (y, z) plane above one x value."""
    c1 = cube[x] ^ yz_first
    c2 = cube[:, None] ^ tabs.mul(tabs.mul(u_bits, x), sq)[None, :]
    c3 = cube[None, :] ^ tabs.mul(tabs.mul(u_bits, tabs.sq[x]), ids)[:, None]
    return (c1 << (2 * m)) | (c2 << m) | c3


def is_permutation(field: FieldSpec, u: Fe,
                   threads: int = 1) -> tuple[bool, CollisionWitness | None]:
    """Exhaustive bijectivity test via a q^3-bit occupancy table.

    Scans x-slices in increasing order and stops at the first repeated
    image.  The witness is deterministic: smallest colliding image value
    in the earliest colliding slice, with its two lexicographically
    smallest preimages.
    """
    if u.bits == 0:
        raise ZeroParameter("permutation analysis requires u != 0")
    m = field.m
    if 3 * m > MAX_SCAN_BITS:
        raise TooLarge(f"3m = {3 * m} > {MAX_SCAN_BITS}")
    q = field.q
    tabs = field2m.tables(field)
    ids = np.arange(q, dtype=np.int64)
    sq = tabs.sq
    cube = tabs.cube
    yz_first = tabs.mul(tabs.mul(u.bits, sq)[:, None], ids[None, :])  # u y^2 z
    occ = np.zeros((q ** 3 + 7) // 8, dtype=np.uint8)

    def compute(x):
        return _slice_images(tabs, u.bits, x, yz_first, ids, sq, cube, m).ravel()

    def detect_and_mark(img):
        uniq, counts = np.unique(img, return_counts=True)
        candidates = []
        dup = uniq[counts > 1]
        if dup.size:
            candidates.append(int(dup[0]))
        byte_idx = uniq >> 3
        bit = (1 << (uniq & 7)).astype(np.uint8)
        prev = (occ[byte_idx] & bit) != 0
        if prev.any():
            candidates.append(int(uniq[prev][0]))
        # distinct values may share a byte: combine their bits before writing
        ub, first = np.unique(byte_idx, return_index=True)
        occ[ub] |= np.bitwise_or.reduceat(bit, first)
        return min(candidates) if candidates else None

    collided_at = None
    value = None
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            for x, img in enumerate(ex.map(compute, range(q), chunksize=4)):
                v = detect_and_mark(img)
                if v is not None:
                    collided_at, value = x, v
                    break
    else:
        for x in range(q):
            v = detect_and_mark(compute(x))
            if v is not None:
                collided_at, value = x, v
                break
    if collided_at is None:
        return True, None

    preimages = []
    for x in range(collided_at + 1):
        hits = np.nonzero(compute(x) == value)[0]
        for flat in hits[:2]:
            preimages.append((x, int(flat) >> m, int(flat) & (q - 1)))
            if len(preimages) == 2:
                break
        if len(preimages) == 2:
            break
    (x1, y1, z1), (x2, y2, z2) = preimages
    point = Point3(field.element(x1), field.element(y1), field.element(z1))
    delta = Delta3(field.element(x1 ^ x2), field.element(y1 ^ y2), field.element(z1 ^ z2))
    return False, make_witness(u, point, delta)


# ---------------------------------------------------------------------------
# differential uniformity

def _direction_axis_vectors(tabs, u_bits, a, b, c, ids, sq, m):
    """Per-axis packed contributions of the residual for one direction."""
    mul = tabs.mul
    px = (mul(a, sq) ^ mul(tabs.sq[a], ids)) << (2 * m)
    px |= mul(mul(u_bits, tabs.sq[c]), ids) << m
    px |= mul(mul(u_bits, b), sq)
    py = mul(mul(u_bits, c), sq) << (2 * m)
    py |= (mul(b, sq) ^ mul(tabs.sq[b], ids)) << m
    py |= mul(mul(u_bits, tabs.sq[a]), ids)
    pz = mul(mul(u_bits, tabs.sq[b]), ids) << (2 * m)
    pz |= mul(mul(u_bits, a), sq) << m
    pz |= mul(c, sq) ^ mul(tabs.sq[c], ids)
    ka = (mul(tabs.cube[a], 1) ^ mul(mul(u_bits, tabs.sq[b]), c)) << (2 * m)
    kb = (tabs.cube[b] ^ mul(mul(u_bits, tabs.sq[c]), a)) << m
    kc = tabs.cube[c] ^ mul(mul(u_bits, tabs.sq[a]), b)
    return px, py, pz, int(ka) | int(kb) | int(kc)


def differential_uniformity(field: FieldSpec, u: Fe,
                            early_exit_above: int | None = None) -> DduReport:
    """Histogram of residual outputs over all nonzero directions.

    Exhaustive mode sweeps every direction and returns the true maximum
    solution count; with early_exit_above set, the sweep stops at the
    first direction whose histogram exceeds the threshold, reporting that
    direction (exhaustive=False).  Directions are scanned in increasing
    packed (a, b, c) order, so results are deterministic.
    """
    m = field.m
    q = field.q
    if early_exit_above is None:
        if 6 * m > MAX_DDT_BITS:
            raise TooLarge(f"6m = {6 * m} > {MAX_DDT_BITS} for the exhaustive sweep")
    else:
        if 3 * m > MAX_SCAN_BITS:
            raise TooLarge(f"3m = {3 * m} > {MAX_SCAN_BITS}")
        if u.bits == 0:
            raise ZeroParameter("the early-exit disprover needs u != 0")
    tabs = field2m.tables(field)
    ids = np.arange(q, dtype=np.int64)
    sq = tabs.sq
    use_bincount = 3 * m <= 24
    best = 0
    best_dir = None
    best_out = None
    for code in range(1, q ** 3):
        a, b, c = code >> (2 * m), (code >> m) & (q - 1), code & (q - 1)
        px, py, pz, k = _direction_axis_vectors(tabs, u.bits, a, b, c, ids, sq, m)
        outs = (px[:, None, None] ^ py[None, :, None] ^ pz[None, None, :] ^ k).ravel()
        if use_bincount:
            counts = np.bincount(outs, minlength=q ** 3)
            top = int(counts.max())
            out_code = int(counts.argmax())
        else:
            vals, counts = np.unique(outs, return_counts=True)
            i = int(counts.argmax())
            top, out_code = int(counts[i]), int(vals[i])
        if top > best:
            best = top
            best_dir = (a, b, c)
            best_out = out_code
        if early_exit_above is not None and best > early_exit_above:
            return _ddu_report(field, u, best, best_dir, best_out, exhaustive=False)
    return _ddu_report(field, u, best, best_dir, best_out, exhaustive=True)


def _ddu_report(field, u, uniformity, direction, out_code, exhaustive):
    assert uniformity % 2 == 0, "differential solution counts pair up"
    q = field.q
    m = field.m
    a, b, c = direction
    d = Delta3(field.element(a), field.element(b), field.element(c))
    out = Point3(field.element(out_code >> (2 * m)),
                 field.element((out_code >> m) & (q - 1)),
                 field.element(out_code & (q - 1)))
    return DduReport(u, uniformity, d, out, exhaustive)


# ---------------------------------------------------------------------------
# constructive witnesses

def seventh_root(u: Fe) -> Fe:
    """Canonical (smallest-bits) w with w^7 = u; u must be a 7th power."""
    field = u.field
    n = field.q - 1
    if n % 7:
        return u ** pow(7, -1, n)
    if not field2m.is_seventh_power(u):
        raise NotSeventhPower(f"{u!r} is not a 7th power")
    a7 = 0
    b = n
    while b % 7 == 0:
        a7 += 1
        b //= 7
    x0 = u ** pow(7, -1, b)
    err_inv = (x0 ** 7 * u.inv()).inv()
    g = field2m.find_generator(field)
    h0 = g ** (n // 7 ** a7)
    z = field.one
    for _ in range(7 ** a7):
        if z ** 7 == err_inv:
            break
        z = z * h0
    else:
        raise AssertionError("no 7th root in the 7-part; power test is broken")
    w0 = x0 * z
    zeta = g ** (n // 7)
    roots = []
    w = w0
    for _ in range(7):
        roots.append(w)
        w = w * zeta
    return min(roots, key=lambda r: r.bits)


def collision_from_7th_power(field: FieldSpec, u: Fe, beta: Fe, y_seed: Fe) -> CollisionWitness:
    """Closed-form collision for a 7th-power u, difference (w*beta, beta, 0).

    With w^7 = u the rescaled case system is solvable for every y value:
    x' = sqrt(y+1) and z' = sqrt(beta^3 (y^2+y+1) / (u alpha)) satisfy it,
    and undoing the rescaling X -> alpha X, Y -> beta Y gives the point.
    """
    if beta.bits == 0:
        raise ZeroBeta("beta must be nonzero")
    if not field2m.is_seventh_power(u):
        raise NotSeventhPower(f"{u!r} is not a 7th power")
    w = seventh_root(u)
    alpha = w * beta
    one = field.one
    xs = (y_seed + one).sqrt()
    zs = (beta ** 3 * (y_seed * y_seed + y_seed + one) * (u * alpha).inv()).sqrt()
    point = Point3(alpha * xs, beta * y_seed, zs)
    delta = Delta3(alpha, beta, field.zero)
    return make_witness(u, point, delta)


def cube_fiber_witness(field: FieldSpec, u: Fe) -> CollisionWitness:
    """Even-m collision along the first axis: the cube map is 3-to-1 there."""
    if field.m % 2:
        raise ValueError("cube fibers collapse only for even m")
    omega = field2m.find_generator(field) ** ((field.q - 1) // 3)
    assert omega.bits != 1 and (omega ** 3).bits == 1
    zero = field.zero
    point = Point3(field.one, zero, zero)
    delta = Delta3(omega + field.one, zero, zero)
    return make_witness(u, point, delta)


def nonpermutation_witness(field: FieldSpec, u: Fe) -> CollisionWitness | None:
    """Collision witness by the cheapest applicable route.

    Even m: cube fiber.  Odd m with u a 7th power: closed-form collision.
    Otherwise (odd m divisible by 3, u not a 7th power) falls back to the
    exhaustive scan, returning None only when that confirms a permutation.
    """
    if u.bits == 0:
        raise ZeroParameter("u = 0 is outside the analyzed family")
    if field.m % 2 == 0:
        return cube_fiber_witness(field, u)
    if field2m.is_seventh_power(u):
        return collision_from_7th_power(field, u, field.one, field.zero)
    ok, witness = is_permutation(field, u)
    return None if ok else witness


# ---------------------------------------------------------------------------
# certified-solution scan

def theta_scan(field: FieldSpec, certs: CertificateSet, u: Fe) -> list[tuple]:
    """Enumerate the certified solution set over the full (b, x, y, z) grid.

    For every tuple passing (b+y) h != 0 and surface = 0, completes it
    with a = g/h and c = num_f(a)/den_f and re-checks the collision
    residual through the scalar path, raising on any mismatch.  Returns
    the verified tuples as (x, y, z, a, b, c).
    """
    if u.bits == 0:
        raise ZeroParameter("the certified set is defined for u != 0")
    m = field.m
    if 4 * m > MAX_THETA_BITS:
        raise TooLarge(f"4m = {4 * m} > {MAX_THETA_BITS}")
    q = field.q
    tabs = field2m.tables(field)
    ids = np.arange(q, dtype=np.int64)
    x_g, y_g, z_g = np.meshgrid(ids, ids, ids, indexing="ij")
    results = []
    for b in range(q):
        assignment = {"be": b, "X": x_g, "Y": y_g, "Z": z_g, "u": u.bits}
        try:
            hv = mpoly.mp_eval_array(certs.h, field, assignment)
            sv = mpoly.mp_eval_array(certs.surface, field, assignment)
            gv = mpoly.mp_eval_array(certs.g, field, assignment)
        except mpoly.UnassignedVariable as e:
            from .certify import CertificateEvaluationError
            raise CertificateEvaluationError(str(e)) from None
        mask = ((b ^ y_g) != 0) & (hv != 0) & (sv == 0)
        xs, ys, zs = (arr[mask] for arr in (x_g, y_g, z_g))
        avs = tabs.mul(gv[mask], tabs.inv(hv[mask]))
        fb = field.element(b)
        for xi, yi, zi, ai in zip(xs.tolist(), ys.tolist(), zs.tolist(), avs.tolist()):
            fx, fy, fz, fa = (field.element(v) for v in (xi, yi, zi, ai))
            num = mpoly.mp_eval(certs.num_f, field,
                                {"al": fa, "be": fb, "X": fx, "Z": fz, "u": u})
            den = mpoly.mp_eval(certs.den_f, field, {"be": fb, "Y": fy, "u": u})
            fc = num * den.inv()
            point = Point3(fx, fy, fz)
            delta = Delta3(fa, fb, fc)
            r = diff_residual(u, delta, point)
            if r.x.bits | r.y.bits | r.z.bits:
                raise ScanViolation(
                    f"certified tuple fails the collision system: "
                    f"b={b:#x} x={xi:#x} y={yi:#x} z={zi:#x} residual={r.bits()}")
            results.append((fx, fy, fz, fa, fb, fc))
    return results
