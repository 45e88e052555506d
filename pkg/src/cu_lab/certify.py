"""Certificate polynomials and their identity checks.

The long polynomials live as data files (grammar in mpoly) with a sha256
manifest; this module loads them, validates their structure, and runs the
machine-checkable identities that tie them to the collision system of the
trivariate map: the solution formula for the third difference variable,
the consistency of the rational expression for the first one, the
divisibility of the constructed eliminant by the certified surface, the
factorization of h, the reduction identity behind the 7th-power collision
criterion, and the structural facts about the surface (homogeneity,
valuations, hyperplane slice, coprimality probe).
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from . import mpoly
from .mpoly import MPoly, mp_divides, mp_expr, mp_mul, mp_strip_content, mp_substitute

CERT_NAMES = ("f_num", "f_den", "g", "h", "h_factor_long") + tuple(f"a{i:02d}" for i in range(22))
ZERO_COEFF_INDICES = (13, 17, 19, 20)
SURFACE_VARS = ("be", "X", "Y", "Z")
SURFACE_DEGREE = 24

_ALLOWED_VARS = {
    "f_num": {"al", "be", "X", "Z", "u"},
    "f_den": {"be", "Y", "u"},
    "g": {"be", "X", "Y", "Z", "u"},
    "h": {"be", "X", "Y", "Z", "u"},
    "h_factor_long": {"be", "X", "Y", "Z", "u"},
}


class StructuralViolation(ValueError):
    """A certificate fails one of its load-time invariants."""


class CertificateEvaluationError(RuntimeError):
    """A certificate could not be evaluated (missing variable assignment)."""


def collision_system() -> tuple[MPoly, MPoly, MPoly]:
    """The three difference equations of the map, moved to one side.

    Expanding C_u(X+al, Y+be, Z+ga) + C_u(X, Y, Z) componentwise gives
    these polynomials; a difference (al, be, ga) at a point (X, Y, Z)
    collides exactly when all three vanish.
    """
    e1 = mp_expr("al X^2 + al^2 X + u ga Y^2 + u be^2 Z + al^3 + u be^2 ga")
    e2 = mp_expr("be Y^2 + be^2 Y + u ga^2 X + u al Z^2 + be^3 + u ga^2 al")
    e3 = mp_expr("ga Z^2 + ga^2 Z + u be X^2 + u al^2 Y + ga^3 + u al^2 be")
    return e1, e2, e3


@dataclass(frozen=True)
class CertificateSet:
    """Parsed certificate polynomials plus the assembled derived objects."""

    num_f: MPoly
    den_f: MPoly
    g: MPoly
    h: MPoly
    h_factor_long: MPoly
    a: tuple[MPoly, ...]
    surface: MPoly  # sum_i a_i X^i
    eq1: MPoly
    eq2: MPoly
    eq3: MPoly
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def eliminant(self) -> MPoly:
        return build_eliminant(self)


@dataclass
class VerificationReport:
    name: str
    passed: bool
    detail: str = ""  # non-empty exactly on failure
    info: dict = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"


def _report(name, start, passed, detail="", **info):
    return VerificationReport(name, passed, detail if not passed else "",
                              info, time.perf_counter() - start)


def assemble(parts: dict[str, MPoly]) -> CertificateSet:
    """Build a CertificateSet from named polynomials, checking structure."""
    missing = set(CERT_NAMES) - set(parts)
    if missing:
        raise StructuralViolation(f"missing certificates: {sorted(missing)}")
    for name, allowed in _ALLOWED_VARS.items():
        extra = parts[name].variables() - allowed
        if extra:
            raise StructuralViolation(f"{name} uses unexpected variables {sorted(extra)}")
    a = []
    for i in range(22):
        ai = parts[f"a{i:02d}"]
        extra = ai.variables() - {"be", "Y", "Z", "u"}
        if extra:
            raise StructuralViolation(f"a{i:02d} uses unexpected variables {sorted(extra)}")
        if i in ZERO_COEFF_INDICES:
            if not ai.is_zero():
                raise StructuralViolation(f"a{i:02d} must be the zero polynomial")
        elif ai.is_zero():
            raise StructuralViolation(f"a{i:02d} must be nonzero")
        a.append(ai)
    surface = MPoly.zero()
    for i, ai in enumerate(a):
        surface = surface + mp_mul(ai, MPoly.var("X", i))
    if mpoly.homogeneous_degree(surface, SURFACE_VARS) != SURFACE_DEGREE:
        raise StructuralViolation(f"surface is not homogeneous of degree {SURFACE_DEGREE}")
    e1, e2, e3 = collision_system()
    return CertificateSet(parts["f_num"], parts["f_den"], parts["g"], parts["h"],
                          parts["h_factor_long"], tuple(a), surface, e1, e2, e3)


def default_data_dir():
    return resources.files("cu_lab").joinpath("data/certificates")


def load_certificates(directory=None, check_manifest: bool = True) -> CertificateSet:
    """Load and validate the certificate directory (shipped data by default)."""
    root = default_data_dir() if directory is None else Path(directory)
    try:
        manifest_text = root.joinpath("manifest.txt").read_text()
    except (FileNotFoundError, OSError) as e:
        raise mpoly.ParseError(f"cannot read manifest.txt in {root}: {e}") from None
    digests = {}
    for line in manifest_text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            fname, digest = line.split()
            digests[fname] = digest
    parts = {}
    for name in CERT_NAMES:
        fname = f"{name}.poly"
        try:
            text = root.joinpath(fname).read_text()
        except (FileNotFoundError, OSError) as e:
            raise mpoly.ParseError(f"cannot read {fname}: {e}") from None
        if check_manifest:
            actual = hashlib.sha256(text.encode()).hexdigest()
            if digests.get(fname) != actual:
                raise StructuralViolation(f"checksum mismatch for {fname}")
        parsed_name, poly = mpoly.parse_named(text)
        if parsed_name != name:
            raise StructuralViolation(f"{fname} declares name {parsed_name!r}")
        parts[name] = poly
    return assemble(parts)


# ---------------------------------------------------------------------------
# identity checks

def verify_e1_identity(c: CertificateSet) -> VerificationReport:
    """eq1 == den_f * ga + num_f, so ga := num_f/den_f solves the first equation."""
    t0 = time.perf_counter()
    residual = c.eq1 + mp_mul(c.den_f, MPoly.var("ga")) + c.num_f
    return _report("e1_identity", t0, residual.is_zero(),
                   detail=f"residual monomials: {residual.exponents()[:8]}",
                   residual_terms=len(residual))


def _alpha_p(c: CertificateSet) -> MPoly:
    """den_f^2 * eq2 with ga replaced by num_f/den_f."""
    return mp_substitute(c.eq2, "ga", c.num_f, c.den_f, 2)


def verify_alpha_elimination(c: CertificateSet) -> VerificationReport:
    """Consistency of al := g/h with the second equation.

    Level 1 tries exact division of P := den_f^2 * eq2|ga:=num_f/den_f by
    (h*al + g).  On this data P is not a polynomial multiple of it, so the
    meaningful exact statement is level 2: after substituting al := g/h
    into P and clearing h-powers and monomial content, the certified
    surface divides the result.  Either level passing means every point
    with S = 0, (be+Y)h != 0 and al = g/h satisfies the second equation.
    """
    t0 = time.perf_counter()
    P = _alpha_p(c)
    info = {"p_terms": len(P), "p_alpha_degree": P.degree("al")}
    divisor = mp_mul(c.h, MPoly.var("al")) + c.g
    q1 = mp_divides(divisor, P)
    if q1 is not None:
        info.update(level=1, quotient_terms=len(q1))
        c._cache["alpha_quotient"] = q1
        return _report("alpha_elimination", t0, True, **info)
    cleared = mp_substitute(P, "al", c.g, c.h, P.degree("al"))
    _, stripped = mp_strip_content(cleared)
    q2 = mp_divides(c.surface, stripped)
    if q2 is not None:
        info.update(level=2, cleared_terms=len(stripped), quotient_terms=len(q2))
        c._cache["alpha_quotient"] = q2
        return _report("alpha_elimination", t0, True, **info)
    return _report("alpha_elimination", t0, False,
                   detail="neither exact division nor surface divisibility holds", **info)


def build_eliminant(c: CertificateSet) -> MPoly:
    """Third equation with ga := f and al := g/h substituted, cleared, stripped.

    Clearing powers are the run-time degrees: al has degree 3 in num_f and
    2 in eq3, ga has degree 3 in eq3.  The monomial content of the result
    is stripped so the output is canonical up to nothing at all; the cache
    makes repeated verifications cheap.
    """
    if "eliminant" not in c._cache:
        n1 = mp_substitute(c.num_f, "al", c.g, c.h, c.num_f.degree("al"))
        d1 = mp_mul(mpoly.mp_pow(c.h, c.num_f.degree("al")), c.den_f)
        p2 = mp_substitute(c.eq3, "al", c.g, c.h, c.eq3.degree("al"))
        raw = mp_substitute(p2, "ga", n1, d1, p2.degree("ga"))
        content, stripped = mp_strip_content(raw)
        c._cache["eliminant"] = stripped
        c._cache["eliminant_content"] = content
    return c._cache["eliminant"]


def verify_eliminant_divisibility(c: CertificateSet) -> VerificationReport:
    """The certified surface divides the eliminant exactly."""
    t0 = time.perf_counter()
    eliminant = build_eliminant(c)
    q = mp_divides(c.surface, eliminant)
    if q is None:
        return _report("eliminant_divisibility", t0, False,
                       detail="surface does not divide the eliminant",
                       eliminant_terms=len(eliminant))
    c._cache["eliminant_quotient"] = q
    return _report("eliminant_divisibility", t0, True,
                   eliminant_terms=len(eliminant), quotient_terms=len(q),
                   quotient_x_degree=q.degree("X"))


def verify_h_factorization(c: CertificateSet) -> VerificationReport:
    """u^5 (be+Y)^2 times the shipped long factor reproduces expanded h."""
    t0 = time.perf_counter()
    product = mp_mul(mp_mul(MPoly.var("u", 5), mpoly.mp_pow(mp_expr("be + Y"), 2)),
                     c.h_factor_long)
    residual = product + c.h
    return _report("h_factorization", t0, residual.is_zero(),
                   detail=f"product differs from h in {len(residual)} monomials",
                   h_u_valuation=mpoly.var_valuation(c.h, "u"))


def verify_seventh_power_criterion(c: CertificateSet) -> VerificationReport:
    """The reduction identity behind the 7th-power collision criterion.

    With A, B, C the rescaled difference equations for a (al, be, 0)
    difference, the combination al*A^2 + u be^4 B + al^7 (C^2 + C)
    collapses to (al^7 + u be^7)(Y^2 + Y + 1): when that vanishes the
    case system is solvable, which is what the collision constructor uses.
    """
    t0 = time.perf_counter()
    A = mp_expr("al^3 X^2 + al^3 X + al^3 + u be^2 Z")
    B = mp_expr("be^3 Y^2 + be^3 Y + be^3 + u al Z^2")
    C = mp_expr("X^2 + Y + 1")
    lhs = (mp_mul(MPoly.var("al"), mpoly.mp_pow(A, 2))
           + mp_mul(mp_expr("u be^4"), B)
           + mp_mul(MPoly.var("al", 7), mpoly.mp_pow(C, 2) + C))
    rhs = mp_mul(mp_expr("al^7 + u be^7"), mp_expr("Y^2 + Y + 1"))
    residual = lhs + rhs
    return _report("seventh_power_criterion", t0, residual.is_zero(),
                   detail=f"identity residual has {len(residual)} monomials")


def _set_var_zero(p: MPoly, var: str) -> MPoly:
    return mp_substitute(p, var, MPoly.zero(), MPoly.one(), max(p.degree(var), 0))


def verify_surface_structure(c: CertificateSet, seed: int = mpoly.DEFAULT_SEED) -> VerificationReport:
    """Structural facts about the certified surface and its X = 0 slice."""
    t0 = time.perf_counter()
    S = c.surface
    failures = []
    info: dict = {"seed": seed}

    hom = mpoly.homogeneous_degree(S, SURFACE_VARS)
    info["surface_degree"] = hom
    if hom != SURFACE_DEGREE:
        failures.append(f"surface homogeneous degree {hom} != {SURFACE_DEGREE}")

    val_s = mpoly.var_valuation(S, "be")
    val_a0 = mpoly.var_valuation(c.a[0], "be")
    info["be_valuation_surface"] = val_s
    info["be_valuation_a0"] = val_a0
    if val_s != 0:
        failures.append("be divides the surface")
    if val_a0 != 1:
        failures.append(f"be-valuation of a0 is {val_a0}, want exactly 1")

    if _set_var_zero(S, "X") != c.a[0]:
        failures.append("surface at X=0 differs from a0")

    # the X = 0 slice of (be+Y) h, against its displayed closed form
    slice_bh = _set_var_zero(mp_mul(mp_expr("be + Y"), c.h), "X")
    inner = mp_expr("u^2 be^3 Y^4 + u^5 be^3 Y^4 + u^2 be^2 Y^5 + u^5 be^2 Y^5"
                    " + u^2 be Y^6 + u^5 be Y^6 + u^5 Y^7 + Z^7")
    displayed = mp_mul(mp_mul(mp_expr("u^5 Z^2"), mpoly.mp_pow(mp_expr("be + Y"), 3)), inner)
    if slice_bh != displayed:
        failures.append("X=0 slice of (be+Y)h differs from its displayed product")

    try:
        coprime = mpoly.randomized_coprimality(c.a[0], slice_bh, "Z", seed=seed)
        info["slice_coprime"] = coprime
        if not coprime:
            failures.append("a0 and the X=0 slice of (be+Y)h look non-coprime")
    except mpoly.DegenerateSpecialization as e:
        failures.append(f"coprimality probe degenerate: {e}")

    return _report("surface_structure", t0, not failures, detail="; ".join(failures), **info)


def verify_all(c: CertificateSet, seed: int = mpoly.DEFAULT_SEED,
               use_cache: bool = True) -> list[VerificationReport]:
    """Every certificate check, cheapest first.

    Checks are deterministic given the data and seed, so results are
    cached on the set; pass use_cache=False to force recomputation.
    """
    key = ("reports", seed)
    if use_cache and key in c._cache:
        return c._cache[key]
    reports = [
        verify_e1_identity(c),
        verify_h_factorization(c),
        verify_seventh_power_criterion(c),
        verify_surface_structure(c, seed=seed),
        verify_alpha_elimination(c),
        verify_eliminant_divisibility(c),
    ]
    c._cache[key] = reports
    return reports


def degree_ledger(c: CertificateSet) -> dict:
    """Recorded degrees of the transcription, for regression pinning."""
    return {
        "surface_x_degree": c.surface.degree("X"),
        "surface_homogeneous_degree": mpoly.homogeneous_degree(c.surface, SURFACE_VARS),
        "a0_max_u_degree": c.a[0].degree("u"),
        "g_terms": len(c.g),
        "h_terms": len(c.h),
        "surface_terms": len(c.surface),
    }
