"""Certificate loading, the identity suite, and mutation sensitivity."""

import random

import pytest

import _mutation
from cu_lab import certify, field2m as f2
from cu_lab import cu_analysis, mpoly
from cu_lab.certify import StructuralViolation
from cu_lab.mpoly import MPoly, mp_expr, mp_mul


class TestLoad:
    def test_shipped_data_loads(self, certs):
        assert len(certs.a) == 22
        for i in certify.ZERO_COEFF_INDICES:
            assert certs.a[i].is_zero()
        assert certs.surface.degree("X") == 21

    def test_degree_ledger(self, certs):
        ledger = certify.degree_ledger(certs)
        assert ledger == {
            "surface_x_degree": 21,
            "surface_homogeneous_degree": 24,
            "a0_max_u_degree": 22,
            "g_terms": 54,
            "h_terms": 26,
            "surface_terms": 420,
        }

    def test_empty_directory_rejected(self, tmp_path):
        with pytest.raises(mpoly.ParseError):
            certify.load_certificates(tmp_path)

    def test_checksum_tamper_detected(self, tmp_path):
        root = certify.default_data_dir()
        for name in certify.CERT_NAMES:
            fname = f"{name}.poly"
            (tmp_path / fname).write_text(root.joinpath(fname).read_text())
        (tmp_path / "manifest.txt").write_text(root.joinpath("manifest.txt").read_text())
        path = tmp_path / "g.poly"
        path.write_text(path.read_text().replace("be^12 u^9", "be^12 u^8"))
        with pytest.raises(StructuralViolation, match="checksum"):
            certify.load_certificates(tmp_path)
        # without manifest checking the tampered file must still be caught by math
        certs = certify.load_certificates(tmp_path, check_manifest=False)
        assert not certify.verify_alpha_elimination(certs).passed

    def test_structural_violations(self, cert_parts):
        broken = dict(cert_parts)
        broken["a21"] = MPoly.zero()
        with pytest.raises(StructuralViolation, match="a21"):
            certify.assemble(broken)
        broken = dict(cert_parts)
        broken["a05"] = cert_parts["a05"] + MPoly.var("X")  # wrong variable
        with pytest.raises(StructuralViolation, match="a05"):
            certify.assemble(broken)
        broken = dict(cert_parts)
        broken["a05"] = cert_parts["a05"] + mp_expr("be Y Z u")  # breaks homogeneity
        with pytest.raises(StructuralViolation, match="homogeneous"):
            certify.assemble(broken)

    def test_collision_system_matches_literal_transcription(self, certs):
        assert certs.eq1 == mp_expr(
            "al X^2 + al^2 X + u ga Y^2 + u be^2 Z + al^3 + u be^2 ga")
        assert certs.eq2 == mp_expr(
            "be Y^2 + be^2 Y + u ga^2 X + u al Z^2 + be^3 + u ga^2 al")
        assert certs.eq3 == mp_expr(
            "ga Z^2 + ga^2 Z + u be X^2 + u al^2 Y + ga^3 + u al^2 be")


class TestSuite:
    def test_all_checks_pass_on_shipped_data(self, verified_reports):
        for r in verified_reports:
            assert r.passed, f"{r.name}: {r.detail}"
        assert {r.name for r in verified_reports} == {
            "e1_identity", "h_factorization", "seventh_power_criterion",
            "surface_structure", "alpha_elimination", "eliminant_divisibility"}

    def test_alpha_elimination_level_and_degree(self, verified_reports):
        rep = next(r for r in verified_reports if r.name == "alpha_elimination")
        # exact polynomial division by (h al + g) does not hold for this data;
        # the exact surface-divisibility form does
        assert rep.info["level"] == 2
        assert rep.info["p_alpha_degree"] == 7
        assert rep.info["quotient_terms"] > 0

    def test_eliminant_shape(self, certs, verified_reports):
        eliminant = certs.eliminant
        assert not eliminant.is_zero()
        assert eliminant.variables() <= {"be", "X", "Y", "Z", "u"}
        rep = next(r for r in verified_reports if r.name == "eliminant_divisibility")
        assert rep.info["quotient_terms"] > 0

    def test_eliminant_quotient_multiplies_back(self, certs, verified_reports):
        q = certs._cache["eliminant_quotient"]
        assert mp_mul(certs.surface, q) == certs.eliminant

    def test_eliminant_deterministic(self, cert_parts, certs):
        rebuilt = certify.build_eliminant(certify.assemble(dict(cert_parts)))
        assert mpoly.mp_serialize(rebuilt) == mpoly.mp_serialize(certs.eliminant)

    def test_seventh_power_spot_check_numeric(self, certs):
        # on a random assignment satisfying C = 0 and B = 0, the remaining
        # combination al * A^2 must equal (al^7 + u be^7)(Y^2 + Y + 1)
        f = f2.make_field(13)
        rng = random.Random(8)
        hits = 0
        while hits < 25:
            al, be, z = (f.element(rng.randrange(1, f.q)) for _ in range(3))
            u = f.element(rng.randrange(1, f.q))
            y = f.element(rng.randrange(f.q))
            x = (y + f.one).sqrt()                      # C = X^2 + Y + 1 = 0
            yy = y * y + y + f.one
            z2 = be ** 3 * yy * (u * al).inv()          # B = 0 needs u al Z^2 = be^3 (Y^2+Y+1)
            z = z2.sqrt()
            A = al ** 3 * (x * x + x + f.one) + u * be * be * z
            lhs = al * A * A
            rhs = (al ** 7 + u * be ** 7) * yy
            assert lhs == rhs
            hits += 1


class TestMutations:
    def test_fnum_mutation_kills_e1(self, cert_parts):
        mono = next(m for m in cert_parts["f_num"].monos
                    if mpoly._unpack(m) == (1, 0, 0, 2, 0, 0, 0))  # the al X^2 term
        mutated = _mutation.delete_monomial(cert_parts, "f_num", mono)
        c = certify.assemble(mutated)
        rep = certify.verify_e1_identity(c)
        assert not rep.passed and rep.detail

    def test_h_long_mutation_kills_factorization(self, cert_parts):
        mono = next(m for m in cert_parts["h_factor_long"].monos
                    if mpoly._unpack(m) == (0, 0, 0, 0, 0, 9, 0))  # the Z^9 term
        mutated = _mutation.delete_monomial(cert_parts, "h_factor_long", mono)
        rep = certify.verify_h_factorization(certify.assemble(mutated))
        assert not rep.passed

    def test_a0_extra_befree_monomial_kills_valuation(self, cert_parts):
        mutated = dict(cert_parts)
        mutated["a00"] = cert_parts["a00"] + mp_expr("Y^24 u^3")  # degree 24, no be
        rep = certify.verify_surface_structure(certify.assemble(mutated))
        assert not rep.passed
        assert "valuation" in rep.detail

    def test_g_mutation_kills_alpha_elimination(self, cert_parts, certs):
        mono = sorted(cert_parts["g"].monos)[0]
        mutated = _mutation.delete_monomial(cert_parts, "g", mono)
        assert _mutation.killing_check(mutated, certs.eliminant) == "alpha_elimination"

    def test_a_file_mutation_kills_a_divisibility_check(self, cert_parts, certs):
        # the mutated surface divides neither the alpha-cleared polynomial
        # nor the eliminant; whichever probe runs first reports the kill
        mono = sorted(cert_parts["a05"].monos)[2]
        mutated = _mutation.delete_monomial(cert_parts, "a05", mono)
        verdict = _mutation.killing_check(mutated, certs.eliminant)
        assert verdict in ("alpha_elimination", "eliminant_divisibility")
        c = certify.assemble(mutated)
        assert not mpoly.divisibility_probe(c.surface, certs.eliminant, "X",
                                            ext_degree=16, trials=4)

    def test_random_sample_killed(self, cert_parts, certs):
        rng = random.Random(0xC0DE)
        universe = _mutation.mutable_monomials(cert_parts)
        sample = rng.sample(universe, 12)
        for name, mono in sample:
            mutated = _mutation.delete_monomial(cert_parts, name, mono)
            verdict = _mutation.killing_check(mutated, certs.eliminant)
            assert verdict is not None, f"mutation in {name} survived every check"


class TestThetaCrossValidation:
    def test_m3_certified_tuples_have_zero_residual(self, certs):
        f = f2.make_field(3)
        for bits in (2, 5):
            tuples = cu_analysis.theta_scan(f, certs, f.element(bits))
            assert tuples, "certified set unexpectedly empty"
