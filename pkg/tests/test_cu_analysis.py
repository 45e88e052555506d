"""Map evaluation, scans, and witnesses against independent oracles.

The central oracle: the packed numpy kernels must agree with evaluating
the three collision-system polynomials through the symbolic path, and
every witness must re-verify through plain scalar arithmetic.
"""

import random

import numpy as np
import pytest

from cu_lab import certify, cu_analysis as cua, field2m as f2, mpoly
from cu_lab.cu_analysis import Delta3, Point3


def rho(p: Point3) -> Point3:
    return Point3(p.y, p.z, p.x)


def residual_via_system(certs, u, d, p):
    """Evaluate the difference equations symbolically: the dual formula."""
    f = u.field
    asn = {"al": d.a, "be": d.b, "ga": d.c, "X": p.x, "Y": p.y, "Z": p.z, "u": u}
    return tuple(mpoly.mp_eval(eq, f, asn).bits for eq in (certs.eq1, certs.eq2, certs.eq3))


def reference_ddt(field, u, certs):
    """Full difference table through the symbolic evaluation path."""
    q = field.q
    ids = np.arange(q)
    grids = np.meshgrid(*([ids] * 6), indexing="ij")
    asn = dict(zip(("al", "be", "ga", "X", "Y", "Z"), grids))
    asn["u"] = u.bits
    m = field.m
    r = (mpoly.mp_eval_array(certs.eq1, field, asn) << (2 * m)) \
        | (mpoly.mp_eval_array(certs.eq2, field, asn) << m) \
        | mpoly.mp_eval_array(certs.eq3, field, asn)
    flat = r.reshape(q ** 3, q ** 3)
    uniformity = 0
    for code in range(1, q ** 3):
        counts = np.bincount(flat[code], minlength=q ** 3)
        assert counts.sum() == q ** 3  # row sums
        uniformity = max(uniformity, int(counts.max()))
    return uniformity


class TestEval:
    def test_axis_points_cube(self):
        f = f2.make_field(5)
        u = f.element(11)
        for bits in range(f.q):
            x = f.element(bits)
            out = cua.cu_eval(u, Point3(x, f.zero, f.zero))
            assert out == Point3(x ** 3, f.zero, f.zero)

    def test_origin_fixed(self):
        f = f2.make_field(4)
        z = f.zero
        assert cua.cu_eval(f.element(5), Point3(z, z, z)) == Point3(z, z, z)

    def test_all_ones_gives_one_plus_u(self):
        f = f2.make_field(3)
        u = f.element(2)
        one = f.one
        out = cua.cu_eval(u, Point3(one, one, one))
        expected = one + u
        assert out == Point3(expected, expected, expected)
        assert expected.bits == 3

    def test_field_mismatch(self):
        f, f2_ = f2.make_field(3), f2.make_field(3, 0xD)
        with pytest.raises(f2.FieldMismatch):
            cua.cu_eval(f.element(1), Point3(f2_.one, f2_.one, f2_.one))


class TestDiffResidual:
    def test_zero_difference(self):
        f = f2.make_field(5)
        d = Delta3(f.zero, f.zero, f.zero)
        p = Point3(f.element(3), f.element(7), f.element(19))
        assert cua.diff_residual(f.element(2), d, p).bits() == (0, 0, 0)

    def test_matches_collision_system_on_random_samples(self, certs):
        f = f2.make_field(5)
        rng = random.Random(505)
        for _ in range(10_000):
            u = f.element(rng.randrange(1, f.q))
            d = Delta3(*(f.element(rng.randrange(f.q)) for _ in range(3)))
            p = Point3(*(f.element(rng.randrange(f.q)) for _ in range(3)))
            assert cua.diff_residual(u, d, p).bits() == residual_via_system(certs, u, d, p)

    def test_zero_residual_yields_verified_witness(self):
        f = f2.make_field(4)
        u = f.element(2)
        # cube collision: (1,0,0) and (omega,0,0)
        omega = f2.find_generator(f) ** 5
        assert (omega ** 3).bits == 1 and omega.bits != 1
        p = Point3(f.one, f.zero, f.zero)
        d = Delta3(omega + f.one, f.zero, f.zero)
        w = cua.make_witness(u, p, d)
        assert w.verified

    def test_make_witness_rejects_noncollision(self):
        f = f2.make_field(4)
        with pytest.raises(cua.ScanViolation):
            cua.make_witness(f.element(2), Point3(f.one, f.zero, f.zero),
                             Delta3(f.one, f.zero, f.zero))


class TestPermutationScan:
    def test_m3_table(self):
        f = f2.make_field(3)
        for bits in range(1, 8):
            ok, w = cua.is_permutation(f, f.element(bits))
            assert ok == (bits != 1)
            if not ok:
                assert w is not None and w.verified

    def test_zero_u_rejected(self):
        with pytest.raises(cua.ZeroParameter):
            cua.is_permutation(f2.make_field(3), f2.make_field(3).zero)

    def test_too_large(self):
        f = f2.make_field(12)
        with pytest.raises(cua.TooLarge):
            cua.is_permutation(f, f.element(2))

    def test_m4_never_permutation(self):
        f = f2.make_field(4)
        for bits in range(1, 16):
            ok, w = cua.is_permutation(f, f.element(bits))
            assert not ok and w.verified

    def test_m5_u_t_not_permutation(self):
        f = f2.make_field(5)
        ok, w = cua.is_permutation(f, f.element(2))
        assert not ok and w.verified

    def test_against_brute_force_m3(self):
        f = f2.make_field(3)
        for bits in (1, 2, 7):
            u = f.element(bits)
            images = set()
            for xb in range(8):
                for yb in range(8):
                    for zb in range(8):
                        p = Point3(f.element(xb), f.element(yb), f.element(zb))
                        images.add(cua.cu_eval(u, p).bits())
            assert (len(images) == 512) == cua.is_permutation(f, u)[0]

    def test_threaded_scan_matches_serial(self):
        f = f2.make_field(5)
        for bits in (2, 3):
            u = f.element(bits)
            s_ok, s_w = cua.is_permutation(f, u, threads=1)
            t_ok, t_w = cua.is_permutation(f, u, threads=3)
            assert s_ok == t_ok
            assert (s_w.point, s_w.delta) == (t_w.point, t_w.delta)

    def test_witness_deterministic(self):
        f = f2.make_field(5)
        u = f.element(2)
        w1 = cua.is_permutation(f, u)[1]
        w2 = cua.is_permutation(f, u)[1]
        assert w1.point == w2.point and w1.delta == w2.delta


class TestDifferentialUniformity:
    def test_u_zero_baseline_m3(self):
        f = f2.make_field(3)
        rep = cua.differential_uniformity(f, f.zero)
        assert rep.exhaustive and rep.uniformity == 2 * f.q ** 2 == 128

    def test_m3_apn_value_for_t(self):
        f = f2.make_field(3)
        rep = cua.differential_uniformity(f, f.element(2))
        assert rep.uniformity == 2

    def test_m3_matches_reference_for_all_u(self, certs):
        f = f2.make_field(3)
        for bits in range(f.q):
            u = f.element(bits)
            assert cua.differential_uniformity(f, u).uniformity == reference_ddt(f, u, certs)

    def test_early_exit_finds_nonapn_and_witness_verifies(self):
        f = f2.make_field(5)
        u = f.element(2)
        rep = cua.differential_uniformity(f, u, early_exit_above=2)
        assert not rep.exhaustive and rep.uniformity > 2
        # independently count solutions for the reported direction/output
        d, out = rep.witness_direction, rep.witness_output
        count = 0
        for xb in range(f.q):
            for yb in range(f.q):
                for zb in range(f.q):
                    p = Point3(f.element(xb), f.element(yb), f.element(zb))
                    if cua.diff_residual(u, d, p) == out:
                        count += 1
        assert count == rep.uniformity

    def test_uniformity_is_even(self):
        f = f2.make_field(3)
        for bits in range(f.q):
            assert cua.differential_uniformity(f, f.element(bits)).uniformity % 2 == 0

    def test_early_exit_rejects_zero_u(self):
        f = f2.make_field(4)
        with pytest.raises(cua.ZeroParameter):
            cua.differential_uniformity(f, f.zero, early_exit_above=2)

    def test_exhaustive_too_large(self):
        f = f2.make_field(7)
        with pytest.raises(cua.TooLarge):
            cua.differential_uniformity(f, f.element(2))


class TestSeventhPowerRoute:
    def test_root_extraction_everywhere_it_exists(self):
        for m in (3, 5, 7, 9):
            f = f2.make_field(m)
            for bits in range(1, f.q):
                u = f.element(bits)
                if not f2.is_seventh_power(u):
                    continue
                w = cua.seventh_root(u)
                assert w ** 7 == u

    def test_root_is_smallest(self):
        f = f2.make_field(9)
        g = f2.find_generator(f)
        u = g ** 7
        w = cua.seventh_root(u)
        all_roots = [f.element(b) for b in range(1, f.q) if (f.element(b) ** 7) == u]
        assert w == min(all_roots, key=lambda r: r.bits)

    def test_m5_example_with_unique_root(self):
        f = f2.make_field(5)
        u = f.element(2)
        w = cua.collision_from_7th_power(f, u, f.one, f.zero)
        assert w.verified
        assert cua.seventh_root(u) == u ** 9  # 7 * 9 = 63 = 2 * 31 + 1

    def test_m9_seventh_power_with_offsets(self):
        f = f2.make_field(9)
        g = f2.find_generator(f)
        w = cua.collision_from_7th_power(f, g ** 7, g, g ** 3)
        assert w.verified
        assert w.delta.b == g and w.delta.c.bits == 0

    def test_non_seventh_power_rejected(self):
        f = f2.make_field(9)
        g = f2.find_generator(f)
        with pytest.raises(cua.NotSeventhPower):
            cua.collision_from_7th_power(f, g, f.one, f.zero)

    def test_zero_beta_rejected(self):
        f = f2.make_field(5)
        with pytest.raises(cua.ZeroBeta):
            cua.collision_from_7th_power(f, f.element(2), f.zero, f.zero)

    def test_every_y_seed_works(self):
        f = f2.make_field(7)
        u = f.element(5)
        for y_bits in range(f.q):
            assert cua.collision_from_7th_power(f, u, f.one, f.element(y_bits)).verified


class TestWitnessDispatch:
    def test_even_m_cube_route(self):
        for m in (4, 6):
            f = f2.make_field(m)
            w = cua.nonpermutation_witness(f, f.element(2))
            assert w.verified
            assert w.delta.b.bits == 0 and w.delta.c.bits == 0  # axis collision

    def test_m7_all_u_seventh_power_route(self):
        f = f2.make_field(7)
        for bits in (1, 2, 77, 126):
            w = cua.nonpermutation_witness(f, f.element(bits))
            assert w is not None and w.verified

    def test_m3_permutations_give_none(self):
        f = f2.make_field(3)
        assert cua.nonpermutation_witness(f, f.element(2)) is None

    def test_m9_hard_case_exhaustive(self):
        f = f2.make_field(9)
        g = f2.find_generator(f)
        assert not f2.is_seventh_power(g)
        w = cua.nonpermutation_witness(f, g)
        assert w is not None and w.verified

    def test_zero_u_rejected(self):
        f = f2.make_field(4)
        with pytest.raises(cua.ZeroParameter):
            cua.nonpermutation_witness(f, f.zero)


class TestThetaScan:
    def test_m3_members_collected(self, certs):
        f = f2.make_field(3)
        tuples = cua.theta_scan(f, certs, f.element(2))
        assert len(tuples) == 49
        # a permutation instance: every certified member must be trivial
        assert all(t[3].bits == t[4].bits == t[5].bits == 0 for t in tuples)

    def test_guard_excludes_diagonal(self, certs):
        f = f2.make_field(3)
        for t in cua.theta_scan(f, certs, f.element(3)):
            x, y, z, a, b, c = t
            assert (b + y).bits != 0
            assert mpoly.mp_eval(certs.h, f,
                                 {"be": b, "X": x, "Y": y, "Z": z, "u": f.element(3)}).bits != 0

    def test_too_large(self, certs):
        f = f2.make_field(7)
        with pytest.raises(cua.TooLarge):
            cua.theta_scan(f, certs, f.element(2))

    def test_zero_u_rejected(self, certs):
        f = f2.make_field(3)
        with pytest.raises(cua.ZeroParameter):
            cua.theta_scan(f, certs, f.zero)


class TestSymmetries:
    def test_cyclic_equivariance_exhaustive_m3(self):
        f = f2.make_field(3)
        points = [Point3(f.element(x), f.element(y), f.element(z))
                  for x in range(8) for y in range(8) for z in range(8)]
        for ub in range(8):
            u = f.element(ub)
            for p in points:
                assert cua.cu_eval(u, rho(p)) == rho(cua.cu_eval(u, p))

    def test_cyclic_equivariance_sampled(self):
        rng = random.Random(11)
        for m in (5, 9):
            f = f2.make_field(m)
            for _ in range(100_000 // 20):  # 5000 points per field
                u = f.element(rng.randrange(f.q))
                p = Point3(*(f.element(rng.randrange(f.q)) for _ in range(3)))
                assert cua.cu_eval(u, rho(p)) == rho(cua.cu_eval(u, p))

    def test_cubic_homogeneity_exhaustive_m3(self):
        f = f2.make_field(3)
        for ub in (0, 2, 7):
            u = f.element(ub)
            for lb in range(8):
                lam = f.element(lb)
                cube = lam ** 3
                for xb in range(0, 8, 3):
                    for yb in range(8):
                        for zb in range(0, 8, 2):
                            p = Point3(f.element(xb), f.element(yb), f.element(zb))
                            scaled = Point3(lam * p.x, lam * p.y, lam * p.z)
                            out = cua.cu_eval(u, scaled)
                            base = cua.cu_eval(u, p)
                            assert out == Point3(cube * base.x, cube * base.y, cube * base.z)

    def test_cubic_homogeneity_sampled(self):
        rng = random.Random(13)
        for m in (5, 9):
            f = f2.make_field(m)
            for _ in range(2000):
                u = f.element(rng.randrange(f.q))
                lam = f.element(rng.randrange(f.q))
                p = Point3(*(f.element(rng.randrange(f.q)) for _ in range(3)))
                cube = lam ** 3
                scaled = Point3(lam * p.x, lam * p.y, lam * p.z)
                out = cua.cu_eval(u, scaled)
                base = cua.cu_eval(u, p)
                assert out == Point3(cube * base.x, cube * base.y, cube * base.z)


class TestModulusIndependence:
    def test_m3_results_agree_across_moduli(self):
        fa = f2.make_field(3)          # t^3 + t + 1
        fb = f2.make_field(3, 0xD)     # t^3 + t^2 + 1
        perm_a = sorted(cua.is_permutation(fa, fa.element(b))[0] for b in range(1, 8))
        perm_b = sorted(cua.is_permutation(fb, fb.element(b))[0] for b in range(1, 8))
        assert perm_a == perm_b
        ddt_a = sorted(cua.differential_uniformity(fa, fa.element(b)).uniformity
                       for b in range(8))
        ddt_b = sorted(cua.differential_uniformity(fb, fb.element(b)).uniformity
                       for b in range(8))
        assert ddt_a == ddt_b


class TestWitnessSerialization:
    def test_json_schema(self):
        f = f2.make_field(5)
        w = cua.collision_from_7th_power(f, f.element(2), f.one, f.zero)
        d = w.to_json_dict()
        assert set(d) == {"m", "modulus", "u", "point", "delta", "verified"}
        assert d["m"] == 5 and d["modulus"] == "0x25" and d["verified"] is True
        assert len(d["point"]) == 3 and all(v.startswith("0x") for v in d["point"])

    def test_zero_delta_rejected(self):
        f = f2.make_field(5)
        z = f.zero
        with pytest.raises(ValueError):
            cua.CollisionWitness(Point3(f.one, z, z), Delta3(z, z, z), f.one, True)
