"""Command-line front end: one subcommand per verification surface.

Exit codes: 0 all checks passed / result computed, 1 a verification
failed (a mathematical discrepancy), 2 usage or resource errors.  With
--json the report on stdout is byte-identical across reruns for the same
seed and inputs; wall-clock timings only ever go to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import certify, cu_analysis, field2m, lwbound, mpoly

SCHEMA_VERSION = "1"


class UsageError(ValueError):
    pass


def parse_u_spec(spec: str, field: field2m.FieldSpec) -> field2m.Fe:
    """Element spec: 'hex:0x2a', '0x2a', decimal, 'gen', or 'gen^5'."""
    s = spec.strip()
    if s.startswith("hex:"):
        s = s[4:]
    if s.startswith("gen"):
        rest = s[3:]
        k = 1
        if rest.startswith("^"):
            k = int(rest[1:])
        elif rest:
            raise UsageError(f"bad element spec {spec!r}")
        return field2m.find_generator(field) ** k
    try:
        bits = int(s, 16) if s.lower().startswith("0x") else int(s)
    except ValueError:
        raise UsageError(f"bad element spec {spec!r}") from None
    if not 0 <= bits < field.q:
        raise UsageError(f"element {spec!r} out of range for GF(2^{field.m})")
    return field.element(bits)


def _field_from_args(args) -> field2m.FieldSpec:
    modulus = int(args.modulus, 16) if getattr(args, "modulus", None) else None
    return field2m.make_field(args.m, modulus)


def _u_values(args, field):
    if getattr(args, "all_u", False):
        return [field.element(b) for b in range(field.q)]
    if not getattr(args, "u", None):
        raise UsageError("specify --u or --all-u")
    return [parse_u_spec(args.u, field)]


def _data_dir(args):
    return getattr(args, "data", None) or os.environ.get("CU_LAB_DATA") or None


def _fx(v: int) -> str:
    return f"{v:#x}"


# ---------------------------------------------------------------------------
# subcommand handlers: return (exit_code, results_payload)

def cmd_field_info(args):
    f = _field_from_args(args)
    g = field2m.find_generator(f)
    return 0, {
        "m": f.m,
        "q": f.q,
        "modulus": _fx(f.modulus),
        "generator": _fx(g.bits),
        "order_factorization": field2m.factorize(f.q - 1),
        "seventh_powers_proper_subgroup": (f.q - 1) % 7 == 0,
    }


def cmd_permutation(args):
    f = _field_from_args(args)
    rows = []
    for u in _u_values(args, f):
        if u.bits == 0:
            rows.append({"u": _fx(0), "status": "invalid", "reason": "u = 0 rejected"})
            continue
        ok, witness = cu_analysis.is_permutation(f, u, threads=args.threads)
        row = {"u": _fx(u.bits), "status": "permutation" if ok else "non-permutation"}
        if witness is not None:
            row["witness"] = witness.to_json_dict()
        rows.append(row)
    return 0, {"m": f.m, "modulus": _fx(f.modulus), "table": rows}


def cmd_ddt(args):
    f = _field_from_args(args)
    early = 2 if args.early_exit else None
    rows = []
    for u in _u_values(args, f):
        if u.bits == 0 and early is not None:
            rows.append({"u": _fx(0), "status": "invalid",
                         "reason": "u = 0 rejected in early-exit mode"})
            continue
        rep = cu_analysis.differential_uniformity(f, u, early_exit_above=early)
        rows.append({
            "u": _fx(u.bits),
            "uniformity": rep.uniformity,
            "exhaustive": rep.exhaustive,
            "direction": [_fx(v) for v in rep.witness_direction.bits()],
            "output": [_fx(v) for v in rep.witness_output.bits()],
        })
    return 0, {"m": f.m, "modulus": _fx(f.modulus), "early_exit": early, "table": rows}


def cmd_collision(args):
    f = _field_from_args(args)
    u = parse_u_spec(args.u, f)
    if args.beta or args.y_seed:
        beta = parse_u_spec(args.beta or "1", f)
        y_seed = parse_u_spec(args.y_seed or "0", f)
        witness = cu_analysis.collision_from_7th_power(f, u, beta, y_seed)
    else:
        witness = cu_analysis.nonpermutation_witness(f, u)
    if witness is None:
        return 0, {"m": f.m, "u": _fx(u.bits), "witness": None,
                   "status": "permutation confirmed by exhaustive scan"}
    return 0, {"m": f.m, "u": _fx(u.bits), "witness": witness.to_json_dict()}


def cmd_verify_certificates(args):
    certs = certify.load_certificates(_data_dir(args))
    reports = certify.verify_all(certs, seed=args.seed)
    rows = [{"name": r.name, "status": r.status, "detail": r.detail, "info": r.info}
            for r in reports]
    ok = all(r.passed for r in reports)
    return (0 if ok else 1), {"checks": rows, "all_passed": ok,
                              "degree_ledger": certify.degree_ledger(certs)}


def cmd_theta_scan(args):
    f = _field_from_args(args)
    certs = certify.load_certificates(_data_dir(args))
    rows = []
    code = 0
    for u in _u_values(args, f):
        if u.bits in (0,):
            rows.append({"u": _fx(0), "status": "invalid", "reason": "u = 0 rejected"})
            continue
        try:
            tuples = cu_analysis.theta_scan(f, certs, u)
        except cu_analysis.ScanViolation as e:
            rows.append({"u": _fx(u.bits), "status": "VIOLATION", "detail": str(e)})
            code = 1
            continue
        nontrivial = sum(1 for t in tuples if any(v.bits for v in t[3:]))
        rows.append({"u": _fx(u.bits), "status": "ok", "members": len(tuples),
                     "nontrivial": nontrivial})
    return code, {"m": f.m, "modulus": _fx(f.modulus), "tuple_space": f.q ** 4,
                  "table": rows}


def cmd_bound(args):
    if args.find_threshold:
        threshold = lwbound.find_min_odd_m()
        return 0, {"min_odd_m": threshold,
                   "applicable_from": {"r": lwbound.PARAMS.r, "delta": lwbound.PARAMS.delta,
                                       "first_m": 13}}
    if args.m is None:
        raise UsageError("bound needs --m or --find-threshold")
    r = lwbound.theta_lower_bound(args.m)
    return 0, {"m": r.m, "q": r.q, "sign": r.sign, "applicable": r.applicable,
               "float_estimate": r.float_estimate, "terms": r.terms, "note": r.note}


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cu-lab", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)

    def add_field_args(sp, with_u=True):
        sp.add_argument("--m", type=int, required=True, help="extension degree")
        sp.add_argument("--modulus", help="hex modulus overriding the shipped table")
        if with_u:
            grp = sp.add_mutually_exclusive_group()
            grp.add_argument("--u", help="element spec: 0x.., hex:0x.., gen^k")
            grp.add_argument("--all-u", action="store_true")

    def add_common(sp):
        sp.add_argument("--json", action="store_true", help="machine-readable report")
        sp.add_argument("--seed", type=int, default=mpoly.DEFAULT_SEED)
        sp.add_argument("--threads", type=int, default=os.cpu_count() or 1)

    sp = sub.add_parser("field-info", help="field parameters and generator")
    add_field_args(sp, with_u=False)
    add_common(sp)
    sp.set_defaults(handler=cmd_field_info)

    sp = sub.add_parser("permutation", help="exhaustive bijectivity scan")
    add_field_args(sp)
    add_common(sp)
    sp.set_defaults(handler=cmd_permutation)

    sp = sub.add_parser("ddt", help="differential uniformity")
    add_field_args(sp)
    sp.add_argument("--early-exit", action="store_true",
                    help="stop at the first solution count above 2")
    add_common(sp)
    sp.set_defaults(handler=cmd_ddt)

    sp = sub.add_parser("collision", help="constructive non-permutation witness")
    add_field_args(sp)
    sp.add_argument("--beta", help="force the 7th-power route with this beta")
    sp.add_argument("--y-seed", help="y value seeding the 7th-power route")
    add_common(sp)
    sp.set_defaults(handler=cmd_collision)

    sp = sub.add_parser("verify-certificates", help="run every certificate identity check")
    sp.add_argument("--data", help="certificate directory (default: shipped, or $CU_LAB_DATA)")
    add_common(sp)
    sp.set_defaults(handler=cmd_verify_certificates)

    sp = sub.add_parser("theta-scan", help="enumerate and re-verify the certified solution set")
    add_field_args(sp)
    sp.add_argument("--data", help="certificate directory (default: shipped, or $CU_LAB_DATA)")
    add_common(sp)
    sp.set_defaults(handler=cmd_theta_scan)

    sp = sub.add_parser("bound", help="exact threshold arithmetic")
    sp.add_argument("--m", type=int)
    sp.add_argument("--find-threshold", action="store_true")
    add_common(sp)
    sp.set_defaults(handler=cmd_bound)
    return p


def _echo_args(args) -> dict:
    skip = {"handler", "json"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _print_human(results, stream=sys.stdout):
    def walk(obj, indent=0):
        pad = "  " * indent
        if isinstance(obj, dict):
            for k, v in obj.items():
                if isinstance(v, (dict, list)):
                    print(f"{pad}{k}:", file=stream)
                    walk(v, indent + 1)
                else:
                    print(f"{pad}{k}: {v}", file=stream)
        elif isinstance(obj, list):
            for item in obj:
                if isinstance(item, (dict, list)):
                    walk(item, indent)
                    print(file=stream)
                else:
                    print(f"{pad}- {item}", file=stream)
    walk(results)


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    try:
        code, results = args.handler(args)
    except (certify.StructuralViolation, mpoly.ParseError,
            cu_analysis.ScanViolation) as e:
        print(f"certificate error: {e}", file=sys.stderr)
        return 1
    except (UsageError, field2m.UnsupportedDegree, field2m.ReducibleModulus,
            cu_analysis.TooLarge, cu_analysis.ZeroParameter,
            cu_analysis.NotSeventhPower, cu_analysis.ZeroBeta,
            lwbound.NonCubeDegree, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": _echo_args(args),
        "results": results,
        "seed": args.seed if hasattr(args, "seed") else None,
    }
    if args.json:
        json.dump(report, sys.stdout, sort_keys=True, indent=2)
        sys.stdout.write("\n")
    else:
        _print_human(results)
    print(f"elapsed: {time.perf_counter() - t0:.2f}s", file=sys.stderr)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
