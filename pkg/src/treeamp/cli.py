"""Command-line front end.

Every subcommand emits a single JSON report whose bytes are a pure
function of the flags and seed: exact integers are serialized as
strings (never floats), rationals as "num/den", reals as %.12g strings,
and wall time goes to stderr only.  Exit code is 0 exactly when every
verdict in the report passes.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from fractions import Fraction

from . import __version__, amplifier, gaussian, hecke, orbits, splitting, tree

MAX_PRIME = 13
MAX_RADIUS = 8


def _encode(obj):
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, float):
        return f"{obj:.12g}"
    if isinstance(obj, dict):
        return {str(k): _encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_encode(v) for v in obj]
    return obj


def write_report(report: dict, out_path: str | None) -> None:
    text = json.dumps(_encode(report), indent=2, sort_keys=True) + "\n"
    if out_path:
        tmp = out_path + ".tmp"
        with open(tmp, "w") as fh:
            fh.write(text)
        os.replace(tmp, out_path)
    else:
        sys.stdout.write(text)


def finish(report: dict, out_path: str | None, started: float) -> int:
    write_report(report, out_path)
    print(f"wall time: {time.monotonic() - started:.3f}s", file=sys.stderr)
    failing = [k for k, v in report["verdicts"].items() if v is False]
    if failing:
        print(f"FAIL: {failing[0]}", file=sys.stderr)
        return 1
    return 0


def _parse_int_list(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok]


# ---------------------------------------------------------------------------


def cmd_verify_hecke(args) -> int:
    started = time.monotonic()
    primes = _parse_int_list(args.primes)
    max_radius = args.max_radius
    for p in primes:
        if p > MAX_PRIME:
            raise SystemExit(f"prime {p} exceeds the cap {MAX_PRIME}")
    if max_radius > MAX_RADIUS:
        raise SystemExit(f"max radius {max_radius} exceeds the cap {MAX_RADIUS}")
    verdicts: dict[str, bool] = {}
    results: dict[str, dict] = {}
    for p in primes:
        checks: dict[str, bool] = {}
        if max_radius >= 2:
            got = hecke.convolve(hecke.basic(p, 1), hecke.basic(p, 1))
            want = hecke.LocalHeckeElement.from_dict(
                p, {0: p * (p + 1), 2: p - 1, 4: 1})
            checks["degree2_identity"] = got == want
        if max_radius >= 4:
            got = hecke.convolve(hecke.basic(p, 2), hecke.basic(p, 2))
            want = hecke.LocalHeckeElement.from_dict(
                p, {0: p ** 3 * (p + 1), 2: p * p * (p - 1), 4: p * (p - 1),
                    6: p - 1, 8: 1})
            checks["degree4_identity"] = got == want
        basics = [hecke.identity(p)] + [
            hecke.basic(p, j) for j in range(1, max_radius // 2 + 1)]
        checks["commutativity"] = all(
            hecke.convolve(f, g) == hecke.convolve(g, f)
            for f in basics for g in basics)
        checks["mass_multiplicativity"] = all(
            hecke.total_mass(hecke.convolve(f, g))
            == hecke.total_mass(f) * hecke.total_mass(g)
            for f in basics for g in basics)
        if p in (2, 3) and max_radius >= 4:
            t1, t2 = hecke.basic(p, 1), hecke.basic(p, 2)
            checks["associativity"] = hecke.convolve(hecke.convolve(t1, t1), t2) \
                == hecke.convolve(t1, hecke.convolve(t1, t2))
        results[str(p)] = checks
        for name, ok in checks.items():
            verdicts[f"p{p}_{name}"] = ok
    report = {
        "tool_version": __version__,
        "command": "verify-hecke",
        "config": {"primes": primes, "max_radius": max_radius},
        "results": results,
        "verdicts": verdicts,
    }
    return finish(report, args.out, started)


def cmd_split_density(args) -> int:
    started = time.monotonic()
    poly = splitting.parse_poly(args.poly)
    density = splitting.empirical_density(poly, args.limit)
    sample = splitting.split_primes_in(poly, 2, min(args.limit, 200))
    verdicts = {}
    if args.expected is not None:
        expected = Fraction(args.expected)
        verdicts["density_within_tolerance"] = abs(density - expected) <= Fraction(1, 50)
    report = {
        "tool_version": __version__,
        "command": "split-density",
        "config": {"poly": str(poly), "limit": args.limit,
                   "expected": args.expected},
        "results": {
            "density": density,
            "density_decimal": float(density),
            "split_primes_up_to_200": sample,
        },
        "verdicts": verdicts,
    }
    return finish(report, args.out, started)


def _random_gauss_rat(rng: random.Random, span: int = 30, den: int = 12) -> gaussian.GaussRat:
    return gaussian.GaussRat(
        Fraction(rng.randint(-span, span), rng.randint(1, den)),
        Fraction(rng.randint(-span, span), rng.randint(1, den)),
    )


def cmd_denom_check(args) -> int:
    started = time.monotonic()
    rng = random.Random(args.seed)
    n = args.samples
    submult_add = submult_mul = product_one = arch_floor = True
    for _ in range(n):
        x = _random_gauss_rat(rng)
        y = _random_gauss_rat(rng)
        dx, dy = gaussian.denom(x), gaussian.denom(y)
        submult_add &= gaussian.denom(x + y) <= dx * dy
        submult_mul &= gaussian.denom(x * y) <= dx * dy
        if not x.is_zero():
            product_one &= gaussian.product_formula_check(x) == 1
            arch_floor &= dx * x.norm() >= 1
    unimodular = sl2_inverse = True
    for _ in range(max(1, n // 10)):
        m = gaussian.Mat2(tuple(_random_gauss_rat(rng) for _ in range(4)))
        # random unimodular integral matrix: product of elementary shears
        k = gaussian.Mat2.identity()
        for _ in range(4):
            s = gaussian.GaussRat.make(rng.randint(-3, 3), rng.randint(-3, 3))
            one, zero = gaussian.GaussRat.make(1), gaussian.GaussRat.make(0)
            shear = gaussian.Mat2((one, s, zero, one)) if rng.random() < 0.5 \
                else gaussian.Mat2((one, zero, s, one))
            k = k * shear
        unimodular &= gaussian.denom_mat(m * k) == gaussian.denom_mat(m)
        if not k.is_zero():
            sl2_inverse &= gaussian.denom_mat(k.inverse()) == gaussian.denom_mat(k)
    verdicts = {
        "submultiplicative_sum": submult_add,
        "submultiplicative_product": submult_mul,
        "product_formula_exact": product_one,
        "denominator_arch_floor": arch_floor,
        "unimodular_right_invariance": unimodular,
        "sl2_inverse_equality": sl2_inverse,
    }
    report = {
        "tool_version": __version__,
        "command": "denom-check",
        "config": {"samples": n, "seed": args.seed},
        "results": {},
        "verdicts": verdicts,
    }
    return finish(report, args.out, started)


def cmd_orbit_check(args) -> int:
    started = time.monotonic()
    kind = orbits.OrbitKind.SL2 if args.orbit == "sl2" else orbits.OrbitKind.MULTIPLICATIVE
    model = orbits.OrbitModel(kind, args.index)
    primes = _parse_int_list(args.primes)
    results = {}
    verdicts = {}
    for p in primes:
        for j in range(1, args.max_j + 1):
            closed = orbits.orbit_intersect_one_sided(model, p, j)
            brute = orbits.brute_force_intersect(model, p, j, ball_radius=2 * j)
            results[f"p{p}_j{j}"] = {"closed_form": closed, "brute_force": brute}
            verdicts[f"p{p}_j{j}_agree"] = closed == brute
    report = {
        "tool_version": __version__,
        "command": "orbit-check",
        "config": {"orbit": args.orbit, "index": args.index,
                   "primes": primes, "max_j": args.max_j},
        "results": results,
        "verdicts": verdicts,
    }
    return finish(report, args.out, started)


def cmd_amplifier(args) -> int:
    started = time.monotonic()
    Qs = _parse_int_list(args.Q)
    poly = splitting.parse_poly(args.poly)
    if args.spectrum == "trivial":
        spectrum = amplifier.SpectrumModel.trivial()
    else:
        spectrum = amplifier.SpectrumModel.tempered(args.seed)
    kind = orbits.OrbitKind.SL2 if args.orbit == "sl2" else orbits.OrbitKind.MULTIPLICATIVE
    orbit = orbits.OrbitModel(kind, args.index)
    reports = amplifier.scaling_sweep(Qs, poly, spectrum, orbit)
    results = []
    verdicts = {}
    for rep in reports:
        results.append({
            "Q": rep.Q,
            "ell": rep.ell,
            "primes_used": rep.primes_used,
            "Lambda": rep.Lambda,
            "tau1_at_identity": rep.tau1_at_identity,
            "c_tau": rep.c_tau,
            "norm_inf": rep.norm_inf,
            "intersection_count": rep.intersection_count,
            "ratio_intersections": rep.ratio_intersections,
            "ratio_positivity": rep.ratio_positivity,
            "lambda_scaled": rep.lambda_scaled,
            "norm_inf_scaled": rep.norm_inf_scaled,
            "positivity_scaled": rep.positivity_scaled,
        })
        for name, ok in rep.verdicts.items():
            verdicts[f"Q{rep.Q}_{name}"] = ok
    report = {
        "tool_version": __version__,
        "command": "amplifier",
        "config": {"Q": Qs, "poly": str(poly), "spectrum": args.spectrum,
                   "seed": args.seed, "orbit": args.orbit, "index": args.index},
        "results": results,
        "verdicts": verdicts,
    }
    return finish(report, args.out, started)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treeamp",
        description="exact verification suites for tree Hecke convolution, "
                    "denominators, prime splitting, and amplifier assembly",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    vh = sub.add_parser("verify-hecke", help="convolution identity and algebra checks")
    vh.add_argument("--primes", default="2,3,5,7,11")
    vh.add_argument("--max-radius", type=int, default=8)
    vh.add_argument("--out", default=None)
    vh.set_defaults(func=cmd_verify_hecke)

    sd = sub.add_parser("split-density", help="empirical complete-splitting density")
    sd.add_argument("--poly", required=True)
    sd.add_argument("--limit", type=int, default=10 ** 5)
    sd.add_argument("--expected", default=None,
                    help="expected density as a fraction, e.g. 1/2")
    sd.add_argument("--out", default=None)
    sd.set_defaults(func=cmd_split_density)

    dc = sub.add_parser("denom-check", help="denominator and product-formula sweeps")
    dc.add_argument("--samples", type=int, default=1000)
    dc.add_argument("--seed", type=int, default=0)
    dc.add_argument("--out", default=None)
    dc.set_defaults(func=cmd_denom_check)

    oc = sub.add_parser("orbit-check", help="orbit intersection closed form vs enumeration")
    oc.add_argument("--orbit", choices=["sl2", "torus"], default="torus")
    oc.add_argument("--index", type=int, default=1)
    oc.add_argument("--primes", default="2,3,5")
    oc.add_argument("--max-j", type=int, default=3)
    oc.add_argument("--out", default=None)
    oc.set_defaults(func=cmd_orbit_check)

    am = sub.add_parser("amplifier", help="build amplifiers over a Q sweep and report ratios")
    am.add_argument("--Q", default="50,100,200,400")
    am.add_argument("--poly", default="x^2+1")
    am.add_argument("--spectrum", choices=["trivial", "tempered"], default="trivial")
    am.add_argument("--seed", type=int, default=42)
    am.add_argument("--orbit", choices=["sl2", "torus"], default="sl2")
    am.add_argument("--index", type=int, default=1)
    am.add_argument("--out", default=None)
    am.set_defaults(func=cmd_amplifier)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
