"""Command-line front end.

Subcommands: bounds, certify, scan, permutable, figure, selftest.
Exit codes: 0 success/certified, 1 check failed, 2 usage error.

Rational flags use the form p/q and select the exact backend; decimal
flags select binary64.  A decimal mu together with an exact c downgrades
the run to the float backend with a warning, so a certificate is never
silently less exact than its flags promise.
"""

from __future__ import annotations

import argparse
import math
import re
import sys
from fractions import Fraction

from . import figures, polytope, words
from .families import (
    DISTINGUISHED_PHI,
    MatrixSet,
    custom_set,
    eigenvectors_from_products,
    example_alt,
    example_main,
    example_main_special,
    normalize,
)
from .matrix2 import Mat2
from .permutability import (
    ReducibleSetError,
    TauMap,
    friedland_5tuple,
    friedland_permutable,
    is_irreducible,
    verify_tau,
)
from .scalar import KappaContext, Scalar, parse_scalar

__all__ = ["main", "build_parser"]


def _parse_phi(text: str) -> float:
    """Angles as decimals or multiples of pi: '2pi/3', 'pi/4', 'pi', '1.5'."""
    t = text.strip().lower().replace(" ", "")
    if "pi" in t:
        m = re.fullmatch(r"([+-]?\d*\.?\d*)pi(?:/([\d.]+))?", t)
        if m is None:
            raise ValueError(f"cannot parse angle {text!r}")
        head = m.group(1)
        num = float(head) if head not in ("", "+", "-") else (-1.0 if head == "-" else 1.0)
        den = float(m.group(2)) if m.group(2) else 1.0
        return num * math.pi / den
    return float(t)


def _add_family_options(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--family", choices=("main", "alt", "custom"), default="main",
        help="which matrix pair to build (default: main)",
    )
    p.add_argument("--c", help="exact cube-root parameter c as p/q (kappa = c^3)")
    p.add_argument("--kappa", help="float stretch parameter kappa > 1")
    p.add_argument(
        "--phi", default="2pi/3",
        help="rotation angle; decimals or e.g. '2pi/3' (default: 2pi/3)",
    )
    p.add_argument(
        "--matrices", help="custom pair file: 8 scalar strings, optionally 4 more "
        "for the swap similarity matrix",
    )


def _load_custom(path: str, ctx: KappaContext | None) -> MatrixSet:
    tokens: list[str] = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0]
            tokens.extend(line.split())
    if len(tokens) not in (8, 12):
        raise ValueError(
            f"custom pair file needs 8 or 12 scalar entries, found {len(tokens)}"
        )
    a = Mat2.from_strings(tokens[0:4])
    b = Mat2.from_strings(tokens[4:8])
    tau_s = Mat2.from_strings(tokens[8:12]) if len(tokens) == 12 else None
    return custom_set(a, b, tau_s=tau_s, ctx=ctx)


def _build_set(args, parser: argparse.ArgumentParser, mu: Scalar | None = None):
    """MatrixSet from the family flags; may downgrade exact->float (warned)."""
    try:
        phi = _parse_phi(args.phi)
        ctx = KappaContext(Fraction(args.c)) if args.c else None
        if args.family == "custom":
            if not args.matrices:
                parser.error("--family custom needs --matrices FILE")
            return _load_custom(args.matrices, ctx)
        if ctx is None and not args.kappa:
            parser.error("need --c p/q or --kappa value")
        if args.kappa and ctx is not None:
            parser.error("--c and --kappa are mutually exclusive")
        if args.family == "alt":
            kappa = float(ctx.power(3)) if ctx is not None else float(args.kappa)
            return example_alt(kappa, phi)
        # main family
        if ctx is not None:
            exact_mu_ok = mu is None or mu.is_exact
            at_special_angle = math.isclose(
                phi, DISTINGUISHED_PHI, rel_tol=0, abs_tol=1e-13
            )
            if exact_mu_ok and at_special_angle:
                return example_main_special(ctx)
            if not exact_mu_ok:
                print(
                    "warning: decimal mu forces the float backend; "
                    "the run will not be exact",
                    file=sys.stderr,
                )
            return example_main(float(ctx.power(3)), phi)
        return example_main(float(args.kappa), phi)
    except (ValueError, TypeError) as exc:
        parser.error(str(exc))


def _parse_mu(args, parser) -> Scalar | None:
    if getattr(args, "mu", None) is None:
        return None
    try:
        return parse_scalar(args.mu)
    except ValueError as exc:
        parser.error(f"bad --mu: {exc}")


def _mu_for_set(mset: MatrixSet, mu: Scalar):
    if not mset.is_exact and mu.is_exact:
        return Scalar.flt(float(mu))
    return mu


def _polygon_for(mset: MatrixSet, mu: Scalar, rel_tol=None):
    norm = normalize(mset, rel_tol)
    v, w = eigenvectors_from_products(norm, rel_tol)
    poly = polytope.build_polygon(norm, v, w, _mu_for_set(mset, mu), rel_tol)
    return norm, poly


def cmd_bounds(args, parser) -> int:
    if args.max_n < 1:
        parser.error("--max-n must be >= 1")
    mu = _parse_mu(args, parser)
    mset = _build_set(args, parser, mu)
    norm_obj = None
    if args.norm == "polygon":
        if mu is None:
            parser.error("--norm polygon needs --mu")
        _, norm_obj = _polygon_for(mset, mu)
    rows = words.bounds_table(mset.a, mset.b, args.max_n, norm=norm_obj)
    print(words.format_bounds_text(rows))
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(words.format_bounds_csv(rows) + "\n")
        print(f"csv written to {args.csv}")
    return 0


def cmd_certify(args, parser) -> int:
    mu = _parse_mu(args, parser)
    if mu is None:
        parser.error("certify needs --mu")
    mset = _build_set(args, parser, mu)
    cert = polytope.certify_smp(mset, _mu_for_set(mset, mu), args.tol)
    print(cert.as_text())
    if args.kv:
        for key, value in cert.as_kv():
            print(f"{key} = {value}")
    if args.report:
        with open(args.report, "w", encoding="utf-8", newline="\n") as fh:
            for key, value in cert.as_kv():
                fh.write(f"{key} = {value}\n")
        print(f"report written to {args.report}")
    return 0 if cert.passed else 1


def cmd_scan(args, parser) -> int:
    if args.family == "custom":
        parser.error("scan supports the main and alt families")
    if args.c or args.kappa:
        mset = _build_set(args, parser)
        if args.family == "main" and mset.ctx is not None:
            thresholds = polytope.mu_thresholds(mset.ctx)
        elif args.family == "main":
            thresholds = polytope.mu_thresholds(float(mset.kappa))
        else:
            thresholds = polytope.empirical_mu_thresholds(mset)
        names = ("mu0", "mu1", "mu2", "mu3")
        print(f"family {args.family}, kappa = {mset.kappa}")
        for name, value in zip(names, thresholds):
            print(f"  {name} = {value}")
        lo, hi = thresholds[1], thresholds[2]
        if lo <= hi:
            print(f"  admissible mu interval: [{lo}, {hi}]")
        else:
            print("  admissible mu interval: empty")
    kmax = polytope.kappa_max(args.family)
    print(f"kappa_max({args.family}) = {kmax}")
    return 0


def cmd_permutable(args, parser) -> int:
    mset = _build_set(args, parser)
    a, b = mset.a, mset.b
    irreducible = is_irreducible(a, b)
    print(f"irreducible: {irreducible}")
    tup = friedland_5tuple(a, b)
    labels = ("tr_a", "tr_a2", "tr_b", "tr_b2", "tr_ab")
    print("five traces: " + ", ".join(f"{k}={v}" for k, v in zip(labels, tup)))
    ok = False
    try:
        ok = friedland_permutable(a, b)
        print(f"permutable (trace/det criterion): {ok}")
    except ReducibleSetError:
        print("permutable: criterion inapplicable (reducible)")
    except ValueError as exc:
        print(f"permutable: {exc}")
    if mset.tau_s is not None:
        tau_ok = verify_tau(a, b, TauMap(mset.tau_s))
        print(f"tau verified: {tau_ok}")
        ok = ok and tau_ok
    return 0 if ok else 1


def cmd_figure(args, parser) -> int:
    mu = _parse_mu(args, parser)
    if mu is None:
        parser.error("figure needs --mu")
    mset = _build_set(args, parser, mu)
    norm, poly = _polygon_for(mset, mu)
    spec = figures.FigureSpec(polygon=poly, images=polytope.images(poly, norm))
    figures.render(spec, args.output)
    print(f"figure written to {args.output}")
    return 0


def cmd_selftest(args, parser) -> int:
    from .selftest import run_selftest

    return run_selftest()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="smpverify",
        description="verification workbench for spectrum maximizing products "
        "of 2x2 matrix pairs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="brute-force growth bound table")
    _add_family_options(p)
    p.add_argument("--max-n", type=int, default=6, help="largest word length")
    p.add_argument(
        "--norm", choices=("box", "polygon"), default="box",
        help="norm for the upper bound column",
    )
    p.add_argument("--mu", help="polygon scale (for --norm polygon)")
    p.add_argument("--csv", help="also write the table as CSV to this path")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("certify", help="run the full certificate")
    _add_family_options(p)
    p.add_argument("--mu", help="polygon scale, p/q or decimal")
    p.add_argument("--tol", type=float, default=None, help="float-backend tolerance")
    p.add_argument("--kv", action="store_true", help="print machine-readable lines")
    p.add_argument("--report", help="write the machine-readable report here")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("scan", help="thresholds and the admissible kappa range")
    _add_family_options(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("permutable", help="irreducibility and swap-permutability")
    _add_family_options(p)
    p.set_defaults(func=cmd_permutable)

    p = sub.add_parser("figure", help="render the polygon and its images as SVG")
    _add_family_options(p)
    p.add_argument("--mu", help="polygon scale, p/q or decimal")
    p.add_argument("--output", required=True, help="output SVG path")
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("selftest", help="run the built-in reference checks")
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except (ValueError, TypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
