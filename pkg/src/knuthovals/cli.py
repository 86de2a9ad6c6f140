"""Command-line driver.

Subcommands: field, check-axioms, verify, search, classify, orbit, design,
diffset, bent, report.  Exit codes: 0 success, 1 verification failure,
2 usage error.  Reports are deterministic: identical configurations yield
byte-identical output.  Field elements are serialized as lowercase hex of
the bit pattern; the modulus as a hex bitmask.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from . import reference
from ._kernels import BACKEND
from .algebra import (AlgebraError, derive_presemifield, knuth_kn,
                      knuth_kn_td, linpoly_values, verify_presemifield)
from .designs import (DesignError, bent_from_hyperoval, build_design,
                      design_invariants, development_design, difference_set,
                      distinguish_designs, group_order_stats,
                      orbit_intersections, sigma_orbit, six_condition)
from .gf2n import FieldContext, FieldError, dickson3_count
from .ovals import (OvalError, dualize_type_a, dualize_type_b,
                    graph_hyperoval_a, graph_hyperoval_b, is_hyperoval,
                    od_hyperoval, og_hyperoval, standard_hyperoval)
from .search import (InfeasibleDomain, SearchError, canonical_form,
                     search_translation_hyperovals, validate_domain)

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _add_common(p: argparse.ArgumentParser, plane: bool = True):
    p.add_argument("--n", type=int, default=5, help="extension degree (odd)")
    p.add_argument("--modulus", type=lambda s: int(s, 16), default=None,
                   help="modulus override as a hex bitmask")
    if plane:
        p.add_argument("--plane", choices=("kn", "kn_t", "kn_td"), default="kn",
                       help="coordinatising presemifield")
    p.add_argument("--format", choices=("json", "csv", "md"), default="md")
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.add_argument("--workers", type=int,
                   default=int(os.environ.get("KNUTHOVALS_WORKERS", "1")))
    p.add_argument("--seed", type=int, default=0,
                   help="seed for sampled checks")


def _context(args) -> FieldContext:
    return FieldContext(args.n, args.modulus)


def _plane(args, ctx: FieldContext):
    if args.plane == "kn":
        return knuth_kn(ctx)
    if args.plane == "kn_td":
        return knuth_kn_td(ctx)
    return derive_presemifield(knuth_kn(ctx), "transpose")


def _write(args, text: str):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _poly_str(ctx: FieldContext, coeffs, var: str = "y") -> str:
    terms = []
    for i in reversed(range(len(coeffs))):
        a = coeffs[i]
        if not a:
            continue
        power = 1 << i
        xpart = var if power == 1 else f"{var}^{power}"
        c = ctx.element_str(a)
        terms.append(xpart if c == "1" else f"{c} {xpart}")
    return " + ".join(terms) if terms else "0"


# ------------------------------------------------------------ report emission


def classification_payload(ctx, plane, type_tag, records, matches=None) -> dict:
    classes = []
    for i, rec in enumerate(records):
        classes.append({
            "no": i + 1,
            "alpha": None if rec.alpha is None else ctx.element_hex(rec.alpha),
            "alpha_omega": None if rec.alpha is None else ctx.element_str(rec.alpha),
            "coeffs_bits": [ctx.element_hex(c) for c in rec.coeffs],
            "coeffs_omega": [ctx.element_str(c) for c in rec.coeffs],
            "function": _poly_str(ctx, rec.coeffs),
            "digest": rec.canonical_digest.hex(),
            "orbit_size": rec.orbit_size,
            "reference_row": None if matches is None else matches.get(rec.canonical_digest),
        })
    return {
        "schema_version": SCHEMA_VERSION,
        "plane": plane.label,
        "n": ctx.n,
        "modulus_bits": format(ctx.modulus, "x"),
        "type": type_tag,
        "classes": classes,
    }


def emit_report(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["schema_version", "plane", "n", "modulus_bits", "type",
                         "no", "alpha", "alpha_omega", "coeffs_bits",
                         "coeffs_omega", "digest", "orbit_size", "reference_row"])
        for c in payload["classes"]:
            writer.writerow([
                payload["schema_version"], payload["plane"], payload["n"],
                payload["modulus_bits"], payload["type"], c["no"],
                c["alpha"] or "", c["alpha_omega"] or "",
                " ".join(c["coeffs_bits"]), " ".join(c["coeffs_omega"]),
                c["digest"], c["orbit_size"],
                "" if c["reference_row"] is None else c["reference_row"],
            ])
        return buf.getvalue()
    lines = [
        f"# plane {payload['plane']}, n={payload['n']}, "
        f"modulus=0x{payload['modulus_bits']}, type ({payload['type']}) "
        f"[schema {payload['schema_version']}]",
        "",
        "| No. | alpha | function | orbit size | reference row |",
        "| --- | --- | --- | --- | --- |",
    ]
    for c in payload["classes"]:
        ref = "-" if c["reference_row"] is None else str(c["reference_row"])
        lines.append(
            f"| {c['no']} | {c['alpha_omega'] or '-'} | {c['function']} "
            f"| {c['orbit_size']} | {ref} |")
    lines.append("")
    lines.append(f"{len(payload['classes'])} classes")
    return "\n".join(lines) + "\n"


def _reference_digests(ctx, plane, type_tag) -> dict[bytes, int]:
    """Digest -> row number for the built-in n=5 reference classes."""
    key = (plane.label if plane.label in ("kn", "kn_td") else None, type_tag)
    if ctx.n != reference.REFERENCE_N or ctx.modulus != reference.REFERENCE_MODULUS \
            or key not in reference.REFERENCE_CLASSES:
        return {}
    out = {}
    for row in reference.REFERENCE_CLASSES[key]:
        coeffs = reference.reference_coeffs(ctx, row)
        values = linpoly_values(ctx, coeffs)
        if type_tag == "a":
            oval = graph_hyperoval_a(plane, values)
        else:
            oval = graph_hyperoval_b(plane, values, reference.reference_alpha(ctx, row))
        out[canonical_form(plane, oval)] = row["no"]
    return out


def _row_hyperoval(args, ctx, plane, type_tag):
    """Hyperoval from a reference row number (n=5 planes only)."""
    key = (plane.label, type_tag)
    rows = reference.REFERENCE_CLASSES.get(key, [])
    for row in rows:
        if row["no"] == args.row:
            coeffs = reference.reference_coeffs(ctx, row)
            values = linpoly_values(ctx, coeffs)
            if type_tag == "a":
                return graph_hyperoval_a(plane, values)
            return graph_hyperoval_b(plane, values, reference.reference_alpha(ctx, row))
    raise SystemExit(f"no reference row {args.row} for {key}")


# ---------------------------------------------------------------- subcommands


def cmd_field(args) -> int:
    ctx = _context(args)
    lines = [
        f"GF(2^{ctx.n}), q = {ctx.q}",
        f"modulus = 0x{ctx.modulus:x} (0b{ctx.modulus:b})",
        f"generator w has order {ctx.q - 1}",
    ]
    if args.mul:
        x, y = (int(s, 16) for s in args.mul)
        lines.append(f"mul({x:x}, {y:x}) = {ctx.mul(x, y):x}")
    if args.inv is not None:
        lines.append(f"inv({args.inv:x}) = {ctx.inv(args.inv):x}")
    if args.trace is not None:
        lines.append(f"trace({args.trace:x}) = {ctx.trace(args.trace)}")
    if args.dickson is not None:
        lines.append(f"dickson3_count({args.dickson:x}) = {dickson3_count(ctx, args.dickson)}")
    _write(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_check_axioms(args) -> int:
    ctx = _context(args)
    plane = _plane(args, ctx)
    check_symp = plane.label == "kn_td"
    other = knuth_kn(ctx) if plane.label == "kn_td" else None
    report = verify_presemifield(plane, check_symplectic=check_symp,
                                 orthogonal_to=other)
    lines = [f"plane {plane.label}, n={ctx.n} (kernel backend: {BACKEND})"]
    lines.append(f"commutative: {report.commutative}")  # informational
    for name in ("left_distributive", "right_distributive", "no_zero_divisors",
                 "symplectic", "orthogonality"):
        value = getattr(report, name)
        if value is None:
            continue
        lines.append(f"{name}: {value} {'PASS' if value else 'FAIL'}")
    lines.append("OK" if report.ok else "FAILED")
    _write(args, "\n".join(lines) + "\n")
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_verify(args) -> int:
    ctx = _context(args)
    ok = True
    lines = []
    if args.construction == "standard":
        plane = _plane(args, ctx)
        oval = standard_hyperoval(plane)
        ok = is_hyperoval(plane, oval)
        lines.append(f"standard hyperoval in {plane.label}: {'PASS' if ok else 'FAIL'}")
    elif args.construction == "og":
        oval = og_hyperoval(ctx)
        ok = is_hyperoval(oval.plane, oval)
        lines.append(f"og hyperoval (n={ctx.n}): {'PASS' if ok else 'FAIL'}")
    elif args.construction == "od":
        if args.d is None:
            raise SystemExit("--d required for construction od")
        oval = od_hyperoval(ctx, args.d)
        ok = is_hyperoval(oval.plane, oval)
        lines.append(f"od hyperoval (n={ctx.n}, d={args.d}): {'PASS' if ok else 'FAIL'}")
    elif args.construction == "line-a":
        lho = dualize_type_a(ctx, (0, 1) + (0,) * (ctx.n - 2))  # L = x^2
        ok = is_hyperoval(lho.plane, lho)
        lines.append(f"line hyperoval l_(m^2, m) (n={ctx.n}): {'PASS' if ok else 'FAIL'}")
    elif args.construction == "line-b":
        lho = dualize_type_b(ctx, (1, 1) + (0,) * (ctx.n - 2))  # L = y^2 + y
        ok = is_hyperoval(lho.plane, lho)
        lines.append(f"line hyperoval l_(m+sqrt m, m) (n={ctx.n}): {'PASS' if ok else 'FAIL'}")
    _write(args, "\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_search(args) -> int:
    validate_domain(args.n, args.domain)
    ctx = _context(args)
    plane = _plane(args, ctx)
    records = search_translation_hyperovals(plane, args.type, args.domain,
                                            workers=args.workers)
    matches = _reference_digests(ctx, plane, args.type) if args.domain == "full" else {}
    payload = classification_payload(ctx, plane, args.type, records,
                                     {d: no for d, no in matches.items()})
    _write(args, emit_report(payload, args.format))
    return EXIT_OK


def cmd_classify(args) -> int:
    ctx = _context(args)
    if ctx.n != reference.REFERENCE_N:
        raise SystemExit("classify reproduces the built-in n=5 reference classification")
    planes = [knuth_kn(ctx), knuth_kn_td(ctx)] if args.plane == "all" \
        else [_plane(args, ctx)]
    chunks = []
    ok = True
    for plane in planes:
        for type_tag in ("a", "b"):
            records = search_translation_hyperovals(plane, type_tag, "full",
                                                    workers=args.workers)
            ref_rows = reference.REFERENCE_CLASSES.get((plane.label, type_tag), [])
            matches = _reference_digests(ctx, plane, type_tag)
            payload = classification_payload(ctx, plane, type_tag, records, matches)
            matched = [c["reference_row"] for c in payload["classes"]]
            if len(records) != len(ref_rows) or sorted(
                    m for m in matched if m is not None) != [r["no"] for r in ref_rows]:
                ok = False
            chunks.append(emit_report(payload, args.format))
    verdict = "classification matches the reference tables" if ok \
        else "MISMATCH against the reference tables"
    _write(args, "\n".join(chunks) + verdict + "\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_orbit(args) -> int:
    ctx = _context(args)
    plane = _plane(args, ctx)
    if args.type == "a":
        oval = _row_hyperoval(args, ctx, plane, "a") if args.row else standard_hyperoval(plane)
        orbit = sigma_orbit(plane, oval)
        rng = np.random.default_rng(args.seed)
        arrs = [np.array(sorted(o.points)) for o in orbit]
        pair_ok = True
        for _ in range(1000):
            i, j = rng.choice(len(orbit), 2, replace=False)
            if len(np.intersect1d(arrs[i], arrs[j])) != 2:
                pair_ok = False
        lines = [f"orbit size: {len(orbit)} (expected {plane.q ** 2})",
                 f"sampled pairwise intersections all 2: {pair_ok}"]
        ok = len(orbit) == plane.q ** 2 and pair_ok
    else:
        if args.og:
            oval = og_hyperoval(ctx)
            plane = oval.plane
        elif args.od:
            oval = od_hyperoval(ctx, args.od)
            plane = oval.plane
        else:
            oval = _row_hyperoval(args, ctx, plane, "b")
        values = orbit_intersections(plane, oval)
        hist = {k: values.count(k) for k in sorted(set(values))}
        cond = six_condition(plane, oval)
        ok = set(hist) <= {0, 2, 4, 6} and ((6 in hist) == cond)
        lines = [f"intersection histogram: {hist}",
                 f"six-condition (exists v: f(v)*alpha = theta): {cond}",
                 f"agreement: {(6 in hist) == cond}"]
    _write(args, "\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_design(args) -> int:
    ctx = _context(args)
    plane = _plane(args, ctx)
    oval = _row_hyperoval(args, ctx, plane, "a") if args.row \
        else standard_hyperoval(plane)
    try:
        design = build_design(plane, oval)
    except DesignError as exc:
        _write(args, f"FAIL: {exc}\n")
        return EXIT_FAIL
    inv = design_invariants(design)
    lines = [f"design parameters: {design.params}",
             f"rank2: {inv.rank2}",
             f"degree checks: {inv.degree_checks}"]
    if args.compare_development:
        dev = development_design(plane, oval)
        res = distinguish_designs(design, dev, samples=args.samples,
                                  seed=args.seed)
        lines.append(f"development-design comparison: {res.outcome}"
                     + (f" (witness {res.witness})" if res.witness else ""))
        lines.append(f"detail: {res.detail}")
    _write(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_diffset(args) -> int:
    ctx = _context(args)
    plane = _plane(args, ctx)
    oval = _row_hyperoval(args, ctx, plane, "a") if args.row \
        else standard_hyperoval(plane)
    lines = []
    ok = True
    groups = ("G1", "G2") if args.group == "both" else (args.group.upper(),)
    for which in groups:
        try:
            dset = difference_set(plane, oval, which)
            stats = group_order_stats(plane, which)
            lines.append(f"{which}: |D| = {len(dset)}, verified "
                         f"(lambda = {plane.q ** 2 // 4 + plane.q // 2}); "
                         f"orders {stats.histogram}, certified {stats.certified}")
        except DesignError as exc:
            lines.append(f"{which}: FAIL {exc}")
            ok = False
    _write(args, "\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_bent(args) -> int:
    ctx = _context(args)
    plane = _plane(args, ctx)
    oval = _row_hyperoval(args, ctx, plane, "a") if args.row \
        else standard_hyperoval(plane)
    bent = bent_from_hyperoval(plane, oval)
    lines = [f"walsh spectrum: {bent.spectrum}", f"bent: {bent.is_bent}"]
    _write(args, "\n".join(lines) + "\n")
    return EXIT_OK if bent.is_bent else EXIT_FAIL


def cmd_report(args) -> int:
    with open(args.input) as fh:
        payload = json.load(fh)
    if payload.get("schema_version") != SCHEMA_VERSION:
        raise SystemExit(f"unsupported schema_version {payload.get('schema_version')}")
    _write(args, emit_report(payload, args.format))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="knuthovals",
        description="hyperovals and designs in Knuth binary presemifield planes")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field", help="field arithmetic and info")
    _add_common(p, plane=False)
    p.add_argument("--mul", nargs=2, metavar=("X", "Y"), default=None,
                   help="multiply two elements (hex)")
    p.add_argument("--inv", type=lambda s: int(s, 16), default=None)
    p.add_argument("--trace", type=lambda s: int(s, 16), default=None)
    p.add_argument("--dickson", type=lambda s: int(s, 16), default=None,
                   help="root count of x^3 + x = t")
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("check-axioms", help="verify presemifield axioms")
    _add_common(p)
    p.set_defaults(func=cmd_check_axioms)

    p = sub.add_parser("verify", help="verify a named construction")
    _add_common(p)
    p.add_argument("--construction", required=True,
                   choices=("standard", "og", "od", "line-a", "line-b"))
    p.add_argument("--d", type=int, default=None, help="Frobenius shift for od")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="exhaustive translation-hyperoval search")
    _add_common(p)
    p.add_argument("--type", required=True, choices=("a", "b"))
    p.add_argument("--domain", choices=("full", "zero_one"), default="full")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("classify", help="reproduce the n=5 reference classification")
    _add_common(p, plane=False)
    p.add_argument("--plane", choices=("kn", "kn_td", "all"), default="all")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("orbit", help="orbit statistics of a hyperoval")
    _add_common(p)
    p.add_argument("--type", choices=("a", "b"), default="b")
    p.add_argument("--row", type=int, default=None, help="reference row number")
    p.add_argument("--og", action="store_true", help="use the y^2+y construction")
    p.add_argument("--od", type=int, default=None, help="use the y^(2^d)+y construction")
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("design", help="build and verify the secant-line design")
    _add_common(p)
    p.add_argument("--row", type=int, default=None, help="type-(a) reference row")
    p.add_argument("--compare-development", action="store_true",
                   help="compare against the difference-set development design")
    p.add_argument("--samples", type=int, default=10_000,
                   help="triple-intersection sample size")
    p.set_defaults(func=cmd_design)

    p = sub.add_parser("diffset", help="verify the difference sets")
    _add_common(p)
    p.add_argument("--row", type=int, default=None)
    p.add_argument("--group", choices=("g1", "g2", "both"), default="both")
    p.set_defaults(func=cmd_diffset)

    p = sub.add_parser("bent", help="Walsh spectrum of the derived bent function")
    _add_common(p)
    p.add_argument("--row", type=int, default=None)
    p.set_defaults(func=cmd_bent)

    p = sub.add_parser("report", help="re-render a JSON report")
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=("json", "csv", "md"), default="md")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (InfeasibleDomain,) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(f"usage error: {exc.code}", file=sys.stderr)
            return EXIT_USAGE
        return exc.code or EXIT_OK
    except (FieldError, AlgebraError, OvalError, SearchError, DesignError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
