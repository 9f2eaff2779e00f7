"""Command-line entry point: ``isocontact <verb> ...``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import certifier as cert
from .filling import d3_from_word, filling_invariants
from .formats import FormatError, parse_fivefold_file, parse_openbook_file, render_openbook
from .numeric import density, dehn, profiles
from .openbook import ob_connected_sum, ob_first_homology, ob_stabilize

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_book(path: str):
    return parse_openbook_file(_read(path), default_label=Path(path).stem)


def _sign(text: str) -> int:
    table = {"+": 1, "+1": 1, "1": 1, "-": -1, "-1": -1}
    if text not in table:
        raise argparse.ArgumentTypeError("sign must be +1 or -1")
    return table[text]


def cmd_invariants(args, out) -> int:
    f = _load_book(args.file)
    ob = f.book
    h = ob_first_homology(ob)
    fi = filling_invariants(ob)
    d3 = d3_from_word(ob)
    lines = [
        f"input: {ob.label or args.file}",
        f"page: {ob.page.describe()}",
        f"word: {ob.monodromy}",
        f"h1: {h}",
        f"free_rank: {h.free_rank}",
        f"two_torsion: {str(h.two_torsion).lower()}",
        f"filling_chi: {fi.chi}",
        f"filling_h2_rank: {fi.h2_rank}",
        f"filling_sigma: {'absent (twist curves intersect)' if fi.sigma is None else fi.sigma}",
        f"d3: {'absent' if d3 is None else d3}",
        f"c1: {f.c1}",
    ]
    out.write("\n".join(lines) + "\n")
    return 0


def cmd_certify(args, out) -> int:
    if args.facts is not None:
        tokens = [t for t in args.facts.split(",") if t.strip()]
        c = cert.certify_general(tokens, args.target.upper(), args.file or "facts")
    elif args.file is None:
        raise UsageError("certify needs an input file or --facts")
    elif args.target == "s5":
        f = _load_book(args.file)
        desc = cert.derive_contact_invariants(f.book, f.c1)
        c = cert.certify_s5(desc, f.book.label or args.file)
    else:
        f = parse_fivefold_file(_read(args.file), default_label=Path(args.file).stem)
        c = cert.certify_5fold_s7(f.description, f.c1, f.label or args.file)
    out.write(cert.render_certificate(c))
    return c.exit_code


def cmd_sum(args, out) -> int:
    x = _load_book(args.first).book
    y = _load_book(args.second).book
    out.write(render_openbook(ob_connected_sum(x, y)))
    return 0


def cmd_stabilize(args, out) -> int:
    ob = _load_book(args.file).book
    out.write(render_openbook(ob_stabilize(ob, args.sign)))
    return 0


def cmd_verify_profile(args, out) -> int:
    if args.file:
        p = profiles.load_profile_csv(args.file)
    else:
        p = profiles.default_profile(args.epsilon, args.samples)
    rep = profiles.check_profile(p, args.tol)
    out.write(rep.render(f"verify-profile ({p.provenance}, epsilon={p.epsilon:g}, samples={len(p.r)})"))
    return EXIT_PASS if rep.passed else EXIT_FAIL


def cmd_verify_collar(args, out) -> int:
    if args.file:
        cp = profiles.load_collar_csv(args.file)
        src = "file"
    else:
        cp = profiles.builtin_collar(args.epsilon, args.samples)
        src = "builtin"
    rep = profiles.check_collar(cp, args.tol)
    out.write(rep.render(f"verify-collar ({src}, epsilon={cp.epsilon:g}, samples={len(cp.t)})"))
    return EXIT_PASS if rep.passed else EXIT_FAIL


def cmd_k_threshold(args, out) -> int:
    if args.model == "builtin-negative":
        m = density.builtin_negative(args.grid)
    elif args.model == "builtin-positive":
        m = density.builtin_positive(args.grid)
    else:
        m = density.load_density_csv(args.model)
    k0 = density.density_threshold(m)
    theta, t = density.threshold_location(m)
    out.write(f"model: {m.tag}\nK0 = {k0:.10g}\nargmax: theta={theta:.10g}, t={t:.10g}\n")
    return EXIT_PASS


def cmd_dehn_check(args, out) -> int:
    if args.dim not in (1, 2):
        raise UsageError("--dim must be 1 or 2")
    make = {"default": dehn.default_bump, "zero": dehn.zero_profile, "staircase": dehn.staircase_profile}
    p = make[args.profile](args.dim)
    rep = dehn.gdt_check_symplectic(p, args.samples, args.tol, args.seed)
    out.write(rep.render())
    return EXIT_PASS if rep.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="isocontact", description="Open-book invariants, embedding certificates and numeric checks.")
    sub = ap.add_subparsers(dest="verb", metavar="verb", parser_class=_Parser)

    p = sub.add_parser("invariants", help="homology and filling invariants of an open book")
    p.add_argument("file")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("certify", help="embedding certificate for an open book or five-fold")
    p.add_argument("file", nargs="?")
    p.add_argument("--target", choices=("s5", "s7"), default="s5")
    p.add_argument("--facts", help="comma-separated assumed facts for the general rule engine")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("sum", help="connected sum of two open books")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_sum)

    p = sub.add_parser("stabilize", help="stabilize an open book once")
    p.add_argument("file")
    p.add_argument("--sign", type=_sign, default=1)
    p.set_defaults(func=cmd_stabilize)

    for verb, func, what in (
        ("verify-profile", cmd_verify_profile, "h1, h2 profile"),
        ("verify-collar", cmd_verify_collar, "collar pair f, g"),
    ):
        p = sub.add_parser(verb, help=f"check a sampled {what}")
        p.add_argument("--file", help="CSV samples instead of the builtin")
        p.add_argument("--epsilon", type=float, default=1.0)
        p.add_argument("--samples", type=int, default=4096)
        p.add_argument("--tol", type=float, default=1e-9)
        p.set_defaults(func=func)

    p = sub.add_parser("k-threshold", help="positivity threshold K0 of K*A + B")
    p.add_argument("--model", default="builtin-negative", help="builtin-positive, builtin-negative or a CSV path")
    p.add_argument("--grid", type=int, default=4096)
    p.set_defaults(func=cmd_k_threshold)

    p = sub.add_parser("dehn-check", help="finite-difference symplecticity of the generalized Dehn twist")
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--tol", type=float, default=1e-5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--profile", choices=("default", "zero", "staircase"), default="default")
    p.set_defaults(func=cmd_dehn_check)
    return ap


def main(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        if args.verb is None:
            raise UsageError(ap.format_usage().rstrip())
        return args.func(args, out)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_INPUT
    except (FormatError, cert.CertifierInputError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
