"""Command-line front end.

Exit codes: 0 success, 1 a theorem check failed, 2 bad arguments,
3 a precondition or evidence requirement was not met.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
import warnings
from pathlib import Path
from typing import Optional, Sequence

from .errors import (
    DegenerateParameters,
    Inconclusive,
    InvalidGaps,
    PreconditionError,
    ThresholdViolation,
)
from .exact import ExactParseError, ExactReal
from .perms import (
    PermutationPrefix,
    build_from_word,
    factor_complexity,
    fractional_orbit,
    low_complexity_example,
    max_pattern_complexity_bounded,
    periodic_example,
    pow2_gaps,
)
from .structure import SuiteConfig, classify_gamma, sm_partition, theorem_suite, threshold_ratio
from .words import CirclePartition, mechanical_word, rotation_word

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PRECONDITION = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _exact(text: Optional[str], name: str) -> Optional[ExactReal]:
    if text is None:
        return None
    try:
        return ExactReal.parse(text)
    except ExactParseError as exc:
        raise UsageError(f"--{name}: {exc}") from None


def _require(args, *names: str) -> None:
    missing = [n for n in names if getattr(args, n.replace("-", "_")) is None]
    if missing:
        raise UsageError("missing " + ", ".join("--" + n for n in missing))


def _write(path: Optional[str], text: str) -> None:
    """Write atomically, or to stdout when no path is given."""
    if path is None:
        sys.stdout.write(text)
        return
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        os.unlink(tmp)
        raise


def _csv(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


# -- objects ---------------------------------------------------------------


def _gaps(text: str):
    if text.replace(" ", "") == "2^k+k":
        return pow2_gaps
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"--gaps: expected '2^k+k' or a comma list, got {text!r}") from None


def build_prefix(args) -> PermutationPrefix:
    """Construct the permutation prefix described by ``--family`` and its parameters."""
    fam = args.family
    if fam == "file":
        _require(args, "input")
        return PermutationPrefix.read(args.input)
    _require(args, "length")
    N = args.length
    if fam == "periodic-example":
        return periodic_example(args.nparam, N)
    if fam == "low-complexity":
        return low_complexity_example(_gaps(args.gaps), N)
    _require(args, "sigma")
    sigma = _exact(args.sigma, "sigma")
    rho = _exact(args.rho, "rho")
    struct = {"sigma_struct": str(1 - sigma), "rho_struct": str((-rho).frac())}
    if fam == "fractional-orbit":
        prefix = fractional_orbit(sigma, rho, N)
        prefix.origin.update(struct)
        return prefix
    # sturmian
    x, y, d = _exact(args.x, "x"), _exact(args.y, "y"), _exact(args.d, "d")
    if d is not None:
        if x is not None or y is not None:
            raise UsageError("--d cannot be combined with --x/--y")
        x, y = sigma - d, 1 - sigma + d
    elif x is None and y is None:
        x, y = sigma, 1 - sigma
    elif x is None or y is None:
        raise UsageError("--x and --y must be given together")
    if N < 1:
        raise UsageError("--length must be positive")
    w = mechanical_word(sigma, rho, N - 1, args.variant)
    origin = {"sigma": str(sigma), "rho": str(rho), "variant": args.variant, **struct}
    if d is not None:
        origin["d"] = str(d)
    return build_from_word(w, x, y, _exact(args.a0, "a0"), origin)


def _struct_params(args, prefix: PermutationPrefix):
    sigma = _exact(args.sigma_struct, "sigma-struct")
    rho = _exact(args.rho_struct, "rho-struct")
    if sigma is None and "sigma_struct" in prefix.origin:
        sigma = ExactReal.parse(prefix.origin["sigma_struct"])
    if rho is None and "rho_struct" in prefix.origin:
        rho = ExactReal.parse(prefix.origin["rho_struct"])
    return sigma, rho


def _config(args) -> SuiteConfig:
    cfg = SuiteConfig(
        k_max=args.kmax,
        max_offset=args.max_offset,
        max_preperiod=args.max_preperiod,
        max_period=args.max_period,
        max_i=args.max_i,
    )
    for name in ("k_max", "max_offset"):
        if getattr(cfg, name) < 1:
            raise UsageError(f"--{name.replace('_', '-')} must be positive")
    return cfg


# -- tables ----------------------------------------------------------------


def fa_table(prefix: PermutationPrefix, n_max: int) -> str:
    return _csv(("n", "f_alpha"), ((n, factor_complexity(prefix, n)) for n in range(1, n_max + 1)))


def pstar_table(prefix: PermutationPrefix, k_max: int, max_offset: int) -> str:
    rows = []
    for k in range(1, k_max + 1):
        value, witness = max_pattern_complexity_bounded(prefix, k, max_offset)
        rows.append((k, max_offset, value, witness.text()))
    return _csv(("k", "max_offset", "p_star_bounded", "witness_window"), rows)


def sm_table(prefix: PermutationPrefix, sigma: Optional[ExactReal], max_i: int) -> tuple[str, bool]:
    """Rows ``i,class,ratio_exact,ratio_decimal_hint``; second value False on a threshold violation."""
    classes = {i: classify_gamma(prefix, i).aggregate for i in range(1, max_i + 1)}
    ok = True
    direction = "dec"
    if sigma is not None:
        try:
            part = sm_partition(prefix, sigma, max_i)
        except Inconclusive:
            pass
        except ThresholdViolation:
            ok = False
        else:
            direction = part.direction
            classes = {i: "S" if i in part.S else "M" for i in classes}
    rows = []
    for i, cls in classes.items():
        if sigma is None:
            rows.append((i, cls, "", ""))
        else:
            r = threshold_ratio(sigma, i, direction)
            rows.append((i, cls, str(r), r.decimal(6)))
    return _csv(("i", "class", "ratio_exact", "ratio_decimal_hint"), rows), ok


# -- subcommands -----------------------------------------------------------


def cmd_gen_word(args) -> int:
    _require(args, "length")
    if args.kind == "mechanical":
        _require(args, "sigma")
        w = mechanical_word(_exact(args.sigma, "sigma"), _exact(args.rho, "rho"), args.length, args.variant)
    else:
        _require(args, "partition", "xi")
        part = CirclePartition.read(args.partition)
        w = rotation_word(part, _exact(args.xi, "xi"), _exact(args.x0, "x0"), args.length)
    _write(args.output, w + "\n")
    return EXIT_OK


def cmd_gen_perm(args) -> int:
    _write(args.output, build_prefix(args).dumps())
    return EXIT_OK


def cmd_complexity(args) -> int:
    prefix = build_prefix(args)
    cfg = _config(args).resolved(len(prefix))
    fa = fa_table(prefix, min(args.fa_max, len(prefix)))
    pstar = pstar_table(prefix, cfg.k_max, cfg.max_offset)
    if args.output_dir:
        _write(os.path.join(args.output_dir, "fa.csv"), fa)
        _write(os.path.join(args.output_dir, "pstar.csv"), pstar)
    else:
        _write(None, pstar)
    return EXIT_OK


def cmd_classify(args) -> int:
    prefix = build_prefix(args)
    sigma, _ = _struct_params(args, prefix)
    cfg = _config(args).resolved(len(prefix))
    text, ok = sm_table(prefix, sigma, cfg.max_i)
    _write(args.output, text)
    return EXIT_OK if ok else EXIT_FAIL


def _report_json(args, prefix: PermutationPrefix) -> tuple[str, bool]:
    sigma, rho = _struct_params(args, prefix)
    report = theorem_suite(prefix, _config(args), sigma=sigma, rho=rho)
    return json.dumps(report, indent=2, sort_keys=True) + "\n", report["ok"]


def cmd_verify(args) -> int:
    prefix = build_prefix(args)
    text, ok = _report_json(args, prefix)
    _write(args.output, text)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_report(args) -> int:
    prefix = build_prefix(args)
    out = args.output_dir
    cfg = _config(args).resolved(len(prefix))
    sigma, _ = _struct_params(args, prefix)
    text, ok = _report_json(args, prefix)
    sm, sm_ok = sm_table(prefix, sigma, cfg.max_i)
    _write(os.path.join(out, "prefix.txt"), prefix.dumps())
    _write(os.path.join(out, "fa.csv"), fa_table(prefix, min(args.fa_max, len(prefix))))
    _write(os.path.join(out, "pstar.csv"), pstar_table(prefix, cfg.k_max, cfg.max_offset))
    _write(os.path.join(out, "sm.csv"), sm)
    _write(os.path.join(out, "report.json"), text)
    return EXIT_OK if ok and sm_ok else EXIT_FAIL


# -- parser ----------------------------------------------------------------


def _add_family(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("object")
    g.add_argument(
        "--family",
        required=True,
        choices=("sturmian", "fractional-orbit", "periodic-example", "low-complexity", "file"),
    )
    g.add_argument("--length", type=int, help="prefix length N")
    g.add_argument("--sigma", help="slope of the binary word (density of 1s), exact text")
    g.add_argument("--rho", default="0", help="intercept, exact text")
    g.add_argument("--variant", choices=("lower", "upper"), default="lower")
    g.add_argument("--x", help="step on 0")
    g.add_argument("--y", help="step on 1")
    g.add_argument("--d", help="threshold: x = sigma - d, y = 1 - sigma + d")
    g.add_argument("--a0", default="0", help="first value")
    g.add_argument("--nparam", type=int, default=2)
    g.add_argument("--gaps", default="2^k+k", help="'2^k+k' or comma-separated n_k")
    g.add_argument("--input", help="prefix file for --family file")
    g.add_argument("--sigma-struct", help="frequency of '<' in the first relation row")
    g.add_argument("--rho-struct", help="intercept of the first relation row")


def _add_bounds(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("bounds")
    g.add_argument("--kmax", type=int, default=4)
    g.add_argument("--max-offset", type=int, default=20)
    g.add_argument("--max-period", type=int)
    g.add_argument("--max-preperiod", type=int)
    g.add_argument("--max-i", type=int)
    g.add_argument("--fa-max", type=int, default=30, help="largest n in the factor complexity table")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sturmperm", description=__doc__.splitlines()[0], allow_abbrev=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-word", help="mechanical or rotation word", allow_abbrev=False)
    p.add_argument("--kind", choices=("mechanical", "rotation"), default="mechanical")
    p.add_argument("--variant", choices=("lower", "upper"), default="lower")
    p.add_argument("--sigma")
    p.add_argument("--rho", default="0")
    p.add_argument("--partition", help="circle partition file (start<TAB>label lines)")
    p.add_argument("--xi", help="rotation angle")
    p.add_argument("--x0", default="0", help="starting point")
    p.add_argument("--length", type=int)
    p.add_argument("--output")
    p.set_defaults(func=cmd_gen_word)

    p = sub.add_parser("gen-perm", help="write a permutation prefix file", allow_abbrev=False)
    _add_family(p)
    p.add_argument("--output")
    p.set_defaults(func=cmd_gen_perm)

    p = sub.add_parser("complexity", help="factor and bounded maximal pattern complexity tables", allow_abbrev=False)
    _add_family(p)
    _add_bounds(p)
    p.add_argument("--output-dir", help="write fa.csv and pstar.csv here instead of pstar to stdout")
    p.set_defaults(func=cmd_complexity)

    p = sub.add_parser("classify", help="relation-row sweep and S/M table", allow_abbrev=False)
    _add_family(p)
    _add_bounds(p)
    p.add_argument("--output")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="run the theorem suite and emit JSON", allow_abbrev=False)
    _add_family(p)
    _add_bounds(p)
    p.add_argument("--output")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("report", help="write prefix, tables and JSON report to a directory", allow_abbrev=False)
    _add_family(p)
    _add_bounds(p)
    p.add_argument("--output-dir", required=True)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        with warnings.catch_warnings(record=True) as notices:
            warnings.simplefilter("always")
            try:
                return args.func(args)
            finally:
                for n in dict.fromkeys(str(n.message) for n in notices):
                    print(f"notice: {n}", file=sys.stderr)
    except (UsageError, ExactParseError, json.JSONDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PreconditionError, DegenerateParameters, InvalidGaps, IndexError) as exc:
        print(f"precondition: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (ThresholdViolation, Inconclusive) as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
