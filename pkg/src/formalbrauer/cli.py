"""Command-line front end.

Four subcommands:

  height    heights of formal Brauer groups over a (quartic, prime) grid
  landweber exactness report for a built-in scenario or named law
  certify   emit a K3 spectrum certificate (p-local or rational)
  selftest  run the acceptance suite

Exit codes: 0 success, 1 usage error, 2 integrality abort, 3 certification
refused. Output is deterministic: with --no-timestamp the same invocation
produces byte-identical bytes (wall times are zeroed too, since they are
timing data of the same kind).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone
from pathlib import Path
from time import perf_counter

from . import __version__
from .acceptance import CHECKS, run_checks
from .coefficients import QQ, Prime, is_prime
from .errors import CapTooSmall, CertificationRefused, NonIntegral
from .k3brauer import (
    QuarticForm,
    beta_coefficient,
    brauer_height,
    named_quartic,
)
from .landweber import (
    SCENARIOS,
    builtin_scenario,
    certify_k3_spectrum,
    landweber_check,
    rational_certificate,
    zp_presentation,
)
from .fgl import standard_law

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NONINTEGRAL = 2
EXIT_REFUSED = 3

HEIGHT_COLUMNS = ("quartic", "prime", "kind", "value",
                  "first_nonzero_degree", "beta_p_mod_p", "ordinary",
                  "wall_ms")


class _Parser(argparse.ArgumentParser):
    # usage problems are exit code 1, not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _build_parser() -> _Parser:
    parser = _Parser(prog="formalbrauer",
                     description="formal Brauer groups of quartic surfaces: "
                                 "heights, exactness reports, certificates")
    parser.add_argument("--version", action="version",
                        version=f"formalbrauer {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    hp = sub.add_parser("height", help="height census over (quartic, prime)",
                        description="CSV columns: " + ",".join(HEIGHT_COLUMNS))
    hp.add_argument("--quartic", action="append", required=True,
                    metavar="NAME|PATH",
                    help="built-in name (fermat, diag-1248, fermat-cross) or "
                         "a quartic file; repeatable")
    hp.add_argument("--primes", required=True,
                    help="comma-separated odd primes, e.g. 5,13")
    hp.add_argument("--hmax", type=int, default=1,
                    help="height bound to certify up to (default 1)")
    hp.add_argument("--cap", type=int, default=None,
                    help="series cap override (auto-raised to p^hmax when low)")
    hp.add_argument("--format", choices=("json", "csv", "text"),
                    default="text")
    hp.add_argument("--jobs", type=int, default=1,
                    help="parallel workers over grid cells")
    hp.add_argument("--out", type=Path, default=None,
                    help="write output here instead of stdout")
    hp.add_argument("--no-timestamp", action="store_true",
                    help="suppress timestamps and wall times for "
                         "byte-reproducible output")

    lp = sub.add_parser("landweber", help="exactness report")
    lp.add_argument("--scenario", choices=SCENARIOS, default=None)
    lp.add_argument("--ring", choices=("zp",), default=None,
                    help="presentation for --law (p-local integers)")
    lp.add_argument("--law", choices=("multiplicative", "additive"),
                    default=None)
    lp.add_argument("--p", type=int, default=3, help="the prime (default 3)")
    lp.add_argument("--hmax", type=int, default=None,
                    help="height bound (default: scenario's own, else 2)")
    lp.add_argument("--cap", type=int, default=None)
    lp.add_argument("--format", choices=("json", "csv", "text"),
                    default="text")
    lp.add_argument("--out", type=Path, default=None)
    lp.add_argument("--no-timestamp", action="store_true")

    cp = sub.add_parser("certify", help="emit a K3 spectrum certificate")
    cp.add_argument("--quartic", required=True, metavar="NAME|PATH")
    cp.add_argument("--rational", action="store_true",
                    help="certificate over the rationals")
    cp.add_argument("--ring", choices=("zp",), default=None)
    cp.add_argument("--p", type=int, default=None)
    cp.add_argument("--hmax", type=int, default=2)
    cp.add_argument("--cap", type=int, default=None)
    cp.add_argument("--out", type=Path, default=None)
    cp.add_argument("--no-timestamp", action="store_true")

    sp = sub.add_parser("selftest", help="run the acceptance suite")
    sp.add_argument("--only", action="append", default=None,
                    metavar="CHECK", help=f"run a subset; available: "
                                          f"{', '.join(CHECKS)}")
    sp.add_argument("--caps", choices=("default", "tiny"), default="default",
                    help="cap profile")
    return parser


# ---------------------------------------------------------------------------
# shared plumbing
# ---------------------------------------------------------------------------


def _load_quartic(ref: str) -> QuarticForm:
    if "/" in ref or ref.endswith(".quartic") or Path(ref).is_file():
        path = Path(ref)
        if not path.is_file():
            raise ValueError(f"quartic file not found: {ref}")
        return QuarticForm.parse(path.read_text(), name=path.stem)
    return named_quartic(ref)


def _parse_primes(text: str) -> list:
    out = []
    for bit in text.split(","):
        bit = bit.strip()
        if not bit:
            continue
        try:
            p = int(bit)
        except ValueError:
            raise ValueError(f"not an integer prime: {bit!r}") from None
        if p == 2:
            raise ValueError(
                "p = 2 is not supported: the quartic theory here needs odd "
                "characteristic (char 2 requires a separate treatment)")
        if p < 3 or not is_prime(p):
            raise ValueError(f"need an odd prime >= 3, got {p}")
        out.append(p)
    if not out:
        raise ValueError("empty prime list")
    return out


def _emit(text: str, out: Path | None):
    if out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        out.write_text(text if text.endswith("\n") else text + "\n")


def _timestamp(suppress: bool) -> str | None:
    if suppress:
        return None
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


# ---------------------------------------------------------------------------
# height
# ---------------------------------------------------------------------------


def _height_cell(args):
    """One (quartic, prime) grid cell; top level so worker pools can run it."""
    f, p, h_max, cap = args
    start = perf_counter()
    result = brauer_height(f, p, h_max, cap=cap)
    beta_p = beta_coefficient(f, p) % p
    wall_ms = int((perf_counter() - start) * 1000)
    return {
        "quartic": f.name,
        "prime": p,
        "kind": result.kind,
        "value": result.value,
        "first_nonzero_degree": result.first_nonzero_degree,
        "beta_p_mod_p": beta_p,
        "ordinary": beta_p != 0,
        "wall_ms": wall_ms,
    }


def cmd_height(ns) -> int:
    quartics = [_load_quartic(q) for q in ns.quartic]
    primes = _parse_primes(ns.primes)
    if ns.hmax < 1:
        raise ValueError("--hmax must be >= 1")
    cells = []
    for f in quartics:
        for p in primes:
            cap = ns.cap
            need = p ** ns.hmax
            if cap is not None and cap < need:
                sys.stderr.write(
                    f"notice: cap {cap} below p^hmax = {need} for p={p}; "
                    f"raising to {need}\n")
                cap = need
            cells.append((f, p, ns.hmax, cap))
    if ns.jobs > 1:
        with ProcessPoolExecutor(max_workers=ns.jobs) as pool:
            rows = list(pool.map(_height_cell, cells))
    else:
        rows = [_height_cell(c) for c in cells]
    rows.sort(key=lambda r: (r["quartic"], r["prime"]))
    if ns.no_timestamp:
        for r in rows:
            r["wall_ms"] = 0
    if ns.format == "json":
        doc = {"schema": "formalbrauer.height/1"}
        stamp = _timestamp(ns.no_timestamp)
        if stamp is not None:
            doc["generated_at"] = stamp
        doc["rows"] = rows
        _emit(json.dumps(doc, indent=2), ns.out)
    elif ns.format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=HEIGHT_COLUMNS)
        writer.writeheader()
        writer.writerows(rows)
        _emit(buf.getvalue(), ns.out)
    else:
        widths = {c: max(len(c), *(len(str(r[c])) for r in rows))
                  for c in HEIGHT_COLUMNS}
        lines = ["  ".join(c.ljust(widths[c]) for c in HEIGHT_COLUMNS)]
        for r in rows:
            lines.append("  ".join(str(r[c]).ljust(widths[c])
                                   for c in HEIGHT_COLUMNS))
        _emit("\n".join(lines), ns.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# landweber
# ---------------------------------------------------------------------------


def cmd_landweber(ns) -> int:
    if ns.p == 2:
        raise ValueError(
            "p = 2 is not supported: odd characteristic only")
    p = Prime(ns.p)
    if ns.scenario:
        R, source, default_hmax = builtin_scenario(ns.scenario, p, cap=ns.cap)
        h_max = ns.hmax if ns.hmax is not None else default_hmax
    elif ns.ring and ns.law:
        h_max = ns.hmax if ns.hmax is not None else 2
        cap = ns.cap or p.p ** h_max + 1
        R = zp_presentation(p)
        source = standard_law(ns.law, QQ, cap)
    else:
        raise ValueError("need --scenario, or --ring together with --law")
    report = landweber_check(R, source, h_max, cap=ns.cap)
    doc = report.to_json_dict()
    stamp = _timestamp(ns.no_timestamp)
    if stamp is not None:
        doc = {"generated_at": stamp, **doc}
    if ns.format == "json":
        _emit(json.dumps(doc, indent=2), ns.out)
    elif ns.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(("element", "status", "witness", "reason"))
        for v in report.verdicts:
            writer.writerow((v.element, v.status, v.witness or "", v.reason))
        _emit(buf.getvalue(), ns.out)
    else:
        lines = [
            f"ring:      {R}",
            f"p:         {report.p.p}",
            f"closed fibre: {report.closed_fibre_height.describe()}",
            f"v-sequence: {', '.join(str(v) for v in report.vs)}",
        ]
        for v in report.verdicts:
            extra = f" (witness {v.witness})" if v.witness else ""
            lines.append(f"  {v.element}: {v.status}{extra}")
        lines.append(f"verdict:   {report.verdict.upper()} - {report.reason}")
        lines.append(f"note:      {report.note_other_primes}")
        _emit("\n".join(lines), ns.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# certify
# ---------------------------------------------------------------------------


def cmd_certify(ns) -> int:
    f = _load_quartic(ns.quartic)
    if ns.rational:
        cert = rational_certificate(f)
    else:
        if not ns.ring or ns.p is None:
            raise ValueError("need --rational, or --ring zp with --p")
        if ns.p == 2:
            raise ValueError("p = 2 is not supported: odd characteristic only")
        R = zp_presentation(Prime(ns.p))
        cert = certify_k3_spectrum(R, f, ns.hmax, cap=ns.cap)
    doc = cert.to_json_dict(timestamp=_timestamp(ns.no_timestamp))
    _emit(json.dumps(doc, indent=2), ns.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# selftest
# ---------------------------------------------------------------------------


def cmd_selftest(ns) -> int:
    names = None
    if ns.only:
        names = []
        for chunk in ns.only:
            names.extend(x.strip() for x in chunk.split(",") if x.strip())
    outcomes = run_checks(names, profile=ns.caps)
    failures = 0
    for o in outcomes:
        mark = "PASS" if o.ok else "FAIL"
        print(f"{mark} {o.name} ({o.seconds:.2f}s)")
        if not o.ok:
            failures += 1
            print(f"     {o.detail}")
    total = sum(o.seconds for o in outcomes)
    print(f"{len(outcomes) - failures}/{len(outcomes)} checks passed "
          f"({total:.2f}s)")
    return EXIT_OK if failures == 0 else EXIT_USAGE


def main(argv=None) -> int:
    parser = _build_parser()
    ns = parser.parse_args(argv)
    handlers = {
        "height": cmd_height,
        "landweber": cmd_landweber,
        "certify": cmd_certify,
        "selftest": cmd_selftest,
    }
    try:
        return handlers[ns.command](ns)
    except NonIntegral as exc:
        sys.stderr.write(f"integrality abort: {exc}\n")
        return EXIT_NONINTEGRAL
    except CertificationRefused as exc:
        sys.stderr.write(f"certification refused: {exc}\n")
        if exc.report is not None:
            sys.stderr.write(json.dumps(exc.report.to_json_dict(), indent=2))
            sys.stderr.write("\n")
        return EXIT_REFUSED
    except (ValueError, CapTooSmall) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
